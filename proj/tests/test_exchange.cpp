#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mutclass;

namespace {

IntVector iv(std::initializer_list<long long> xs) {
  IntVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST(Symmetrizer, SkewSymmetricIsAllOnes) {
  auto r = check_skew_symmetrizable(IntMatrix{{0, 1}, {-1, 0}});
  ASSERT_TRUE(r);
  EXPECT_EQ(*r.symmetrizer, iv({1, 1}));
}

TEST(Symmetrizer, TwoByTwoMatchesBruteForce) {
  IntMatrix b{{0, 2}, {-1, 0}};
  auto r = check_skew_symmetrizable(b);
  ASSERT_TRUE(r);
  auto brute = oracle::brute_symmetrizer(oracle::to_small(b), 6);
  ASSERT_TRUE(brute);
  EXPECT_EQ(*r.symmetrizer, iv({(*brute)[0], (*brute)[1]}));
  EXPECT_EQ(*r.symmetrizer, iv({1, 2}));
}

TEST(Symmetrizer, InconsistentTriangleIsRejected) {
  // B12 B23 B31 = 2 but -B21 B32 B13 = 1
  IntMatrix b{{0, 2, -1}, {-1, 0, 1}, {1, -1, 0}};
  auto r = check_skew_symmetrizable(b);
  ASSERT_FALSE(r);
  EXPECT_EQ(r.violation->kind, SkewViolation::Kind::InconsistentCycle);
  EXPECT_EQ(r.violation->cycle.size(), 3u);
  EXPECT_FALSE(oracle::brute_symmetrizer(oracle::to_small(b), 8));
  EXPECT_THROW(ExchangeMatrix{b}, NotSkewSymmetrizable);
}

TEST(Symmetrizer, SignViolationNamesThePair) {
  auto r = check_skew_symmetrizable(IntMatrix{{0, 1, 0}, {-1, 0, 2}, {0, 1, 0}});
  ASSERT_FALSE(r);
  EXPECT_EQ(r.violation->kind, SkewViolation::Kind::NotSignSkewSymmetric);
  EXPECT_EQ(r.violation->i, 1u);
  EXPECT_EQ(r.violation->j, 2u);
  EXPECT_NE(r.violation->message().find("(2,3)"), std::string::npos);
}

TEST(Symmetrizer, NonZeroDiagonalAndNonSquare) {
  EXPECT_EQ(check_skew_symmetrizable(IntMatrix{{1, 0}, {0, 0}}).violation->kind,
            SkewViolation::Kind::NonZeroDiagonal);
  EXPECT_EQ(check_skew_symmetrizable(IntMatrix(2, 3)).violation->kind, SkewViolation::Kind::NotSquare);
}

TEST(Symmetrizer, MinimalPerComponent) {
  // two components: {1,2} with ratio 3, {3} isolated
  auto r = check_skew_symmetrizable(IntMatrix{{0, 3, 0}, {-1, 0, 0}, {0, 0, 0}});
  ASSERT_TRUE(r);
  EXPECT_EQ(*r.symmetrizer, iv({1, 3, 1}));
}

TEST(Symmetrizer, RandomAgreesWithBruteForce) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 3;
    IntMatrix b = oracle::random_exchange(rng, n, 3);
    auto r = check_skew_symmetrizable(b);
    ASSERT_TRUE(r) << b;
    auto brute = oracle::brute_symmetrizer(oracle::to_small(b), 6);
    ASSERT_TRUE(brute);
    // both are minimal solutions; compare the ratios d_i / d_0 within components
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        EXPECT_EQ((*r.symmetrizer)[i] * (*brute)[j] * b(i, j), (*r.symmetrizer)[j] * (*brute)[i] * b(i, j));
  }
}

TEST(Mutation, FlipsSignsForTwoByTwo) {
  ExchangeMatrix b{{0, 1}, {-1, 0}};
  EXPECT_EQ(b.mutate(0).entries(), (IntMatrix{{0, -1}, {1, 0}}));
}

TEST(Mutation, PathAtMiddleVertex) {
  ExchangeMatrix b{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}};
  IntMatrix expected{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}};
  EXPECT_EQ(b.mutate(1).entries(), expected);
  EXPECT_EQ(oracle::to_matrix(oracle::mutate(oracle::to_small(b.entries()), 1)), expected);
}

TEST(Mutation, OutOfRange) {
  ExchangeMatrix b{{0, 1}, {-1, 0}};
  EXPECT_THROW(b.mutate(2), std::out_of_range);
}

TEST(Mutation, RandomMatchesOracleInvolutionAndSymmetrizer) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + t % 6;
    ExchangeMatrix b(oracle::random_exchange(rng, n, 3));
    const std::size_t k = rng() % n;
    ExchangeMatrix mu = b.mutate(k);
    EXPECT_EQ(mu.entries(), oracle::to_matrix(oracle::mutate(oracle::to_small(b.entries()), k)));
    EXPECT_EQ(mu.mutate(k), b);
    // the carried symmetrizer is the one recomputed from scratch
    EXPECT_EQ(mu.symmetrizer(), b.symmetrizer());
    EXPECT_EQ(ExchangeMatrix(mu.entries()).symmetrizer(), b.symmetrizer());
  }
}

TEST(Mutation, LongWalksStaySkewSymmetrizable) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    ExchangeMatrix b(oracle::random_exchange(rng, 4, 2));
    for (auto k : oracle::random_sequence(rng, 4, 10)) {
      b = b.mutate(k);
      ASSERT_TRUE(check_skew_symmetrizable(b.entries()));
    }
  }
}

TEST(Extended, PrincipalExtensionShape) {
  ExchangeMatrix b{{0, 1}, {-1, 0}};
  auto e = principal_extension(b);
  EXPECT_EQ(e.entries(), (IntMatrix{{0, 1}, {-1, 0}, {1, 0}, {0, 1}}));
  EXPECT_EQ(e.principal(), b);
  EXPECT_EQ(principal_extension(ExchangeMatrix(IntMatrix(1, 1))).entries(), (IntMatrix{{0}, {1}}));
}

TEST(Extended, PrincipalMutationAtOne) {
  // row 3 picks up sgn(B31)[B31 B12]_+ = 1 in column 2
  auto e0 = principal_extension(ExchangeMatrix{{0, 1}, {-1, 0}});
  auto e = e0.mutate(0);
  EXPECT_EQ(e.entries(), (IntMatrix{{0, -1}, {1, 0}, {-1, 1}, {0, 1}}));
  EXPECT_EQ(e.entries(), oracle::to_matrix(oracle::mutate(oracle::to_small(e0.entries()), 0)));
}

TEST(Extended, FrozenIndexIsRejected) {
  auto e = principal_extension(ExchangeMatrix{{0, 1}, {-1, 0}});
  EXPECT_THROW(e.mutate(2), FrozenIndexError);
  EXPECT_THROW(e.mutate(7), std::out_of_range);
}

TEST(Extended, ThreeByTwoAgreesWithBulletPath) {
  ExtendedMatrix e(IntMatrix{{0, 2}, {-2, 0}, {1, 0}}, 2);
  auto mu = e.mutate(1);
  EXPECT_EQ(mu.entries(), (IntMatrix{{0, -2}, {2, 0}, {1, 0}}));
  auto viab = mutate_entries(bullet(e).entries, 1).block(0, 0, 3, 2);
  EXPECT_EQ(viab, mu.entries());
}

TEST(Bullet, Blocks) {
  auto b = bullet(principal_extension(ExchangeMatrix{{0, 1}, {-1, 0}}));
  EXPECT_EQ(b.entries, (IntMatrix{{0, 1, -1, 0}, {-1, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}}));
  auto c = bullet(ExtendedMatrix(IntMatrix{{0, 2}, {-2, 0}, {1, 0}}, 2));
  EXPECT_EQ(c.entries, (IntMatrix{{0, 2, -1}, {-2, 0, 0}, {1, 0, 0}}));
}

TEST(Bullet, NonTrivialSymmetrizerScalesTheUpperBlock) {
  // d = (1, 2); a frozen row attached to the long vertex alone needs d_r = 2
  ExtendedMatrix e(IntMatrix{{0, 2}, {-1, 0}, {0, 1}}, 2);
  auto b = bullet(e);
  EXPECT_EQ(b.symmetrizer, iv({1, 2, 2}));
  EXPECT_EQ(b.entries(1, 2), -1);
  ASSERT_TRUE(check_skew_symmetrizable(b.entries));
  // a frozen row with entries (1, 1) forces d_r = 2 and an upper entry -2 at vertex 1
  ExtendedMatrix f(IntMatrix{{0, 2}, {-1, 0}, {1, 1}}, 2);
  auto c = bullet(f);
  EXPECT_EQ(c.entries(0, 2), -2);
  EXPECT_EQ(c.entries(1, 2), -1);
  ASSERT_TRUE(check_skew_symmetrizable(c.entries));
}

TEST(Bullet, CommutesWithMutationOnRandomExtensions) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + t % 5;
    ExchangeMatrix b(oracle::random_exchange(rng, n, 3));
    ExtendedMatrix e = principal_extension(b);
    for (auto k : oracle::random_sequence(rng, n, 3)) e = e.mutate(k);
    const std::size_t k = rng() % n;
    const auto mu = e.mutate(k);
    EXPECT_EQ(mutate_entries(bullet(e).entries, k).block(0, 0, e.rows(), n), mu.entries());
    EXPECT_EQ(mu.mutate(k), e);
    EXPECT_EQ(mu.entries(), oracle::to_matrix(oracle::mutate(oracle::to_small(e.entries()), k)));
  }
}
