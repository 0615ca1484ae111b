#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mutclass;

namespace {

Companion random_admissible(std::mt19937_64& rng, std::size_t n) {
  while (true) {
    ExchangeMatrix b(oracle::random_exchange(rng, n, 3));
    auto all = admissible_companions(b);
    if (all.empty()) continue;
    Companion c = all[rng() % all.size()];
    for (std::size_t i = 0; i < n; ++i)
      if (rng() % 2) c = sign_change(c, i);
    return c;
  }
}

ExchangeMatrix oriented_triangle() { return ExchangeMatrix{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}}; }

ExchangeMatrix acyclic_triangle() {
  // 1 -> 2, 2 -> 3, 1 -> 3
  return ExchangeMatrix{{0, -1, -1}, {1, 0, -1}, {1, 1, 0}};
}

}  // namespace

TEST(Companion, RejectsMalformedMatrices) {
  ExchangeMatrix b{{0, 1}, {-1, 0}};
  EXPECT_THROW(Companion(IntMatrix{{1, -1}, {-1, 2}}, b), std::invalid_argument);
  EXPECT_THROW(Companion(IntMatrix{{2, -2}, {-2, 2}}, b), std::invalid_argument);
  EXPECT_THROW(Companion(IntMatrix{{2, 1}, {-1, 2}}, b), std::invalid_argument);
  EXPECT_NO_THROW(Companion(IntMatrix{{2, 1}, {1, 2}}, b));
}

TEST(Admissibility, TreeGetsGeneralizedCartanMatrix) {
  ExchangeMatrix b{{0, 1, 0}, {-1, 0, 2}, {0, -1, 0}};
  auto c = find_admissible_companion(b);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->matrix(), (IntMatrix{{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}}));
  EXPECT_TRUE(is_admissible(*c));
}

TEST(Admissibility, OrientedTriangleNeedsOnePositiveEdge) {
  auto b = oriented_triangle();
  auto all_negative = cartan_companion(b);
  auto r = is_admissible(all_negative);
  EXPECT_FALSE(r);
  ASSERT_TRUE(r.violating);
  EXPECT_TRUE(r.violating->oriented);
  Companion flipped(IntMatrix{{2, 1, -1}, {1, 2, -1}, {-1, -1, 2}}, b);
  EXPECT_TRUE(is_admissible(flipped));
  auto found = find_admissible_companion(b);
  ASSERT_TRUE(found);
  EXPECT_TRUE(is_admissible(*found));
}

TEST(Admissibility, NonOrientedTriangleAllNegative) {
  EXPECT_TRUE(is_admissible(cartan_companion(acyclic_triangle())));
}

TEST(Admissibility, EnumerationCoversEverySignPatternUpToSignChange) {
  // every admissible sign pattern on the oriented triangle is a sign change of
  // an enumerated representative
  auto b = oriented_triangle();
  auto reps = admissible_companions(b);
  for (unsigned mask = 0; mask < 8; ++mask) {
    IntMatrix a = cartan_companion(b).matrix();
    const std::pair<int, int> pairs[3] = {{0, 1}, {1, 2}, {0, 2}};
    for (int e = 0; e < 3; ++e)
      if (mask & (1u << e)) {
        a(pairs[e].first, pairs[e].second) = 1;
        a(pairs[e].second, pairs[e].first) = 1;
      }
    Companion c(a, b);
    if (!is_admissible(c)) continue;
    bool reached = false;
    for (const auto& rep : reps)
      for (unsigned s = 0; s < 8 && !reached; ++s) {
        Companion x = rep;
        for (std::size_t i = 0; i < 3; ++i)
          if (s & (1u << i)) x = sign_change(x, i);
        reached = x == c;
      }
    EXPECT_TRUE(reached) << a;
  }
}

TEST(Mutation, TwoByTwoExample) {
  Companion c(IntMatrix{{2, -1}, {-1, 2}}, ExchangeMatrix{{0, 1}, {-1, 0}});
  Companion mu = mutate_companion(c, 0);
  EXPECT_EQ(mu.matrix(), (IntMatrix{{2, 1}, {1, 2}}));
  EXPECT_EQ(mu.host(), ExchangeMatrix({{0, -1}, {1, 0}}));
  // Gram identity for the base change
  const IntMatrix x = symmetric_base_change(c, 0);
  EXPECT_EQ(gram_in_basis(c.gram(), x), mu.gram());
}

TEST(Mutation, AtSinkOfAcyclicHostStaysAdmissible) {
  // vertex 3 is a sink of 1 -> 2 -> 3, 1 -> 3
  auto c = cartan_companion(acyclic_triangle());
  auto mu = mutate_companion(c, 2);
  EXPECT_TRUE(is_admissible(mu));
}

TEST(Mutation, RefusesNonAdmissible) {
  EXPECT_THROW(mutate_companion(cartan_companion(oriented_triangle()), 0), NonAdmissibleInput);
}

TEST(Mutation, GramIdentityAndCongruenceOnRandomCompanions) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + t % 4;
    Companion c = random_admissible(rng, n);
    const std::size_t k = rng() % n;
    Companion mu = mutate_companion(c, k);
    EXPECT_EQ(mu.host(), c.host().mutate(k));
    const IntMatrix x = symmetric_base_change(c, k);
    ASSERT_EQ(gram_in_basis(c.gram(), x), mu.gram()) << c.matrix() << " k=" << k;
    // congruence keeps rank and definiteness class
    if (t % 5 == 0) EXPECT_EQ(semidefiniteness(mu), semidefiniteness(c));
  }
}

TEST(SignChange, InvolutiveAndPreservesEverything) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 4;
    Companion c = random_admissible(rng, n);
    const std::size_t i = rng() % n;
    Companion s = sign_change(c, i);
    EXPECT_EQ(sign_change(s, i), c);
    EXPECT_TRUE(is_admissible(s));
    EXPECT_EQ(semidefiniteness(s), semidefiniteness(c));
  }
}

TEST(Semidefiniteness, SmallCases) {
  ExchangeMatrix b{{0, 1}, {-1, 0}};
  EXPECT_TRUE(semidefiniteness(Companion(IntMatrix{{2, -1}, {-1, 2}}, b)).positive());
  ExchangeMatrix w4{{0, 2}, {-2, 0}};
  Companion affine(IntMatrix{{2, -2}, {-2, 2}}, w4);
  EXPECT_TRUE(semidefiniteness(affine).semipositive_corank(1));
  ExchangeMatrix w5{{0, 5}, {-1, 0}};
  EXPECT_EQ(semidefiniteness(cartan_companion(w5)).kind, Definiteness::Kind::Indefinite);
}

TEST(Semidefiniteness, AgreesWithPrincipalMinors) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = 2 + t % 4;
    ExchangeMatrix b(oracle::random_exchange(rng, n, 2));
    auto all = admissible_companions(b);
    for (const auto& c : all) {
      const auto d = semidefiniteness(c);
      const long long expected = oracle::corank_by_minors(c.gram());
      if (expected < 0)
        EXPECT_EQ(d.kind, Definiteness::Kind::Indefinite) << c.matrix();
      else
        EXPECT_EQ(d, (Definiteness{expected == 0 ? Definiteness::Kind::Positive : Definiteness::Kind::Semipositive,
                                   static_cast<std::size_t>(expected)}))
            << c.matrix();
    }
  }
}

TEST(Radical, Basis) {
  auto r = radical_basis(IntMatrix{{2, -2}, {-2, 2}});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].u, (IntVector{1, 1}));
  EXPECT_TRUE(r[0].sincere());
  EXPECT_TRUE(radical_basis(IntMatrix{{2, -1}, {-1, 2}}).empty());
  // D4 affine star: null root (1,1,2,1,1) with the centre in the middle
  IntMatrix star{{2, 0, -1, 0, 0}, {0, 2, -1, 0, 0}, {-1, -1, 2, -1, -1}, {0, 0, -1, 2, 0}, {0, 0, -1, 0, 2}};
  auto s = radical_basis(star);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].u, (IntVector{1, 1, 2, 1, 1}));
}

TEST(Restrict, PrincipalSubmatrix) {
  Companion affine(IntMatrix{{2, -2}, {-2, 2}}, ExchangeMatrix{{0, 2}, {-2, 0}});
  EXPECT_EQ(restrict(affine, {1}).matrix(), (IntMatrix{{2}}));
  Companion a3 = cartan_companion(ExchangeMatrix{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});
  ASSERT_TRUE(semidefiniteness(a3).positive());
  EXPECT_TRUE(semidefiniteness(restrict(a3, {0, 2})).positive());
  EXPECT_EQ(restrict(sign_change(a3, 0), {0, 1}), sign_change(restrict(a3, {0, 1}), 0));
}

TEST(Mutation, TwiceIsSignChangeAtK) {
  // A''_ik = sgn(-B_ik) sgn(B_ik) A_ik = -A_ik; other entries return
  Companion c(IntMatrix{{2, -1}, {-1, 2}}, ExchangeMatrix{{0, 1}, {-1, 0}});
  EXPECT_EQ(mutate_companion(mutate_companion(c, 0), 0), sign_change(c, 0));
  std::mt19937_64 rng(31);
  int done = 0;
  while (done < 300) {
    const std::size_t n = 2 + done % 4;
    Companion a = random_admissible(rng, n);
    const std::size_t k = rng() % n;
    Companion once = mutate_companion(a, k);
    if (!is_admissible(once)) continue;
    ++done;
    EXPECT_EQ(mutate_companion(once, k), sign_change(a, k)) << a.matrix();
  }
}
