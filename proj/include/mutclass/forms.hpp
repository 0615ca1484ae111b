#pragma once

// Bilinear-form views of mutation. Mutation of B (resp. of a companion A) is
// a change of basis for the skew form with Gram matrix D*B (resp. the
// symmetric form D*A). Vectors are always stored in standard coordinates.

#include "mutclass/companion.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace mutclass {

/// Element of the two-element field.
class F2 {
 public:
  constexpr F2() = default;
  constexpr explicit F2(bool v) : v_(v) {}
  static F2 of(const Integer& x) { return F2(static_cast<bool>(x & 1)); }
  static constexpr F2 of(long long x) { return F2((x & 1) != 0); }

  constexpr bool is_one() const { return v_; }
  constexpr bool is_zero() const { return !v_; }

  friend constexpr F2 operator+(F2 a, F2 b) { return F2(a.v_ != b.v_); }
  friend constexpr F2 operator-(F2 a, F2 b) { return a + b; }
  friend constexpr F2 operator*(F2 a, F2 b) { return F2(a.v_ && b.v_); }
  F2& operator+=(F2 o) { return *this = *this + o; }
  friend constexpr bool operator==(F2 a, F2 b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(F2 a, F2 b) { return a.v_ != b.v_; }

 private:
  bool v_ = false;
};

using F2Vector = std::vector<F2>;

inline F2Vector reduce_mod2(const IntVector& v) {
  F2Vector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(F2::of(x));
  return out;
}

inline F2Vector unit_vector_mod2(std::size_t size, std::size_t index) {
  F2Vector e(size);
  e.at(index) = F2(true);
  return e;
}

/// Alternating form over the two-element field (symmetric, zero diagonal).
class Mod2Form {
 public:
  explicit Mod2Form(const IntMatrix& gram) : m_(gram.rows()), g_(m_ * m_) {
    if (!gram.is_square()) throw std::invalid_argument("Mod2Form: Gram matrix must be square");
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < m_; ++j) g_[i * m_ + j] = F2::of(gram(i, j));
    for (std::size_t i = 0; i < m_; ++i) {
      if (at(i, i).is_one()) throw std::invalid_argument("Mod2Form: nonzero diagonal");
      for (std::size_t j = 0; j < i; ++j)
        if (at(i, j) != at(j, i)) throw std::invalid_argument("Mod2Form: not symmetric");
    }
  }

  std::size_t size() const { return m_; }
  F2 at(std::size_t i, std::size_t j) const { return g_[i * m_ + j]; }

  F2Vector apply(const F2Vector& w) const {
    if (w.size() != m_) throw std::invalid_argument("Mod2Form: dimension mismatch");
    F2Vector out(m_);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < m_; ++j) out[i] += at(i, j) * w[j];
    return out;
  }

 private:
  std::size_t m_;
  std::vector<F2> g_;
};

/// (D * B) mod 2 for the square completion, with its full symmetrizer.
inline Mod2Form mod2_reduce(const BulletMatrix& b) { return Mod2Form(b.skew_form()); }

inline Mod2Form mod2_reduce(const ExchangeMatrix& b) { return Mod2Form(b.skew_form()); }

/// v^T G w.
inline F2 mod2_pairing(const Mod2Form& form, const F2Vector& v, const F2Vector& w) {
  if (v.size() != form.size() || w.size() != form.size())
    throw std::invalid_argument("mod2_pairing: dimension mismatch");
  F2 acc;
  for (std::size_t i = 0; i < form.size(); ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < form.size(); ++j) acc += form.at(i, j) * w[j];
  }
  return acc;
}

/// Columns are the current basis vectors in standard coordinates.
struct BasisTrack {
  IntMatrix basis;
  std::vector<std::size_t> history;

  static BasisTrack identity(std::size_t n) { return {IntMatrix::identity(n), {}}; }

  void apply(const IntMatrix& step, std::size_t k) {
    basis = basis * step;
    history.push_back(k);
  }
};

/// Basis change realizing mu_k on the skew form: e'_k = -e_k,
/// e'_i = e_i - B_ki e_k when B_ki < 0, otherwise e'_i = e_i.
inline IntMatrix skew_base_change(const ExchangeMatrix& b, std::size_t k) {
  const std::size_t n = b.size();
  if (k >= n) throw std::out_of_range("skew_base_change: index out of range");
  IntMatrix x = IntMatrix::identity(n);
  x(k, k) = -1;
  for (std::size_t i = 0; i < n; ++i)
    if (i != k && b(k, i).sign() < 0) x(k, i) = -b(k, i);
  return x;
}

/// Same construction with A_ki in place of B_ki (the condition stays on B).
inline IntMatrix symmetric_base_change(const Companion& cmp, std::size_t k) {
  const std::size_t n = cmp.size();
  if (k >= n) throw std::out_of_range("symmetric_base_change: index out of range");
  if (!is_admissible(cmp)) throw NonAdmissibleInput();
  IntMatrix x = IntMatrix::identity(n);
  x(k, k) = -1;
  for (std::size_t i = 0; i < n; ++i)
    if (i != k && cmp.host()(k, i).sign() < 0) x(k, i) = -cmp(k, i);
  return x;
}

/// Coordinates of a vector with respect to the basis of
/// symmetric_base_change: u'_i = u_i for i != k and
/// u'_k = -u_k - sum A_ki u_i over i with B_ki < 0.
inline IntVector transform_coordinates(const Companion& cmp, std::size_t k, const IntVector& u) {
  if (u.size() != cmp.size()) throw std::invalid_argument("transform_coordinates: dimension mismatch");
  IntVector out = u;
  Integer s = -u[k];
  for (std::size_t i = 0; i < cmp.size(); ++i)
    if (i != k && cmp.host()(k, i).sign() < 0) s -= cmp(k, i) * u[i];
  out[k] = s;
  return out;
}

/// Tracks B and the accumulated basis along a mutation sequence.
inline BasisTrack track_skew(const ExchangeMatrix& b0, const std::vector<std::size_t>& sequence,
                             ExchangeMatrix* final_matrix = nullptr) {
  BasisTrack t = BasisTrack::identity(b0.size());
  ExchangeMatrix b = b0;
  for (auto k : sequence) {
    t.apply(skew_base_change(b, k), k);
    b = b.mutate(k);
  }
  if (final_matrix) *final_matrix = b;
  return t;
}

inline BasisTrack track_symmetric(const Companion& a0, const std::vector<std::size_t>& sequence,
                                  std::optional<Companion>* final_companion = nullptr) {
  BasisTrack t = BasisTrack::identity(a0.size());
  Companion a = a0;
  for (auto k : sequence) {
    t.apply(symmetric_base_change(a, k), k);
    a = mutate_companion(a, k);
  }
  if (final_companion) *final_companion = a;
  return t;
}

/// X^T G X.
inline IntMatrix gram_in_basis(const IntMatrix& gram, const IntMatrix& basis) {
  return basis.transpose() * gram * basis;
}

struct Mod2WalkResult {
  bool holds = true;
  /// Index with d and u-coordinate both odd after each step (first entry is
  /// the starting index).
  std::vector<std::size_t> trail;
  /// Step at which no such index existed, when holds is false.
  std::optional<std::size_t> failed_step;
};

/// Follows (B, A, u) along a mutation sequence using companion mutation and
/// the coordinate rule, and checks that some index keeps d and u odd. The
/// symmetrizer d is fixed throughout.
inline Mod2WalkResult mod2_walk_invariant(const Companion& start, const IntVector& d, const IntVector& u,
                                            std::size_t l, const std::vector<std::size_t>& sequence) {
  const std::size_t n = start.size();
  if (d.size() != n || u.size() != n || l >= n) throw std::invalid_argument("mod2_walk_invariant: bad dimensions");
  const IntMatrix& b = start.host().entries();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (d[i] * b(i, j) != -d[j] * b(j, i))
        throw std::invalid_argument("mod2_walk_invariant: d does not skew-symmetrize B");
  if (start.matrix() * u != IntVector(n)) throw std::invalid_argument("mod2_walk_invariant: u is not radical");
  auto odd_pair = [&](const IntVector& v, std::size_t i) { return F2::of(d[i]).is_one() && F2::of(v[i]).is_one(); };
  if (!odd_pair(u, l)) throw std::invalid_argument("mod2_walk_invariant: hypothesis fails at the given index");

  Mod2WalkResult result;
  result.trail.push_back(l);
  Companion a = start;
  IntVector v = u;
  std::size_t current = l;
  for (std::size_t step = 0; step < sequence.size(); ++step) {
    const std::size_t k = sequence[step];
    v = transform_coordinates(a, k, v);
    a = mutate_companion(a, k);
    if (!odd_pair(v, current)) {
      std::optional<std::size_t> next;
      for (std::size_t i = 0; i < n && !next; ++i)
        if (odd_pair(v, i)) next = i;
      if (!next) {
        result.holds = false;
        result.failed_step = step;
        return result;
      }
      current = *next;
    }
    result.trail.push_back(current);
  }
  return result;
}

/// Pairing of e_{n+l} with (u, 0) under the mod-2 form of the completed
/// principal extension of B.
inline F2 frozen_pairing(const ExchangeMatrix& b, const IntVector& u, std::size_t l) {
  const std::size_t n = b.size();
  auto form = mod2_reduce(bullet(principal_extension(b)));
  F2Vector padded(2 * n);
  for (std::size_t i = 0; i < n; ++i) padded[i] = F2::of(u[i]);
  return mod2_pairing(form, unit_vector_mod2(2 * n, n + l), padded);
}

}  // namespace mutclass
