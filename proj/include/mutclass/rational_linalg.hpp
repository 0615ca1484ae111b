#pragma once

// Exact linear algebra over the rationals for small dense matrices.

#include "mutclass/int_matrix.hpp"

#include <vector>

namespace mutclass {

struct Definiteness {
  enum class Kind { Positive, Semipositive, Indefinite };
  Kind kind = Kind::Indefinite;
  /// Dimension of the kernel; only meaningful for Positive (0) and Semipositive.
  std::size_t corank = 0;

  bool positive() const { return kind == Kind::Positive; }
  bool semipositive_corank(std::size_t r) const { return kind == Kind::Semipositive && corank == r; }
  friend bool operator==(const Definiteness& a, const Definiteness& b) {
    return a.kind == b.kind && (a.kind == Kind::Indefinite || a.corank == b.corank);
  }
};

inline const char* to_string(Definiteness::Kind k) {
  switch (k) {
    case Definiteness::Kind::Positive: return "Positive";
    case Definiteness::Kind::Semipositive: return "Semipositive";
    case Definiteness::Kind::Indefinite: return "Indefinite";
  }
  return "?";
}

/// Classifies a symmetric integer matrix by symmetric Gaussian elimination
/// with positive diagonal pivots. A zero diagonal entry in a semidefinite
/// matrix forces a zero row, which is what the stopping rule checks.
inline Definiteness classify_symmetric(const IntMatrix& c) {
  const std::size_t n = c.rows();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = c(i, j);
  std::vector<bool> active(n, true);
  std::size_t rank = 0;
  while (true) {
    std::size_t pivot = n;
    bool negative = false;
    for (std::size_t p = 0; p < n; ++p) {
      if (!active[p]) continue;
      if (m[p][p] > 0 && pivot == n) pivot = p;
      if (m[p][p] < 0) negative = true;
    }
    if (negative) return {Definiteness::Kind::Indefinite, 0};
    if (pivot == n) break;
    const Rational piv = m[pivot][pivot];
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || i == pivot || m[i][pivot] == 0) continue;
      const Rational f = m[i][pivot] / piv;
      for (std::size_t j = 0; j < n; ++j)
        if (active[j] && j != pivot) m[i][j] -= f * m[pivot][j];
    }
    active[pivot] = false;
    ++rank;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (active[i] && active[j] && m[i][j] != 0) return {Definiteness::Kind::Indefinite, 0};
  if (rank == n) return {Definiteness::Kind::Positive, 0};
  return {Definiteness::Kind::Semipositive, n - rank};
}

/// Primitive integer vector proportional to a rational one, first nonzero
/// coordinate positive.
inline IntVector primitive_integer(const std::vector<Rational>& v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, boost::multiprecision::denominator(x));
  IntVector out(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = boost::multiprecision::numerator(v[i]) * (den / boost::multiprecision::denominator(v[i]));
    g = gcd(g, out[i]);
  }
  if (g.is_zero()) return out;
  int lead = 0;
  for (const auto& x : out)
    if (!x.is_zero()) {
      lead = sign(x);
      break;
    }
  for (auto& x : out) x = x / g * lead;
  return out;
}

/// Basis of the right kernel {x : A x = 0}, each vector primitive integral.
inline std::vector<IntVector> kernel_basis(const IntMatrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = a(i, j);
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<IntVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m[i][f];
    basis.push_back(primitive_integer(v));
  }
  return basis;
}

inline std::size_t rank_of(const IntMatrix& a) { return a.cols() - kernel_basis(a).size(); }

}  // namespace mutclass
