#pragma once

// Exchange matrices: skew-symmetrizability, symmetrizers, matrix mutation,
// and rectangular (frozen-row) extensions with their square completion.
//
// All indices in this API are 0-based.

#include "mutclass/int_matrix.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mutclass {

struct SkewViolation {
  enum class Kind { NotSquare, NonZeroDiagonal, NotSignSkewSymmetric, InconsistentCycle };
  Kind kind = Kind::NotSquare;
  std::size_t i = 0;
  std::size_t j = 0;
  /// Vertices of the offending cycle, in traversal order (InconsistentCycle).
  std::vector<std::size_t> cycle;

  std::string message() const {
    std::ostringstream os;
    switch (kind) {
      case Kind::NotSquare:
        os << "matrix is not square";
        break;
      case Kind::NonZeroDiagonal:
        os << "nonzero diagonal entry at (" << i + 1 << "," << i + 1 << ")";
        break;
      case Kind::NotSignSkewSymmetric:
        os << "not sign-skew-symmetric at pair (" << i + 1 << "," << j + 1 << ")";
        break;
      case Kind::InconsistentCycle:
        os << "cycle products disagree on cycle";
        for (auto v : cycle) os << ' ' << v + 1;
        break;
    }
    return os.str();
  }
};

inline const char* to_string(SkewViolation::Kind k) {
  switch (k) {
    case SkewViolation::Kind::NotSquare: return "NotSquare";
    case SkewViolation::Kind::NonZeroDiagonal: return "NonZeroDiagonal";
    case SkewViolation::Kind::NotSignSkewSymmetric: return "NotSignSkewSymmetric";
    case SkewViolation::Kind::InconsistentCycle: return "InconsistentCycle";
  }
  return "?";
}

class NotSkewSymmetrizable : public std::invalid_argument {
 public:
  explicit NotSkewSymmetrizable(SkewViolation v)
      : std::invalid_argument("not skew-symmetrizable: " + v.message()), violation_(std::move(v)) {}
  const SkewViolation& violation() const { return violation_; }

 private:
  SkewViolation violation_;
};

/// Raised when mutation is requested at a frozen (row-only) index.
class FrozenIndexError : public std::invalid_argument {
 public:
  FrozenIndexError(std::size_t k, std::size_t n)
      : std::invalid_argument("mutation at frozen index " + std::to_string(k + 1) +
                              " (mutable indices are 1.." + std::to_string(n) + ")"),
        index_(k) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

struct SkewCheckResult {
  std::optional<IntVector> symmetrizer;
  std::optional<SkewViolation> violation;
  explicit operator bool() const { return symmetrizer.has_value(); }
};

namespace detail {

inline std::vector<std::size_t> tree_path_to_root(std::size_t v, const std::vector<std::size_t>& parent) {
  std::vector<std::size_t> path{v};
  while (parent[v] != v) {
    v = parent[v];
    path.push_back(v);
  }
  return path;
}

/// Cycle through tree edge paths from a and b plus the off-tree edge {a,b}.
inline std::vector<std::size_t> fundamental_cycle(std::size_t a, std::size_t b,
                                                  const std::vector<std::size_t>& parent) {
  auto pa = tree_path_to_root(a, parent);
  auto pb = tree_path_to_root(b, parent);
  // strip common suffix, keeping the lowest common ancestor once
  while (pa.size() > 1 && pb.size() > 1 && pa[pa.size() - 2] == pb[pb.size() - 2]) {
    pa.pop_back();
    pb.pop_back();
  }
  std::vector<std::size_t> cycle(pa.begin(), pa.end());
  for (auto it = pb.rbegin() + 1; it != pb.rend(); ++it) cycle.push_back(*it);
  return cycle;
}

}  // namespace detail

/// Decides skew-symmetrizability by propagating symmetrizer ratios along a
/// spanning forest of the nonzero pattern and verifying every off-tree pair.
/// The returned symmetrizer is the minimal positive integer vector on each
/// connected component; isolated vertices get 1.
inline SkewCheckResult check_skew_symmetrizable(const IntMatrix& m) {
  SkewCheckResult result;
  if (!m.is_square()) {
    result.violation = SkewViolation{SkewViolation::Kind::NotSquare, 0, 0, {}};
    return result;
  }
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (!m(i, i).is_zero()) {
      result.violation = SkewViolation{SkewViolation::Kind::NonZeroDiagonal, i, i, {}};
      return result;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const int sij = sign(m(i, j));
      const int sji = sign(m(j, i));
      if (!((sij == 0 && sji == 0) || sij * sji < 0)) {
        result.violation = SkewViolation{SkewViolation::Kind::NotSignSkewSymmetric, i, j, {}};
        return result;
      }
    }
  }

  std::vector<Rational> d(n);
  std::vector<std::size_t> parent(n);
  std::vector<std::size_t> component(n, n);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t root = 0; root < n; ++root) {
    if (component[root] != n) continue;
    const std::size_t c = members.size();
    members.emplace_back();
    component[root] = c;
    parent[root] = root;
    d[root] = 1;
    std::queue<std::size_t> q;
    q.push(root);
    while (!q.empty()) {
      const std::size_t i = q.front();
      q.pop();
      members[c].push_back(i);
      for (std::size_t j = 0; j < n; ++j) {
        if (m(i, j).is_zero()) continue;
        if (component[j] == n) {
          component[j] = c;
          parent[j] = i;
          // d_i B_ij = -d_j B_ji
          d[j] = d[i] * Rational(m(i, j)) / Rational(Integer(-m(j, i)));
          q.push(j);
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j).is_zero()) continue;
      if (d[i] * m(i, j) != -d[j] * m(j, i)) {
        result.violation = SkewViolation{SkewViolation::Kind::InconsistentCycle, i, j,
                                         detail::fundamental_cycle(i, j, parent)};
        return result;
      }
    }

  IntVector out(n);
  for (const auto& comp : members) {
    Integer den_lcm = 1;
    for (auto v : comp) den_lcm = lcm(den_lcm, boost::multiprecision::denominator(d[v]));
    Integer num_gcd = 0;
    for (auto v : comp) {
      out[v] = boost::multiprecision::numerator(d[v]) * (den_lcm / boost::multiprecision::denominator(d[v]));
      num_gcd = gcd(num_gcd, out[v]);
    }
    for (auto v : comp) out[v] /= num_gcd;
  }
  result.symmetrizer = std::move(out);
  return result;
}

/// Applies the mutation formula at column k < cols to every row of an m x n
/// matrix whose top n x n block is the exchange part.
inline IntMatrix mutate_entries(const IntMatrix& b, std::size_t k) {
  if (k >= b.cols() || k >= b.rows()) throw std::out_of_range("mutation index out of range");
  IntMatrix r(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i) {
    const Integer& bik = b(i, k);
    const int sik = sign(bik);
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (i == k || j == k) {
        r(i, j) = -b(i, j);
      } else if (sik == 0) {
        r(i, j) = b(i, j);
      } else {
        const Integer p = bik * b(k, j);
        r(i, j) = p.sign() > 0 ? Integer(b(i, j) + sik * p) : b(i, j);
      }
    }
  }
  return r;
}

/// n x n integer skew-symmetrizable matrix with its minimal symmetrizer.
class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;

  /// Validates and throws NotSkewSymmetrizable on failure.
  explicit ExchangeMatrix(IntMatrix entries) : entries_(std::move(entries)) {
    auto check = check_skew_symmetrizable(entries_);
    if (!check) throw NotSkewSymmetrizable(*check.violation);
    symmetrizer_ = std::move(*check.symmetrizer);
  }

  ExchangeMatrix(std::initializer_list<std::initializer_list<long long>> rows)
      : ExchangeMatrix(IntMatrix(rows)) {}

  std::size_t size() const { return entries_.rows(); }
  const IntMatrix& entries() const { return entries_; }
  const IntVector& symmetrizer() const { return symmetrizer_; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

  /// D * B, skew-symmetric.
  IntMatrix skew_form() const { return scale_rows(symmetrizer_, entries_); }

  /// mu_k; the symmetrizer is carried over unchanged.
  ExchangeMatrix mutate(std::size_t k) const {
    if (k >= size()) throw std::out_of_range("mutation index out of range");
    return ExchangeMatrix(mutate_entries(entries_, k), symmetrizer_);
  }

  ExchangeMatrix mutate(const std::vector<std::size_t>& sequence) const {
    ExchangeMatrix b = *this;
    for (auto k : sequence) b = b.mutate(k);
    return b;
  }

  /// Principal submatrix on the listed indices.
  ExchangeMatrix restrict_to(const std::vector<std::size_t>& idx) const {
    return ExchangeMatrix(entries_.select(idx, idx));
  }

  friend bool operator==(const ExchangeMatrix& a, const ExchangeMatrix& b) {
    return a.entries_ == b.entries_;
  }

 private:
  ExchangeMatrix(IntMatrix entries, IntVector symmetrizer)
      : entries_(std::move(entries)), symmetrizer_(std::move(symmetrizer)) {}

  IntMatrix entries_;
  IntVector symmetrizer_;
};

inline ExchangeMatrix mutate(const ExchangeMatrix& b, std::size_t k) { return b.mutate(k); }

/// Square m x m completion of an extended matrix.
struct BulletMatrix {
  IntMatrix entries;
  std::size_t mutable_count = 0;
  /// d_1..d_m; the first n extend the principal symmetrizer.
  IntVector symmetrizer;

  std::size_t size() const { return entries.rows(); }
  IntMatrix left_block() const { return entries.block(0, 0, entries.rows(), mutable_count); }
  IntMatrix skew_form() const { return scale_rows(symmetrizer, entries); }
};

/// m x n matrix whose top n x n block is skew-symmetrizable; rows n..m-1 are
/// frozen. Mutation is only defined at the first n indices.
class ExtendedMatrix {
 public:
  ExtendedMatrix() = default;

  ExtendedMatrix(IntMatrix entries, std::size_t n) : entries_(std::move(entries)), n_(n) {
    if (n_ == 0 || entries_.cols() != n_ || entries_.rows() < n_)
      throw std::invalid_argument("extended matrix must be m x n with m >= n >= 1");
    principal_ = ExchangeMatrix(entries_.block(0, 0, n_, n_));
    compute_frozen_symmetrizer();
  }

  /// Treats a square matrix as an extended matrix without frozen rows.
  explicit ExtendedMatrix(const ExchangeMatrix& b)
      : entries_(b.entries()), n_(b.size()), principal_(b), symmetrizer_(b.symmetrizer()) {}

  std::size_t rows() const { return entries_.rows(); }
  std::size_t mutable_count() const { return n_; }
  std::size_t frozen_count() const { return entries_.rows() - n_; }
  const IntMatrix& entries() const { return entries_; }
  const ExchangeMatrix& principal() const { return principal_; }
  IntMatrix frozen_rows() const { return entries_.block(n_, 0, frozen_count(), n_); }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

  /// Symmetrizer of the square completion: the principal one followed by the
  /// smallest admissible value for each frozen row.
  const IntVector& completion_symmetrizer() const { return symmetrizer_; }

  ExtendedMatrix mutate(std::size_t k) const {
    if (k >= rows()) throw std::out_of_range("mutation index out of range");
    if (k >= n_) throw FrozenIndexError(k, n_);
    ExtendedMatrix r;
    r.entries_ = mutate_entries(entries_, k);
    r.n_ = n_;
    r.principal_ = principal_.mutate(k);
    r.symmetrizer_ = symmetrizer_;
    return r;
  }

  ExtendedMatrix mutate(const std::vector<std::size_t>& sequence) const {
    ExtendedMatrix b = *this;
    for (auto k : sequence) b = b.mutate(k);
    return b;
  }

  friend bool operator==(const ExtendedMatrix& a, const ExtendedMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  void compute_frozen_symmetrizer() {
    symmetrizer_ = principal_.symmetrizer();
    for (std::size_t r = n_; r < entries_.rows(); ++r) {
      // smallest d_r with d_i | d_r * L_ri for every mutable i
      Integer dr = 1;
      for (std::size_t i = 0; i < n_; ++i) {
        const Integer& l = entries_(r, i);
        if (l.is_zero()) continue;
        const Integer& di = symmetrizer_[i];
        dr = lcm(dr, di / gcd(di, l));
      }
      symmetrizer_.push_back(dr);
    }
  }

  IntMatrix entries_;
  std::size_t n_ = 0;
  ExchangeMatrix principal_;
  IntVector symmetrizer_;
};

inline ExtendedMatrix mutate_extended(const ExtendedMatrix& b, std::size_t k) { return b.mutate(k); }

/// 2n x n matrix: B on top, identity below.
inline ExtendedMatrix principal_extension(const ExchangeMatrix& b) {
  const std::size_t n = b.size();
  IntMatrix e(2 * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e(i, j) = b(i, j);
  for (std::size_t i = 0; i < n; ++i) e(n + i, i) = 1;
  return ExtendedMatrix(std::move(e), n);
}

/// Square completion: left block is the extended matrix, the upper-right
/// block holds -(d_r / d_i) L_ri, the lower-right block is zero. When the
/// completion symmetrizer agrees on every attached pair (always the case for
/// principal extensions and skew-symmetric principal parts) the upper-right
/// block is exactly -L.
inline BulletMatrix bullet(const ExtendedMatrix& b) {
  const std::size_t m = b.rows();
  const std::size_t n = b.mutable_count();
  const IntVector& d = b.completion_symmetrizer();
  BulletMatrix out;
  out.entries = IntMatrix(m, m);
  out.mutable_count = n;
  out.symmetrizer = d;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out.entries(i, j) = b(i, j);
  for (std::size_t r = n; r < m; ++r)
    for (std::size_t i = 0; i < n; ++i) {
      const Integer& l = b(r, i);
      if (l.is_zero()) continue;
      Integer num = d[r] * l;
      if (num % d[i] != 0) throw std::logic_error("bullet: non-integral completion entry");
      out.entries(i, r) = -(num / d[i]);
    }
  auto check = check_skew_symmetrizable(out.entries);
  if (!check) throw NotSkewSymmetrizable(*check.violation);
  return out;
}

}  // namespace mutclass
