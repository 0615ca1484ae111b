#pragma once

// Quasi-Cartan companions of skew-symmetrizable matrices: admissibility,
// companion mutation, sign changes, and exact semidefiniteness.

#include "mutclass/diagram.hpp"
#include "mutclass/rational_linalg.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mutclass {

class NonAdmissibleInput : public std::invalid_argument {
 public:
  NonAdmissibleInput() : std::invalid_argument("companion mutation requires an admissible companion") {}
};

struct RadicalVector {
  IntVector u;
  bool sincere() const {
    for (const auto& x : u)
      if (x.is_zero()) return false;
    return true;
  }
};

/// Quasi-Cartan matrix A (diagonal 2, |A_ij| = |B_ij| off the diagonal,
/// sign-symmetric) paired with its host exchange matrix B. The host's
/// symmetrizer D makes D*A symmetric.
class Companion {
 public:
  Companion(IntMatrix a, ExchangeMatrix host) : a_(std::move(a)), host_(std::move(host)) {
    const std::size_t n = host_.size();
    if (a_.rows() != n || a_.cols() != n) throw std::invalid_argument("companion: size mismatch with host");
    for (std::size_t i = 0; i < n; ++i) {
      if (a_(i, i) != 2) throw std::invalid_argument("companion: diagonal entries must be 2");
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (abs(a_(i, j)) != abs(host_(i, j)))
          throw std::invalid_argument("companion: |A_ij| != |B_ij| at (" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ")");
        if (sign(a_(i, j)) != sign(a_(j, i)))
          throw std::invalid_argument("companion: not sign-symmetric at (" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ")");
      }
    }
  }

  std::size_t size() const { return a_.rows(); }
  const IntMatrix& matrix() const { return a_; }
  const ExchangeMatrix& host() const { return host_; }
  const IntVector& symmetrizer() const { return host_.symmetrizer(); }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a_(i, j); }

  /// C = D * A, the Gram matrix of the associated symmetric form.
  IntMatrix gram() const { return scale_rows(symmetrizer(), a_); }

  friend bool operator==(const Companion& x, const Companion& y) {
    return x.a_ == y.a_ && x.host_ == y.host_;
  }

 private:
  IntMatrix a_;
  ExchangeMatrix host_;
};

/// Companion with every off-diagonal entry -|B_ij| (a generalized Cartan
/// matrix when admissible).
inline Companion cartan_companion(const ExchangeMatrix& b) {
  const std::size_t n = b.size();
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = i == j ? Integer(2) : Integer(-abs(b(i, j)));
  return Companion(std::move(a), b);
}

struct AdmissibilityResult {
  bool admissible = true;
  std::optional<Cycle> violating;
  explicit operator bool() const { return admissible; }
};

namespace detail {

/// Sign rule on one cycle: an oriented cycle needs an odd number of positive
/// entries, a non-oriented one an even number.
inline bool cycle_signs_ok(const IntMatrix& a, const Cycle& c) {
  std::size_t positives = 0;
  const std::size_t len = c.vertices.size();
  for (std::size_t t = 0; t < len; ++t)
    if (a(c.vertices[t], c.vertices[(t + 1) % len]).sign() > 0) ++positives;
  return (positives % 2 == 1) == c.oriented;
}

}  // namespace detail

inline AdmissibilityResult is_admissible(const Companion& cmp) {
  for (const auto& c : induced_cycles(diagram_of(cmp.host())))
    if (!detail::cycle_signs_ok(cmp.matrix(), c)) return {false, c};
  return {};
}

/// Every admissible companion whose spanning-forest edges carry negative
/// signs; off-forest edges range over all 2^c sign patterns. Any admissible
/// companion is a simultaneous sign change of one of these.
inline std::vector<Companion> admissible_companions(const ExchangeMatrix& b) {
  const std::size_t n = b.size();
  const Diagram g = diagram_of(b);
  const auto cycles = induced_cycles(g);

  std::vector<bool> seen(n, false);
  std::vector<std::pair<std::size_t, std::size_t>> off_tree;
  std::vector<std::vector<bool>> tree_edge(n, std::vector<bool>(n, false));
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (std::size_t u = 0; u < n; ++u)
        if (g.adjacent(v, u) && !seen[u]) {
          seen[u] = true;
          tree_edge[v][u] = tree_edge[u][v] = true;
          stack.push_back(u);
        }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.adjacent(i, j) && !tree_edge[i][j]) off_tree.emplace_back(i, j);
  if (off_tree.size() > 24) throw std::length_error("admissible_companions: cyclomatic number too large");

  const Companion base = cartan_companion(b);
  std::vector<Companion> out;
  const std::size_t patterns = std::size_t{1} << off_tree.size();
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    IntMatrix a = base.matrix();
    for (std::size_t e = 0; e < off_tree.size(); ++e)
      if (mask & (std::size_t{1} << e)) {
        auto [i, j] = off_tree[e];
        a(i, j) = -a(i, j);
        a(j, i) = -a(j, i);
      }
    bool ok = true;
    for (const auto& c : cycles)
      if (!detail::cycle_signs_ok(a, c)) {
        ok = false;
        break;
      }
    if (ok) out.emplace_back(std::move(a), b);
  }
  return out;
}

inline std::optional<Companion> find_admissible_companion(const ExchangeMatrix& b) {
  auto all = admissible_companions(b);
  if (all.empty()) return std::nullopt;
  return all.front();
}

inline std::optional<Companion> find_admissible_companion(const Diagram& g) {
  return find_admissible_companion(realize(g));
}

/// Companion mutation at k. The result's host is mu_k(B).
inline Companion mutate_companion(const Companion& cmp, std::size_t k) {
  if (k >= cmp.size()) throw std::out_of_range("mutation index out of range");
  if (!is_admissible(cmp)) throw NonAdmissibleInput();
  const IntMatrix& a = cmp.matrix();
  const ExchangeMatrix& b = cmp.host();
  const std::size_t n = cmp.size();
  IntMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        r(i, j) = 2;
      } else if (j == k) {
        r(i, j) = sign(b(i, k)) * a(i, k);
      } else if (i == k) {
        r(i, j) = -sign(b(k, j)) * a(k, j);
      } else {
        const Integer p = b(i, k) * b(k, j);
        r(i, j) = p.sign() > 0 ? Integer(a(i, j) - sign(a(i, k) * a(k, j)) * p) : a(i, j);
      }
    }
  ExchangeMatrix host = b.mutate(k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && abs(r(i, j)) != abs(host(i, j)))
        throw std::logic_error("mutate_companion: result is not a companion of the mutated host");
  return Companion(std::move(r), std::move(host));
}

/// Negates row i and column i off the diagonal.
inline Companion sign_change(const Companion& cmp, std::size_t i) {
  if (i >= cmp.size()) throw std::out_of_range("sign_change: index out of range");
  IntMatrix a = cmp.matrix();
  for (std::size_t j = 0; j < cmp.size(); ++j) {
    if (j == i) continue;
    a(i, j) = -a(i, j);
    a(j, i) = -a(j, i);
  }
  return Companion(std::move(a), cmp.host());
}

inline Definiteness semidefiniteness(const Companion& cmp) { return classify_symmetric(cmp.gram()); }

/// Primitive integer basis of ker A.
inline std::vector<RadicalVector> radical_basis(const IntMatrix& a) {
  std::vector<RadicalVector> out;
  for (auto& v : kernel_basis(a)) out.push_back({std::move(v)});
  return out;
}

inline std::vector<RadicalVector> radical_basis(const Companion& cmp) { return radical_basis(cmp.matrix()); }

/// Principal restriction to the listed indices.
inline Companion restrict(const Companion& cmp, const std::vector<std::size_t>& subset) {
  return Companion(cmp.matrix().select(subset, subset), cmp.host().restrict_to(subset));
}

}  // namespace mutclass
