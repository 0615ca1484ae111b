#pragma once

// Finite-type decisions for diagrams, Dynkin type identification, and
// mutation-class exploration of extended matrices with infinitude
// certificates from the rank-2 patterns.

#include "mutclass/catalog.hpp"

#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace mutclass {

class NotFiniteType : public std::runtime_error {
 public:
  NotFiniteType() : std::runtime_error("diagram is not of finite type") {}
};

// ---------------------------------------------------------------------------
// Diagrams

struct FiniteTypeResult {
  bool finite = false;
  /// Members up to isomorphism, in BFS order (complete only when finite).
  std::vector<Diagram> members;
  /// Infinite: mutation path from the input to a diagram with a weight >= 4.
  std::vector<std::size_t> witness_path;
  std::optional<Diagram> witness;
};

/// BFS over the mutation class with isomorphism dedup, stopping at the first
/// edge of weight >= 4.
inline FiniteTypeResult decide_finite_type(const Diagram& g) {
  if (g.frozen_count() != 0) throw std::invalid_argument("decide_finite_type: all vertices must be mutable");
  FiniteTypeResult out;
  struct Node {
    Diagram g;
    std::vector<std::size_t> path;
  };
  std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
  std::deque<Node> queue;
  auto visit = [&](Diagram d, std::vector<std::size_t> path) {
    if (d.max_weight() >= 4) {
      out.finite = false;
      out.witness_path = std::move(path);
      out.witness = std::move(d);
      return false;
    }
    if (seen.insert(canonical_key(d)).second) {
      out.members.push_back(d);
      queue.push_back({std::move(d), std::move(path)});
    }
    return true;
  };
  if (!visit(g, {})) return out;
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    for (std::size_t k = 0; k < node.g.size(); ++k) {
      auto path = node.path;
      path.push_back(k);
      if (!visit(mutate_diagram(node.g, k), std::move(path))) return out;
    }
  }
  out.finite = true;
  return out;
}

inline bool is_finite_type(const Diagram& g) { return decide_finite_type(g).finite; }

/// Finite type iff some admissible companion is positive definite.
inline bool finite_type_via_companion(const Diagram& g) {
  if (g.max_weight() >= 4) return false;
  for (const auto& c : admissible_companions(realize(g)))
    if (semidefiniteness(c).positive()) return true;
  return false;
}

/// Finite-type label of a connected diagram. B_n and C_n have the same
/// diagram; this overload reports B.
inline DynkinLabel identify_dynkin_type(const Diagram& g) {
  auto result = decide_finite_type(g);
  if (!result.finite) throw NotFiniteType();
  if (!g.is_connected()) throw std::invalid_argument("identify_dynkin_type: diagram must be connected");
  const std::size_t n = g.size();
  std::vector<std::pair<DynkinLabel, CanonicalKey>> targets;
  for (const auto& label : dynkin_labels(n))
    if (label.rank == n && label.family != Family::C)
      targets.emplace_back(label, undirected_key(dynkin(label.family, label.rank)));
  for (const auto& member : result.members) {
    const auto key = undirected_key(member);
    for (const auto& [label, target] : targets)
      if (key == target) return label;
  }
  throw std::logic_error("identify_dynkin_type: no Dynkin diagram in a finite-type class");
}

/// Refines the diagram answer with the symmetrizer, which is a mutation
/// invariant: B_n has one short root, C_n has n-1.
inline DynkinLabel identify_dynkin_type(const ExchangeMatrix& b) {
  DynkinLabel label = identify_dynkin_type(diagram_of(b));
  if (label.family == Family::B && label.rank >= 3) {
    const auto& d = b.symmetrizer();
    Integer smallest = d.front();
    for (const auto& x : d) smallest = x < smallest ? x : smallest;
    std::size_t short_count = 0;
    for (const auto& x : d) short_count += x == smallest;
    if (short_count == label.rank - 1) label.family = Family::C;
  }
  return label;
}

inline bool is_minimal_infinite(const Diagram& g) {
  if (is_finite_type(g)) return false;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (!is_finite_type(delete_vertex(g, v))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Rank-2 patterns on 3 x 2 submatrices

enum class CertificateKind { WeightGrowthGt4, UnbalancedWeight4Triangle, AcyclicWeight4Attachment, MinimalInfinitePrincipal };

inline const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::WeightGrowthGt4: return "WeightGrowthGt4";
    case CertificateKind::UnbalancedWeight4Triangle: return "UnbalancedWeight4Triangle";
    case CertificateKind::AcyclicWeight4Attachment: return "AcyclicWeight4Attachment";
    case CertificateKind::MinimalInfinitePrincipal: return "MinimalInfinitePrincipal";
  }
  return "?";
}

/// Rows (i, j, r) and columns (i, j) of an extended matrix.
inline ExtendedMatrix rank2_submatrix(const ExtendedMatrix& b, std::size_t i, std::size_t j, std::size_t r) {
  return ExtendedMatrix(b.entries().select({i, j, r}, {i, j}), 2);
}

/// Sum of the three edge weights of a 3 x 2 matrix's diagram.
inline Integer triangle_weight_sum(const ExtendedMatrix& t) {
  const Diagram g = diagram_of(t);
  return g.weight(0, 1) + g.weight(0, 2) + g.weight(1, 2);
}

/// Classifies a connected 3 x 2 matrix by its rank-2 pattern: nullopt when
/// the mutable edge has weight < 4 or the triangle is oriented with equal
/// weights on the two edges at the third vertex (the finite case).
inline std::optional<CertificateKind> rank2_pattern(const ExtendedMatrix& t) {
  const Diagram g = diagram_of(t);
  const Integer w = g.weight(0, 1);
  if (w < 4) return std::nullopt;
  if (!g.adjacent(0, 2) && !g.adjacent(1, 2)) return std::nullopt;
  if (w > 4) return CertificateKind::WeightGrowthGt4;
  const bool triangle = g.adjacent(0, 2) && g.adjacent(1, 2);
  if (!triangle || !is_oriented_cycle(g, {0, 1, 2})) return CertificateKind::AcyclicWeight4Attachment;
  if (g.weight(0, 2) != g.weight(1, 2)) return CertificateKind::UnbalancedWeight4Triangle;
  return std::nullopt;
}

/// Exact weight-sum trajectory of the growth argument on a 3 x 2 matrix: a
/// non-oriented configuration is first turned into an oriented triangle,
/// then each step mutates at the mutable vertex giving the larger sum.
/// Returns the sums after each oriented step (the first is the starting
/// oriented triangle).
inline std::vector<Integer> growth_trajectory(const ExtendedMatrix& start, std::size_t steps,
                                              std::vector<std::size_t>* sequence = nullptr) {
  ExtendedMatrix t = start;
  auto oriented = [](const ExtendedMatrix& x) {
    const Diagram g = diagram_of(x);
    return g.adjacent(0, 2) && g.adjacent(1, 2) && g.adjacent(0, 1) && is_oriented_cycle(g, {0, 1, 2});
  };
  for (int guard = 0; guard < 4 && !oriented(t); ++guard) {
    const Diagram g = diagram_of(t);
    std::size_t k = 2;
    for (std::size_t v = 0; v < 2 && k == 2; ++v)
      if (!g.is_source(v) && !g.is_sink(v)) k = v;
    if (k == 2) {
      // both mutable vertices are sources or sinks; flipping the one of
      // lower degree creates a middle vertex
      k = g.neighbors(0).size() <= g.neighbors(1).size() ? 0 : 1;
    }
    t = t.mutate(k);
    if (sequence) sequence->push_back(k);
  }
  std::vector<Integer> sums{triangle_weight_sum(t)};
  for (std::size_t s = 0; s < steps; ++s) {
    ExtendedMatrix a = t.mutate(0), b = t.mutate(1);
    Integer sa = triangle_weight_sum(a), sb = triangle_weight_sum(b);
    const std::size_t k = sa >= sb ? 0 : 1;
    t = k == 0 ? std::move(a) : std::move(b);
    sums.push_back(k == 0 ? sa : sb);
    if (sequence) sequence->push_back(k);
  }
  return sums;
}

inline bool strictly_increasing(const std::vector<Integer>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Exploration of extended matrices

struct Certificate {
  CertificateKind kind = CertificateKind::WeightGrowthGt4;
  /// Mutation path from the explored matrix to the witness.
  std::vector<std::size_t> path;
  ExtendedMatrix witness;
  /// Mutable pair and third row of the rank-2 pattern.
  std::size_t i = 0, j = 0, r = 0;
};

/// First rank-2 pattern found in a matrix, scanning pairs i < j by weight
/// and third rows in index order.
inline std::optional<Certificate> scan_certificate(const ExtendedMatrix& b) {
  const std::size_t n = b.mutable_count();
  const std::size_t m = b.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (abs(b(i, j) * b(j, i)) < 4) continue;
      for (std::size_t r = 0; r < m; ++r) {
        if (r == i || r == j) continue;
        if (b(r, i).is_zero() && b(r, j).is_zero()) continue;
        if (auto kind = rank2_pattern(rank2_submatrix(b, i, j, r))) {
          Certificate c;
          c.kind = *kind;
          c.witness = b;
          c.i = i;
          c.j = j;
          c.r = r;
          return c;
        }
      }
    }
  return std::nullopt;
}

/// Replays the path from the root and re-checks the pattern at the endpoint.
inline bool verify_certificate(const ExtendedMatrix& root, const Certificate& c) {
  if (c.kind == CertificateKind::MinimalInfinitePrincipal) return false;
  const ExtendedMatrix end = root.mutate(c.path);
  if (!(end == c.witness)) return false;
  const std::size_t n = end.mutable_count();
  if (c.i >= n || c.j >= n || c.i == c.j || c.r >= end.rows() || c.r == c.i || c.r == c.j) return false;
  auto kind = rank2_pattern(rank2_submatrix(end, c.i, c.j, c.r));
  return kind && *kind == c.kind;
}

struct ExploreBudget {
  std::size_t max_nodes = 1000000;
  /// Exploration stops once an entry exceeds this in absolute value.
  std::optional<Integer> max_entry;
  /// Worker threads for expanding each BFS level; results do not depend on it.
  unsigned jobs = 1;
};

struct ClassReport {
  enum class Outcome { Closed, InfiniteCertificate, BudgetExhausted };
  Outcome outcome = Outcome::BudgetExhausted;
  std::size_t labeled_count = 0;
  std::size_t iso_count = 0;
  std::size_t visited = 0;
  ExploreBudget budget;
  std::optional<Certificate> certificate;
  /// Closed: every member, in BFS order.
  std::vector<ExtendedMatrix> members;
};

inline const char* to_string(ClassReport::Outcome o) {
  switch (o) {
    case ClassReport::Outcome::Closed: return "Closed";
    case ClassReport::Outcome::InfiniteCertificate: return "InfiniteCertificate";
    case ClassReport::Outcome::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

namespace detail {

inline bool exceeds(const ExtendedMatrix& b, const Integer& bound) {
  for (const auto& x : b.entries().data())
    if (abs(x) > bound) return true;
  return false;
}

}  // namespace detail

/// BFS over the mutation class (mutable indices, smallest first), scanning
/// each new member for a rank-2 certificate.
inline ClassReport explore_extended_class(const ExtendedMatrix& root, const ExploreBudget& budget = {}) {
  ClassReport report;
  report.budget = budget;
  const std::size_t n = root.mutable_count();

  struct Node {
    ExtendedMatrix b;
    std::vector<std::size_t> path;
  };
  std::unordered_set<std::string> labeled;
  std::unordered_set<CanonicalKey, CanonicalKeyHash> iso;
  std::vector<ExtendedMatrix> members;

  // returns false when exploration must stop
  auto admit = [&](const ExtendedMatrix& b, const std::vector<std::size_t>& path, std::vector<Node>& next) {
    if (!labeled.insert(b.entries().key()).second) return true;
    ++report.visited;
    members.push_back(b);
    iso.insert(canonical_key(diagram_of(b)));
    if (auto c = scan_certificate(b)) {
      c->path = path;
      report.outcome = ClassReport::Outcome::InfiniteCertificate;
      report.certificate = std::move(c);
      return false;
    }
    if (report.visited >= budget.max_nodes || (budget.max_entry && detail::exceeds(b, *budget.max_entry))) {
      report.outcome = ClassReport::Outcome::BudgetExhausted;
      return false;
    }
    next.push_back({b, path});
    return true;
  };

  auto finish = [&]() {
    report.labeled_count = labeled.size();
    report.iso_count = iso.size();
    if (report.outcome == ClassReport::Outcome::Closed) report.members = std::move(members);
    return report;
  };

  std::vector<Node> level;
  if (!admit(root, {}, level)) return finish();
  const unsigned jobs = std::max(1u, budget.jobs);
  while (!level.empty()) {
    // children of the level, computed in parallel, merged in order
    std::vector<std::vector<ExtendedMatrix>> children(level.size());
    auto expand = [&](std::size_t from, std::size_t to) {
      for (std::size_t t = from; t < to; ++t) {
        children[t].reserve(n);
        for (std::size_t k = 0; k < n; ++k) children[t].push_back(level[t].b.mutate(k));
      }
    };
    if (jobs == 1 || level.size() < 64) {
      expand(0, level.size());
    } else {
      std::vector<std::thread> workers;
      const std::size_t chunk = (level.size() + jobs - 1) / jobs;
      for (std::size_t from = 0; from < level.size(); from += chunk)
        workers.emplace_back(expand, from, std::min(level.size(), from + chunk));
      for (auto& w : workers) w.join();
    }
    std::vector<Node> next;
    for (std::size_t t = 0; t < level.size(); ++t)
      for (std::size_t k = 0; k < n; ++k) {
        auto path = level[t].path;
        path.push_back(k);
        if (!admit(children[t][k], path, next)) return finish();
      }
    level = std::move(next);
  }
  report.outcome = ClassReport::Outcome::Closed;
  return finish();
}

// ---------------------------------------------------------------------------
// Theorem check

struct TheoremReport {
  enum class Verdict { Consistent, UndecidedAtBudget, Mismatch };
  Verdict verdict = Verdict::Mismatch;
  bool lhs_finite = false;
  ClassReport rhs;
  /// Certificate replay and, for growth patterns, the sum trajectory check.
  bool certificate_verified = false;
};

inline const char* to_string(TheoremReport::Verdict v) {
  switch (v) {
    case TheoremReport::Verdict::Consistent: return "CONSISTENT";
    case TheoremReport::Verdict::UndecidedAtBudget: return "UNDECIDED-AT-BUDGET";
    case TheoremReport::Verdict::Mismatch: return "MISMATCH";
  }
  return "?";
}

/// Finite type of B agrees with finiteness of the mutation class of its
/// principal extension.
inline TheoremReport verify_theorem(const ExchangeMatrix& b, const ExploreBudget& budget = {}) {
  TheoremReport out;
  out.lhs_finite = is_finite_type(diagram_of(b));
  const ExtendedMatrix root = principal_extension(b);
  out.rhs = explore_extended_class(root, budget);
  switch (out.rhs.outcome) {
    case ClassReport::Outcome::BudgetExhausted:
      out.verdict = TheoremReport::Verdict::UndecidedAtBudget;
      break;
    case ClassReport::Outcome::Closed:
      out.verdict = out.lhs_finite ? TheoremReport::Verdict::Consistent : TheoremReport::Verdict::Mismatch;
      break;
    case ClassReport::Outcome::InfiniteCertificate: {
      const auto& c = *out.rhs.certificate;
      out.certificate_verified =
          verify_certificate(root, c) &&
          strictly_increasing(growth_trajectory(rank2_submatrix(c.witness, c.i, c.j, c.r), 10));
      out.verdict = !out.lhs_finite && out.certificate_verified ? TheoremReport::Verdict::Consistent
                                                                : TheoremReport::Verdict::Mismatch;
      break;
    }
  }
  return out;
}

}  // namespace mutclass
