#pragma once

// Dynkin and extended Dynkin diagrams, the minimal-infinite diagrams that are
// not mutation-equivalent to an extended Dynkin diagram, and affine
// generalized Cartan matrices with symmetrizer and null root.

#include "mutclass/companion.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace mutclass {

enum class Family { A, B, C, D, E, F, G };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E: return "E";
    case Family::F: return "F";
    case Family::G: return "G";
  }
  return "?";
}

inline std::optional<Family> family_from_string(const std::string& s) {
  if (s == "A") return Family::A;
  if (s == "B") return Family::B;
  if (s == "C") return Family::C;
  if (s == "D") return Family::D;
  if (s == "E") return Family::E;
  if (s == "F") return Family::F;
  if (s == "G") return Family::G;
  return std::nullopt;
}

struct DynkinLabel {
  Family family = Family::A;
  std::size_t rank = 0;
  bool affine = false;

  /// "A3", "E6", "~B4" (affine labels carry a leading tilde).
  std::string str() const { return (affine ? "~" : "") + std::string(to_string(family)) + std::to_string(rank); }
  friend bool operator==(const DynkinLabel& a, const DynkinLabel& b) {
    return a.family == b.family && a.rank == b.rank && a.affine == b.affine;
  }
};

class InvalidRank : public std::invalid_argument {
 public:
  explicit InvalidRank(const DynkinLabel& l) : std::invalid_argument("no catalog diagram " + l.str()) {}
};

/// Undirected weighted graph; an orientation turns it into a diagram.
struct GraphShape {
  std::size_t vertices = 0;
  struct Link {
    std::size_t u, v;
    long long weight;
    /// Off-diagonal Cartan entries (A_uv, A_vu); both -1 for weight 1.
    long long a_uv = -1, a_vu = -1;
  };
  std::vector<Link> links;
};

/// Orientation selector: by default every link u-v is oriented u -> v in the
/// listed order; `flips[e]` reverses link e.
struct OrientationSpec {
  std::vector<bool> flips;
  static OrientationSpec as_listed() { return {}; }
  static OrientationSpec from_mask(std::size_t links, unsigned long long mask) {
    OrientationSpec o;
    o.flips.resize(links);
    for (std::size_t e = 0; e < links; ++e) o.flips[e] = (mask >> e) & 1ULL;
    return o;
  }
  bool flipped(std::size_t e) const { return e < flips.size() && flips[e]; }
};

/// Exchange matrix with |B_uv| = |A_uv| following the orientation; skew-
/// symmetrizable whenever the Cartan data is symmetrizable.
inline ExchangeMatrix orient_matrix(const GraphShape& s, const OrientationSpec& o) {
  IntMatrix b(s.vertices, s.vertices);
  for (std::size_t e = 0; e < s.links.size(); ++e) {
    auto l = s.links[e];
    std::size_t from = l.u, to = l.v;
    long long a_from_to = l.a_uv, a_to_from = l.a_vu;
    if (o.flipped(e)) {
      std::swap(from, to);
      std::swap(a_from_to, a_to_from);
    }
    // from -> to: B_{to,from} > 0
    b(to, from) = a_to_from < 0 ? -a_to_from : a_to_from;
    b(from, to) = -(a_from_to < 0 ? -a_from_to : a_from_to);
  }
  return ExchangeMatrix(std::move(b));
}

inline Diagram orient(const GraphShape& s, const OrientationSpec& o) {
  Diagram g(s.vertices);
  for (std::size_t e = 0; e < s.links.size(); ++e) {
    auto l = s.links[e];
    if (o.flipped(e))
      g.set_edge(l.v, l.u, l.weight);
    else
      g.set_edge(l.u, l.v, l.weight);
  }
  return g;
}

/// Cartan matrix of the shape (2 on the diagonal, stored entries elsewhere).
inline IntMatrix cartan_matrix(const GraphShape& s) {
  IntMatrix a(s.vertices, s.vertices);
  for (std::size_t i = 0; i < s.vertices; ++i) a(i, i) = 2;
  for (const auto& l : s.links) {
    a(l.u, l.v) = l.a_uv;
    a(l.v, l.u) = l.a_vu;
  }
  return a;
}

namespace detail {

inline void add_path(GraphShape& s, std::size_t from, std::size_t to) {
  for (std::size_t v = from; v < to; ++v) s.links.push_back({v, v + 1, 1});
}

}  // namespace detail

/// Underlying graph of a finite-type Dynkin diagram. B_n and C_n share the
/// same graph and differ only in the Cartan entries on the weight-2 link.
inline GraphShape dynkin_shape(Family f, std::size_t rank) {
  const DynkinLabel label{f, rank, false};
  GraphShape s;
  s.vertices = rank;
  switch (f) {
    case Family::A:
      if (rank < 1) throw InvalidRank(label);
      detail::add_path(s, 0, rank - 1);
      break;
    case Family::B:
    case Family::C:
      if (rank < 2) throw InvalidRank(label);
      detail::add_path(s, 0, rank - 2);
      // last node short for B, long for C
      if (f == Family::B)
        s.links.push_back({rank - 2, rank - 1, 2, -1, -2});
      else
        s.links.push_back({rank - 2, rank - 1, 2, -2, -1});
      break;
    case Family::D:
      if (rank < 4) throw InvalidRank(label);
      detail::add_path(s, 0, rank - 2);
      s.links.push_back({rank - 3, rank - 1, 1});
      break;
    case Family::E:
      if (rank < 6 || rank > 8) throw InvalidRank(label);
      detail::add_path(s, 0, rank - 2);
      s.links.push_back({2, rank - 1, 1});
      break;
    case Family::F:
      if (rank != 4) throw InvalidRank(label);
      s.links = {{0, 1, 1}, {1, 2, 2, -1, -2}, {2, 3, 1}};
      break;
    case Family::G:
      if (rank != 2) throw InvalidRank(label);
      s.links = {{0, 1, 3, -1, -3}};
      break;
  }
  return s;
}

inline Diagram dynkin(Family f, std::size_t rank, const OrientationSpec& o = {}) {
  return orient(dynkin_shape(f, rank), o);
}

inline ExchangeMatrix dynkin_matrix(Family f, std::size_t rank, const OrientationSpec& o = {}) {
  return orient_matrix(dynkin_shape(f, rank), o);
}

/// Graph of an extended Dynkin diagram with rank+1 vertices. The Cartan
/// entries on weighted links are an affine generalized Cartan matrix whose
/// symmetrizer and null root have an index where both are odd (except for
/// the C family, which carries untwisted data).
inline GraphShape extended_shape(Family f, std::size_t rank) {
  const DynkinLabel label{f, rank, true};
  GraphShape s;
  s.vertices = rank + 1;
  switch (f) {
    case Family::A:
      if (rank < 1) throw InvalidRank(label);
      if (rank == 1) {
        s.links = {{0, 1, 4, -2, -2}};
      } else {
        // closing link listed as 0 -> n, so the listed orientation is not a
        // directed cycle
        detail::add_path(s, 0, rank);
        s.links.push_back({0, rank, 1});
      }
      break;
    case Family::B:
      if (rank < 3) throw InvalidRank(label);
      s.links = {{0, 2, 1}, {1, 2, 1}};
      detail::add_path(s, 2, rank - 1);
      s.links.push_back({rank - 1, rank, 2, -2, -1});
      break;
    case Family::C:
      if (rank < 2) throw InvalidRank(label);
      s.links.push_back({0, 1, 2, -2, -1});
      detail::add_path(s, 1, rank - 1);
      s.links.push_back({rank - 1, rank, 2, -1, -2});
      break;
    case Family::D:
      if (rank < 4) throw InvalidRank(label);
      s.links = {{0, 2, 1}, {1, 2, 1}};
      detail::add_path(s, 2, rank - 2);
      s.links.push_back({rank - 2, rank - 1, 1});
      s.links.push_back({rank - 2, rank, 1});
      break;
    case Family::E:
      if (rank == 6) {
        detail::add_path(s, 0, 4);
        s.links.push_back({2, 5, 1});
        s.links.push_back({5, 6, 1});
      } else if (rank == 7) {
        detail::add_path(s, 0, 6);
        s.links.push_back({3, 7, 1});
      } else if (rank == 8) {
        detail::add_path(s, 0, 7);
        s.links.push_back({2, 8, 1});
      } else {
        throw InvalidRank(label);
      }
      break;
    case Family::F:
      if (rank != 4) throw InvalidRank(label);
      s.links = {{0, 1, 1}, {1, 2, 2, -1, -2}, {2, 3, 1}, {3, 4, 1}};
      break;
    case Family::G:
      if (rank != 2) throw InvalidRank(label);
      s.links = {{0, 1, 3, -1, -3}, {1, 2, 1}};
      break;
  }
  return s;
}

inline bool is_directed_cycle(const Diagram& g) {
  for (const auto& c : induced_cycles(g))
    if (c.oriented && c.vertices.size() == g.size()) return true;
  return false;
}

inline Diagram extended_dynkin(Family f, std::size_t rank, const OrientationSpec& o = {}) {
  Diagram g = orient(extended_shape(f, rank), o);
  if (f == Family::A && rank >= 2 && is_directed_cycle(g))
    throw std::invalid_argument("extended Dynkin diagram of type A must be a non-oriented cycle");
  return g;
}

inline ExchangeMatrix extended_dynkin_matrix(Family f, std::size_t rank, const OrientationSpec& o = {}) {
  if (f == Family::A && rank >= 2) (void)extended_dynkin(f, rank, o);
  return orient_matrix(extended_shape(f, rank), o);
}

/// Every orientation of a shape, optionally keeping only acyclic ones.
inline std::vector<Diagram> orientations(const GraphShape& s, bool acyclic_only) {
  if (s.links.size() > 20) throw std::length_error("orientations: too many links");
  std::vector<Diagram> out;
  const unsigned long long total = 1ULL << s.links.size();
  for (unsigned long long mask = 0; mask < total; ++mask) {
    Diagram g = orient(s, OrientationSpec::from_mask(s.links.size(), mask));
    if (!acyclic_only || g.is_acyclic()) out.push_back(std::move(g));
  }
  return out;
}

/// Orientation masks of an extended shape that are admissible for the family
/// (all of them, except directed cycles for the A family).
inline std::vector<OrientationSpec> extended_orientations(Family f, std::size_t rank) {
  const GraphShape s = extended_shape(f, rank);
  std::vector<OrientationSpec> out;
  const unsigned long long total = 1ULL << s.links.size();
  for (unsigned long long mask = 0; mask < total; ++mask) {
    auto o = OrientationSpec::from_mask(s.links.size(), mask);
    if (f == Family::A && rank >= 2 && is_directed_cycle(orient(s, o))) continue;
    out.push_back(std::move(o));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Minimal infinite diagrams outside the extended Dynkin classes

struct Fig2Entry {
  std::string name;
  GraphShape shape;
  /// Weight of the two-vertex family; 0 for the fixed shapes.
  long long parameter = 0;
};

/// The six shapes; the two-vertex family is listed for 5 <= a <= max_a.
/// Diagrams use the listed (acyclic) orientation.
inline std::vector<Fig2Entry> fig2_entries(long long max_a) {
  std::vector<Fig2Entry> out;
  for (long long a = 5; a <= max_a; ++a) {
    GraphShape s;
    s.vertices = 2;
    s.links = {{0, 1, a}};
    out.push_back({"edge(" + std::to_string(a) + ")", s, a});
  }
  GraphShape p32;
  p32.vertices = 3;
  p32.links = {{0, 1, 3}, {1, 2, 2}};
  out.push_back({"path(3,2)", p32, 0});
  GraphShape p33;
  p33.vertices = 3;
  p33.links = {{0, 1, 3}, {1, 2, 3}};
  out.push_back({"path(3,3)", p33, 0});
  GraphShape square;
  square.vertices = 4;
  square.links = {{0, 1, 2}, {1, 2, 1}, {2, 3, 2}, {0, 3, 1}};
  out.push_back({"square(2,1,2,1)", square, 0});
  GraphShape t221;
  t221.vertices = 3;
  t221.links = {{0, 1, 2}, {1, 2, 2}, {0, 2, 1}};
  out.push_back({"triangle(2,2,1)", t221, 0});
  GraphShape t331;
  t331.vertices = 3;
  t331.links = {{0, 1, 3}, {1, 2, 3}, {0, 2, 1}};
  out.push_back({"triangle(3,3,1)", t331, 0});
  return out;
}

inline std::vector<Diagram> fig2_diagrams(long long max_a) {
  std::vector<Diagram> out;
  for (const auto& e : fig2_entries(max_a)) out.push_back(orient(e.shape, {}));
  return out;
}

// ---------------------------------------------------------------------------
// Affine generalized Cartan matrices

struct AffineData {
  DynkinLabel label;
  /// Generalized Cartan matrix on the extended shape.
  IntMatrix cartan;
  /// Minimal symmetrizer: d_i A_ij = d_j A_ji.
  IntVector d;
  /// Primitive null root: A u = 0.
  IntVector u;
  /// Index with d_l and u_l both odd.
  std::size_t odd_index = 0;
};

/// Affine data for every non-C extended family. The weighted links of
/// ~B_n and ~F_4 carry the twisted entries, since the untwisted ones have no
/// index where d and u are both odd.
inline AffineData affine_gcm(Family f, std::size_t rank) {
  if (f == Family::C) throw std::invalid_argument("affine_gcm: the C family is excluded");
  const GraphShape s = extended_shape(f, rank);
  AffineData out;
  out.label = {f, rank, true};
  out.cartan = cartan_matrix(s);
  const std::size_t n = s.vertices;
  out.d.assign(n, 1);
  out.u.assign(n, 1);
  switch (f) {
    case Family::A:
      break;
    case Family::B:
      // twisted data: d = (1,...,1,2), u = (1,1,2,...,2,1)
      out.d[n - 1] = 2;
      for (std::size_t i = 2; i + 1 < n; ++i) out.u[i] = 2;
      break;
    case Family::D:
      for (std::size_t i = 2; i + 2 < n; ++i) out.u[i] = 2;
      break;
    case Family::E:
      if (rank == 6)
        out.u = {1, 2, 3, 2, 1, 2, 1};
      else if (rank == 7)
        out.u = {1, 2, 3, 4, 3, 2, 1, 2};
      else
        out.u = {2, 4, 6, 5, 4, 3, 2, 1, 3};
      out.odd_index = rank == 8 ? 7 : 0;
      break;
    case Family::F:
      out.d = {2, 2, 1, 1, 1};
      out.u = {1, 2, 3, 2, 1};
      out.odd_index = 2;
      break;
    case Family::G:
      out.d = {3, 1, 1};
      out.u = {1, 2, 1};
      break;
    case Family::C:
      break;
  }
  return out;
}

/// The rank-2 twisted matrix A_2^(2), which has no index with d and u both
/// odd.
inline AffineData twisted_a22() {
  AffineData out;
  out.label = {Family::A, 1, true};
  out.cartan = IntMatrix{{2, -4}, {-1, 2}};
  out.d = {1, 4};
  out.u = {2, 1};
  out.odd_index = 0;
  return out;
}

/// Companion of the oriented extended diagram whose matrix is the affine GCM.
inline Companion affine_companion(Family f, std::size_t rank, const OrientationSpec& o = {}) {
  const AffineData data = affine_gcm(f, rank);
  return Companion(data.cartan, extended_dynkin_matrix(f, rank, o));
}

/// Every extended family with the given rank bound, C included.
inline std::vector<DynkinLabel> extended_labels(std::size_t max_rank) {
  std::vector<DynkinLabel> out;
  for (std::size_t r = 1; r <= max_rank; ++r) out.push_back({Family::A, r, true});
  for (std::size_t r = 3; r <= max_rank; ++r) out.push_back({Family::B, r, true});
  for (std::size_t r = 2; r <= max_rank; ++r) out.push_back({Family::C, r, true});
  for (std::size_t r = 4; r <= max_rank; ++r) out.push_back({Family::D, r, true});
  for (std::size_t r = 6; r <= std::min<std::size_t>(max_rank, 8); ++r) out.push_back({Family::E, r, true});
  if (max_rank >= 4) out.push_back({Family::F, 4, true});
  if (max_rank >= 2) out.push_back({Family::G, 2, true});
  return out;
}

/// Every finite-type family with the given rank bound (C_n from rank 3, as
/// C_2 coincides with B_2).
inline std::vector<DynkinLabel> dynkin_labels(std::size_t max_rank) {
  std::vector<DynkinLabel> out;
  for (std::size_t r = 1; r <= max_rank; ++r) out.push_back({Family::A, r, false});
  for (std::size_t r = 2; r <= max_rank; ++r) out.push_back({Family::B, r, false});
  for (std::size_t r = 3; r <= max_rank; ++r) out.push_back({Family::C, r, false});
  for (std::size_t r = 4; r <= max_rank; ++r) out.push_back({Family::D, r, false});
  for (std::size_t r = 6; r <= std::min<std::size_t>(max_rank, 8); ++r) out.push_back({Family::E, r, false});
  if (max_rank >= 4) out.push_back({Family::F, 4, false});
  if (max_rank >= 2) out.push_back({Family::G, 2, false});
  return out;
}

}  // namespace mutclass
