#pragma once

// Weighted directed diagrams of skew-symmetrizable matrices.
//
// Convention: there is an edge i -> j exactly when B_ji > 0, with weight
// |B_ij * B_ji|. Vertices 0..n-1 are mutable, n..m-1 frozen.

#include "mutclass/exchange.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace mutclass {

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  Integer weight;
  friend bool operator==(const Edge& a, const Edge& b) {
    return a.from == b.from && a.to == b.to && a.weight == b.weight;
  }
};

/// Raised when diagram mutation meets a triangle whose weight product is not a
/// perfect square, i.e. a configuration no skew-symmetrizable matrix realizes.
class NonSquareProduct : public std::invalid_argument {
 public:
  NonSquareProduct(std::size_t i, std::size_t k, std::size_t j)
      : std::invalid_argument("non-square weight product on triangle (" + std::to_string(i + 1) + "," +
                              std::to_string(k + 1) + "," + std::to_string(j + 1) + ")"),
        i_(i), k_(k), j_(j) {}
  std::size_t i() const { return i_; }
  std::size_t k() const { return k_; }
  std::size_t j() const { return j_; }

 private:
  std::size_t i_, k_, j_;
};

class Diagram {
 public:
  Diagram() = default;
  explicit Diagram(std::size_t mutable_count, std::size_t frozen_count = 0)
      : n_(mutable_count), size_(mutable_count + frozen_count), arrows_(size_ * size_) {}

  /// Builds from an edge list; every edge is i -> j with positive weight.
  static Diagram from_edges(std::size_t mutable_count, std::size_t frozen_count,
                            const std::vector<Edge>& edges) {
    Diagram g(mutable_count, frozen_count);
    for (const auto& e : edges) g.set_edge(e.from, e.to, e.weight);
    return g;
  }

  std::size_t size() const { return size_; }
  std::size_t mutable_count() const { return n_; }
  std::size_t frozen_count() const { return size_ - n_; }
  bool is_frozen(std::size_t v) const { return v >= n_; }

  /// +w for an edge i -> j, -w for j -> i, 0 when absent.
  const Integer& arrow(std::size_t i, std::size_t j) const { return arrows_[i * size_ + j]; }
  Integer weight(std::size_t i, std::size_t j) const { return abs(arrow(i, j)); }
  bool adjacent(std::size_t i, std::size_t j) const { return !arrow(i, j).is_zero(); }
  bool has_edge(std::size_t i, std::size_t j) const { return arrow(i, j).sign() > 0; }

  void set_edge(std::size_t i, std::size_t j, const Integer& w) {
    check_vertex(i);
    check_vertex(j);
    if (i == j) throw std::invalid_argument("diagram: loops are not allowed");
    if (w.sign() <= 0) throw std::invalid_argument("diagram: edge weights must be positive");
    arrows_[i * size_ + j] = w;
    arrows_[j * size_ + i] = -w;
  }

  /// Sets the signed arrow value directly (0 removes the edge).
  void set_arrow(std::size_t i, std::size_t j, const Integer& a) {
    arrows_[i * size_ + j] = a;
    arrows_[j * size_ + i] = -a;
  }

  void remove_edge(std::size_t i, std::size_t j) { set_arrow(i, j, 0); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = 0; j < size_; ++j)
        if (arrow(i, j).sign() > 0) out.push_back({i, j, arrow(i, j)});
    return out;
  }

  std::vector<std::size_t> neighbors(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t u = 0; u < size_; ++u)
      if (adjacent(v, u)) out.push_back(u);
    return out;
  }

  Integer max_weight() const {
    Integer best = 0;
    for (const auto& a : arrows_)
      if (a > best) best = a;
    return best;
  }

  /// Largest weight among edges joining two mutable vertices.
  Integer max_mutable_weight() const {
    Integer best = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (arrow(i, j) > best) best = arrow(i, j);
    return best;
  }

  bool is_connected() const {
    if (size_ == 0) return true;
    std::vector<bool> seen(size_, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 0;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      ++count;
      for (std::size_t u = 0; u < size_; ++u)
        if (!seen[u] && adjacent(v, u)) {
          seen[u] = true;
          stack.push_back(u);
        }
    }
    return count == size_;
  }

  bool is_source(std::size_t v) const {
    for (std::size_t u = 0; u < size_; ++u)
      if (arrow(v, u).sign() < 0) return false;
    return true;
  }

  bool is_sink(std::size_t v) const {
    for (std::size_t u = 0; u < size_; ++u)
      if (arrow(v, u).sign() > 0) return false;
    return true;
  }

  /// True when there is no oriented cycle.
  bool is_acyclic() const {
    std::vector<std::size_t> indeg(size_, 0);
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = 0; j < size_; ++j)
        if (has_edge(i, j)) ++indeg[j];
    std::vector<std::size_t> ready;
    for (std::size_t v = 0; v < size_; ++v)
      if (indeg[v] == 0) ready.push_back(v);
    std::size_t done = 0;
    while (!ready.empty()) {
      auto v = ready.back();
      ready.pop_back();
      ++done;
      for (std::size_t j = 0; j < size_; ++j)
        if (has_edge(v, j) && --indeg[j] == 0) ready.push_back(j);
    }
    return done == size_;
  }

  /// An edge {i, j} closing a cycle whose weight product is not a perfect
  /// square, if any. Works on square-free classes along a spanning forest, so
  /// it covers every cycle at once.
  std::optional<std::pair<std::size_t, std::size_t>> perfect_square_violation() const {
    auto classes = squarefree_potentials();
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = i + 1; j < size_; ++j) {
        if (!adjacent(i, j)) continue;
        if (squarefree_product(classes[i], classes[j]) != squarefree_part(weight(i, j)))
          return std::make_pair(i, j);
      }
    return std::nullopt;
  }

  bool has_perfect_square_cycles() const { return !perfect_square_violation().has_value(); }

  /// Square-free vertex classes s_v with s_i * s_j = w_ij modulo squares on
  /// spanning-forest edges (root of each component gets 1).
  std::vector<Integer> squarefree_potentials() const {
    std::vector<Integer> s(size_, 0);
    for (std::size_t root = 0; root < size_; ++root) {
      if (!s[root].is_zero()) continue;
      s[root] = 1;
      std::vector<std::size_t> stack{root};
      while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (std::size_t u = 0; u < size_; ++u)
          if (adjacent(v, u) && s[u].is_zero()) {
            s[u] = squarefree_product(s[v], squarefree_part(weight(v, u)));
            stack.push_back(u);
          }
      }
    }
    return s;
  }

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.n_ == b.n_ && a.size_ == b.size_ && a.arrows_ == b.arrows_;
  }
  friend bool operator!=(const Diagram& a, const Diagram& b) { return !(a == b); }

 private:
  void check_vertex(std::size_t v) const {
    if (v >= size_) throw std::out_of_range("diagram: vertex out of range");
  }

  std::size_t n_ = 0;
  std::size_t size_ = 0;
  std::vector<Integer> arrows_;
};

namespace detail {

inline Diagram diagram_of_square(const IntMatrix& b, std::size_t mutable_count) {
  const std::size_t m = b.rows();
  Diagram g(mutable_count, m - mutable_count);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (b(i, j).is_zero()) continue;
      const Integer w = abs(b(i, j) * b(j, i));
      // edge i -> j iff B_ji > 0
      if (b(j, i).sign() > 0)
        g.set_edge(i, j, w);
      else
        g.set_edge(j, i, w);
    }
  return g;
}

}  // namespace detail

inline Diagram diagram_of(const ExchangeMatrix& b) { return detail::diagram_of_square(b.entries(), b.size()); }

inline Diagram diagram_of(const BulletMatrix& b) {
  return detail::diagram_of_square(b.entries, b.mutable_count);
}

inline Diagram diagram_of(const ExtendedMatrix& b) { return diagram_of(bullet(b)); }

/// Diagram mutation at a mutable vertex k. Edges between two frozen vertices
/// are never created, matching the zero lower-right block of the completion.
inline Diagram mutate_diagram(const Diagram& g, std::size_t k) {
  if (k >= g.size()) throw std::out_of_range("mutation index out of range");
  if (g.is_frozen(k)) throw FrozenIndexError(k, g.mutable_count());
  Diagram r = g;
  const std::size_t m = g.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (i == k || !g.has_edge(i, k)) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == k || j == i || !g.has_edge(k, j)) continue;
      if (g.is_frozen(i) && g.is_frozen(j)) continue;
      // two-edge oriented path i -> k -> j
      const Integer ab = g.arrow(i, k) * g.arrow(k, j);
      const Integer& x = g.arrow(i, j);
      if (x.is_zero()) {
        r.set_arrow(i, j, ab);
        continue;
      }
      const Integer gamma = abs(x);
      auto root = exact_sqrt(ab * gamma);
      if (!root) throw NonSquareProduct(i, k, j);
      if (x.sign() > 0) {
        // i -> j: the triangle is not oriented, sqrt(g') = sqrt(ab) + sqrt(g)
        r.set_arrow(i, j, ab + gamma + 2 * *root);
      } else {
        // j -> i closes an oriented cycle, sqrt(g) +- sqrt(g') = sqrt(ab)
        const Integer mag = ab + gamma - 2 * *root;
        if (ab > gamma)
          r.set_arrow(i, j, mag);
        else
          r.set_arrow(i, j, -mag);
      }
    }
  }
  for (std::size_t v = 0; v < m; ++v)
    if (v != k) r.set_arrow(k, v, -g.arrow(k, v));
  return r;
}

inline Diagram mutate_diagram(const Diagram& g, const std::vector<std::size_t>& sequence) {
  Diagram r = g;
  for (auto k : sequence) r = mutate_diagram(r, k);
  return r;
}

struct Cycle {
  std::vector<std::size_t> vertices;
  bool oriented = false;
};

/// Whether the arrows along the listed cycle all point the same way round.
inline bool is_oriented_cycle(const Diagram& g, const std::vector<std::size_t>& cycle) {
  const std::size_t len = cycle.size();
  int direction = 0;
  for (std::size_t t = 0; t < len; ++t) {
    const int s = g.arrow(cycle[t], cycle[(t + 1) % len]).sign();
    if (s == 0) return false;
    if (direction == 0)
      direction = s;
    else if (s != direction)
      return false;
  }
  return true;
}

/// All chordless cycles (length >= 3) of the underlying undirected graph.
inline std::vector<Cycle> induced_cycles(const Diagram& g) {
  std::vector<Cycle> out;
  const std::size_t m = g.size();
  std::vector<std::size_t> path;
  std::vector<bool> on_path(m, false);

  // extend path (path[0] is the minimum vertex of every cycle reported)
  auto extend = [&](auto&& self) -> void {
    const std::size_t s = path.front();
    const std::size_t last = path.back();
    for (std::size_t v = s + 1; v < m; ++v) {
      if (on_path[v] || !g.adjacent(last, v)) continue;
      bool chord = false;
      for (std::size_t t = 1; t + 1 < path.size(); ++t)
        if (g.adjacent(path[t], v)) {
          chord = true;
          break;
        }
      if (chord) continue;
      if (path.size() >= 2 && g.adjacent(s, v)) {
        if (path[1] < v) {
          Cycle c;
          c.vertices = path;
          c.vertices.push_back(v);
          c.oriented = is_oriented_cycle(g, c.vertices);
          out.push_back(std::move(c));
        }
        continue;
      }
      path.push_back(v);
      on_path[v] = true;
      self(self);
      on_path[v] = false;
      path.pop_back();
    }
  };
  for (std::size_t s = 0; s < m; ++s) {
    path = {s};
    on_path[s] = true;
    extend(extend);
    on_path[s] = false;
  }
  return out;
}

/// Full subdiagram on a vertex subset; vertices keep their relative order and
/// their mutable/frozen status.
inline Diagram subdiagram(const Diagram& g, std::vector<std::size_t> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  std::size_t mut = 0;
  for (auto v : subset) {
    if (v >= g.size()) throw std::out_of_range("subdiagram: vertex out of range");
    if (!g.is_frozen(v)) ++mut;
  }
  Diagram r(mut, subset.size() - mut);
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = a + 1; b < subset.size(); ++b) r.set_arrow(a, b, g.arrow(subset[a], subset[b]));
  return r;
}

/// Drops one vertex.
inline Diagram delete_vertex(const Diagram& g, std::size_t v) {
  std::vector<std::size_t> keep;
  for (std::size_t u = 0; u < g.size(); ++u)
    if (u != v) keep.push_back(u);
  return subdiagram(g, keep);
}

/// Relabels vertices: vertex v of g becomes perm[v]. Must map mutable to
/// mutable.
inline Diagram relabel(const Diagram& g, const std::vector<std::size_t>& perm) {
  Diagram r(g.mutable_count(), g.frozen_count());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) r.set_arrow(perm[i], perm[j], g.arrow(i, j));
  return r;
}

/// Skew-symmetrizable matrix whose diagram is g (all vertices treated as
/// mutable). Symmetrizer entries are the square-free vertex classes.
inline ExchangeMatrix realize(const Diagram& g) {
  if (auto bad = g.perfect_square_violation())
    throw std::invalid_argument("realize: weight product along a cycle through (" +
                                std::to_string(bad->first + 1) + "," + std::to_string(bad->second + 1) +
                                ") is not a perfect square");
  auto s = g.squarefree_potentials();
  const std::size_t m = g.size();
  IntMatrix b(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (!g.has_edge(i, j)) continue;
      auto root = exact_sqrt(g.weight(i, j) * s[i] * s[j]);
      if (!root) throw std::logic_error("realize: inconsistent square-free classes");
      // i -> j: B_ji > 0, B_ij < 0
      b(j, i) = *root / s[j];
      b(i, j) = -(*root / s[i]);
    }
  return ExchangeMatrix(std::move(b));
}

// ---------------------------------------------------------------------------
// Canonical keys

/// Byte string identifying a diagram up to relabeling inside each part.
struct CanonicalKey {
  std::string bytes;
  friend bool operator==(const CanonicalKey& a, const CanonicalKey& b) { return a.bytes == b.bytes; }
  friend bool operator!=(const CanonicalKey& a, const CanonicalKey& b) { return a.bytes != b.bytes; }
  friend bool operator<(const CanonicalKey& a, const CanonicalKey& b) { return a.bytes < b.bytes; }
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const { return std::hash<std::string>{}(k.bytes); }
};

namespace detail {

class Canonicalizer {
 public:
  Canonicalizer(const Diagram& g, bool ignore_orientation) : m_(g.size()) {
    std::vector<Integer> values;
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < m_; ++j) {
        Integer a = ignore_orientation ? abs(g.arrow(i, j)) : g.arrow(i, j);
        if (!a.is_zero()) values.push_back(a);
      }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    code_.assign(m_ * m_, 0);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < m_; ++j) {
        Integer a = ignore_orientation ? abs(g.arrow(i, j)) : g.arrow(i, j);
        if (a.is_zero()) continue;
        code_[i * m_ + j] =
            1 + static_cast<int>(std::lower_bound(values.begin(), values.end(), a) - values.begin());
      }
    header_ = std::to_string(g.mutable_count()) + "/" + std::to_string(g.frozen_count()) + "|";
    for (const auto& v : values) header_ += v.str() + ",";
    header_ += "|";
    initial_.resize(m_);
    for (std::size_t v = 0; v < m_; ++v) initial_[v] = g.is_frozen(v) ? 1 : 0;
  }

  CanonicalKey run() {
    best_.clear();
    have_best_ = false;
    auto colors = initial_;
    refine(colors);
    search(colors);
    return CanonicalKey{header_ + best_};
  }

 private:
  int code(std::size_t i, std::size_t j) const { return code_[i * m_ + j]; }

  // Equitable refinement; colors are dense ranks, ordered label-invariantly.
  void refine(std::vector<int>& colors) const {
    std::size_t count = distinct(colors);
    while (true) {
      std::vector<std::pair<std::vector<int>, std::size_t>> sig(m_);
      for (std::size_t v = 0; v < m_; ++v) {
        std::vector<int> s{colors[v]};
        std::vector<std::pair<int, int>> nb;
        for (std::size_t u = 0; u < m_; ++u)
          if (code(v, u) != 0) nb.emplace_back(colors[u], code(v, u));
        std::sort(nb.begin(), nb.end());
        for (auto& [c, w] : nb) {
          s.push_back(c);
          s.push_back(w);
        }
        sig[v] = {std::move(s), v};
      }
      std::vector<std::size_t> order(m_);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](auto a, auto b) { return sig[a].first < sig[b].first; });
      std::vector<int> next(m_);
      int rank = -1;
      for (std::size_t t = 0; t < m_; ++t) {
        if (t == 0 || sig[order[t]].first != sig[order[t - 1]].first) ++rank;
        next[order[t]] = rank;
      }
      colors = std::move(next);
      const std::size_t c = static_cast<std::size_t>(rank + 1);
      if (c == count) break;
      count = c;
    }
  }

  static std::size_t distinct(std::vector<int> c) {
    std::sort(c.begin(), c.end());
    return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
  }

  bool twins(std::size_t v, std::size_t w) const {
    if (code(v, w) != 0) return false;
    for (std::size_t x = 0; x < m_; ++x) {
      if (x == v || x == w) continue;
      if (code(v, x) != code(w, x)) return false;
    }
    return true;
  }

  void search(const std::vector<int>& colors) {
    // first non-singleton cell
    std::vector<std::size_t> cell_size(m_, 0);
    for (auto c : colors) ++cell_size[c];
    int target = -1;
    for (std::size_t c = 0; c < m_; ++c)
      if (cell_size[c] > 1) {
        target = static_cast<int>(c);
        break;
      }
    if (target < 0) {
      std::vector<std::size_t> order(m_);
      for (std::size_t v = 0; v < m_; ++v) order[colors[v]] = v;
      std::string enc;
      enc.reserve(m_ * m_);
      for (auto i : order)
        for (auto j : order) enc += static_cast<char>(code(i, j) + 33);
      if (!have_best_ || enc < best_) {
        best_ = std::move(enc);
        have_best_ = true;
      }
      return;
    }
    std::vector<std::size_t> tried;
    for (std::size_t v = 0; v < m_; ++v) {
      if (colors[v] != target) continue;
      bool redundant = false;
      for (auto t : tried)
        if (twins(t, v)) {
          redundant = true;
          break;
        }
      if (redundant) continue;
      tried.push_back(v);
      std::vector<int> next(m_);
      for (std::size_t u = 0; u < m_; ++u) next[u] = 2 * colors[u] + 1;
      next[v] = 2 * colors[v];
      // re-rank densely, then refine
      std::vector<int> sorted = next;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      for (auto& c : next) c = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
      refine(next);
      search(next);
    }
  }

  std::size_t m_;
  std::vector<int> code_;
  std::vector<int> initial_;
  std::string header_;
  std::string best_;
  bool have_best_ = false;
};

}  // namespace detail

/// Relabeling-invariant key; mutable and frozen vertices are never mixed.
inline CanonicalKey canonical_key(const Diagram& g) { return detail::Canonicalizer(g, false).run(); }

/// Key of the underlying weighted undirected graph.
inline CanonicalKey undirected_key(const Diagram& g) { return detail::Canonicalizer(g, true).run(); }

}  // namespace mutclass
