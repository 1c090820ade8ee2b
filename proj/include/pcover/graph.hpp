#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcover/errors.hpp"
#include "pcover/rational.hpp"

namespace pcover {

using Vertex = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Side of a vertex in a bipartition: X holds side 0, Y holds side 1.
enum class Side : std::uint8_t { X = 0, Y = 1 };

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t bits() const noexcept { return bits_; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  /// |this ∩ other|; both must have the same width.
  std::size_t and_count(const Bitset& other) const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & other.words_[i]);
    return c;
  }
  bool intersects(const Bitset& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      for (std::uint64_t w = words_[i]; w != 0; w &= w - 1) f(static_cast<Vertex>(i * 64 + std::countr_zero(w)));
    }
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Sorted, duplicate-free set of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> init) : members_(init) { normalize(); }
  explicit VertexSet(std::vector<Vertex> members) : members_(std::move(members)) { normalize(); }

  static VertexSet range(Vertex first, Vertex last) {
    VertexSet s;
    for (Vertex v = first; v < last; ++v) s.members_.push_back(v);
    return s;
  }
  static VertexSet from_bitset(const Bitset& bits) {
    VertexSet s;
    bits.for_each([&](Vertex v) { s.members_.push_back(v); });
    return s;
  }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }
  const std::vector<Vertex>& members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  Vertex operator[](std::size_t i) const { return members_[i]; }

  Bitset to_bitset(std::size_t n) const {
    Bitset b(n);
    for (Vertex v : members_) b.set(static_cast<std::size_t>(v));
    return b;
  }

  VertexSet minus(const VertexSet& other) const {
    VertexSet r;
    std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(r.members_));
    return r;
  }
  VertexSet intersect(const VertexSet& other) const {
    VertexSet r;
    std::set_intersection(begin(), end(), other.begin(), other.end(), std::back_inserter(r.members_));
    return r;
  }
  VertexSet unite(const VertexSet& other) const {
    VertexSet r;
    std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(r.members_));
    return r;
  }
  bool disjoint_from(const VertexSet& other) const { return intersect(other).empty(); }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  void normalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }
  std::vector<Vertex> members_;
};

/// Immutable simple undirected graph on vertices 0..n-1 with an optional
/// bipartition. Adjacency is held both as sorted lists and as bitset rows.
class Graph {
 public:
  Graph() = default;

  /// Throws InvalidArgument on loops, parallel edges, out-of-range ids, or a
  /// bipartition that some edge does not cross.
  Graph(int n, std::vector<Edge> edges, std::optional<std::vector<Side>> sides = std::nullopt) : n_(n) {
    if (n < 0) throw InvalidArgument("negative vertex count");
    for (auto& e : edges) {
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
        throw InvalidArgument("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") out of range");
      if (e.u == e.v) throw InvalidArgument("loop at vertex " + std::to_string(e.u));
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end())
      throw InvalidArgument("parallel edge (" + std::to_string(dup->u) + ", " + std::to_string(dup->v) + ")");
    adj_.assign(n, {});
    rows_.assign(n, Bitset(n));
    for (const auto& e : edges) {
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
      rows_[e.u].set(e.v);
      rows_[e.v].set(e.u);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
    edge_count_ = edges.size();
    if (sides) set_sides(std::move(*sides));
  }

  int order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edge_count_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  bool adjacent(Vertex u, Vertex v) const { return rows_[u].test(static_cast<std::size_t>(v)); }
  const Bitset& row(Vertex v) const { return rows_[v]; }
  bool valid(Vertex v) const noexcept { return v >= 0 && v < n_; }

  /// Canonical edge list: u < v, lexicographically sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.push_back({u, v});
    return out;
  }

  int min_degree() const {
    int d = n_ == 0 ? 0 : degree(0);
    for (Vertex v = 1; v < n_; ++v) d = std::min(d, degree(v));
    return d;
  }
  /// Degree k if every vertex has degree k.
  std::optional<int> regular_degree() const {
    if (n_ == 0) return 0;
    for (Vertex v = 1; v < n_; ++v)
      if (degree(v) != degree(0)) return std::nullopt;
    return degree(0);
  }

  bool bipartite() const noexcept { return sides_.has_value(); }
  const std::optional<std::vector<Side>>& sides() const noexcept { return sides_; }
  Side side(Vertex v) const { return (*sides_)[v]; }
  VertexSet part(Side s) const {
    VertexSet out;
    std::vector<Vertex> m;
    if (sides_)
      for (Vertex v = 0; v < n_; ++v)
        if ((*sides_)[v] == s) m.push_back(v);
    return VertexSet(std::move(m));
  }

  Graph with_sides(std::vector<Side> sides) const {
    Graph g = *this;
    g.set_sides(std::move(sides));
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_ && a.sides_ == b.sides_;
  }

 private:
  void set_sides(std::vector<Side> sides) {
    if (static_cast<int>(sides.size()) != n_) throw InvalidArgument("bipartition size does not match vertex count");
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : adj_[u])
        if (sides[u] == sides[v])
          throw InvalidArgument("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") does not cross the bipartition");
    sides_ = std::move(sides);
  }

  int n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<Bitset> rows_;
  std::optional<std::vector<Side>> sides_;
};

inline void require_vertex(const Graph& g, Vertex v) {
  if (!g.valid(v)) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
}

inline void require_members(const Graph& g, const VertexSet& s) {
  if (!s.empty() && (s.members().front() < 0 || s.members().back() >= g.order()))
    throw InvalidArgument("vertex set has ids outside 0.." + std::to_string(g.order() - 1));
}

/// |N(v) ∩ s|, scanning whichever of s and N(v) is smaller.
inline int degree_into(const Graph& g, Vertex v, const VertexSet& s) {
  require_vertex(g, v);
  require_members(g, s);
  int count = 0;
  if (s.size() <= g.neighbors(v).size()) {
    for (Vertex u : s) count += g.adjacent(v, u) ? 1 : 0;
  } else {
    for (Vertex u : g.neighbors(v)) count += s.contains(u) ? 1 : 0;
  }
  return count;
}

/// e(a, b) for disjoint a, b.
inline std::int64_t edges_between(const Graph& g, const VertexSet& a, const VertexSet& b) {
  Bitset bb = b.to_bitset(g.order());
  std::int64_t e = 0;
  for (Vertex x : a) e += static_cast<std::int64_t>(g.row(x).and_count(bb));
  return e;
}

/// e(a, b) / (|a| |b|), exact.
inline Rational density(const Graph& g, const VertexSet& a, const VertexSet& b) {
  if (a.empty() || b.empty()) throw InvalidArgument("density of an empty vertex set");
  require_members(g, a);
  require_members(g, b);
  if (!a.disjoint_from(b)) throw InvalidArgument("density of overlapping vertex sets");
  return Rational(edges_between(g, a, b), static_cast<std::int64_t>(a.size() * b.size()));
}

/// Subgraph induced on `keep`, relabelled to 0..|keep|-1 in increasing order.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_host;  // local id -> host id
};

inline InducedSubgraph induced(const Graph& g, const VertexSet& keep) {
  require_members(g, keep);
  std::vector<Vertex> local(g.order(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (Vertex u : keep)
    for (Vertex v : g.neighbors(u))
      if (u < v && local[v] >= 0) edges.push_back({local[u], local[v]});
  std::optional<std::vector<Side>> sides;
  if (g.bipartite()) {
    sides.emplace();
    for (Vertex u : keep) sides->push_back(g.side(u));
  }
  return {Graph(static_cast<int>(keep.size()), std::move(edges), std::move(sides)), keep.members()};
}

/// Proper 2-colouring by BFS, or nullopt if g has an odd cycle. Each
/// component's lowest vertex goes to X.
inline std::optional<std::vector<Side>> two_coloring(const Graph& g) {
  const int n = g.order();
  std::vector<int> colour(n, -1);
  for (Vertex s = 0; s < n; ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (Vertex v : g.neighbors(u)) {
        if (colour[v] < 0) {
          colour[v] = 1 - colour[u];
          q.push(v);
        } else if (colour[v] == colour[u]) {
          return std::nullopt;
        }
      }
    }
  }
  std::vector<Side> sides(n);
  for (Vertex v = 0; v < n; ++v) sides[v] = colour[v] == 0 ? Side::X : Side::Y;
  return sides;
}

inline std::vector<VertexSet> connected_components(const Graph& g) {
  const int n = g.order();
  std::vector<bool> seen(n, false);
  std::vector<VertexSet> out;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = true;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (Vertex v : g.neighbors(comp[i]))
        if (!seen[v]) {
          seen[v] = true;
          comp.push_back(v);
        }
    out.emplace_back(std::move(comp));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Edge-list text format:
//   n m
//   [bipartite k]        X = {0..k-1}, Y = {k..n-1}
//   u v                  m lines, 0 <= u < v < n
// Lines whose first non-blank character is '#' and blank lines are skipped.

namespace detail {

inline bool next_content_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

template <class... Ts>
bool parse_fields(const std::string& line, Ts&... out) {
  std::istringstream ss(line);
  ((ss >> out), ...);
  if (ss.fail()) return false;
  std::string rest;
  return !(ss >> rest);
}

}  // namespace detail

inline Graph read_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!detail::next_content_line(in, line, lineno)) throw FormatError(0, "missing header line 'n m'");
  long long n = 0;
  long long m = 0;
  if (!detail::parse_fields(line, n, m) || n < 0 || m < 0)
    throw FormatError(lineno, "expected header 'n m' with non-negative integers");
  if (n > (1LL << 20)) throw FormatError(lineno, "vertex count too large");

  std::optional<std::vector<Side>> sides;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::set<std::pair<int, int>> seen;
  bool first_body_line = true;
  while (detail::next_content_line(in, line, lineno)) {
    if (first_body_line && line.find("bipartite") != std::string::npos) {
      first_body_line = false;
      std::string word;
      long long k = 0;
      if (!detail::parse_fields(line, word, k) || word != "bipartite" || k < 0 || k > n)
        throw FormatError(lineno, "expected 'bipartite k' with 0 <= k <= n");
      sides.emplace(static_cast<std::size_t>(n), Side::Y);
      std::fill(sides->begin(), sides->begin() + k, Side::X);
      continue;
    }
    first_body_line = false;
    long long u = 0;
    long long v = 0;
    if (!detail::parse_fields(line, u, v)) throw FormatError(lineno, "expected edge 'u v'");
    if (u < 0 || v < 0 || u >= n || v >= n) throw FormatError(lineno, "vertex id out of range 0.." + std::to_string(n - 1));
    if (u == v) throw FormatError(lineno, "loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (!seen.emplace(static_cast<int>(u), static_cast<int>(v)).second)
      throw FormatError(lineno, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    if (sides && (*sides)[u] == (*sides)[v])
      throw FormatError(lineno, "edge " + std::to_string(u) + " " + std::to_string(v) + " does not cross the bipartition");
    if (static_cast<long long>(edges.size()) == m) throw FormatError(lineno, "more edges than the header's m");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (static_cast<long long>(edges.size()) != m)
    throw FormatError(lineno, "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  return Graph(static_cast<int>(n), std::move(edges), std::move(sides));
}

inline Graph read_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_graph(in);
}

/// Canonical text. A bipartition must be of prefix form X = {0..k-1}.
inline std::string write_graph(const Graph& g) {
  std::string out = std::to_string(g.order()) + " " + std::to_string(g.size()) + "\n";
  if (g.bipartite()) {
    const auto& sides = *g.sides();
    auto k = std::count(sides.begin(), sides.end(), Side::X);
    if (!std::all_of(sides.begin(), sides.begin() + k, [](Side s) { return s == Side::X; }))
      throw InvalidArgument("bipartition is not of the form X = {0..k-1}");
    out += "bipartite " + std::to_string(k) + "\n";
  }
  for (const auto& e : g.edges()) out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

}  // namespace pcover
