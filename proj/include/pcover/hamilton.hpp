#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcover/errors.hpp"
#include "pcover/graph.hpp"
#include "pcover/random.hpp"

namespace pcover {

/// Vertex sequence with consecutive vertices adjacent. A single vertex is a
/// path of length 0.
struct Path {
  std::vector<Vertex> vertices;
  std::size_t size() const noexcept { return vertices.size(); }
  bool empty() const noexcept { return vertices.empty(); }
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
  friend bool operator==(const Path&, const Path&) = default;
};

/// Cyclic vertex sequence; the last vertex is adjacent to the first.
struct Cycle {
  std::vector<Vertex> vertices;
  std::size_t size() const noexcept { return vertices.size(); }
  bool empty() const noexcept { return vertices.empty(); }
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// Search effort for rotation-extension. `steps_per_restart` of 0 means ten
/// steps per vertex of the target. Graphs with at most `exhaustive_cap`
/// vertices fall back to the subset DP when the heuristic fails.
struct HamiltonBudget {
  int restarts = 50;
  long steps_per_restart = 0;
  int exhaustive_cap = 14;
  std::uint64_t seed = 0;
};

struct PathSearch {
  std::optional<Path> path;  // set on success
  Path best;                 // longest path seen
  long steps = 0;
  bool exhaustive = false;
  bool found() const noexcept { return path.has_value(); }
};

struct CycleSearch {
  std::optional<Cycle> cycle;  // set on success
  Cycle longest;               // longest cycle seen, possibly empty
  long steps = 0;
  bool exhaustive = false;
  bool found() const noexcept { return cycle.has_value(); }
};

/// Empty string if `p` is a path of g, otherwise the first defect.
inline std::string path_defect(const Graph& g, const std::vector<Vertex>& p, bool closed = false) {
  std::vector<bool> seen(g.order(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    Vertex v = p[i];
    if (!g.valid(v)) return "vertex " + std::to_string(v) + " out of range";
    if (seen[v]) return "vertex " + std::to_string(v) + " repeated";
    seen[v] = true;
    if (i > 0 && !g.adjacent(p[i - 1], v))
      return "non-edge (" + std::to_string(p[i - 1]) + "," + std::to_string(v) + ")";
  }
  if (closed) {
    if (p.size() < 3) return "cycle shorter than 3";
    if (!g.adjacent(p.back(), p.front()))
      return "non-edge (" + std::to_string(p.back()) + "," + std::to_string(p.front()) + ")";
  }
  return {};
}

inline bool is_path_of(const Graph& g, const Path& p) { return path_defect(g, p.vertices).empty(); }
inline bool is_cycle_of(const Graph& g, const Cycle& c) { return path_defect(g, c.vertices, true).empty(); }

namespace detail {

/// Subgraph on a vertex list with local ids, optionally keeping only edges
/// between two given sides.
struct LocalGraph {
  std::vector<Vertex> to_host;
  std::vector<std::vector<int>> adj;
  std::vector<Bitset> rows;

  int order() const noexcept { return static_cast<int>(adj.size()); }
  bool adjacent(int a, int b) const { return rows[a].test(static_cast<std::size_t>(b)); }

  static LocalGraph induced(const Graph& g, const std::vector<Vertex>& vertices, const std::vector<int>* part = nullptr) {
    LocalGraph lg;
    lg.to_host = vertices;
    const int n = static_cast<int>(vertices.size());
    std::vector<int> local(g.order(), -1);
    for (int i = 0; i < n; ++i) local[vertices[i]] = i;
    lg.adj.assign(n, {});
    lg.rows.assign(n, Bitset(n));
    for (int i = 0; i < n; ++i) {
      for (Vertex w : g.neighbors(vertices[i])) {
        int j = local[w];
        if (j < 0 || (part && (*part)[i] == (*part)[j])) continue;
        lg.adj[i].push_back(j);
        lg.rows[i].set(j);
      }
    }
    return lg;
  }

  std::vector<Vertex> host(const std::vector<int>& seq) const {
    std::vector<Vertex> out;
    out.reserve(seq.size());
    for (int v : seq) out.push_back(to_host[v]);
    return out;
  }
};

/// Rotation-extension (Posa) search on a LocalGraph. Extends from either end
/// while an unvisited neighbour exists; otherwise rotates at the back end:
/// for a neighbour u = p[i] of the end, p[i+1..] is reversed so p[i+1]
/// becomes the new end. When `close` is set, a spanning path is rotated until
/// its ends are adjacent.
class PosaSearch {
 public:
  PosaSearch(const LocalGraph& g, Rng& rng) : g_(g), rng_(rng), pos_(g.order(), -1) {}

  bool run(int start, long steps, bool close) {
    const int n = g_.order();
    for (int v : path_) pos_[v] = -1;
    path_.assign(1, start);
    pos_[start] = 0;
    for (long step = 0; step < steps; ++step) {
      ++steps_used_;
      note_progress(close);
      if (static_cast<int>(path_.size()) == n) {
        if (!close) return true;
        if (n >= 3 && g_.adjacent(path_.back(), path_.front())) return true;
        if (closing_rotation()) return true;
        if (rng_() & 1U) reverse_all();
        random_rotation();
        continue;
      }
      if (extend()) continue;
      reverse_all();
      if (extend()) continue;
      if (!rotation_towards_fresh_end()) random_rotation();
    }
    note_progress(close);
    return false;
  }

  const std::vector<int>& path() const noexcept { return path_; }
  const std::vector<int>& best_path() const noexcept { return best_path_; }
  const std::vector<int>& best_cycle() const noexcept { return best_cycle_; }
  long steps_used() const noexcept { return steps_used_; }

 private:
  void note_progress(bool close) {
    if (path_.size() > best_path_.size()) best_path_ = path_;
    if (close && path_.size() >= 3 && path_.size() > best_cycle_.size() && g_.adjacent(path_.back(), path_.front()))
      best_cycle_ = path_;
  }

  int unvisited_neighbor(int v) {
    const auto& nb = g_.adj[v];
    if (nb.empty()) return -1;
    std::size_t offset = uniform_below(rng_, nb.size());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      int w = nb[(offset + i) % nb.size()];
      if (pos_[w] < 0) return w;
    }
    return -1;
  }

  bool extend() {
    int w = unvisited_neighbor(path_.back());
    if (w < 0) return false;
    pos_[w] = static_cast<int>(path_.size());
    path_.push_back(w);
    return true;
  }

  void reverse_all() {
    std::reverse(path_.begin(), path_.end());
    for (std::size_t i = 0; i < path_.size(); ++i) pos_[path_[i]] = static_cast<int>(i);
  }

  // Rotation pivots: on-path neighbours of the end other than its predecessor.
  void pivots(std::vector<int>& out) const {
    out.clear();
    const int limit = static_cast<int>(path_.size()) - 2;
    for (int u : g_.adj[path_.back()])
      if (pos_[u] >= 0 && pos_[u] < limit) out.push_back(u);
  }

  void rotate_at(int u) {
    std::size_t i = static_cast<std::size_t>(pos_[u]) + 1;
    std::reverse(path_.begin() + static_cast<std::ptrdiff_t>(i), path_.end());
    for (; i < path_.size(); ++i) pos_[path_[i]] = static_cast<int>(i);
  }

  void random_rotation() {
    pivots(scratch_);
    if (scratch_.empty()) {
      reverse_all();
      pivots(scratch_);
      if (scratch_.empty()) return;
    }
    rotate_at(scratch_[uniform_below(rng_, scratch_.size())]);
  }

  bool rotation_towards_fresh_end() {
    pivots(scratch_);
    if (scratch_.empty()) return false;
    shuffle(std::span<int>(scratch_), rng_);
    const std::size_t tries = std::min<std::size_t>(scratch_.size(), 8);
    for (std::size_t t = 0; t < tries; ++t) {
      int next_end = path_[pos_[scratch_[t]] + 1];
      for (int w : g_.adj[next_end])
        if (pos_[w] < 0) {
          rotate_at(scratch_[t]);
          return true;
        }
    }
    return false;
  }

  bool closing_rotation() {
    for (int pass = 0; pass < 2; ++pass) {
      pivots(scratch_);
      for (int u : scratch_) {
        if (g_.adjacent(path_[pos_[u] + 1], path_.front())) {
          rotate_at(u);
          return true;
        }
      }
      reverse_all();
    }
    return false;
  }

  const LocalGraph& g_;
  Rng& rng_;
  std::vector<int> pos_;
  std::vector<int> path_;
  std::vector<int> best_path_;
  std::vector<int> best_cycle_;
  std::vector<int> scratch_;
  long steps_used_ = 0;
};

/// Subset DP: reach[mask] = set of end vertices of paths covering exactly
/// mask. With `cycle`, paths start at vertex 0 and must close back to it.
inline std::optional<std::vector<int>> exhaustive_hamiltonian(const LocalGraph& g, bool cycle) {
  const int n = g.order();
  if (n == 0) return std::vector<int>{};
  if (n > 26) throw SizeLimitError("exhaustive Hamiltonicity limited to 26 vertices");
  if (cycle && n < 3) return std::nullopt;
  std::vector<std::uint32_t> nb(n, 0);
  for (int v = 0; v < n; ++v)
    for (int w : g.adj[v]) nb[v] |= 1U << w;
  const std::uint32_t full = (n == 32) ? ~0U : ((1U << n) - 1);
  std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
  if (cycle) {
    reach[1] = 1;
  } else {
    for (int v = 0; v < n; ++v) reach[std::size_t{1} << v] = 1U << v;
  }
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    for (std::uint32_t ends = reach[mask]; ends != 0; ends &= ends - 1) {
      int v = std::countr_zero(ends);
      for (std::uint32_t ext = nb[v] & ~mask; ext != 0; ext &= ext - 1) {
        int w = std::countr_zero(ext);
        reach[mask | (1U << w)] |= 1U << w;
      }
    }
  }
  std::uint32_t finals = reach[full];
  if (cycle) finals &= nb[0];
  if (finals == 0) return std::nullopt;
  std::vector<int> seq;
  int v = std::countr_zero(finals);
  std::uint32_t mask = full;
  seq.push_back(v);
  while (std::popcount(mask) > 1) {
    std::uint32_t rest = mask & ~(1U << v);
    int u = std::countr_zero(reach[rest] & nb[v]);
    mask = rest;
    v = u;
    seq.push_back(v);
  }
  std::reverse(seq.begin(), seq.end());
  return seq;
}

inline long steps_for(const HamiltonBudget& b, int scale) {
  return b.steps_per_restart > 0 ? b.steps_per_restart : 10L * std::max(scale, 1);
}

/// Rotation-extension with restarts; returns the best path on failure.
inline PathSearch search_path(const LocalGraph& lg, const HamiltonBudget& budget) {
  PathSearch out;
  const int n = lg.order();
  if (n == 0) {
    out.path = Path{};
    return out;
  }
  Rng rng(mix_seed(budget.seed, 0x68616dULL));
  PosaSearch search(lg, rng);
  std::vector<int> best;
  for (int r = 0; r < std::max(budget.restarts, 1); ++r) {
    int start = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    bool ok = search.run(start, steps_for(budget, n), false);
    if (search.best_path().size() > best.size()) best = search.best_path();
    if (ok) {
      out.path = Path{lg.host(search.path())};
      break;
    }
  }
  out.best = Path{lg.host(best)};
  out.steps = search.steps_used();
  return out;
}

}  // namespace detail

/// Hamiltonian path by rotation-extension with restarts, then the exact
/// subset DP when the graph has at most budget.exhaustive_cap vertices.
inline PathSearch hamiltonian_path(const Graph& g, const HamiltonBudget& budget = {}) {
  std::vector<Vertex> all(g.order());
  for (Vertex v = 0; v < g.order(); ++v) all[v] = v;
  auto lg = detail::LocalGraph::induced(g, all);
  if (g.order() > 1 && connected_components(g).size() > 1) {
    PathSearch out;
    out.best = detail::search_path(lg, {1, budget.steps_per_restart, 0, budget.seed}).best;
    return out;
  }
  PathSearch out = detail::search_path(lg, budget);
  if (!out.found() && g.order() <= budget.exhaustive_cap) {
    out.exhaustive = true;
    if (auto seq = detail::exhaustive_hamiltonian(lg, false)) {
      out.path = Path{lg.host(*seq)};
      out.best = *out.path;
    }
  }
  return out;
}

/// Longest path found by rotation-extension within `vertices` (no exhaustive step).
inline Path long_path(const Graph& g, const VertexSet& vertices, const HamiltonBudget& budget = {}) {
  auto lg = detail::LocalGraph::induced(g, vertices.members());
  auto res = detail::search_path(lg, budget);
  return res.found() ? *res.path : res.best;
}

/// Spanning cycle of the bipartite graph between x and y (edges inside x or
/// inside y are ignored). Failure is a value; `longest` holds the longest
/// cycle seen.
inline CycleSearch spanning_cycle_bipartite(const Graph& g, const VertexSet& x, const VertexSet& y,
                                            const HamiltonBudget& budget = {}) {
  require_members(g, x);
  require_members(g, y);
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("spanning_cycle_bipartite needs |x| = |y| >= 2");
  if (!x.disjoint_from(y)) throw InvalidArgument("spanning_cycle_bipartite needs disjoint sides");
  std::vector<Vertex> verts(x.begin(), x.end());
  verts.insert(verts.end(), y.begin(), y.end());
  std::vector<int> part(verts.size(), 0);
  std::fill(part.begin() + static_cast<std::ptrdiff_t>(x.size()), part.end(), 1);
  auto lg = detail::LocalGraph::induced(g, verts, &part);
  const int n = lg.order();

  CycleSearch out;
  bool isolated = std::any_of(lg.adj.begin(), lg.adj.end(), [](const auto& a) { return a.size() < 2; });
  if (!isolated) {
    Rng rng(mix_seed(budget.seed, 0x6379636cULL));
    detail::PosaSearch search(lg, rng);
    std::vector<int> longest;
    for (int r = 0; r < std::max(budget.restarts, 1); ++r) {
      int start = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
      bool ok = search.run(start, detail::steps_for(budget, static_cast<int>(x.size())), true);
      if (search.best_cycle().size() > longest.size()) longest = search.best_cycle();
      if (ok) {
        out.cycle = Cycle{lg.host(search.path())};
        longest = search.path();
        break;
      }
    }
    out.longest = Cycle{lg.host(longest)};
    out.steps = search.steps_used();
    if (!out.found() && n <= budget.exhaustive_cap) {
      out.exhaustive = true;
      if (auto seq = detail::exhaustive_hamiltonian(lg, true)) {
        out.cycle = Cycle{lg.host(*seq)};
        out.longest = *out.cycle;
      }
    }
  }
  return out;
}

/// Opens a cycle into a path: without `drop` the edge back to the first
/// vertex is cut; with `drop` that vertex is removed and the path starts at
/// its successor.
inline Path cycle_to_path(const Cycle& c, std::optional<Vertex> drop = std::nullopt) {
  if (!drop) return Path{c.vertices};
  auto it = std::find(c.vertices.begin(), c.vertices.end(), *drop);
  if (it == c.vertices.end()) throw InvalidArgument("vertex " + std::to_string(*drop) + " is not on the cycle");
  Path p;
  p.vertices.insert(p.vertices.end(), it + 1, c.vertices.end());
  p.vertices.insert(p.vertices.end(), c.vertices.begin(), it);
  return p;
}

}  // namespace pcover
