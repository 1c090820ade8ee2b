#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pcover/cluster_graph.hpp"
#include "pcover/errors.hpp"
#include "pcover/graph.hpp"
#include "pcover/rational.hpp"

namespace pcover {

/// Support edge of a half-integral matching; `halves` is 1 (weight 1/2) or 2 (weight 1).
struct WeightedEdge {
  Vertex u = 0;
  Vertex v = 0;
  int halves = 0;
  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Fractional matching with weights in {0, 1/2, 1}. Zero-weight edges are
/// not stored; `edges` is sorted by (u, v) with u < v.
struct HalfIntegralMatching {
  std::vector<WeightedEdge> edges;

  int twice_value() const {
    int s = 0;
    for (const auto& e : edges) s += e.halves;
    return s;
  }
  Rational value() const { return Rational(twice_value(), 2); }

  Rational weight(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    for (const auto& e : edges)
      if (e.u == u && e.v == v) return Rational(e.halves, 2);
    return Rational(0);
  }
};

/// Maximum bipartite matching by augmenting paths (Kuhn). Left vertices are
/// processed in increasing order and neighbours in list order, so the result
/// is deterministic. Returns match_left[u] = right partner or -1.
inline std::vector<int> max_bipartite_matching(int left, int right, const std::vector<std::vector<int>>& adj) {
  std::vector<int> match_left(left, -1);
  std::vector<int> match_right(right, -1);
  std::vector<int> seen(right, -1);
  // Iterative DFS; stack holds (left vertex, next neighbour index).
  std::vector<std::pair<int, std::size_t>> stack;
  std::vector<int> via;
  for (int root = 0; root < left; ++root) {
    stack.assign(1, {root, 0});
    via.clear();
    bool augmented = false;
    while (!stack.empty() && !augmented) {
      auto& [u, next] = stack.back();
      if (next == adj[u].size()) {
        stack.pop_back();
        if (!via.empty()) via.pop_back();
        continue;
      }
      int v = adj[u][next++];
      if (seen[v] == root) continue;
      seen[v] = root;
      if (match_right[v] < 0) {
        via.push_back(v);
        for (std::size_t d = 0; d < stack.size(); ++d) {
          match_left[stack[d].first] = via[d];
          match_right[via[d]] = stack[d].first;
        }
        augmented = true;
      } else {
        via.push_back(v);
        stack.push_back({match_right[v], 0});
      }
    }
  }
  return match_left;
}

/// Maximum fractional matching through the bipartite double cover: a maximum
/// matching there is a partial injection u -> s(u) along edges, and each edge
/// uv gets half the number of its matched copies. The support is then
/// normalized: even cycles and alternating chains are rounded to integral
/// edges, leaving disjoint weight-1 edges plus odd cycles of weight 1/2.
inline HalfIntegralMatching fractional_matching(const Graph& g) {
  const int n = g.order();
  std::vector<std::vector<int>> adj(n);
  for (Vertex u = 0; u < n; ++u) adj[u] = g.neighbors(u);
  const std::vector<int> succ = max_bipartite_matching(n, n, adj);
  std::vector<int> pred(n, -1);
  for (Vertex u = 0; u < n; ++u)
    if (succ[u] >= 0) pred[succ[u]] = u;

  std::map<std::pair<Vertex, Vertex>, int> w;
  auto put = [&](Vertex a, Vertex b, int halves) {
    if (halves == 0) return;
    w[{std::min(a, b), std::max(a, b)}] += halves;
  };
  // Alternate 1, 0, 1, ... along a vertex sequence.
  auto alternate = [&](const std::vector<Vertex>& seq, bool closed) {
    std::size_t edges = closed ? seq.size() : seq.size() - 1;
    for (std::size_t i = 0; i < edges; i += 2) put(seq[i], seq[(i + 1) % seq.size()], 2);
  };

  std::vector<bool> done(n, false);
  // Chains start at vertices that are matched on the left but not the right.
  for (Vertex s = 0; s < n; ++s) {
    if (pred[s] >= 0 || succ[s] < 0) continue;
    std::vector<Vertex> seq{s};
    for (Vertex u = succ[s]; u >= 0; u = succ[u]) seq.push_back(u);
    for (Vertex u : seq) done[u] = true;
    alternate(seq, false);
  }
  for (Vertex s = 0; s < n; ++s) {
    if (done[s] || succ[s] < 0) continue;
    std::vector<Vertex> seq{s};
    for (Vertex u = succ[s]; u != s; u = succ[u]) seq.push_back(u);
    for (Vertex u : seq) done[u] = true;
    if (seq.size() == 2) {
      put(seq[0], seq[1], 2);
    } else if (seq.size() % 2 == 0) {
      alternate(seq, true);
    } else {
      for (std::size_t i = 0; i < seq.size(); ++i) put(seq[i], seq[(i + 1) % seq.size()], 1);
    }
  }
  HalfIntegralMatching f;
  for (const auto& [e, halves] : w) f.edges.push_back({e.first, e.second, halves});
  return f;
}

struct MatchingAudit {
  bool ok = true;
  std::vector<std::string> problems;
  void fail(std::string msg) {
    ok = false;
    problems.push_back(std::move(msg));
  }
};

/// Feasibility, half-integrality and support shape (disjoint weight-1 edges
/// plus vertex-disjoint odd cycles of weight 1/2), checked directly.
inline MatchingAudit audit_matching(const Graph& g, const HalfIntegralMatching& f) {
  MatchingAudit a;
  const int n = g.order();
  std::vector<int> load(n, 0);
  std::vector<int> full(n, 0);
  std::vector<std::vector<Vertex>> half_adj(n);
  for (std::size_t i = 0; i < f.edges.size(); ++i) {
    const auto& e = f.edges[i];
    std::string name = "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
    if (!g.valid(e.u) || !g.valid(e.v) || e.u >= e.v || !g.adjacent(e.u, e.v)) {
      a.fail("support edge " + name + " is not an edge of the graph");
      continue;
    }
    if (i > 0 && f.edges[i - 1].u == e.u && f.edges[i - 1].v == e.v) a.fail("edge " + name + " listed twice");
    if (e.halves != 1 && e.halves != 2) {
      a.fail("edge " + name + " has weight " + Rational(e.halves, 2).to_string());
      continue;
    }
    load[e.u] += e.halves;
    load[e.v] += e.halves;
    if (e.halves == 2) {
      ++full[e.u];
      ++full[e.v];
    } else {
      half_adj[e.u].push_back(e.v);
      half_adj[e.v].push_back(e.u);
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (load[v] > 2) a.fail("vertex " + std::to_string(v) + " has load " + Rational(load[v], 2).to_string());
    if (full[v] > 0 && !half_adj[v].empty()) a.fail("vertex " + std::to_string(v) + " mixes weights 1 and 1/2");
    if (!half_adj[v].empty() && half_adj[v].size() != 2)
      a.fail("vertex " + std::to_string(v) + " lies on a non-cycle half-weight component");
  }
  if (!a.ok) return a;
  std::vector<bool> seen(n, false);
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s] || half_adj[s].empty()) continue;
    std::size_t length = 0;
    Vertex prev = -1;
    Vertex cur = s;
    do {
      seen[cur] = true;
      ++length;
      Vertex next = half_adj[cur][0] == prev ? half_adj[cur][1] : half_adj[cur][0];
      prev = cur;
      cur = next;
    } while (cur != s && length <= static_cast<std::size_t>(n));
    if (length % 2 == 0) a.fail("half-weight cycle through " + std::to_string(s) + " has even length");
  }
  return a;
}

struct DeficiencyResult {
  int value = 0;
  VertexSet argmax;
};

inline constexpr int kDeficiencyCap = 16;

/// max over S of i(G - S) - |S| by enumeration of S in increasing size.
/// Sizes are skipped when #{v : deg v <= |S|} - |S| cannot beat the best so far.
inline DeficiencyResult max_deficiency(const Graph& g, int cap = kDeficiencyCap) {
  const int n = g.order();
  if (n > cap || n > 30) throw SizeLimitError("max_deficiency: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  std::vector<std::uint32_t> nb(n, 0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.neighbors(u)) nb[u] |= 1U << v;
  const std::uint32_t all = n == 32 ? ~0U : ((1U << n) - 1);
  auto isolated_after = [&](std::uint32_t s) {
    int count = 0;
    for (Vertex v = 0; v < n; ++v)
      if (!(s >> v & 1U) && (nb[v] & ~s & all) == 0) ++count;
    return count;
  };
  DeficiencyResult best{isolated_after(0), {}};
  for (int size = 1; size <= n; ++size) {
    int low_degree = 0;
    for (Vertex v = 0; v < n; ++v) low_degree += g.degree(v) <= size ? 1 : 0;
    if (low_degree - size <= best.value) continue;
    // Gosper's hack over all size-element subsets.
    for (std::uint64_t s = (1ULL << size) - 1; s < (1ULL << n);) {
      int value = isolated_after(static_cast<std::uint32_t>(s)) - size;
      if (value > best.value) {
        std::vector<Vertex> members;
        for (Vertex v = 0; v < n; ++v)
          if (s >> v & 1U) members.push_back(v);
        best = {value, VertexSet(std::move(members))};
      }
      std::uint64_t c = s & -s;
      std::uint64_t r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
  return best;
}

/// A pair (V_i^{half_i}, V_j^{half_j}) of cluster halves; halves are 1 or 2.
struct ClusterPairing {
  int i = 0;
  int half_i = 0;
  int j = 0;
  int half_j = 0;
  friend bool operator==(const ClusterPairing&, const ClusterPairing&) = default;
};

/// Turns a half-integral matching of the cluster graph into pairs of cluster
/// halves. A weight-1 edge ij is still split into (V_i^1, V_j^1) and
/// (V_i^2, V_j^2); a weight-1/2 edge takes the next unused half at each end.
inline std::vector<ClusterPairing> cluster_matching_pairs(const ClusterGraph& h, const HalfIntegralMatching& f) {
  Graph hg = h.as_graph();
  std::vector<int> load(h.t, 0);
  for (const auto& e : f.edges) {
    if (!hg.valid(e.u) || !hg.valid(e.v) || e.u >= e.v || !hg.adjacent(e.u, e.v))
      throw InvalidArgument("matching uses a non-edge of the cluster graph");
    if (e.halves != 1 && e.halves != 2) throw InvalidArgument("matching weight outside {0, 1/2, 1}");
    load[e.u] += e.halves;
    load[e.v] += e.halves;
  }
  for (int i = 0; i < h.t; ++i)
    if (load[i] > 2) throw InvalidArgument("matching overloads cluster " + std::to_string(i));

  std::vector<int> next_half(h.t, 1);
  std::vector<ClusterPairing> out;
  for (const auto& e : f.edges) {
    if (e.halves == 2) {
      out.push_back({e.u, 1, e.v, 1});
      out.push_back({e.u, 2, e.v, 2});
      next_half[e.u] = next_half[e.v] = 3;
    }
  }
  for (const auto& e : f.edges) {
    if (e.halves == 1) out.push_back({e.u, next_half[e.u]++, e.v, next_half[e.v]++});
  }
  return out;
}

}  // namespace pcover
