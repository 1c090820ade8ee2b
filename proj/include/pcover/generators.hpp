#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pcover/graph.hpp"
#include "pcover/random.hpp"
#include "pcover/rational.hpp"

namespace pcover {

enum class Family { RandomRegular, RandomBipartiteRegular, DisjointCliques, DisjointBicliques };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::RandomRegular: return "random-regular";
    case Family::RandomBipartiteRegular: return "random-bipartite-regular";
    case Family::DisjointCliques: return "disjoint-cliques";
    case Family::DisjointBicliques: return "disjoint-bicliques";
  }
  return "?";
}

inline Family parse_family(std::string_view s) {
  for (Family f : {Family::RandomRegular, Family::RandomBipartiteRegular, Family::DisjointCliques,
                   Family::DisjointBicliques})
    if (to_string(f) == s) return f;
  throw InvalidArgument("unknown family '" + std::string(s) + "'");
}

inline bool is_bipartite_family(Family f) {
  return f == Family::RandomBipartiteRegular || f == Family::DisjointBicliques;
}

struct GenSpec {
  int n = 0;
  int k = 0;
  Family family = Family::RandomRegular;
  std::uint64_t seed = 0;
};

/// k = ceil(c * n), exact.
inline int degree_for(const Rational& c, int n) { return static_cast<int>((c * Rational(n)).ceil()); }

inline constexpr int kMaxRestarts = 10'000;

namespace detail {

inline std::uint64_t pair_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

/// Stub pairings leave loops and parallel edges; each is removed by a
/// double-edge switch with a uniformly chosen simple edge. `bipartite` keeps
/// every edge as (x, y) with x in the first slot.
class SwitchRepair {
 public:
  SwitchRepair(std::vector<Edge>& edges, bool bipartite, Rng& rng)
      : edges_(edges), bipartite_(bipartite), rng_(rng) {
    counts_.reserve(edges.size() * 2);
    for (const auto& e : edges_) ++counts_[pair_key(e.u, e.v)];
  }

  bool run() {
    std::vector<std::size_t> bad;
    {
      std::unordered_map<std::uint64_t, int> kept;
      for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        if (e.u == e.v || ++kept[pair_key(e.u, e.v)] > 1) bad.push_back(i);
      }
    }
    const std::size_t cap = 200 * (bad.size() + 16);
    std::size_t attempts = 0;
    while (!bad.empty()) {
      if (++attempts > cap) return false;
      std::size_t i = bad.back();
      std::size_t j = uniform_below(rng_, edges_.size());
      if (j == i) continue;
      Edge a = edges_[i];
      Edge b = edges_[j];
      if (b.u == b.v || counts_[pair_key(b.u, b.v)] != 1) continue;
      if (!bipartite_ && (rng_() & 1U)) std::swap(b.u, b.v);
      Edge n1{a.u, b.u};
      Edge n2{a.v, b.v};
      if (bipartite_) {
        n1 = {a.u, b.v};
        n2 = {b.u, a.v};
      }
      if (n1.u == n1.v || n2.u == n2.v) continue;
      if (pair_key(n1.u, n1.v) == pair_key(n2.u, n2.v)) continue;
      if (counts_[pair_key(n1.u, n1.v)] != 0 || counts_[pair_key(n2.u, n2.v)] != 0) continue;
      --counts_[pair_key(a.u, a.v)];
      --counts_[pair_key(b.u, b.v)];
      ++counts_[pair_key(n1.u, n1.v)];
      ++counts_[pair_key(n2.u, n2.v)];
      edges_[i] = n1;
      edges_[j] = n2;
      bad.pop_back();
    }
    return true;
  }

 private:
  std::vector<Edge>& edges_;
  bool bipartite_;
  Rng& rng_;
  std::unordered_map<std::uint64_t, int> counts_;
};

inline std::vector<Edge> complement_edges(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
  for (const auto& e : edges) present[e.u][e.v] = present[e.v][e.u] = true;
  std::vector<Edge> out;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!present[u][v]) out.push_back({u, v});
  return out;
}

inline std::vector<Edge> regular_edges(int n, int k, Rng& rng) {
  if (k == 0) return {};
  std::vector<Vertex> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * k);
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    stubs.clear();
    for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), k, v);
    shuffle(std::span<Vertex>(stubs), rng);
    std::vector<Edge> edges;
    edges.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.push_back({stubs[i], stubs[i + 1]});
    if (SwitchRepair(edges, false, rng).run()) return edges;
  }
  throw RetryExhausted("random_regular: pairing restarts exhausted");
}

inline std::vector<Edge> bipartite_regular_edges(int half, int k, Rng& rng) {
  if (k == 0) return {};
  std::vector<Vertex> ys;
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    ys.clear();
    for (Vertex y = half; y < 2 * half; ++y) ys.insert(ys.end(), k, y);
    shuffle(std::span<Vertex>(ys), rng);
    std::vector<Edge> edges;
    edges.reserve(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) edges.push_back({static_cast<Vertex>(i / k), ys[i]});
    if (SwitchRepair(edges, true, rng).run()) return edges;
  }
  throw RetryExhausted("random_bipartite_regular: pairing restarts exhausted");
}

inline std::vector<Side> prefix_sides(int n, int k) {
  std::vector<Side> sides(n, Side::Y);
  std::fill(sides.begin(), sides.begin() + k, Side::X);
  return sides;
}

}  // namespace detail

/// Simple k-regular graph on n vertices from the pairing model. Collisions
/// are repaired by edge switches; for k > (n-1)/2 the complement is drawn.
inline Graph random_regular(const GenSpec& spec) {
  const int n = spec.n;
  const int k = spec.k;
  if (n <= 0 || k < 0 || k >= n) throw InvalidArgument("random_regular needs 0 <= k < n");
  if ((static_cast<long long>(n) * k) % 2 != 0) throw InvalidArgument("random_regular needs n*k even");
  Rng rng(mix_seed(spec.seed, 0x7265677572ULL));
  if (2 * k > n - 1) return Graph(n, detail::complement_edges(n, detail::regular_edges(n, n - 1 - k, rng)));
  return Graph(n, detail::regular_edges(n, k, rng));
}

/// Bipartite k-regular graph with X = {0..n/2-1}, Y = {n/2..n-1}.
inline Graph random_bipartite_regular(const GenSpec& spec) {
  const int n = spec.n;
  const int k = spec.k;
  if (n <= 0 || n % 2 != 0) throw InvalidArgument("random_bipartite_regular needs n even");
  if (k < 0 || 2 * k > n) throw InvalidArgument("random_bipartite_regular needs k <= n/2");
  const int half = n / 2;
  Rng rng(mix_seed(spec.seed, 0x6269706172ULL));
  std::vector<Edge> edges;
  if (2 * k > half) {
    auto sparse = detail::bipartite_regular_edges(half, half - k, rng);
    std::vector<std::vector<bool>> present(half, std::vector<bool>(half, false));
    for (const auto& e : sparse) present[e.u][e.v - half] = true;
    for (Vertex x = 0; x < half; ++x)
      for (Vertex y = 0; y < half; ++y)
        if (!present[x][y]) edges.push_back({x, y + half});
  } else {
    edges = detail::bipartite_regular_edges(half, k, rng);
  }
  return Graph(n, std::move(edges), detail::prefix_sides(n, half));
}

/// Disjoint K_{k+1}'s; when (k+1) does not divide n, the last clique absorbs
/// the remainder j and becomes K_{k+1+j}. Disjoint K_{k,k}'s carry the
/// bipartition X = {0..n/2-1}.
inline Graph extremal_family(const GenSpec& spec) {
  const int n = spec.n;
  const int k = spec.k;
  if (n <= 0 || k < 1) throw InvalidArgument("extremal_family needs n > 0 and k >= 1");
  std::vector<Edge> edges;
  if (spec.family == Family::DisjointCliques) {
    const int q = n / (k + 1);
    if (q == 0) throw InvalidArgument("disjoint-cliques needs n >= k+1");
    Vertex start = 0;
    for (int c = 0; c < q; ++c) {
      Vertex stop = c + 1 == q ? n : start + k + 1;
      for (Vertex u = start; u < stop; ++u)
        for (Vertex v = u + 1; v < stop; ++v) edges.push_back({u, v});
      start = stop;
    }
    return Graph(n, std::move(edges));
  }
  if (spec.family == Family::DisjointBicliques) {
    if (n % (2 * k) != 0) throw InvalidArgument("disjoint-bicliques needs 2k | n");
    const int half = n / 2;
    for (int c = 0; c < n / (2 * k); ++c)
      for (Vertex x = c * k; x < (c + 1) * k; ++x)
        for (Vertex y = half + c * k; y < half + (c + 1) * k; ++y) edges.push_back({x, y});
    return Graph(n, std::move(edges), detail::prefix_sides(n, half));
  }
  throw InvalidArgument("extremal_family: family must be disjoint-cliques or disjoint-bicliques");
}

inline Graph generate(const GenSpec& spec) {
  switch (spec.family) {
    case Family::RandomRegular: return random_regular(spec);
    case Family::RandomBipartiteRegular: return random_bipartite_regular(spec);
    default: return extremal_family(spec);
  }
}

// Named small graphs used by the oracles and tests.
namespace named {

inline Graph complete(int n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.push_back({u, v});
  return Graph(n, std::move(e));
}

inline Graph complete_bipartite(int a, int b) {
  std::vector<Edge> e;
  for (Vertex x = 0; x < a; ++x)
    for (Vertex y = a; y < a + b; ++y) e.push_back({x, y});
  return Graph(a + b, std::move(e), detail::prefix_sides(a + b, a));
}

inline Graph empty(int n) { return Graph(n, {}); }

inline Graph path(int n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
  return Graph(n, std::move(e));
}

inline Graph cycle(int n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v) e.push_back({v, (v + 1) % n});
  return Graph(n, std::move(e));
}

inline Graph star(int leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v) e.push_back({0, v});
  return Graph(leaves + 1, std::move(e));
}

/// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
inline Graph petersen() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.push_back({i, (i + 1) % 5});
    e.push_back({5 + i, 5 + (i + 2) % 5});
    e.push_back({i, i + 5});
  }
  return Graph(10, std::move(e));
}

/// The 3-cube Q_3: vertices are 3-bit strings, edges differ in one bit.
inline Graph cube() {
  std::vector<Edge> e;
  for (Vertex u = 0; u < 8; ++u)
    for (int b = 0; b < 3; ++b)
      if (Vertex v = u ^ (1 << b); u < v) e.push_back({u, v});
  return Graph(8, std::move(e));
}

/// Disjoint union; the result is bipartite only if every part is.
inline Graph disjoint_union(const std::vector<Graph>& parts) {
  std::vector<Edge> e;
  std::vector<Side> sides;
  bool bip = true;
  int offset = 0;
  for (const auto& g : parts) {
    for (const auto& ed : g.edges()) e.push_back({ed.u + offset, ed.v + offset});
    bip = bip && g.bipartite();
    if (g.bipartite()) sides.insert(sides.end(), g.sides()->begin(), g.sides()->end());
    offset += g.order();
  }
  if (bip) return Graph(offset, std::move(e), std::move(sides));
  return Graph(offset, std::move(e));
}

}  // namespace named

}  // namespace pcover
