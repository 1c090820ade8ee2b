#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "pcover/cluster_graph.hpp"
#include "pcover/errors.hpp"
#include "pcover/graph.hpp"
#include "pcover/random.hpp"
#include "pcover/rational.hpp"

namespace pcover {

/// Exceptional set V_0 plus clusters V_1..V_t of a common even size m.
struct Partition {
  VertexSet exceptional;
  std::vector<VertexSet> clusters;
  int m = 0;

  int t() const noexcept { return static_cast<int>(clusters.size()); }

  /// First or second half (1 or 2) of cluster i in increasing vertex order.
  VertexSet half(int i, int which) const {
    const auto& c = clusters[i].members();
    auto mid = c.begin() + m / 2;
    return which == 1 ? VertexSet(std::vector<Vertex>(c.begin(), mid)) : VertexSet(std::vector<Vertex>(mid, c.end()));
  }
};

/// Throws InvalidArgument unless clusters and V_0 partition V and every
/// cluster has the same even size m.
inline void validate_partition(const Graph& g, const Partition& p) {
  if (p.m <= 0 || p.m % 2 != 0) throw InvalidArgument("cluster size m must be positive and even");
  std::vector<int> owner(g.order(), -1);
  auto claim = [&](const VertexSet& s, int who) {
    require_members(g, s);
    for (Vertex v : s) {
      if (owner[v] >= 0) throw InvalidArgument("vertex " + std::to_string(v) + " in two parts");
      owner[v] = who;
    }
  };
  claim(p.exceptional, 0);
  for (int i = 0; i < p.t(); ++i) {
    if (static_cast<int>(p.clusters[i].size()) != p.m) throw InvalidArgument("cluster sizes differ");
    claim(p.clusters[i], i + 1);
  }
  for (Vertex v = 0; v < g.order(); ++v)
    if (owner[v] < 0) throw InvalidArgument("vertex " + std::to_string(v) + " in no part");
}

/// |V_0| <= eps * n.
inline bool exceptional_within(const Partition& p, const Rational& eps, int n) {
  return Rational(static_cast<std::int64_t>(p.exceptional.size())) <= eps * Rational(n);
}

namespace detail {

inline int even_floor(int x) { return x - (x % 2); }

inline VertexSet sorted_chunk(const std::vector<Vertex>& perm, std::size_t from, std::size_t count) {
  return VertexSet(std::vector<Vertex>(perm.begin() + static_cast<std::ptrdiff_t>(from),
                                       perm.begin() + static_cast<std::ptrdiff_t>(from + count)));
}

}  // namespace detail

/// Random equitable partition into t clusters of size m = floor(n/t) rounded
/// down to even; the leftover vertices form V_0.
inline Partition equitable_partition(const Graph& g, int t, std::uint64_t seed) {
  const int n = g.order();
  if (t < 1 || t > n) throw InvalidArgument("equitable_partition needs 1 <= t <= n");
  const int m = detail::even_floor(n / t);
  if (m == 0) throw InvalidArgument("equitable_partition: n/t < 2 leaves clusters empty");
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(mix_seed(seed, 0x706172ULL));
  shuffle(std::span<Vertex>(perm), rng);
  Partition p;
  p.m = m;
  for (int i = 0; i < t; ++i) p.clusters.push_back(detail::sorted_chunk(perm, static_cast<std::size_t>(i) * m, m));
  p.exceptional = detail::sorted_chunk(perm, static_cast<std::size_t>(t) * m, n - static_cast<std::size_t>(t) * m);
  return p;
}

/// Equitable partition refining the bipartition: t/2 clusters inside X, then
/// t/2 clusters inside Y. t must be even.
inline Partition equitable_partition_bipartite(const Graph& g, int t, std::uint64_t seed) {
  if (!g.bipartite()) throw InvalidArgument("equitable_partition_bipartite needs a bipartition");
  if (t < 2 || t % 2 != 0) throw InvalidArgument("equitable_partition_bipartite needs even t >= 2");
  const int per_side = t / 2;
  std::vector<Vertex> xs = g.part(Side::X).members();
  std::vector<Vertex> ys = g.part(Side::Y).members();
  const int m = detail::even_floor(std::min(static_cast<int>(xs.size()), static_cast<int>(ys.size())) / per_side);
  if (m == 0) throw InvalidArgument("equitable_partition_bipartite: sides too small for t clusters");
  Rng rng(mix_seed(seed, 0x62706172ULL));
  shuffle(std::span<Vertex>(xs), rng);
  shuffle(std::span<Vertex>(ys), rng);
  Partition p;
  p.m = m;
  std::vector<Vertex> rest;
  for (const auto* side : {&xs, &ys}) {
    for (int i = 0; i < per_side; ++i) p.clusters.push_back(detail::sorted_chunk(*side, static_cast<std::size_t>(i) * m, m));
    rest.insert(rest.end(), side->begin() + static_cast<std::ptrdiff_t>(per_side) * m, side->end());
  }
  p.exceptional = VertexSet(std::move(rest));
  return p;
}

enum class RegularityMode { Exact, Heuristic };

inline const char* to_string(RegularityMode m) { return m == RegularityMode::Exact ? "exact" : "heuristic"; }

struct RegularityWitness {
  VertexSet x;
  VertexSet y;
  double deviation = 0.0;  // |d(X,Y) - d(A,B)|
};

struct RegularityVerdict {
  bool regular = true;
  std::optional<RegularityWitness> witness;
  RegularityMode mode = RegularityMode::Exact;
};

inline constexpr int kExactRegularityCap = 10;

namespace detail {

/// |e_xy/(sx sy) - e_ab/(sa sb)| >= eps, exactly.
inline bool deviates(std::int64_t e_xy, std::int64_t sx, std::int64_t sy, std::int64_t e_ab, std::int64_t sa,
                     std::int64_t sb, const Rational& eps) {
  __int128 lhs = static_cast<__int128>(e_xy) * sa * sb - static_cast<__int128>(e_ab) * sx * sy;
  if (lhs < 0) lhs = -lhs;
  return lhs * eps.den() >= static_cast<__int128>(eps.num()) * sx * sy * sa * sb;
}

/// Smallest size s with s > eps * total.
inline std::int64_t min_size_above(const Rational& eps, std::int64_t total) {
  Rational bound = eps * Rational(total);
  return bound.floor() + 1;
}

inline double deviation_of(std::int64_t e_xy, std::int64_t sx, std::int64_t sy, double d_ab) {
  return std::abs(static_cast<double>(e_xy) / static_cast<double>(sx * sy) - d_ab);
}

inline std::optional<RegularityWitness> exact_search(const Graph& g, const VertexSet& a, const VertexSet& b,
                                                     const Rational& eps) {
  const int sa = static_cast<int>(a.size());
  const int sb = static_cast<int>(b.size());
  std::vector<std::uint32_t> nb(sa, 0);
  std::int64_t e_ab = 0;
  for (int i = 0; i < sa; ++i)
    for (int j = 0; j < sb; ++j)
      if (g.adjacent(a[i], b[j])) {
        nb[i] |= 1U << j;
        ++e_ab;
      }
  const double d_ab = static_cast<double>(e_ab) / (sa * sb);
  const auto min_x = min_size_above(eps, sa);
  const auto min_y = min_size_above(eps, sb);
  std::vector<std::int64_t> sum(std::size_t{1} << sa);
  std::vector<int> cnt(sa);
  for (std::uint32_t ymask = 1; ymask < (1U << sb); ++ymask) {
    const int sy = std::popcount(ymask);
    if (sy < min_y) continue;
    for (int i = 0; i < sa; ++i) cnt[i] = std::popcount(nb[i] & ymask);
    sum[0] = 0;
    for (std::uint32_t xmask = 1; xmask < (1U << sa); ++xmask) {
      sum[xmask] = sum[xmask & (xmask - 1)] + cnt[std::countr_zero(xmask)];
      const int sx = std::popcount(xmask);
      if (sx < min_x) continue;
      if (deviates(sum[xmask], sx, sy, e_ab, sa, sb, eps)) {
        std::vector<Vertex> xs;
        std::vector<Vertex> ys;
        for (int i = 0; i < sa; ++i)
          if (xmask >> i & 1U) xs.push_back(a[i]);
        for (int j = 0; j < sb; ++j)
          if (ymask >> j & 1U) ys.push_back(b[j]);
        return RegularityWitness{VertexSet(std::move(xs)), VertexSet(std::move(ys)),
                                 deviation_of(sum[xmask], sx, sy, d_ab)};
      }
    }
  }
  return std::nullopt;
}

/// One-sided witness search. For each candidate Y (all of B, N(v) ∩ B and
/// B \ N(v) for v in A), vertices of A are ranked by degree into Y and every
/// top-k and bottom-k prefix with k > eps|A| is tested as X. Vertices whose
/// degree deviates from the mean by eps^2 |Y| or more head these rankings.
/// Roles of A and B are then swapped.
inline std::optional<RegularityWitness> heuristic_search(const Graph& g, const VertexSet& a, const VertexSet& b,
                                                         const Rational& eps) {
  struct Side {
    const VertexSet* self;
    const VertexSet* other;
    std::vector<Bitset> rows;  // over local ids of `other`
  };
  auto local_rows = [&](const VertexSet& from, const VertexSet& to) {
    std::vector<Bitset> rows(from.size(), Bitset(to.size()));
    std::vector<int> local(g.order(), -1);
    for (std::size_t j = 0; j < to.size(); ++j) local[to[j]] = static_cast<int>(j);
    for (std::size_t i = 0; i < from.size(); ++i)
      for (Vertex w : g.neighbors(from[i]))
        if (local[w] >= 0) rows[i].set(static_cast<std::size_t>(local[w]));
    return rows;
  };
  const std::int64_t sa = static_cast<std::int64_t>(a.size());
  const std::int64_t sb = static_cast<std::int64_t>(b.size());
  std::int64_t e_ab = 0;
  Side sides[2] = {{&a, &b, local_rows(a, b)}, {&b, &a, local_rows(b, a)}};
  for (const auto& r : sides[0].rows) e_ab += static_cast<std::int64_t>(r.count());
  const double d_ab = static_cast<double>(e_ab) / static_cast<double>(sa * sb);

  for (const Side& s : sides) {
    const std::int64_t n_self = static_cast<std::int64_t>(s.self->size());
    const std::int64_t n_other = static_cast<std::int64_t>(s.other->size());
    const auto min_self = min_size_above(eps, n_self);
    const auto min_other = min_size_above(eps, n_other);
    std::vector<std::int64_t> deg(n_self);
    std::vector<int> order(n_self);
    auto try_y = [&](const Bitset& y) -> std::optional<RegularityWitness> {
      const auto sy = static_cast<std::int64_t>(y.count());
      if (sy < min_other) return std::nullopt;
      for (std::int64_t i = 0; i < n_self; ++i) deg[i] = static_cast<std::int64_t>(s.rows[i].and_count(y));
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](int p, int q) { return deg[p] > deg[q]; });
      for (int direction = 0; direction < 2; ++direction) {
        std::int64_t prefix = 0;
        for (std::int64_t k = 1; k <= n_self; ++k) {
          int idx = direction == 0 ? order[k - 1] : order[n_self - k];
          prefix += deg[idx];
          if (k < min_self) continue;
          if (!deviates(prefix, k, sy, e_ab, sa, sb, eps)) continue;
          std::vector<Vertex> xs;
          for (std::int64_t q = 0; q < k; ++q) xs.push_back((*s.self)[direction == 0 ? order[q] : order[n_self - 1 - q]]);
          std::vector<Vertex> ys;
          y.for_each([&](Vertex j) { ys.push_back((*s.other)[j]); });
          RegularityWitness w{VertexSet(std::move(xs)), VertexSet(std::move(ys)), deviation_of(prefix, k, sy, d_ab)};
          if (s.self != &a) std::swap(w.x, w.y);
          return w;
        }
      }
      return std::nullopt;
    };
    Bitset all(static_cast<std::size_t>(n_other));
    for (std::int64_t j = 0; j < n_other; ++j) all.set(static_cast<std::size_t>(j));
    if (auto w = try_y(all)) return w;
    for (std::int64_t v = 0; v < n_self; ++v) {
      if (auto w = try_y(s.rows[v])) return w;
      Bitset rest(static_cast<std::size_t>(n_other));
      for (std::int64_t j = 0; j < n_other; ++j)
        if (!s.rows[v].test(static_cast<std::size_t>(j))) rest.set(static_cast<std::size_t>(j));
      if (auto w = try_y(rest)) return w;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// eps-regularity of (a, b): exhaustive over all sub-pairs when both sides
/// have at most `exact_cap` vertices, otherwise the one-sided heuristic (a
/// returned witness always violates the definition; absence is evidence).
inline RegularityVerdict is_eps_regular(const Graph& g, const VertexSet& a, const VertexSet& b, const Rational& eps,
                                        int exact_cap = kExactRegularityCap) {
  if (a.empty() || b.empty()) throw InvalidArgument("is_eps_regular: empty side");
  require_members(g, a);
  require_members(g, b);
  if (!a.disjoint_from(b)) throw InvalidArgument("is_eps_regular: sides overlap");
  if (eps <= Rational(0)) throw InvalidArgument("is_eps_regular: eps must be positive");
  RegularityVerdict v;
  const bool exact = static_cast<int>(a.size()) <= std::min(exact_cap, 20) && static_cast<int>(b.size()) <= std::min(exact_cap, 20);
  v.mode = exact ? RegularityMode::Exact : RegularityMode::Heuristic;
  v.witness = exact ? detail::exact_search(g, a, b, eps) : detail::heuristic_search(g, a, b, eps);
  v.regular = !v.witness.has_value();
  return v;
}

/// Re-checks a witness from scratch with exact densities.
inline bool witness_is_valid(const Graph& g, const VertexSet& a, const VertexSet& b, const Rational& eps,
                             const RegularityWitness& w) {
  if (w.x.empty() || w.y.empty()) return false;
  if (!w.x.minus(a).empty() || !w.y.minus(b).empty()) return false;
  if (!(Rational(static_cast<std::int64_t>(w.x.size())) > eps * Rational(static_cast<std::int64_t>(a.size()))))
    return false;
  if (!(Rational(static_cast<std::int64_t>(w.y.size())) > eps * Rational(static_cast<std::int64_t>(b.size()))))
    return false;
  Rational diff = density(g, w.x, w.y) - density(g, a, b);
  if (diff < Rational(0)) diff = -diff;
  return diff >= eps;
}

/// Cluster graph on [t]: ij is an edge iff d(V_i, V_j) >= d (inclusive, exact).
inline ClusterGraph build_cluster_graph(const Graph& g, const Partition& p, const Rational& d) {
  ClusterGraph h;
  h.t = p.t();
  h.threshold = d;
  for (int i = 0; i < p.t(); ++i)
    for (int j = i + 1; j < p.t(); ++j) {
      Rational dij = density(g, p.clusters[i], p.clusters[j]);
      if (dij >= d) h.edges.push_back({i, j, dij});
    }
  return h;
}

/// Sum over cluster pairs of d(V_i, V_j)^2 |V_i||V_j| / n^2.
inline double partition_index(const Graph& g, const Partition& p) {
  if (g.order() == 0) return 0.0;
  double q = 0.0;
  const double scale = static_cast<double>(p.m) * p.m / (static_cast<double>(g.order()) * g.order());
  for (int i = 0; i < p.t(); ++i)
    for (int j = i + 1; j < p.t(); ++j) {
      double dij = density(g, p.clusters[i], p.clusters[j]).to_double();
      q += dij * dij * scale;
    }
  return q;
}

struct PairAssessment {
  int i = 0;
  int j = 0;
  Rational density;
  RegularityVerdict verdict;
};

inline std::vector<PairAssessment> assess_pairs(const Graph& g, const Partition& p, const Rational& eps,
                                                int exact_cap = kExactRegularityCap) {
  std::vector<PairAssessment> out;
  for (int i = 0; i < p.t(); ++i)
    for (int j = i + 1; j < p.t(); ++j)
      out.push_back({i, j, density(g, p.clusters[i], p.clusters[j]),
                     is_eps_regular(g, p.clusters[i], p.clusters[j], eps, exact_cap)});
  return out;
}

struct RefinedPartition {
  Partition partition;
  std::vector<PairAssessment> pairs;
  int regular_pairs = 0;
  double index = 0.0;
  int iterations = 0;
};

/// Draws up to `iterations` + 1 equitable partitions and keeps the one with
/// the most eps-regular cluster pairs, breaking ties by the larger index.
/// Stops early once every pair verifies regular. Partitions refine the
/// bipartition when g carries one.
inline RefinedPartition refine_partition(const Graph& g, int t, const Rational& eps, int iterations,
                                         std::uint64_t seed) {
  RefinedPartition best;
  bool have = false;
  for (int it = 0; it <= std::max(iterations, 0); ++it) {
    std::uint64_t s = mix_seed(seed, static_cast<std::uint64_t>(it));
    Partition p = g.bipartite() ? equitable_partition_bipartite(g, t, s) : equitable_partition(g, t, s);
    auto pairs = assess_pairs(g, p, eps);
    int regular = 0;
    for (const auto& pa : pairs) regular += pa.verdict.regular ? 1 : 0;
    double index = partition_index(g, p);
    if (!have || regular > best.regular_pairs || (regular == best.regular_pairs && index > best.index)) {
      best = {std::move(p), std::move(pairs), regular, index, it + 1};
      have = true;
    }
    best.iterations = it + 1;
    if (best.regular_pairs == static_cast<int>(best.pairs.size())) break;
  }
  return best;
}

struct CleanedPair {
  VertexSet x;
  VertexSet y;
  VertexSet removed_a;  // A' ⊇ A
  VertexSet removed_b;  // B' ⊇ B
};

/// min cross-degree audit: every x in x has > delta |y| neighbours in y and
/// every y in y has > delta |x| neighbours in x.
inline bool super_regular_degrees(const Graph& g, const VertexSet& x, const VertexSet& y, const Rational& delta) {
  const auto sx = static_cast<std::int64_t>(x.size());
  const auto sy = static_cast<std::int64_t>(y.size());
  for (Vertex v : x)
    if (!(Rational(degree_into(g, v, y)) > delta * Rational(sy))) return false;
  for (Vertex v : y)
    if (!(Rational(degree_into(g, v, x)) > delta * Rational(sx))) return false;
  return true;
}

/// Removes from each side the vertices with fewer than (d - eps)|other|
/// neighbours across, padded with the lowest remaining ids to exactly
/// ceil(eps |a|) per side. Throws CleaningFailed if too many vertices are
/// low, or if the result misses the (d - 3 eps) degree floor.
inline CleanedPair clean_super_regular(const Graph& g, const VertexSet& a, const VertexSet& b, const Rational& eps,
                                       const Rational& d) {
  if (a.size() != b.size() || a.empty()) throw InvalidArgument("clean_super_regular needs |a| = |b| > 0");
  if (!a.disjoint_from(b)) throw InvalidArgument("clean_super_regular: sides overlap");
  if (eps <= Rational(0) || !(d > Rational(3) * eps)) throw InvalidArgument("clean_super_regular needs d > 3 eps > 0");
  const auto size = static_cast<std::int64_t>(a.size());
  const std::int64_t removal = (eps * Rational(size)).ceil();
  if (removal >= size) throw InvalidArgument("clean_super_regular: eps |a| leaves nothing");
  const Rational floor_low = d - eps;

  auto removed = [&](const VertexSet& self, const VertexSet& other, const char* name) {
    std::vector<Vertex> low;
    for (Vertex v : self)
      if (Rational(degree_into(g, v, other)) < floor_low * Rational(static_cast<std::int64_t>(other.size())))
        low.push_back(v);
    if (Rational(static_cast<std::int64_t>(low.size())) > eps * Rational(size))
      throw CleaningFailed(std::string("clean_super_regular: ") + std::to_string(low.size()) + " low-degree vertices in " +
                           name + " exceed eps|" + name + "|");
    VertexSet out(low);
    for (Vertex v : self) {
      if (static_cast<std::int64_t>(out.size()) >= removal) break;
      if (!out.contains(v)) out = out.unite(VertexSet{v});
    }
    return out;
  };
  CleanedPair c;
  c.removed_a = removed(a, b, "a");
  c.removed_b = removed(b, a, "b");
  c.x = a.minus(c.removed_a);
  c.y = b.minus(c.removed_b);
  if (!super_regular_degrees(g, c.x, c.y, d - Rational(3) * eps))
    throw CleaningFailed("clean_super_regular: cleaned pair misses the (d - 3 eps) degree floor");
  return c;
}

}  // namespace pcover
