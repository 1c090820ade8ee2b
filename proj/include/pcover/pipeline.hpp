#pragma once

#include <algorithm>
#include <bit>
#include <climits>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pcover/cover.hpp"
#include "pcover/errors.hpp"
#include "pcover/generators.hpp"
#include "pcover/graph.hpp"
#include "pcover/hamilton.hpp"
#include "pcover/matching.hpp"
#include "pcover/rational.hpp"
#include "pcover/regularity.hpp"
#include "pcover/reservoir.hpp"

namespace pcover {

/// User-facing parameters. Unset optionals take the defaults of the chain
/// d = alpha c / 9, delta = d / 2, eps1 = delta / 10,
/// eps = min(eps1, d / 6, 3d / (2c)), gamma = alpha / 4, beta = 3d / c.
struct PipelineConfig {
  Rational c{1, 2};
  Rational alpha{1, 10};
  std::optional<Rational> d;
  std::optional<Rational> eps1;
  std::optional<Rational> eps;
  std::optional<Rational> gamma;
  std::optional<int> t;
  // Tolerance of the reservoir windows and of the degree check in
  // cycle_cover. Kept apart from eps, which is far too small for either
  // window to be met at a few hundred vertices.
  Rational window_eps{1, 2};
  int refine_iterations = 20;
  int reservoir_attempts = 50;
  bool require_regular_pairs = false;
  HamiltonBudget budget{};
  std::uint64_t seed = 0;
};

struct PipelineParams {
  Rational c;
  Rational alpha;
  Rational d;
  Rational delta;
  Rational eps1;
  Rational eps;
  Rational gamma;
  Rational beta;
  Rational window_eps;
  int t = 2;
  int limit = 1;
};

/// floor(1/c) paths in general, floor(1/(2c)) for bipartite graphs.
inline int path_limit(const Rational& c, bool bipartite) {
  const Rational denom = bipartite ? c * Rational(2) : c;
  return static_cast<int>((Rational(1) / denom).floor());
}

inline PipelineParams resolve(const PipelineConfig& cfg, bool bipartite) {
  const Rational zero(0);
  const Rational one(1);
  if (!(cfg.c > zero) || cfg.c > one) throw ParameterError("c must lie in (0, 1]");
  if (!(cfg.alpha > zero) || cfg.alpha > one) throw ParameterError("alpha must lie in (0, 1]");
  PipelineParams p;
  p.c = cfg.c;
  p.alpha = cfg.alpha;
  p.d = cfg.d.value_or(cfg.alpha * cfg.c / Rational(9));
  p.delta = p.d / Rational(2);
  p.eps1 = cfg.eps1.value_or(p.delta / Rational(10));
  p.eps = cfg.eps.value_or(min(p.eps1, min(p.d / Rational(6), Rational(3) * p.d / (Rational(2) * p.c))));
  p.gamma = cfg.gamma.value_or(cfg.alpha / Rational(4));
  p.beta = Rational(3) * p.d / p.c;
  p.window_eps = cfg.window_eps;
  if (!(p.d > zero) || p.d > one) throw ParameterError("d must lie in (0, 1]");
  if (!(p.eps > zero) || p.eps > p.d / Rational(6)) throw ParameterError("eps must satisfy 0 < eps <= d/6");
  if (!(p.gamma > zero) || p.gamma > Rational(1, 4)) throw ParameterError("gamma must lie in (0, 1/4]");
  if (!(p.window_eps > zero)) throw ParameterError("window_eps must be positive");
  p.limit = std::max(1, path_limit(cfg.c, bipartite));
  p.t = cfg.t.value_or(bipartite ? 2 : std::max(2, p.limit));
  if (p.t < 1) throw ParameterError("t must be positive");
  if (bipartite && p.t % 2 != 0) throw ParameterError("t must be even for a bipartite graph");
  return p;
}

/// Two path ends a and b joined through reservoir vertex w.
struct Connection {
  Vertex a = 0;
  Vertex w = 0;
  Vertex b = 0;
};

struct RunReport {
  std::string method = "regularity-pipeline";
  bool success = false;
  int n = 0;
  int k = 0;
  Rational c;
  Rational alpha;
  int limit = 0;
  std::int64_t max_uncovered = 0;
  std::string note;

  // cycle cover stage
  bool degree_window_ok = true;
  int t = 0;
  int m = 0;
  int v0 = 0;
  bool v0_within_eps = false;
  int regular_pairs = 0;
  int pair_count = 0;
  std::string regularity_mode = "none";
  int cluster_edges = 0;
  Rational mu_f;
  int deficiency = 0;
  Rational deficiency_bound;
  bool deficiency_ok = false;
  std::optional<bool> deficiency_crosscheck;
  int pairings = 0;
  int cleaning_failures = 0;
  int cycles_found = 0;
  int cycles_partial = 0;
  int embed_failures = 0;
  int cycle_uncovered = 0;
  std::int64_t accounting_bound = 0;
  bool accounting_ok = false;

  // reservoir
  int reservoir_size = 0;
  std::string reservoir_status = "none";
  int reservoir_attempts = 0;
  Rational reservoir_eps;
  int reservoir_spent = 0;

  // connection and final cover
  int initial_paths = 0;
  int connection_steps = 0;
  int trimmed = 0;
  int dropped_paths = 0;
  int pigeonhole_checks = 0;
  int pigeonhole_holds = 0;
  std::vector<Connection> connections;
  bool structural_ok = false;
  int final_paths = 0;
  int final_uncovered = 0;

  std::string to_text() const {
    std::ostringstream o;
    auto b = [](bool x) { return x ? "true" : "false"; };
    o << "method=" << method << '\n'
      << "success=" << b(success) << '\n'
      << "n=" << n << '\n'
      << "k=" << k << '\n'
      << "c=" << c << '\n'
      << "alpha=" << alpha << '\n'
      << "limit=" << limit << '\n'
      << "max_uncovered=" << max_uncovered << '\n'
      << "degree_window_ok=" << b(degree_window_ok) << '\n'
      << "t=" << t << '\n'
      << "m=" << m << '\n'
      << "v0=" << v0 << '\n'
      << "v0_within_eps=" << b(v0_within_eps) << '\n'
      << "regular_pairs=" << regular_pairs << '\n'
      << "pair_count=" << pair_count << '\n'
      << "regular_fraction=" << (pair_count ? Rational(regular_pairs, pair_count) : Rational(0)) << '\n'
      << "regularity_mode=" << regularity_mode << '\n'
      << "cluster_edges=" << cluster_edges << '\n'
      << "mu_f=" << mu_f << '\n'
      << "deficiency=" << deficiency << '\n'
      << "deficiency_bound=" << deficiency_bound << '\n'
      << "deficiency_ok=" << b(deficiency_ok) << '\n'
      << "deficiency_crosscheck=" << (deficiency_crosscheck ? b(*deficiency_crosscheck) : "skipped") << '\n'
      << "pairings=" << pairings << '\n'
      << "cleaning_failures=" << cleaning_failures << '\n'
      << "cycles_found=" << cycles_found << '\n'
      << "cycles_partial=" << cycles_partial << '\n'
      << "embed_failures=" << embed_failures << '\n'
      << "cycle_uncovered=" << cycle_uncovered << '\n'
      << "accounting_bound=" << accounting_bound << '\n'
      << "accounting_ok=" << b(accounting_ok) << '\n'
      << "reservoir_size=" << reservoir_size << '\n'
      << "reservoir_status=" << reservoir_status << '\n'
      << "reservoir_attempts=" << reservoir_attempts << '\n'
      << "reservoir_eps=" << reservoir_eps << '\n'
      << "reservoir_spent=" << reservoir_spent << '\n'
      << "initial_paths=" << initial_paths << '\n'
      << "connection_steps=" << connection_steps << '\n'
      << "trimmed=" << trimmed << '\n'
      << "dropped_paths=" << dropped_paths << '\n'
      << "pigeonhole_checks=" << pigeonhole_checks << '\n'
      << "pigeonhole_holds=" << pigeonhole_holds << '\n'
      << "structural_ok=" << b(structural_ok) << '\n'
      << "final_paths=" << final_paths << '\n'
      << "final_uncovered=" << final_uncovered << '\n';
    if (!note.empty()) o << "note=" << note << '\n';
    return o.str();
  }
};

struct CycleCoverRun {
  CycleSet cover;
  RunReport report;
};

struct CoverRun {
  PathCover cover;
  RunReport report;
  VertexSet reservoir;  // R as sampled, before any vertex was spent
};

namespace detail {

inline std::int64_t uncovered_limit(const Rational& alpha, int n) { return (alpha * Rational(n)).floor(); }

/// Degree window, partition, cluster graph, fractional matching, cleaning and
/// embedding. Fills the cycle-stage fields of `rep`.
inline CycleSet cycle_cover_run(const Graph& g, const PipelineParams& p, const PipelineConfig& cfg, RunReport& rep) {
  const int n = g.order();
  rep.t = p.t;
  const Rational mean = p.c * Rational(n);
  const Rational lo = (Rational(1) - p.window_eps) * mean;
  const Rational hi = (Rational(1) + p.window_eps) * mean;
  for (Vertex v = 0; v < n; ++v) {
    const Rational deg(g.degree(v));
    if (deg < lo || deg > hi) {
      rep.degree_window_ok = false;
      rep.note = "vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)) + " outside [" +
                 lo.to_string() + ", " + hi.to_string() + "]";
      rep.cycle_uncovered = n;
      return CycleSet{{}, VertexSet::range(0, n)};
    }
  }

  const auto refined = refine_partition(g, p.t, p.eps, cfg.refine_iterations, mix_seed(cfg.seed, 2));
  const Partition& part = refined.partition;
  rep.m = part.m;
  rep.v0 = static_cast<int>(part.exceptional.size());
  rep.v0_within_eps = exceptional_within(part, p.eps, n);
  rep.regular_pairs = refined.regular_pairs;
  rep.pair_count = static_cast<int>(refined.pairs.size());
  bool exact = false;
  bool heuristic = false;
  for (const auto& pa : refined.pairs) (pa.verdict.mode == RegularityMode::Exact ? exact : heuristic) = true;
  rep.regularity_mode = exact && heuristic ? "mixed" : exact ? "exact" : heuristic ? "heuristic" : "none";

  ClusterGraph h = build_cluster_graph(g, part, p.d);
  if (cfg.require_regular_pairs) {
    std::erase_if(h.edges, [&](const ClusterEdge& e) {
      for (const auto& pa : refined.pairs)
        if (pa.i == e.i && pa.j == e.j) return !pa.verdict.regular;
      return true;
    });
  }
  rep.cluster_edges = static_cast<int>(h.edges.size());
  const Graph hg = h.as_graph();
  const auto f = fractional_matching(hg);
  rep.mu_f = f.value();
  rep.deficiency = p.t - f.twice_value();
  rep.deficiency_bound = p.beta * Rational(p.t);
  rep.deficiency_ok = Rational(rep.deficiency) <= rep.deficiency_bound;
  if (p.t <= kDeficiencyCap) rep.deficiency_crosscheck = max_deficiency(hg).value == rep.deficiency;

  const auto pairings = cluster_matching_pairs(h, f);
  rep.pairings = static_cast<int>(pairings.size());
  std::vector<Cycle> cycles;
  for (std::size_t idx = 0; idx < pairings.size(); ++idx) {
    const auto& pr = pairings[idx];
    VertexSet x;
    VertexSet y;
    try {
      auto cleaned = clean_super_regular(g, part.half(pr.i, pr.half_i), part.half(pr.j, pr.half_j), p.eps, p.d);
      x = std::move(cleaned.x);
      y = std::move(cleaned.y);
    } catch (const CleaningFailed&) {
      ++rep.cleaning_failures;
      continue;
    } catch (const InvalidArgument&) {
      ++rep.cleaning_failures;
      continue;
    }
    if (x.size() < 2) {
      ++rep.embed_failures;
      continue;
    }
    HamiltonBudget hb = cfg.budget;
    hb.seed = mix_seed(cfg.seed, 1000 + idx);
    auto search = spanning_cycle_bipartite(g, x, y, hb);
    if (search.found()) {
      ++rep.cycles_found;
      cycles.push_back(std::move(*search.cycle));
    } else if (search.longest.size() >= 4) {
      ++rep.cycles_partial;
      cycles.push_back(std::move(search.longest));
    } else {
      ++rep.embed_failures;
    }
  }

  CycleSet out{std::move(cycles), {}};
  out.uncovered = complement_of(g, out.cycles);
  rep.cycle_uncovered = static_cast<int>(out.uncovered.size());
  const std::int64_t per_half = (p.eps * Rational(part.m / 2)).ceil();
  const Rational bound = Rational(static_cast<std::int64_t>(p.t) * 2 * per_half + rep.v0) +
                         Rational(2) * p.beta * Rational(static_cast<std::int64_t>(p.t) * part.m);
  rep.accounting_bound = bound.floor();
  rep.accounting_ok = rep.cycle_uncovered <= rep.accounting_bound;
  return out;
}

/// Lowest set bit common to three bitsets, or -1.
inline int first_common(const Bitset& a, const Bitset& b, const Bitset& c) {
  auto wa = a.words();
  auto wb = b.words();
  auto wc = c.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    const std::uint64_t w = wa[i] & wb[i] & wc[i];
    if (w) return static_cast<int>(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
  }
  return -1;
}

inline void check_paths_disjoint(const Graph& g, const std::vector<Path>& paths, const VertexSet& r) {
  std::vector<bool> used(g.order(), false);
  for (Vertex v : r) used[v] = true;
  for (const auto& p : paths) {
    if (p.empty()) throw InvalidArgument("connect_paths: empty path");
    for (Vertex v : p.vertices) {
      require_vertex(g, v);
      if (used[v]) throw InvalidArgument("connect_paths: vertex " + std::to_string(v) + " used twice");
      used[v] = true;
    }
  }
}

inline Bitset bits_of(const Graph& g, const VertexSet& s) { return s.to_bitset(static_cast<std::size_t>(g.order())); }

}  // namespace detail

struct ConnectResult {
  std::vector<Path> paths;
  VertexSet r;  // unspent reservoir
  std::vector<Connection> connections;
  std::vector<Vertex> trimmed;
  int pigeonhole_checks = 0;
  int pigeonhole_holds = 0;
};

/// The end of a path used for connecting: the smaller of its two ends.
inline Vertex connecting_end(const Path& p) { return std::min(p.front(), p.back()); }

/// While more than `limit` paths remain, joins the first pair (i, j) whose
/// connecting ends share a neighbour w in the reservoir, using the smallest
/// such w; the merged path takes index i.
inline ConnectResult connect_paths(const Graph& g, std::vector<Path> paths, const VertexSet& r, int limit) {
  detail::check_paths_disjoint(g, paths, r);
  ConnectResult out;
  Bitset rb = detail::bits_of(g, r);
  const auto r0 = static_cast<std::int64_t>(r.size());
  int spent = 0;
  while (static_cast<int>(paths.size()) > limit) {
    int min_deg = INT_MAX;
    for (const auto& p : paths) min_deg = std::min(min_deg, degree_into(g, connecting_end(p), r));
    ++out.pigeonhole_checks;
    if (static_cast<std::int64_t>(limit + 1) * (min_deg - spent) > r0) ++out.pigeonhole_holds;

    int bi = -1;
    int bj = -1;
    int bw = -1;
    for (std::size_t i = 0; i < paths.size() && bi < 0; ++i)
      for (std::size_t j = i + 1; j < paths.size() && bi < 0; ++j) {
        int w = detail::first_common(g.row(connecting_end(paths[i])), g.row(connecting_end(paths[j])), rb);
        if (w >= 0) {
          bi = static_cast<int>(i);
          bj = static_cast<int>(j);
          bw = w;
        }
      }
    if (bi < 0) break;
    Path a = paths[bi];
    Path b = paths[bj];
    const Vertex ea = connecting_end(a);
    const Vertex eb = connecting_end(b);
    if (a.back() != ea) std::reverse(a.vertices.begin(), a.vertices.end());
    if (b.front() != eb) std::reverse(b.vertices.begin(), b.vertices.end());
    a.vertices.push_back(bw);
    a.vertices.insert(a.vertices.end(), b.vertices.begin(), b.vertices.end());
    paths[bi] = std::move(a);
    paths.erase(paths.begin() + bj);
    rb.reset(static_cast<std::size_t>(bw));
    ++spent;
    out.connections.push_back({ea, bw, eb});
  }
  out.paths = std::move(paths);
  out.r = VertexSet::from_bitset(rb);
  return out;
}

/// Bipartite variant: every path is first trimmed to have one end in X and
/// one in Y (a lone Y vertex is dropped), then X ends are joined through
/// reservoir vertices in Y only. A merged path whose ends land on the same
/// side loses its last vertex.
inline ConnectResult connect_paths_bipartite(const Graph& g, std::vector<Path> paths, const VertexSet& r, int limit) {
  if (!g.bipartite()) throw InvalidArgument("connect_paths_bipartite needs a bipartite graph");
  detail::check_paths_disjoint(g, paths, r);
  ConnectResult out;
  auto is_x = [&](Vertex v) { return g.side(v) == Side::X; };
  // Orients p so that its front is in X; trims when both ends share a side.
  auto normalize = [&](Path& p) {
    if (p.size() == 1) {
      if (!is_x(p.front())) {
        out.trimmed.push_back(p.front());
        p.vertices.clear();
      }
      return;
    }
    if (is_x(p.front()) == is_x(p.back())) {
      out.trimmed.push_back(p.back());
      p.vertices.pop_back();
    }
    if (!is_x(p.front())) std::reverse(p.vertices.begin(), p.vertices.end());
  };
  std::vector<Path> kept;
  for (auto& p : paths) {
    normalize(p);
    if (!p.empty()) kept.push_back(std::move(p));
  }
  paths = std::move(kept);

  const VertexSet ry = r.intersect(g.part(Side::Y));
  Bitset rb = detail::bits_of(g, ry);
  const auto r0 = static_cast<std::int64_t>(ry.size());
  int spent = 0;
  while (static_cast<int>(paths.size()) > limit) {
    int min_deg = INT_MAX;
    for (const auto& p : paths) min_deg = std::min(min_deg, degree_into(g, p.front(), ry));
    ++out.pigeonhole_checks;
    if (static_cast<std::int64_t>(limit + 1) * (min_deg - spent) > r0) ++out.pigeonhole_holds;

    int bi = -1;
    int bj = -1;
    int bw = -1;
    for (std::size_t i = 0; i < paths.size() && bi < 0; ++i)
      for (std::size_t j = i + 1; j < paths.size() && bi < 0; ++j) {
        int w = detail::first_common(g.row(paths[i].front()), g.row(paths[j].front()), rb);
        if (w >= 0) {
          bi = static_cast<int>(i);
          bj = static_cast<int>(j);
          bw = w;
        }
      }
    if (bi < 0) break;
    Path merged = paths[bi];
    const Vertex ea = merged.front();
    const Vertex eb = paths[bj].front();
    std::reverse(merged.vertices.begin(), merged.vertices.end());
    merged.vertices.push_back(bw);
    merged.vertices.insert(merged.vertices.end(), paths[bj].vertices.begin(), paths[bj].vertices.end());
    normalize(merged);
    paths[bi] = std::move(merged);
    paths.erase(paths.begin() + bj);
    rb.reset(static_cast<std::size_t>(bw));
    ++spent;
    out.connections.push_back({ea, bw, eb});
  }
  out.paths = std::move(paths);
  out.r = r.minus(ry).unite(VertexSet::from_bitset(rb));
  return out;
}

/// Cycles covering all but a few vertices of a graph whose degrees lie in
/// (1 +- window_eps) c n. Failures are reported, not thrown.
inline CycleCoverRun cycle_cover(const Graph& g, const PipelineConfig& cfg) {
  const PipelineParams p = resolve(cfg, g.bipartite());
  CycleCoverRun run;
  RunReport& rep = run.report;
  rep.n = g.order();
  rep.c = p.c;
  rep.alpha = p.alpha;
  rep.limit = p.t;
  rep.max_uncovered = detail::uncovered_limit(p.alpha, g.order());
  try {
    run.cover = detail::cycle_cover_run(g, p, cfg, rep);
  } catch (const InvalidArgument& e) {
    rep.note = e.what();
    run.cover = CycleSet{{}, VertexSet::range(0, g.order())};
    rep.cycle_uncovered = g.order();
  }
  const auto audit = verify_cover(g, run.cover, {p.t, rep.max_uncovered});
  rep.structural_ok = audit.structural_ok();
  rep.final_paths = static_cast<int>(run.cover.cycles.size());
  rep.final_uncovered = static_cast<int>(run.cover.uncovered.size());
  rep.success = rep.degree_window_ok && audit.ok();
  return run;
}

namespace detail {

/// Repeatedly takes a long path in the largest remaining component until at
/// most `leave` vertices are left. Paths come back longest first.
inline std::vector<Path> greedy_paths(const Graph& g, std::int64_t leave, int max_paths, const HamiltonBudget& budget) {
  std::vector<Path> paths;
  VertexSet remaining = VertexSet::range(0, g.order());
  while (static_cast<std::int64_t>(remaining.size()) > leave && static_cast<int>(paths.size()) < max_paths) {
    const auto sub = induced(g, remaining);
    VertexSet best;
    for (const auto& comp : connected_components(sub.graph))
      if (comp.size() > best.size()) best = comp;
    std::vector<Vertex> host;
    for (Vertex v : best) host.push_back(sub.to_host[v]);
    HamiltonBudget hb = budget;
    hb.seed = mix_seed(budget.seed, paths.size());
    Path p = long_path(g, VertexSet(std::move(host)), hb);
    if (p.empty()) break;
    remaining = remaining.minus(VertexSet(p.vertices));
    paths.push_back(std::move(p));
  }
  std::stable_sort(paths.begin(), paths.end(), [](const Path& a, const Path& b) { return a.size() > b.size(); });
  return paths;
}

inline std::vector<Path> to_host_paths(std::vector<Path> paths, const std::vector<Vertex>& to_host) {
  for (auto& p : paths)
    for (Vertex& v : p.vertices) v = to_host[v];
  return paths;
}

/// Connection, surplus removal and the final audit.
inline CoverRun finish(const Graph& g, std::vector<Path> paths, const VertexSet& r, bool bipartite, int limit,
                       RunReport rep) {
  rep.initial_paths = static_cast<int>(paths.size());
  ConnectResult cr = bipartite ? connect_paths_bipartite(g, std::move(paths), r, limit)
                               : connect_paths(g, std::move(paths), r, limit);
  rep.connections = cr.connections;
  rep.connection_steps = static_cast<int>(cr.connections.size());
  rep.reservoir_spent = rep.connection_steps;
  rep.trimmed = static_cast<int>(cr.trimmed.size());
  rep.pigeonhole_checks = cr.pigeonhole_checks;
  rep.pigeonhole_holds = cr.pigeonhole_holds;
  paths = std::move(cr.paths);
  rep.dropped_paths = 0;
  while (static_cast<int>(paths.size()) > limit) {
    auto shortest = std::min_element(paths.rbegin(), paths.rend(),
                                     [](const Path& a, const Path& b) { return a.size() < b.size(); });
    paths.erase(std::next(shortest).base());
    ++rep.dropped_paths;
  }
  CoverRun run;
  run.reservoir = r;
  run.cover.paths = std::move(paths);
  run.cover.uncovered = complement_of(g, run.cover.paths);
  const auto audit = verify_cover(g, run.cover, {limit, rep.max_uncovered});
  rep.structural_ok = audit.structural_ok();
  rep.final_paths = static_cast<int>(run.cover.paths.size());
  rep.final_uncovered = static_cast<int>(run.cover.uncovered.size());
  rep.success = audit.ok() && (rep.method != "regularity-pipeline" || rep.deficiency_ok);
  run.report = std::move(rep);
  return run;
}

/// Orders runs by success, then by paths over the limit, then by uncovered count.
inline bool better_run(const CoverRun& a, const CoverRun& b) {
  auto key = [](const CoverRun& r) {
    return std::make_tuple(r.report.success ? 0 : 1, std::max(0, r.report.final_paths - r.report.limit),
                           r.report.final_uncovered);
  };
  return key(a) < key(b);
}

inline CoverRun path_cover_impl(const Graph& g, const PipelineConfig& cfg, bool bipartite) {
  const int n = g.order();
  if (n == 0) throw InvalidArgument("path_cover needs a non-empty graph");
  const auto k = g.regular_degree();
  if (!k) throw InvalidArgument("path_cover needs a regular graph");
  const PipelineParams p = resolve(cfg, bipartite);
  if (*k != degree_for(p.c, n))
    throw InvalidArgument("graph is " + std::to_string(*k) + "-regular but ceil(c n) = " +
                          std::to_string(degree_for(p.c, n)) + " for c = " + p.c.to_string());

  RunReport base;
  base.n = n;
  base.k = *k;
  base.c = p.c;
  base.alpha = p.alpha;
  base.limit = p.limit;
  base.max_uncovered = uncovered_limit(p.alpha, n);

  const std::uint64_t rseed = mix_seed(cfg.seed, 1);
  VertexSet r;
  try {
    auto res = reservoir(g, {p.c, p.gamma, p.window_eps, rseed, cfg.reservoir_attempts});
    r = std::move(res.r);
    base.reservoir_status = "ok";
    base.reservoir_attempts = res.attempts;
    base.reservoir_eps = p.window_eps;
  } catch (const std::runtime_error&) {
    try {
      auto res = reservoir(g, {p.c, p.gamma, Rational(1), rseed, cfg.reservoir_attempts});
      r = std::move(res.r);
      base.reservoir_status = "relaxed";
      base.reservoir_attempts = cfg.reservoir_attempts + res.attempts;
      base.reservoir_eps = Rational(1);
    } catch (const std::runtime_error&) {
      r = plain_sample(g, p.gamma, rseed);
      base.reservoir_status = "unchecked";
      base.reservoir_attempts = 2 * cfg.reservoir_attempts;
      base.reservoir_eps = Rational(0);
    }
  }
  base.reservoir_size = static_cast<int>(r.size());
  const auto rest = induced(g, VertexSet::range(0, n).minus(r));

  std::optional<CoverRun> pipeline_run;
  RunReport a = base;
  a.method = "regularity-pipeline";
  try {
    CycleSet cs = cycle_cover_run(rest.graph, p, cfg, a);
    std::vector<Path> paths;
    for (const auto& c : cs.cycles) paths.push_back(cycle_to_path(c));
    pipeline_run = finish(g, to_host_paths(std::move(paths), rest.to_host), r, bipartite, p.limit, a);
    if (pipeline_run->report.success) return *pipeline_run;
  } catch (const InvalidArgument& e) {
    a.note = e.what();
  } catch (const std::runtime_error& e) {
    a.note = e.what();
  }

  RunReport b = pipeline_run ? pipeline_run->report : a;
  b.method = "greedy-fallback";
  if (b.note.empty()) b.note = "regularity route missed the limits";
  const std::int64_t leave = std::max<std::int64_t>(0, (b.max_uncovered - static_cast<std::int64_t>(r.size())) / 2);
  HamiltonBudget hb = cfg.budget;
  hb.seed = mix_seed(cfg.seed, 3);
  auto greedy = greedy_paths(rest.graph, leave, 4 * p.limit + 16, hb);
  CoverRun fallback = finish(g, to_host_paths(std::move(greedy), rest.to_host), r, bipartite, p.limit, b);
  if (pipeline_run && better_run(*pipeline_run, fallback)) return *pipeline_run;
  return fallback;
}

}  // namespace detail

/// At most floor(1/c) vertex-disjoint paths covering all but alpha n vertices
/// of a ceil(cn)-regular graph, by the regularity route with a labelled greedy
/// fallback.
inline CoverRun path_cover(const Graph& g, const PipelineConfig& cfg) { return detail::path_cover_impl(g, cfg, false); }

/// At most floor(1/(2c)) paths for a bipartite ceil(cn)-regular graph.
inline CoverRun path_cover_bipartite(const Graph& g, const PipelineConfig& cfg) {
  if (!g.bipartite()) throw InvalidArgument("path_cover_bipartite needs a graph with a bipartition");
  return detail::path_cover_impl(g, cfg, true);
}

}  // namespace pcover
