// Command-line front end: generate, cover, verify, bench, oracle.
// Exit codes: 0 success, 1 a verified contract failure, 2 usage or parameter error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "pcover/bench.hpp"
#include "pcover/cover.hpp"
#include "pcover/generators.hpp"
#include "pcover/graph.hpp"
#include "pcover/oracle.hpp"
#include "pcover/pipeline.hpp"

namespace {

using namespace pcover;

constexpr int kOk = 0;
constexpr int kContractFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open graph file '" + path + "'");
  return read_graph(in);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

std::optional<Rational> maybe_rational(const std::optional<std::string>& s) {
  if (!s) return std::nullopt;
  return Rational::parse(*s);
}

/// Graph with its bipartition attached, taking it from the file or by 2-colouring.
Graph with_bipartition(const Graph& g) {
  if (g.bipartite()) return g;
  auto sides = two_coloring(g);
  if (!sides) throw InvalidArgument("graph is not bipartite");
  return g.with_sides(std::move(*sides));
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  std::string family = "random-regular";
  int n = 0;
  std::optional<int> k;
  std::optional<std::string> c;
  std::uint64_t seed = 0;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  if (a.k.has_value() == a.c.has_value()) throw UsageError("give exactly one of --k and --c");
  const int k = a.k ? *a.k : degree_for(Rational::parse(*a.c), a.n);
  emit(write_graph(generate({a.n, k, parse_family(a.family), a.seed})), a.out);
  return kOk;
}

// ---- cover ----------------------------------------------------------------

struct CoverArgs {
  std::string graph;
  std::optional<std::string> c;
  std::string alpha = "0.1";
  bool bipartite = false;
  std::uint64_t seed = 0;
  std::optional<int> t;
  std::optional<std::string> d;
  std::optional<std::string> eps;
  std::optional<std::string> eps1;
  std::optional<std::string> gamma;
  std::string window_eps = "1/2";
  int iterations = 20;
  bool require_regular = false;
  std::string out;
  std::string report;
};

int run_cover(const CoverArgs& a) {
  Graph g = load_graph(a.graph);
  if (a.bipartite) g = with_bipartition(g);
  PipelineConfig cfg;
  if (a.c) {
    cfg.c = Rational::parse(*a.c);
  } else {
    auto k = g.regular_degree();
    if (!k || g.order() == 0) throw InvalidArgument("graph is not regular; pass --c explicitly");
    cfg.c = Rational(*k, g.order());
  }
  cfg.alpha = Rational::parse(a.alpha);
  cfg.d = maybe_rational(a.d);
  cfg.eps = maybe_rational(a.eps);
  cfg.eps1 = maybe_rational(a.eps1);
  cfg.gamma = maybe_rational(a.gamma);
  cfg.t = a.t;
  cfg.window_eps = Rational::parse(a.window_eps);
  cfg.refine_iterations = a.iterations;
  cfg.require_regular_pairs = a.require_regular;
  cfg.seed = a.seed;
  CoverRun run = a.bipartite ? path_cover_bipartite(g, cfg) : path_cover(g, cfg);
  std::string cover_text = "# " + std::to_string(run.cover.paths.size()) + " paths, " +
                           std::to_string(run.cover.uncovered.size()) + " uncovered, method " + run.report.method +
                           "\n" + write_cover(run.cover);
  if (a.out.empty()) {
    std::cout << cover_text;
    if (a.report.empty()) std::cerr << run.report.to_text();
  } else {
    emit(cover_text, a.out);
    if (a.report.empty()) std::cout << run.report.to_text();
  }
  if (!a.report.empty()) emit(run.report.to_text(), a.report);
  return run.report.success ? kOk : kContractFailure;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string graph;
  std::string cover;
  std::optional<std::int64_t> max_count;
  std::optional<std::int64_t> max_uncovered;
  std::optional<std::string> c;
  std::optional<std::string> alpha;
  bool bipartite = false;
};

int run_verify(const VerifyArgs& a) {
  const Graph g = load_graph(a.graph);
  std::ifstream in(a.cover);
  if (!in) throw UsageError("cannot open cover file '" + a.cover + "'");
  const PathCover cover = read_cover(in, g);
  CoverLimits limits;
  if (a.max_count) {
    limits.max_count = *a.max_count;
  } else if (a.c) {
    limits.max_count = std::max(1, path_limit(Rational::parse(*a.c), a.bipartite));
  }
  if (a.max_uncovered) {
    limits.max_uncovered = *a.max_uncovered;
  } else if (a.alpha) {
    limits.max_uncovered = (Rational::parse(*a.alpha) * Rational(g.order())).floor();
  }
  const auto audit = verify_cover(g, cover, limits);
  std::cout << audit.to_text();
  return audit.ok() ? kOk : kContractFailure;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::string family = "random-regular";
  std::vector<int> ns{200};
  std::vector<std::string> cs{"0.3"};
  std::string seeds = "0..0";
  std::string alpha = "0.1";
  int threads = 0;
  bool timing = false;
  std::string out;
};

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      auto v = std::stoull(s);
      return {v, v};
    }
    auto lo = std::stoull(s.substr(0, dots));
    auto hi = std::stoull(s.substr(dots + 2));
    if (hi < lo) throw UsageError("empty seed range '" + s + "'");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("seed range must look like A..B, got '" + s + "'");
  }
}

int run_bench_cmd(const BenchArgs& a) {
  BenchSpec spec;
  spec.family = parse_family(a.family);
  if (spec.family != Family::RandomRegular && spec.family != Family::RandomBipartiteRegular)
    throw UsageError("bench supports random-regular and random-bipartite-regular");
  spec.ns = a.ns;
  spec.cs.clear();
  for (const auto& c : a.cs) spec.cs.push_back(Rational::parse(c));
  std::tie(spec.seed_first, spec.seed_last) = parse_seed_range(a.seeds);
  spec.alpha = Rational::parse(a.alpha);
  spec.timing = a.timing;
  spec.threads = a.threads > 0 ? a.threads : static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  emit(bench_csv(run_bench(spec)), a.out);
  return kOk;
}

// ---- oracle ---------------------------------------------------------------

struct ConjectureArgs {
  int k = 3;
  std::vector<int> ns{8};
  int samples = 100;
  std::uint64_t seed = 0;
};

int run_conjecture(const ConjectureArgs& a) {
  SampleSpec spec;
  spec.k = a.k;
  spec.orders = a.ns;
  spec.samples = a.samples;
  spec.seed = a.seed;
  const auto r = conjecture_spot_check(spec);
  for (const auto& s : r.instances) {
    if (s.conjecture_ok && s.ceiling_ok && s.independence_ok) continue;
    std::cout << "VIOLATION " << s.name << " n=" << s.n << " k=" << s.k << " cover=" << s.cover_number
              << " independence=" << s.independence << '\n';
  }
  std::cout << "instances=" << r.instances.size() << "\nviolations=" << r.violations
            << "\nindependence_violations=" << r.independence_violations << '\n';
  return r.violations == 0 && r.independence_violations == 0 ? kOk : kContractFailure;
}

struct BergeTutteArgs {
  int n_max = 7;
  bool exhaustive = false;
  int random = 0;
  int random_min = 8;
  int random_max = 12;
  std::uint64_t seed = 0;
};

int run_berge_tutte(const BergeTutteArgs& a) {
  if (!a.exhaustive && a.random == 0) throw UsageError("pass --exhaustive and/or --random COUNT");
  long long mismatches = 0;
  auto show = [&](const char* label, const BergeTutteReport& r) {
    std::cout << label << "_graphs=" << r.graphs << '\n'
              << label << "_value_mismatches=" << r.value_mismatches << '\n'
              << label << "_audit_failures=" << r.audit_failures << '\n';
    for (const auto& p : r.problems) std::cout << "PROBLEM " << p << '\n';
    mismatches += r.value_mismatches + r.audit_failures;
  };
  if (a.exhaustive) show("exhaustive", berge_tutte_exhaustive(a.n_max));
  if (a.random > 0) show("random", berge_tutte_random(a.random, a.random_min, a.random_max, a.seed));
  return mismatches == 0 ? kOk : kContractFailure;
}

struct ChernoffArgs {
  int n_max = 25;
  bool table = false;
};

int run_chernoff(const ChernoffArgs& a) {
  const auto t = chernoff_domination(a.n_max);
  if (a.table) {
    std::cout << "nprime,zeta,x,upper_tail,upper_bound,lower_tail,lower_bound,ok\n";
    for (const auto& r : t.rows)
      std::cout << r.nprime << ',' << r.zeta << ',' << r.x << ',' << format_g6(static_cast<double>(r.upper_tail)) << ','
                << format_g6(static_cast<double>(r.upper_bound)) << ',' << format_g6(static_cast<double>(r.lower_tail))
                << ',' << format_g6(static_cast<double>(r.lower_bound)) << ',' << (r.ok() ? "true" : "false") << '\n';
  }
  std::cout << "checks=" << t.rows.size() << "\nviolations=" << t.violations << '\n';
  return t.violations == 0 ? kOk : kContractFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Few-path covers of dense regular graphs, with exact oracles"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; flags override it");
  app.get_config_formatter_base()->arrayDelimiter(',');

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "write a graph in edge-list format");
  g->add_option("--family", gen.family, "random-regular | random-bipartite-regular | disjoint-cliques | disjoint-bicliques");
  g->add_option("--n", gen.n, "number of vertices")->required();
  g->add_option("--k", gen.k, "degree");
  g->add_option("--c", gen.c, "degree ratio; k = ceil(c n)");
  g->add_option("--seed", gen.seed);
  g->add_option("--out", gen.out, "output file (default stdout)");

  CoverArgs cov;
  auto* c = app.add_subcommand("cover", "cover a regular graph by few paths");
  c->add_option("graph", cov.graph, "graph file")->required();
  c->add_option("--c", cov.c, "degree ratio (default k/n)");
  c->add_option("--alpha", cov.alpha, "allowed uncovered fraction");
  c->add_flag("--bipartite", cov.bipartite, "use the bipartite path limit floor(1/(2c))");
  c->add_option("--seed", cov.seed);
  c->add_option("--t", cov.t, "number of clusters");
  c->add_option("--d", cov.d, "density threshold");
  c->add_option("--eps", cov.eps, "regularity parameter");
  c->add_option("--eps1", cov.eps1, "stand-in for the embedding constant");
  c->add_option("--gamma", cov.gamma, "reservoir fraction");
  c->add_option("--window-eps", cov.window_eps, "tolerance of the reservoir and degree windows");
  c->add_option("--iterations", cov.iterations, "partition resampling rounds");
  c->add_flag("--require-regular", cov.require_regular, "only eps-regular pairs enter the cluster graph");
  c->add_option("--out", cov.out, "cover file (default stdout)");
  c->add_option("--report", cov.report, "report file");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "audit a cover file against a graph");
  v->add_option("graph", ver.graph, "graph file")->required();
  v->add_option("cover", ver.cover, "cover file")->required();
  v->add_option("--max-count", ver.max_count);
  v->add_option("--max-uncovered", ver.max_uncovered);
  v->add_option("--c", ver.c, "derive --max-count as floor(1/c)");
  v->add_option("--alpha", ver.alpha, "derive --max-uncovered as floor(alpha n)");
  v->add_flag("--bipartite", ver.bipartite, "derive --max-count as floor(1/(2c))");

  BenchArgs ben;
  auto* b = app.add_subcommand("bench", "sweep random instances and print CSV");
  b->add_option("--family", ben.family);
  b->add_option("--n", ben.ns, "orders, comma separated")->delimiter(',');
  b->add_option("--c", ben.cs, "degree ratios, comma separated")->delimiter(',');
  b->add_option("--seeds", ben.seeds, "seed range A..B");
  b->add_option("--alpha", ben.alpha);
  b->add_option("--threads", ben.threads, "worker threads (default: all cores)")->envname("THREADS");
  b->add_flag("--timing", ben.timing, "fill runtime_ms (otherwise 0)");
  b->add_option("--out", ben.out, "CSV file (default stdout)");

  auto* o = app.add_subcommand("oracle", "exact checks");
  o->require_subcommand(1);
  ConjectureArgs conj;
  auto* oc = o->add_subcommand("conjecture", "exact path cover numbers of sampled k-regular graphs");
  oc->add_option("--k", conj.k);
  oc->add_option("--n", conj.ns, "orders, comma separated")->delimiter(',');
  oc->add_option("--samples", conj.samples, "samples per order");
  oc->add_option("--seed", conj.seed);
  BergeTutteArgs bt;
  auto* ob = o->add_subcommand("berge-tutte", "fractional matching number against the deficiency formula");
  ob->add_option("--n-max", bt.n_max, "largest order for the exhaustive sweep");
  ob->add_flag("--exhaustive", bt.exhaustive);
  ob->add_option("--random", bt.random, "number of random graphs");
  ob->add_option("--random-min", bt.random_min);
  ob->add_option("--random-max", bt.random_max);
  ob->add_option("--seed", bt.seed);
  ChernoffArgs ch;
  auto* och = o->add_subcommand("chernoff", "exact binomial tails against both bounds");
  och->add_option("--n-max", ch.n_max);
  och->add_flag("--table", ch.table, "print every comparison as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*g) return run_generate(gen);
    if (*c) return run_cover(cov);
    if (*v) return run_verify(ver);
    if (*b) return run_bench_cmd(ben);
    if (*oc) return run_conjecture(conj);
    if (*ob) return run_berge_tutte(bt);
    if (*och) return run_chernoff(ch);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
