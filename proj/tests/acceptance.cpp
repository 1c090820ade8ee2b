// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <bit>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pcover/bench.hpp"
#include "pcover/cover.hpp"
#include "pcover/generators.hpp"
#include "pcover/hamilton.hpp"
#include "pcover/matching.hpp"
#include "pcover/oracle.hpp"
#include "pcover/pipeline.hpp"
#include "pcover/regularity.hpp"
#include "pcover/reservoir.hpp"

using namespace pcover;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  char timing[96];
  std::snprintf(timing, sizeof timing, "%.1fs, limit %.0fs%s", secs, limit_s, in_time ? "" : " EXCEEDED");
  std::cout << (pass ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << o.detail << " (" << timing << ")"
            << std::endl;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f) {
  std::atomic<std::size_t> next{0};
  const unsigned threads = std::max(1U, std::min<unsigned>(std::thread::hardware_concurrency(), 16));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) f(i);
    });
  for (auto& t : pool) t.join();
}

Graph random_graph(int n, double p, Rng& rng) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (uniform_unit(rng) < p) e.push_back({u, v});
  return Graph(n, std::move(e));
}

// Independent audit of a half-integral matching: weights, loads, and a
// support made of disjoint weight-1 edges and disjoint odd cycles of weight 1/2.
std::string matching_defect(const Graph& g, const HalfIntegralMatching& f) {
  const int n = g.order();
  std::vector<int> load(n, 0);
  std::vector<std::vector<Vertex>> half_adj(n);
  std::vector<int> full_deg(n, 0);
  for (const auto& e : f.edges) {
    if (e.halves != 1 && e.halves != 2) return "weight outside {0, 1/2, 1}";
    if (!g.adjacent(e.u, e.v)) return "support edge not in graph";
    load[e.u] += e.halves;
    load[e.v] += e.halves;
    if (e.halves == 1) {
      half_adj[e.u].push_back(e.v);
      half_adj[e.v].push_back(e.u);
    } else {
      ++full_deg[e.u];
      ++full_deg[e.v];
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (load[v] > 2) return "vertex load above 1";
    if (full_deg[v] > 1 || (full_deg[v] == 1 && !half_adj[v].empty())) return "weight-1 edges not disjoint";
    if (!half_adj[v].empty() && half_adj[v].size() != 2) return "half-weight support is not 2-regular";
  }
  std::vector<bool> seen(n, false);
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s] || half_adj[s].empty()) continue;
    int len = 0;
    Vertex prev = -1;
    Vertex cur = s;
    do {
      seen[cur] = true;
      ++len;
      Vertex nxt = half_adj[cur][0] == prev ? half_adj[cur][1] : half_adj[cur][0];
      prev = cur;
      cur = nxt;
    } while (cur != s && len <= n);
    if (len % 2 == 0) return "half-weight cycle of even length";
  }
  return {};
}

// Maximum deficiency by plain enumeration of every S.
int deficiency_by_enumeration(const Graph& g) {
  const int n = g.order();
  int best = 0;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    int isolated = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (s >> v & 1U) continue;
      bool lonely = true;
      for (Vertex w : g.neighbors(v))
        if (!(s >> w & 1U)) lonely = false;
      isolated += lonely ? 1 : 0;
    }
    best = std::max(best, isolated - std::popcount(s));
  }
  return best;
}

struct Tally {
  std::atomic<long long> graphs{0};
  std::atomic<long long> value_mismatch{0};
  std::atomic<long long> audit_fail{0};
};

void berge_tutte_check(const Graph& g, Tally& t) {
  ++t.graphs;
  auto f = fractional_matching(g);
  if (Rational(f.twice_value(), 2) != Rational(g.order() - deficiency_by_enumeration(g), 2)) ++t.value_mismatch;
  if (!matching_defect(g, f).empty()) ++t.audit_fail;
}

bool path_ok(const Graph& g, const std::vector<Vertex>& p, bool closed) {
  std::vector<bool> seen(g.order(), false);
  for (Vertex v : p) {
    if (v < 0 || v >= g.order() || seen[v]) return false;
    seen[v] = true;
  }
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (!g.adjacent(p[i], p[i + 1])) return false;
  return !closed || p.size() < 3 || g.adjacent(p.back(), p.front());
}

bool alternates(const std::vector<Vertex>& c, const VertexSet& x, const VertexSet& y) {
  if (c.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const bool here = x.contains(c[i]);
    const bool next = x.contains(c[(i + 1) % c.size()]);
    if (here == next || (!here && !y.contains(c[i]))) return false;
  }
  return true;
}

std::string cli_output(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(PCOVER_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) throw std::runtime_error("CLI failed: " + args);
  return out;
}

std::string pct(int num, int den) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%d/%d (%.1f%%)", num, den, den ? 100.0 * num / den : 0.0);
  return buf;
}

}  // namespace

int main() {
  std::cout << "acceptance suite, " << std::thread::hardware_concurrency() << " hardware threads" << std::endl;

  Tally bt;
  criterion(1, "fractional Berge-Tutte equality (all graphs n<=7, 500 random n=8..12)", 120, [&] {
    std::vector<Graph> all;
    for (int n = 0; n <= 7; ++n) {
      std::vector<Edge> slots;
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) slots.push_back({u, v});
      const std::uint32_t total = 1U << slots.size();
      parallel_for(total, [&](std::size_t mask) {
        std::vector<Edge> e;
        for (std::size_t i = 0; i < slots.size(); ++i)
          if (mask >> i & 1U) e.push_back(slots[i]);
        berge_tutte_check(Graph(n, std::move(e)), bt);
      });
    }
    Rng rng(20240501);
    std::vector<Graph> randoms;
    for (int i = 0; i < 500; ++i) {
      const int n = 8 + static_cast<int>(uniform_below(rng, 5));
      randoms.push_back(random_graph(n, uniform_unit(rng), rng));
    }
    parallel_for(randoms.size(), [&](std::size_t i) { berge_tutte_check(randoms[i], bt); });
    const long long expected = 1 + 1 + 2 + 8 + 64 + 1024 + 32768 + 2097152 + 500;
    return Outcome{bt.graphs == expected && bt.value_mismatch == 0,
                   std::to_string(bt.graphs.load()) + " graphs, " + std::to_string(bt.value_mismatch.load()) +
                       " mismatches"};
  });

  criterion(2, "half-integrality audit of every matching from [1]", 1, [&] {
    return Outcome{bt.graphs > 0 && bt.audit_fail == 0,
                   std::to_string(bt.audit_fail.load()) + " violations in " + std::to_string(bt.graphs.load()) +
                       " matchings"};
  });

  criterion(3, "Chernoff domination, n'<=25, zeta in {0.1..0.9}, x in 1..n'", 10, [] {
    auto t = chernoff_domination(25);
    return Outcome{t.violations == 0 && t.rows.size() == 9 * 325,
                   std::to_string(t.rows.size()) + " comparisons, " + std::to_string(t.violations) + " violations"};
  });

  criterion(4, "tightness families: 2xK_4 -> 2, 2xK_{3,3} -> 2", 5, [] {
    const int a = min_path_cover_exact(generate({8, 3, Family::DisjointCliques, 0})).cover_number;
    const int b = min_path_cover_exact(generate({12, 3, Family::DisjointBicliques, 0})).cover_number;
    return Outcome{a == 2 && b == 2, "2xK_4 = " + std::to_string(a) + ", 2xK_{3,3} = " + std::to_string(b)};
  });

  SpotCheckReport spot;
  criterion(5, "conjecture spot check: 200 cubic graphs n in {8,10} + named, cover <= ceil(n/(k+1))", 120, [&] {
    SampleSpec spec;
    spec.k = 3;
    spec.orders = {8, 10};
    spec.samples = 100;
    spec.seed = 11;
    spot = conjecture_spot_check(spec);
    int bad = 0;
    int strict_bad = 0;
    int sampled = 0;
    for (const auto& s : spot.instances) {
      if (s.name.rfind("random-regular", 0) == 0) ++sampled;
      const int ceiling = (s.n + s.k) / (s.k + 1);
      if (s.cover_number > ceiling) ++bad;
      if (s.cover_number * (s.k + 1) > s.n) ++strict_bad;
    }
    bool named_ok = true;
    for (const char* want : {"petersen", "cube", "K_4", "K_3,3"})
      named_ok = named_ok && std::any_of(spot.instances.begin(), spot.instances.end(),
                                         [&](const auto& s) { return s.name == want; });
    return Outcome{bad == 0 && sampled == 200 && named_ok,
                   std::to_string(spot.instances.size()) + " instances, " + std::to_string(bad) +
                       " violations (" + std::to_string(strict_bad) + " of cover <= n/(k+1))"};
  });

  criterion(6, "cover number <= independence number on every instance of [5]", 1, [&] {
    int bad = 0;
    for (const auto& s : spot.instances) bad += s.cover_number <= s.independence ? 0 : 1;
    return Outcome{!spot.instances.empty() && bad == 0, std::to_string(bad) + " violations in " +
                                                            std::to_string(spot.instances.size()) + " instances"};
  });

  criterion(7, "reservoir on K_500, gamma=0.1, eps=0.2, 100 seeds", 60, [] {
    const Graph k = named::complete(500);
    const Rational c(499, 500);
    int ok = 0;
    int audited = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      try {
        auto res = reservoir(k, {c, Rational(1, 10), Rational(1, 5), seed, 50});
        ++ok;
        // direct window audit in floating point, margins are wide
        const double size = static_cast<double>(res.r.size());
        bool good = size > 0.8 * 50 && size < 1.2 * 50;
        for (Vertex v = 0; v < 500 && good; ++v) {
          int deg = 0;
          for (Vertex w : res.r) deg += (w != v) ? 1 : 0;
          good = deg > 0.8 * 0.998 * 50 && deg < 1.2 * 0.998 * 50;
        }
        audited += good ? 1 : 0;
      } catch (const ReservoirFailed&) {
      }
    }
    return Outcome{ok >= 99 && audited == ok,
                   "success " + pct(ok, 100) + ", window audit passed on " + std::to_string(audited) + "/" +
                       std::to_string(ok)};
  });

  criterion(8, "path covers of random ceil(cn)-regular graphs, c in {0.3,0.45,0.6}, n in {200,600}, 50 seeds", 900,
            [] {
              BenchSpec spec;
              spec.family = Family::RandomRegular;
              spec.ns = {200, 600};
              spec.cs = {Rational(3, 10), Rational(45, 100), Rational(3, 5)};
              spec.seed_first = 0;
              spec.seed_last = 49;
              const auto trials = bench_trials(spec);
              std::vector<int> pass(trials.size(), 0);
              std::vector<int> structural(trials.size(), 0);
              std::vector<int> pipeline(trials.size(), 0);
              parallel_for(trials.size(), [&](std::size_t i) {
                auto out = run_trial(spec, trials[i]);
                if (!out.graph) return;
                const int n = trials[i].n;
                const auto limit = path_limit(trials[i].c, false);
                auto audit = verify_cover(*out.graph, out.cover, {limit, (Rational(1, 10) * Rational(n)).floor()});
                std::size_t covered = 0;
                for (const auto& p : out.cover.paths) covered += p.size();
                structural[i] = audit.structural_ok() ? 1 : 0;
                pass[i] = audit.ok() && 10 * covered >= 9 * static_cast<std::size_t>(n) ? 1 : 0;
                pipeline[i] = out.row.method == "regularity-pipeline" ? 1 : 0;
              });
              std::ostringstream d;
              bool ok = true;
              for (std::size_t g = 0; g < trials.size(); g += 50) {
                int p = 0;
                for (std::size_t i = g; i < g + 50; ++i) p += pass[i];
                ok = ok && p >= 45;
                d << "n=" << trials[g].n << " c=" << trials[g].c.to_double() << ": " << p << "/50; ";
              }
              const int s = std::accumulate(structural.begin(), structural.end(), 0);
              const int via = std::accumulate(pipeline.begin(), pipeline.end(), 0);
              const int total = std::accumulate(pass.begin(), pass.end(), 0);
              d << "overall " << pct(total, static_cast<int>(trials.size())) << ", structural "
                << s << "/" << trials.size() << ", regularity route " << via;
              return Outcome{ok && s == static_cast<int>(trials.size()), d.str()};
            });

  criterion(9, "bipartite path covers, c in {0.3,0.45}, n=600, 50 seeds, connections through R cap Y", 600, [] {
    const std::vector<Rational> cs{Rational(3, 10), Rational(45, 100)};
    std::vector<int> pass(100, 0);
    std::vector<int> conn_ok(100, 0);
    std::vector<int> conns(100, 0);
    parallel_for(100, [&](std::size_t i) {
      const Rational c = cs[i / 50];
      const std::uint64_t seed = i % 50;
      const int n = 600;
      Graph g = generate({n, degree_for(c, n), Family::RandomBipartiteRegular, mix_seed(seed, 0xb1)});
      PipelineConfig cfg;
      cfg.c = c;
      cfg.seed = seed;
      auto run = path_cover_bipartite(g, cfg);
      const auto limit = path_limit(c, true);
      auto audit = verify_cover(g, run.cover, {std::max(1, limit), 60});
      std::size_t covered = 0;
      for (const auto& p : run.cover.paths) covered += p.size();
      pass[i] = audit.ok() && covered >= 540 ? 1 : 0;
      bool good = true;
      for (const auto& cn : run.report.connections)
        good = good && run.reservoir.contains(cn.w) && g.side(cn.w) == Side::Y && g.adjacent(cn.a, cn.w) &&
               g.adjacent(cn.w, cn.b);
      conn_ok[i] = good ? 1 : 0;
      conns[i] = static_cast<int>(run.report.connections.size());
    });
    const int p1 = std::accumulate(pass.begin(), pass.begin() + 50, 0);
    const int p2 = std::accumulate(pass.begin() + 50, pass.end(), 0);
    const int audited = std::accumulate(conn_ok.begin(), conn_ok.end(), 0);
    const int total_conns = std::accumulate(conns.begin(), conns.end(), 0);
    return Outcome{p1 >= 45 && p2 >= 45 && audited == 100,
                   "c=0.3: " + std::to_string(p1) + "/50; c=0.45: " + std::to_string(p2) + "/50; " +
                       std::to_string(total_conns) + " connections, audit clean in " + std::to_string(audited) +
                       "/100 runs"};
  });

  criterion(10, "Dirac graphs n<=14 always get a Hamiltonian path", 60, [] {
    Rng rng(77);
    int tested = 0;
    int found = 0;
    while (tested < 20) {
      const int n = 4 + static_cast<int>(uniform_below(rng, 11));
      Graph g = random_graph(n, 0.5 + 0.3 * uniform_unit(rng), rng);
      if (2 * g.min_degree() < n) continue;
      ++tested;
      auto res = hamiltonian_path(g);
      if (res.path && static_cast<int>(res.path->size()) == n && path_ok(g, res.path->vertices, false)) ++found;
    }
    return Outcome{found == 20, std::to_string(found) + "/20 found"};
  });

  criterion(11, "spanning cycles: K_{N,N} for N=2..50, random 0.5 pairs N=50", 300, [] {
    int complete_ok = 0;
    for (int N = 2; N <= 50; ++N) {
      Graph k = named::complete_bipartite(N, N);
      VertexSet x = VertexSet::range(0, N);
      VertexSet y = VertexSet::range(N, 2 * N);
      auto res = spanning_cycle_bipartite(k, x, y);
      if (res.cycle && static_cast<int>(res.cycle->size()) == 2 * N && path_ok(k, res.cycle->vertices, true) &&
          alternates(res.cycle->vertices, x, y))
        ++complete_ok;
    }
    int random_ok = 0;
    int bad_audit = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(mix_seed(seed, 0x5e));
      std::vector<Edge> e;
      for (int i = 0; i < 50; ++i)
        for (int j = 50; j < 100; ++j)
          if (uniform_unit(rng) < 0.5) e.push_back({i, j});
      Graph g(100, e);
      VertexSet x = VertexSet::range(0, 50);
      VertexSet y = VertexSet::range(50, 100);
      HamiltonBudget b;
      b.seed = seed;
      auto res = spanning_cycle_bipartite(g, x, y, b);
      if (!res.cycle) continue;
      if (res.cycle->size() == 100 && path_ok(g, res.cycle->vertices, true) && alternates(res.cycle->vertices, x, y))
        ++random_ok;
      else
        ++bad_audit;
    }
    return Outcome{complete_ok == 49 && random_ok >= 19 && bad_audit == 0,
                   "complete " + std::to_string(complete_ok) + "/49, random " + pct(random_ok, 20) + ", " +
                       std::to_string(bad_audit) + " audit failures"};
  });

  criterion(12, "regularity witnesses re-validate; complete and empty pairs are regular", 120, [] {
    int irregular = 0;
    int invalid = 0;
    auto check = [&](const Graph& g, const VertexSet& a, const VertexSet& b, const Rational& eps) {
      auto v = is_eps_regular(g, a, b, eps);
      if (v.regular) return;
      ++irregular;
      const auto& w = *v.witness;
      // direct recount of both densities
      auto edges = [&](const VertexSet& s, const VertexSet& t) {
        long long m = 0;
        for (Vertex u : s)
          for (Vertex z : t) m += g.adjacent(u, z) ? 1 : 0;
        return m;
      };
      const bool subsets = w.x.minus(a).empty() && w.y.minus(b).empty();
      const bool big = Rational(static_cast<std::int64_t>(w.x.size())) > eps * Rational(static_cast<std::int64_t>(a.size())) &&
                       Rational(static_cast<std::int64_t>(w.y.size())) > eps * Rational(static_cast<std::int64_t>(b.size()));
      Rational dxy(edges(w.x, w.y), static_cast<std::int64_t>(w.x.size() * w.y.size()));
      Rational dab(edges(a, b), static_cast<std::int64_t>(a.size() * b.size()));
      Rational diff = dxy - dab;
      if (diff < Rational(0)) diff = -diff;
      if (!(subsets && big && diff >= eps)) ++invalid;
    };
    Rng rng(1234);
    for (int trial = 0; trial < 300; ++trial) {
      const int sa = 2 + static_cast<int>(uniform_below(rng, trial < 200 ? 9 : 40));
      const int sb = 2 + static_cast<int>(uniform_below(rng, trial < 200 ? 9 : 40));
      Graph g = random_graph(sa + sb, uniform_unit(rng), rng);
      const Rational eps(1 + static_cast<int>(uniform_below(rng, 5)), 10);
      check(g, VertexSet::range(0, sa), VertexSet::range(sa, sa + sb), eps);
    }
    for (int half : {6, 10, 30}) {  // half-graphs
      std::vector<Edge> e;
      for (int i = 0; i < half; ++i)
        for (int j = 0; j < half; ++j)
          if (i <= j) e.push_back({i, half + j});
      Graph g(2 * half, e);
      for (int tenth : {1, 2, 3}) check(g, VertexSet::range(0, half), VertexSet::range(half, 2 * half), Rational(tenth, 10));
    }
    int trivial_regular = 0;
    int trivial_total = 0;
    for (int N : {8, 40}) {
      const Graph full = named::complete_bipartite(N, N);
      const Graph none = named::empty(2 * N);
      for (const Rational& eps : {Rational(1, 10), Rational(3, 10), Rational(1, 2)})
        for (const Graph* g : {&full, &none}) {
          ++trivial_total;
          trivial_regular += is_eps_regular(*g, VertexSet::range(0, N), VertexSet::range(N, 2 * N), eps).regular;
        }
    }
    return Outcome{invalid == 0 && irregular > 0 && trivial_regular == trivial_total,
                   std::to_string(irregular) + " irregular verdicts, " + std::to_string(invalid) +
                       " invalid witnesses; trivial pairs regular " + std::to_string(trivial_regular) + "/" +
                       std::to_string(trivial_total)};
  });

  criterion(13, "bench CSV byte-identical across runs and thread counts {1,4}", 300, [] {
    const std::string args = "bench --n 120,200 --c 0.3,0.45 --seeds 0..5";
    const std::string a = cli_output(args + " --threads 1");
    const std::string b = cli_output(args + " --threads 1");
    const std::string c = cli_output(args + " --threads 4");
    const std::string d = cli_output(args, "THREADS=4");
    std::size_t lines = std::count(a.begin(), a.end(), '\n');
    return Outcome{a == b && a == c && a == d && lines == 25,
                   std::to_string(lines - 1) + " rows; repeat " + (a == b ? "identical" : "DIFFERS") +
                       ", threads 4 " + (a == c ? "identical" : "DIFFERS") +
                       ", THREADS=4 " + (a == d ? "identical" : "DIFFERS")};
  });

  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
