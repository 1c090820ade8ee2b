#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pcover/cover.hpp"
#include "pcover/generators.hpp"
#include "pcover/pipeline.hpp"
#include "pcover/rational.hpp"

namespace pcover {

struct BenchRow {
  std::uint64_t seed = 0;
  Family family = Family::RandomRegular;
  int n = 0;
  int k = 0;
  Rational c;
  Rational alpha;
  std::string method;
  int paths = 0;
  int uncovered = 0;
  double runtime_ms = 0.0;
  bool success = false;
};

inline std::string bench_header() { return "seed,family,n,k,c,alpha,method,paths,uncovered,runtime_ms,success"; }

inline std::string format_g6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline std::string to_csv(const BenchRow& r) {
  std::string s;
  s += std::to_string(r.seed) + ',' + std::string(to_string(r.family)) + ',' + std::to_string(r.n) + ',' +
       std::to_string(r.k) + ',' + format_g6(r.c.to_double()) + ',' + format_g6(r.alpha.to_double()) + ',' +
       r.method + ',' + std::to_string(r.paths) + ',' + std::to_string(r.uncovered) + ',' +
       format_g6(r.runtime_ms) + ',' + (r.success ? "true" : "false");
  return s;
}

struct BenchSpec {
  Family family = Family::RandomRegular;
  std::vector<int> ns{200};
  std::vector<Rational> cs{Rational(3, 10)};
  std::uint64_t seed_first = 0;
  std::uint64_t seed_last = 0;
  Rational alpha{1, 10};
  bool timing = false;  // runtime_ms is 0 unless set, so output stays reproducible
  int threads = 1;
  PipelineConfig base{};
};

struct TrialKey {
  int n = 0;
  Rational c;
  std::uint64_t seed = 0;
};

/// Trials in output order: n outermost, then c, then seed.
inline std::vector<TrialKey> bench_trials(const BenchSpec& spec) {
  std::vector<TrialKey> out;
  for (int n : spec.ns)
    for (const auto& c : spec.cs)
      for (std::uint64_t s = spec.seed_first; s <= spec.seed_last; ++s) {
        out.push_back({n, c, s});
        if (s == UINT64_MAX) break;
      }
  return out;
}

struct TrialOutcome {
  BenchRow row;
  std::optional<Graph> graph;  // absent when generation failed
  PathCover cover;
};

/// One trial. The instance depends only on (seed, n, c), never on which
/// thread runs it. Any exception becomes a failed row.
inline TrialOutcome run_trial(const BenchSpec& spec, const TrialKey& key) {
  TrialOutcome out;
  BenchRow& row = out.row;
  row.seed = key.seed;
  row.family = spec.family;
  row.n = key.n;
  row.c = key.c;
  row.alpha = spec.alpha;
  const auto start = std::chrono::steady_clock::now();
  try {
    row.k = degree_for(key.c, key.n);
    const auto c_key = static_cast<std::uint64_t>(key.c.num()) * 1'000'003ULL + static_cast<std::uint64_t>(key.c.den());
    const std::uint64_t gseed = mix_seed(key.seed, mix_seed(static_cast<std::uint64_t>(key.n), c_key));
    out.graph = generate({key.n, row.k, spec.family, gseed});
    PipelineConfig cfg = spec.base;
    cfg.c = key.c;
    cfg.alpha = spec.alpha;
    cfg.seed = key.seed;
    CoverRun run = is_bipartite_family(spec.family) ? path_cover_bipartite(*out.graph, cfg) : path_cover(*out.graph, cfg);
    row.method = run.report.method;
    row.paths = run.report.final_paths;
    row.uncovered = run.report.final_uncovered;
    // The row's own rule: within both limits, with a structurally valid cover.
    row.success = run.report.structural_ok && run.report.final_paths <= run.report.limit &&
                  run.report.final_uncovered <= run.report.max_uncovered;
    out.cover = std::move(run.cover);
  } catch (const std::exception&) {
    row.method = "error";
    row.success = false;
  }
  if (spec.timing)
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

/// Runs every trial on `threads` workers; rows come back in trial order.
inline std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  const auto trials = bench_trials(spec);
  std::vector<BenchRow> rows(trials.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < trials.size(); i = next++) rows[i] = run_trial(spec, trials[i]).row;
  };
  const int threads = std::max(1, std::min<int>(spec.threads, static_cast<int>(std::max<std::size_t>(trials.size(), 1))));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string s = bench_header() + '\n';
  for (const auto& r : rows) s += to_csv(r) + '\n';
  return s;
}

}  // namespace pcover
