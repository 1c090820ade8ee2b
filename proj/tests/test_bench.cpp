#include "catch_amalgamated.hpp"

#include <sstream>

#include "pcover/bench.hpp"

using namespace pcover;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

BenchSpec small_spec() {
  BenchSpec spec;
  spec.ns = {100, 160};
  spec.cs = {Rational(3, 10), Rational(45, 100)};
  spec.seed_first = 0;
  spec.seed_last = 2;
  return spec;
}

}  // namespace

TEST_CASE("csv header and row format", "[bench]") {
  CHECK(bench_header() == "seed,family,n,k,c,alpha,method,paths,uncovered,runtime_ms,success");
  BenchRow r;
  r.seed = 7;
  r.n = 200;
  r.k = 60;
  r.c = Rational(3, 10);
  r.alpha = Rational(1, 10);
  r.method = "regularity-pipeline";
  r.paths = 3;
  r.uncovered = 12;
  r.success = true;
  CHECK(to_csv(r) == "7,random-regular,200,60,0.3,0.1,regularity-pipeline,3,12,0,true");
  CHECK(format_g6(1.0 / 3.0) == "0.333333");
  CHECK(format_g6(123456789.0) == "1.23457e+08");
}

TEST_CASE("trials are ordered by n, then c, then seed", "[bench]") {
  auto t = bench_trials(small_spec());
  REQUIRE(t.size() == 12);
  CHECK(t[0].n == 100);
  CHECK(t[0].c == Rational(3, 10));
  CHECK(t[2].seed == 2);
  CHECK(t[3].c == Rational(45, 100));
  CHECK(t[6].n == 160);
}

TEST_CASE("bench output does not depend on the thread count", "[bench]") {
  BenchSpec spec = small_spec();
  spec.threads = 1;
  const std::string one = bench_csv(run_bench(spec));
  spec.threads = 4;
  const std::string four = bench_csv(run_bench(spec));
  CHECK(one == four);
  CHECK(one == bench_csv(run_bench(spec)));
  const auto lines = split(one, '\n');
  REQUIRE(lines.size() == 13);
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(split(lines[i], ',').size() == 11);
}

TEST_CASE("bench rows agree with an independent audit of their covers", "[bench]") {
  BenchSpec spec = small_spec();
  int checked = 0;
  for (const auto& key : bench_trials(spec)) {
    if (checked == 10) break;
    auto out = run_trial(spec, key);
    REQUIRE(out.graph);
    const auto limit = path_limit(key.c, false);
    const auto max_unc = (spec.alpha * Rational(key.n)).floor();
    auto audit = verify_cover(*out.graph, out.cover, {limit, max_unc});
    INFO(audit.to_text());
    CHECK(out.row.paths == static_cast<int>(out.cover.paths.size()));
    CHECK(out.row.uncovered == static_cast<int>(out.cover.uncovered.size()));
    CHECK(out.row.success == audit.ok());
    CHECK(out.row.k == degree_for(key.c, key.n));
    CHECK(out.graph->regular_degree() == out.row.k);
    ++checked;
  }
  CHECK(checked == 10);
}

TEST_CASE("bipartite bench and failing trials", "[bench]") {
  BenchSpec spec;
  spec.family = Family::RandomBipartiteRegular;
  spec.ns = {120};
  spec.cs = {Rational(3, 10)};
  spec.seed_last = 1;
  auto rows = run_bench(spec);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) CHECK(r.paths <= 1);

  BenchSpec bad;
  bad.ns = {101};
  bad.cs = {Rational(3, 10)};  // 101 * 31 is odd: generation fails
  auto out = run_bench(bad);
  REQUIRE(out.size() == 1);
  CHECK(out[0].method == "error");
  CHECK_FALSE(out[0].success);
}

TEST_CASE("timing is opt-in", "[bench]") {
  BenchSpec spec;
  spec.ns = {60};
  auto rows = run_bench(spec);
  CHECK(rows[0].runtime_ms == 0.0);
  spec.timing = true;
  rows = run_bench(spec);
  CHECK(rows[0].runtime_ms > 0.0);
}
