#include "catch_amalgamated.hpp"

#include <cstdint>
#include <vector>

#include "pcover/generators.hpp"
#include "pcover/random.hpp"
#include "pcover/regularity.hpp"

using namespace pcover;

namespace {

// Independent brute force: is there X ⊆ a, Y ⊆ b with |X| > eps|a|, |Y| > eps|b|
// and |d(X,Y) - d(a,b)| >= eps? Uses density() on explicit sets.
bool brute_irregular(const Graph& g, const VertexSet& a, const VertexSet& b, const Rational& eps) {
  const Rational dab = density(g, a, b);
  const auto sa = a.size();
  const auto sb = b.size();
  for (std::uint32_t xm = 1; xm < (1U << sa); ++xm) {
    std::vector<Vertex> xs;
    for (std::size_t i = 0; i < sa; ++i)
      if (xm >> i & 1U) xs.push_back(a[i]);
    if (!(Rational(static_cast<std::int64_t>(xs.size())) > eps * Rational(static_cast<std::int64_t>(sa)))) continue;
    for (std::uint32_t ym = 1; ym < (1U << sb); ++ym) {
      std::vector<Vertex> ys;
      for (std::size_t j = 0; j < sb; ++j)
        if (ym >> j & 1U) ys.push_back(b[j]);
      if (!(Rational(static_cast<std::int64_t>(ys.size())) > eps * Rational(static_cast<std::int64_t>(sb)))) continue;
      Rational diff = density(g, VertexSet(xs), VertexSet(ys)) - dab;
      if (diff < Rational(0)) diff = -diff;
      if (diff >= eps) return true;
    }
  }
  return false;
}

Graph half_graph(int k) {
  std::vector<Edge> e;
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) e.push_back({i, k + j});
  return Graph(2 * k, e);
}

Graph random_graph(int n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (uniform_unit(rng) < p) e.push_back({u, v});
  return Graph(n, e);
}

}  // namespace

TEST_CASE("equitable_partition sizes", "[regularity][partition]") {
  Graph g10 = named::empty(10);
  Partition p = equitable_partition(g10, 2, 1);
  CHECK(p.m == 4);
  CHECK(p.t() == 2);
  CHECK(p.exceptional.size() == 2);
  validate_partition(g10, p);

  Graph g12 = named::empty(12);
  Partition q = equitable_partition(g12, 3, 1);
  CHECK(q.m == 4);
  CHECK(q.exceptional.empty());

  Graph g100 = random_graph(100, 0.3, 4);
  for (std::uint64_t seed : {1ULL, 2ULL}) {
    Partition r = equitable_partition(g100, 5, seed);
    CHECK_NOTHROW(validate_partition(g100, r));
    CHECK(r.m == 20);
  }
  CHECK_FALSE(equitable_partition(g100, 5, 1).clusters == equitable_partition(g100, 5, 2).clusters);
  CHECK_THROWS_AS(equitable_partition(g10, 11, 0), InvalidArgument);
  CHECK_THROWS_AS(equitable_partition(g10, 0, 0), InvalidArgument);
}

TEST_CASE("bipartite partition keeps clusters inside sides", "[regularity][partition]") {
  Graph g = random_bipartite_regular({40, 6, Family::RandomBipartiteRegular, 3});
  Partition p = equitable_partition_bipartite(g, 4, 9);
  validate_partition(g, p);
  for (const auto& c : p.clusters) {
    const Side s = g.side(c[0]);
    for (Vertex v : c) CHECK(g.side(v) == s);
  }
  CHECK_THROWS_AS(equitable_partition_bipartite(g, 3, 0), InvalidArgument);
}

TEST_CASE("complete and empty pairs are regular", "[regularity]") {
  Graph k = named::complete_bipartite(12, 12);
  Graph e = named::empty(24);
  VertexSet a = VertexSet::range(0, 12);
  VertexSet b = VertexSet::range(12, 24);
  for (const char* eps : {"0.1", "0.3", "0.5"}) {
    CHECK(is_eps_regular(k, a, b, Rational::parse(eps)).regular);
    CHECK(is_eps_regular(e, a, b, Rational::parse(eps)).regular);
    CHECK(is_eps_regular(k, VertexSet::range(0, 6), VertexSet::range(12, 18), Rational::parse(eps)).regular);
  }
}

TEST_CASE("half-graph on 8+8 is 1/4-irregular", "[regularity]") {
  Graph h = half_graph(8);
  VertexSet a = VertexSet::range(0, 8);
  VertexSet b = VertexSet::range(8, 16);
  const Rational eps(1, 4);
  REQUIRE(brute_irregular(h, a, b, eps));
  auto v = is_eps_regular(h, a, b, eps);
  CHECK(v.mode == RegularityMode::Exact);
  CHECK_FALSE(v.regular);
  REQUIRE(v.witness);
  CHECK(witness_is_valid(h, a, b, eps, *v.witness));

  auto heur = is_eps_regular(h, a, b, eps, 0);
  CHECK(heur.mode == RegularityMode::Heuristic);
  CHECK_FALSE(heur.regular);
  CHECK(witness_is_valid(h, a, b, eps, *heur.witness));
}

TEST_CASE("exact mode agrees with brute force; heuristic witnesses are valid", "[regularity]") {
  int irregular = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Graph g = random_graph(12, 0.2 + 0.015 * static_cast<double>(seed), seed);
    VertexSet a = VertexSet::range(0, 6);
    VertexSet b = VertexSet::range(6, 12);
    for (const char* e : {"0.2", "0.34"}) {
      const Rational eps = Rational::parse(e);
      const bool truth = brute_irregular(g, a, b, eps);
      auto exact = is_eps_regular(g, a, b, eps);
      CHECK(exact.regular == !truth);
      if (exact.witness) CHECK(witness_is_valid(g, a, b, eps, *exact.witness));
      auto heur = is_eps_regular(g, a, b, eps, 0);
      if (heur.witness) {
        CHECK(witness_is_valid(g, a, b, eps, *heur.witness));
        CHECK(truth);
      }
      irregular += truth ? 1 : 0;
    }
  }
  CHECK(irregular > 0);
}

TEST_CASE("build_cluster_graph threshold is inclusive and monotone", "[regularity][cluster]") {
  // clusters {0,1}, {2,3}, {4,5}; pair (0,1) complete, (0,2) half dense, (1,2) empty
  Graph g(6, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {0, 4}, {1, 5}});
  Partition p{{}, {VertexSet{0, 1}, VertexSet{2, 3}, VertexSet{4, 5}}, 2};
  ClusterGraph h = build_cluster_graph(g, p, Rational(1, 2));
  REQUIRE(h.edges.size() == 2);
  CHECK(h.edges[0].i == 0);
  CHECK(h.edges[0].j == 1);
  CHECK(h.edges[0].density == Rational(1));
  CHECK(h.edges[1].j == 2);
  CHECK(h.edges[1].density == Rational(1, 2));  // exactly d is kept

  std::size_t last = 100;
  for (const char* d : {"0.1", "0.5", "0.51", "1"}) {
    auto cg = build_cluster_graph(g, p, Rational::parse(d));
    CHECK(cg.edges.size() <= last);
    last = cg.edges.size();
  }
  CHECK(build_cluster_graph(named::empty(6), p, Rational(1, 10)).edges.empty());
}

TEST_CASE("clean_super_regular on a complete pair", "[regularity][cleaning]") {
  Graph k = named::complete_bipartite(10, 10);
  auto c = clean_super_regular(k, VertexSet::range(0, 10), VertexSet::range(10, 20), Rational(1, 10), Rational(1, 2));
  CHECK(c.x.size() == 9);
  CHECK(c.y.size() == 9);
  CHECK(c.removed_a == VertexSet{0});  // lowest id pads
  CHECK(c.removed_b == VertexSet{10});
  CHECK(super_regular_degrees(k, c.x, c.y, Rational(9, 10) - Rational(1, 100)));
}

TEST_CASE("clean_super_regular removes isolated vertices", "[regularity][cleaning]") {
  // K_{10,10} with vertex 3 and vertex 17 isolated
  std::vector<Edge> e;
  for (int i = 0; i < 10; ++i)
    for (int j = 10; j < 20; ++j)
      if (i != 3 && j != 17) e.push_back({i, j});
  Graph g(20, e);
  auto c = clean_super_regular(g, VertexSet::range(0, 10), VertexSet::range(10, 20), Rational(1, 10), Rational(1, 2));
  CHECK(c.removed_a.contains(3));
  CHECK(c.removed_b.contains(17));
  CHECK(c.x.size() == 9);
}

TEST_CASE("clean_super_regular output passes a direct degree audit", "[regularity][cleaning]") {
  const Rational eps(1, 10);
  const Rational d(2, 5);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    std::vector<Edge> e;
    for (int i = 0; i < 50; ++i)
      for (int j = 50; j < 100; ++j)
        if (uniform_unit(rng) < 0.5) e.push_back({i, j});
    Graph g(100, e);
    VertexSet a = VertexSet::range(0, 50);
    VertexSet b = VertexSet::range(50, 100);
    auto c = clean_super_regular(g, a, b, eps, d);
    CHECK(c.x.size() == 45);
    CHECK(c.y.size() == 45);
    CHECK(c.x.unite(c.removed_a) == a);
    CHECK(c.y.unite(c.removed_b) == b);
    // audit by counting neighbours directly
    const double floor_deg = (d - Rational(3) * eps).to_double() * 45.0;
    for (Vertex x : c.x) {
      int deg = 0;
      for (Vertex y : c.y) deg += g.adjacent(x, y) ? 1 : 0;
      CHECK(deg > floor_deg);
    }
    for (Vertex y : c.y) {
      int deg = 0;
      for (Vertex x : c.x) deg += g.adjacent(x, y) ? 1 : 0;
      CHECK(deg > floor_deg);
    }
  }
}

TEST_CASE("clean_super_regular fails loudly on a bad pair", "[regularity][cleaning]") {
  Graph e = named::empty(20);
  CHECK_THROWS_AS(clean_super_regular(e, VertexSet::range(0, 10), VertexSet::range(10, 20), Rational(1, 10), Rational(1, 2)),
                  CleaningFailed);
  Graph k = named::complete_bipartite(10, 10);
  CHECK_THROWS_AS(clean_super_regular(k, VertexSet::range(0, 10), VertexSet::range(10, 20), Rational(1, 5), Rational(1, 2)),
                  InvalidArgument);  // d <= 3 eps
}

TEST_CASE("refine_partition keeps the best sample", "[regularity][partition]") {
  Graph g = random_regular({120, 40, Family::RandomRegular, 1});
  auto r = refine_partition(g, 4, Rational(1, 2), 5, 7);
  CHECK_NOTHROW(validate_partition(g, r.partition));
  CHECK(r.pairs.size() == 6);
  int regular = 0;
  for (const auto& pa : r.pairs) {
    regular += pa.verdict.regular ? 1 : 0;
    if (pa.verdict.witness)
      CHECK(witness_is_valid(g, r.partition.clusters[pa.i], r.partition.clusters[pa.j], Rational(1, 2), *pa.verdict.witness));
  }
  CHECK(regular == r.regular_pairs);
  CHECK(r.iterations >= 1);
}
