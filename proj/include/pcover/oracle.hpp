#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "pcover/chernoff.hpp"
#include "pcover/errors.hpp"
#include "pcover/generators.hpp"
#include "pcover/graph.hpp"
#include "pcover/hamilton.hpp"
#include "pcover/matching.hpp"
#include "pcover/rational.hpp"

namespace pcover {

inline constexpr int kExactCoverCap = 18;
inline constexpr int kIndependenceCap = 20;

struct ExactCoverResult {
  int cover_number = 0;
  std::vector<Path> witness;  // covers every vertex
};

/// Minimum number of vertex-disjoint paths covering every vertex. DP over
/// (covered set, end of the open path): a step either extends the open path
/// along an edge or closes it and opens a new one at an uncovered vertex.
inline ExactCoverResult min_path_cover_exact(const Graph& g, int cap = kExactCoverCap) {
  const int n = g.order();
  if (n > cap || n > 24) throw SizeLimitError("min_path_cover_exact: n = " + std::to_string(n) + " exceeds cap");
  if (n == 0) return {};
  constexpr std::uint8_t kInf = 0xff;
  const std::uint32_t full = (1U << n) - 1;
  std::vector<std::uint32_t> nb(n, 0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.neighbors(u)) nb[u] |= 1U << v;
  std::vector<std::uint8_t> f((static_cast<std::size_t>(full) + 1) * n, kInf);
  auto at = [&](std::uint32_t mask, int v) -> std::uint8_t& { return f[static_cast<std::size_t>(mask) * n + v]; };
  for (int v = 0; v < n; ++v) at(1U << v, v) = 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::uint8_t best = kInf;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      std::uint8_t c = at(mask, v);
      if (c == kInf) continue;
      best = std::min(best, c);
      for (std::uint32_t ext = nb[v] & ~mask; ext != 0; ext &= ext - 1) {
        int w = std::countr_zero(ext);
        auto& target = at(mask | (1U << w), w);
        target = std::min(target, c);
      }
    }
    if (best == kInf) continue;
    for (std::uint32_t open = ~mask & full; open != 0; open &= open - 1) {
      int w = std::countr_zero(open);
      auto& target = at(mask | (1U << w), w);
      target = std::min<std::uint8_t>(target, best + 1);
    }
  }
  int end = 0;
  for (int v = 1; v < n; ++v)
    if (at(full, v) < at(full, end)) end = v;

  ExactCoverResult out;
  out.cover_number = at(full, end);
  std::vector<Vertex> current{end};
  std::uint32_t mask = full;
  int v = end;
  while (mask != (1U << v)) {
    const std::uint8_t c = at(mask, v);
    const std::uint32_t prev = mask & ~(1U << v);
    int next = -1;
    for (std::uint32_t cand = prev & nb[v]; cand != 0 && next < 0; cand &= cand - 1) {
      int u = std::countr_zero(cand);
      if (at(prev, u) == c) next = u;
    }
    if (next < 0) {
      for (std::uint32_t cand = prev; cand != 0 && next < 0; cand &= cand - 1) {
        int u = std::countr_zero(cand);
        if (at(prev, u) + 1 == c) next = u;
      }
      std::reverse(current.begin(), current.end());
      out.witness.push_back(Path{current});
      current.clear();
    }
    current.push_back(next);
    mask = prev;
    v = next;
  }
  std::reverse(current.begin(), current.end());
  out.witness.push_back(Path{current});
  std::reverse(out.witness.begin(), out.witness.end());
  return out;
}

/// Independence number by branch and bound on the vertex of largest
/// remaining degree.
inline int independence_number(const Graph& g, int cap = kIndependenceCap) {
  const int n = g.order();
  if (n > cap || n > 63) throw SizeLimitError("independence_number: n = " + std::to_string(n) + " exceeds cap");
  std::vector<std::uint64_t> nb(n, 0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.neighbors(u)) nb[u] |= std::uint64_t{1} << v;
  int best = 0;
  auto search = [&](auto&& self, std::uint64_t cand, int size) -> void {
    if (size + std::popcount(cand) <= best) return;
    int pick = -1;
    int pick_deg = -1;
    for (std::uint64_t r = cand; r != 0; r &= r - 1) {
      int v = std::countr_zero(r);
      int d = std::popcount(nb[v] & cand);
      if (d > pick_deg) {
        pick = v;
        pick_deg = d;
      }
    }
    if (pick_deg <= 0) {
      best = std::max(best, size + std::popcount(cand));
      return;
    }
    self(self, cand & ~nb[pick] & ~(std::uint64_t{1} << pick), size + 1);
    self(self, cand & ~(std::uint64_t{1} << pick), size);
  };
  search(search, n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1), 0);
  return best;
}

enum class Tail { Upper, Lower };  // P[X >= threshold], P[X <= threshold]

using ExactRational = boost::multiprecision::cpp_rational;
using WideFloat = boost::multiprecision::cpp_bin_float_50;

inline constexpr int kBinomialCap = 60;

/// Exact P[Bin(n', zeta) >= threshold] (Upper) or P[Bin(n', zeta) <= threshold] (Lower).
inline ExactRational binomial_tail_rational(int nprime, const Rational& zeta, const Rational& threshold, Tail side) {
  if (nprime < 0 || nprime > kBinomialCap) throw InvalidArgument("binomial tail needs 0 <= n' <= 60");
  if (zeta < Rational(0) || zeta > Rational(1)) throw InvalidArgument("binomial tail needs 0 <= zeta <= 1");
  using boost::multiprecision::cpp_int;
  const cpp_int p = zeta.num();
  const cpp_int q = zeta.den();
  cpp_int numerator = 0;
  cpp_int choose = 1;
  for (int i = 0; i <= nprime; ++i) {
    if (i > 0) choose = choose * (nprime - i + 1) / i;
    bool in_tail = side == Tail::Upper ? Rational(i) >= threshold : Rational(i) <= threshold;
    if (in_tail) numerator += choose * boost::multiprecision::pow(p, i) * boost::multiprecision::pow(q - p, nprime - i);
  }
  return ExactRational(numerator, boost::multiprecision::pow(q, nprime));
}

inline long double binomial_tail_exact(int nprime, const Rational& zeta, const Rational& threshold, Tail side) {
  return static_cast<long double>(WideFloat(binomial_tail_rational(nprime, zeta, threshold, side)));
}

struct ChernoffCheck {
  int nprime = 0;
  Rational zeta;
  int x = 0;
  WideFloat upper_tail;
  WideFloat upper_bound;
  WideFloat lower_tail;
  WideFloat lower_bound;
  bool ok() const { return upper_tail <= upper_bound && lower_tail <= lower_bound; }
};

struct ChernoffTable {
  std::vector<ChernoffCheck> rows;
  int violations = 0;
};

/// Both tails against both bounds for n' <= nmax, zeta in {0.1, ..., 0.9},
/// integer x in [1, n'], all in 50-digit arithmetic on exact tails.
inline ChernoffTable chernoff_domination(int nmax) {
  ChernoffTable table;
  for (int n = 1; n <= nmax; ++n) {
    for (int tenth = 1; tenth <= 9; ++tenth) {
      const Rational zeta(tenth, 10);
      const WideFloat z = WideFloat(tenth) / 10;
      for (int x = 1; x <= n; ++x) {
        ChernoffCheck c;
        c.nprime = n;
        c.zeta = zeta;
        c.x = x;
        const Rational mean = Rational(n) * zeta;
        c.upper_tail = WideFloat(binomial_tail_rational(n, zeta, mean + Rational(x), Tail::Upper));
        c.lower_tail = WideFloat(binomial_tail_rational(n, zeta, mean - Rational(x), Tail::Lower));
        c.upper_bound = chernoff_upper<WideFloat>(n, z, WideFloat(x));
        c.lower_bound = chernoff_lower<WideFloat>(n, z, WideFloat(x));
        if (!c.ok()) ++table.violations;
        table.rows.push_back(c);
      }
    }
  }
  return table;
}

struct BergeTutteReport {
  long long graphs = 0;
  long long value_mismatches = 0;
  long long audit_failures = 0;
  std::vector<std::string> problems;  // first few, for diagnostics
};

namespace detail {

inline void berge_tutte_one(const Graph& g, BergeTutteReport& r) {
  ++r.graphs;
  auto f = fractional_matching(g);
  auto def = max_deficiency(g);
  if (f.twice_value() != g.order() - def.value) {
    ++r.value_mismatches;
    if (r.problems.size() < 10) r.problems.push_back("value mismatch on " + write_graph(g));
  }
  if (!audit_matching(g, f).ok) {
    ++r.audit_failures;
    if (r.problems.size() < 10) r.problems.push_back("audit failure on " + write_graph(g));
  }
}

}  // namespace detail

/// Every labelled graph on n <= n_max vertices: 2 mu_f = n - max deficiency,
/// plus a support audit of each matching.
inline BergeTutteReport berge_tutte_exhaustive(int n_max) {
  if (n_max > 7) throw SizeLimitError("exhaustive Berge-Tutte sweep limited to n <= 7");
  BergeTutteReport r;
  for (int n = 0; n <= n_max; ++n) {
    std::vector<Edge> slots;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) slots.push_back({u, v});
    for (std::uint32_t mask = 0; mask < (1U << slots.size()); ++mask) {
      std::vector<Edge> e;
      for (std::size_t i = 0; i < slots.size(); ++i)
        if (mask >> i & 1U) e.push_back(slots[i]);
      detail::berge_tutte_one(Graph(n, std::move(e)), r);
    }
  }
  return r;
}

/// Random G(n, p) with n uniform in [n_min, n_max] and p uniform in (0, 1).
inline BergeTutteReport berge_tutte_random(int count, int n_min, int n_max, std::uint64_t seed) {
  BergeTutteReport r;
  Rng rng(mix_seed(seed, 0x6274ULL));
  for (int s = 0; s < count; ++s) {
    const int n = n_min + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n_max - n_min + 1)));
    const double p = uniform_unit(rng);
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (uniform_unit(rng) < p) e.push_back({u, v});
    detail::berge_tutte_one(Graph(n, std::move(e)), r);
  }
  return r;
}

struct SpotCheckInstance {
  std::string name;
  int n = 0;
  int k = 0;
  int cover_number = 0;
  int independence = 0;
  bool conjecture_ok = false;   // cover_number <= n / (k+1)
  bool ceiling_ok = false;      // cover_number <= ceil(n / (k+1))
  bool independence_ok = false; // cover_number <= alpha(G)
};

struct SpotCheckReport {
  std::vector<SpotCheckInstance> instances;
  int violations = 0;
  int independence_violations = 0;
};

struct SampleSpec {
  int k = 3;
  std::vector<int> orders{8};
  int samples = 100;  // per order
  std::uint64_t seed = 0;
  bool include_named = true;
};

inline SpotCheckInstance spot_check_one(const std::string& name, const Graph& g) {
  SpotCheckInstance s;
  s.name = name;
  s.n = g.order();
  auto k = g.regular_degree();
  if (!k) throw InvalidArgument("conjecture spot check needs a regular graph: " + name);
  s.k = *k;
  s.cover_number = min_path_cover_exact(g).cover_number;
  s.independence = independence_number(g);
  s.conjecture_ok = static_cast<long long>(s.cover_number) * (s.k + 1) <= s.n;
  s.ceiling_ok = s.cover_number <= (s.n + s.k) / (s.k + 1);
  s.independence_ok = s.cover_number <= s.independence;
  return s;
}

/// Exact path cover numbers of sampled k-regular graphs (plus named ones)
/// against n/(k+1) and against the independence number.
inline SpotCheckReport conjecture_spot_check(const SampleSpec& spec) {
  SpotCheckReport r;
  auto add = [&](const std::string& name, const Graph& g) {
    auto s = spot_check_one(name, g);
    r.violations += (s.conjecture_ok && s.ceiling_ok) ? 0 : 1;
    r.independence_violations += s.independence_ok ? 0 : 1;
    r.instances.push_back(std::move(s));
  };
  for (int n : spec.orders) {
    for (int i = 0; i < spec.samples; ++i) {
      GenSpec gs{n, spec.k, Family::RandomRegular, mix_seed(spec.seed, static_cast<std::uint64_t>(n) * 1'000'003 + i)};
      add("random-regular n=" + std::to_string(n) + " #" + std::to_string(i), random_regular(gs));
    }
  }
  if (spec.include_named) {
    if (spec.k == 3) {
      add("petersen", named::petersen());
      add("cube", named::cube());
      add("K_3,3", named::complete_bipartite(3, 3));
      add("2xK_4", named::disjoint_union({named::complete(4), named::complete(4)}));
    }
    add("K_" + std::to_string(spec.k + 1), named::complete(spec.k + 1));
  }
  return r;
}

}  // namespace pcover
