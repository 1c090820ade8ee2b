#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "pcover/errors.hpp"
#include "pcover/graph.hpp"
#include "pcover/random.hpp"
#include "pcover/rational.hpp"

namespace pcover {

struct ReservoirParams {
  Rational c;
  Rational gamma;
  Rational eps;
  std::uint64_t seed = 0;
  int max_attempts = 50;
};

/// Open interval (lo, hi).
struct Window {
  Rational lo;
  Rational hi;
  bool contains(std::int64_t x) const { return lo < Rational(x) && Rational(x) < hi; }
  bool has_integer() const { return Rational(lo.floor() + 1) < hi; }
};

struct ReservoirWindows {
  Window size;    // |R| in ((1-eps) gamma n, (1+eps) gamma n)
  Window degree;  // deg(v, R) in ((1-eps) c gamma n, (1+eps) c gamma n)
};

inline ReservoirWindows reservoir_windows(int n, const Rational& c, const Rational& gamma, const Rational& eps) {
  const Rational mean = gamma * Rational(n);
  const Rational lo = Rational(1) - eps;
  const Rational hi = Rational(1) + eps;
  return {{lo * mean, hi * mean}, {lo * c * mean, hi * c * mean}};
}

struct ReservoirResult {
  VertexSet r;
  int attempts = 0;
};

/// Both windows, checked directly on a candidate set.
inline bool reservoir_windows_ok(const Graph& g, const VertexSet& r, const ReservoirWindows& w) {
  if (!w.size.contains(static_cast<std::int64_t>(r.size()))) return false;
  const Bitset bits = r.to_bitset(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v)
    if (!w.degree.contains(static_cast<std::int64_t>(g.row(v).and_count(bits)))) return false;
  return true;
}

/// Independent inclusion with probability gamma, resampled until |R| and every
/// vertex's degree into R fall in their windows.
inline ReservoirResult reservoir(const Graph& g, const ReservoirParams& p) {
  if (!(p.gamma > Rational(0)) || p.gamma > Rational(1)) throw ParameterError("reservoir needs 0 < gamma <= 1");
  if (!(p.eps > Rational(0))) throw ParameterError("reservoir needs eps > 0");
  if (!(p.c > Rational(0)) || p.c > Rational(1)) throw ParameterError("reservoir needs 0 < c <= 1");
  const auto w = reservoir_windows(g.order(), p.c, p.gamma, p.eps);
  if (!w.size.has_integer()) throw ParameterError("reservoir size window " + w.size.lo.to_string() + ".." +
                                                  w.size.hi.to_string() + " contains no integer");
  if (!w.degree.has_integer()) throw ParameterError("reservoir degree window " + w.degree.lo.to_string() + ".." +
                                                    w.degree.hi.to_string() + " contains no integer");
  Rng rng(mix_seed(p.seed, 0x726573ULL));
  const auto den = static_cast<std::uint64_t>(p.gamma.den());
  const auto num = static_cast<std::uint64_t>(p.gamma.num());
  for (int attempt = 1; attempt <= p.max_attempts; ++attempt) {
    std::vector<Vertex> pick;
    for (Vertex v = 0; v < g.order(); ++v)
      if (uniform_below(rng, den) < num) pick.push_back(v);
    VertexSet r(std::move(pick));
    if (reservoir_windows_ok(g, r, w)) return {std::move(r), attempt};
  }
  throw ReservoirFailed("reservoir: no valid sample in " + std::to_string(p.max_attempts) + " attempts");
}

/// One unchecked gamma-sample with the same stream as the first attempt of
/// reservoir().
inline VertexSet plain_sample(const Graph& g, const Rational& gamma, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x726573ULL));
  const auto den = static_cast<std::uint64_t>(gamma.den());
  const auto num = static_cast<std::uint64_t>(std::max<std::int64_t>(gamma.num(), 0));
  std::vector<Vertex> pick;
  for (Vertex v = 0; v < g.order(); ++v)
    if (uniform_below(rng, den) < num) pick.push_back(v);
  return VertexSet(std::move(pick));
}

}  // namespace pcover
