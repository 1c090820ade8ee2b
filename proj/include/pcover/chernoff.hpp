#pragma once

#include <cmath>

#include "pcover/errors.hpp"

namespace pcover {

namespace detail {

template <class Real>
void check_chernoff_domain(int nprime, const Real& zeta, const Real& x) {
  if (nprime < 1) throw InvalidArgument("chernoff bound needs n' >= 1");
  if (!(zeta > Real(0)) || !(zeta < Real(1))) throw InvalidArgument("chernoff bound needs 0 < zeta < 1");
  if (!(x > Real(0))) throw InvalidArgument("chernoff bound needs x > 0");
}

}  // namespace detail

/// Bound on P[Bin(n', zeta) >= n' zeta + x]: exp(-x^2 / (2 n' zeta + x/3)).
template <class Real = double>
Real chernoff_upper(int nprime, const Real& zeta, const Real& x) {
  using std::exp;
  detail::check_chernoff_domain(nprime, zeta, x);
  return exp(-(x * x) / (Real(2 * nprime) * zeta + x / Real(3)));
}

/// Bound on P[Bin(n', zeta) <= n' zeta - x]: exp(-x^2 / (2 n' zeta)).
template <class Real = double>
Real chernoff_lower(int nprime, const Real& zeta, const Real& x) {
  using std::exp;
  detail::check_chernoff_domain(nprime, zeta, x);
  return exp(-(x * x) / (Real(2 * nprime) * zeta));
}

}  // namespace pcover
