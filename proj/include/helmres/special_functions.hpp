// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "helmres/log_complex.hpp"
#include "helmres/quadrature.hpp"

namespace helmres::specfun {

// sin(x)/x, stable through x = 0.
inline double sinc0(double x) {
  if (std::fabs(x) < 1e-4) {
    double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

// Principal square root: Re w >= 0, branch cut on the negative reals, and for
// purely negative real input the root with Im w >= 0.
Cx psqrt(Cx z);

// Sine integral, absolute accuracy ~1e-14 for x >= 0.
double si(double x);

// Exponential integral E1(z) for complex z off the negative real axis.
// Power series for small |z|, modified Lentz continued fraction otherwise.
Cx e1(Cx z);

// Outgoing Hankel function H^(1)_k(z) for integer k >= 0, Re z > 0.
// Ascending series for H0/H1 at moderate |z|, large-argument expansion
// beyond, forward recurrence in the order.  Throws LossOfPrecision when the
// result would overflow or the recurrence cannot hold relative accuracy;
// callers needing large orders use hankel1_log.
Cx hankel1(int k, Cx z);

// d/dz H^(1)_k(z).
Cx hankel1_derivative(int k, Cx z);

// Log-domain H^(1)_k(z) for k >= 1 via the contour representation
// split into a saddle-dominated real-axis piece plus two O(1) pieces.
// Accurate for |Im z| << Re z; throws ContourFailure if the pieces fail to
// converge.
LogComplex hankel1_log(int k, Cx z);

// Leading large-order term: -i sqrt(2/pi) k^(k-1/2) (2/(e z))^k, as LogComplex.
LogComplex hankel1_large_order_leading(int k, Cx z);

}  // namespace helmres::specfun
