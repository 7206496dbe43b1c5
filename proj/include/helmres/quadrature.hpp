// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "helmres/errors.hpp"
#include "helmres/log_complex.hpp"

namespace helmres::specfun {

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 20000;
  // Exponential decay rate used to truncate semi-infinite tails.  Zero means
  // "unknown": the ray integrator then marches geometric panels until the
  // contributions fall below tolerance.
  double semi_infinite_decay_hint = 0.0;

  void validate() const {
    require(abs_tol > 0.0 && rel_tol > 0.0, ErrorCode::InvalidArgument,
            "quadrature tolerances must be positive");
    require(max_subdivisions >= 1, ErrorCode::InvalidArgument,
            "max_subdivisions must be >= 1");
    require(semi_infinite_decay_hint >= 0.0, ErrorCode::InvalidArgument,
            "decay hint must be non-negative");
  }
};

struct QuadResult {
  Cx value{0.0, 0.0};
  double err_est = 0.0;
  int segments = 0;
};

using Integrand = std::function<Cx(double)>;

// Adaptive Gauss-Kronrod 15(7) over a finite interval.  Endpoint values are
// never sampled, so integrable endpoint singularities (log, inverse square
// root) are admissible given enough subdivision budget.
QuadResult integrate(const Integrand& f, double a, double b,
                     const QuadratureSpec& spec);

// Semi-infinite ray [a, +inf).  With a positive decay hint the tail is
// truncated at the point where exp(-hint * (x - a)) reaches the tolerance;
// otherwise geometric panels are accumulated until they stop contributing.
QuadResult integrate_ray(const Integrand& f, double a,
                         const QuadratureSpec& spec);

// Non-adaptive building blocks shared by the DtN assembly code.
struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

// Gauss-Legendre rule computed by Newton iteration; machine-precision nodes.
const GaussRule& gauss_legendre(int n);

// Single non-adaptive GK15 application returning (value, error estimate).
QuadResult gk15(const Integrand& f, double a, double b);

}  // namespace helmres::specfun
