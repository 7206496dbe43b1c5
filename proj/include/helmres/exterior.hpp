// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "helmres/log_complex.hpp"
#include "helmres/quadrature.hpp"

namespace helmres::exterior {

// Outgoing Dirichlet-to-Neumann matrix of the half plane {x > L} on the
// aperture (-eps, eps), in the neck-mode basis:
//   L_E[k,l] = (1/2pi) int m(xi) F_k(xi) conj(F_l(conj xi)) dxi,
// with symbol m(xi) = i b(xi), b the outgoing square root of rho - xi^2
// (continued from the upper rho half-plane so that resonances just below the
// real axis see a continuous operator), and F_k the zero-extended transforms
// of the aperture modes.  Entries of opposite parity vanish identically.
struct ExteriorDtn {
  Cx rho;
  double eps;
  Eigen::MatrixXcd matrix;
  // Branch marker: +1 identifies the outgoing continuation used here.
  int branch = +1;
};

// oversample > 1 multiplies every fixed quadrature density (used by the
// refinement-doubling checks).
ExteriorDtn exterior_dtn(Cx rho, double eps, int K,
                         const specfun::QuadratureSpec& spec, int oversample = 1);

// Radiated power of an aperture coefficient vector carried in log scale:
// P = Im <L_E g, g> with the common exponential factored out; the result is
// the sign and natural-log magnitude of P.
SignedLog radiated_flux(const ExteriorDtn& dtn, const std::vector<LogComplex>& g);

// Outgoing field at (L + dx, y), dx >= 0, for plain-scale aperture
// coefficients.  dx = 0 returns the aperture trace itself (the construction
// satisfies the boundary condition by inversion).
Cx exterior_field(Cx rho, double eps, const std::vector<Cx>& g, double dx,
                  double y, const specfun::QuadratureSpec& spec);

}  // namespace helmres::exterior
