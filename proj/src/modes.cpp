// SPDX-License-Identifier: Apache-2.0
#include "helmres/modes.hpp"

namespace helmres::modes {

using specfun::psqrt;
using specfun::sinc0;

Cx theta(int k, Cx rho, double eps) {
  require(k >= 1, ErrorCode::InvalidArgument, "theta requires k >= 1");
  require(eps > 0.0, ErrorCode::InvalidArgument, "theta requires eps > 0");
  const double a = DuctModeSet::alpha(k);
  return psqrt(Cx(a * a, 0.0) - eps * eps * rho);
}

Cx beta(int j, Cx rho, double eps1) {
  require(j >= 1, ErrorCode::InvalidArgument, "beta requires j >= 1");
  require(eps1 > 0.0, ErrorCode::InvalidArgument, "beta requires eps1 > 0");
  const double a = DuctModeSet::alpha(j);
  return Cx(a * a / (eps1 * eps1), 0.0) - rho;
}

void validate_box_halfwidth(double eps1, double lambda0) {
  require(eps1 > 0.0, ErrorCode::InvalidArgument, "eps1 must be positive");
  require(M_PI * M_PI / (4.0 * eps1 * eps1) > lambda0, ErrorCode::InvalidArgument,
          "box half-width too large: pi^2/(4 eps1^2) must exceed lambda0");
}

double overlap_mu(int k, double eps, double eps1) {
  require(k >= 1, ErrorCode::InvalidArgument, "overlap_mu requires k >= 1");
  require(0.0 < eps && eps < eps1, ErrorCode::InvalidArgument,
          "overlap_mu requires 0 < eps < eps1");
  if (k % 2 == 0) return 0.0;
  const double r = eps / eps1;
  const double sign = ((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  // k^2 - r^2 >= 1 - r^2 > 0, so the denominator never degenerates.
  return sign * 4.0 * k * std::sqrt(r) * std::cos(0.5 * M_PI * r) /
         (M_PI * (double(k) * k - r * r));
}

double overlap_nu(int j, double eps, double eps1) {
  require(j >= 1, ErrorCode::InvalidArgument, "overlap_nu requires j >= 1");
  require(0.0 < eps && eps < eps1, ErrorCode::InvalidArgument,
          "overlap_nu requires 0 < eps < eps1");
  if (j % 2 == 0) return 0.0;
  const double r = eps / eps1;
  const double u = r * j - 1.0;  // removable point at u = 0
  return 2.0 * std::sqrt(r) * sinc0(0.5 * M_PI * u) / (u + 2.0);
}

double tensor_overlap(const MultiIndex& idx, double eps, double eps1,
                      OverlapKind kind) {
  double p = 1.0;
  for (int c : idx.components) {
    p *= (kind == OverlapKind::Mu) ? overlap_mu(c, eps, eps1)
                                   : overlap_nu(c, eps, eps1);
    if (p == 0.0) return 0.0;
  }
  return p;
}

}  // namespace helmres::modes
