// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "helmres/exterior.hpp"
#include "helmres/modes.hpp"
#include "helmres/special_functions.hpp"

using namespace helmres;
using namespace helmres::exterior;
using modes::DuctModeSet;
using specfun::hankel1;
using specfun::integrate;
using specfun::QuadratureSpec;

namespace {

QuadratureSpec qspec() {
  QuadratureSpec s;
  s.abs_tol = 1e-10;
  s.rel_tol = 1e-9;
  s.max_subdivisions = 200000;
  return s;
}

// Independent boundary-integral oracle on the aperture: the image-doubled
// free-space kernel in weak (integrated-by-parts) form,
//   L[k,l] = (i/2) int int H0(sqrt(rho)|y-y'|)
//                (rho psi_k(y) psi_l(y') - psi_k'(y) psi_l'(y')) dy' dy.
Cx maue_entry(Cx rho, double eps, int k, int l) {
  DuctModeSet set(eps, std::max(k, l));
  const Cx sq = specfun::psqrt(rho);
  QuadratureSpec inner;
  inner.abs_tol = 1e-10;
  inner.rel_tol = 1e-9;
  inner.max_subdivisions = 40000;
  QuadratureSpec outer = inner;
  outer.abs_tol = 1e-9;

  auto inner_int = [&](double y) {
    auto f = [&](double yp) {
      double r = std::fabs(y - yp);
      Cx h0 = (r == 0.0) ? Cx(0.0, 0.0) : hankel1(0, sq * r);
      return h0 * (rho * set.eval(k, y) * set.eval(l, yp) -
                   set.eval_deriv(k, y) * set.eval_deriv(l, yp));
    };
    // Integrable log singularity at yp = y: keep it at panel endpoints.
    Cx left = integrate(f, -eps, y, inner).value;
    Cx right = integrate(f, y, eps, inner).value;
    return left + right;
  };
  Cx total = integrate(inner_int, -eps, eps, outer).value;
  return Cx(0.0, 0.5) * total;
}

}  // namespace

TEST_CASE("parity entries vanish and matrix is symmetric") {
  ExteriorDtn dtn = exterior_dtn(Cx(20.0, 0.0), 0.2, 8, qspec());
  for (int k = 0; k < 8; ++k) {
    for (int l = 0; l < 8; ++l) {
      if ((k + l) % 2 == 1) CHECK(std::abs(dtn.matrix(k, l)) == 0.0);
      CHECK(std::abs(dtn.matrix(k, l) - dtn.matrix(l, k)) <= 1e-14);
    }
  }
  CHECK(dtn.matrix(0, 0).imag() > 0.0);  // propagating band radiates
}

TEST_CASE("boundary-integral oracle agreement") {
  const Cx rho(20.0, 0.0);
  const double eps = 0.2;
  ExteriorDtn dtn = exterior_dtn(rho, eps, 8, qspec());
  double scale = dtn.matrix.norm();
  for (int k = 1; k <= 8; ++k) {
    for (int l = k; l <= 8; ++l) {
      if ((k + l) % 2 == 1) continue;
      Cx oracle = maue_entry(rho, eps, k, l);
      CHECK(std::abs(dtn.matrix(k - 1, l - 1) - oracle) <= 1e-6 * scale);
    }
  }
}

TEST_CASE("energy positivity over random coefficient vectors") {
  ExteriorDtn dtn = exterior_dtn(Cx(19.74, 0.0), 0.25, 10, qspec());
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXcd gv(10);
    for (int i = 0; i < 10; ++i) gv(i) = Cx(u(rng), u(rng));
    Cx quad = gv.adjoint() * (dtn.matrix * gv);
    CHECK(quad.imag() >= -1e-10 * gv.squaredNorm());
  }
}

TEST_CASE("branch continuity from below the real axis") {
  const double eps = 0.25;
  ExteriorDtn real_axis = exterior_dtn(Cx(18.0, 0.0), eps, 6, qspec());
  for (double w : {1e-4, 1e-6, 1e-8}) {
    ExteriorDtn below = exterior_dtn(Cx(18.0, -w), eps, 6, qspec());
    double drift = (below.matrix - real_axis.matrix).norm() / real_axis.matrix.norm();
    CHECK(drift < 1e-3);
    if (w <= 1e-6) CHECK(drift < 1e-5);
  }
}

TEST_CASE("doubling modes and quadrature leaves entries put") {
  const Cx rho(19.74, 0.0);
  const double eps = 0.2;
  ExteriorDtn a = exterior_dtn(rho, eps, 6, qspec(), 1);
  ExteriorDtn b = exterior_dtn(rho, eps, 12, qspec(), 2);
  double drift = 0.0;
  for (int k = 0; k < 6; ++k) {
    for (int l = 0; l < 6; ++l) {
      drift = std::max(drift, std::abs(a.matrix(k, l) - b.matrix(k, l)));
    }
  }
  CHECK(drift < 1e-8 * a.matrix.norm());
}

TEST_CASE("radiated flux: degenerate input, unit mode, quadratic scaling") {
  ExteriorDtn dtn = exterior_dtn(Cx(20.0, 0.0), 0.2, 6, qspec());
  std::vector<LogComplex> zero(6);  // all-zero vector
  CHECK_THROWS_AS((void)radiated_flux(dtn, zero), Error);

  std::vector<LogComplex> e1(6);
  e1[0] = LogComplex::one();
  SignedLog p = radiated_flux(dtn, e1);
  CHECK(p.sign == +1);
  CHECK(p.log_abs == doctest::Approx(std::log(dtn.matrix(0, 0).imag())).epsilon(1e-12));

  // Scaling by c multiplies the power by |c|^2 and keeps the sign, even for
  // c far below double range.
  std::vector<LogComplex> scaled = e1;
  LogComplex c = LogComplex::from_exponent(Cx(-800.0, 1.2));
  for (auto& v : scaled) v = v * c;
  SignedLog p2 = radiated_flux(dtn, scaled);
  CHECK(p2.sign == +1);
  CHECK(p2.log_abs == doctest::Approx(p.log_abs - 1600.0).epsilon(1e-12));
}

TEST_CASE("field: boundary trace and parity propagation") {
  const Cx rho(19.74, 0.0);
  const double eps = 0.2;
  std::vector<Cx> g_even = {Cx(0.0, 0.0), Cx(1.0, 0.0), Cx(0.0, 0.0), Cx(0.3, 0.1)};
  // Only even-index (odd-in-y) modes: field odd in y.
  for (double y : {0.05, 0.13, 0.31}) {
    Cx up = exterior_field(rho, eps, g_even, 0.15, y, qspec());
    Cx dn = exterior_field(rho, eps, g_even, 0.15, -y, qspec());
    CHECK(std::abs(up + dn) <= 1e-8 * (std::abs(up) + 1e-12));
  }
  // Dirichlet wall outside the aperture at dx = 0, and the trace inside.
  std::vector<Cx> g1 = {Cx(1.0, 0.0)};
  DuctModeSet set(eps, 1);
  CHECK(exterior_field(rho, eps, g1, 0.0, 0.35, qspec()) == Cx(0.0, 0.0));
  CHECK(exterior_field(rho, eps, g1, 0.0, 0.05, qspec()).real() ==
        doctest::Approx(set.eval(1, 0.05)).epsilon(1e-12));
  // Near-wall smallness off the aperture: |u| is O(dx), far below the
  // aperture amplitude scale.
  double apmax = set.eval(1, 0.0);
  for (double y : {0.35, 0.5}) {
    Cx v = exterior_field(rho, eps, g1, 0.004 * eps, y, qspec());
    CHECK(std::abs(v) < 0.02 * apmax);
  }
}

TEST_CASE("field: helmholtz residual via extrapolated stencil") {
  const Cx rho(19.74, 0.0);
  const double eps = 0.2;
  std::vector<Cx> g = {Cx(1.0, 0.0), Cx(0.0, 0.0), Cx(0.2, 0.0)};
  auto u = [&](double dx, double y) {
    return exterior_field(rho, eps, g, dx, y, qspec());
  };
  double dx0 = 0.7, y0 = 0.21;
  Cx u0 = u(dx0, y0);
  auto resid = [&](double h) {
    Cx lap = (u(dx0 + h, y0) + u(dx0 - h, y0) + u(dx0, y0 + h) +
              u(dx0, y0 - h) - 4.0 * u0) /
             (h * h);
    return lap + rho * u0;
  };
  Cx r1 = resid(2e-3);
  Cx r2 = resid(1e-3);
  Cx extrap = (4.0 * r2 - r1) / 3.0;  // removes the O(h^2) stencil term
  CHECK(std::abs(extrap) <= 1e-6 * std::abs(rho * u0));
}

TEST_CASE("field: cylindrical far-field decay exponent") {
  const Cx rho(19.74, 0.0);
  const double eps = 0.2;
  std::vector<Cx> g = {Cx(1.0, 0.0)};
  // Sample |u| along a ray at fixed angle; fit log|u| against log r.
  const double cth = std::cos(0.5), sth = std::sin(0.5);
  std::vector<double> lr, lu;
  for (double r : {2.0, 4.0, 8.0, 16.0, 20.0}) {
    Cx v = exterior_field(rho, eps, g, r * cth, r * sth, qspec());
    lr.push_back(std::log(r));
    lu.push_back(std::log(std::abs(v)));
  }
  double n = lr.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < lr.size(); ++i) {
    sx += lr[i];
    sy += lu[i];
    sxx += lr[i] * lr[i];
    sxy += lr[i] * lu[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.1));
}
