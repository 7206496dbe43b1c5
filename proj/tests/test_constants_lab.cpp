// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "helmres/constants_lab.hpp"
#include "helmres/special_functions.hpp"

using namespace helmres;
using namespace helmres::lab;

TEST_CASE("gamma2 quadrature vs closed form") {
  ConstantReport r = gamma2();
  CHECK(r.pass);
  CHECK(r.difference < 1e-9);
  CHECK(r.closed_form == doctest::Approx(0.8796).epsilon(1.2e-3));
  CHECK(r.closed_form * r.closed_form < 0.8);
}

TEST_CASE("l constants") {
  auto rs = l_constants();
  REQUIRE(rs.size() == 3);
  CHECK(rs[0].pass);
  CHECK(rs[0].closed_form == doctest::Approx(0.9545).epsilon(6e-5));
  CHECK(std::fabs(rs[0].quadrature - rs[0].closed_form) < 1e-9);
  CHECK(rs[1].pass);
  CHECK(std::fabs(rs[1].quadrature - M_PI * M_PI / 8.0) < 1e-9);
  CHECK(rs[2].pass);  // Gamma2 = (2 sqrt2/pi) sqrt(L1)
}

TEST_CASE("cubic tail sum and the gap inequality") {
  GapReport g = k3_gap();
  // zeta(3) - 1 - 1/8
  CHECK(g.cubic_sum == doctest::Approx(0.0770569).epsilon(1e-6));
  CHECK(g.below_quarter);
  CHECK(g.below_four);
  CHECK(g.margin_to_four > 3.0);
}

TEST_CASE("dimension gate values and the pass set") {
  CHECK(dimension_gate(2).bound == doctest::Approx(1.0337).epsilon(1e-4));
  CHECK(dimension_gate(12).bound == doctest::Approx(3.5367).epsilon(1e-4));
  CHECK(dimension_gate(13).bound == doctest::Approx(4.0999).epsilon(1e-4));
  for (const auto& row : dimension_gate_table(2, 16)) {
    CHECK(row.pass == (row.n <= 12));
  }
}

TEST_CASE("lattice constants at n = 3") {
  LatticeReport r = j_constants(3);
  CHECK(r.j1 > 0.0);
  CHECK(r.j1_bound_holds);
  CHECK(r.j1 * r.j1 < r.j1_sq_bound);
  CHECK(r.j2_bound_holds);
  CHECK(r.j2_bound - r.j2 > 0.05);  // comfortably positive margin
  // 4 sqrt(L2) = pi sqrt(2), so the product bound equals sqrt(L1/L2).
  CHECK(r.j2_bound == doctest::Approx(0.879599346).epsilon(1e-8));
}

TEST_CASE("lattice constants at n = 4 and 5 via quasi-random integration") {
  for (int n : {4, 5}) {
    LatticeReport r = j_constants(n, 777);
    CHECK(r.j1_bound_holds);
    CHECK(r.j2_bound_holds);
    CHECK(r.j2_stat_err < 0.05 * (r.j2_bound - r.j2));
  }
}

TEST_CASE("removable singularity of the tensor integrand") {
  // sin^2((x-1)pi/2)/(x^2-1)^2 -> (pi/4)^2 as x -> 1, so the 2-factor
  // integrand at x = (1,1) tends to sqrt(2) (pi/4)^4.
  auto core = [](double x) {
    return 0.5 * M_PI * specfun::sinc0(0.5 * M_PI * (x - 1.0)) / (x + 1.0);
  };
  double g1 = core(1.0) * core(1.0);
  CHECK(g1 == doctest::Approx(std::pow(0.25 * M_PI, 2)).epsilon(1e-14));
  double val = std::sqrt(2.0) * g1 * g1;
  CHECK(std::isfinite(val));
  CHECK(val == doctest::Approx(std::sqrt(2.0) * std::pow(0.25 * M_PI, 4)));
}

TEST_CASE("hankel large-order table") {
  HankelOrderReport r = hankel_order_check(0.6, 0.9, Cx(4.0, 0.0), {8, 16, 32, 64});
  CHECK(r.pass);
  for (double h : r.halving) {
    CHECK(h >= 0.35);
    CHECK(h <= 0.65);
  }
  CHECK(r.c_uniformity < 3.0);
  // Spot values at R = 2, rho = 4 (z = 4): the 1/k coefficient there is
  // close to z^2/4, so the k = 16 error sits near 5/16 and halves at k = 32.
  auto err_at = [](int k) {
    LogComplex ratio = specfun::hankel1_log(k, Cx(4.0, 0.0)) /
                       specfun::hankel1_large_order_leading(k, Cx(4.0, 0.0));
    return std::abs(ratio.to_complex() - 1.0);
  };
  double e16 = err_at(16), e32 = err_at(32);
  CHECK(e16 < 0.35);
  CHECK(e32 / e16 > 0.35);
  CHECK(e32 / e16 < 0.65);
}

TEST_CASE("wkb normalization") {
  WkbReport real_case = wkb_check(Cx(4.0, 0.0), 5.0);
  CHECK(real_case.pass);
  CHECK(real_case.calL.imag() == 0.0);
  CHECK(real_case.limit_defect < 1e-6);

  WkbReport cplx = wkb_check(Cx(4.0, -1e-3), 5.0);
  CHECK(cplx.calL.imag() < 0.0);
  CHECK(cplx.tau_bound_holds);
  CHECK(std::isfinite(cplx.c0_threshold));
  CHECK(cplx.pass);
}

TEST_CASE("ode tail split: real and complex decay rates") {
  OdeTailReport r1 = ode_tail_split_check(Cx(9.0, 0.0), 1.0, 1.5);
  CHECK(r1.pass);
  CHECK(r1.ode_residual <= 1e-6);
  CHECK(r1.endpoint <= 1e-8);
  CHECK(r1.exponent_signs_ok);
  CHECK(r1.oracle_defect <= 1e-9);

  OdeTailReport r2 = ode_tail_split_check(Cx(9.0, 1.5), 1.0, 1.5);
  CHECK(r2.pass);
}

TEST_CASE("sqrt-linear maximum") {
  MaxCheckReport sym = max_of_sqrt_linear_check(1.0, 1.0, 1.0, 1.0);
  CHECK(sym.pass);
  CHECK(sym.closed_value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(sym.grid_location == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-7));

  MaxCheckReport deg = max_of_sqrt_linear_check(1.3, 0.0, 2.0, 1.7);
  CHECK(deg.pass);
  CHECK(deg.closed_location == 0.0);
  CHECK(deg.closed_value == doctest::Approx(1.3 * 1.7).epsilon(1e-14));
}
