// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "helmres/quadrature.hpp"
#include "helmres/special_functions.hpp"

using namespace helmres;
using namespace helmres::specfun;

namespace {
QuadratureSpec tight() {
  QuadratureSpec s;
  s.abs_tol = 1e-12;
  s.rel_tol = 1e-12;
  s.max_subdivisions = 200000;
  return s;
}
}  // namespace

TEST_CASE("kronrod rule is exact on high-degree polynomials") {
  // Degree-20 monomial integrated exactly by a single 15-point panel; this
  // pins the hard-coded node/weight table.
  QuadResult r = gk15([](double x) { return Cx(std::pow(x, 20), 0.0); }, 0.0, 1.0);
  CHECK(std::abs(r.value.real() - 1.0 / 21.0) < 1e-15);
}

TEST_CASE("linear integrand") {
  QuadResult r = integrate([](double x) { return Cx(x, 0.0); }, 0.0, 1.0, tight());
  CHECK(r.value.real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.err_est <= 1e-12);
}

TEST_CASE("integrate is linear on random polynomial pairs") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    double c3 = u(rng), c2 = u(rng), c1 = u(rng), c0 = u(rng);
    double d2 = u(rng), d0 = u(rng);
    double alpha = u(rng), beta = u(rng);
    auto fp = [&](double x) { return Cx(((c3 * x + c2) * x + c1) * x + c0, 0.0); };
    auto gp = [&](double x) { return Cx(d2 * x * x + d0, 0.0); };
    auto combo = [&](double x) { return alpha * fp(x) + beta * gp(x); };
    QuadResult rf = integrate(fp, -1.0, 2.0, tight());
    QuadResult rg = integrate(gp, -1.0, 2.0, tight());
    QuadResult rc = integrate(combo, -1.0, 2.0, tight());
    Cx want = alpha * rf.value + beta * rg.value;
    CHECK(std::abs(rc.value - want) <= rf.err_est + rg.err_est + rc.err_est + 1e-13);
  }
}

TEST_CASE("inverse square root endpoint singularity") {
  QuadratureSpec s = tight();
  s.abs_tol = 1e-11;
  s.rel_tol = 1e-11;
  QuadResult r = integrate([](double x) { return Cx(1.0 / std::sqrt(x), 0.0); },
                           0.0, 1.0, s);
  CHECK(r.value.real() == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("log endpoint singularity") {
  QuadResult r = integrate([](double x) { return Cx(std::log(x), 0.0); }, 0.0,
                           1.0, tight());
  CHECK(r.value.real() == doctest::Approx(-1.0).epsilon(1e-11));
}

TEST_CASE("budget exhaustion raises NoConvergence") {
  QuadratureSpec s;
  s.abs_tol = 1e-14;
  s.rel_tol = 1e-14;
  s.max_subdivisions = 3;
  CHECK_THROWS_AS(
      (void)integrate([](double x) { return Cx(1.0 / std::sqrt(x), 0.0); }, 0.0,
                      1.0, s),
      Error);
}

TEST_CASE("semi-infinite with exponential decay hint") {
  QuadratureSpec s = tight();
  s.semi_infinite_decay_hint = 1.0;
  QuadResult r = integrate_ray([](double x) { return Cx(std::exp(-x), 0.0); },
                               0.0, s);
  CHECK(r.value.real() == doctest::Approx(1.0).epsilon(1e-9));
}

// Oscillatory integrands with algebraic tails; the values these must hit are
// the closed forms -1/2 + (pi/4) Si(pi) and pi^2/8.
TEST_CASE("slow oscillatory tails reach their closed forms") {
  QuadratureSpec s;
  s.abs_tol = 5e-10;
  s.rel_tol = 1e-9;
  s.max_subdivisions = 400000;

  auto core = [](double x) {
    // sin((x-1)pi/2) / (x^2-1), written through sinc to stay finite at x=1.
    return 0.5 * M_PI * sinc0(0.5 * M_PI * (x - 1.0)) / (x + 1.0);
  };
  QuadResult l1 = integrate_ray(
      [&](double x) {
        double g = core(x);
        return Cx(x * g * g, 0.0);
      },
      0.0, s);
  const double l1_closed = -0.5 + 0.25 * M_PI * si(M_PI);
  CHECK(std::fabs(l1.value.real() - l1_closed) < 2e-9);
  CHECK(l1.value.real() == doctest::Approx(0.9545).epsilon(2e-4));

  QuadResult l2 = integrate_ray(
      [&](double x) {
        double g = core(x);
        return Cx(g * g, 0.0);
      },
      0.0, s);
  CHECK(std::fabs(l2.value.real() - M_PI * M_PI / 8.0) < 2e-9);
}

TEST_CASE("spec validation") {
  QuadratureSpec s;
  s.abs_tol = -1.0;
  CHECK_THROWS_AS(s.validate(), Error);
  QuadratureSpec s2;
  s2.max_subdivisions = 0;
  CHECK_THROWS_AS(s2.validate(), Error);
}

TEST_CASE("gauss-legendre rule integrates polynomials exactly") {
  const GaussRule& rule = gauss_legendre(16);
  double acc = 0.0;
  for (int i = 0; i < 16; ++i) {
    acc += rule.weights[i] * std::pow(rule.nodes[i], 30);
  }
  CHECK(acc == doctest::Approx(2.0 / 31.0).epsilon(1e-13));
  double wsum = 0.0;
  for (double w : rule.weights) wsum += w;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
}
