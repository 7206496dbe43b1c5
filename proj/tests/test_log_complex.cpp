// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "helmres/log_complex.hpp"

using helmres::Cx;
using helmres::LogAccumulator;
using helmres::LogComplex;
using helmres::SignedLog;

TEST_CASE("round trip through complex") {
  Cx z(3.0, -4.0);
  LogComplex lz = LogComplex::from(z);
  CHECK(lz.log_mag == doctest::Approx(std::log(5.0)).epsilon(1e-15));
  Cx back = lz.to_complex();
  CHECK(back.real() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(back.imag() == doctest::Approx(-4.0).epsilon(1e-14));
}

TEST_CASE("multiplication adds exponents and wraps phase") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> mag(-3.0, 3.0), ph(-3.1, 3.1);
  for (int i = 0; i < 200; ++i) {
    Cx a = std::exp(mag(rng)) * Cx(std::cos(ph(rng)), std::sin(ph(rng)));
    Cx b = std::exp(mag(rng)) * Cx(std::cos(ph(rng)), std::sin(ph(rng)));
    LogComplex p = LogComplex::from(a) * LogComplex::from(b);
    CHECK(p.phase > -M_PI);
    CHECK(p.phase <= M_PI);
    Cx want = a * b;
    CHECK(p.to_complex().real() == doctest::Approx(want.real()).epsilon(1e-12));
    CHECK(p.to_complex().imag() == doctest::Approx(want.imag()).epsilon(1e-12));
  }
}

TEST_CASE("exponentially small products stay exact in the exponent") {
  // exp(-1000) * exp(-1500) is far below double range but exact here.
  LogComplex a = LogComplex::from_exponent(Cx(-1000.0, 0.3));
  LogComplex b = LogComplex::from_exponent(Cx(-1500.0, -0.1));
  LogComplex p = a * b;
  CHECK(p.log_mag == doctest::Approx(-2500.0).epsilon(1e-15));
  CHECK(p.phase == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("to_complex overflow raises") {
  LogComplex big = LogComplex::from_exponent(Cx(1000.0, 0.0));
  CHECK_THROWS_AS((void)big.to_complex(), helmres::Error);
}

TEST_CASE("addition against the dominant term") {
  LogComplex a = LogComplex::from(Cx(2.0, 0.0));
  LogComplex b = LogComplex::from(Cx(0.0, 1e-8));
  Cx s = (a + b).to_complex();
  CHECK(s.real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.imag() == doctest::Approx(1e-8).epsilon(1e-12));
  // Adding a term hundreds of orders below leaves the value unchanged.
  LogComplex tiny = LogComplex::from_exponent(Cx(-900.0, 0.0));
  CHECK((a + tiny).log_mag == doctest::Approx(a.log_mag).epsilon(1e-15));
}

TEST_CASE("accumulator matches direct summation at mixed scales") {
  LogAccumulator acc;
  Cx direct(0.0, 0.0);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    Cx t(u(rng), u(rng));
    direct += t;
    acc.add(LogComplex::from(t));
  }
  Cx got = acc.value().to_complex();
  CHECK(std::abs(got - direct) <= 1e-13 * std::abs(direct));
}

TEST_CASE("signed log round trip") {
  SignedLog s{-1, std::log(0.25)};
  CHECK(s.to_double() == doctest::Approx(-0.25).epsilon(1e-15));
  SignedLog zero;
  CHECK(zero.to_double() == 0.0);
}

TEST_CASE("phase wrap lands in (-pi, pi]") {
  CHECK(helmres::wrap_phase(M_PI) == doctest::Approx(M_PI));
  CHECK(helmres::wrap_phase(-M_PI) == doctest::Approx(M_PI));
  CHECK(helmres::wrap_phase(3.0 * M_PI) == doctest::Approx(M_PI));
  CHECK(helmres::wrap_phase(0.5) == doctest::Approx(0.5));
}
