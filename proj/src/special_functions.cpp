// SPDX-License-Identifier: Apache-2.0
#include "helmres/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace helmres::specfun {

namespace {
constexpr double kEulerGamma = 0.57721566490153286060651209;

// Ascending series for J0, J1, Y0, Y1; good to ~1e-12 relative for |z| <= 13.
void bessel01_series(Cx z, Cx& j0, Cx& j1, Cx& y0, Cx& y1) {
  const Cx u = 0.25 * z * z;
  Cx term(1.0, 0.0), s0(0.0, 0.0);
  j0 = Cx(1.0, 0.0);
  double hn = 0.0;
  for (int n = 1; n <= 90; ++n) {
    term *= -u / double(n * n);
    hn += 1.0 / n;
    j0 += term;
    s0 += -term * hn;  // -sum h_n (-u)^n/(n!)^2
    if (std::abs(term) < 1e-18 * (std::abs(j0) + 1e-30) && n > 4) break;
  }
  Cx s1(1.0, 0.0);  // n = 0 term of sum (h_n + h_{n+1}) (-u)^n / (n!(n+1)!)
  term = Cx(1.0, 0.0);
  j1 = Cx(1.0, 0.0);
  double ha = 0.0, hb = 1.0;
  for (int n = 1; n <= 90; ++n) {
    term *= -u / double(n * (n + 1));
    ha += 1.0 / n;
    hb += 1.0 / (n + 1);
    j1 += term;
    s1 += term * (ha + hb);
    if (std::abs(term) < 1e-18 * (std::abs(j1) + 1e-30) && n > 4) break;
  }
  j1 *= 0.5 * z;
  const Cx lg = std::log(0.5 * z) + kEulerGamma;
  y0 = (2.0 / M_PI) * (lg * j0 + s0);
  y1 = (2.0 / M_PI) * (lg * j1 - 1.0 / z) - (z / (2.0 * M_PI)) * s1;
}

// Large-argument expansion of H^(1)/H^(2) for order k, |z| >= ~13.
Cx hankel_asymptotic(int k, Cx z, int kind) {
  const double sgn = (kind == 1) ? 1.0 : -1.0;
  const Cx w = z - Cx(0.5 * M_PI * k + 0.25 * M_PI, 0.0);
  Cx sum(0.0, 0.0);
  Cx term(1.0, 0.0);
  double prev = std::numeric_limits<double>::max();
  const double fourk2 = 4.0 * k * k;
  for (int j = 0; j < 60; ++j) {
    double mag = std::abs(term);
    if (mag > prev) break;  // passed the smallest term of the expansion
    sum += term;
    prev = mag;
    double odd = 2.0 * j + 1.0;
    term *= sgn * Cx(0.0, 1.0) * Cx(fourk2 - odd * odd, 0.0) / (8.0 * (j + 1.0) * z);
    if (mag < 1e-18 * std::abs(sum)) break;
  }
  return std::sqrt(2.0 / (M_PI * z)) * std::exp(sgn * Cx(0.0, 1.0) * w) * sum;
}

void bessel01_base(Cx z, Cx& j0, Cx& j1, Cx& y0, Cx& y1) {
  if (std::abs(z) <= 13.0) {
    bessel01_series(z, j0, j1, y0, y1);
    return;
  }
  Cx h0p = hankel_asymptotic(0, z, 1), h0m = hankel_asymptotic(0, z, 2);
  Cx h1p = hankel_asymptotic(1, z, 1), h1m = hankel_asymptotic(1, z, 2);
  j0 = 0.5 * (h0p + h0m);
  j1 = 0.5 * (h1p + h1m);
  y0 = (h0p - h0m) / Cx(0.0, 2.0);
  y1 = (h1p - h1m) / Cx(0.0, 2.0);
}

// J_0..J_kmax by Miller backward recurrence with the even-order sum
// normalization J_0 + 2 sum_m J_{2m} = 1 (valid for complex argument).
std::vector<Cx> bessel_j_upto(int kmax, Cx z) {
  const double az = std::abs(z);
  int start = kmax + int(1.3 * az) + 28 + int(2.0 * std::sqrt(double(kmax) + az));
  if (start % 2 == 1) ++start;
  std::vector<Cx> out(kmax + 1, Cx(0.0, 0.0));
  Cx jp(0.0, 0.0), jc(1e-280, 0.0);
  Cx norm(0.0, 0.0);
  for (int m = start; m >= 1; --m) {
    Cx jm = (2.0 * m / z) * jc - jp;
    jp = jc;
    jc = jm;
    int order = m - 1;
    if (order <= kmax) out[order] = jc;
    if (order > 0 && order % 2 == 0) norm += 2.0 * jc;
    if (std::abs(jc) > 1e250) {
      const double f = 1e-250;
      jc *= f;
      jp *= f;
      norm *= f;
      for (auto& v : out) v *= f;
    }
  }
  norm += jc;  // J_0 candidate
  require(norm != Cx(0.0, 0.0), ErrorCode::LossOfPrecision, "miller normalization");
  for (auto& v : out) v /= norm;
  return out;
}

}  // namespace

Cx psqrt(Cx z) {
  if (z.imag() == 0.0) return std::sqrt(Cx(z.real(), +0.0));
  return std::sqrt(z);
}

Cx e1(Cx z) {
  require(!(z.imag() == 0.0 && z.real() <= 0.0), ErrorCode::InvalidArgument,
          "e1 undefined on the branch cut");
  if (std::abs(z) <= 4.0) {
    // E1(z) = -gamma - log z + sum (-1)^{n+1} z^n / (n n!)
    Cx sum(0.0, 0.0), term(1.0, 0.0);
    for (int n = 1; n <= 64; ++n) {
      term *= -z / double(n);
      Cx add = -term / double(n);
      sum += add;
      if (std::abs(add) < 1e-18 * (std::abs(sum) + 1e-30)) break;
    }
    return -kEulerGamma - std::log(z) + sum;
  }
  // Modified Lentz for E1(z) = e^{-z}/(z+ 1/(1+ 1/(z+ 2/(1+ 2/(z+ ...))))).
  const double tiny = 1e-290;
  Cx f(tiny, 0.0), C = f, D(0.0, 0.0);
  auto step = [&](Cx a, Cx b) {
    D = b + a * D;
    if (D == Cx(0.0, 0.0)) D = tiny;
    C = b + a / C;
    if (C == Cx(0.0, 0.0)) C = tiny;
    D = 1.0 / D;
    Cx delta = C * D;
    f *= delta;
    return std::abs(delta - 1.0);
  };
  step(Cx(1.0, 0.0), z);
  for (int n = 1; n <= 400; ++n) {
    double d1 = step(Cx(double(n), 0.0), Cx(1.0, 0.0));
    double d2 = step(Cx(double(n), 0.0), z);
    if (n > 24 && d1 < 1e-17 && d2 < 1e-17) break;
  }
  return std::exp(-z) * f;
}

double si(double x) {
  require(x >= 0.0, ErrorCode::InvalidArgument, "si requires x >= 0");
  if (x == 0.0) return 0.0;
  if (x <= 4.0) {
    double sum = 0.0, term = x;
    for (int n = 0; n <= 40; ++n) {
      sum += term / (2.0 * n + 1.0);
      term *= -x * x / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
      if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
  }
  return 0.5 * M_PI + e1(Cx(0.0, x)).imag();
}

Cx hankel1(int k, Cx z) {
  require(k >= 0, ErrorCode::InvalidArgument, "hankel1 requires k >= 0");
  require(z.real() > 0.0, ErrorCode::InvalidArgument, "hankel1 requires Re z > 0");
  // J and Y are built separately so that both parts of H carry full relative
  // accuracy even when |Y| >> |J|.
  Cx j0, j1, y0, y1;
  bessel01_base(z, j0, j1, y0, y1);
  if (k == 0) return j0 + Cx(0.0, 1.0) * y0;
  if (k == 1) return j1 + Cx(0.0, 1.0) * y1;
  LogComplex lead = hankel1_large_order_leading(k, z);
  require(lead.log_mag < 700.0, ErrorCode::LossOfPrecision,
          "hankel1 magnitude too large at this order; use hankel1_log");
  std::vector<Cx> j = bessel_j_upto(k, z);
  Cx ym = y0, yc = y1;
  for (int m = 1; m < k; ++m) {
    Cx yn = (2.0 * m / z) * yc - ym;  // stable: Y grows with the order
    ym = yc;
    yc = yn;
    if (!std::isfinite(yc.real()) || !std::isfinite(yc.imag())) {
      fail(ErrorCode::LossOfPrecision, "hankel1 recurrence overflow");
    }
  }
  return j[k] + Cx(0.0, 1.0) * yc;
}

Cx hankel1_derivative(int k, Cx z) {
  if (k == 0) return -hankel1(1, z);
  return hankel1(k - 1, z) - (double(k) / z) * hankel1(k, z);
}

LogComplex hankel1_large_order_leading(int k, Cx z) {
  // -i sqrt(2/pi) k^{k-1/2} (2/(e z))^k
  double lm = 0.5 * std::log(2.0 / M_PI) + (k - 0.5) * std::log(double(k)) +
              k * (std::log(2.0) - 1.0) - k * std::log(std::abs(z));
  double ph = -0.5 * M_PI - k * std::arg(z);
  return LogComplex(lm, ph);
}

LogComplex hankel1_log(int k, Cx z) {
  require(k >= 1, ErrorCode::InvalidArgument, "hankel1_log requires k >= 1");
  require(z.real() > 0.0, ErrorCode::InvalidArgument, "hankel1_log requires Re z > 0");

  QuadratureSpec qs;
  qs.abs_tol = 1e-13;
  qs.rel_tol = 1e-12;
  qs.max_subdivisions = 60000;

  // Piece 1: int_0^inf exp(k t - z sinh t) dt, rescaled by the maximum of the
  // real part of the exponent along the real path.
  const double x = z.real();
  double tstar = (k > x) ? std::acosh(double(k) / x) : 0.0;
  const Cx gmaxc = Cx(double(k) * tstar, 0.0) - z * std::sinh(tstar);
  auto g = [&](double t) { return Cx(double(k) * t, 0.0) - z * std::sinh(t); };
  double thi = std::max(tstar + 1.0, 1.0);
  while ((g(thi) - gmaxc).real() > -46.0 && thi < 900.0) thi *= 1.25;
  LogComplex piece1;
  try {
    QuadResult q1 = integrate(
        [&](double t) { return std::exp(g(t) - gmaxc); }, 0.0, thi, qs);
    piece1 = LogComplex::from_exponent(gmaxc) * LogComplex::from(q1.value);
  } catch (const Error& e) {
    fail(ErrorCode::ContourFailure, std::string("piece-1 quadrature: ") + e.what());
  }

  // Piece 2: oscillatory arc over [0, pi]; bounded integrand.
  LogComplex piece2;
  try {
    QuadResult q2 = integrate(
        [&](double th) {
          return std::exp(Cx(0.0, 1.0) *
                          (z * std::sin(th) - Cx(double(k) * th, 0.0)));
        },
        0.0, M_PI, qs);
    piece2 = LogComplex::from(q2.value);
  } catch (const Error& e) {
    fail(ErrorCode::ContourFailure, std::string("piece-2 quadrature: ") + e.what());
  }

  // Piece 3: e^{-ik pi} int_0^inf exp(-z sinh s - k s) ds; monotone decay.
  double shi = 1.0;
  auto g3 = [&](double s) { return -z * std::sinh(s) - Cx(double(k) * s, 0.0); };
  while (g3(shi).real() > -46.0 && shi < 900.0) shi *= 1.25;
  LogComplex piece3;
  try {
    QuadResult q3 = integrate([&](double s) { return std::exp(g3(s)); }, 0.0, shi, qs);
    piece3 = LogComplex::from(q3.value) *
             LogComplex::from_exponent(Cx(0.0, -M_PI * k));
  } catch (const Error& e) {
    fail(ErrorCode::ContourFailure, std::string("piece-3 quadrature: ") + e.what());
  }

  // H = (piece1 + piece3)/(i pi) + piece2/pi.
  const LogComplex inv_ipi = LogComplex::from(Cx(0.0, -1.0 / M_PI));
  const LogComplex inv_pi = LogComplex::from_real(1.0 / M_PI);
  LogAccumulator acc;
  acc.add(piece1 * inv_ipi);
  acc.add(piece3 * inv_ipi);
  acc.add(piece2 * inv_pi);
  LogComplex out = acc.value();
  require(!out.is_zero(), ErrorCode::ContourFailure, "contour pieces cancelled");
  return out;
}

}  // namespace helmres::specfun
