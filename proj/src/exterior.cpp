// SPDX-License-Identifier: Apache-2.0
#include "helmres/exterior.hpp"

#include <algorithm>
#include <cmath>

#include "helmres/modes.hpp"
#include "helmres/special_functions.hpp"

namespace helmres::exterior {

using modes::DuctModeSet;
using specfun::gauss_legendre;
using specfun::psqrt;
using specfun::sinc0;

namespace {

// Outgoing axial wavenumber: psqrt on the propagating side, i * psqrt of the
// reversed argument on the evanescent side.  This is the continuation of the
// real-axis outgoing branch to Im rho <= 0.
Cx beta_out(Cx rho, double xi) {
  if (xi * xi < rho.real()) return psqrt(rho - xi * xi);
  return Cx(0.0, 1.0) * psqrt(Cx(xi * xi, 0.0) - rho);
}

// Real-profile transforms: F_k = sqrt(eps) g_k (odd k), -i sqrt(eps) g_k
// (even k), with the g_k below; products of equal parity reduce to
// eps * g_k * g_l in both cases.
double g_profile(int k, double eps, double xi) {
  const double al = DuctModeSet::alpha(k);
  if (k % 2 == 1) return sinc0(al - eps * xi) + sinc0(al + eps * xi);
  return sinc0(al - eps * xi) - sinc0(al + eps * xi);
}

struct NodeSet {
  std::vector<double> xi;
  std::vector<double> w;
};

// Quadrature nodes on [0, Xi]: a trigonometric substitution over the
// propagating band, a square-root substitution just past the branch point,
// then oscillation-resolving panels.
NodeSet make_nodes(Cx rho, double eps, double xi_cut, int oversample) {
  NodeSet ns;
  const auto& rule = gauss_legendre(16 * oversample > 64 ? 64 : 16 * oversample);
  auto add_panel = [&](double a, double b, auto map, auto dmap) {
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      double t = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i];
      ns.xi.push_back(map(t));
      ns.w.push_back(0.5 * (b - a) * rule.weights[i] * dmap(t));
    }
  };
  auto ident = [](double t) { return t; };
  auto unit = [](double) { return 1.0; };

  const double xc = std::sqrt(std::max(rho.real(), 0.0));
  if (xc > 0.0) {
    // xi = xc sin(phi), refined dyadically toward the branch point.
    auto map = [xc](double p) { return xc * std::sin(p); };
    auto dmap = [xc](double p) { return xc * std::cos(p); };
    const int base = 6;
    double lo = 0.0;
    for (int i = 0; i < base; ++i) {
      double hi = 0.5 * M_PI * double(i + 1) / (base + 4);
      add_panel(lo, hi, map, dmap);
      lo = hi;
    }
    for (int i = 0; i < 14; ++i) {
      double hi = 0.5 * (lo + 0.5 * M_PI);
      add_panel(lo, hi, map, dmap);
      lo = hi;
    }
    add_panel(lo, 0.5 * M_PI, map, dmap);
  }

  // Square-root layer: xi = xc + u^2.
  const double w0 = std::max(0.5, 0.25 * xc);
  {
    auto map = [xc](double u) { return xc + u * u; };
    auto dmap = [](double u) { return 2.0 * u; };
    double ulim = std::sqrt(w0);
    int panels = 4;
    for (int i = 0; i < panels; ++i) {
      add_panel(ulim * i / panels, ulim * (i + 1) / panels, map, dmap);
    }
  }

  // Oscillation-resolving panels out to the cutoff.
  const double start = xc + w0;
  const double width = M_PI / (3.0 * eps);
  double lo = start;
  while (lo < xi_cut) {
    double hi = std::min(lo + width, xi_cut);
    add_panel(lo, hi, ident, unit);
    lo = hi;
  }
  return ns;
}

// int_Xi^inf W(xi) dxi with W(xi) = sqrt(xi^2 - rho)/((xi^2-p^2)(xi^2-q^2)),
// by the substitution xi = Xi/u (the integrand is smooth in u on (0,1]).
Cx tail_monotone(Cx rho, double p2, double q2, double Xi) {
  const auto& rule = gauss_legendre(32);
  Cx acc(0.0, 0.0);
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    double u = 0.5 + 0.5 * rule.nodes[i];
    double wq = 0.5 * rule.weights[i];
    double xi = Xi / u;
    Cx W = psqrt(Cx(xi * xi, 0.0) - rho) /
           ((xi * xi - p2) * (xi * xi - q2));
    acc += wq * W * (Xi / (u * u));
  }
  return acc;
}

// int_Xi^inf W(xi) cos(2 eps xi) dxi by rotating e^{+-2 i eps xi} into the
// complex plane, where the exponential decays like e^{-2 eps t}.
Cx tail_oscillatory(Cx rho, double p2, double q2, double Xi, double eps) {
  const auto& rule = gauss_legendre(32);
  auto W = [&](Cx zeta) {
    Cx z2 = zeta * zeta;
    return psqrt(z2 - rho) / ((z2 - p2) * (z2 - q2));
  };
  Cx up(0.0, 0.0), down(0.0, 0.0);
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    double v = 0.5 + 0.5 * rule.nodes[i];
    double wq = 0.5 * rule.weights[i];
    double t = -std::log(v) / (2.0 * eps);
    up += wq * W(Cx(Xi, t));
    down += wq * W(Cx(Xi, -t));
  }
  up /= (2.0 * eps);
  down /= (2.0 * eps);
  const Cx eplus = std::exp(Cx(0.0, 2.0 * eps * Xi));
  const Cx eminus = std::exp(Cx(0.0, -2.0 * eps * Xi));
  return 0.5 * (Cx(0.0, 1.0) * eplus * up - Cx(0.0, 1.0) * eminus * down);
}

}  // namespace

ExteriorDtn exterior_dtn(Cx rho, double eps, int K,
                         const specfun::QuadratureSpec& spec, int oversample) {
  spec.validate();
  require(rho.real() > 0.0, ErrorCode::InvalidArgument,
          "exterior_dtn requires Re rho > 0");
  require(std::fabs(rho.imag()) <= 0.25 * rho.real(), ErrorCode::InvalidArgument,
          "exterior_dtn restricted to |Im rho| << Re rho");
  require(eps > 0.0 && K >= 1, ErrorCode::InvalidArgument, "bad aperture/mode count");

  const double alpha_K = DuctModeSet::alpha(K);
  const double xi_cut = (std::max(3.0 * alpha_K, 45.0) * oversample) / eps +
                        std::sqrt(std::max(rho.real(), 0.0));
  NodeSet ns = make_nodes(rho, eps, xi_cut, oversample);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(K, K);
  std::vector<double> g(K);
  for (size_t q = 0; q < ns.xi.size(); ++q) {
    const double xi = ns.xi[q];
    for (int k = 1; k <= K; ++k) g[k - 1] = g_profile(k, eps, xi);
    // (1/pi) * i beta * eps, folded with the node weight.
    const Cx c = (ns.w[q] * eps / M_PI) * Cx(0.0, 1.0) * beta_out(rho, xi);
    for (int k = 0; k < K; ++k) {
      for (int l = k; l < K; ++l) {
        if ((k + l) % 2 == 1) continue;
        out(k, l) += c * (g[k] * g[l]);
      }
    }
  }

  // Analytic tails past the cutoff.
  for (int k = 1; k <= K; ++k) {
    for (int l = k; l <= K; ++l) {
      if ((k + l) % 2 == 1) continue;
      const double ak = DuctModeSet::alpha(k), al = DuctModeSet::alpha(l);
      const double pk = ak / eps, pl = al / eps;
      const double sk = (k % 2 == 1) ? (((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0)
                                     : ((k / 2) % 2 == 0 ? -1.0 : 1.0);
      const double sl = (l % 2 == 1) ? (((l - 1) / 2) % 2 == 0 ? 1.0 : -1.0)
                                     : ((l / 2) % 2 == 0 ? -1.0 : 1.0);
      // g_k g_l = s_k s_l 4 a_k a_l T(eps xi) / (eps^4 (xi^2-pk^2)(xi^2-pl^2))
      // with T = cos^2 (odd pair) or sin^2 (even pair).
      const double pref = -(4.0 * sk * sl * ak * al) / (M_PI * eps * eps * eps);
      const double osc_sign = (k % 2 == 1) ? +1.0 : -1.0;  // cos^2 vs sin^2
      Cx t_mono = tail_monotone(rho, pk * pk, pl * pl, xi_cut);
      Cx t_osc = tail_oscillatory(rho, pk * pk, pl * pl, xi_cut, eps);
      out(k - 1, l - 1) += pref * 0.5 * (t_mono + osc_sign * t_osc);
    }
  }

  for (int k = 0; k < K; ++k) {
    for (int l = 0; l < k; ++l) out(k, l) = out(l, k);
  }
  return ExteriorDtn{rho, eps, std::move(out), +1};
}

SignedLog radiated_flux(const ExteriorDtn& dtn,
                        const std::vector<LogComplex>& g) {
  require(int(g.size()) == dtn.matrix.rows(), ErrorCode::InvalidArgument,
          "coefficient vector size mismatch");
  double scale = -std::numeric_limits<double>::infinity();
  for (const auto& v : g) scale = std::max(scale, v.log_mag);
  if (std::isinf(scale)) {
    fail(ErrorCode::DegenerateInput, "all aperture coefficients vanish");
  }
  Eigen::VectorXcd w(g.size());
  for (size_t i = 0; i < g.size(); ++i) w(i) = g[i].mantissa_at(scale);
  const Cx quad = w.adjoint() * (dtn.matrix * w);
  const double p0 = quad.imag();
  SignedLog out;
  if (p0 == 0.0) {
    out.sign = 0;
    return out;
  }
  out.sign = p0 > 0.0 ? +1 : -1;
  out.log_abs = std::log(std::fabs(p0)) + 2.0 * scale;
  return out;
}

Cx exterior_field(Cx rho, double eps, const std::vector<Cx>& g, double dx,
                  double y, const specfun::QuadratureSpec& spec) {
  spec.validate();
  require(dx >= 0.0, ErrorCode::InvalidArgument, "field point must have x >= L");
  const int K = int(g.size());
  if (dx == 0.0) {
    // Fourier inversion returns the zero-extended trace on the wall.
    if (std::fabs(y) >= eps) return Cx(0.0, 0.0);
    DuctModeSet set(eps, K);
    Cx acc(0.0, 0.0);
    for (int k = 1; k <= K; ++k) acc += g[k - 1] * set.eval(k, y);
    return acc;
  }

  // F(xi) = sum_k g_k F_k(xi); assemble the two half-line integrals of
  // F(+-xi) e^{i beta dx} e^{+-i xi y}.
  auto F = [&](double xi) {
    Cx acc(0.0, 0.0);
    const double se = std::sqrt(eps);
    for (int k = 1; k <= K; ++k) {
      double gp = g_profile(k, eps, xi);
      Cx fk = (k % 2 == 1) ? Cx(se * gp, 0.0) : Cx(0.0, -se * gp);
      acc += g[k - 1] * fk;
    }
    return acc;
  };

  // Truncation where both the evanescent decay and the profile decay are
  // far below tolerance.
  const double xc = std::sqrt(std::max(rho.real(), 0.0));
  const double xi_decay = std::sqrt(std::max(rho.real(), 0.0) +
                                    std::pow(42.0 / dx, 2));
  const double xi_cut = std::min(xi_decay, xc + 42.0 / dx + 8.0 / eps +
                                               4.0 * DuctModeSet::alpha(K) / eps);
  NodeSet ns = make_nodes(rho, std::max(eps, std::fabs(y)), xi_cut, 1);

  Cx acc(0.0, 0.0);
  for (size_t q = 0; q < ns.xi.size(); ++q) {
    const double xi = ns.xi[q];
    const Cx phase = std::exp(Cx(0.0, 1.0) * beta_out(rho, xi) * dx);
    const Cx eplus = std::exp(Cx(0.0, xi * y));
    acc += ns.w[q] * phase *
           (F(xi) * eplus + F(-xi) * std::conj(eplus));
  }
  return acc / (2.0 * M_PI);
}

}  // namespace helmres::exterior
