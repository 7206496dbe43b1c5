// SPDX-License-Identifier: Apache-2.0
#include "helmres/solver.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "helmres/special_functions.hpp"

namespace helmres::solver {

using modes::DuctModeSet;
using specfun::psqrt;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

LogComplex logdet_lu(const Eigen::MatrixXcd& m) {
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  LogComplex det = LogComplex::from_real(double(lu.permutationP().determinant()));
  const auto& diag = lu.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    require(diag(i) != Cx(0.0, 0.0), ErrorCode::LossOfPrecision,
            "exactly singular matrix in log-determinant");
    det = det * LogComplex::from(diag(i));
  }
  return det;
}

double logsumexp(const std::vector<double>& terms) {
  double m = kNegInf;
  for (double t : terms) m = std::max(m, t);
  if (std::isinf(m)) return kNegInf;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}

// Sign of Re(exp(log_mag + i phase)).
int real_part_sign(const LogComplex& v) {
  if (v.is_zero()) return 0;
  double c = std::cos(v.phase);
  return c > 0.0 ? +1 : (c < 0.0 ? -1 : 0);
}

struct SvdNull {
  Eigen::VectorXcd vec;
  double sigma_ratio;
};

SvdNull smallest_singular_direction(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  SvdNull out;
  out.vec = svd.matrixV().col(s.size() - 1);
  out.sigma_ratio = s(s.size() - 1) / s(0);
  return out;
}

}  // namespace

const char* to_string(WidthEstimator e) {
  switch (e) {
    case WidthEstimator::Newton: return "newton";
    case WidthEstimator::Flux: return "flux";
    case WidthEstimator::FiniteDifference: return "fd";
  }
  return "?";
}

Assembled assemble_blocks(const std::vector<Cx>& d,
                          const std::vector<LogComplex>& decay,
                          const Eigen::MatrixXcd& lam_c,
                          const Eigen::MatrixXcd& lam_e) {
  const int K = int(d.size());
  require(int(decay.size()) == K && lam_c.rows() == K && lam_e.rows() == K,
          ErrorCode::InvalidArgument, "assembly block size mismatch");
  Assembled out;
  out.d = d;
  out.decay = decay;
  out.lam_e = lam_e;
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(K, K);
  for (int k = 0; k < K; ++k) D(k, k) = d[k];
  Eigen::VectorXcd e(K);
  for (int k = 0; k < K; ++k) e(k) = decay[k].mantissa_at(0.0);

  out.d_minus_le = D - lam_e;
  out.d_plus_le = D + lam_e;
  Eigen::MatrixXcd dmc = D - lam_c;
  Eigen::MatrixXcd dpc = D + lam_c;

  // Full scaled system in unknowns (A_{k,+}, a_{k,-}):
  //   rows 1..K   : trace/flux match at x = 0 against the cavity map,
  //   rows K+1..2K: match at x = L against the exterior map.
  out.full = Eigen::MatrixXcd::Zero(2 * K, 2 * K);
  out.full.topLeftCorner(K, K) = dmc * e.asDiagonal();
  out.full.topRightCorner(K, K) = -dpc;
  out.full.bottomLeftCorner(K, K) = out.d_minus_le;
  out.full.bottomRightCorner(K, K) = -(out.d_plus_le * e.asDiagonal());
  out.col_log_scale.assign(2 * K, 0.0);
  for (int k = 0; k < K; ++k) out.col_log_scale[k] = decay[k].log_mag;

  // Eliminate the exterior unknowns:  M_red = (D + L_C) - (D - L_C) E R E,
  // R = (D - L_E)^{-1} (D + L_E).
  Eigen::MatrixXcd r = out.d_minus_le.partialPivLu().solve(out.d_plus_le);
  Eigen::MatrixXcd eree = e.asDiagonal() * r * e.asDiagonal();
  out.reduced = dpc - dmc * eree;
  return out;
}

MatchingWorkspace::MatchingWorkspace(const ResonatorGeometry& geom,
                                     const ModeTruncation& trunc)
    : geom_(geom),
      trunc_(trunc),
      cav_builder_(geom.cav, geom.eps, trunc.k_neck, trunc.m_cavity) {
  trunc_.validate();
}

Assembled MatchingWorkspace::assemble(Cx rho) const {
  const int K = trunc_.k_neck;
  const double eps = geom_.eps, L = geom_.neck_length;
  std::vector<Cx> d(K);
  std::vector<LogComplex> decay(K);
  for (int k = 1; k <= K; ++k) {
    Cx th = modes::theta(k, rho, eps);
    d[k - 1] = th / eps;
    decay[k - 1] = LogComplex::from_exponent(-th * (L / eps));
  }
  Eigen::MatrixXcd lam_c = cav_builder_.build(rho);
  exterior::ExteriorDtn dtn = exterior::exterior_dtn(rho, eps, K, trunc_.quad);
  return assemble_blocks(d, decay, lam_c, dtn.matrix);
}

LogComplex MatchingWorkspace::det_log(Cx rho, double* scaling_total) const {
  Assembled a = assemble(rho);
  if (scaling_total) {
    double s = 0.0;
    for (double v : a.col_log_scale) s += v;
    *scaling_total = s;
  }
  // det(full) = det(D - L_E) det(M_red); the block elimination keeps every
  // factor at stored scale.
  return logdet_lu(a.d_minus_le) * logdet_lu(a.reduced);
}

LogComplex MatchingWorkspace::regularized_det_log(Cx rho, double lo,
                                                  double hi) const {
  Assembled a = assemble(rho);
  LogComplex det = logdet_lu(a.reduced);
  for (double pole : cav_builder_.poles_in(lo, hi)) {
    det = det * LogComplex::from(rho - pole);
  }
  return det;
}

namespace {

struct NullSolve {
  Assembled parts;
  Eigen::VectorXcd x_minus;
  Eigen::VectorXcd xpm;    // exterior-side mantissas at common scale
  double scale = kNegInf;  // log scale of the exterior trace
  double sigma_ratio = 0.0;
  NeckCoefficients coeffs;
};

// Null direction of the reduced system at a given frequency, with the
// exterior-side amplitudes recovered in log scale through the exact block
// relation.
NullSolve solve_null(const MatchingWorkspace& ws, Cx rho) {
  NullSolve out;
  out.parts = ws.assemble(rho);
  const Assembled& a = out.parts;
  const int K = ws.truncation().k_neck;
  SvdNull null = smallest_singular_direction(a.reduced);
  out.x_minus = null.vec;
  out.sigma_ratio = null.sigma_ratio;

  std::vector<LogComplex> a_minus(K), A_minus(K), A_plus(K), a_plus(K);
  for (int k = 0; k < K; ++k) {
    a_minus[k] = LogComplex::from(null.vec(k));
    A_minus[k] = a_minus[k] * a.decay[k];
  }
  double scale = kNegInf;
  for (int k = 0; k < K; ++k) scale = std::max(scale, A_minus[k].log_mag);
  require(!std::isinf(scale), ErrorCode::DegenerateInput,
          "quasimode has no exterior trace");
  out.scale = scale;
  Eigen::VectorXcd exm(K);
  for (int k = 0; k < K; ++k) exm(k) = A_minus[k].mantissa_at(scale);
  out.xpm = a.d_minus_le.partialPivLu().solve(a.d_plus_le * exm);
  for (int k = 0; k < K; ++k) {
    A_plus[k] = out.xpm(k) == Cx(0.0, 0.0)
                    ? LogComplex::zero()
                    : LogComplex(scale + std::log(std::abs(out.xpm(k))),
                                 std::arg(out.xpm(k)));
    a_plus[k] = A_plus[k] * a.decay[k];
  }
  out.coeffs.a_plus = std::move(a_plus);
  out.coeffs.a_minus = std::move(a_minus);
  out.coeffs.A_plus = std::move(A_plus);
  out.coeffs.A_minus = std::move(A_minus);
  out.coeffs.matching_residual = null.sigma_ratio;
  return out;
}

void fill_coefficient_logs(const NullSolve& ns, ResonanceResult* res) {
  const int K = int(ns.coeffs.A_minus.size());
  res->a1_minus_log = ns.coeffs.A_minus[0].log_mag;
  std::vector<double> tail, aplus;
  for (int k = 2; k <= K; ++k) {
    tail.push_back(std::log(double(k)) + 2.0 * ns.coeffs.A_minus[k - 1].log_mag);
  }
  for (int k = 1; k <= K; ++k) {
    aplus.push_back(std::log(double(k)) + 2.0 * ns.coeffs.A_plus[k - 1].log_mag);
  }
  res->tail_minus_log = logsumexp(tail);
  res->aplus_sum_log = logsumexp(aplus);
}

}  // namespace

FluxSolution flux_solve(const MatchingWorkspace& ws, double rho_re) {
  const Cx rho(rho_re, 0.0);
  NullSolve ns = solve_null(ws, rho);
  const Assembled& a = ns.parts;
  const int K = ws.truncation().k_neck;
  const Eigen::VectorXcd& nullvec = ns.x_minus;
  const std::vector<LogComplex>& A_plus = ns.coeffs.A_plus;
  const std::vector<LogComplex>& a_plus = ns.coeffs.a_plus;

  FluxSolution out;
  out.sigma_ratio = ns.sigma_ratio;

  // Radiated power of the trace A_plus + A_minus at x = L.
  std::vector<LogComplex> trace(K);
  for (int k = 0; k < K; ++k) {
    Cx m = ns.coeffs.A_minus[k].mantissa_at(ns.scale) + ns.xpm(k);
    trace[k] = (m == Cx(0.0, 0.0))
                   ? LogComplex::zero()
                   : LogComplex(ns.scale + std::log(std::abs(m)), std::arg(m));
  }
  exterior::ExteriorDtn dtn{rho, ws.geometry().eps, a.lam_e, +1};
  out.power = exterior::radiated_flux(dtn, trace);

  // Interior mass: cavity modal sum plus neck axial integrals.  All tiny
  // cross terms enter through their representable mantissas.
  const auto& builder = ws.cavity_builder();
  const double acav = ws.geometry().cav.depth_a;
  const double b = ws.geometry().cav.width_b;
  const double eps = ws.geometry().eps;
  const double L = ws.geometry().neck_length;
  std::vector<Cx> t0(K);
  for (int k = 0; k < K; ++k) {
    t0[k] = nullvec(k) + a_plus[k].mantissa_at(0.0);
  }
  double cav_mass = 0.0;
  const int m_norm = std::min(builder.m_count(), 4000);
  for (int m = 1; m <= m_norm; ++m) {
    Cx cm(0.0, 0.0);
    for (int k = 0; k < K; ++k) {
      double o = builder.overlap(m, k + 1);
      if (o != 0.0) cm += t0[k] * o;
    }
    if (cm == Cx(0.0, 0.0)) continue;
    const double X = m * M_PI / b;
    Cx gamma = psqrt(rho - X * X);
    cav_mass += cavity::axial_norm_factor(gamma, acav) * std::norm(cm);
  }
  double neck_mass = 0.0;
  for (int k = 0; k < K; ++k) {
    const double th = a.d[k].real() * eps;  // theta_k, real at real rho
    const double half = eps / (2.0 * th);
    const double e2 = std::exp(std::max(2.0 * a.decay[k].log_mag, -745.0));
    const double am2 = std::norm(nullvec(k));
    const double ap2 = std::norm(A_plus[k].mantissa_at(0.0));
    Cx apk = a_plus[k].mantissa_at(0.0);
    neck_mass += half * (am2 * (1.0 - e2) + ap2 * (1.0 - e2)) +
                 2.0 * L * (apk * std::conj(nullvec(k))).real();
  }
  out.norm_sq = cav_mass + neck_mass;
  require(out.norm_sq > 0.0, ErrorCode::DegenerateInput, "quasimode mass vanished");

  out.coeffs = ns.coeffs;
  return out;
}

ResonanceResult flux_width(const MatchingWorkspace& ws, double rho_re) {
  FluxSolution sol = flux_solve(ws, rho_re);
  ResonanceResult res;
  res.rho_re = rho_re;
  res.estimator = WidthEstimator::Flux;
  res.residual = sol.sigma_ratio;
  if (sol.power.sign <= 0) {
    res.im_sign = 0;
    res.width_resolved = false;
    return res;
  }
  res.im_sign = -1;
  res.im_log = sol.power.log_abs - std::log(sol.norm_sq);

  const int K = int(sol.coeffs.A_minus.size());
  res.a1_minus_log = sol.coeffs.A_minus[0].log_mag;
  std::vector<double> tail, aplus;
  for (int k = 2; k <= K; ++k) {
    tail.push_back(std::log(double(k)) + 2.0 * sol.coeffs.A_minus[k - 1].log_mag);
  }
  for (int k = 1; k <= K; ++k) {
    aplus.push_back(std::log(double(k)) + 2.0 * sol.coeffs.A_plus[k - 1].log_mag);
  }
  res.tail_minus_log = logsumexp(tail);
  res.aplus_sum_log = logsumexp(aplus);
  return res;
}

namespace {

struct RootScan {
  std::vector<double> roots;
};

RootScan scan_real_roots(const MatchingWorkspace& ws, double lo, double hi,
                         int points) {
  RootScan out;
  auto sgn = [&](double rho) {
    return real_part_sign(ws.regularized_det_log(Cx(rho, 0.0), lo, hi));
  };
  double prev_rho = lo;
  int prev_sign = sgn(lo);
  for (int i = 1; i <= points; ++i) {
    double rho = lo + (hi - lo) * double(i) / points;
    int s = sgn(rho);
    if (s != 0 && prev_sign != 0 && s != prev_sign) {
      double a = prev_rho, b = rho;
      int sa = prev_sign;
      for (int it = 0; it < 48; ++it) {
        double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        int sm = sgn(m);
        if (sm == sa) {
          a = m;
        } else {
          b = m;
        }
      }
      out.roots.push_back(0.5 * (a + b));
    }
    prev_rho = rho;
    prev_sign = s;
  }
  return out;
}

// Newton refinement on the reduced determinant from a complex seed.
struct NewtonOut {
  bool converged = false;
  Cx rho;
};

NewtonOut newton_refine(const MatchingWorkspace& ws, Cx seed, double lo,
                        double hi) {
  NewtonOut out;
  Cx rho = seed;
  double h = std::max(0.25 * std::fabs(rho.imag()), 1e-13 * std::abs(rho));
  for (int it = 0; it < 40; ++it) {
    LogComplex fp = ws.regularized_det_log(rho + h, lo, hi);
    LogComplex fm = ws.regularized_det_log(rho - h, lo, hi);
    Cx dlog((fp.log_mag - fm.log_mag) / (2.0 * h),
            wrap_phase(fp.phase - fm.phase) / (2.0 * h));
    if (dlog == Cx(0.0, 0.0)) return out;
    Cx step = -1.0 / dlog;
    rho += step;
    if (std::fabs(rho.imag()) > 0.2 * rho.real() || rho.real() < lo ||
        rho.real() > hi) {
      return out;  // left the trust region
    }
    if (std::abs(step) < 1e-13 * std::abs(rho)) {
      out.converged = true;
      out.rho = rho;
      return out;
    }
    h = std::max(0.25 * std::abs(step), 1e-14 * std::abs(rho));
  }
  return out;
}

}  // namespace

namespace {

double locate_real_root(const MatchingWorkspace& ws, double lo, double hi,
                        double target, int points) {
  RootScan scan = scan_real_roots(ws, lo, hi, points);
  require(!scan.roots.empty(), ErrorCode::NoRoot,
          "no real determinant root in the search window");
  double best = scan.roots.front();
  for (double r : scan.roots) {
    if (std::fabs(r - target) < std::fabs(best - target)) best = r;
  }
  return best;
}

// Frequencies at truncations (K, 2K, 4K) fitted against
// rho(K) = rho_inf + a K^{-4/3} + b K^{-2}; the 4/3 power is set by the
// re-entrant right-angle corners at the two junctions.
double corner_extrapolate(double k0, const double rho[3]) {
  double x[3], y[3];
  for (int i = 0; i < 3; ++i) {
    double k = k0 * std::pow(2.0, i);
    x[i] = std::pow(k, -4.0 / 3.0);
    y[i] = std::pow(k, -2.0);
  }
  const double a11 = x[0] - x[1], a12 = y[0] - y[1];
  const double a21 = x[1] - x[2], a22 = y[1] - y[2];
  const double d1 = rho[0] - rho[1], d2 = rho[1] - rho[2];
  const double det = a11 * a22 - a12 * a21;
  double ext;
  if (std::fabs(det) > 1e-14 * (std::fabs(a11 * a22) + std::fabs(a12 * a21))) {
    const double a = (d1 * a22 - d2 * a12) / det;
    const double b = (a11 * d2 - a21 * d1) / det;
    ext = rho[2] - a * x[2] - b * y[2];
  } else {
    ext = rho[2] + (rho[2] - rho[1]) / (std::pow(2.0, 4.0 / 3.0) - 1.0);
  }
  // Distrust wild extrapolation steps.
  if (std::fabs(ext - rho[2]) > 3.0 * std::fabs(rho[1] - rho[2]) + 1e-12) {
    ext = rho[2] + (rho[2] - rho[1]) / (std::pow(2.0, 4.0 / 3.0) - 1.0);
  }
  return ext;
}

}  // namespace

ResonanceResult find_resonance(const MatchingWorkspace& ws, double window_lo,
                               double window_hi, double target) {
  require(window_lo < window_hi, ErrorCode::InvalidArgument, "empty window");
  const int points = std::clamp(
      int(640.0 * (window_hi - window_lo) / (window_hi + window_lo)), 48, 320);
  const double rho_star =
      locate_real_root(ws, window_lo, window_hi, target, points);

  ResonanceResult res = [&]() -> ResonanceResult {
    ResonanceResult flux;
    bool have_flux = false;
    std::string flux_error;
    try {
      flux = flux_width(ws, rho_star);
      have_flux = flux.im_sign == -1;
    } catch (const Error& e) {
      // Strong-coupling regime: the real-frequency quasimode degenerates and
      // the complex root is the meaningful object.  Newton takes over below.
      flux_error = e.what();
    }

    // Newton handover: attempt the complex root only when the width estimate
    // clears the floating-point noise floor (or when flux gave nothing).
    const double newton_floor = std::log(
        1e3 * std::numeric_limits<double>::epsilon() * std::fabs(rho_star));
    if (!have_flux || flux.im_log >= newton_floor) {
      std::vector<Cx> seeds;
      if (have_flux) {
        seeds.emplace_back(rho_star, -std::exp(flux.im_log));
      } else {
        for (double frac : {1e-2, 1e-3, 1e-4, 1e-6}) {
          seeds.emplace_back(rho_star, -frac * std::fabs(rho_star));
        }
      }
      NewtonOut nw;
      for (const Cx& seed : seeds) {
        nw = newton_refine(ws, seed, window_lo, window_hi);
        if (nw.converged && nw.rho.imag() < 0.0) break;
      }
      if (nw.converged && nw.rho.imag() < 0.0) {
        ResonanceResult out;
        out.rho_re = nw.rho.real();
        out.im_sign = -1;
        out.im_log = std::log(-nw.rho.imag());
        out.estimator = WidthEstimator::Newton;
        out.residual =
            smallest_singular_direction(ws.assemble(nw.rho).reduced).sigma_ratio;
        try {
          NullSolve diag = solve_null(ws, nw.rho);
          fill_coefficient_logs(diag, &out);
        } catch (const Error&) {
          // keep diagnostics empty if the extraction degenerates
        }
        if (have_flux &&
            std::fabs(out.im_log - flux.im_log) > std::log(2.0)) {
          fail(ErrorCode::EstimatorDisagreement,
               "newton and flux widths differ by more than a factor 2: " +
                   std::to_string(out.im_log) + " vs " +
                   std::to_string(flux.im_log));
        }
        return out;
      }
    }
    if (!have_flux) {
      fail(ErrorCode::DegenerateInput,
           "no width estimator applicable: " + flux_error);
    }
    return flux;
  }();

  res.rho_re_base = res.rho_re;
  if (ws.truncation().corner_extrapolation) {
    // Extrapolate the same frequency definition the estimator produced: the
    // complex-root real part on the Newton path, the real quasimode root on
    // the flux path.
    try {
      const bool via_newton = res.estimator == WidthEstimator::Newton;
      double rhos[3] = {res.rho_re_base, 0.0, 0.0};
      double w = std::max(0.004 * std::fabs(rho_star),
                          8.0 * std::fabs(res.rho_re - rho_star) + 1e-9);
      double prev = rhos[0];
      for (int lvl = 1; lvl <= 2; ++lvl) {
        ModeTruncation t = ws.truncation();
        t.k_neck = ws.truncation().k_neck << lvl;
        t.corner_extrapolation = false;
        t.record_doubling_drift = false;
        MatchingWorkspace wsl(ws.geometry(), t);
        if (via_newton) {
          Cx seed(prev, -std::exp(res.im_log));
          NewtonOut nw = newton_refine(wsl, seed, window_lo, window_hi);
          require(nw.converged && nw.rho.imag() < 0.0, ErrorCode::NoConvergence,
                  "level refinement lost the complex root");
          rhos[lvl] = nw.rho.real();
        } else {
          double lo = std::max(window_lo, prev - w);
          double hi = std::min(window_hi, prev + w);
          rhos[lvl] = locate_real_root(wsl, lo, hi, prev, 24);
          w = std::max(0.25 * w, 6.0 * std::fabs(rhos[lvl] - prev));
        }
        prev = rhos[lvl];
      }
      res.rho_re = corner_extrapolate(double(ws.truncation().k_neck), rhos);
    } catch (const Error&) {
      // Extrapolation is best-effort; the base-truncation value stands.
    }
  }
  return res;
}

ResonanceResult find_resonance(const ResonatorGeometry& geom,
                               const ModeTruncation& trunc,
                               std::optional<double> target) {
  MatchingWorkspace ws(geom, trunc);
  auto eigs = cavity::eigen_list(geom.cav, 8);
  const double lam0 = eigs[0].lambda;
  double gap_above = eigs[1].lambda - lam0;
  double lo = 0.52 * lam0;
  double hi = lam0 + 0.3 * gap_above;
  return find_resonance(ws, lo, hi, target.value_or(lam0));
}

std::vector<SweepRecord> sweep(const ResonatorGeometry& geom_template,
                               const std::vector<double>& eps_list,
                               const ModeTruncation& trunc) {
  std::vector<SweepRecord> out;
  const double L = geom_template.neck_length;
  std::optional<double> target;
  for (double eps : eps_list) {
    SweepRecord rec;
    rec.eps = eps;
    try {
      ResonatorGeometry geom(geom_template.cav, L, eps);
      ResonanceResult res = find_resonance(geom, trunc, target);
      if (trunc.record_doubling_drift) {
        ModeTruncation t2 = trunc;
        t2.k_neck = 2 * trunc.k_neck;
        t2.m_cavity = 2 * (trunc.m_cavity > 0
                               ? trunc.m_cavity
                               : std::max(20000, 200 * trunc.k_neck));
        t2.record_doubling_drift = false;
        ResonanceResult res2 = find_resonance(geom, t2, res.rho_re);
        res.trunc.measured = true;
        res.trunc.rho_drift = std::fabs(res2.rho_re - res.rho_re);
        res.trunc.im_log_drift = std::fabs(res2.im_log - res.im_log);
      }
      rec.res = res;
      rec.s_norm = -eps * res.im_log / (M_PI * L);
      target = res.rho_re;  // continuation toward the next (smaller) eps
    } catch (const Error& e) {
      rec.error = e.what();
    }
    out.push_back(rec);
  }
  return out;
}

WidthLawFit fit_width_law(const std::vector<SweepRecord>& records,
                          double neck_length) {
  std::vector<double> x, y;
  for (const auto& r : records) {
    if (!r.ok() || r.res.im_sign != -1) continue;
    x.push_back(1.0 / r.eps);
    y.push_back(r.res.im_log);
  }
  require(x.size() >= 4, ErrorCode::InsufficientData,
          "width-law fit needs at least 4 resolved points");
  double n = double(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  WidthLawFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.slope_normalized = fit.slope / (-M_PI * neck_length);
  for (size_t i = 0; i < x.size(); ++i) {
    fit.deviations.push_back(y[i] - (fit.slope * x[i] + fit.intercept));
  }
  return fit;
}

}  // namespace helmres::solver
