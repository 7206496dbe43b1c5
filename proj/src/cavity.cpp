// SPDX-License-Identifier: Apache-2.0
#include "helmres/cavity.hpp"

#include <algorithm>
#include <cmath>

namespace helmres::cavity {

using modes::DuctModeSet;
using specfun::psqrt;
using specfun::sinc0;

namespace {

double sinhc0(double x) {
  if (std::fabs(x) < 1e-4) {
    double x2 = x * x;
    return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0);
  }
  return std::sinh(x) / x;
}

// exp(w) - 1 for complex w, series near zero.
Cx cexpm1(Cx w) {
  if (std::abs(w) < 1e-4) {
    return w * (1.0 + 0.5 * w * (1.0 + w / 3.0));
  }
  return std::exp(w) - 1.0;
}

}  // namespace

std::vector<CavityEigenpair> eigen_list(const RectCavity& cav, int count) {
  require(count >= 1, ErrorCode::InvalidArgument, "count must be >= 1");
  const double a = cav.depth_a, b = cav.width_b;
  // Enough index range that the first `count` values are certainly covered.
  int mmax = 2 + int(std::ceil(std::sqrt(double(count)) * 2.0 * std::max(1.0, a / b) + 4));
  int nmax = 2 + int(std::ceil(std::sqrt(double(count)) * 2.0 * std::max(1.0, b / a) + 4));
  std::vector<CavityEigenpair> all;
  const double norm = 2.0 / std::sqrt(a * b);
  for (int m = 1; m <= mmax; ++m) {
    for (int n = 1; n <= nmax; ++n) {
      double lam = M_PI * M_PI * (double(m) * m / (a * a) + double(n) * n / (b * b));
      all.push_back({m, n, lam, norm, -1});
    }
  }
  std::sort(all.begin(), all.end(),
            [](const CavityEigenpair& p, const CavityEigenpair& q) {
              return p.lambda < q.lambda;
            });
  all.resize(count);
  int cluster = 0;
  for (size_t i = 0; i < all.size(); ++i) {
    if (i > 0 && std::fabs(all[i].lambda - all[i - 1].lambda) <=
                     1e-12 * all[i].lambda) {
      all[i].cluster = all[i - 1].cluster;
    } else {
      all[i].cluster = cluster++;
    }
  }
  return all;
}

Admissibility eigenpair_admissibility(const RectCavity& cav,
                                      const CavityEigenpair& pair, double tol) {
  require(tol > 0.0, ErrorCode::InvalidArgument, "tolerance must be positive");
  Admissibility out;
  // Gap against a family safely containing every candidate neighbor.
  auto list = eigen_list(cav, 64);
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& e : list) {
    if (e.m == pair.m && e.n == pair.n) continue;
    gap = std::min(gap, std::fabs(e.lambda - pair.lambda));
  }
  out.relative_gap = gap / pair.lambda;
  out.simple = out.relative_gap > tol;
  // sin(n pi (y + b/2)/b) at y = 0 is sin(n pi / 2): odd n couples.
  out.coupled_at_junction = (pair.n % 2 == 1);
  return out;
}

double axial_norm_factor(Cx gamma, double a) {
  const double gr = gamma.real(), gi = gamma.imag();
  const double p = 2.0 * gi * a, q = 2.0 * gr * a;
  if (std::fabs(p) > 40.0) {
    // Decay-dominated: numerator and denominator share e^{|p|}.
    return 0.5 / std::fabs(gi);
  }
  double num = 0.5 * a * (sinhc0(p) - sinc0(q));
  double den = 0.5 * (std::cosh(p) - std::cos(q));
  require(den > 0.0, ErrorCode::PoleProximity, "axial norm at a cavity eigenvalue");
  return num / den;
}

CavityDtnBuilder::CavityDtnBuilder(const RectCavity& cav, double eps,
                                   int k_count, int m_count)
    : cav_(cav), eps_(eps), k_count_(k_count) {
  require(eps > 0.0 && eps < 0.5 * cav.width_b, ErrorCode::InvalidArgument,
          "neck half-width must satisfy 0 < eps < b/2");
  require(k_count >= 1, ErrorCode::InvalidArgument, "k_count must be >= 1");
  const double b = cav_.width_b;
  if (m_count <= 0) {
    // Deep default: the linear tail decays like 1/m^2 per factor, and the
    // averaged cutoff removes the leading oscillatory remainder.
    m_big_ = std::max(20000, 200 * k_count);
  } else {
    m_big_ = m_count;
  }
  m_alg_ = std::min(m_big_, std::max(3000, 8 * k_count));

  // Overlap table, m-major.
  o_.assign(size_t(m_big_) * k_count_, 0.0);
  const double s = std::sqrt(2.0 * eps_ / b);
  for (int m = 1; m <= m_big_; ++m) {
    const double X = m * M_PI / b;
    const double sb = std::sin(0.5 * X * b);
    const double cb = std::cos(0.5 * X * b);
    double* row = &o_[size_t(m - 1) * k_count_];
    for (int k = 1; k <= k_count_; ++k) {
      const double al = DuctModeSet::alpha(k);
      if (k % 2 == 1) {
        if (m % 2 == 0) continue;  // parity: odd k couples to odd m only
        row[k - 1] = s * sb * (sinc0(al - eps_ * X) + sinc0(al + eps_ * X));
      } else {
        if (m % 2 == 1) continue;
        row[k - 1] = s * cb * (sinc0(al - eps_ * X) - sinc0(al + eps_ * X));
      }
    }
  }

  // rho-independent linear part sum_m X_m o_km o_lm with the partial sums
  // averaged over the trailing oscillation window.
  linear_part_ = Eigen::MatrixXd::Zero(k_count_, k_count_);
  const int window = std::min(m_big_ / 2,
                              std::max(8, 2 * int(std::ceil(b / eps_))));
  Eigen::MatrixXd cesaro = Eigen::MatrixXd::Zero(k_count_, k_count_);
  for (int m = 1; m <= m_big_; ++m) {
    const double X = m * M_PI / b;
    const double* row = &o_[size_t(m - 1) * k_count_];
    for (int k = 0; k < k_count_; ++k) {
      const double ok = row[k];
      if (ok == 0.0) continue;
      for (int l = k; l < k_count_; ++l) {
        linear_part_(k, l) += X * ok * row[l];
      }
    }
    if (m > m_big_ - window) cesaro += linear_part_;
  }
  linear_part_ = cesaro / double(window);
  linear_part_ = linear_part_.selfadjointView<Eigen::Upper>();
}

Eigen::MatrixXcd CavityDtnBuilder::build(Cx rho) const {
  const double a = cav_.depth_a, b = cav_.width_b;
  Eigen::MatrixXcd out = linear_part_.cast<Cx>();
  for (int m = 1; m <= m_alg_; ++m) {
    const double X = m * M_PI / b;
    Cx fmx;  // f_m - X_m
    if (X * X <= rho.real()) {
      const Cx gamma = psqrt(rho - X * X);
      const Cx sg = std::sin(gamma * a);
      require(std::abs(sg) >= 1e-12, ErrorCode::PoleProximity,
              "cavity DtN evaluated at a transverse-family eigenvalue");
      fmx = gamma * std::cos(gamma * a) / sg - X;
    } else {
      const Cx Z = psqrt(Cx(X * X, 0.0) - rho);
      fmx = -rho / (Z + X);  // Z - X without cancellation
      const Cx two_za = 2.0 * Z * a;
      if (two_za.real() < 40.0) {
        fmx += 2.0 * Z / cexpm1(two_za);
      }
    }
    const double* row = &o_[size_t(m - 1) * k_count_];
    for (int k = 0; k < k_count_; ++k) {
      const double ok = row[k];
      if (ok == 0.0) continue;
      for (int l = k; l < k_count_; ++l) {
        out(k, l) += fmx * (ok * row[l]);
      }
    }
  }
  // Mirror plainly: the matrix is complex symmetric, not Hermitian.
  for (int k = 0; k < k_count_; ++k) {
    for (int l = 0; l < k; ++l) out(k, l) = out(l, k);
  }
  return out;
}

std::vector<double> CavityDtnBuilder::poles_in(double lo, double hi) const {
  std::vector<double> poles;
  const double a = cav_.depth_a, b = cav_.width_b;
  for (int m = 1; m <= m_alg_; ++m) {
    const double X2 = std::pow(m * M_PI / b, 2);
    if (X2 >= hi) break;
    for (int j = 1;; ++j) {
      double lam = std::pow(j * M_PI / a, 2) + X2;
      if (lam > hi) break;
      if (lam >= lo) poles.push_back(lam);
    }
  }
  std::sort(poles.begin(), poles.end());
  return poles;
}

Eigen::MatrixXcd cavity_dtn(const RectCavity& cav, Cx rho, double eps, int K,
                            int m_count) {
  CavityDtnBuilder builder(cav, eps, K, m_count);
  return builder.build(rho);
}

}  // namespace helmres::cavity
