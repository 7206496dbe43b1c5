// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "helmres/log_complex.hpp"
#include "helmres/modes.hpp"

namespace helmres::cavity {

// Rectangular cavity occupying [-a, 0] x [-b/2, b/2], junction at (0, 0) in
// the middle of the right wall.
struct RectCavity {
  double depth_a;
  double width_b;

  RectCavity(double a, double b) : depth_a(a), width_b(b) {
    require(a > 0.0 && b > 0.0, ErrorCode::InvalidArgument,
            "cavity sides must be positive");
  }
};

struct CavityEigenpair {
  int m;            // axial index (x)
  int n;            // transverse index (y)
  double lambda;    // pi^2 (m^2/a^2 + n^2/b^2)
  double norm_const;  // 2/sqrt(a b)
  int cluster;      // eigenpairs sharing a cluster id are degenerate
};

// First `count` Dirichlet eigenpairs in ascending order, degeneracies tagged.
std::vector<CavityEigenpair> eigen_list(const RectCavity& cav, int count);

struct Admissibility {
  bool simple = false;
  bool coupled_at_junction = false;
  double relative_gap = 0.0;  // min |lambda_other - lambda| / lambda
  bool ok() const { return simple && coupled_at_junction; }
};

// A target eigenpair qualifies when it is simple (no neighbor within
// tol * lambda) and its eigenfunction does not vanish along y = 0, i.e. the
// transverse index is odd.
Admissibility eigenpair_admissibility(const RectCavity& cav,
                                      const CavityEigenpair& pair, double tol);

// ||sin(gamma t)||^2_{L^2(0,a)} / |sin(gamma a)|^2, stable for real and
// imaginary gamma including large decay rates.
double axial_norm_factor(Cx gamma, double a);

// Dirichlet-to-Neumann matrix of the cavity on the neck interface at x = 0,
// in the neck-mode basis:
//   L[k,l] = sum_m gamma_m cot(gamma_m a) <psi_k, chi_m> <chi_m, psi_l>,
// with gamma_m = psqrt(rho - (m pi / b)^2) and chi_m the width-b modes.
//
// The transverse sum is split into a rho-independent linear part, summed once
// per geometry to high order with an oscillation-averaged cutoff, plus a
// short rho-dependent correction.  This keeps per-frequency assembly cheap
// while the effective truncation stays deep.
class CavityDtnBuilder {
 public:
  // m_count = 0 selects the default truncation.
  CavityDtnBuilder(const RectCavity& cav, double eps, int k_count, int m_count = 0);

  Eigen::MatrixXcd build(Cx rho) const;

  // Cavity eigenvalues of the retained transverse family inside [lo, hi];
  // these are the poles of the matrix in rho.
  std::vector<double> poles_in(double lo, double hi) const;

  int m_count() const { return m_big_; }
  int k_count() const { return k_count_; }
  const RectCavity& cav() const { return cav_; }
  double eps() const { return eps_; }

  // <psi_k, chi_m>, 1-based indices.
  double overlap(int m, int k) const { return o_[(m - 1) * k_count_ + (k - 1)]; }

 private:
  RectCavity cav_;
  double eps_;
  int k_count_;
  int m_big_;
  int m_alg_;
  std::vector<double> o_;        // m-major overlap table
  Eigen::MatrixXd linear_part_;  // sum_m X_m o_km o_lm, averaged tail cutoff
};

// One-shot assembly for callers outside the solver loop.
Eigen::MatrixXcd cavity_dtn(const RectCavity& cav, Cx rho, double eps, int K,
                            int m_count = 0);

}  // namespace helmres::cavity
