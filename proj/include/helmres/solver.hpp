// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "helmres/cavity.hpp"
#include "helmres/exterior.hpp"
#include "helmres/log_complex.hpp"
#include "helmres/modes.hpp"

namespace helmres::solver {

// Cavity + straight neck + flat half-plane exterior.  The neck occupies
// [0, L] x (-eps, eps); the aperture plane of the exterior is x = L.
struct ResonatorGeometry {
  cavity::RectCavity cav;
  double neck_length;
  double eps;

  ResonatorGeometry(cavity::RectCavity c, double L, double e)
      : cav(c), neck_length(L), eps(e) {
    require(e > 0.0 && e < 0.5 * cav.width_b, ErrorCode::InvalidArgument,
            "need 0 < eps < b/2");
    require(e < L, ErrorCode::InvalidArgument, "need eps < L");
  }

  ResonatorGeometry scaled(double s) const {
    return ResonatorGeometry(cavity::RectCavity(s * cav.depth_a, s * cav.width_b),
                             s * neck_length, s * eps);
  }
};

struct ModeTruncation {
  int k_neck = 16;
  int m_cavity = 0;  // 0 = default depth
  specfun::QuadratureSpec quad;
  bool record_doubling_drift = false;
  // The junction corners make the raw trace expansion converge like
  // K^(-4/3); the frequency is therefore extrapolated from solves at K, 2K
  // and 4K against that exponent.  Disable only for diagnostics.
  bool corner_extrapolation = true;

  void validate() const {
    require(k_neck >= 4, ErrorCode::InvalidArgument, "k_neck must be >= 4");
    quad.validate();
  }
};

enum class WidthEstimator { Newton, Flux, FiniteDifference };

const char* to_string(WidthEstimator e);

struct TruncationDiagnostics {
  bool measured = false;
  double rho_drift = 0.0;     // |rho_re(2K, 2M) - rho_re(K, M)|
  double im_log_drift = 0.0;  // |im_log(2K, 2M) - im_log(K, M)|
};

struct NeckCoefficients {
  std::vector<LogComplex> a_plus;   // growing-mode coefficient at x = 0
  std::vector<LogComplex> a_minus;  // decaying-mode coefficient at x = 0
  std::vector<LogComplex> A_plus;   // a_plus e^{+theta L/eps} (value at x = L)
  std::vector<LogComplex> A_minus;  // a_minus e^{-theta L/eps}
  double matching_residual = 0.0;
};

struct ResonanceResult {
  double rho_re = 0.0;       // corner-extrapolated when enabled
  double rho_re_base = 0.0;  // raw value at the requested truncation
  int im_sign = 0;           // -1 for resolved widths, 0 when unresolved
  double im_log = -std::numeric_limits<double>::infinity();
  WidthEstimator estimator = WidthEstimator::Flux;
  double residual = 0.0;
  bool width_resolved = true;
  TruncationDiagnostics trunc;
  // Coefficient diagnostics (natural logs), filled by the flux path.
  double a1_minus_log = -std::numeric_limits<double>::infinity();
  double tail_minus_log = -std::numeric_limits<double>::infinity();
  double aplus_sum_log = -std::numeric_limits<double>::infinity();
};

struct SweepRecord {
  double eps = 0.0;
  ResonanceResult res;
  double s_norm = 0.0;  // -eps ln|Im rho| / (pi L)
  std::string error;    // empty on success
  bool ok() const { return error.empty(); }
};

struct WidthLawFit {
  double slope = 0.0;      // d im_log / d (1/eps)
  double intercept = 0.0;
  double slope_normalized = 0.0;  // slope / (-pi L)
  std::vector<double> deviations;
};

// Assembled matching system at one frequency.  Columns of the full system are
// pre-scaled by the dominant axial exponential of each unknown so every
// stored entry is O(1); the removed factors are recorded.
struct Assembled {
  Eigen::MatrixXcd full;                // 2K x 2K, scaled
  std::vector<double> col_log_scale;    // log magnitude removed per column
  Eigen::MatrixXcd reduced;             // K x K system in the a_minus unknowns
  Eigen::MatrixXcd d_minus_le;          // D - Lambda_E
  Eigen::MatrixXcd d_plus_le;           // D + Lambda_E
  Eigen::MatrixXcd lam_e;
  std::vector<Cx> d;                    // theta_k / eps
  std::vector<LogComplex> decay;        // exp(-theta_k L / eps)
};

// Low-level assembly from explicit DtN blocks (also used by consistency
// tests with manufactured operators).
Assembled assemble_blocks(const std::vector<Cx>& d,
                          const std::vector<LogComplex>& decay,
                          const Eigen::MatrixXcd& lam_c,
                          const Eigen::MatrixXcd& lam_e);

class MatchingWorkspace {
 public:
  MatchingWorkspace(const ResonatorGeometry& geom, const ModeTruncation& trunc);

  Assembled assemble(Cx rho) const;

  // Log-domain determinant of the scaled full system; *scaling_total (when
  // non-null) receives the summed column log-scales.
  LogComplex det_log(Cx rho, double* scaling_total = nullptr) const;

  // Determinant of the reduced system with the in-window cavity poles
  // divided out; the root-finding scalar.
  LogComplex regularized_det_log(Cx rho, double lo, double hi) const;

  const cavity::CavityDtnBuilder& cavity_builder() const { return cav_builder_; }
  const ResonatorGeometry& geometry() const { return geom_; }
  const ModeTruncation& truncation() const { return trunc_; }

 private:
  ResonatorGeometry geom_;
  ModeTruncation trunc_;
  cavity::CavityDtnBuilder cav_builder_;
};

struct FluxSolution {
  SignedLog power;           // radiated power of the normalized quasimode
  double norm_sq = 0.0;      // cavity + neck mass
  NeckCoefficients coeffs;
  double sigma_ratio = 0.0;  // sigma_min / sigma_max of the reduced system
};

// Quasimode solve at real rho_re: null direction of the reduced system,
// exterior coefficients recovered in log scale, radiated power and interior
// mass.  Valid for arbitrarily small widths.
FluxSolution flux_solve(const MatchingWorkspace& ws, double rho_re);

// Width from the radiated-flux identity: Im rho = -P / ||u||^2.
ResonanceResult flux_width(const MatchingWorkspace& ws, double rho_re);

// Two-stage search: real root of the regularized determinant's real part in
// the window (tie broken toward `target`), then Newton in the complex plane
// when the width is representable, flux otherwise.
ResonanceResult find_resonance(const MatchingWorkspace& ws, double window_lo,
                               double window_hi, double target);

// Convenience wrapper building the workspace and the default window around
// the admissible ground eigenvalue.
ResonanceResult find_resonance(const ResonatorGeometry& geom,
                               const ModeTruncation& trunc,
                               std::optional<double> target = std::nullopt);

std::vector<SweepRecord> sweep(const ResonatorGeometry& geom_template,
                               const std::vector<double>& eps_list,
                               const ModeTruncation& trunc);

WidthLawFit fit_width_law(const std::vector<SweepRecord>& records,
                          double neck_length);

}  // namespace helmres::solver
