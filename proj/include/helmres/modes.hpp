// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "helmres/log_complex.hpp"
#include "helmres/special_functions.hpp"

namespace helmres::modes {

// Dirichlet transverse modes on (-h, h), indexed from 1.  Odd indices are the
// cosine (even-in-y) profiles, even indices the sine (odd-in-y) profiles;
// alpha_k = k pi / 2 in all cases and the family is orthonormal.
struct DuctModeSet {
  double half_width;
  int count;

  DuctModeSet(double h, int n) : half_width(h), count(n) {
    require(h > 0.0, ErrorCode::InvalidArgument, "duct half-width must be positive");
    require(n >= 1, ErrorCode::InvalidArgument, "mode count must be >= 1");
  }

  static double alpha(int k) { return 0.5 * M_PI * k; }

  double eval(int k, double y) const {
    const double s = 1.0 / std::sqrt(half_width);
    const double arg = alpha(k) * y / half_width;
    return (k % 2 == 1) ? s * std::cos(arg) : s * std::sin(arg);
  }

  double eval_deriv(int k, double y) const {
    const double s = alpha(k) / (half_width * std::sqrt(half_width));
    const double arg = alpha(k) * y / half_width;
    return (k % 2 == 1) ? -s * std::sin(arg) : s * std::cos(arg);
  }
};

// Axial decay exponent in the narrow duct: sqrt(alpha_k^2 - eps^2 rho).
Cx theta(int k, Cx rho, double eps);

// Axial exponent-squared in the wider duct: alpha_j^2 / eps1^2 - rho.
Cx beta(int j, Cx rho, double eps1);

// The wider-duct fundamental must be evanescent-free of the target frequency:
// pi^2/(4 eps1^2) > lambda0.
void validate_box_halfwidth(double eps1, double lambda0);

// Overlap of the k-th narrow mode with the wide fundamental over (-eps, eps).
double overlap_mu(int k, double eps, double eps1);

// Overlap of the j-th wide mode with the narrow fundamental over (-eps, eps).
// The j = eps1/eps point is removable with value sqrt(eps/eps1); the closed
// form below is finite there by construction.
double overlap_nu(int j, double eps, double eps1);

struct MultiIndex {
  std::vector<int> components;  // length n-1, all >= 1

  explicit MultiIndex(std::vector<int> c) : components(std::move(c)) {
    require(!components.empty() && components.size() <= 12,
            ErrorCode::InvalidArgument, "multi-index length must be in [1, 12]");
    for (int v : components) {
      require(v >= 1, ErrorCode::InvalidArgument, "multi-index entries must be >= 1");
    }
  }

  double norm() const {
    double s = 0.0;
    for (int v : components) s += double(v) * v;
    return std::sqrt(s);
  }
};

enum class OverlapKind { Mu, Nu };

// Tensor-product overlap: the product of one-dimensional factors.
double tensor_overlap(const MultiIndex& idx, double eps, double eps1,
                      OverlapKind kind);

}  // namespace helmres::modes
