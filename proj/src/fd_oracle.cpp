// SPDX-License-Identifier: Apache-2.0
#include "helmres/fd_oracle.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <vector>

namespace helmres::oracle {

using solver::ResonatorGeometry;

namespace {

bool near_integer(double x) { return std::fabs(x - std::round(x)) < 1e-9; }

struct Layout {
  int nx, ny;
  double xmin, ymin, h;
  std::vector<int> index;  // -1 outside / wall
  int unknowns = 0;

  int at(int i, int j) const { return index[size_t(j) * nx + i]; }
};

Layout build_layout(const ResonatorGeometry& geom, const GridSpec& g) {
  Layout lay;
  const double a = geom.cav.depth_a, b = geom.cav.width_b;
  const double L = geom.neck_length, eps = geom.eps;
  lay.h = g.h;
  const double xmax = L + g.exterior_width + g.layer_depth;
  const double ymax = g.exterior_halfheight + g.layer_depth;
  lay.xmin = -a;
  lay.ymin = -ymax;
  lay.nx = int(std::round((xmax + a) / g.h)) + 1;
  lay.ny = int(std::round(2.0 * ymax / g.h)) + 1;
  lay.index.assign(size_t(lay.nx) * lay.ny, -1);
  const double tol = 1e-9 * g.h;
  for (int j = 0; j < lay.ny; ++j) {
    const double y = lay.ymin + j * g.h;
    for (int i = 0; i < lay.nx; ++i) {
      const double x = lay.xmin + i * g.h;
      bool inside = false;
      if (x > -a + tol && x < -tol && std::fabs(y) < 0.5 * b - tol) {
        inside = true;  // cavity interior
      } else if (!g.closed_neck && x >= -tol && x <= L + tol &&
                 std::fabs(y) < eps - tol) {
        inside = true;  // neck including both junction planes
      } else if (!g.closed_neck && x > L + tol && x < xmax - tol &&
                 std::fabs(y) < ymax - tol) {
        inside = true;  // exterior box
      }
      if (inside) lay.index[size_t(j) * lay.nx + i] = lay.unknowns++;
    }
  }
  require(lay.unknowns > 0, ErrorCode::InvalidArgument, "empty grid");
  return lay;
}

}  // namespace

void GridSpec::validate(const ResonatorGeometry& geom) const {
  require(h > 0.0, ErrorCode::InvalidArgument, "grid spacing must be positive");
  require(h <= geom.eps / 6.0 + 1e-12, ErrorCode::InvalidArgument,
          "need at least 12 points across the neck (h <= eps/6)");
  require(shift > 0.0, ErrorCode::InvalidArgument, "shift target must be positive");
  require(exterior_width >= 5.0 / std::sqrt(shift), ErrorCode::InvalidArgument,
          "absorbing layer must start >= 5/sqrt(rho) beyond the aperture");
  for (double v : {geom.cav.depth_a, 0.5 * geom.cav.width_b, geom.neck_length,
                   geom.eps, exterior_width, exterior_halfheight, layer_depth}) {
    require(near_integer(v / h), ErrorCode::InvalidArgument,
            "walls and extents must lie on grid lines");
  }
  require(exterior_halfheight >= 0.5 * geom.cav.width_b,
          ErrorCode::InvalidArgument, "exterior box narrower than the cavity");
  require(sigma > 0.0 && layer_depth > 0.0, ErrorCode::InvalidArgument,
          "layer parameters must be positive");
}

GridSpec default_grid(const ResonatorGeometry& geom, double lambda0,
                      int points_across) {
  GridSpec g;
  // Choose h dividing every wall offset: a fraction of the gcd-like base.
  double base = geom.eps / points_across;
  // Snap to a value dividing eps, a, b/2 and L simultaneously by scanning
  // divisors of eps/n.
  int n = points_across;
  while (true) {
    double h = geom.eps / n;
    if (near_integer(geom.cav.depth_a / h) && near_integer(0.5 * geom.cav.width_b / h) &&
        near_integer(geom.neck_length / h)) {
      base = h;
      break;
    }
    ++n;
    require(n <= 4096, ErrorCode::InvalidArgument,
            "no aligned grid spacing found for this geometry");
  }
  g.h = base;
  auto snap_up = [&](double v) { return std::ceil(v / g.h - 1e-9) * g.h; };
  g.shift = lambda0;
  g.exterior_width = snap_up(std::max(1.2, 5.0 / std::sqrt(lambda0) + 0.2));
  g.exterior_halfheight =
      snap_up(std::max(0.5 * geom.cav.width_b + 0.4, g.exterior_width));
  g.layer_depth = snap_up(0.6);
  g.sigma = 4.0;
  return g;
}

OracleResult oracle_resonance(const ResonatorGeometry& geom,
                              const GridSpec& grid) {
  grid.validate(geom);
  Layout lay = build_layout(geom, grid);
  const double h = grid.h;
  const double L = geom.neck_length;
  const double x_layer = L + grid.exterior_width;
  const double y_layer = grid.exterior_halfheight;

  auto sx = [&](double x) -> Cx {
    if (x <= x_layer) return Cx(1.0, 0.0);
    double t = (x - x_layer) / grid.layer_depth;
    return Cx(1.0, grid.sigma * t * t);
  };
  auto sy = [&](double y) -> Cx {
    double ay = std::fabs(y);
    if (ay <= y_layer) return Cx(1.0, 0.0);
    double t = (ay - y_layer) / grid.layer_depth;
    return Cx(1.0, grid.sigma * t * t);
  };

  // Flux form: d/dx (sy/sx du/dx) + d/dy (sx/sy du/dy) + rho sx sy u = 0.
  std::vector<Eigen::Triplet<Cx>> trips;
  trips.reserve(size_t(lay.unknowns) * 5);
  Eigen::VectorXcd bdiag(lay.unknowns);
  for (int j = 0; j < lay.ny; ++j) {
    const double y = lay.ymin + j * h;
    for (int i = 0; i < lay.nx; ++i) {
      int row = lay.at(i, j);
      if (row < 0) continue;
      const double x = lay.xmin + i * h;
      const Cx sxi = sx(x), syj = sy(y);
      const Cx cxp = syj / sx(x + 0.5 * h);
      const Cx cxm = syj / sx(x - 0.5 * h);
      const Cx cyp = sxi / sy(y + 0.5 * h);
      const Cx cym = sxi / sy(y - 0.5 * h);
      const double ih2 = 1.0 / (h * h);
      Cx diag = (cxp + cxm + cyp + cym) * ih2;
      trips.emplace_back(row, row, diag);
      struct Nb {
        int di, dj;
        Cx c;
      } nbs[4] = {{+1, 0, cxp}, {-1, 0, cxm}, {0, +1, cyp}, {0, -1, cym}};
      for (const auto& nb : nbs) {
        int col = lay.at(i + nb.di, j + nb.dj);
        if (col >= 0) trips.emplace_back(row, col, -nb.c * ih2);
      }
      bdiag(row) = sxi * syj;
    }
  }
  Eigen::SparseMatrix<Cx> A(lay.unknowns, lay.unknowns);
  A.setFromTriplets(trips.begin(), trips.end());

  // Start vector shaped like the target cavity mode.
  Eigen::VectorXcd v(lay.unknowns);
  {
    const double a = geom.cav.depth_a, b = geom.cav.width_b;
    for (int j = 0; j < lay.ny; ++j) {
      const double y = lay.ymin + j * h;
      for (int i = 0; i < lay.nx; ++i) {
        int row = lay.at(i, j);
        if (row < 0) continue;
        const double x = lay.xmin + i * h;
        double val = 1e-3;
        if (x < 0.0 && std::fabs(y) < 0.5 * b) {
          val = std::sin(M_PI * (x + a) / a) * std::cos(M_PI * y / b);
        }
        v(row) = Cx(val, 0.0);
      }
    }
    v.normalize();
  }

  OracleResult out;
  out.unknowns = lay.unknowns;
  Cx lambda(grid.shift, 0.0);
  Cx shift(grid.shift, 0.0);
  int total_iters = 0;
  for (int phase = 0; phase < 2; ++phase) {
    Eigen::SparseMatrix<Cx> AS = A;
    for (int r = 0; r < lay.unknowns; ++r) AS.coeffRef(r, r) -= shift * bdiag(r);
    Eigen::SparseLU<Eigen::SparseMatrix<Cx>> lu;
    lu.compute(AS);
    require(lu.info() == Eigen::Success, ErrorCode::IterationDivergence,
            "sparse factorization failed");
    Cx prev_lambda = lambda;
    for (int it = 0; it < 40; ++it) {
      ++total_iters;
      Eigen::VectorXcd w = lu.solve((bdiag.array() * v.array()).matrix());
      w.normalize();
      // Transpose Rayleigh quotient: the operator pencil is complex symmetric.
      Cx num = w.transpose() * (A * w);
      Cx den = w.transpose() * (bdiag.array() * w.array()).matrix();
      lambda = num / den;
      v = w;
      if (std::abs(lambda - prev_lambda) < 1e-12 * std::abs(lambda)) break;
      prev_lambda = lambda;
    }
    shift = lambda;  // one re-factorization at the improved target
  }
  require(std::isfinite(lambda.real()) && std::isfinite(lambda.imag()),
          ErrorCode::IterationDivergence, "inverse iteration diverged");
  out.iterations = total_iters;

  // Region masses of the converged state.
  for (int j = 0; j < lay.ny; ++j) {
    const double y = lay.ymin + j * h;
    for (int i = 0; i < lay.nx; ++i) {
      int row = lay.at(i, j);
      if (row < 0) continue;
      const double x = lay.xmin + i * h;
      double m = std::norm(v(row)) * h * h;
      if (x < 0.0) {
        out.mass_cavity += m;
      } else if (x <= L) {
        out.mass_neck += m;
      } else if (x <= x_layer && std::fabs(y) <= y_layer) {
        out.mass_exterior += m;
      }
    }
  }

  out.res.rho_re = lambda.real();
  out.res.rho_re_base = lambda.real();
  out.res.estimator = solver::WidthEstimator::FiniteDifference;
  out.res.residual = std::abs((A * v - lambda * (bdiag.array() * v.array()).matrix()).norm());
  const double noise_floor = 1e-8 * std::abs(lambda);
  if (lambda.imag() < 0.0 && -lambda.imag() > noise_floor) {
    out.res.im_sign = -1;
    out.res.im_log = std::log(-lambda.imag());
    out.res.width_resolved = true;
  } else {
    out.res.im_sign = 0;
    out.res.width_resolved = false;
    if (lambda.imag() < 0.0) out.res.im_log = std::log(-lambda.imag());
  }
  return out;
}

}  // namespace helmres::oracle
