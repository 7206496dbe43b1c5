// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "helmres/solver.hpp"

namespace helmres::oracle {

// Finite-difference cross-check on a truncated cavity+neck+exterior domain
// with quadratic complex stretching in the outer layer.  Axis-aligned walls
// sit exactly on grid lines; validity is limited to widths above the grid
// noise floor (~1e-8 relative).
struct GridSpec {
  double h;                    // spacing; every wall offset is a multiple
  double exterior_width;       // physical exterior depth before the layer
  double exterior_halfheight;  // physical |y| extent before the layer
  double layer_depth;          // absorbing-layer thickness
  double sigma;                // stretch strength
  double shift;                // eigenvalue target
  bool closed_neck = false;    // wall at x = 0: cavity-only validation mode

  void validate(const solver::ResonatorGeometry& geom) const;
};

// Snapped default grid around the target eigenvalue; h = eps / points_across
// with the spacing adjusted so all walls stay on grid lines.
GridSpec default_grid(const solver::ResonatorGeometry& geom, double lambda0,
                      int points_across = 6);

struct OracleResult {
  solver::ResonanceResult res;
  double mass_cavity = 0.0;
  double mass_neck = 0.0;
  double mass_exterior = 0.0;  // physical exterior region only
  int unknowns = 0;
  int iterations = 0;
};

OracleResult oracle_resonance(const solver::ResonatorGeometry& geom,
                              const GridSpec& grid);

}  // namespace helmres::oracle
