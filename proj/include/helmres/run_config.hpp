// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "helmres/solver.hpp"

namespace helmres::cli {

// Flat sectioned key-value configuration.  Parsing is strict: unknown
// sections or keys are errors, so typos never silently change a run.
struct RunConfig {
  // [geometry]
  double a = 1.0;
  double b = 1.0;
  double L = 1.0;
  double eps = 0.3;               // single-point campaigns
  std::vector<double> eps_list;   // sweep campaign; must be set explicitly

  // [truncation]
  solver::ModeTruncation trunc;

  // [campaign]
  std::string campaign;  // optional default subcommand

  // [output]
  std::string out_dir = ".";

  // [run]
  unsigned seed = 1234;
  int threads = 1;

  // [verify]
  double gamma2_target = 0.879;

  // [oracle]
  int oracle_points_across = 9;
  double oracle_sigma = 4.0;

  static RunConfig from_file(const std::string& path);
  static RunConfig from_string(const std::string& text);

  // Effective configuration, re-parseable by from_string.
  std::string emit() const;

  void validate() const;
  void require_eps_list() const;
};

}  // namespace helmres::cli
