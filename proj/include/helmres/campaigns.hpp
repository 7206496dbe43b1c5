// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

#include "helmres/run_config.hpp"

namespace helmres::cli {

// Campaign drivers behind the command-line subcommands.  Each writes its
// machine-readable outputs under cfg.out_dir and a human summary to the
// console stream; the return value is the process exit code.
int cmd_verify(const RunConfig& cfg, std::ostream& console);
int cmd_sweep(const RunConfig& cfg, std::ostream& console);
int cmd_resonance(const RunConfig& cfg, std::ostream& console);
int cmd_oracle_compare(const RunConfig& cfg, std::ostream& console);
int cmd_dimension_gate(const RunConfig& cfg, std::ostream& console);

}  // namespace helmres::cli
