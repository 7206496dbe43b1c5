// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>
#include <iostream>

#include "helmres/campaigns.hpp"

using helmres::cli::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"Thin-neck resonator laboratory: modal matching, width "
               "extraction, and closed-form verification"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int threads = 0;
  long seed = -1;
  app.add_option("--config", config_path, "configuration file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "worker threads");
  app.add_option("--seed", seed, "quasi-random seed");

  auto* verify = app.add_subcommand("verify", "closed-form constant checks");
  auto* sweep = app.add_subcommand("sweep", "width-law sweep over eps");
  auto* resonance = app.add_subcommand("resonance", "single resonance solve");
  auto* oracle = app.add_subcommand("oracle-compare",
                                    "modal solver vs finite-difference oracle");
  auto* gate = app.add_subcommand("dimension-gate", "dimension inequality table");
  for (auto* sub : {verify, sweep, resonance, oracle, gate}) {
    sub->fallthrough(true);  // global options may follow the subcommand
  }

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      cfg = RunConfig::from_file(config_path);
    } else {
      // Built-in defaults including the standard six-point sweep.
      cfg.eps_list = {0.35, 0.30, 0.25, 0.20, 0.16, 0.125};
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (threads > 0) cfg.threads = threads;
    if (seed >= 0) cfg.seed = unsigned(seed);
    cfg.validate();

    if (verify->parsed()) return helmres::cli::cmd_verify(cfg, std::cout);
    if (sweep->parsed()) return helmres::cli::cmd_sweep(cfg, std::cout);
    if (resonance->parsed()) return helmres::cli::cmd_resonance(cfg, std::cout);
    if (oracle->parsed()) return helmres::cli::cmd_oracle_compare(cfg, std::cout);
    if (gate->parsed()) return helmres::cli::cmd_dimension_gate(cfg, std::cout);
  } catch (const helmres::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
