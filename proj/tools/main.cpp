// Copyright 2026 The viscodelay Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// viscodelay: certify, simulate and sweep the delayed viscoelastic wave equation.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "viscodelay/commands.hpp"
#include "viscodelay/config.hpp"
#include "viscodelay/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Simulation and stability certificates for the viscoelastic wave equation "
               "with delayed damping"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 1;
  int jobs = 1;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* opt = cmd->add_option("--config", config_path, "JSON run configuration");
    if (needs_config) opt->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out_dir, "output directory (overrides the config's output)");
    cmd->add_option("--seed", seed, "seed for randomized checks");
    cmd->add_option("--jobs", jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
  };

  auto* certify = app.add_subcommand("certify", "compute the stability constants and thresholds");
  auto* simulate = app.add_subcommand("simulate", "integrate one configuration and analyse its energy");
  auto* sweep = app.add_subcommand("sweep", "simulate a list of k values");
  auto* selfcheck = app.add_subcommand("selfcheck", "built-in consistency checks");
  add_common(certify, true);
  add_common(simulate, true);
  add_common(sweep, true);
  add_common(selfcheck, false);

  CLI11_PARSE(app, argc, argv);

  viscodelay::CommandContext ctx;
  ctx.out_dir = out_dir;
  ctx.seed = seed;
  ctx.jobs = jobs;
  ctx.log = &std::cout;

  try {
    if (selfcheck->parsed()) return viscodelay::cmd_selfcheck(ctx);
    const auto config = viscodelay::load_config(config_path);
    if (certify->parsed()) return viscodelay::cmd_certify(config, ctx);
    if (simulate->parsed()) return viscodelay::cmd_simulate(config, ctx);
    if (sweep->parsed()) return viscodelay::cmd_sweep(config, ctx);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return viscodelay::kExitError;
  }
  return viscodelay::kExitError;
}
