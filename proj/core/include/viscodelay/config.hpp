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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "viscodelay/discretization.hpp"
#include "viscodelay/model.hpp"

namespace viscodelay {

/// Everything a subcommand needs, read from one JSON document.
struct RunConfig {
  ModelParams model;
  GridSpec grid;
  InitialData init;
  std::optional<double> c_poincare;  // defaults to (L / pi)^2
  double horizon = 50.0;             // "T"
  int sample_every = 1;
  bool snapshots = false;
  std::filesystem::path output = ".";
  std::vector<double> k_values;      // sweep; or k_min, k_max, count
  std::vector<double> theta_values;  // optional sweep over theta

  double poincare() const;
};

/// Throws ConfigError naming the offending field path, e.g. "kernel.terms[1].b".
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

/// The resolved configuration as a compact JSON document. With a
/// discretization the snapped tau, dt and grid sizes are included.
std::string config_json(const RunConfig& config, const Discretization* disc = nullptr);

}  // namespace viscodelay
