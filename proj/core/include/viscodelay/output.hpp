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

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "viscodelay/analysis.hpp"
#include "viscodelay/energy.hpp"
#include "viscodelay/trace.hpp"

namespace viscodelay {

/// Shortest round-trip form is not used on purpose: every value carries
/// 17 significant digits so files are byte-stable across platforms.
std::string format_number(double value);

inline constexpr std::string_view kEnergyCsvHeader = "t,total,kinetic,elastic,memory,delay";
inline constexpr std::string_view kSweepCsvHeader =
    "k,sigma_emp,r_squared,classification,certified,theorem_bound_ok";

/// "# config: {...}" comment line followed by the column header.
void write_energy_header(std::ostream& out, std::string_view config_json);
void write_energy_row(std::ostream& out, double t, const EnergyBreakdown& e);
void write_energy_csv(std::ostream& out, const Trace& trace, std::string_view config_json);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows,
                     std::string_view config_json);

/// Log-scale plot of F(t) with F(0) e^{1 - sigma t} overlaid when a rate is given.
std::string energy_svg(std::span<const double> times, std::span<const double> totals,
                       std::optional<double> envelope_rate, std::string_view config_json);

}  // namespace viscodelay
