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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "viscodelay/certificate.hpp"
#include "viscodelay/config.hpp"

namespace viscodelay {

struct CommandContext {
  std::filesystem::path out_dir;  // empty: use the config's output field
  std::uint64_t seed = 1;
  int jobs = 1;
  std::ostream* log = nullptr;  // human-readable summary
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotCertified = 2;

/// Certificate as it applies to one parameter set.
struct CertificateOutcome {
  std::optional<ConstantsReport> constants;  // theta > 1
  std::optional<double> nodelay_threshold;   // tau = 0
  bool certified = false;
  std::string note;  // why no certificate applies, if none does
};

/// Throws ThetaOutOfRange for theta <= 1 unless tau = 0 and theta = 1.
CertificateOutcome evaluate_certificate(const KernelReport& kernel, double tau, double theta,
                                        double c_poincare, double k);

/// certificate.json and certificate.txt. Returns kExitOk when |k| is
/// certified and kExitNotCertified otherwise; errors propagate.
int cmd_certify(const RunConfig& config, const CommandContext& ctx);

/// energy.csv, report.json and energy.svg. Rows are flushed as they are
/// sampled so a failing run leaves a partial CSV behind.
int cmd_simulate(const RunConfig& config, const CommandContext& ctx);

/// sweep.csv and sweep.json, one simulation per k on up to ctx.jobs threads.
int cmd_sweep(const RunConfig& config, const CommandContext& ctx);

/// Formula hooks for the self-check, replaceable to test that it detects
/// a broken formula.
struct SelfcheckFormulas {
  std::function<double(const CertificateInputs&)> c0_saturated = formulas::c0_saturated;
  std::function<double(const CertificateInputs&)> c1 = formulas::c1;
  std::function<double(const CertificateInputs&)> c2_saturated = formulas::c2_saturated;
  std::function<double(double)> gamma1 = formulas::gamma1;
  std::function<double(const CertificateInputs&)> gamma2 = formulas::gamma2;
};

struct SelfcheckItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelfcheckReport {
  std::vector<SelfcheckItem> items;
  bool pass() const;
};

SelfcheckReport run_selfcheck(std::uint64_t seed, const SelfcheckFormulas& formulas = {});

/// Prints one line per check; kExitOk iff all pass.
int cmd_selfcheck(const CommandContext& ctx, const SelfcheckFormulas& formulas = {});

}  // namespace viscodelay
