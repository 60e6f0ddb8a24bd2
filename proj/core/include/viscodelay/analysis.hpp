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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "viscodelay/trace.hpp"

namespace viscodelay {

inline constexpr double kEnergyFloor = 1e-30;
inline constexpr double kDefaultGrowthThreshold = 1e-3;

struct FitWindow {
  double start = 0.0;
  double end = 0.0;
};

/// Least-squares line through (t, ln F) over a window.
struct DecayFit {
  double sigma_emp = 0.0;  // minus the slope
  double r_squared = 0.0;
  FitWindow window;
  std::size_t samples = 0;
};

/// Throws InsufficientData with fewer than 10 samples above kEnergyFloor.
DecayFit fit_decay_rate(std::span<const double> times, std::span<const double> values,
                        FitWindow window);

/// Default window [0.2 T, 0.9 T].
DecayFit fit_decay_rate(const Trace& trace, std::optional<FitWindow> window = std::nullopt);

enum class Classification { decaying, growing, inconclusive };

std::string_view to_string(Classification c);

Classification classify(const DecayFit& fit, double growth_threshold = kDefaultGrowthThreshold);

/// F(t) <= F(0) e^{1 - sigma t} at every sample, up to a relative `tol`.
struct EnvelopeCheck {
  bool ok = true;
  double worst_ratio = 0.0;  // max F(t) / (F(0) e^{1 - sigma t})
  std::optional<double> first_violation;  // time of the first failing sample
};

EnvelopeCheck check_theorem_bound(const Trace& trace, double sigma, double tol = 0.01);

/// int_S^T F <= C F(S) at every sample S, up to a relative `tol`.
struct IntegralCheck {
  bool ok = true;
  double worst_ratio = 0.0;  // max over S of int_S^T F / F(S), an empirical C
  double worst_time = 0.0;
};

/// Throws HorizonTooShort unless F(T) <= 1e-3 F(0).
IntegralCheck check_integral_inequality(const Trace& trace, double c_big, double tol = 0.01);

/// Both sides of the memory multiplier identity over [S, T].
///   lhs      mu~ int u_t^2
///   terms[0] [int u_t int mu eta]_S^T
///   terms[1] -int u_t int mu' eta
///   terms[2] (1 - mu~) int u_x int mu eta_x
///   terms[3] int |int mu eta_x|^2
///   terms[4] theta |k| e^tau int u_t int mu eta   (auxiliary damping)
///   terms[5] k int u_t(t - tau) int mu eta
struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  std::array<double, 6> terms{};
  double residual = 0.0;  // |lhs - rhs| / (|lhs| + |rhs| + floor)
};

/// Throws SnapshotsMissing when the trace has no snapshots and InvalidInputs
/// unless S < T lie within the recorded times.
IdentityCheck check_memory_identity(const Trace& trace, double s, double t);

/// One row of a k sweep.
struct SweepRow {
  double k = 0.0;
  double sigma_emp = 0.0;
  double r_squared = 0.0;
  std::string classification = "inconclusive";  // or "decaying", "growing", "failed"
  bool certified = false;                        // |k| < k0
  std::optional<bool> theorem_bound_ok;          // empty when no certificate applies
  double theta = 0.0;
  double sigma = 0.0;  // certified rate, 0 when not certified
  std::string error;
};

}  // namespace viscodelay
