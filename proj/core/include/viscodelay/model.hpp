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

#include <string_view>
#include <variant>

#include "viscodelay/kernel.hpp"

namespace viscodelay {

enum class ProblemMode {
  original,   // u_tt = (1-mu~) u_xx + int mu eta_xx - k u_t(t - tau)
  auxiliary,  // same plus the damping -theta |k| e^tau u_t
};

enum class DelayRealization {
  ring_buffer,  // stored velocity history, exact at whole steps
  rho_grid,     // transport tau z_t + z_rho = 0 on a uniform rho grid
};

std::string_view to_string(ProblemMode mode);
std::string_view to_string(DelayRealization realization);

/// Which variant of the delayed viscoelastic wave problem runs on (0, length).
struct ModelParams {
  double length = 1.0;
  double tau = 0.0;
  double k = 0.0;
  double theta = 2.0;
  MemoryKernel kernel;
  ProblemMode mode = ProblemMode::original;
  DelayRealization delay_realization = DelayRealization::ring_buffer;
};

struct SineProfile {
  int mode = 1;  // sin(mode pi x / L)
};

struct GaussianProfile {
  double center = 0.5;
  double width = 0.1;
};

/// u0(x, t) = phi(x) for t <= 0.
struct FrozenHistory {};

/// u0(x, t) = phi(x) cos(omega t) for t <= 0.
struct ModulatedHistory {
  double omega = 0.0;
};

/// Initial history u0(x, t) = amplitude * phi(x) * h(t), t <= 0.
struct InitialData {
  std::variant<SineProfile, GaussianProfile> shape = SineProfile{};
  double amplitude = 1.0;
  std::variant<FrozenHistory, ModulatedHistory> history = FrozenHistory{};

  double profile(double x, double length) const;
  double history_factor(double t) const;
  double history_rate(double t) const;
};

}  // namespace viscodelay
