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

#include <cstddef>

#include "viscodelay/kernel.hpp"
#include "viscodelay/model.hpp"

namespace viscodelay {

/// User-facing resolution knobs.
struct GridSpec {
  int nx = 200;       // interior x points
  double cfl = 0.25;  // dt / dx
  int ns = 64;        // s-grid nodes including s = 0
  double tail_tol = kDefaultTailTol;
  int n_rho = 0;      // rho-grid cells; 0 picks n_delay
};

inline constexpr double kMaxCfl = 0.5;

/// Fully resolved grids. tau is snapped to n_delay * dt and the snapped
/// value is the one every downstream computation uses.
struct Discretization {
  double length = 1.0;
  int nx = 0;
  double dx = 0.0;
  double cfl = 0.0;
  double dt = 0.0;
  double tau = 0.0;
  double tau_requested = 0.0;
  int n_delay = 0;
  int n_rho = 0;
  double s_ratio = 1.0;
  KernelReport kernel;
  MemoryQuadrature memory;  // empty when the kernel is empty

  std::size_t points() const noexcept { return static_cast<std::size_t>(nx) + 2; }
  std::size_t ns() const noexcept { return memory.size(); }
  double x(std::size_t i) const noexcept { return static_cast<double>(i) * dx; }
};

/// Throws CflViolation, DelayUnresolvable, KernelInvalid or InvalidInputs.
Discretization discretize(const ModelParams& params, const GridSpec& spec = {});

/// Re-checks the invariants of an existing discretization.
void validate(const Discretization& disc, const ModelParams& params);

}  // namespace viscodelay
