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


#include "viscodelay/discretization.hpp"

#include <cmath>
#include <string>

#include "viscodelay/error.hpp"

namespace viscodelay {

namespace {

void check_params(const ModelParams& params) {
  if (!(std::isfinite(params.length) && params.length > 0.0))
    throw InvalidInputs("length must be positive");
  if (!(std::isfinite(params.tau) && params.tau >= 0.0))
    throw InvalidInputs("tau must be non-negative");
  if (!std::isfinite(params.k)) throw InvalidInputs("k must be finite");
  if (!(std::isfinite(params.theta) && params.theta > 0.0))
    throw InvalidInputs("theta must be positive");
}

}  // namespace

Discretization discretize(const ModelParams& params, const GridSpec& spec) {
  check_params(params);
  if (spec.nx < 2) throw InvalidInputs("nx must be at least 2");
  if (!(spec.cfl > 0.0 && spec.cfl <= kMaxCfl))
    throw CflViolation("cfl " + std::to_string(spec.cfl) + " outside (0, 0.5]");

  Discretization disc;
  disc.length = params.length;
  disc.nx = spec.nx;
  disc.dx = params.length / (spec.nx + 1);
  disc.cfl = spec.cfl;
  disc.dt = spec.cfl * disc.dx;
  disc.tau_requested = params.tau;

  if (params.tau > 0.0) {
    if (params.tau < disc.dt)
      throw DelayUnresolvable("tau " + std::to_string(params.tau) +
                              " is shorter than one time step " + std::to_string(disc.dt));
    disc.n_delay = static_cast<int>(std::lround(params.tau / disc.dt));
    disc.tau = disc.n_delay * disc.dt;
  }
  if (params.delay_realization == DelayRealization::rho_grid && disc.n_delay > 0) {
    disc.n_rho = spec.n_rho > 0 ? spec.n_rho : disc.n_delay;
    // Courant number of the rho transport is n_rho dt / tau = n_rho / n_delay.
    if (disc.n_rho > disc.n_delay)
      throw CflViolation("n_rho " + std::to_string(disc.n_rho) + " exceeds n_delay " +
                         std::to_string(disc.n_delay) + "; the rho transport would be unstable");
  }

  disc.kernel = validate_kernel(params.kernel, spec.tail_tol);
  if (disc.kernel.memory_enabled()) {
    if (spec.ns < 3) throw InvalidInputs("ns must be at least 3");
    // First interval tied to dx so the s-resolution refines with the x-grid.
    auto grid = geometric_grid(disc.dx, disc.kernel.s_max, spec.ns);
    disc.s_ratio = grid.ratio;
    disc.memory = memory_quadrature(params.kernel, grid.nodes);
  }
  return disc;
}

void validate(const Discretization& disc, const ModelParams& params) {
  check_params(params);
  if (disc.nx < 2 || !(disc.dx > 0.0)) throw InvalidInputs("empty x-grid");
  if (!(disc.dt > 0.0 && disc.dt <= kMaxCfl * disc.dx * (1.0 + 1e-12)))
    throw CflViolation("dt exceeds 0.5 dx");
  if (params.tau > 0.0 && disc.n_delay < 1)
    throw DelayUnresolvable("tau > 0 needs at least one delay step");
  if (std::abs(disc.n_delay * disc.dt - params.tau) > 0.5 * disc.dt * (1.0 + 1e-9))
    throw DelayUnresolvable("tau is not within half a step of n_delay * dt");
  if (params.kernel.empty() != disc.memory.nodes.empty())
    throw InvalidInputs("s-grid does not match the kernel");
}

}  // namespace viscodelay
