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
#include <span>

#include "viscodelay/discretization.hpp"
#include "viscodelay/model.hpp"
#include "viscodelay/state.hpp"

namespace viscodelay {

struct Trace;

/// The four additive pieces of the energy F(t).
struct EnergyBreakdown {
  double kinetic = 0.0;  // 1/2 int u_t^2
  double elastic = 0.0;  // (1 - mu~)/2 int |u_x|^2
  double memory = 0.0;   // 1/2 int mu(s) int |eta_x(s)|^2
  double delay = 0.0;    // theta |k| e^tau / 2 int_{t-tau}^t e^{-(t-s)} int u_t^2(s)
  double total = 0.0;
};

/// Ingredients of the dissipation estimate for the auxiliary problem,
/// sampled at one time.
struct DissipationTerms {
  double memory_rate = 0.0;          // 1/2 int mu'(s) int |eta_x(s)|^2, <= 0
  double velocity_sq = 0.0;          // int u_t^2
  double delayed_velocity_sq = 0.0;  // int u_t(t - tau)^2
  double cross = 0.0;                // int u_t u_t(t - tau)
  double delay_energy = 0.0;         // delay term of F
};

/// theta |k| e^tau, the weight of the delay history in F and the extra
/// damping of the auxiliary problem.
double delay_weight(const ModelParams& params, double tau);

EnergyBreakdown energy(const SimState& state, const ModelParams& params,
                       const Discretization& disc);

/// `energy` is the breakdown of the same state; its delay term is reused.
DissipationTerms dissipation_terms(const SimState& state, const Discretization& disc,
                                   std::span<const double> delayed,
                                   const EnergyBreakdown& energy);

/// Right-hand side of F' <= 1/2 int mu'|eta_x|^2 - |k|(theta e^tau - 1)/2 int u_t^2
///                         - |k|(theta - 1)/2 int u_t(t - tau)^2.
double dissipation_bound(const DissipationTerms& terms, const ModelParams& params,
                         double tau);

/// Exact rate of change of F for the auxiliary problem,
///   F' = 1/2 int mu'|eta_x|^2 - xi/2 int u_t^2 - theta |k|/2 int u_t(t - tau)^2
///        - k int u_t u_t(t - tau) - (delay term of F),   xi = theta |k| e^tau,
/// from which the bound follows by Cauchy-Schwarz.
double dissipation_identity(const DissipationTerms& terms, const ModelParams& params,
                            double tau);

/// Symmetric bilinear form on packed states whose quadratic form is 2F, with
/// the delay history held on the rho grid (z rows) and z(rho = 0) = v.
double energy_inner_product(const FieldLayout& layout, std::span<const double> a,
                            std::span<const double> b, const ModelParams& params,
                            const Discretization& disc);

struct DissipationReport {
  bool pass = true;
  double max_increase = 0.0;   // largest F(t_{i+1}) - F(t_i), clipped at 0
  double max_violation = 0.0;  // largest dF/dt - mean bound over the pair, clipped at 0
  /// Largest |dF/dt - mean of the exact rate over the pair| / F(0). The
  /// bound is loose, so this is the part that measures discretization error.
  double identity_residual = 0.0;
  double initial_energy = 0.0;
  double increase_tolerance = 0.0;
  double violation_tolerance = 0.0;
  std::size_t worst_sample = 0;
};

/// Difference-form check of the dissipation estimate over consecutive
/// samples. Increments must stay below rel_tol F(0) and dF/dt may exceed
/// the bound by at most rel_tol F(0) / dt.
/// Throws WrongMode for traces of the original problem.
DissipationReport check_dissipation(const Trace& trace, const ModelParams& params,
                                    double rel_tol = 1e-6);

}  // namespace viscodelay
