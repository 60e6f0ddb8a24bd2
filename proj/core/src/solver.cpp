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


#include "viscodelay/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "grid_ops.hpp"
#include "viscodelay/energy.hpp"
#include "viscodelay/error.hpp"

namespace viscodelay {

Solver::Solver(ModelParams params, Discretization disc)
    : params_(std::move(params)), disc_(std::move(disc)) {
  validate(disc_, params_);
  layout_.points = disc_.points();
  layout_.memory_rows = disc_.ns();
  const bool rho = params_.delay_realization == DelayRealization::rho_grid && disc_.n_delay > 0;
  layout_.rho_rows = rho ? static_cast<std::size_t>(disc_.n_rho) : 0;
  if (rho && disc_.n_rho < 1) throw InvalidInputs("rho grid needs at least one cell");

  elastic_ = 1.0 - disc_.kernel.mu_tilde;
  if (params_.mode == ProblemMode::auxiliary) damping_ = delay_weight(params_, disc_.tau);

  // Thomas factors of the mass matrix restricted to rows 1..ns-1 (eta(0) = 0).
  const auto& m = disc_.memory;
  if (layout_.memory_rows > 1) {
    const std::size_t n = layout_.memory_rows - 1;
    sub_.assign(n, 0.0);
    sup_prime_.assign(n, 0.0);
    inv_pivot_.assign(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t j = r + 1;
      const double sup = r + 1 < n ? m.mass_off[j] : 0.0;
      double pivot = m.mass_diag[j];
      if (r > 0) {
        sub_[r] = m.mass_off[j - 1];
        pivot -= sub_[r] * sup_prime_[r - 1];
      }
      inv_pivot_[r] = 1.0 / pivot;
      sup_prime_[r] = sup * inv_pivot_[r];
    }
  }

  const std::size_t size = layout_.size();
  for (auto* v : {&k1_, &k2_, &k3_, &k4_, &stage_}) v->assign(size, 0.0);
  midpoint_.assign(layout_.points, 0.0);
  moment_.assign(layout_.points, 0.0);
}

SimState Solver::build(const InitialData& init) const {
  SimState state;
  state.layout = layout_;
  state.y.assign(layout_.size(), 0.0);
  const std::size_t p = layout_.points;
  const auto& nodes = disc_.memory.nodes;
  for (std::size_t i = 1; i + 1 < p; ++i) {
    const double phi = init.profile(disc_.x(i), disc_.length);
    state.u()[i] = phi * init.history_factor(0.0);
    state.v()[i] = phi * init.history_rate(0.0);
    // eta_0(s) = u0(0) - u0(-s)
    for (std::size_t j = 1; j < layout_.memory_rows; ++j)
      state.eta(j)[i] = phi * (init.history_factor(0.0) - init.history_factor(-nodes[j]));
    // z0(rho) = d/dt u0(-tau rho)
    for (std::size_t r = 0; r < layout_.rho_rows; ++r) {
      const double rho = static_cast<double>(r + 1) / static_cast<double>(layout_.rho_rows);
      state.z(r)[i] = phi * init.history_rate(-disc_.tau * rho);
    }
  }
  if (disc_.n_delay > 0 && layout_.rho_rows == 0) {
    state.history = DelayLine(static_cast<std::size_t>(disc_.n_delay), p);
    std::vector<double> field(p, 0.0);
    for (std::size_t lag = 0; lag <= state.history.depth(); ++lag) {
      const double rate = init.history_rate(-disc_.dt * static_cast<double>(lag));
      for (std::size_t i = 1; i + 1 < p; ++i)
        field[i] = init.profile(disc_.x(i), disc_.length) * rate;
      state.history.assign(lag, field);
    }
  }
  return state;
}

void Solver::solve_mass(std::span<double> rate) const {
  const std::size_t p = layout_.points;
  const std::size_t n = inv_pivot_.size();
  auto row = [&](std::size_t r) { return rate.subspan(layout_.eta_offset(r + 1), p); };
  {
    auto d = row(0);
    for (std::size_t i = 0; i < p; ++i) d[i] *= inv_pivot_[0];
  }
  for (std::size_t r = 1; r < n; ++r) {
    auto d = row(r);
    auto prev = row(r - 1);
    for (std::size_t i = 0; i < p; ++i) d[i] = (d[i] - sub_[r] * prev[i]) * inv_pivot_[r];
  }
  for (std::size_t r = n - 1; r-- > 0;) {
    auto d = row(r);
    auto next = row(r + 1);
    for (std::size_t i = 0; i < p; ++i) d[i] -= sup_prime_[r] * next[i];
  }
}

void Solver::evaluate(std::span<const double> y, std::span<const double> delayed,
                      std::span<double> rate) {
  const std::size_t p = layout_.points;
  const double dx = disc_.dx;
  auto in = [&](std::size_t offset) { return y.subspan(offset, p); };
  auto out = [&](std::size_t offset) { return rate.subspan(offset, p); };

  const auto u = in(layout_.u_offset());
  const auto v = in(layout_.v_offset());
  std::span<const double> lagged = v;  // tau = 0: k u_t(t)
  if (layout_.rho_rows > 0)
    lagged = in(layout_.z_offset(layout_.rho_rows - 1));
  else if (disc_.n_delay > 0)
    lagged = delayed;

  std::copy(v.begin(), v.end(), out(layout_.u_offset()).begin());

  auto rv = out(layout_.v_offset());
  for (std::size_t i = 0; i < p; ++i) rv[i] = -damping_ * v[i] - params_.k * lagged[i];
  rv[0] = rv[p - 1] = 0.0;
  detail::add_laplacian(u, elastic_, dx, rv);

  const std::size_t ns = layout_.memory_rows;
  if (ns > 0) {
    const auto& m = disc_.memory;
    std::fill(moment_.begin(), moment_.end(), 0.0);
    for (std::size_t j = 1; j < ns; ++j) {
      const auto eta = in(layout_.eta_offset(j));
      for (std::size_t i = 0; i < p; ++i) moment_[i] += m.weights[j] * eta[i];
    }
    detail::add_laplacian(moment_, 1.0, dx, rv);

    // M eta' = -A eta + W v on rows 1..ns-1; row 0 stays at zero.
    std::fill_n(out(layout_.eta_offset(0)).begin(), p, 0.0);
    for (std::size_t j = 1; j < ns; ++j) {
      auto r = out(layout_.eta_offset(j));
      const auto eta = in(layout_.eta_offset(j));
      const auto below = in(layout_.eta_offset(j - 1));
      const double lo = j > 1 ? m.advection_lower[j - 1] : 0.0;
      const double di = m.advection_diag[j];
      for (std::size_t i = 0; i < p; ++i)
        r[i] = m.weights[j] * v[i] - di * eta[i] - lo * below[i];
      if (j + 1 < ns) {
        const auto above = in(layout_.eta_offset(j + 1));
        const double up = m.advection_upper[j];
        for (std::size_t i = 0; i < p; ++i) r[i] -= up * above[i];
      }
    }
    solve_mass(rate);
  }

  if (layout_.rho_rows > 0) {
    // tau z_t + z_rho = 0, upwind, z(rho = 0) = v.
    const double c = static_cast<double>(layout_.rho_rows) / disc_.tau;
    for (std::size_t r = 0; r < layout_.rho_rows; ++r) {
      const auto z = in(layout_.z_offset(r));
      const auto up = r == 0 ? v : in(layout_.z_offset(r - 1));
      auto rz = out(layout_.z_offset(r));
      for (std::size_t i = 0; i < p; ++i) rz[i] = -c * (z[i] - up[i]);
    }
  }
}

std::span<const double> Solver::delayed_velocity(const SimState& state) const {
  if (layout_.rho_rows > 0) return state.z(layout_.rho_rows - 1);
  if (disc_.n_delay > 0) return state.history.lagged(static_cast<std::size_t>(disc_.n_delay));
  return state.v();
}

void Solver::step(SimState& state) {
  const double dt = disc_.dt;
  const std::size_t size = layout_.size();
  std::span<const double> d_start, d_mid, d_end;
  const bool ring = disc_.n_delay > 0 && layout_.rho_rows == 0;
  if (ring) {
    // Stage times t, t + dt/2, t + dt map to lags n, n - 1/2, n - 1.
    const auto n = static_cast<std::size_t>(disc_.n_delay);
    d_start = state.history.lagged(n);
    d_end = state.history.lagged(n - 1);
    for (std::size_t i = 0; i < midpoint_.size(); ++i)
      midpoint_[i] = 0.5 * (d_start[i] + d_end[i]);
    d_mid = midpoint_;
  }

  const auto& y = state.y;
  evaluate(y, d_start, k1_);
  for (std::size_t i = 0; i < size; ++i) stage_[i] = y[i] + 0.5 * dt * k1_[i];
  evaluate(stage_, d_mid, k2_);
  for (std::size_t i = 0; i < size; ++i) stage_[i] = y[i] + 0.5 * dt * k2_[i];
  evaluate(stage_, d_mid, k3_);
  for (std::size_t i = 0; i < size; ++i) stage_[i] = y[i] + dt * k3_[i];
  evaluate(stage_, d_end, k4_);

  bool finite = true;
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < size; ++i) {
    state.y[i] += w * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    finite = finite && std::isfinite(state.y[i]);
  }
  ++state.step;
  state.t = static_cast<double>(state.step) * dt;
  if (!finite) throw NonFinite(state.step, state.t);
  if (ring) state.history.push(state.v());
}

long steps_for(double horizon, double dt) {
  if (!(horizon > 0.0)) return 0;
  return static_cast<long>(std::ceil(horizon / dt - 1e-9));
}

void memory_moments(const Discretization& disc, const SimState& state,
                    std::vector<double>& memory_moment, std::vector<double>& slope_moment) {
  const std::size_t p = state.layout.points;
  memory_moment.assign(p, 0.0);
  slope_moment.assign(p, 0.0);
  for (std::size_t j = 1; j < state.layout.memory_rows; ++j) {
    const auto eta = state.eta(j);
    for (std::size_t i = 0; i < p; ++i) {
      memory_moment[i] += disc.memory.weights[j] * eta[i];
      slope_moment[i] += disc.memory.slope_weights[j] * eta[i];
    }
  }
}

Trace run(Solver& solver, SimState& state, const RunOptions& options) {
  const auto& disc = solver.discretization();
  const auto& params = solver.params();
  if (options.sample_every < 1) throw InvalidInputs("sample_every must be at least 1");

  Trace trace;
  trace.mode = params.mode;
  trace.dt = disc.dt;
  trace.dx = disc.dx;
  trace.tau = disc.tau;
  trace.mu_tilde = disc.kernel.mu_tilde;
  trace.damping = solver.damping();
  trace.k = params.k;

  bool keep_going = true;
  auto record = [&] {
    const auto delayed = solver.delayed_velocity(state);
    const auto e = energy(state, params, disc);
    trace.times.push_back(state.t);
    trace.energy.push_back(e);
    trace.terms.push_back(dissipation_terms(state, disc, delayed, e));
    if (options.snapshots) {
      Snapshot snap;
      snap.t = state.t;
      snap.u.assign(state.u().begin(), state.u().end());
      snap.v.assign(state.v().begin(), state.v().end());
      snap.delayed.assign(delayed.begin(), delayed.end());
      memory_moments(disc, state, snap.memory_moment, snap.slope_moment);
      trace.snapshots.push_back(std::move(snap));
    }
    if (options.on_sample && !options.on_sample(state.t, e)) keep_going = false;
  };

  record();
  const long steps = steps_for(options.horizon, disc.dt);
  for (long s = 1; s <= steps && keep_going; ++s) {
    solver.step(state);
    if (s % options.sample_every == 0 || s == steps) record();
  }
  return trace;
}

Trace run(const ModelParams& params, const InitialData& init, const Discretization& disc,
          const RunOptions& options) {
  Solver solver(params, disc);
  auto state = solver.build(init);
  return run(solver, state, options);
}

SpotCheckResult dissipativity_spot_check(const ModelParams& params, const GridSpec& grid,
                                         int trials, double c_shift, std::uint64_t seed) {
  if (trials < 1) throw InvalidInputs("trials must be at least 1");
  ModelParams p = params;
  p.delay_realization = DelayRealization::rho_grid;
  Solver solver(p, discretize(p, grid));
  const auto& layout = solver.layout();
  const auto& disc = solver.discretization();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> y(layout.size());
  std::vector<double> rate(layout.size());

  SpotCheckResult result;
  result.c_shift = c_shift;
  result.trials = trials;
  result.max_quotient = -std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    for (auto& value : y) value = normal(rng);
    // Boundary nodes and eta(s = 0) are structurally zero.
    const std::size_t rows = layout.size() / layout.points;
    for (std::size_t r = 0; r < rows; ++r) {
      y[r * layout.points] = 0.0;
      y[r * layout.points + layout.points - 1] = 0.0;
    }
    if (layout.memory_rows > 0)
      std::fill_n(y.begin() + static_cast<std::ptrdiff_t>(layout.eta_offset(0)), layout.points, 0.0);
    const double norm_sq = energy_inner_product(layout, y, y, p, disc);
    if (!(norm_sq > 0.0)) continue;
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& value : y) value *= scale;
    solver.evaluate(y, {}, rate);
    const double q = energy_inner_product(layout, rate, y, p, disc);
    result.max_quotient = std::max(result.max_quotient, q);
  }
  result.pass = result.max_quotient <= c_shift;
  return result;
}

}  // namespace viscodelay
