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


#include "viscodelay/energy.hpp"

#include <algorithm>
#include <cmath>

#include "grid_ops.hpp"
#include "viscodelay/error.hpp"
#include "viscodelay/trace.hpp"

namespace viscodelay {

using detail::grad_pair;
using detail::l2;

namespace {

/// sum_ij B_ij <a_i, b_j>_grad for a symmetric tridiagonal B over eta rows.
template <class RowA, class RowB>
double tridiagonal_form(const std::vector<double>& diag, const std::vector<double>& off,
                        RowA row_a, RowB row_b, double dx) {
  const std::size_t n = diag.size();
  if (n < 2) return 0.0;
  const std::size_t cells = row_a(1).size() - 1;
  std::vector<double> da(cells), db(cells), prev_a(cells), prev_b(cells);
  double sum = 0.0;
  // Row 0 is s = 0 where eta vanishes.
  for (std::size_t j = 1; j < n; ++j) {
    const auto a = row_a(j);
    const auto b = row_b(j);
    double self = 0.0;
    double mixed = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
      da[i] = a[i + 1] - a[i];
      db[i] = b[i + 1] - b[i];
      self += da[i] * db[i];
      if (j > 1) mixed += prev_a[i] * db[i] + da[i] * prev_b[i];
    }
    sum += diag[j] * self + (j > 1 ? off[j - 1] * mixed : 0.0);
    std::swap(da, prev_a);
    std::swap(db, prev_b);
  }
  return sum / dx;
}

double trapezoid_end(std::size_t i, std::size_t n) { return (i == 0 || i == n) ? 0.5 : 1.0; }

}  // namespace

double delay_weight(const ModelParams& params, double tau) {
  return params.theta * std::abs(params.k) * std::exp(tau);
}

std::vector<double> Trace::totals() const {
  std::vector<double> out(energy.size());
  std::transform(energy.begin(), energy.end(), out.begin(),
                 [](const EnergyBreakdown& e) { return e.total; });
  return out;
}

EnergyBreakdown energy(const SimState& state, const ModelParams& params,
                       const Discretization& disc) {
  EnergyBreakdown e;
  const double dx = disc.dx;
  e.kinetic = 0.5 * l2(state.v(), state.v(), dx);
  e.elastic = 0.5 * (1.0 - disc.kernel.mu_tilde) * grad_pair(state.u(), state.u(), dx);
  if (state.layout.memory_rows > 0) {
    auto row = [&](std::size_t j) { return state.eta(j); };
    e.memory = 0.5 * tridiagonal_form(disc.memory.mass_diag, disc.memory.mass_off, row, row, dx);
  }
  const double weight = delay_weight(params, disc.tau);
  if (weight > 0.0 && disc.n_delay > 0) {
    double sum = 0.0;
    if (state.layout.rho_rows > 0) {
      const std::size_t n = state.layout.rho_rows;
      for (std::size_t r = 0; r <= n; ++r) {
        auto z = r == 0 ? state.v() : state.z(r - 1);
        const double rho = static_cast<double>(r) / static_cast<double>(n);
        sum += trapezoid_end(r, n) * std::exp(-disc.tau * rho) * l2(z, z, dx);
      }
      sum *= disc.tau / static_cast<double>(n);
    } else {
      const std::size_t n = state.history.depth();
      const double decay = std::exp(-disc.dt);
      double factor = 1.0;
      for (std::size_t lag = 0; lag <= n; ++lag, factor *= decay)
        sum += trapezoid_end(lag, n) * factor * state.history.sum_of_squares(lag);
      sum *= disc.dt * dx;
    }
    e.delay = 0.5 * weight * sum;
  }
  e.total = e.kinetic + e.elastic + e.memory + e.delay;
  return e;
}

DissipationTerms dissipation_terms(const SimState& state, const Discretization& disc,
                                   std::span<const double> delayed,
                                   const EnergyBreakdown& energy) {
  DissipationTerms d;
  const double dx = disc.dx;
  if (state.layout.memory_rows > 0) {
    auto row = [&](std::size_t j) { return state.eta(j); };
    d.memory_rate = 0.5 * tridiagonal_form(disc.memory.slope_mass_diag,
                                           disc.memory.slope_mass_off, row, row, dx);
  }
  d.velocity_sq = l2(state.v(), state.v(), dx);
  d.delayed_velocity_sq = l2(delayed, delayed, dx);
  d.cross = l2(state.v(), delayed, dx);
  d.delay_energy = energy.delay;
  return d;
}

double dissipation_bound(const DissipationTerms& terms, const ModelParams& params,
                         double tau) {
  const double ak = std::abs(params.k);
  return terms.memory_rate -
         0.5 * ak * (params.theta * std::exp(tau) - 1.0) * terms.velocity_sq -
         0.5 * ak * (params.theta - 1.0) * terms.delayed_velocity_sq;
}

double dissipation_identity(const DissipationTerms& terms, const ModelParams& params,
                            double tau) {
  const double ak = std::abs(params.k);
  return terms.memory_rate - 0.5 * delay_weight(params, tau) * terms.velocity_sq -
         0.5 * params.theta * ak * terms.delayed_velocity_sq - params.k * terms.cross -
         terms.delay_energy;
}

double energy_inner_product(const FieldLayout& layout, std::span<const double> a,
                            std::span<const double> b, const ModelParams& params,
                            const Discretization& disc) {
  const std::size_t p = layout.points;
  const double dx = disc.dx;
  auto field = [p](std::span<const double> y, std::size_t offset) {
    return y.subspan(offset, p);
  };
  const auto va = field(a, layout.v_offset());
  const auto vb = field(b, layout.v_offset());
  double sum = (1.0 - disc.kernel.mu_tilde) *
                   grad_pair(field(a, layout.u_offset()), field(b, layout.u_offset()), dx) +
               l2(va, vb, dx);
  if (layout.memory_rows > 0) {
    sum += tridiagonal_form(
        disc.memory.mass_diag, disc.memory.mass_off,
        [&](std::size_t j) { return field(a, layout.eta_offset(j)); },
        [&](std::size_t j) { return field(b, layout.eta_offset(j)); }, dx);
  }
  const double weight = delay_weight(params, disc.tau);
  if (weight > 0.0 && layout.rho_rows > 0) {
    const std::size_t n = layout.rho_rows;
    double z_sum = 0.0;
    for (std::size_t r = 0; r <= n; ++r) {
      auto za = r == 0 ? va : field(a, layout.z_offset(r - 1));
      auto zb = r == 0 ? vb : field(b, layout.z_offset(r - 1));
      const double rho = static_cast<double>(r) / static_cast<double>(n);
      z_sum += trapezoid_end(r, n) * std::exp(-disc.tau * rho) * l2(za, zb, dx);
    }
    sum += weight * disc.tau / static_cast<double>(n) * z_sum;
  }
  return sum;
}

DissipationReport check_dissipation(const Trace& trace, const ModelParams& params,
                                    double rel_tol) {
  if (trace.mode != ProblemMode::auxiliary)
    throw WrongMode("the dissipation estimate holds for the auxiliary problem only");
  DissipationReport report;
  if (trace.size() == 0) return report;
  const double f0 = trace.energy.front().total;
  report.initial_energy = f0;
  report.increase_tolerance = rel_tol * f0;
  report.violation_tolerance = trace.dt > 0.0 ? rel_tol * f0 / trace.dt : 0.0;
  if (!(f0 > 0.0)) return report;

  double worst = -1.0;
  for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
    const double dt = trace.times[i + 1] - trace.times[i];
    const double df = trace.energy[i + 1].total - trace.energy[i].total;
    const double rate = df / dt;
    report.max_increase = std::max(report.max_increase, df);
    // Trapezoid in time on both sides keeps the comparison second order.
    const double bound = 0.5 * (dissipation_bound(trace.terms[i], params, trace.tau) +
                                dissipation_bound(trace.terms[i + 1], params, trace.tau));
    const double violation = rate - bound;
    if (violation > worst) {
      worst = violation;
      report.worst_sample = i;
    }
    const double exact = 0.5 * (dissipation_identity(trace.terms[i], params, trace.tau) +
                                 dissipation_identity(trace.terms[i + 1], params, trace.tau));
    report.identity_residual = std::max(report.identity_residual, std::abs(rate - exact) / f0);
  }
  report.max_violation = std::max(worst, 0.0);
  report.pass = report.max_increase <= report.increase_tolerance &&
                report.max_violation <= report.violation_tolerance;
  return report;
}

}  // namespace viscodelay
