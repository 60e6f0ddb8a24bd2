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


#include "viscodelay/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "grid_ops.hpp"
#include "viscodelay/error.hpp"

namespace viscodelay {

DecayFit fit_decay_rate(std::span<const double> times, std::span<const double> values,
                        FitWindow window) {
  std::vector<double> t, y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < window.start || times[i] > window.end) continue;
    if (!(values[i] > kEnergyFloor)) continue;
    t.push_back(times[i]);
    y.push_back(std::log(values[i]));
  }
  if (t.size() < 10)
    throw InsufficientData("need at least 10 samples above the energy floor in the fit window, got " +
                           std::to_string(t.size()));

  const double n = static_cast<double>(t.size());
  double t_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    t_mean += t[i];
    y_mean += y[i];
  }
  t_mean /= n;
  y_mean /= n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double dt = t[i] - t_mean;
    const double dy = y[i] - y_mean;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  if (!(stt > 0.0)) throw InsufficientData("fit window holds a single time");

  DecayFit fit;
  const double slope = sty / stt;
  fit.sigma_emp = -slope;
  // A flat log-energy is fitted exactly.
  fit.r_squared = syy > 0.0 ? std::clamp(sty * sty / (stt * syy), 0.0, 1.0) : 1.0;
  fit.window = window;
  fit.samples = t.size();
  return fit;
}

DecayFit fit_decay_rate(const Trace& trace, std::optional<FitWindow> window) {
  if (trace.size() == 0) throw InsufficientData("empty trace");
  const double horizon = trace.times.back();
  const auto w = window.value_or(FitWindow{0.2 * horizon, 0.9 * horizon});
  const auto totals = trace.totals();
  return fit_decay_rate(trace.times, totals, w);
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::decaying: return "decaying";
    case Classification::growing: return "growing";
    case Classification::inconclusive: break;
  }
  return "inconclusive";
}

Classification classify(const DecayFit& fit, double growth_threshold) {
  if (fit.r_squared > 0.9) {
    if (fit.sigma_emp > growth_threshold) return Classification::decaying;
    if (fit.sigma_emp < -growth_threshold) return Classification::growing;
  }
  return Classification::inconclusive;
}

EnvelopeCheck check_theorem_bound(const Trace& trace, double sigma, double tol) {
  EnvelopeCheck check;
  if (trace.size() == 0) return check;
  const double f0 = trace.energy.front().total;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double f = trace.energy[i].total;
    const double envelope = f0 * std::exp(1.0 - sigma * trace.times[i]);
    const double ratio = envelope > 0.0 ? f / envelope : (f > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    check.worst_ratio = std::max(check.worst_ratio, ratio);
    if (!(ratio <= 1.0 + tol) && check.ok) {
      check.ok = false;
      check.first_violation = trace.times[i];
    }
  }
  return check;
}

IntegralCheck check_integral_inequality(const Trace& trace, double c_big, double tol) {
  IntegralCheck check;
  if (trace.size() == 0) return check;
  const double f0 = trace.energy.front().total;
  const double f_end = trace.energy.back().total;
  if (f_end > 1e-3 * f0)
    throw HorizonTooShort("F(T) / F(0) = " + std::to_string(f_end / f0) +
                          " exceeds 1e-3; extend the horizon");
  // Suffix trapezoid sums int_{t_i}^T F.
  double tail = 0.0;
  for (std::size_t i = trace.size(); i-- > 0;) {
    if (i + 1 < trace.size())
      tail += 0.5 * (trace.energy[i].total + trace.energy[i + 1].total) *
              (trace.times[i + 1] - trace.times[i]);
    const double f = trace.energy[i].total;
    if (!(f > 0.0)) continue;  // 0/0 at a vanishing state
    const double ratio = tail / f;
    if (ratio > check.worst_ratio) {
      check.worst_ratio = ratio;
      check.worst_time = trace.times[i];
    }
    if (!(tail <= c_big * f * (1.0 + tol))) check.ok = false;
  }
  return check;
}

IdentityCheck check_memory_identity(const Trace& trace, double s, double t) {
  if (trace.snapshots.empty() || trace.snapshots.size() != trace.size())
    throw SnapshotsMissing("the identity check needs a snapshot at every sample");
  if (!(s < t)) throw InvalidInputs("identity window needs S < T");
  const double eps = 1e-9 * std::max(1.0, t);
  std::size_t first = trace.size(), last = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (trace.times[i] >= s - eps && first == trace.size()) first = i;
    if (trace.times[i] <= t + eps) last = i;
  }
  if (first >= trace.size() || std::abs(trace.times[first] - s) > eps ||
      std::abs(trace.times[last] - t) > eps || last <= first)
    throw InvalidInputs("S and T must be sample times of the trace");

  using detail::grad_pair;
  using detail::l2;
  const double dx = trace.dx;
  const double mt = trace.mu_tilde;

  struct Integrands {
    double vv, vq, up, pp, vp, dp;
  };
  auto at = [&](std::size_t i) {
    const auto& sn = trace.snapshots[i];
    return Integrands{l2(sn.v, sn.v, dx),
                      l2(sn.v, sn.slope_moment, dx),
                      grad_pair(sn.u, sn.memory_moment, dx),
                      grad_pair(sn.memory_moment, sn.memory_moment, dx),
                      l2(sn.v, sn.memory_moment, dx),
                      l2(sn.delayed, sn.memory_moment, dx)};
  };

  Integrands sum{0, 0, 0, 0, 0, 0};
  Integrands prev = at(first);
  for (std::size_t i = first + 1; i <= last; ++i) {
    const Integrands cur = at(i);
    const double h = 0.5 * (trace.times[i] - trace.times[i - 1]);
    sum.vv += h * (prev.vv + cur.vv);
    sum.vq += h * (prev.vq + cur.vq);
    sum.up += h * (prev.up + cur.up);
    sum.pp += h * (prev.pp + cur.pp);
    sum.vp += h * (prev.vp + cur.vp);
    sum.dp += h * (prev.dp + cur.dp);
    prev = cur;
  }

  IdentityCheck check;
  check.lhs = mt * sum.vv;
  check.terms = {at(last).vp - at(first).vp,
                 -sum.vq,
                 (1.0 - mt) * sum.up,
                 sum.pp,
                 trace.damping * sum.vp,
                 trace.k * sum.dp};
  for (double term : check.terms) check.rhs += term;
  check.residual = std::abs(check.lhs - check.rhs) /
                   (std::abs(check.lhs) + std::abs(check.rhs) + std::numeric_limits<double>::min());
  return check;
}

}  // namespace viscodelay
