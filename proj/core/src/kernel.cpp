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

#include "viscodelay/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "viscodelay/error.hpp"

namespace viscodelay {

double MemoryKernel::value(double s) const noexcept {
  double sum = 0.0;
  for (const auto& term : terms_) sum += term.amplitude * std::exp(-term.rate * s);
  return sum;
}

double MemoryKernel::derivative(double s) const noexcept {
  double sum = 0.0;
  for (const auto& term : terms_)
    sum -= term.amplitude * term.rate * std::exp(-term.rate * s);
  return sum;
}

double MemoryKernel::mass() const noexcept { return tail_mass(0.0); }

double MemoryKernel::tail_mass(double s) const noexcept {
  double sum = 0.0;
  for (const auto& term : terms_)
    sum += term.amplitude / term.rate * std::exp(-term.rate * s);
  return sum;
}

KernelReport validate_kernel(const MemoryKernel& kernel, double tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0))
    throw InvalidInputs("tail_tol must lie in (0, 1)");

  KernelReport report;
  if (kernel.empty()) return report;

  double alpha = std::numeric_limits<double>::infinity();
  for (const auto& term : kernel.terms()) {
    if (!std::isfinite(term.amplitude) || !(term.amplitude > 0.0))
      throw KernelInvalid(
          "assumption (i) mu(0) = mu0 > 0 violated: every amplitude must be positive");
    if (!std::isfinite(term.rate) || !(term.rate > 0.0))
      throw KernelInvalid(
          "assumption (iii) mu' <= -alpha mu violated: every rate must be positive");
    alpha = std::min(alpha, term.rate);
  }
  const double mass = kernel.mass();
  if (!(mass < 1.0))
    throw KernelInvalid("assumption (ii) int mu < 1 violated: total mass is " +
                        std::to_string(mass));

  report.mu0 = kernel.value(0.0);
  report.mu_tilde = mass;
  report.alpha = alpha;

  // tail_mass is strictly decreasing; bracket then bisect.
  const double target = tail_tol * mass;
  double lo = 0.0;
  double hi = 1.0 / alpha;
  while (kernel.tail_mass(hi) > target) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kernel.tail_mass(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  report.s_max = hi;
  report.tail_mass = kernel.tail_mass(hi);
  return report;
}

double kernel_value(const MemoryKernel& kernel, double s) { return kernel.value(s); }

namespace {

// m_k = int_0^1 t^k exp(-q t) dt for k = 0, 1, 2.
struct ExpMoments {
  double m0, m1, m2;
};

ExpMoments exp_moments(double q) {
  if (q < 2.0) {
    ExpMoments m{0.0, 0.0, 0.0};
    double coeff = 1.0;  // (-q)^n / n!
    for (int n = 0; n < 60; ++n) {
      const double t0 = coeff / (n + 1);
      m.m0 += t0;
      m.m1 += coeff / (n + 2);
      m.m2 += coeff / (n + 3);
      if (std::abs(t0) < 1e-18) break;
      coeff *= -q / (n + 1);
    }
    return m;
  }
  const double e = std::exp(-q);
  const double m0 = -std::expm1(-q) / q;
  const double m1 = (m0 - e) / q;
  const double m2 = (2.0 * m1 - e) / q;
  return {m0, m1, m2};
}

}  // namespace

MemoryQuadrature memory_quadrature(const MemoryKernel& kernel,
                                   std::span<const double> nodes) {
  MemoryQuadrature quad;
  const std::size_t n = nodes.size();
  quad.nodes.assign(nodes.begin(), nodes.end());
  quad.weights.assign(n, 0.0);
  quad.slope_weights.assign(n, 0.0);
  quad.mass_diag.assign(n, 0.0);
  quad.slope_mass_diag.assign(n, 0.0);
  quad.advection_diag.assign(n, 0.0);
  const std::size_t cells = n > 0 ? n - 1 : 0;
  quad.mass_off.assign(cells, 0.0);
  quad.slope_mass_off.assign(cells, 0.0);
  quad.advection_upper.assign(cells, 0.0);
  quad.advection_lower.assign(cells, 0.0);

  for (std::size_t c = 0; c < cells; ++c) {
    const double x0 = nodes[c];
    const double h = nodes[c + 1] - x0;
    if (!(h > 0.0)) throw InvalidInputs("s-grid nodes must be strictly increasing");
    double w_left = 0.0, w_right = 0.0;
    double m_ll = 0.0, m_lr = 0.0, m_rr = 0.0;
    double d_left = 0.0, d_right = 0.0;
    double dm_ll = 0.0, dm_lr = 0.0, dm_rr = 0.0;
    for (const auto& term : kernel.terms()) {
      const double scale = term.amplitude * std::exp(-term.rate * x0) * h;
      const auto m = exp_moments(term.rate * h);
      const double wl = scale * (m.m0 - m.m1);
      const double wr = scale * m.m1;
      const double ll = scale * (m.m0 - 2.0 * m.m1 + m.m2);
      const double lr = scale * (m.m1 - m.m2);
      const double rr = scale * m.m2;
      w_left += wl;
      w_right += wr;
      m_ll += ll;
      m_lr += lr;
      m_rr += rr;
      d_left -= term.rate * wl;
      d_right -= term.rate * wr;
      dm_ll -= term.rate * ll;
      dm_lr -= term.rate * lr;
      dm_rr -= term.rate * rr;
    }
    quad.weights[c] += w_left;
    quad.weights[c + 1] += w_right;
    quad.slope_weights[c] += d_left;
    quad.slope_weights[c + 1] += d_right;
    quad.mass_diag[c] += m_ll;
    quad.mass_diag[c + 1] += m_rr;
    quad.mass_off[c] += m_lr;
    quad.slope_mass_diag[c] += dm_ll;
    quad.slope_mass_diag[c + 1] += dm_rr;
    quad.slope_mass_off[c] += dm_lr;
    // phi_left' = -1/h, phi_right' = +1/h on this cell.
    quad.advection_diag[c] -= w_left / h;
    quad.advection_upper[c] += w_left / h;
    quad.advection_lower[c] -= w_right / h;
    quad.advection_diag[c + 1] += w_right / h;
  }
  return quad;
}

GeometricGrid geometric_grid(double first_step, double s_max, int count) {
  if (count < 2) throw InvalidInputs("s-grid needs at least two nodes");
  if (!(first_step > 0.0) || !(s_max > 0.0))
    throw InvalidInputs("s-grid first step and extent must be positive");

  const int intervals = count - 1;
  GeometricGrid grid;
  grid.nodes.resize(static_cast<std::size_t>(count));
  if (first_step * intervals >= s_max) {
    for (int j = 0; j < count; ++j) grid.nodes[j] = s_max * j / intervals;
    return grid;
  }

  auto extent = [&](double r) {
    return first_step * std::expm1(intervals * std::log(r)) / (r - 1.0);
  };
  double lo = 1.0;
  double hi = 2.0;
  while (extent(hi) < s_max) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == 1.0 || extent(mid) < s_max)
      lo = mid;
    else
      hi = mid;
  }
  grid.ratio = 0.5 * (lo + hi);

  double s = 0.0;
  double h = first_step;
  grid.nodes[0] = 0.0;
  for (int j = 1; j < count; ++j) {
    s += h;
    grid.nodes[j] = s;
    h *= grid.ratio;
  }
  grid.nodes.back() = s_max;
  return grid;
}

}  // namespace viscodelay
