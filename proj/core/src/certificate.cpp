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

#include "viscodelay/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "viscodelay/error.hpp"

namespace viscodelay {

namespace {

void check_common(const CertificateInputs& in) {
  const auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(in.mu0) || !finite(in.mu_tilde) || !finite(in.alpha) || !finite(in.tau) ||
      !finite(in.theta) || !finite(in.c_poincare) || !finite(in.k))
    throw InvalidInputs("certificate inputs must be finite");
  if (!(in.mu_tilde > 0.0 && in.mu_tilde < 1.0))
    throw InvalidInputs("mu_tilde must lie in (0, 1)");
  if (!(in.mu0 > 0.0)) throw InvalidInputs("mu0 must be positive");
  if (!(in.alpha > 0.0)) throw InvalidInputs("alpha must be positive");
  if (!(in.tau >= 0.0)) throw InvalidInputs("tau must be non-negative");
  if (!(in.c_poincare > 0.0)) throw InvalidInputs("c_poincare must be positive");
}

void check_delayed(const CertificateInputs& in) {
  check_common(in);
  if (!(in.theta > 1.0))
    throw ThetaOutOfRange(
        "theta must exceed 1 for the delayed energy (theta = 1 is only "
        "admissible through the no-delay threshold with tau = 0)");
}

}  // namespace

namespace formulas {

double c0(const CertificateInputs& in, double abs_k) {
  return 2.0 + in.theta * abs_k * std::exp(in.tau);
}

double c1(const CertificateInputs& in) {
  const double mt = in.mu_tilde;
  return 4.0 * (1.0 + mt / (in.alpha * (1.0 - mt)) + in.c_poincare / (1.0 - mt) +
                1.0 / (2.0 * (in.theta - 1.0)));
}

double c2(const CertificateInputs& in, double delay_gain, double poincare_coupling) {
  const double mt = in.mu_tilde;
  const double cp = in.c_poincare;
  return 4.0 / mt * (1.0 + 0.5 / (in.theta - 1.0) + in.mu0 / mt * cp) + 4.0 * cp +
         2.0 / in.alpha *
             (2.0 + (6.0 + 2.0 * delay_gain) * (1.0 - mt) / mt + poincare_coupling);
}

double c2_at(const CertificateInputs& in, double abs_k) {
  const double et = std::exp(in.tau);
  return c2(in, in.theta * abs_k * et, in.c_poincare * abs_k * (in.theta * et + 1.0));
}

double c2_saturated(const CertificateInputs& in) {
  return c2(in, 0.5 * in.mu_tilde, 0.5 * (1.0 - in.mu_tilde));
}

double c0_saturated(const CertificateInputs& in) { return 2.0 + 0.5 * in.mu_tilde; }

double integral_constant(const CertificateInputs& in, double abs_k) {
  const double a = c0(in, abs_k);
  const double b = c1(in);
  const double c = c2_at(in, abs_k);
  return a * c + b + c + 1.0 + 1.0 / in.alpha;
}

double admissible_gain(const CertificateInputs& in, double abs_k) {
  return 1.0 / (integral_constant(in, abs_k) * std::numbers::e * in.theta * std::exp(in.tau));
}

double k_bar(const CertificateInputs& in) {
  const double et = std::exp(in.tau);
  const double structural = (1.0 - in.mu_tilde) / (2.0 * in.c_poincare * (in.theta * et + 1.0));
  const double memory = in.mu_tilde / (2.0 * in.theta) / et;
  return std::min(structural, memory);
}

double gamma1(double mt) {
  return 4.0 * mt / (1.0 - mt) - 8.0 + 36.0 / mt - 11.5 * mt - 1.5 * mt * mt;
}

double gamma2(const CertificateInputs& in) {
  const double mt = in.mu_tilde;
  const double cp = in.c_poincare;
  const double tm1 = in.theta - 1.0;
  return 6.0 + 12.0 * cp + 3.0 / tm1 + 12.0 / mt + 6.0 / (mt * tm1) +
         12.0 * in.mu0 / (mt * mt) * cp + 2.0 * in.mu0 / mt * cp + 2.0 * cp * mt +
         4.0 * cp / (1.0 - mt);
}

}  // namespace formulas

CertificateInputs certificate_inputs(const KernelReport& kernel, double tau, double theta,
                                     double c_poincare, double k) {
  return {kernel.mu0, kernel.mu_tilde, kernel.alpha, tau, theta, c_poincare, k};
}

bool ConstantsReport::below_k_bar() const noexcept { return std::abs(inputs.k) < k_bar; }

bool ConstantsReport::certified() const noexcept { return std::abs(inputs.k) < k0; }

double poincare_constant_interval(double length) {
  if (!(length > 0.0)) throw InvalidInputs("domain length must be positive");
  const double r = length / std::numbers::pi;
  return r * r;
}

double khat_fixed_point(const CertificateInputs& inputs) {
  check_delayed(inputs);
  // k - g(k) is strictly increasing, negative at 0 and positive at g(0).
  double lo = 0.0;
  double hi = formulas::admissible_gain(inputs, 0.0);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at machine resolution
    if (mid - formulas::admissible_gain(inputs, mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  if (!(hi - lo <= 1e-12))
    throw NoConvergence("k_hat bisection did not converge in 200 iterations");
  return 0.5 * (lo + hi);
}

ExplicitBound explicit_lower_bound(const CertificateInputs& inputs) {
  check_delayed(inputs);
  ExplicitBound out;
  out.gamma1 = formulas::gamma1(inputs.mu_tilde);
  out.gamma2 = formulas::gamma2(inputs);
  out.k0_lb = std::exp(-(inputs.tau + 1.0)) /
              (inputs.theta * (1.0 + out.gamma1 / inputs.alpha + out.gamma2));
  return out;
}

ConstantsReport compute_constants(const CertificateInputs& inputs) {
  check_delayed(inputs);
  const double abs_k = std::abs(inputs.k);

  ConstantsReport r;
  r.inputs = inputs;
  r.c0 = formulas::c0(inputs, abs_k);
  r.c1 = formulas::c1(inputs);
  r.c2 = formulas::c2_at(inputs, abs_k);
  r.c_star = r.c0 * r.c2 + r.c1 + r.c2;
  r.c_big = r.c_star + 1.0 + 1.0 / inputs.alpha;
  r.sigma_tilde = 1.0 / r.c_big;
  r.sigma = r.sigma_tilde - std::numbers::e * inputs.theta * abs_k * std::exp(inputs.tau);
  r.k_bar = formulas::k_bar(inputs);
  r.k_hat = khat_fixed_point(inputs);
  r.k0 = std::min(r.k_hat, r.k_bar);
  const auto bound = explicit_lower_bound(inputs);
  r.k0_explicit_lb = bound.k0_lb;
  r.gamma1 = bound.gamma1;
  r.gamma2 = bound.gamma2;
  r.epsilon_star = (1.0 - inputs.mu_tilde) / (2.0 * (r.c0 + 1.0));
  r.delta_star = 0.5 * inputs.mu_tilde;
  return r;
}

double nodelay_threshold(double mu0, double mu_tilde, double alpha, double c_poincare) {
  CertificateInputs in{mu0, mu_tilde, alpha, 0.0, 1.0, c_poincare, 0.0};
  check_common(in);
  const double mt = mu_tilde;
  const double c1 = 4.0 * (1.0 + mt / (alpha * (1.0 - mt)) + c_poincare / (1.0 - mt));
  const double c2 = 2.0 / mt * (2.0 + mu0 / mt * c_poincare) + 4.0 * c_poincare +
                    2.0 / alpha * (2.0 + 6.0 * (1.0 - mt) / mt);
  return 1.0 / (c1 + 3.0 * c2 + 1.0 / alpha) / std::numbers::e;
}

}  // namespace viscodelay
