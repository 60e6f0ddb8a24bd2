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

#include "viscodelay/kernel.hpp"

namespace viscodelay {

/// Everything the stability thresholds depend on.
struct CertificateInputs {
  double mu0 = 0.0;         // mu(0)
  double mu_tilde = 0.0;    // int mu
  double alpha = 0.0;       // decay rate of mu
  double tau = 0.0;         // delay
  double theta = 2.0;       // weight of the delayed-energy term, > 1
  double c_poincare = 0.0;  // Poincare constant of the domain
  double k = 0.0;           // delay gain (signed)
};

CertificateInputs certificate_inputs(const KernelReport& kernel, double tau,
                                     double theta, double c_poincare, double k);

struct ConstantsReport {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c_star = 0.0;
  double c_big = 0.0;        // C in int_S^inf F <= C F(S)
  double sigma_tilde = 0.0;  // auxiliary-problem rate 1/C
  double sigma = 0.0;        // original-problem rate
  double k_bar = 0.0;
  double k_hat = 0.0;
  double k0 = 0.0;  // min(k_hat, k_bar)
  double k0_explicit_lb = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double epsilon_star = 0.0;
  double delta_star = 0.0;
  CertificateInputs inputs;

  /// |k| < k_bar: the auxiliary-problem estimates hold.
  bool below_k_bar() const noexcept;
  /// |k| < k0: exponential decay of the original problem is certified.
  bool certified() const noexcept;
};

/// Sharp Poincare constant (L / pi)^2 of the Dirichlet interval (0, L).
double poincare_constant_interval(double length);

/// Runs the whole constants pipeline at the inputs' |k|. The constants are
/// still returned when |k| >= k_bar; `below_k_bar()` flags that case.
ConstantsReport compute_constants(const CertificateInputs& inputs);

/// The admissible threshold: unique fixed point of g(|k|) = 1 / (C(|k|) e theta e^tau),
/// located by bisection on [0, g(0)].
double khat_fixed_point(const CertificateInputs& inputs);

struct ExplicitBound {
  double k0_lb = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

/// Closed-form lower bound e^{-(tau+1)} / (theta (1 + gamma1/alpha + gamma2)) on k0.
ExplicitBound explicit_lower_bound(const CertificateInputs& inputs);

/// Threshold on |k| for tau = 0, where theta = 1 is admissible.
double nodelay_threshold(double mu0, double mu_tilde, double alpha, double c_poincare);

/// Individual formulas of the pipeline. Exposed so that the self-check can
/// cross-validate them against each other and tests can pin them.
namespace formulas {

double c0(const CertificateInputs& in, double abs_k);
double c1(const CertificateInputs& in);

/// Bound on int u_t^2 in terms of F(S). `delay_gain` stands for
/// theta |k| e^tau and `poincare_coupling` for C_P |k| (theta e^tau + 1);
/// the multiplier epsilon is already fixed at (1 - mu~) / (2 (C0 + 1)).
double c2(const CertificateInputs& in, double delay_gain, double poincare_coupling);

/// C2 at the actual |k|.
double c2_at(const CertificateInputs& in, double abs_k);

/// C2 with |k| replaced by its k_bar-saturated bounds; the linear majorant
/// behind the explicit lower bound.
double c2_saturated(const CertificateInputs& in);

/// C0 with theta |k| e^tau replaced by its k_bar bound mu~/2.
double c0_saturated(const CertificateInputs& in);

/// C(|k|) = C0 C2 + C1 + C2 + 1 + 1/alpha.
double integral_constant(const CertificateInputs& in, double abs_k);

/// g(|k|) = 1 / (C(|k|) e theta e^tau).
double admissible_gain(const CertificateInputs& in, double abs_k);

double k_bar(const CertificateInputs& in);
double gamma1(double mu_tilde);
double gamma2(const CertificateInputs& in);

}  // namespace formulas

}  // namespace viscodelay
