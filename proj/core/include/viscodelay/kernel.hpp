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

#include <limits>
#include <span>
#include <vector>

namespace viscodelay {

/// One exponential a * exp(-b s) of a Prony series.
struct PronyTerm {
  double amplitude = 0.0;  // a, 1/time^2
  double rate = 0.0;       // b, 1/time
};

/// Memory kernel mu(s) = sum_i a_i exp(-b_i s). An empty series is the
/// memoryless kernel mu = 0.
class MemoryKernel {
 public:
  MemoryKernel() = default;
  explicit MemoryKernel(std::vector<PronyTerm> terms) : terms_(std::move(terms)) {}

  static MemoryKernel exponential(double amplitude, double rate) {
    return MemoryKernel({{amplitude, rate}});
  }

  std::span<const PronyTerm> terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  double value(double s) const noexcept;
  double derivative(double s) const noexcept;
  /// Integral of mu over [0, inf).
  double mass() const noexcept;
  /// Integral of mu over [s, inf).
  double tail_mass(double s) const noexcept;

 private:
  std::vector<PronyTerm> terms_;
};

struct KernelReport {
  double mu0 = 0.0;        // mu(0)
  double mu_tilde = 0.0;   // total mass
  double alpha = std::numeric_limits<double>::infinity();  // min rate
  double s_max = 0.0;      // history truncation point
  double tail_mass = 0.0;  // mass beyond s_max

  bool memory_enabled() const noexcept { return mu_tilde > 0.0; }
};

inline constexpr double kDefaultTailTol = 1e-8;

/// Checks mu(0) > 0, mass < 1 and mu' <= -alpha mu, and returns the derived
/// quantities together with the smallest s_max whose tail mass is at most
/// tail_tol * mu_tilde. Throws KernelInvalid naming the violated assumption.
KernelReport validate_kernel(const MemoryKernel& kernel,
                             double tail_tol = kDefaultTailTol);

double kernel_value(const MemoryKernel& kernel, double s);

/// Galerkin operators of the mu-weighted piecewise-linear space on an s-grid.
///
/// With hat functions phi_j on `nodes`:
///   weights[j]       = int mu  phi_j
///   slope_weights[j] = int mu' phi_j
///   mass             = int mu  phi_i phi_j      (symmetric tridiagonal)
///   slope_mass       = int mu' phi_i phi_j      (symmetric tridiagonal)
///   advection        = int mu  phi_i phi_j'     (tridiagonal)
/// All entries are exact for Prony kernels. Off-diagonal arrays have
/// nodes.size() - 1 entries; `*_upper[j]` couples row j with column j + 1
/// and `*_lower[j]` couples row j + 1 with column j.
struct MemoryQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> slope_weights;
  std::vector<double> mass_diag;
  std::vector<double> mass_off;
  std::vector<double> slope_mass_diag;
  std::vector<double> slope_mass_off;
  std::vector<double> advection_diag;
  std::vector<double> advection_upper;
  std::vector<double> advection_lower;

  std::size_t size() const noexcept { return nodes.size(); }
};

MemoryQuadrature memory_quadrature(const MemoryKernel& kernel,
                                   std::span<const double> nodes);

/// Geometric grid 0 = s_0 < ... < s_{count-1} = s_max whose first interval is
/// `first_step`; the ratio is solved for. Falls back to a uniform grid when
/// `first_step * (count - 1) >= s_max`.
struct GeometricGrid {
  std::vector<double> nodes;
  double ratio = 1.0;
};

GeometricGrid geometric_grid(double first_step, double s_max, int count);

}  // namespace viscodelay
