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


#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numeric>

#include "viscodelay/error.hpp"
#include "viscodelay/kernel.hpp"

namespace viscodelay {
namespace {

MemoryKernel two_terms() { return MemoryKernel({{0.3, 1.0}, {0.2, 4.0}}); }

TEST(ValidateKernel, SingleExponential) {
  const auto r = validate_kernel(MemoryKernel::exponential(1.0, 2.0));
  EXPECT_DOUBLE_EQ(r.mu0, 1.0);
  EXPECT_DOUBLE_EQ(r.mu_tilde, 0.5);
  EXPECT_DOUBLE_EQ(r.alpha, 2.0);
  EXPECT_TRUE(r.memory_enabled());
}

TEST(ValidateKernel, EmptyKernelDisablesMemory) {
  const auto r = validate_kernel(MemoryKernel{});
  EXPECT_EQ(r.mu0, 0.0);
  EXPECT_EQ(r.mu_tilde, 0.0);
  EXPECT_TRUE(std::isinf(r.alpha));
  EXPECT_FALSE(r.memory_enabled());
}

TEST(ValidateKernel, TwoTermsAgainstAdaptiveQuadrature) {
  const auto kernel = two_terms();
  const auto r = validate_kernel(kernel);
  EXPECT_NEAR(r.mu_tilde, 0.35, 1e-15);
  EXPECT_DOUBLE_EQ(r.alpha, 1.0);
  EXPECT_DOUBLE_EQ(r.mu0, 0.5);
  double err = 0.0;
  const double numeric = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double s) { return kernel.value(s); }, 0.0, 100.0, 15, 1e-14, &err);
  EXPECT_NEAR(r.mu_tilde, numeric, 1e-12);
}

TEST(ValidateKernel, TailMassBelowTolerance) {
  for (double tol : {1e-4, 1e-8, 1e-12}) {
    const auto kernel = two_terms();
    const auto r = validate_kernel(kernel, tol);
    EXPECT_LE(r.tail_mass, tol * r.mu_tilde * (1 + 1e-12));
    EXPECT_NEAR(r.tail_mass, kernel.tail_mass(r.s_max), 1e-18);
    // Smallest such point: slightly earlier the tail is too heavy.
    EXPECT_GT(kernel.tail_mass(r.s_max * (1 - 1e-6)), tol * r.mu_tilde);
  }
}

TEST(ValidateKernel, RejectionsNameTheAssumption) {
  auto reason = [](const MemoryKernel& k) {
    try {
      validate_kernel(k);
    } catch (const KernelInvalid& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(reason(MemoryKernel({{-1.0, 2.0}})).find("(i)"), std::string::npos);
  EXPECT_NE(reason(MemoryKernel({{0.0, 2.0}})).find("(i)"), std::string::npos);
  EXPECT_NE(reason(MemoryKernel({{1.0, 0.0}})).find("(iii)"), std::string::npos);
  EXPECT_NE(reason(MemoryKernel({{1.0, -1.0}})).find("(iii)"), std::string::npos);
  EXPECT_NE(reason(MemoryKernel({{2.0, 2.0}})).find("(ii)"), std::string::npos);
  EXPECT_NE(reason(MemoryKernel({{0.5, 1.0}, {1.0, 2.0}})).find("(ii)"), std::string::npos);
}

TEST(ValidateKernel, TailTolMustLieInUnitInterval) {
  EXPECT_THROW(validate_kernel(two_terms(), 0.0), InvalidInputs);
  EXPECT_THROW(validate_kernel(two_terms(), 1.0), InvalidInputs);
}

TEST(ValidateKernel, Deterministic) {
  const auto a = validate_kernel(two_terms());
  const auto b = validate_kernel(two_terms());
  EXPECT_EQ(a.mu0, b.mu0);
  EXPECT_EQ(a.mu_tilde, b.mu_tilde);
  EXPECT_EQ(a.alpha, b.alpha);
  EXPECT_EQ(a.s_max, b.s_max);
  EXPECT_EQ(a.tail_mass, b.tail_mass);
}

TEST(KernelValue, Examples) {
  EXPECT_DOUBLE_EQ(kernel_value(MemoryKernel::exponential(1.0, 2.0), 0.0), 1.0);
  EXPECT_EQ(kernel_value(MemoryKernel{}, 3.7), 0.0);
  EXPECT_NEAR(kernel_value(two_terms(), 1.0), 0.3 * std::exp(-1.0) + 0.2 * std::exp(-4.0), 1e-16);
  EXPECT_NEAR(kernel_value(two_terms(), 1.0), 0.114025, 1e-5);
}

TEST(KernelProperty, DerivativeBoundedByAlphaMu) {
  for (const auto& kernel : {two_terms(), MemoryKernel::exponential(1.0, 2.0),
                             MemoryKernel({{0.1, 0.5}, {0.2, 3.0}, {0.05, 10.0}})}) {
    const double alpha = validate_kernel(kernel).alpha;
    for (double e = -6; e <= 2; e += 0.05) {
      const double s = std::pow(10.0, e);
      EXPECT_LE(kernel.derivative(s), -alpha * kernel.value(s) * (1 - 1e-14)) << s;
    }
  }
}

TEST(MemoryQuadrature, ReproducesTruncatedMass) {
  for (const auto& kernel : {two_terms(), MemoryKernel::exponential(1.0, 2.0)}) {
    const auto r = validate_kernel(kernel);
    const auto grid = geometric_grid(1.0 / 201.0, r.s_max, 64);
    const auto q = memory_quadrature(kernel, grid.nodes);
    const double sum = std::accumulate(q.weights.begin(), q.weights.end(), 0.0);
    const double target = r.mu_tilde - r.tail_mass;
    EXPECT_LE(std::abs(sum - target), 1e-6 * target);
    // int mu' over [0, s_max] = mu(s_max) - mu(0)
    const double slope = std::accumulate(q.slope_weights.begin(), q.slope_weights.end(), 0.0);
    EXPECT_NEAR(slope, kernel.value(r.s_max) - r.mu0, 1e-12);
  }
}

TEST(MemoryQuadrature, MassRowsSumToWeights) {
  // sum_j phi_j = 1, so each row of the mass matrix sums to the weight.
  const auto kernel = two_terms();
  const auto grid = geometric_grid(0.01, validate_kernel(kernel).s_max, 40);
  const auto q = memory_quadrature(kernel, grid.nodes);
  for (std::size_t j = 0; j < q.size(); ++j) {
    double row = q.mass_diag[j];
    if (j > 0) row += q.mass_off[j - 1];
    if (j + 1 < q.size()) row += q.mass_off[j];
    EXPECT_NEAR(row, q.weights[j], 1e-15 + 1e-12 * q.weights[j]);
  }
  // Advection rows sum to zero: sum_j phi_j' = 0.
  for (std::size_t j = 0; j < q.size(); ++j) {
    double row = q.advection_diag[j];
    if (j > 0) row += q.advection_lower[j - 1];
    if (j + 1 < q.size()) row += q.advection_upper[j];
    EXPECT_NEAR(row, 0.0, 1e-12);
  }
}

TEST(GeometricGrid, HitsEndpointsWithSolvedRatio) {
  const auto g = geometric_grid(1.0 / 201.0, 9.21, 64);
  ASSERT_EQ(g.nodes.size(), 64u);
  EXPECT_EQ(g.nodes.front(), 0.0);
  EXPECT_DOUBLE_EQ(g.nodes.back(), 9.21);
  EXPECT_NEAR(g.nodes[1], 1.0 / 201.0, 1e-12);
  EXPECT_GT(g.ratio, 1.0);
  for (std::size_t i = 1; i < g.nodes.size(); ++i) EXPECT_GT(g.nodes[i], g.nodes[i - 1]);
}

TEST(GeometricGrid, UniformFallback) {
  const auto g = geometric_grid(1.0, 5.0, 6);
  EXPECT_EQ(g.ratio, 1.0);
  EXPECT_DOUBLE_EQ(g.nodes[3], 3.0);
}

}  // namespace
}  // namespace viscodelay
