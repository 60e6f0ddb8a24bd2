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
#include <numbers>
#include <random>

#include "viscodelay/energy.hpp"
#include "viscodelay/error.hpp"
#include "viscodelay/solver.hpp"

namespace viscodelay {
namespace {

constexpr double kPi = std::numbers::pi;

ModelParams worked_params(double k, double tau) {
  ModelParams p;
  p.kernel = MemoryKernel::exponential(1.0, 2.0);
  p.tau = tau;
  p.k = k;
  return p;
}

TEST(Energy, ZeroStateHasZeroEnergy) {
  const auto p = worked_params(0.3, 1.0);
  const auto d = discretize(p, {});
  Solver solver(p, d);
  InitialData init;
  init.amplitude = 0.0;
  const auto e = energy(solver.build(init), p, d);
  EXPECT_EQ(e.total, 0.0);
  EXPECT_EQ(e.kinetic + e.elastic + e.memory + e.delay, 0.0);
}

TEST(Energy, SineProfileElasticTerm) {
  const auto p = worked_params(0.0, 1.0);
  const auto d = discretize(p, {});
  Solver solver(p, d);
  const auto e = energy(solver.build({}), p, d);
  EXPECT_NEAR(e.elastic, 0.25 * 0.5 * kPi * kPi, 1e-4 * e.elastic);
  EXPECT_EQ(e.kinetic, 0.0);
  EXPECT_EQ(e.memory, 0.0);
  EXPECT_EQ(e.delay, 0.0);
  EXPECT_EQ(e.total, e.elastic);
}

TEST(Energy, NoDelayTermWithoutGain) {
  const auto p = worked_params(0.0, 0.5);
  const auto d = discretize(p, {});
  Solver solver(p, d);
  InitialData init;
  init.history = ModulatedHistory{3.0};
  const auto e = energy(solver.build(init), p, d);
  EXPECT_EQ(e.delay, 0.0);
  EXPECT_GT(e.memory, 0.0);
}

TEST(Energy, DelayTermMatchesHistoryIntegral) {
  const double omega = 3.0;
  const double tau = 0.5;
  for (auto real : {DelayRealization::ring_buffer, DelayRealization::rho_grid}) {
    auto p = worked_params(0.2, tau);
    p.delay_realization = real;
    const auto d = discretize(p, {});
    Solver solver(p, d);
    InitialData init;
    init.history = ModulatedHistory{omega};
    const auto e = energy(solver.build(init), p, d);
    // int phi^2 = 1/2 on the grid; u_t(-s) = omega sin(omega s) phi.
    const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double s) {
          const double r = omega * std::sin(omega * s);
          return std::exp(-s) * r * r * 0.5;
        },
        0.0, d.tau);
    const double want = 0.5 * delay_weight(p, d.tau) * integral;
    EXPECT_NEAR(e.delay, want, 1e-4 * want) << to_string(real);
  }
}

TEST(Energy, PiecesAreAdditiveAndNonNegative) {
  auto p = worked_params(-0.4, 0.3);
  const auto d = discretize(p, {});
  Solver solver(p, d);
  InitialData init;
  init.shape = GaussianProfile{0.4, 0.08};
  init.history = ModulatedHistory{1.5};
  auto st = solver.build(init);
  for (int n = 0; n < 400; ++n) {
    solver.step(st);
    if (n % 50) continue;
    const auto e = energy(st, p, d);
    EXPECT_GE(e.kinetic, 0.0);
    EXPECT_GE(e.elastic, 0.0);
    EXPECT_GE(e.memory, 0.0);
    EXPECT_GE(e.delay, 0.0);
    EXPECT_DOUBLE_EQ(e.total, e.kinetic + e.elastic + e.memory + e.delay);
    EXPECT_GE(e.total, e.kinetic + e.elastic);
  }
}

TEST(Energy, PureWaveIsConserved) {
  ModelParams p;
  GridSpec g;
  g.nx = 100;
  RunOptions o;
  o.horizon = 20.0;
  o.sample_every = 50;
  const auto trace = run(p, InitialData{}, discretize(p, g), o);
  const double f0 = trace.energy.front().total;
  for (double f : trace.totals()) EXPECT_LT(std::abs(f - f0), 1e-4 * f0);
}

TEST(Dissipation, BoundDominatesIdentity) {
  // Cauchy-Schwarz: the exact rate never exceeds the estimate.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    ModelParams p;
    p.k = 0.1 * u(rng);
    p.theta = 1.5 + u(rng) * 0.4;
    const double tau = 1.0 + u(rng);
    DissipationTerms t;
    t.memory_rate = -std::abs(u(rng));
    t.velocity_sq = std::abs(u(rng));
    t.delayed_velocity_sq = std::abs(u(rng));
    t.cross = u(rng) * std::sqrt(t.velocity_sq * t.delayed_velocity_sq);
    t.delay_energy = std::abs(u(rng));
    EXPECT_LE(dissipation_identity(t, p, tau), dissipation_bound(t, p, tau) + 1e-15);
  }
}

TEST(Dissipation, IdentityWithoutGainIsTheMemoryRate) {
  ModelParams p;
  DissipationTerms t{-0.3, 2.0, 5.0, 1.0, 0.0};
  EXPECT_EQ(dissipation_identity(t, p, 1.0), -0.3);
  EXPECT_EQ(dissipation_bound(t, p, 1.0), -0.3);
}

TEST(Dissipation, MemoryRateIsNonPositive) {
  auto p = worked_params(0.0, 0.0);
  const auto d = discretize(p, {});
  Solver solver(p, d);
  auto st = solver.build({});
  for (int n = 0; n < 200; ++n) {
    solver.step(st);
    const auto e = energy(st, p, d);
    EXPECT_LE(dissipation_terms(st, d, solver.delayed_velocity(st), e).memory_rate, 0.0);
  }
}

TEST(Dissipation, RejectsOriginalProblem) {
  const auto p = worked_params(0.01, 1.0);
  Trace trace;
  trace.mode = ProblemMode::original;
  EXPECT_THROW(check_dissipation(trace, p), WrongMode);
}

TEST(Dissipation, ZeroTracePasses) {
  auto p = worked_params(0.02, 1.0);
  p.mode = ProblemMode::auxiliary;
  InitialData init;
  init.amplitude = 0.0;
  RunOptions o;
  o.horizon = 1.0;
  const auto trace = run(p, init, discretize(p, {}), o);
  const auto r = check_dissipation(trace, p);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.max_increase, 0.0);
  EXPECT_EQ(r.identity_residual, 0.0);
}

TEST(Dissipation, AuxiliaryProblemIsDissipative) {
  auto p = worked_params(0.02, 0.5);
  p.mode = ProblemMode::auxiliary;
  GridSpec g;
  g.nx = 80;
  g.ns = 40;
  RunOptions o;
  o.horizon = 5.0;
  const auto trace = run(p, InitialData{}, discretize(p, g), o);
  const auto r = check_dissipation(trace, p);
  EXPECT_TRUE(r.pass) << r.max_increase << " " << r.max_violation;
  EXPECT_LT(r.identity_residual, 1e-4);
  EXPECT_LT(trace.energy.back().total, trace.energy.front().total);
}

}  // namespace
}  // namespace viscodelay
