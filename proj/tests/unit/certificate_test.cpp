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

#include <boost/rational.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "viscodelay/certificate.hpp"
#include "viscodelay/error.hpp"

namespace viscodelay {
namespace {

constexpr double kPi = std::numbers::pi;
const double kCp = 1.0 / (kPi * kPi);

CertificateInputs worked(double k = 0.0) { return {1.0, 0.5, 2.0, 1.0, 2.0, kCp, k}; }

void expect_rel(double got, double want, double rel = 1e-12) {
  EXPECT_LE(std::abs(got - want), rel * std::abs(want)) << got << " vs " << want;
}

TEST(Poincare, MatchesFiniteDifferenceEigenvalue) {
  expect_rel(poincare_constant_interval(1.0), 1.0 / (kPi * kPi));
  EXPECT_NEAR(poincare_constant_interval(1.0), 0.1013212, 1e-7);
  expect_rel(poincare_constant_interval(kPi), 1.0);
  expect_rel(poincare_constant_interval(2.0), 4.0 / (kPi * kPi));
  for (double length : {1.0, 2.0, kPi})
    expect_rel(poincare_constant_interval(length), oracle::poincare_fd_extrapolated(length), 1e-7);
}

TEST(Constants, WorkedExamplePinned) {
  const auto r = compute_constants(worked());
  EXPECT_EQ(r.c0, 2.0);
  expect_rel(r.c1, 8.0 + 8.0 * kCp);
  expect_rel(r.c2, 20.0 + 20.0 * kCp);
  expect_rel(r.c_star, 68.0 + 68.0 * kCp);
  expect_rel(r.c_big, 69.5 + 68.0 * kCp);
  expect_rel(r.sigma_tilde, 1.0 / (69.5 + 68.0 * kCp));
  expect_rel(r.k_bar, 0.125 * std::exp(-1.0));
  EXPECT_NEAR(r.c1, 8.8106, 1e-4);
  EXPECT_NEAR(r.c2, 22.0264, 1e-4);
  EXPECT_NEAR(r.c_star, 74.890, 1e-3);
  EXPECT_NEAR(r.c_big, 76.390, 1e-3);
  EXPECT_NEAR(r.sigma_tilde, 0.013091, 1e-6);
  EXPECT_NEAR(r.k_bar, 0.045985, 1e-6);
  EXPECT_EQ(r.sigma, r.sigma_tilde);  // k = 0
  expect_rel(r.epsilon_star, 0.5 / 6.0);
  EXPECT_EQ(r.delta_star, 0.25);
  EXPECT_TRUE(r.certified());
}

TEST(Constants, DelayGainEntersC0) {
  const auto r = compute_constants(worked(0.01));
  expect_rel(r.c0, 2.0 + 2.0 * 0.01 * std::numbers::e);
  EXPECT_NEAR(r.c0, 2.054366, 1e-6);
  expect_rel(r.sigma, r.sigma_tilde - std::numbers::e * 2.0 * 0.01 * std::numbers::e);
  EXPECT_FALSE(r.certified());
  EXPECT_TRUE(r.below_k_bar());
}

TEST(Constants, SignOfKIsIrrelevant) {
  const auto a = compute_constants(worked(0.003));
  const auto b = compute_constants(worked(-0.003));
  EXPECT_EQ(a.c_big, b.c_big);
  EXPECT_EQ(a.sigma, b.sigma);
}

TEST(Constants, InvalidInputs) {
  auto in = worked();
  in.mu_tilde = 1.0;
  EXPECT_THROW(compute_constants(in), InvalidInputs);
  in = worked();
  in.c_poincare = 0.0;
  EXPECT_THROW(compute_constants(in), InvalidInputs);
  in = worked();
  in.tau = -1.0;
  EXPECT_THROW(compute_constants(in), InvalidInputs);
  in = worked();
  in.theta = 1.0;
  EXPECT_THROW(compute_constants(in), ThetaOutOfRange);
  EXPECT_THROW(khat_fixed_point(in), ThetaOutOfRange);
  EXPECT_THROW(explicit_lower_bound(in), ThetaOutOfRange);
}

TEST(KHat, AgreesWithDenseScan) {
  const auto in = worked();
  const double k_hat = khat_fixed_point(in);
  EXPECT_NEAR(k_hat, 8.85e-4, 1e-5);
  EXPECT_LE(std::abs(formulas::admissible_gain(in, k_hat) - k_hat), 1e-10 * k_hat);
  EXPECT_NEAR(k_hat, oracle::khat_dense_scan(in, 1e-8), 1e-7);
  const auto r = compute_constants(in);
  EXPECT_EQ(r.k0, std::min(r.k_hat, r.k_bar));
  EXPECT_EQ(r.k0, r.k_hat);
}

TEST(KHat, FixedPointOnRandomInputs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const CertificateInputs in{0.1 + 3 * u(rng), 0.05 + 0.9 * u(rng), 0.2 + 4 * u(rng),
                               2 * u(rng),       1.05 + 3 * u(rng),  0.02 + 2 * u(rng), 0.0};
    const double k_hat = khat_fixed_point(in);
    EXPECT_LE(std::abs(formulas::admissible_gain(in, k_hat) - k_hat), 1e-10 * k_hat);
  }
}

TEST(ExplicitBound, WorkedGammas) {
  const auto b = explicit_lower_bound(worked());
  expect_rel(b.gamma1, 495.0 / 8.0);
  expect_rel(b.gamma2, 45.0 + 73.0 * kCp);
  for (double tau : {0.0, 0.3, 1.0, 2.5})
    for (double cp : {kCp, 0.05, 1.0}) {
      auto in = worked();
      in.tau = tau;
      in.c_poincare = cp;
      expect_rel(explicit_lower_bound(in).k0_lb, 8.0 * std::exp(-(tau + 1.0)) / (1231.0 + 1168.0 * cp));
    }
  EXPECT_NEAR(b.k0_lb, 8.02e-4, 1e-6);
  EXPECT_LE(b.k0_lb, khat_fixed_point(worked()));
}

TEST(ExplicitBound, ExactRationalGammas) {
  using Q = boost::rational<long long>;
  // The same expressions evaluated in exact arithmetic at mu~ = 1/2, theta = 2,
  // mu0 = 1; gamma2 is affine in C_P so it splits into two rationals.
  const Q mt(1, 2), theta(2), mu0(1), one(1);
  const Q g1 = Q(4) * mt / (one - mt) - Q(8) + Q(36) / mt - Q(23, 2) * mt - Q(3, 2) * mt * mt;
  const Q g2_const = Q(6) + Q(3) / (theta - one) + Q(12) / mt + Q(6) / (mt * (theta - one));
  const Q g2_cp = Q(12) + Q(12) * mu0 / (mt * mt) + Q(2) * mu0 / mt + Q(2) * mt + Q(4) / (one - mt);
  EXPECT_EQ(g1, Q(495, 8));
  EXPECT_EQ(g2_const, Q(45));
  EXPECT_EQ(g2_cp, Q(73));
  // theta (1 + g1/alpha + g2) with alpha = 2, times 8, gives 1231 + 1168 C_P.
  EXPECT_EQ(Q(8) * theta * (one + g1 / Q(2) + g2_const), Q(1231));
  EXPECT_EQ(Q(8) * theta * g2_cp, Q(1168));
  // The floating-point formulas agree.
  expect_rel(formulas::gamma1(0.5), boost::rational_cast<double>(g1));
  auto in = worked();
  in.c_poincare = 0.0;  // constant part only; formulas do not validate
  expect_rel(formulas::gamma2(in), boost::rational_cast<double>(g2_const));
}

TEST(ExplicitBound, NeverExceedsThresholds) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const CertificateInputs in{0.1 + 3 * u(rng), 0.05 + 0.9 * u(rng), 0.2 + 4 * u(rng),
                               3 * u(rng),       1.05 + 3 * u(rng),  0.01 + 2 * u(rng), 0.0};
    const auto b = explicit_lower_bound(in);
    const double k_hat = khat_fixed_point(in);
    EXPECT_LE(b.k0_lb, std::min(k_hat, formulas::k_bar(in)) * (1 + 1e-9));
    EXPECT_LE(b.k0_lb, k_hat + 1e-12);
  }
}

TEST(Certificate, GainIsStrictlyDecreasing) {
  const auto in = worked();
  double prev = formulas::admissible_gain(in, 0.0);
  for (int i = 1; i <= 200; ++i) {
    const double g = formulas::admissible_gain(in, i * 5e-4);
    EXPECT_LT(g, prev);
    prev = g;
  }
}

TEST(Certificate, KBarMonotoneInTauAndPoincare) {
  for (double cp : {0.01, 0.1, 1.0, 10.0}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double tau = 0.0; tau <= 4.0; tau += 0.25) {
      auto in = worked();
      in.c_poincare = cp;
      in.tau = tau;
      const double kb = formulas::k_bar(in);
      EXPECT_LE(kb, prev);
      prev = kb;
    }
  }
  for (double tau : {0.0, 1.0, 3.0}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double cp = 0.01; cp <= 10.0; cp *= 1.5) {
      auto in = worked();
      in.c_poincare = cp;
      in.tau = tau;
      const double kb = formulas::k_bar(in);
      EXPECT_LE(kb, prev);
      prev = kb;
    }
  }
}

TEST(Certificate, SigmaPositiveIffBelowGain) {
  const auto in0 = worked();
  for (int i = 0; i <= 100; ++i) {
    const double k = i * 2e-5;
    const auto r = compute_constants(worked(k));
    EXPECT_EQ(r.sigma > 0.0, k < formulas::admissible_gain(in0, k)) << k;
  }
}

TEST(NoDelay, WorkedThreshold) {
  const double t = nodelay_threshold(1.0, 0.5, 2.0, kCp);
  const double c1 = 6.0 + 8.0 * kCp;
  const double c2 = 16.0 + 12.0 * kCp;
  expect_rel(t, 1.0 / ((c1 + 3.0 * c2 + 0.5) * std::numbers::e));
  EXPECT_NEAR(t, 6.24e-3, 1e-5);
  EXPECT_GT(t, khat_fixed_point(worked()));
  EXPECT_LT(nodelay_threshold(1.0, 1e-6, 2.0, kCp), 1e-9);
  EXPECT_THROW(nodelay_threshold(1.0, 1.5, 2.0, kCp), InvalidInputs);
}

}  // namespace
}  // namespace viscodelay
