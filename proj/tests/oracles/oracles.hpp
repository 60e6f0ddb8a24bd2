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

// Reference computations the library is tested against. Each one is
// deliberately a different method from the code under test.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <vector>

#include "viscodelay/certificate.hpp"
#include "viscodelay/kernel.hpp"

namespace viscodelay::oracle {

/// Smallest eigenvalue of -d^2/dx^2 on (0, L) with Dirichlet ends, from the
/// n-point finite-difference matrix.
inline double fd_dirichlet_lambda1(double length, int n) {
  const double h = length / (n + 1);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 2.0 / (h * h);
    if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = -1.0 / (h * h);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

/// 1 / lambda1 with two Richardson steps on n, 2n, 4n (error O(h^2) then O(h^4)).
inline double poincare_fd_extrapolated(double length, int n = 50) {
  const double l1 = fd_dirichlet_lambda1(length, n);
  const double l2 = fd_dirichlet_lambda1(length, 2 * n + 1);  // h halves exactly
  const double l3 = fd_dirichlet_lambda1(length, 4 * n + 3);
  const double r1 = (4.0 * l2 - l1) / 3.0;
  const double r2 = (4.0 * l3 - l2) / 3.0;
  return 1.0 / ((16.0 * r2 - r1) / 15.0);
}

/// Modal amplitude y of the mode with eigenvalue lambda:
///   y'' = -lambda ((1 - mu~) y + int_0^inf mu(s) (y(t) - y(t - s)) ds),
/// history y(t) = 1 for t <= 0, y'(0) = 0. Heun stepping with the
/// convolution summed directly by the trapezoid rule over the stored path.
class ModalHistoryOracle {
 public:
  ModalHistoryOracle(MemoryKernel kernel, double lambda, double h)
      : kernel_(std::move(kernel)), lambda_(lambda), h_(h), mu_tilde_(kernel_.mass()) {}

  /// Amplitudes at t = 0, h, 2h, ... up to `horizon`.
  std::vector<double> solve(double horizon) {
    const auto steps = static_cast<std::size_t>(std::llround(horizon / h_));
    mu_.resize(steps + 2);
    for (std::size_t j = 0; j < mu_.size(); ++j) mu_[j] = kernel_.value(j * h_);
    path_.assign(1, 1.0);
    path_.reserve(steps + 1);
    double v = 0.0;
    double a = acceleration(path_.back());
    for (std::size_t n = 0; n < steps; ++n) {
      const double y = path_.back();
      const double y_pred = y + h_ * v;
      const double v_pred = v + h_ * a;
      path_.push_back(y_pred);
      const double a_pred = acceleration(y_pred);
      const double y_next = y + 0.5 * h_ * (v + v_pred);
      v += 0.5 * h_ * (a + a_pred);
      path_.back() = y_next;
      a = acceleration(y_next);
    }
    return path_;
  }

  double step() const { return h_; }

 private:
  // Uses path_ as the history with its last entry at the current time.
  double acceleration(double y_now) const {
    const std::size_t n = path_.size() - 1;
    const double t = n * h_;
    double conv = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
      const double w = (j == 0 || j == n) ? 0.5 : 1.0;
      conv += w * mu_[j] * (y_now - path_[n - j]);
    }
    conv *= h_;
    conv += (y_now - 1.0) * kernel_.tail_mass(t);  // frozen history beyond t
    return -lambda_ * ((1.0 - mu_tilde_) * y_now + conv);
  }

  MemoryKernel kernel_;
  double lambda_;
  double h_;
  double mu_tilde_;
  std::vector<double> mu_;
  std::vector<double> path_;
};

/// Fixed point of g by scanning |g(k) - k| on a uniform grid.
inline double khat_dense_scan(const CertificateInputs& in, double step) {
  const double upper = formulas::admissible_gain(in, 0.0);
  double best_k = 0.0;
  double best = std::abs(formulas::admissible_gain(in, 0.0));
  const auto count = static_cast<long>(upper / step);
  for (long i = 1; i <= count; ++i) {
    const double k = static_cast<double>(i) * step;
    const double gap = std::abs(formulas::admissible_gain(in, k) - k);
    if (gap < best) {
      best = gap;
      best_k = k;
    }
  }
  return best_k;
}

}  // namespace viscodelay::oracle
