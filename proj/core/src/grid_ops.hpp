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

#include <cstddef>
#include <span>

namespace viscodelay::detail {

/// int a b dx over the x-grid. Boundary values are zero, so the trapezoid
/// rule reduces to a plain sum.
inline double l2(std::span<const double> a, std::span<const double> b, double dx) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum * dx;
}

/// int a_x b_x dx with one-sided cell differences; the summation-by-parts
/// partner of the 3-point Laplacian.
inline double grad_pair(std::span<const double> a, std::span<const double> b, double dx) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) sum += (a[i + 1] - a[i]) * (b[i + 1] - b[i]);
  return sum / dx;
}

/// out += coef * f_xx at interior nodes.
inline void add_laplacian(std::span<const double> f, double coef, double dx,
                          std::span<double> out) {
  const double c = coef / (dx * dx);
  for (std::size_t i = 1; i + 1 < f.size(); ++i)
    out[i] += c * (f[i - 1] - 2.0 * f[i] + f[i + 1]);
}

}  // namespace viscodelay::detail
