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
#include <vector>

#include "viscodelay/delay_line.hpp"

namespace viscodelay {

/// Offsets of the fields packed into one vector. Every field spans
/// `points` grid nodes including the two Dirichlet boundary nodes.
struct FieldLayout {
  std::size_t points = 0;
  std::size_t memory_rows = 0;  // s-nodes, row 0 is s = 0
  std::size_t rho_rows = 0;     // rho = 1/n, ..., 1

  std::size_t u_offset() const noexcept { return 0; }
  std::size_t v_offset() const noexcept { return points; }
  std::size_t eta_offset(std::size_t row) const noexcept { return (2 + row) * points; }
  std::size_t z_offset(std::size_t row) const noexcept {
    return (2 + memory_rows + row) * points;
  }
  std::size_t size() const noexcept { return (2 + memory_rows + rho_rows) * points; }
};

/// Discrete state at one time: displacement, velocity, history variable
/// eta(x, s_j) and the delayed velocity (ring buffer or rho-grid rows).
struct SimState {
  double t = 0.0;
  long step = 0;
  FieldLayout layout;
  std::vector<double> y;
  DelayLine history;

  std::span<double> u() noexcept { return field(layout.u_offset()); }
  std::span<const double> u() const noexcept { return field(layout.u_offset()); }
  std::span<double> v() noexcept { return field(layout.v_offset()); }
  std::span<const double> v() const noexcept { return field(layout.v_offset()); }
  std::span<double> eta(std::size_t row) noexcept { return field(layout.eta_offset(row)); }
  std::span<const double> eta(std::size_t row) const noexcept {
    return field(layout.eta_offset(row));
  }
  std::span<double> z(std::size_t row) noexcept { return field(layout.z_offset(row)); }
  std::span<const double> z(std::size_t row) const noexcept {
    return field(layout.z_offset(row));
  }

  /// Number of stored doubles, history included.
  std::size_t size() const noexcept { return y.size() + history.size(); }

 private:
  std::span<double> field(std::size_t offset) noexcept {
    return {y.data() + offset, layout.points};
  }
  std::span<const double> field(std::size_t offset) const noexcept {
    return {y.data() + offset, layout.points};
  }
};

}  // namespace viscodelay
