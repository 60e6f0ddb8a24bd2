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
#include <vector>

#include "viscodelay/energy.hpp"
#include "viscodelay/model.hpp"

namespace viscodelay {

/// Fields recorded at one sample for the memory identity check. The
/// history variable enters that identity only through its kernel moments,
/// so those are stored instead of the whole (x, s) grid.
struct Snapshot {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> delayed;        // u_t(t - tau)
  std::vector<double> memory_moment;  // int mu(s) eta(s) ds
  std::vector<double> slope_moment;   // int mu'(s) eta(s) ds
};

/// Sampled output of a run. `terms` is aligned with `times`; snapshots are
/// aligned with `times` when recorded at every sample.
struct Trace {
  ProblemMode mode = ProblemMode::original;
  double dt = 0.0;
  double dx = 0.0;
  double tau = 0.0;  // snapped
  double mu_tilde = 0.0;
  double damping = 0.0;  // extra damping of the auxiliary problem
  double k = 0.0;
  std::vector<double> times;
  std::vector<EnergyBreakdown> energy;
  std::vector<DissipationTerms> terms;
  std::vector<Snapshot> snapshots;

  std::size_t size() const noexcept { return times.size(); }
  std::vector<double> totals() const;
};

}  // namespace viscodelay
