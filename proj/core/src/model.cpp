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


#include "viscodelay/model.hpp"

#include <cmath>
#include <numbers>

namespace viscodelay {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
}  // namespace

std::string_view to_string(ProblemMode mode) {
  return mode == ProblemMode::auxiliary ? "auxiliary" : "original";
}

std::string_view to_string(DelayRealization realization) {
  return realization == DelayRealization::rho_grid ? "rho_grid" : "ring_buffer";
}

double InitialData::profile(double x, double length) const {
  return amplitude *
         std::visit(overloaded{
                        [&](const SineProfile& p) {
                          return std::sin(p.mode * std::numbers::pi * x / length);
                        },
                        [&](const GaussianProfile& p) {
                          const double r = (x - p.center) / p.width;
                          return std::exp(-0.5 * r * r);
                        },
                    },
                    shape);
}

double InitialData::history_factor(double t) const {
  return std::visit(overloaded{
                        [](const FrozenHistory&) { return 1.0; },
                        [&](const ModulatedHistory& h) { return std::cos(h.omega * t); },
                    },
                    history);
}

double InitialData::history_rate(double t) const {
  return std::visit(overloaded{
                        [](const FrozenHistory&) { return 0.0; },
                        [&](const ModulatedHistory& h) {
                          return -h.omega * std::sin(h.omega * t);
                        },
                    },
                    history);
}

}  // namespace viscodelay
