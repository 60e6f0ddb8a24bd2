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


#include <benchmark/benchmark.h>

#include <numbers>

#include "viscodelay/certificate.hpp"
#include "viscodelay/energy.hpp"
#include "viscodelay/solver.hpp"

namespace {

using namespace viscodelay;

ModelParams worked(bool memory, double tau, DelayRealization real) {
  ModelParams p;
  if (memory) p.kernel = MemoryKernel::exponential(1.0, 2.0);
  p.tau = tau;
  p.k = tau > 0.0 ? 0.02 : 0.0;
  p.delay_realization = real;
  return p;
}

// Args: nx, memory on/off, realization (0 ring, 1 rho grid).
void BM_Step(benchmark::State& bs) {
  const auto p = worked(bs.range(1) != 0, 1.0,
                        bs.range(2) ? DelayRealization::rho_grid : DelayRealization::ring_buffer);
  GridSpec g;
  g.nx = static_cast<int>(bs.range(0));
  Solver solver(p, discretize(p, g));
  auto st = solver.build({});
  for (auto _ : bs) solver.step(st);
  bs.counters["doubles"] = static_cast<double>(st.size());
}
BENCHMARK(BM_Step)
    ->Args({100, 1, 0})
    ->Args({200, 1, 0})
    ->Args({400, 1, 0})
    ->Args({200, 0, 0})
    ->Args({200, 1, 1})
    ->Unit(benchmark::kMicrosecond);

void BM_Energy(benchmark::State& bs) {
  const auto p = worked(true, 1.0, DelayRealization::ring_buffer);
  const auto d = discretize(p, {});
  Solver solver(p, d);
  const auto st = solver.build({});
  for (auto _ : bs) benchmark::DoNotOptimize(energy(st, p, d));
}
BENCHMARK(BM_Energy)->Unit(benchmark::kMicrosecond);

void BM_Certificate(benchmark::State& bs) {
  const double cp = 1.0 / (std::numbers::pi * std::numbers::pi);
  const CertificateInputs in{1.0, 0.5, 2.0, 1.0, 2.0, cp, 0.0005};
  for (auto _ : bs) benchmark::DoNotOptimize(compute_constants(in));
}
BENCHMARK(BM_Certificate);

}  // namespace

BENCHMARK_MAIN();
