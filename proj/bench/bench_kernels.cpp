// Copyright 2026 The tpmem Authors
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

// Serial reference versus OpenMP kernels: the spin-boson m(t, tau) grid, the
// classical-memory battery minimum and the see-saw restarts.

#include <benchmark/benchmark.h>

#include "tpm/memory/battery.hpp"
#include "tpm/memory/seesaw.hpp"
#include "tpm/spinboson/jaynes_cummings.hpp"
#include "tpm/spinboson/memory_grid.hpp"
#include "tpm/spinboson/volterra.hpp"

namespace {

const tpm::Space kAbc({{"A", 2}, {"B", 2}, {"C", 2}});

const tpm::AmplitudeSolution& amplitude() {
  static const tpm::AmplitudeSolution sol = [] {
    tpm::SpectralDensity sd;
    sd.model = tpm::OhmicHardCutoff{0.1, 3.0};
    tpm::AmplitudeOptions o;
    o.check_step = false;
    return tpm::solve_amplitude(sd, 20.0, 0.01, o);
  }();
  return sol;
}

const std::vector<tpm::Operator>& battery() {
  static const std::vector<tpm::Operator> b = tpm::cm_battery(kAbc, 2000, 3);
  return b;
}

void BM_MemoryGridSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  amplitude();  // solve once outside the timed loop
  for (auto _ : state)
    benchmark::DoNotOptimize(tpm::memory_grid_serial(amplitude(), 1000 / n, 1000 / n, n, n));
}
void BM_MemoryGridParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  amplitude();
  for (auto _ : state)
    benchmark::DoNotOptimize(tpm::memory_grid(amplitude(), 1000 / n, 1000 / n, n, n));
}
BENCHMARK(BM_MemoryGridSerial)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MemoryGridParallel)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_BatterySerial(benchmark::State& state) {
  const tpm::Operator z = tpm::theta_star().theta;
  battery();  // build the shared samples outside the timed loop
  for (auto _ : state) benchmark::DoNotOptimize(tpm::battery_min_serial(z, battery()));
}
void BM_BatteryParallel(benchmark::State& state) {
  const tpm::Operator z = tpm::theta_star().theta;
  battery();
  for (auto _ : state) benchmark::DoNotOptimize(tpm::battery_min(z, battery()));
}
BENCHMARK(BM_BatterySerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BatteryParallel)->Unit(benchmark::kMicrosecond);

tpm::SeesawOptions seesaw_options() {
  tpm::SeesawOptions o;
  o.restarts = 4;
  o.max_rounds = 10;
  return o;
}

void BM_SeesawSerial(benchmark::State& state) {
  const tpm::Operator x = tpm::theta_star().theta;
  for (auto _ : state) benchmark::DoNotOptimize(tpm::cm_maximize_serial(x, seesaw_options()));
}
void BM_SeesawParallel(benchmark::State& state) {
  const tpm::Operator x = tpm::theta_star().theta;
  for (auto _ : state) benchmark::DoNotOptimize(tpm::cm_maximize(x, seesaw_options()));
}
BENCHMARK(BM_SeesawSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeesawParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
