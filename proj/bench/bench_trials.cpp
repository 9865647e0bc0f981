// Copyright 2026 The ssfmlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Serial reference vs OpenMP kernel on the Monte Carlo trial loops.

#include <benchmark/benchmark.h>

#include <numbers>

#include "ssfm/channel.hpp"
#include "ssfm/info.hpp"
#include "ssfm/matrix_lab.hpp"
#include "ssfm/parallel.hpp"

using namespace ssfm;

namespace {

ChannelConfig channel(std::size_t n, std::size_t K) {
  ChannelConfig c;
  c.n = n;
  c.K = K;
  c.gamma = 1.0;
  c.sigma2 = 1e-3;
  c.M = 4;
  c.beta2 = -2.0 * 4.0 / (std::numbers::pi * std::numbers::pi);
  return c;
}

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_FirstEntry(benchmark::State& state) {
  const DispersionProfile p = dispersion_multipliers(channel(8, 1000));
  for (auto _ : state) {
    benchmark::DoNotOptimize(first_entry_magnitudes(p, 256, 1, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * 256);
}

void BM_Upsilon(benchmark::State& state) {
  const ChannelConfig c = channel(32, 200);
  UpsilonOptions o;
  o.exec = mode(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(convergence_rate_upsilon(c, 0.6, 32, o));
  }
  state.SetItemsProcessed(state.iterations() * 32);
}

void BM_AirPoint(benchmark::State& state) {
  ChannelConfig c = channel(64, 50);
  c.sigma2 = 1.0;
  c.M = 1;
  const std::vector<double> power{100.0};
  AirOptions o;
  o.samples_per_point = 1 << 14;
  o.exec = mode(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(air_sweep(c, power, o));
  }
}

void BM_Propagate(benchmark::State& state) {
  const ChannelConfig c = channel(static_cast<std::size_t>(state.range(0)), 1000);
  const DispersionProfile p = dispersion_multipliers(c);
  RngStream rng(3);
  SignalVector x(c.n);
  for (cplx& z : x) z = rng.complex_normal(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(x, c, p, rng));
  }
  state.SetItemsProcessed(state.iterations() * c.K);
}

}  // namespace

// Argument 0 = serial reference, 1 = parallel.
BENCHMARK(BM_FirstEntry)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Upsilon)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AirPoint)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Propagate)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
