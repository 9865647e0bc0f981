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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ssfm/info.hpp"
#include "ssfm/matrix_lab.hpp"
#include "ssfm/parallel.hpp"
#include "ssfm/rng.hpp"

using namespace ssfm;

namespace {

ChannelConfig small_channel() {
  ChannelConfig c;
  c.n = 16;
  c.K = 120;
  c.M = 2;
  c.gamma = 1.0;
  c.sigma2 = 1e-3;
  c.beta2 = -0.8;
  return c;
}

// Forces several workers even on a single-core host.
struct ThreadScope {
  explicit ThreadScope(int t) { parallel::set_threads(t); }
  ~ThreadScope() { parallel::set_threads(0); }
};

}  // namespace

TEST_CASE("derived seeds depend on the whole path") {
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(derive_seed(1, {2}) != derive_seed(2, {2}));
  CHECK(derive_seed(1, {0}) != derive_seed(1, {0, 0}));
}

TEST_CASE("uniform draws lie in [0, 1)") {
  RngStream rng(8);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  CHECK(lo < 1e-3);
  CHECK(hi > 1.0 - 1e-3);
}

TEST_CASE("parallel loop rethrows the first failure") {
  ThreadScope scope(4);
  std::vector<int> hit(64, 0);
  CHECK_THROWS_AS(parallel::for_each_parallel(64,
                                              [&](std::size_t i) {
                                                hit[i] = 1;
                                                if (i == 17) throw std::runtime_error("boom");
                                              }),
                  std::runtime_error);
  CHECK(hit[17] == 1);
}

TEST_CASE("serial and parallel first-entry magnitudes are bit-identical") {
  ThreadScope scope(4);
  ChannelConfig c = small_channel();
  const DispersionProfile p = dispersion_multipliers(c);
  const auto s = first_entry_magnitudes(p, 200, 5, Execution::serial);
  const auto q = first_entry_magnitudes(p, 200, 5, Execution::parallel);
  CHECK(s == q);
}

TEST_CASE("serial and parallel upsilon estimates are bit-identical") {
  ThreadScope scope(3);
  ChannelConfig c = small_channel();
  UpsilonOptions o;
  o.exec = Execution::serial;
  const UpsilonEstimate s = convergence_rate_upsilon(c, 0.6, 24, o);
  o.exec = Execution::parallel;
  const UpsilonEstimate q = convergence_rate_upsilon(c, 0.6, 24, o);
  CHECK(s.values == q.values);
  CHECK(s.median == q.median);
}

TEST_CASE("serial and parallel decay fits are bit-identical") {
  ThreadScope scope(4);
  ChannelConfig c = small_channel();
  c.n = 4;
  const std::vector<std::size_t> Ks{10, 20, 40};
  DecayFitOptions o;
  o.bootstrap = 30;
  o.exec = Execution::serial;
  const DecayFit s = offdiag_decay_fit(c, Ks, 40, o);
  o.exec = Execution::parallel;
  const DecayFit q = offdiag_decay_fit(c, Ks, 40, o);
  CHECK(s.median == q.median);
  CHECK(s.slope == q.slope);
  CHECK(s.slope_stderr == q.slope_stderr);
}

TEST_CASE("serial and parallel AIR sweeps are bit-identical") {
  ThreadScope scope(4);
  ChannelConfig c = small_channel();
  c.K = 20;
  const std::vector<double> powers{0.5, 5.0};
  AirOptions o;
  o.samples_per_point = 10000;
  o.exec = Execution::serial;
  const AirCurve s = air_sweep(c, powers, o);
  o.exec = Execution::parallel;
  const AirCurve q = air_sweep(c, powers, o);
  REQUIRE(s.records.size() == q.records.size());
  for (std::size_t i = 0; i < s.records.size(); ++i) CHECK(s.records[i].mi_bits == q.records[i].mi_bits);
}

TEST_CASE("different seeds give different trials") {
  ChannelConfig c = small_channel();
  const DispersionProfile p = dispersion_multipliers(c);
  CHECK(first_entry_magnitudes(p, 10, 1, Execution::serial) !=
        first_entry_magnitudes(p, 10, 2, Execution::serial));
}
