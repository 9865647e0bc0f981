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

#ifndef SSFM_RNG_HPP
#define SSFM_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

#include <boost/random/normal_distribution.hpp>

#include "ssfm/types.hpp"

namespace ssfm {

/// SplitMix64 finalizer; used to hash stream coordinates into engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Fold a path of indices (trial, point, ...) into a 64-bit seed.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t p : path) h = splitmix64(h ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

/// A deterministic random stream.
///
/// Every Monte Carlo trial owns one stream derived from (master seed, trial
/// index, ...). Within a trial, draws are consumed in a fixed order
/// (segment, sample, inner step), so results depend only on those indices and
/// never on scheduling.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static RngStream derive(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    return RngStream(derive_seed(master, path));
  }

  /// Uniform on [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [0, 2*pi).
  double phase();

  double normal() { return normal_(engine_); }

  /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  cplx complex_normal(double variance);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  // Ziggurat sampler; std::normal_distribution is several times slower in
  // libstdc++ and the inner Wiener walk is dominated by these draws.
  boost::random::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace ssfm

#endif  // SSFM_RNG_HPP
