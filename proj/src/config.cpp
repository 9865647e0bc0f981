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

#include "ssfm/config.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ssfm/types.hpp"

namespace ssfm {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

double ChannelConfig::snr() const {
  const double noise = noise_power();
  if (noise <= 0.0) return std::numeric_limits<double>::infinity();
  return power / noise;
}

bool ChannelConfig::lossless() const {
  for (double a : alpha) {
    if (a != 0.0) return false;
  }
  return true;
}

void ChannelConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError("ChannelConfig: " + msg); };
  if (!is_power_of_two(n)) fail("n must be a power of two, got " + std::to_string(n));
  if (K == 0) fail("K must be positive");
  if (M == 0) fail("M must be positive");
  if (!(L > 0.0) || !std::isfinite(L)) fail("L must be positive and finite");
  if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt must be positive and finite");
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) fail("sigma2 must be non-negative");
  if (!std::isfinite(gamma)) fail("gamma must be finite");
  if (!std::isfinite(beta2)) fail("beta2 must be finite");
  if (!(power >= 0.0) || !std::isfinite(power)) fail("power must be non-negative");
  if (!alpha.empty() && alpha.size() != 1 && alpha.size() != n) {
    fail("alpha must be empty, a single value, or one value per bin");
  }
  if (!total_dispersion.empty() && total_dispersion.size() != n) {
    fail("total_dispersion must have n entries");
  }
  if (mode == DispersionMode::fixed && segment_dispersion.size() != n) {
    fail("fixed dispersion mode needs n segment_dispersion entries");
  }
}

}  // namespace ssfm
