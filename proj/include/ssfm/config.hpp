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

#ifndef SSFM_CONFIG_HPP
#define SSFM_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ssfm {

/// How the per-segment dispersion exponents depend on the segment count.
enum class DispersionMode {
  /// b_l carries a 1/K factor; the total dispersion K*b_l is fixed.
  finite,
  /// b_l is supplied per segment and does not depend on K.
  fixed,
};

/// Fiber and grid parameters, in SI units.
///
/// Boundary units (km, dBm, dB/km, ...) are converted once by the lab config
/// parser; everything in the library is SI. Normalized-unit experiments set
/// the same fields with dimensionless values.
struct ChannelConfig {
  std::size_t n = 64;        ///< samples per vector, power of two
  std::size_t K = 100;       ///< spatial segments
  double L = 1.0;            ///< fiber length [m]
  double dt = 1.0;           ///< time step [s]
  double gamma = 0.0;        ///< Kerr nonlinearity [1/(W m)]
  double sigma2 = 0.0;       ///< noise power per unit length [W/m]
  std::size_t M = 64;        ///< inner Wiener steps per nonlinear step
  double beta2 = 0.0;        ///< group-velocity dispersion [s^2/m]
  DispersionMode mode = DispersionMode::finite;

  /// Finite mode: optional explicit total dispersion d_l (rad), overrides beta2.
  std::vector<double> total_dispersion;
  /// Fixed mode: per-segment phase exponents b_l (rad), independent of K.
  std::vector<double> segment_dispersion;
  /// Loss coefficients [1/m]: empty = lossless, one entry = flat, n entries = per bin.
  std::vector<double> alpha;

  double power = 1.0;        ///< average input power per sample [W]
  std::uint64_t seed = 1;

  double segment_length() const { return L / static_cast<double>(K); }
  double inner_step() const { return segment_length() / static_cast<double>(M); }
  /// Total additive noise power per sample, sigma^2 L.
  double noise_power() const { return sigma2 * L; }
  /// P / (sigma^2 L); +inf for a noiseless channel.
  double snr() const;
  bool lossless() const;

  /// Throws ConfigError on any invalid field.
  void validate() const;
};

bool is_power_of_two(std::size_t n) noexcept;

}  // namespace ssfm

#endif  // SSFM_CONFIG_HPP
