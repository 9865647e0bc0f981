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

#ifndef SSFM_INFO_HPP
#define SSFM_INFO_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ssfm/config.hpp"
#include "ssfm/parallel.hpp"
#include "ssfm/types.hpp"

namespace ssfm {

/// Equiprobable multi-ring constellation with 8 phases per ring.
struct Constellation {
  static constexpr std::size_t kPhases = 8;

  std::size_t rings = 0;
  double power = 0.0;
  double spacing = 0.0;  ///< ring k has radius k * spacing
  /// Index r * 8 + j is ring r + 1, phase 2 pi j / 8.
  std::vector<cplx> points;

  std::size_t size() const noexcept { return points.size(); }
  double radius(std::size_t ring) const { return static_cast<double>(ring) * spacing; }
};

/// Radii k c, k = 1..m_A, c = sqrt(6 P / ((m_A + 1)(2 m_A + 1))).
Constellation build_constellation(std::size_t rings, double power);

struct MiOptions {
  std::size_t bins = 64;   ///< per axis
  double pad_sigmas = 4.0;
  /// Per-dimension noise scale for the padding; <= 0 estimates it from the
  /// spread of y around its per-symbol mean.
  double sigma = 0.0;
  /// > 0: grid is the square [-extent - pad, extent + pad]^2 (e.g. the
  /// constellation's outer radius), samples outside clamp to edge cells.
  /// <= 0: bounding box of the received samples.
  double extent = 0.0;
};

struct MiEstimate {
  double bits = 0.0;       ///< bits per complex symbol
  bool degenerate = false; ///< all samples fell into one bin
  std::string warning;
};

/// Plug-in histogram estimate of I(X; Y) with per-symbol conditionals on a
/// shared 2D grid. Needs at least 10^4 pairs.
MiEstimate estimate_mi(std::span<const std::size_t> x, std::span<const cplx> y,
                       std::size_t alphabet, const MiOptions& options = {});

struct AirPoint {
  double power = 0.0;  ///< launch power per sample [W]
  double power_dbm = 0.0;
  double snr_db = 0.0;
  double mi_bits = 0.0;
  double upper_bits = 0.0;
  double lower_bits = 0.0;
  std::size_t rings = 0;  ///< ring count of the input constellation
  std::size_t samples = 0;  ///< pairs behind mi_bits, after any doubling
  /// |MI(samples) - MI(samples / 2)| < stability_tol.
  bool stable = false;
  bool mi_warning = false;
  std::string error;   ///< empty on success
};

struct AirCurve {
  std::vector<AirPoint> records;  ///< sorted by power
};

/// Ring count used when AirOptions::rings is 0: round(0.8 sqrt(snr)) clamped to
/// [1, 16]. A crude stand-in for maximizing over the input; too many rings at
/// low SNR inflates the plug-in estimate past the channel capacity.
std::size_t auto_ring_count(double snr);

struct AirOptions {
  /// 0 selects auto_ring_count per point.
  std::size_t rings = 0;
  std::size_t samples_per_point = 1 << 16;
  /// Stability gate: while the estimate on the first half of the samples
  /// differs from the full one by stability_tol or more, the sample count is
  /// doubled, up to max_samples_per_point (0 = samples_per_point, report only).
  std::size_t max_samples_per_point = 0;
  double stability_tol = 0.05;
  bool back_propagation = true;
  /// A non-positive mi.sigma is replaced by the known noise scale sqrt(sigma^2 L / 2).
  MiOptions mi;
  std::uint64_t seed = 1;
  Execution exec = Execution::parallel;
};

/// For each launch power: i.i.d. symbols through the SSFM channel and
/// back-propagation, with (x_l, yhat_l) pooled over positions into one MI
/// estimate. A failed point keeps its error and the sweep continues.
AirCurve air_sweep(const ChannelConfig& cfg, std::span<const double> powers,
                   const AirOptions& options = {});

struct ScatterSet {
  double snr_db = 0.0;
  double power = 0.0;
  std::vector<std::size_t> symbol;
  std::vector<cplx> x;     ///< transmitted, divided by sqrt(P)
  std::vector<cplx> yhat;  ///< back-propagated output, divided by sqrt(P)
};

/// Normalized received clouds at each SNR; no statistics are computed.
std::vector<ScatterSet> scatter_capture(const ChannelConfig& cfg, std::span<const double> snr_db,
                                        std::size_t symbols, std::size_t rings = 16,
                                        std::uint64_t seed = 1,
                                        Execution exec = Execution::parallel);

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);
double db_to_linear(double db);
double linear_to_db(double x);

/// sqrt(-2 ln R) with R the mean resultant length of the angles.
double circular_std(std::span<const double> angles);

}  // namespace ssfm

#endif  // SSFM_INFO_HPP
