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

#ifndef SSFM_FADING_HPP
#define SSFM_FADING_HPP

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ssfm/config.hpp"
#include "ssfm/rng.hpp"
#include "ssfm/spectral.hpp"
#include "ssfm/types.hpp"

namespace ssfm {

/// Largest n for which sample_MK materializes the matrix.
inline constexpr std::size_t kMaxMatrixDimension = 256;

/// Dense realization of M_K = D_K R(theta_K) ... D_K R(theta_1).
class ChannelMatrix {
 public:
  ChannelMatrix(Eigen::MatrixXcd entries, std::size_t K, DispersionMode mode)
      : entries_(std::move(entries)), K_(K), mode_(mode) {}

  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  std::size_t n() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  std::size_t K() const noexcept { return K_; }
  DispersionMode mode() const noexcept { return mode_; }

  /// max |(M M^H - I)_{ij}|
  double unitarity_defect() const;
  /// max_{i != j} |M_ij|
  double max_offdiagonal() const;

 private:
  Eigen::MatrixXcd entries_;
  std::size_t K_;
  DispersionMode mode_;
};

/// Diagonal of R(theta): e^{j theta_l}, theta_l i.i.d. uniform on [0, 2 pi).
std::vector<cplx> sample_R(std::size_t n, RngStream& rng);

/// Builds M_K column by column with K (R, then D_K) applications; throws
/// ConfigError for n > kMaxMatrixDimension.
ChannelMatrix sample_MK(const ChannelConfig& cfg, const DispersionProfile& profile,
                        RngStream& rng);

/// v <- M_K v for a fresh draw of the K phase vectors, without forming M_K.
/// Feeding e_1 yields the first column.
void apply_MK(std::span<cplx> v, const DispersionProfile& profile, RngStream& rng);

/// Z_K = sum_i D R_K ... D R_i Zbar_i with Zbar_i ~ CN(0, sigma^2 eps I).
///
/// Segment i's own factor D R_i is applied to Zbar_i. Lossless profiles use
/// the exact shortcut Z_K ~ CN(0, sigma^2 L I).
SignalVector sample_ZK(const ChannelConfig& cfg, const DispersionProfile& profile,
                       RngStream& rng);

/// Y = M_K x + Z_K with both drawn from the same phase sequence.
SignalVector fading_output(const SignalVector& x, const ChannelConfig& cfg,
                           const DispersionProfile& profile, RngStream& rng);

/// Parameters of the K -> infinity diagonal phase-noise channel.
struct PhaseNoiseLimitParams {
  double zeta = 0.0;         ///< average total loss
  double eta = 1.0;          ///< noise inflation (e^{2 zeta} - 1) / (2 zeta)
  double noise_power = 0.0;  ///< sigma^2 L

  static PhaseNoiseLimitParams from(const ChannelConfig& cfg, const DispersionProfile& profile);
};

/// (e^{2 zeta} - 1) / (2 zeta), continuous at zeta = 0.
double noise_inflation(double zeta);

/// y_l = e^{zeta + j theta_l} x_l + CN(0, eta sigma^2 L).
SignalVector diagonal_limit_output(const SignalVector& x, const PhaseNoiseLimitParams& params,
                                   RngStream& rng);

/// Density of ||y|| given ||x|| = lambda for y = R x + z, z ~ CN(0, s I_n):
/// 2 r^n / (s lambda^{n-1}) exp(-(r^2 + lambda^2)/s) I_{n-1}(2 lambda r / s).
double norm_conditional_pdf(double r, double lambda, std::size_t n, double s);
double log_norm_conditional_pdf(double r, double lambda, std::size_t n, double s);

}  // namespace ssfm

#endif  // SSFM_FADING_HPP
