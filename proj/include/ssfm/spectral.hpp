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

#ifndef SSFM_SPECTRAL_HPP
#define SSFM_SPECTRAL_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ssfm/config.hpp"
#include "ssfm/types.hpp"

namespace ssfm {

/// In-place power-of-two FFT of a fixed size.
///
/// Transforms are unnormalized (FFTW convention); the unitary `dft`/`idft`
/// wrappers below apply the 1/sqrt(n) factors. Instances are cheap handles to
/// a process-wide plan cache and are safe to use from several threads.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  /// X_k = sum_m x_m e^{-2 pi j k m / n}
  void forward(std::span<cplx> data) const;
  /// x_m = sum_k X_k e^{+2 pi j k m / n}
  void backward(std::span<cplx> data) const;

 private:
  std::size_t n_;
  void* forward_plan_;
  void* backward_plan_;
};

/// Version string of the FFT backend.
std::string fft_backend_version();

/// Unitary DFT: ||dft(v)|| = ||v||. Throws ConfigError unless size is a power of two.
SignalVector dft(const SignalVector& v);
SignalVector idft(const SignalVector& v);

/// Per-frequency exponents of the dispersion matrix D_K = F^-1 diag(e^{a_l + j b_l}) F.
///
/// Bin l (0-based) is the DFT frequency index; bin 0 is DC.
struct DispersionProfile {
  std::size_t n = 0;
  std::size_t K = 0;
  DispersionMode mode = DispersionMode::finite;
  std::vector<double> a;  ///< loss exponent per segment
  std::vector<double> b;  ///< phase exponent per segment [rad]

  std::vector<cplx> forward;  ///< e^{a_l + j b_l}
  std::vector<cplx> inverse;  ///< e^{-(a_l + j b_l)}

  /// zeta_l = K a_l
  std::vector<double> total_loss() const;
  /// d_l = K b_l
  std::vector<double> total_dispersion() const;
  /// Frequency average of zeta_l.
  double average_total_loss() const;
  double average_total_dispersion() const;
  bool lossless() const;

  /// Build from explicit exponents.
  static DispersionProfile from_exponents(std::size_t K, DispersionMode mode,
                                          std::vector<double> a, std::vector<double> b);
};

/// Evaluate a_l = -L alpha_l / (2K) and, in finite mode,
/// b_l = -L beta2 (2 pi)^2 / (2 K (n dt)^2) * {l^2 for l < n/2, (n-l)^2 otherwise}.
DispersionProfile dispersion_multipliers(const ChannelConfig& cfg);

/// Scalar evaluation of b for a 0-based bin, used by the closed-form tests.
double quadratic_dispersion_exponent(const ChannelConfig& cfg, std::size_t bin);

enum class Direction { forward, inverse };

/// Reusable FFT scratch for applying D_K repeatedly to vectors of one size.
///
/// A frequency-flat profile (all exponents equal) is applied as a scalar
/// multiply, so e.g. b = 0 leaves off-diagonal entries exactly zero.
class DispersionOperator {
 public:
  explicit DispersionOperator(const DispersionProfile& profile);

  /// v <- D_K v (or D_K^{-1} v), in place.
  void apply(std::span<cplx> v, Direction dir) const;

  const DispersionProfile& profile() const noexcept { return *profile_; }

 private:
  const DispersionProfile* profile_;
  Fft fft_;
  std::vector<cplx> forward_scaled_;
  std::vector<cplx> inverse_scaled_;
  bool flat_ = false;
  cplx flat_forward_{1.0};
  cplx flat_inverse_{1.0};
};

/// idft(diag(e^{+-(a + j b)}) dft(v)). Throws ConfigError on dimension mismatch.
SignalVector apply_dispersion(const SignalVector& v, const DispersionProfile& p, bool inverse);

}  // namespace ssfm

#endif  // SSFM_SPECTRAL_HPP
