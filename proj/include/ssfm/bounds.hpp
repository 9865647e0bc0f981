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

#ifndef SSFM_BOUNDS_HPP
#define SSFM_BOUNDS_HPP

#include "ssfm/spectral.hpp"

namespace ssfm {

/// log2(1 + snr)
double upper_bound(double snr);

/// a = zeta e^{2 zeta} / (e^{2 zeta} - 1) for zeta <= 0; 1/2 at zeta = 0.
double loss_factor_a(double zeta);

/// (1/2) log2(1 + snr) + (1/2) log2 a(zeta), with the o(1) term dropped.
double lower_bound_asymptotic(double snr, double zeta);

/// Pre-log when K = snr^{1/delta}: 1/2 up to 1.5, (3 - delta)/(2 delta) up to 2,
/// then 1/(2 delta).
double prelog_r(double delta);

/// (1/2) log2(1 + snr/2)
double phase_noise_capacity(double snr);

enum class UpsilonRegime { general, low_noise_iid };

/// Theory curve for the convergence exponent.
double upsilon_theory(double delta, UpsilonRegime regime);

/// sqrt(sum_r |sum_s (zeta_s + j d_s) e^{-2 pi j r s / n}|^4) over the total
/// loss and dispersion values of the profile.
double compute_rho(const DispersionProfile& profile);

/// (1/2) log2(e^{2 zeta + 1} / (rho pi sqrt(8 n))); additive constant for the
/// large-delta lower bound, reported as an annotation only.
double rho_correction(double zeta, double rho, std::size_t n);

/// Every bound at one operating point.
struct BoundSet {
  double snr = 0.0;
  double zeta = 0.0;
  double a = 0.5;
  double upper = 0.0;
  double lower_asymptotic = 0.0;
  double prelog = 0.5;
  double phase_noise_ref = 0.0;
  /// Lower bound drops its o(1) term.
  static constexpr bool lower_is_asymptotic = true;

  static BoundSet evaluate(double snr, double zeta, double delta);
};

}  // namespace ssfm

#endif  // SSFM_BOUNDS_HPP
