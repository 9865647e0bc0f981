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

#include "ssfm/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ssfm/types.hpp"

namespace ssfm {

double upper_bound(double snr) {
  if (!(snr >= 0.0)) throw std::domain_error("upper_bound: snr must be >= 0");
  return std::log2(1.0 + snr);
}

double loss_factor_a(double zeta) {
  if (zeta > 0.0) throw std::domain_error("loss_factor_a: zeta must be <= 0");
  if (zeta == 0.0) return 0.5;
  // zeta e^{2 zeta} / (e^{2 zeta} - 1) = zeta / (1 - e^{-2 zeta})
  return zeta / -std::expm1(-2.0 * zeta);
}

double lower_bound_asymptotic(double snr, double zeta) {
  if (!(snr >= 0.0)) throw std::domain_error("lower_bound_asymptotic: snr must be >= 0");
  return 0.5 * std::log2(1.0 + snr) + 0.5 * std::log2(loss_factor_a(zeta));
}

double prelog_r(double delta) {
  if (!(delta > 0.0)) throw std::domain_error("prelog_r: delta must be > 0");
  if (delta <= 1.5) return 0.5;
  if (delta <= 2.0) return (3.0 - delta) / (2.0 * delta);
  return 1.0 / (2.0 * delta);
}

double phase_noise_capacity(double snr) {
  if (!(snr >= 0.0)) throw std::domain_error("phase_noise_capacity: snr must be >= 0");
  return 0.5 * std::log2(1.0 + 0.5 * snr);
}

double upsilon_theory(double delta, UpsilonRegime regime) {
  if (!(delta >= 0.0)) throw std::domain_error("upsilon_theory: delta must be >= 0");
  if (regime == UpsilonRegime::low_noise_iid) {
    if (delta <= 1.0) return delta;
    if (delta <= 2.0) return 1.5 - delta / 2.0;
    return 0.5;
  }
  if (delta <= 1.0) return 5.0 * delta / 6.0;
  if (delta <= 1.5) return 1.0 - delta / 6.0;
  if (delta <= 2.0) return 1.5 - delta / 2.0;
  return 0.5;
}

double compute_rho(const DispersionProfile& profile) {
  const std::vector<double> zeta = profile.total_loss();
  const std::vector<double> d = profile.total_dispersion();
  SignalVector s(profile.n);
  for (std::size_t l = 0; l < profile.n; ++l) s[l] = cplx(zeta[l], d[l]);
  Fft(profile.n).forward(s.span());
  double sum = 0.0;
  for (const cplx& z : s) {
    const double m2 = std::norm(z);
    sum += m2 * m2;
  }
  return std::sqrt(sum);
}

double rho_correction(double zeta, double rho, std::size_t n) {
  return 0.5 * std::log2(std::exp(2.0 * zeta + 1.0) /
                         (rho * std::numbers::pi * std::sqrt(8.0 * static_cast<double>(n))));
}

BoundSet BoundSet::evaluate(double snr, double zeta, double delta) {
  BoundSet b;
  b.snr = snr;
  b.zeta = zeta;
  b.a = loss_factor_a(zeta);
  b.upper = upper_bound(snr);
  b.lower_asymptotic = lower_bound_asymptotic(snr, zeta);
  b.prelog = prelog_r(delta);
  b.phase_noise_ref = phase_noise_capacity(snr);
  return b;
}

}  // namespace ssfm
