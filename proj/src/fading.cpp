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

#include "ssfm/fading.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ssfm/bessel.hpp"

namespace ssfm {

namespace {

void check_profile(const ChannelConfig& cfg, const DispersionProfile& profile) {
  if (profile.n != cfg.n) {
    throw ConfigError("profile dimension " + std::to_string(profile.n) +
                      " does not match configured n = " + std::to_string(cfg.n));
  }
}

void apply_phases(std::span<cplx> v, RngStream& rng) {
  for (cplx& z : v) z *= std::polar(1.0, rng.phase());
}

}  // namespace

double ChannelMatrix::unitarity_defect() const {
  const Eigen::MatrixXcd g = entries_ * entries_.adjoint();
  return (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

double ChannelMatrix::max_offdiagonal() const {
  double m = 0.0;
  for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
    for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
      if (i != j) m = std::max(m, std::abs(entries_(i, j)));
    }
  }
  return m;
}

std::vector<cplx> sample_R(std::size_t n, RngStream& rng) {
  std::vector<cplx> d(n);
  for (cplx& z : d) z = std::polar(1.0, rng.phase());
  return d;
}

ChannelMatrix sample_MK(const ChannelConfig& cfg, const DispersionProfile& profile,
                        RngStream& rng) {
  check_profile(cfg, profile);
  const std::size_t n = cfg.n;
  if (n > kMaxMatrixDimension) {
    throw ConfigError("sample_MK: n = " + std::to_string(n) + " exceeds the dense limit " +
                      std::to_string(kMaxMatrixDimension));
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  const DispersionOperator D(profile);
  std::vector<cplx> r(n);
  for (std::size_t i = 0; i < profile.K; ++i) {
    for (cplx& z : r) z = std::polar(1.0, rng.phase());
    for (std::size_t c = 0; c < n; ++c) {
      std::span<cplx> col(m.data() + c * n, n);
      for (std::size_t l = 0; l < n; ++l) col[l] *= r[l];
      D.apply(col, Direction::forward);
    }
  }
  return ChannelMatrix(std::move(m), profile.K, profile.mode);
}

void apply_MK(std::span<cplx> v, const DispersionProfile& profile, RngStream& rng) {
  if (v.size() != profile.n) throw ConfigError("apply_MK: dimension mismatch");
  const DispersionOperator D(profile);
  for (std::size_t i = 0; i < profile.K; ++i) {
    apply_phases(v, rng);
    D.apply(v, Direction::forward);
  }
}

SignalVector sample_ZK(const ChannelConfig& cfg, const DispersionProfile& profile,
                       RngStream& rng) {
  check_profile(cfg, profile);
  SignalVector z(cfg.n);
  if (profile.lossless()) {
    for (cplx& s : z) s = rng.complex_normal(cfg.noise_power());
    return z;
  }
  const double var = cfg.sigma2 * cfg.segment_length();
  const DispersionOperator D(profile);
  for (std::size_t i = 0; i < profile.K; ++i) {
    for (cplx& s : z) s += rng.complex_normal(var);
    apply_phases(z.span(), rng);
    D.apply(z.span(), Direction::forward);
  }
  return z;
}

SignalVector fading_output(const SignalVector& x, const ChannelConfig& cfg,
                           const DispersionProfile& profile, RngStream& rng) {
  check_profile(cfg, profile);
  if (x.size() != cfg.n) throw ConfigError("fading_output: input dimension mismatch");
  SignalVector y = x;
  if (profile.lossless()) {
    apply_MK(y.span(), profile, rng);
    for (cplx& s : y) s += rng.complex_normal(cfg.noise_power());
    return y;
  }
  const double var = cfg.sigma2 * cfg.segment_length();
  const DispersionOperator D(profile);
  for (std::size_t i = 0; i < profile.K; ++i) {
    for (cplx& s : y) s += rng.complex_normal(var);
    apply_phases(y.span(), rng);
    D.apply(y.span(), Direction::forward);
  }
  return y;
}

double noise_inflation(double zeta) {
  if (zeta == 0.0) return 1.0;
  return std::expm1(2.0 * zeta) / (2.0 * zeta);
}

PhaseNoiseLimitParams PhaseNoiseLimitParams::from(const ChannelConfig& cfg,
                                                  const DispersionProfile& profile) {
  PhaseNoiseLimitParams p;
  p.zeta = profile.average_total_loss();
  p.eta = noise_inflation(p.zeta);
  p.noise_power = cfg.noise_power();
  return p;
}

SignalVector diagonal_limit_output(const SignalVector& x, const PhaseNoiseLimitParams& params,
                                   RngStream& rng) {
  SignalVector y(x.size());
  const double gain = std::exp(params.zeta);
  const double var = params.eta * params.noise_power;
  for (std::size_t l = 0; l < x.size(); ++l) {
    y[l] = gain * std::polar(1.0, rng.phase()) * x[l] + rng.complex_normal(var);
  }
  return y;
}

double log_norm_conditional_pdf(double r, double lambda, std::size_t n, double s) {
  if (!(r >= 0.0) || !(lambda >= 0.0)) {
    throw std::domain_error("norm_conditional_pdf: norms must be non-negative");
  }
  if (!(s > 0.0) || n == 0) throw std::domain_error("norm_conditional_pdf: need s > 0, n >= 1");
  if (r == 0.0) return -std::numeric_limits<double>::infinity();
  const double nd = static_cast<double>(n);
  if (lambda == 0.0) {
    return std::log(2.0) + (2.0 * nd - 1.0) * std::log(r) - nd * std::log(s) -
           std::lgamma(nd) - r * r / s;
  }
  return std::log(2.0) + nd * std::log(r) - std::log(s) - (nd - 1.0) * std::log(lambda) -
         (r * r + lambda * lambda) / s +
         log_bessel_i(static_cast<int>(n) - 1, 2.0 * lambda * r / s);
}

double norm_conditional_pdf(double r, double lambda, std::size_t n, double s) {
  return std::exp(log_norm_conditional_pdf(r, lambda, n, s));
}

}  // namespace ssfm
