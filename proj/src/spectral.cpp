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

#include "ssfm/spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include <fftw3.h>

namespace ssfm {

namespace {

struct PlanPair {
  fftw_plan forward;
  fftw_plan backward;
};

// FFTW's planner is not thread-safe; plans are created once per size under a
// lock and then executed concurrently through the new-array interface.
PlanPair plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto* scratch = fftw_alloc_complex(n);
  const int size = static_cast<int>(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p{fftw_plan_dft_1d(size, scratch, scratch, FFTW_FORWARD, flags),
             fftw_plan_dft_1d(size, scratch, scratch, FFTW_BACKWARD, flags)};
  fftw_free(scratch);
  cache.emplace(n, p);
  return p;
}

void require_power_of_two(std::size_t n, const char* where) {
  if (!is_power_of_two(n)) {
    throw ConfigError(std::string(where) + ": length must be a power of two, got " +
                      std::to_string(n));
  }
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  require_power_of_two(n, "Fft");
  const PlanPair p = plans_for(n);
  forward_plan_ = p.forward;
  backward_plan_ = p.backward;
}

void Fft::forward(std::span<cplx> data) const {
  auto* z = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), z, z);
}

void Fft::backward(std::span<cplx> data) const {
  auto* z = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(backward_plan_), z, z);
}

std::string fft_backend_version() { return fftw_version; }

SignalVector dft(const SignalVector& v) {
  require_power_of_two(v.size(), "dft");
  SignalVector out = v;
  Fft(v.size()).forward(out.span());
  const double scale = 1.0 / std::sqrt(static_cast<double>(v.size()));
  for (cplx& z : out) z *= scale;
  return out;
}

SignalVector idft(const SignalVector& v) {
  require_power_of_two(v.size(), "idft");
  SignalVector out = v;
  Fft(v.size()).backward(out.span());
  const double scale = 1.0 / std::sqrt(static_cast<double>(v.size()));
  for (cplx& z : out) z *= scale;
  return out;
}

std::vector<double> DispersionProfile::total_loss() const {
  std::vector<double> z(a.size());
  for (std::size_t l = 0; l < a.size(); ++l) z[l] = static_cast<double>(K) * a[l];
  return z;
}

std::vector<double> DispersionProfile::total_dispersion() const {
  std::vector<double> d(b.size());
  for (std::size_t l = 0; l < b.size(); ++l) d[l] = static_cast<double>(K) * b[l];
  return d;
}

double DispersionProfile::average_total_loss() const {
  double s = 0.0;
  for (double v : a) s += v;
  return n == 0 ? 0.0 : static_cast<double>(K) * s / static_cast<double>(n);
}

double DispersionProfile::average_total_dispersion() const {
  double s = 0.0;
  for (double v : b) s += v;
  return n == 0 ? 0.0 : static_cast<double>(K) * s / static_cast<double>(n);
}

bool DispersionProfile::lossless() const {
  for (double v : a) {
    if (v != 0.0) return false;
  }
  return true;
}

DispersionProfile DispersionProfile::from_exponents(std::size_t K, DispersionMode mode,
                                                    std::vector<double> a,
                                                    std::vector<double> b) {
  if (a.size() != b.size()) throw ConfigError("DispersionProfile: a and b lengths differ");
  require_power_of_two(a.size(), "DispersionProfile");
  DispersionProfile p;
  p.n = a.size();
  p.K = K;
  p.mode = mode;
  p.a = std::move(a);
  p.b = std::move(b);
  p.forward.resize(p.n);
  p.inverse.resize(p.n);
  for (std::size_t l = 0; l < p.n; ++l) {
    p.forward[l] = std::exp(cplx(p.a[l], p.b[l]));
    p.inverse[l] = std::exp(cplx(-p.a[l], -p.b[l]));
  }
  return p;
}

double quadratic_dispersion_exponent(const ChannelConfig& cfg, std::size_t bin) {
  const double n = static_cast<double>(cfg.n);
  const double T = n * cfg.dt;
  const double two_pi = 2.0 * std::numbers::pi;
  const double scale =
      -cfg.L * cfg.beta2 * two_pi * two_pi / (2.0 * static_cast<double>(cfg.K) * T * T);
  const double k = static_cast<double>(bin < cfg.n / 2 ? bin : cfg.n - bin);
  return scale * k * k;
}

DispersionProfile dispersion_multipliers(const ChannelConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n;
  const double K = static_cast<double>(cfg.K);
  std::vector<double> a(n, 0.0);
  std::vector<double> b(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    double alpha = 0.0;
    if (cfg.alpha.size() == 1) alpha = cfg.alpha[0];
    if (cfg.alpha.size() == n) alpha = cfg.alpha[l];
    a[l] = -cfg.L * alpha / (2.0 * K);
  }
  if (cfg.mode == DispersionMode::fixed) {
    b = cfg.segment_dispersion;
  } else if (!cfg.total_dispersion.empty()) {
    for (std::size_t l = 0; l < n; ++l) b[l] = cfg.total_dispersion[l] / K;
  } else {
    for (std::size_t l = 0; l < n; ++l) b[l] = quadratic_dispersion_exponent(cfg, l);
  }
  return DispersionProfile::from_exponents(cfg.K, cfg.mode, std::move(a), std::move(b));
}

DispersionOperator::DispersionOperator(const DispersionProfile& profile)
    : profile_(&profile), fft_(profile.n) {
  const double scale = 1.0 / static_cast<double>(profile.n);
  forward_scaled_.resize(profile.n);
  inverse_scaled_.resize(profile.n);
  for (std::size_t l = 0; l < profile.n; ++l) {
    forward_scaled_[l] = profile.forward[l] * scale;
    inverse_scaled_[l] = profile.inverse[l] * scale;
  }
  flat_ = true;
  for (std::size_t l = 1; l < profile.n; ++l) {
    if (profile.a[l] != profile.a[0] || profile.b[l] != profile.b[0]) flat_ = false;
  }
  if (flat_ && profile.n > 0) {
    flat_forward_ = profile.forward[0];
    flat_inverse_ = profile.inverse[0];
  }
}

void DispersionOperator::apply(std::span<cplx> v, Direction dir) const {
  if (flat_) {
    const cplx c = dir == Direction::forward ? flat_forward_ : flat_inverse_;
    if (c != cplx(1.0)) {
      for (cplx& z : v) z *= c;
    }
    return;
  }
  const auto& m = dir == Direction::forward ? forward_scaled_ : inverse_scaled_;
  fft_.forward(v);
  for (std::size_t l = 0; l < v.size(); ++l) v[l] *= m[l];
  fft_.backward(v);
}

SignalVector apply_dispersion(const SignalVector& v, const DispersionProfile& p, bool inverse) {
  if (v.size() != p.n) {
    throw ConfigError("apply_dispersion: signal length " + std::to_string(v.size()) +
                      " does not match profile dimension " + std::to_string(p.n));
  }
  SignalVector out = v;
  DispersionOperator(p).apply(out.span(), inverse ? Direction::inverse : Direction::forward);
  return out;
}

}  // namespace ssfm
