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

#include "ssfm/channel.hpp"

#include <cmath>
#include <string>

namespace ssfm {

namespace {

void check_finite(std::span<const cplx> v, std::size_t segment, const char* where) {
  for (const cplx& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw PropagationError(std::string(where) + ": non-finite sample", segment);
    }
  }
}

void check_dimension(const SignalVector& v, const ChannelConfig& cfg,
                     const DispersionProfile& profile) {
  if (v.size() != cfg.n || profile.n != cfg.n) {
    throw ConfigError("signal length " + std::to_string(v.size()) +
                      " does not match configured n = " + std::to_string(cfg.n));
  }
}

}  // namespace

void nonlinear_noise_step_inplace(std::span<cplx> v, const ChannelConfig& cfg, RngStream& rng,
                                  std::span<double> phases) {
  const double eps = cfg.segment_length();
  const double mu = cfg.inner_step();
  const double step_var = cfg.sigma2 * mu;
  for (std::size_t l = 0; l < v.size(); ++l) {
    double phi = 0.0;
    cplx w(0.0, 0.0);
    if (step_var > 0.0) {
      double acc = 0.0;
      for (std::size_t r = 0; r < cfg.M; ++r) {
        w += rng.complex_normal(step_var);
        acc += std::norm(v[l] + w);
      }
      phi = cfg.gamma * mu * acc;
    } else {
      phi = cfg.gamma * eps * std::norm(v[l]);
    }
    v[l] = (v[l] + w) * std::polar(1.0, phi);
    if (!phases.empty()) phases[l] = phi;
  }
}

NonlinearStep nonlinear_noise_step(const SignalVector& v, const ChannelConfig& cfg,
                                   RngStream& rng) {
  NonlinearStep out{v, std::vector<double>(v.size())};
  nonlinear_noise_step_inplace(out.u.span(), cfg, rng, out.phases);
  return out;
}

Propagation propagate(const SignalVector& x, const ChannelConfig& cfg,
                      const DispersionProfile& profile, RngStream& rng, TraceLevel trace) {
  check_dimension(x, cfg, profile);
  Propagation out{x, std::nullopt};
  if (trace != TraceLevel::none) {
    SegmentTrace t;
    t.K = cfg.K;
    t.n = cfg.n;
    t.phases.assign(cfg.K * cfg.n, 0.0);
    if (trace == TraceLevel::full) t.inputs.reserve(cfg.K);
    out.trace = std::move(t);
  }
  const DispersionOperator D(profile);
  auto v = out.y.span();
  for (std::size_t i = 1; i <= cfg.K; ++i) {
    std::span<double> phases;
    if (out.trace) {
      phases = std::span<double>(out.trace->phases).subspan((i - 1) * cfg.n, cfg.n);
      if (trace == TraceLevel::full) out.trace->inputs.push_back(out.y);
    }
    nonlinear_noise_step_inplace(v, cfg, rng, phases);
    D.apply(v, Direction::forward);
    check_finite(v, i, "propagate");
  }
  return out;
}

Propagation propagate(const SignalVector& x, const ChannelConfig& cfg, RngStream& rng,
                      TraceLevel trace) {
  const DispersionProfile profile = dispersion_multipliers(cfg);
  return propagate(x, cfg, profile, rng, trace);
}

SignalVector back_propagate(const SignalVector& y, const ChannelConfig& cfg,
                            const DispersionProfile& profile) {
  check_dimension(y, cfg, profile);
  SignalVector v = y;
  const DispersionOperator D(profile);
  const double g = cfg.gamma * cfg.segment_length();
  for (std::size_t i = 1; i <= cfg.K; ++i) {
    D.apply(v.span(), Direction::inverse);
    for (cplx& z : v) z *= std::polar(1.0, -g * std::norm(z));
    check_finite(v.span(), cfg.K + 1 - i, "back_propagate");
  }
  return v;
}

SignalVector back_propagate(const SignalVector& y, const ChannelConfig& cfg) {
  const DispersionProfile profile = dispersion_multipliers(cfg);
  return back_propagate(y, cfg, profile);
}

}  // namespace ssfm
