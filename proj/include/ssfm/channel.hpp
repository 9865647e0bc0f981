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

#ifndef SSFM_CHANNEL_HPP
#define SSFM_CHANNEL_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ssfm/config.hpp"
#include "ssfm/rng.hpp"
#include "ssfm/spectral.hpp"
#include "ssfm/types.hpp"

namespace ssfm {

/// What propagate() records per segment.
enum class TraceLevel {
  none,
  phases,   ///< nonlinear phases only
  full,     ///< phases and the segment inputs V_i
};

/// Per-segment record of a forward run.
struct SegmentTrace {
  std::size_t K = 0;
  std::size_t n = 0;
  /// Row-major K x n, phases[(i-1)*n + l] = Phi_{i,l} [rad].
  std::vector<double> phases;
  /// Segment inputs V_1..V_K (empty unless TraceLevel::full).
  std::vector<SignalVector> inputs;

  /// 1-based segment i, 0-based sample l.
  double phase(std::size_t i, std::size_t l) const { return phases[(i - 1) * n + l]; }
};

struct NonlinearStep {
  SignalVector u;
  std::vector<double> phases;
};

/// One modified nonlinear step: for each sample, walk W(m) = sum_{r<=m} xi_r
/// with xi_r ~ CN(0, sigma^2 mu), accumulate Phi = gamma mu sum_r |v + W(r)|^2
/// and return u = (v + W(M)) e^{j Phi}.
NonlinearStep nonlinear_noise_step(const SignalVector& v, const ChannelConfig& cfg,
                                   RngStream& rng);

/// In-place kernel behind nonlinear_noise_step. `phases` may be empty.
void nonlinear_noise_step_inplace(std::span<cplx> v, const ChannelConfig& cfg, RngStream& rng,
                                  std::span<double> phases);

struct Propagation {
  SignalVector y;
  std::optional<SegmentTrace> trace;
};

/// K segments of {nonlinear+noise step, then D_K}. Throws PropagationError if a
/// sample becomes non-finite.
Propagation propagate(const SignalVector& x, const ChannelConfig& cfg,
                      const DispersionProfile& profile, RngStream& rng,
                      TraceLevel trace = TraceLevel::none);
Propagation propagate(const SignalVector& x, const ChannelConfig& cfg, RngStream& rng,
                      TraceLevel trace = TraceLevel::none);

/// Noiseless inverse: K times { u = D_K^{-1} v; v = u e^{-j gamma eps |u|^2} }.
SignalVector back_propagate(const SignalVector& y, const ChannelConfig& cfg,
                            const DispersionProfile& profile);
SignalVector back_propagate(const SignalVector& y, const ChannelConfig& cfg);

}  // namespace ssfm

#endif  // SSFM_CHANNEL_HPP
