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

#ifndef SSFM_TYPES_HPP
#define SSFM_TYPES_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssfm {

using cplx = std::complex<double>;

/// Invalid channel or experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical failure while running a channel model (non-finite samples).
class PropagationError : public std::runtime_error {
 public:
  PropagationError(const std::string& what, std::size_t segment)
      : std::runtime_error(what + " (segment " + std::to_string(segment) + ")"),
        segment_(segment) {}

  /// 1-based index of the segment where the failure was detected.
  std::size_t segment() const noexcept { return segment_; }

 private:
  std::size_t segment_;
};

/// Length-n complex time-domain samples in units of sqrt(W).
///
/// The length is fixed at construction; propagation routines operate on the
/// sample buffer in place and never resize it.
class SignalVector {
 public:
  SignalVector() = default;
  explicit SignalVector(std::size_t n) : samples_(n) {}
  explicit SignalVector(std::vector<cplx> samples) : samples_(std::move(samples)) {}
  SignalVector(std::initializer_list<cplx> samples) : samples_(samples) {}

  std::size_t size() const noexcept { return samples_.size(); }
  cplx& operator[](std::size_t i) noexcept { return samples_[i]; }
  const cplx& operator[](std::size_t i) const noexcept { return samples_[i]; }

  std::span<cplx> span() noexcept { return samples_; }
  std::span<const cplx> span() const noexcept { return samples_; }
  cplx* data() noexcept { return samples_.data(); }
  const cplx* data() const noexcept { return samples_.data(); }
  auto begin() noexcept { return samples_.begin(); }
  auto end() noexcept { return samples_.end(); }
  auto begin() const noexcept { return samples_.begin(); }
  auto end() const noexcept { return samples_.end(); }

  const std::vector<cplx>& samples() const noexcept { return samples_; }

  double squared_norm() const noexcept;
  double norm() const noexcept;
  bool all_finite() const noexcept;

 private:
  std::vector<cplx> samples_;
};

/// Euclidean distance ||a - b||.
double distance(const SignalVector& a, const SignalVector& b);

}  // namespace ssfm

#endif  // SSFM_TYPES_HPP
