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

#include "ssfm/types.hpp"

#include <cmath>

namespace ssfm {

double SignalVector::squared_norm() const noexcept {
  double s = 0.0;
  for (const cplx& z : samples_) s += std::norm(z);
  return s;
}

double SignalVector::norm() const noexcept { return std::sqrt(squared_norm()); }

bool SignalVector::all_finite() const noexcept {
  for (const cplx& z : samples_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double distance(const SignalVector& a, const SignalVector& b) {
  if (a.size() != b.size()) throw ConfigError("distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace ssfm
