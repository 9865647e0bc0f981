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

#ifndef SSFM_BESSEL_HPP
#define SSFM_BESSEL_HPP

namespace ssfm {

/// ln I_nu(z) for integer order nu >= 0 and z >= 0, without overflow.
///
/// Uses the power series summed outward from its largest term for moderate z
/// and the Hankel expansion once z >> nu^2. ln I_nu(0) = -inf for nu > 0.
double log_bessel_i(int nu, double z);

}  // namespace ssfm

#endif  // SSFM_BESSEL_HPP
