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

#include "ssfm/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ssfm {

namespace {

// Terms t_k = (z/2)^{2k+nu} / (k! (k+nu)!), summed relative to the peak term.
double log_series(int nu, double z) {
  const double nu_d = nu;
  const double h = 0.5 * z;
  const double q = h * h;
  const double peak = std::floor(0.5 * (std::sqrt(nu_d * nu_d + z * z) - nu_d));
  const double log_peak = (2.0 * peak + nu_d) * std::log(h) - std::lgamma(peak + 1.0) -
                          std::lgamma(peak + nu_d + 1.0);
  double sum = 1.0;
  double t = 1.0;
  for (double k = peak + 1.0;; k += 1.0) {
    t *= q / (k * (k + nu_d));
    sum += t;
    if (t < 1e-17 * sum) break;
  }
  t = 1.0;
  for (double k = peak; k >= 1.0; k -= 1.0) {
    t *= k * (k + nu_d) / q;
    sum += t;
    if (t < 1e-17 * sum) break;
  }
  return log_peak + std::log(sum);
}

double log_hankel(int nu, double z) {
  const double mu = 4.0 * static_cast<double>(nu) * static_cast<double>(nu);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * z);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return z - 0.5 * std::log(2.0 * std::numbers::pi * z) + std::log(sum);
}

}  // namespace

double log_bessel_i(int nu, double z) {
  if (nu < 0) throw std::domain_error("log_bessel_i: negative order");
  if (!(z >= 0.0)) throw std::domain_error("log_bessel_i: negative or NaN argument");
  if (z == 0.0) return nu == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  const double nu2 = static_cast<double>(nu) * static_cast<double>(nu);
  if (z > std::max(50.0, 4.0 * nu2)) return log_hankel(nu, z);
  return log_series(nu, z);
}

}  // namespace ssfm
