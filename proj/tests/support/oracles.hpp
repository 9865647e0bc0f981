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

// Independent reference computations used only by the tests.

#ifndef SSFM_TESTS_ORACLES_HPP
#define SSFM_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "ssfm/rng.hpp"
#include "ssfm/types.hpp"

namespace oracle {

using ssfm::cplx;

// O(n^2) unitary DFT.
inline std::vector<cplx> naive_dft(const std::vector<cplx>& x, int sign = -1) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc(0.0);
    for (std::size_t m = 0; m < n; ++m) {
      const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k * m % n) /
                         static_cast<double>(n);
      acc += x[m] * std::polar(1.0, ang);
    }
    out[k] = acc / std::sqrt(static_cast<double>(n));
  }
  return out;
}

// Haar unitary via QR of a complex Ginibre matrix with the phases of R's
// diagonal moved into Q.
inline Eigen::MatrixXcd qr_haar(std::size_t n, ssfm::RngStream& rng) {
  Eigen::MatrixXcd g(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) g(i, j) = rng.complex_normal(1.0);
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

// KS distance by counting, O(N^2).
inline double brute_ks(const std::vector<double>& s, const std::function<double(double)>& cdf) {
  const double N = static_cast<double>(s.size());
  double d = 0.0;
  for (double x : s) {
    double le = 0.0;
    double lt = 0.0;
    for (double y : s) {
      if (y <= x) le += 1.0;
      if (y < x) lt += 1.0;
    }
    const double f = cdf(x);
    d = std::max(d, std::abs(le / N - f));
    d = std::max(d, std::abs(f - lt / N));
  }
  return d;
}

// I(X; Y) for equiprobable points in AWGN, CN(0, noise), by a trapezoid grid of
// +-8 sigma around each point.
inline double awgn_mi_quadrature(const std::vector<cplx>& points, double noise,
                                 std::size_t grid = 401) {
  const double s = std::sqrt(noise / 2.0);
  const double M = static_cast<double>(points.size());
  auto density = [&](cplx y, cplx x) {
    return std::exp(-std::norm(y - x) / noise) / (std::numbers::pi * noise);
  };
  double total = 0.0;
  for (const cplx& x : points) {
    const double h = 16.0 * s / static_cast<double>(grid - 1);
    double acc = 0.0;
    for (std::size_t a = 0; a < grid; ++a) {
      for (std::size_t b = 0; b < grid; ++b) {
        const cplx y = x + cplx(-8.0 * s + h * a, -8.0 * s + h * b);
        const double p = density(y, x);
        double mix = 0.0;
        for (const cplx& xp : points) mix += density(y, xp);
        mix /= M;
        const double w = (a == 0 || a == grid - 1 ? 0.5 : 1.0) * (b == 0 || b == grid - 1 ? 0.5 : 1.0);
        if (p > 0.0 && mix > 0.0) acc += w * p * std::log2(p / mix);
      }
    }
    total += acc * h * h;
  }
  return total / M;
}

// Adaptive Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol,
                      int depth = 40) {
  auto rec = [&](auto&& self, double lo, double hi, double flo, double fmid, double fhi,
                 double whole, double eps, int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
      return left + right + (left + right - whole) / 15.0;
    }
    return self(self, lo, mid, flo, flm, fmid, left, eps / 2.0, d - 1) +
           self(self, mid, hi, fmid, frm, fhi, right, eps / 2.0, d - 1);
  };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return rec(rec, a, b, fa, fm, fb, whole, tol, depth);
}

}  // namespace oracle

#endif  // SSFM_TESTS_ORACLES_HPP
