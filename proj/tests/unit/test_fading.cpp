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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "oracles.hpp"
#include "ssfm/fading.hpp"
#include "ssfm/matrix_lab.hpp"
#include "ssfm/rng.hpp"

using namespace ssfm;

namespace {

ChannelConfig finite_config(std::size_t n, std::size_t K, double max_d) {
  ChannelConfig c;
  c.n = n;
  c.K = K;
  c.L = 1.0;
  c.dt = 1.0;
  c.beta2 = -2.0 * max_d / (std::numbers::pi * std::numbers::pi);
  return c;
}

}  // namespace

TEST_CASE("R has unit-modulus, uniform, zero-mean entries") {
  RngStream rng(1);
  std::vector<std::size_t> hist(32, 0);
  cplx mean(0.0);
  const std::size_t draws = 100000;
  for (std::size_t t = 0; t < draws / 10; ++t) {
    for (const cplx& z : sample_R(10, rng)) {
      CHECK(std::abs(std::abs(z) - 1.0) < 1e-15);
      double a = std::arg(z);
      if (a < 0.0) a += 2.0 * std::numbers::pi;
      ++hist[std::min<std::size_t>(31, static_cast<std::size_t>(a / (2.0 * std::numbers::pi) * 32))];
      if (t < 1000) mean += z;
    }
  }
  CHECK(std::abs(mean / 10000.0) < 0.02);
  const double expected = static_cast<double>(draws) / 32.0;
  double chi2 = 0.0;
  for (std::size_t c : hist) chi2 += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(31.0);
  CHECK(boost::math::cdf(boost::math::complement(dist, chi2)) > 0.01);
}

TEST_CASE("M_1 is a single D R factor") {
  ChannelConfig c = finite_config(8, 1, 1.5);
  const DispersionProfile p = dispersion_multipliers(c);
  RngStream a(2);
  RngStream b(2);
  const ChannelMatrix m = sample_MK(c, p, a);
  const std::vector<cplx> r = sample_R(8, b);
  for (std::size_t j = 0; j < 8; ++j) {
    SignalVector e(8);
    e[j] = r[j];
    const SignalVector col = apply_dispersion(e, p, false);
    for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(m.entries()(i, j) - col[i]) < 1e-14);
  }
}

TEST_CASE("lossless M_K is unitary") {
  ChannelConfig c = finite_config(32, 1000, 2.0);
  const DispersionProfile p = dispersion_multipliers(c);
  RngStream rng(3);
  CHECK(sample_MK(c, p, rng).unitarity_defect() < 1e-10);
  c.mode = DispersionMode::fixed;
  c.segment_dispersion = generic_fixed_dispersion(32, 4);
  RngStream rng2(4);
  CHECK(sample_MK(c, dispersion_multipliers(c), rng2).unitarity_defect() < 1e-10);
}

TEST_CASE("apply_MK reproduces the first column of sample_MK") {
  ChannelConfig c = finite_config(16, 50, 3.0);
  const DispersionProfile p = dispersion_multipliers(c);
  RngStream a(5);
  RngStream b(5);
  const ChannelMatrix m = sample_MK(c, p, a);
  std::vector<cplx> v(16, cplx(0.0));
  v[0] = 1.0;
  apply_MK(v, p, b);
  for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(v[i] - m.entries()(i, 0)) < 1e-12);
}

TEST_CASE("sample_MK refuses oversized matrices") {
  ChannelConfig c = finite_config(512, 1, 1.0);
  RngStream rng(6);
  CHECK_THROWS_AS(sample_MK(c, dispersion_multipliers(c), rng), ConfigError);
}

TEST_CASE("lossless Z_K has variance sigma^2 L") {
  ChannelConfig c = finite_config(8, 100, 1.0);
  c.sigma2 = 0.3;
  const DispersionProfile p = dispersion_multipliers(c);
  RngStream rng(7);
  double power = 0.0;
  const std::size_t draws = 100000;
  for (std::size_t t = 0; t < draws / 8; ++t) power += sample_ZK(c, p, rng).squared_norm();
  power /= static_cast<double>(draws);
  CHECK(std::abs(power - c.noise_power()) / c.noise_power() < 0.02);
}

TEST_CASE("Z_1 is one noise draw pushed through D R") {
  ChannelConfig c = finite_config(8, 1, 1.0);
  c.sigma2 = 0.5;
  c.alpha = {0.4};
  const DispersionProfile p = dispersion_multipliers(c);
  RngStream a(8);
  RngStream b(8);
  const SignalVector z = sample_ZK(c, p, a);
  SignalVector ref(8);
  for (cplx& s : ref) s = b.complex_normal(c.sigma2 * c.L);
  for (cplx& s : ref) s *= std::polar(1.0, b.phase());
  ref = apply_dispersion(ref, p, false);
  CHECK(distance(z, ref) < 1e-14);
}

TEST_CASE("lossy Z_K power approaches eta sigma^2 L") {
  ChannelConfig c = finite_config(8, 400, 1.0);
  c.sigma2 = 1.0;
  c.alpha = {1.6};  // zeta = -0.8
  const DispersionProfile p = dispersion_multipliers(c);
  const double eta = noise_inflation(p.average_total_loss());
  RngStream rng(9);
  double power = 0.0;
  const std::size_t vectors = 5000;
  for (std::size_t t = 0; t < vectors; ++t) power += sample_ZK(c, p, rng).squared_norm();
  power /= static_cast<double>(vectors * 8);
  CHECK(std::abs(power - eta * c.noise_power()) / (eta * c.noise_power()) < 0.03);
}

TEST_CASE("zero input gives pure noise") {
  ChannelConfig c = finite_config(8, 50, 1.0);
  c.sigma2 = 2.0;
  for (bool lossy : {false, true}) {
    if (lossy) c.alpha = {0.6};
    const DispersionProfile p = dispersion_multipliers(c);
    const double eta = noise_inflation(p.average_total_loss());
    RngStream rng(10);
    double e = 0.0;
    const std::size_t trials = 20000;
    for (std::size_t t = 0; t < trials; ++t) e += fading_output(SignalVector(8), c, p, rng).squared_norm();
    e /= static_cast<double>(trials);
    CHECK(std::abs(e - 8.0 * eta * c.noise_power()) / (8.0 * eta * c.noise_power()) < 0.02);
  }
}

TEST_CASE("diagonal limit moments") {
  PhaseNoiseLimitParams params;
  params.zeta = -0.5;
  params.eta = noise_inflation(params.zeta);
  params.noise_power = 0.25;
  const SignalVector x{cplx(1.0), cplx(0.0, 2.0), cplx(-0.5, 0.5), cplx(3.0)};
  RngStream rng(11);
  std::vector<double> m(4, 0.0);
  const std::size_t trials = 50000;
  for (std::size_t t = 0; t < trials; ++t) {
    const SignalVector y = diagonal_limit_output(x, params, rng);
    for (std::size_t l = 0; l < 4; ++l) m[l] += std::norm(y[l]);
  }
  for (std::size_t l = 0; l < 4; ++l) {
    const double expected = std::exp(2.0 * params.zeta) * std::norm(x[l]) + params.eta * params.noise_power;
    CHECK(std::abs(m[l] / trials - expected) / expected < 0.02);
  }
  CHECK(noise_inflation(0.0) == 1.0);
  CHECK(noise_inflation(-1e-12) == Catch::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("norm-conditional density integrates to one") {
  for (double lambda : {0.0, 0.5, 3.0, 20.0}) {
    const double s = 1.3;
    auto f = [&](double r) { return norm_conditional_pdf(r, lambda, 8, s); };
    const double hi = lambda + 12.0 * std::sqrt(s) + 6.0;
    const double total = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, hi, 15, 1e-12);
    INFO("lambda = " << lambda);
    CHECK(std::abs(total - 1.0) < 1e-6);
  }
}

TEST_CASE("zero input norm follows the chi law of 2n Gaussians") {
  const std::size_t n = 8;
  const double s = 0.7;
  for (double r : {0.3, 1.0, 2.2, 4.0}) {
    // ||z||^2 * 2/s is chi-square with 2n degrees of freedom.
    const boost::math::chi_squared chi(2.0 * n);
    const double ref = boost::math::pdf(chi, 2.0 * r * r / s) * 4.0 * r / s;
    CHECK(norm_conditional_pdf(r, 0.0, n, s) == Catch::Approx(ref).epsilon(1e-12));
    CHECK(norm_conditional_pdf(r, 1e-9, n, s) == Catch::Approx(ref).epsilon(1e-6));
  }
  CHECK(norm_conditional_pdf(0.0, 1.0, n, s) == 0.0);
  CHECK_THROWS(norm_conditional_pdf(-1.0, 1.0, n, s));
  CHECK_THROWS(norm_conditional_pdf(1.0, -1.0, n, s));
}

TEST_CASE("sampled ||R x + z|| follows the norm-conditional law") {
  const std::size_t n = 8;
  const double s = 0.5;
  SignalVector x(n);
  RngStream in(12);
  for (cplx& v : x) v = in.complex_normal(1.0);
  const double lambda = x.norm();
  PhaseNoiseLimitParams params;
  params.noise_power = s;
  RngStream rng(13);
  std::vector<double> samples(100000);
  for (double& r : samples) r = diagonal_limit_output(x, params, rng).norm();
  // CDF by integrating the density.
  auto cdf = [&](double r) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double t) { return norm_conditional_pdf(t, lambda, n, s); }, 0.0, r, 10, 1e-11);
  };
  CHECK(ks_statistic(samples, cdf) < 0.02);
}
