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

#include "ssfm/matrix_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ssfm/fading.hpp"
#include "ssfm/rng.hpp"

namespace ssfm {

namespace {

constexpr std::uint64_t kInputStream = 1;
constexpr std::uint64_t kChannelStream = 2;
constexpr std::uint64_t kBootstrapStream = 3;

double median_of(std::vector<double> v) { return quantile(std::move(v), 0.5); }

struct LineFit {
  double slope;
  double intercept;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace

double haar_entry_marginal_pdf(double w, std::size_t n) {
  if (n < 2) throw std::domain_error("haar_entry_marginal_pdf: n must be >= 2");
  if (!(w >= 0.0 && w <= 1.0)) throw std::domain_error("haar_entry_marginal_pdf: w outside [0, 1]");
  const double nd = static_cast<double>(n);
  return 2.0 * (nd - 1.0) * w * std::pow(1.0 - w * w, nd - 2.0);
}

double haar_entry_marginal_cdf(double w, std::size_t n) {
  if (n < 2) throw std::domain_error("haar_entry_marginal_cdf: n must be >= 2");
  if (w <= 0.0) return 0.0;
  if (w >= 1.0) return 1.0;
  return -std::expm1(static_cast<double>(n - 1) * std::log1p(-w * w));
}

double haar_conditional_pdf(double w, std::span<const double> previous, std::size_t n) {
  const std::size_t l = previous.size() + 1;
  if (l >= n) throw std::domain_error("haar_conditional_pdf: needs previous.size() + 2 <= n");
  double rest = 1.0;
  for (double p : previous) rest -= p * p;
  if (!(rest > 0.0)) return 0.0;
  const double scale = 1.0 / std::sqrt(rest);
  const double u = scale * w;
  if (!(u >= 0.0 && u <= 1.0)) return 0.0;
  return scale * haar_entry_marginal_pdf(u, n - l + 1);
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.size() < 100) {
    throw ConfigError("ks_statistic: need at least 100 samples, got " +
                      std::to_string(samples.size()));
  }
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double N = static_cast<double>(s.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    const double f = cdf(s[i]);
    d = std::max(d, std::abs(static_cast<double>(j) / N - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / N));
    i = j;
  }
  return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ConfigError("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples,
                                             std::vector<double> edges)
    : samples_(std::move(samples)), edges_(std::move(edges)) {
  if (edges_.size() < 2) throw ConfigError("EmpiricalDistribution: need at least one bin");
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (!(edges_[i] > edges_[i - 1])) {
      throw ConfigError("EmpiricalDistribution: edges must be strictly increasing");
    }
  }
  counts_.assign(edges_.size() - 1, 0);
  for (double s : samples_) {
    auto it = std::upper_bound(edges_.begin(), edges_.end(), s);
    std::ptrdiff_t bin = (it - edges_.begin()) - 1;
    bin = std::clamp<std::ptrdiff_t>(bin, 0, static_cast<std::ptrdiff_t>(counts_.size()) - 1);
    ++counts_[static_cast<std::size_t>(bin)];
  }
}

EmpiricalDistribution EmpiricalDistribution::uniform_bins(std::vector<double> samples, double lo,
                                                          double hi, std::size_t bins) {
  if (bins == 0 || !(hi > lo)) throw ConfigError("EmpiricalDistribution: invalid range");
  std::vector<double> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  }
  return EmpiricalDistribution(std::move(samples), std::move(edges));
}

double EmpiricalDistribution::density(std::size_t bin) const {
  const double width = edges_[bin + 1] - edges_[bin];
  return static_cast<double>(counts_[bin]) / (static_cast<double>(samples_.size()) * width);
}

double EmpiricalDistribution::fraction_above(double x) const {
  if (samples_.empty()) return 0.0;
  const auto c = std::count_if(samples_.begin(), samples_.end(), [x](double s) { return s > x; });
  return static_cast<double>(c) / static_cast<double>(samples_.size());
}

Eigen::MatrixXcd haar_unitary(std::size_t n, RngStream& rng) {
  if (n == 0) throw ConfigError("haar_unitary: n must be positive");
  Eigen::MatrixXcd g(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) g(i, j) = rng.complex_normal(1.0);
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  for (std::size_t j = 0; j < n; ++j) {
    const cplx d = qr.matrixQR()(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

std::vector<double> first_entry_magnitudes(const DispersionProfile& profile, std::size_t trials,
                                           std::uint64_t seed, Execution exec) {
  std::vector<double> w(trials);
  parallel::for_each(exec, trials, [&](std::size_t t) {
    RngStream rng = RngStream::derive(seed, {kChannelStream, t});
    std::vector<cplx> v(profile.n, cplx(0.0));
    v[0] = 1.0;
    apply_MK(v, profile, rng);
    w[t] = std::abs(v[0]);
  });
  return w;
}

std::vector<double> generic_fixed_dispersion(std::size_t n, std::uint64_t seed) {
  RngStream rng(derive_seed(seed, {0x5eed}));
  std::vector<double> b(n);
  for (double& v : b) v = std::numbers::pi / 3.0 * (1.0 - rng.uniform());
  return b;
}

DecayFit offdiag_decay_fit(const ChannelConfig& cfg, std::span<const std::size_t> K_values,
                           std::size_t trials, const DecayFitOptions& options) {
  if (K_values.size() < 3) {
    throw ConfigError("offdiag_decay_fit: need at least 3 values of K, got " +
                      std::to_string(K_values.size()));
  }
  if (cfg.mode != DispersionMode::finite) {
    throw ConfigError("offdiag_decay_fit: requires finite-dispersion mode");
  }
  if (cfg.n > 32) throw ConfigError("offdiag_decay_fit: n must be <= 32");
  if (trials == 0) throw ConfigError("offdiag_decay_fit: trials must be positive");

  DecayFit fit;
  fit.K.assign(K_values.begin(), K_values.end());
  std::vector<std::vector<double>> samples(K_values.size(), std::vector<double>(trials));
  for (std::size_t k = 0; k < K_values.size(); ++k) {
    ChannelConfig c = cfg;
    c.K = K_values[k];
    const DispersionProfile profile = dispersion_multipliers(c);
    parallel::for_each(options.exec, trials, [&](std::size_t t) {
      RngStream rng = RngStream::derive(options.seed, {kChannelStream, c.K, t});
      samples[k][t] = sample_MK(c, profile, rng).max_offdiagonal();
    });
    fit.median.push_back(median_of(samples[k]));
  }

  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t k = 0; k < K_values.size(); ++k) {
    if (!(fit.median[k] > 0.0)) fit.degenerate = true;
    lx.push_back(std::log(static_cast<double>(K_values[k])));
    ly.push_back(std::log(fit.median[k]));
  }
  if (fit.degenerate) {
    fit.slope = fit.intercept = fit.slope_stderr = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }
  const LineFit line = least_squares(lx, ly);
  fit.slope = line.slope;
  fit.intercept = line.intercept;

  std::vector<double> slopes(options.bootstrap);
  parallel::for_each(options.exec, options.bootstrap, [&](std::size_t b) {
    RngStream rng = RngStream::derive(options.seed, {kBootstrapStream, b});
    std::uniform_int_distribution<std::size_t> pick(0, trials - 1);
    std::vector<double> by(K_values.size());
    std::vector<double> resample(trials);
    for (std::size_t k = 0; k < K_values.size(); ++k) {
      for (double& r : resample) r = samples[k][pick(rng.engine())];
      by[k] = std::log(median_of(resample));
    }
    slopes[b] = least_squares(lx, by).slope;
  });
  if (slopes.size() > 1) {
    const double m = std::accumulate(slopes.begin(), slopes.end(), 0.0) / slopes.size();
    double ss = 0.0;
    for (double s : slopes) ss += (s - m) * (s - m);
    fit.slope_stderr = std::sqrt(ss / static_cast<double>(slopes.size() - 1));
  }
  return fit;
}

double upsilon_from_trace(const SegmentTrace& trace, UpsilonVariant variant) {
  if (variant == UpsilonVariant::difference && trace.n < 2) {
    throw ConfigError("upsilon_from_trace: difference variant needs n >= 2");
  }
  const double two_pi = 2.0 * std::numbers::pi;
  double S = 0.0;
  cplx acc(0.0, 0.0);
  for (std::size_t i = trace.K; i >= 1; --i) {
    double phi = trace.phase(i, 0);
    if (variant == UpsilonVariant::difference) phi -= trace.phase(i, 1);
    S = std::fmod(S + phi, two_pi);
    acc += std::polar(1.0, S);
  }
  const double K = static_cast<double>(trace.K);
  const double A = std::abs(acc) / K;
  return A >= 1.0 ? 0.0 : -std::log(A) / std::log(K);
}

UpsilonEstimate convergence_rate_upsilon(const ChannelConfig& cfg, double delta,
                                         std::size_t trials, const UpsilonOptions& options) {
  if (cfg.K < 100) {
    throw ConfigError("convergence_rate_upsilon: K must be >= 100, got " + std::to_string(cfg.K));
  }
  if (trials == 0) throw ConfigError("convergence_rate_upsilon: trials must be positive");
  const DispersionProfile profile = dispersion_multipliers(cfg);
  double P = options.power_reference * std::pow(static_cast<double>(cfg.K), delta);
  if (options.normalization == PowerNormalization::path_average) {
    P /= noise_inflation(profile.average_total_loss());
  }
  const double amp = std::sqrt(P / 1.5);

  UpsilonEstimate est;
  est.delta = delta;
  est.K = cfg.K;
  est.values.resize(trials);
  parallel::for_each(options.exec, trials, [&](std::size_t t) {
    RngStream input = RngStream::derive(options.seed, {kInputStream, t});
    SignalVector x(cfg.n);
    for (cplx& z : x) z = amp * (input.uniform() + 0.7);
    RngStream channel = RngStream::derive(options.seed, {kChannelStream, t});
    const Propagation run = propagate(x, cfg, profile, channel, TraceLevel::phases);
    est.values[t] = upsilon_from_trace(*run.trace, options.variant);
  });
  est.median = quantile(est.values, 0.5);
  est.q25 = quantile(est.values, 0.25);
  est.q75 = quantile(est.values, 0.75);
  return est;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw ConfigError("quantile: empty input");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace ssfm
