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

#include "ssfm/info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ssfm/bounds.hpp"
#include "ssfm/channel.hpp"
#include "ssfm/rng.hpp"
#include "ssfm/spectral.hpp"

namespace ssfm {

namespace {

constexpr std::uint64_t kSymbolStream = 1;
constexpr std::uint64_t kChannelStream = 2;

struct Trial {
  std::vector<std::size_t> symbol;
  SignalVector x;
  SignalVector yhat;
};

Trial run_trial(const ChannelConfig& cfg, const DispersionProfile& profile,
                const Constellation& c, bool bp, std::uint64_t seed, std::uint64_t point,
                std::uint64_t t) {
  Trial tr{std::vector<std::size_t>(cfg.n), SignalVector(cfg.n), SignalVector()};
  RngStream sym = RngStream::derive(seed, {kSymbolStream, point, t});
  std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
  for (std::size_t l = 0; l < cfg.n; ++l) {
    tr.symbol[l] = pick(sym.engine());
    tr.x[l] = c.points[tr.symbol[l]];
  }
  RngStream ch = RngStream::derive(seed, {kChannelStream, point, t});
  SignalVector y = propagate(tr.x, cfg, profile, ch).y;
  tr.yhat = bp ? back_propagate(y, cfg, profile) : std::move(y);
  return tr;
}

}  // namespace

Constellation build_constellation(std::size_t rings, double power) {
  if (rings == 0) throw ConfigError("build_constellation: need at least one ring");
  if (!(power > 0.0)) throw ConfigError("build_constellation: power must be positive");
  Constellation c;
  c.rings = rings;
  c.power = power;
  const double m = static_cast<double>(rings);
  c.spacing = std::sqrt(6.0 * power / ((m + 1.0) * (2.0 * m + 1.0)));
  c.points.reserve(rings * Constellation::kPhases);
  for (std::size_t r = 1; r <= rings; ++r) {
    for (std::size_t j = 0; j < Constellation::kPhases; ++j) {
      const double phase = 2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(Constellation::kPhases);
      c.points.push_back(std::polar(c.radius(r), phase));
    }
  }
  return c;
}

std::size_t auto_ring_count(double snr) {
  if (!(snr > 0.0)) return 1;
  if (std::isinf(snr)) return 16;
  return static_cast<std::size_t>(std::clamp<long>(std::lround(0.8 * std::sqrt(snr)), 1, 16));
}

namespace {

MiEstimate histogram_mi(std::span<const std::size_t> x, std::span<const cplx> y,
                        std::size_t alphabet, const MiOptions& options) {
  if (options.bins < 2) throw ConfigError("estimate_mi: need at least 2 bins per axis");
  for (std::size_t s : x) {
    if (s >= alphabet) throw ConfigError("estimate_mi: symbol index out of range");
  }
  const std::size_t N = x.size();

  double sigma = options.sigma;
  if (!(sigma > 0.0)) {
    std::vector<cplx> mean(alphabet, cplx(0.0));
    std::vector<double> count(alphabet, 0.0);
    for (std::size_t i = 0; i < N; ++i) {
      mean[x[i]] += y[i];
      count[x[i]] += 1.0;
    }
    for (std::size_t s = 0; s < alphabet; ++s) {
      if (count[s] > 0.0) mean[s] /= count[s];
    }
    double ss = 0.0;
    for (std::size_t i = 0; i < N; ++i) ss += std::norm(y[i] - mean[x[i]]);
    sigma = std::sqrt(ss / (2.0 * static_cast<double>(N)));
  }

  double lo_re = std::numeric_limits<double>::infinity();
  double hi_re = -lo_re;
  double lo_im = lo_re;
  double hi_im = -lo_re;
  for (const cplx& v : y) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ConfigError("estimate_mi: non-finite output sample");
    }
    lo_re = std::min(lo_re, v.real());
    hi_re = std::max(hi_re, v.real());
    lo_im = std::min(lo_im, v.imag());
    hi_im = std::max(hi_im, v.imag());
  }
  // A fixed box keeps the cell size independent of N; the sample box
  // stretches with every heavy-tail outlier.
  if (options.extent > 0.0) {
    lo_re = lo_im = -options.extent;
    hi_re = hi_im = options.extent;
  }
  const double pad = options.pad_sigmas * sigma;
  lo_re -= pad;
  hi_re += pad;
  lo_im -= pad;
  hi_im += pad;
  if (!(hi_re > lo_re)) {
    lo_re -= 0.5;
    hi_re += 0.5;
  }
  if (!(hi_im > lo_im)) {
    lo_im -= 0.5;
    hi_im += 0.5;
  }

  const std::size_t B = options.bins;
  auto bin_of = [B](double v, double lo, double hi) {
    const double f = (v - lo) / (hi - lo) * static_cast<double>(B);
    const auto b = static_cast<std::ptrdiff_t>(std::floor(f));
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(b, 0, B - 1));
  };

  std::vector<double> joint(alphabet * B * B, 0.0);
  std::vector<double> marginal(B * B, 0.0);
  std::vector<double> px(alphabet, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t cell = bin_of(y[i].real(), lo_re, hi_re) * B + bin_of(y[i].imag(), lo_im, hi_im);
    joint[x[i] * B * B + cell] += 1.0;
    marginal[cell] += 1.0;
    px[x[i]] += 1.0;
  }

  MiEstimate est;
  const auto occupied = std::count_if(marginal.begin(), marginal.end(), [](double c) { return c > 0.0; });
  if (occupied <= 1) {
    est.degenerate = true;
    est.warning = "all samples fell into a single histogram bin";
  }
  const double Nd = static_cast<double>(N);
  double I = 0.0;
  for (std::size_t s = 0; s < alphabet; ++s) {
    if (px[s] == 0.0) continue;
    const double* row = joint.data() + s * B * B;
    for (std::size_t c = 0; c < B * B; ++c) {
      if (row[c] == 0.0) continue;
      I += row[c] * std::log2(row[c] * Nd / (px[s] * marginal[c]));
    }
  }
  est.bits = std::max(0.0, I / Nd);
  return est;
}

}  // namespace

MiEstimate estimate_mi(std::span<const std::size_t> x, std::span<const cplx> y,
                       std::size_t alphabet, const MiOptions& options) {
  if (x.size() != y.size()) throw ConfigError("estimate_mi: x and y lengths differ");
  if (x.size() < 10000) {
    throw ConfigError("estimate_mi: need at least 10000 pairs, got " + std::to_string(x.size()));
  }
  return histogram_mi(x, y, alphabet, options);
}

AirCurve air_sweep(const ChannelConfig& cfg, std::span<const double> powers,
                   const AirOptions& options) {
  cfg.validate();
  if (options.samples_per_point < 10000) {
    throw ConfigError("air_sweep: samples_per_point must be >= 10000");
  }
  const DispersionProfile profile = dispersion_multipliers(cfg);
  const double zeta = profile.average_total_loss();
  const std::size_t vectors = (options.samples_per_point + cfg.n - 1) / cfg.n;
  const std::size_t max_vectors =
      std::max(vectors, (options.max_samples_per_point + cfg.n - 1) / cfg.n);

  std::vector<std::size_t> order(powers.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return powers[a] < powers[b]; });

  AirCurve curve;
  for (std::size_t idx : order) {
    AirPoint pt;
    pt.power = powers[idx];
    pt.power_dbm = watt_to_dbm(pt.power);
    ChannelConfig c = cfg;
    c.power = pt.power;
    const double snr = c.snr();
    pt.snr_db = linear_to_db(snr);
    try {
      pt.upper_bits = upper_bound(snr);
      pt.lower_bits = lower_bound_asymptotic(snr, zeta);
      pt.rings = options.rings > 0 ? options.rings : auto_ring_count(snr);
      const Constellation con = build_constellation(pt.rings, pt.power);
      MiOptions mo = options.mi;
      if (!(mo.sigma > 0.0) && cfg.noise_power() > 0.0) mo.sigma = std::sqrt(cfg.noise_power() / 2.0);
      if (!(mo.extent > 0.0)) mo.extent = con.radius(con.rings);
      std::vector<Trial> trials;
      auto grow = [&](std::size_t count) {
        const std::size_t done = trials.size();
        trials.resize(count);
        parallel::for_each(options.exec, count - done, [&](std::size_t i) {
          const std::size_t t = done + i;
          trials[t] = run_trial(c, profile, con, options.back_propagation, options.seed, idx, t);
        });
      };
      auto mi_of = [&](std::size_t count) {
        std::vector<std::size_t> xs;
        std::vector<cplx> ys;
        xs.reserve(count * cfg.n);
        ys.reserve(count * cfg.n);
        for (std::size_t t = 0; t < count; ++t) {
          xs.insert(xs.end(), trials[t].symbol.begin(), trials[t].symbol.end());
          ys.insert(ys.end(), trials[t].yhat.begin(), trials[t].yhat.end());
        }
        return histogram_mi(xs, ys, con.size(), mo);
      };
      std::size_t count = vectors;
      grow(count);
      MiEstimate mi = mi_of(count);
      double half = mi_of(std::max<std::size_t>(1, count / 2)).bits;
      while (!(std::abs(mi.bits - half) < options.stability_tol) && 2 * count <= max_vectors) {
        count *= 2;
        grow(count);
        half = mi.bits;
        mi = mi_of(count);
      }
      pt.samples = count * cfg.n;
      pt.stable = std::abs(mi.bits - half) < options.stability_tol;
      pt.mi_bits = mi.bits;
      pt.mi_warning = mi.degenerate;
      if (mi.degenerate) pt.error = mi.warning;
    } catch (const std::exception& e) {
      pt.mi_bits = std::numeric_limits<double>::quiet_NaN();
      pt.error = e.what();
    }
    curve.records.push_back(std::move(pt));
  }
  return curve;
}

std::vector<ScatterSet> scatter_capture(const ChannelConfig& cfg, std::span<const double> snr_db,
                                        std::size_t symbols, std::size_t rings,
                                        std::uint64_t seed, Execution exec) {
  cfg.validate();
  const DispersionProfile profile = dispersion_multipliers(cfg);
  const std::size_t vectors = (symbols + cfg.n - 1) / cfg.n;
  std::vector<ScatterSet> out;
  for (std::size_t p = 0; p < snr_db.size(); ++p) {
    ScatterSet set;
    set.snr_db = snr_db[p];
    ChannelConfig c = cfg;
    c.power = cfg.noise_power() > 0.0 ? db_to_linear(snr_db[p]) * cfg.noise_power() : cfg.power;
    set.power = c.power;
    const Constellation con = build_constellation(rings, c.power);
    std::vector<Trial> trials(vectors);
    parallel::for_each(exec, vectors, [&](std::size_t t) {
      trials[t] = run_trial(c, profile, con, true, seed, p, t);
    });
    const double scale = 1.0 / std::sqrt(c.power);
    for (const Trial& tr : trials) {
      for (std::size_t l = 0; l < cfg.n && set.x.size() < symbols; ++l) {
        set.symbol.push_back(tr.symbol[l]);
        set.x.push_back(tr.x[l] * scale);
        set.yhat.push_back(tr.yhat[l] * scale);
      }
    }
    out.push_back(std::move(set));
  }
  return out;
}

double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
double watt_to_dbm(double watt) { return 10.0 * std::log10(watt / 1e-3); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

double circular_std(std::span<const double> angles) {
  if (angles.empty()) return 0.0;
  double c = 0.0;
  double s = 0.0;
  for (double a : angles) {
    c += std::cos(a);
    s += std::sin(a);
  }
  const double n = static_cast<double>(angles.size());
  const double R = std::hypot(c, s) / n;
  if (R <= 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(-2.0 * std::log(std::min(1.0, R)));
}

}  // namespace ssfm
