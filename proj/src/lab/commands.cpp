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


#include <Eigen/Core>
#include <boost/version.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include "ssfm/bounds.hpp"
#include "ssfm/info.hpp"
#include "ssfm/lab/lab.hpp"
#include "ssfm/matrix_lab.hpp"
#include "ssfm/parallel.hpp"
#include "ssfm/rng.hpp"
#include "ssfm/spectral.hpp"

namespace ssfm::lab {

namespace {

using nlohmann::json;

constexpr std::uint64_t kHaarOracleStream = 4;

template <typename T>
T get(const json& cfg, const char* key, T fallback) {
  if (!cfg.contains(key)) return fallback;
  return cfg.at(key).get<T>();
}

std::vector<double> grid(const json& cfg, const char* key) {
  const json& v = cfg.at(key);
  if (v.is_number()) return {v.get<double>()};
  return v.get<std::vector<double>>();
}

std::vector<std::size_t> k_grid(const ExperimentSpec& spec) {
  if (!spec.config.contains("K_values")) return {spec.channel.K};
  return spec.config.at("K_values").get<std::vector<std::size_t>>();
}

void require(const json& cfg, const char* key, const std::string& command) {
  if (!cfg.contains(key)) throw ConfigError(command + ": missing required key '" + key + "'");
}

Result air(const ExperimentSpec& spec) {
  const json& cfg = spec.config;
  const ChannelConfig& c = spec.channel;
  std::vector<double> powers;
  if (cfg.contains("powers_dbm")) {
    if (spec.units == Units::normalized) {
      throw ConfigError("air-sweep: 'powers_dbm' needs physical units; use 'snr_db'");
    }
    for (double p : grid(cfg, "powers_dbm")) powers.push_back(dbm_to_watt(p));
  } else if (cfg.contains("snr_db")) {
    if (!(c.noise_power() > 0.0)) throw ConfigError("air-sweep: 'snr_db' needs sigma2 > 0");
    for (double s : grid(cfg, "snr_db")) powers.push_back(db_to_linear(s) * c.noise_power());
  } else {
    throw ConfigError("air-sweep: give 'powers_dbm' or 'snr_db'");
  }

  AirOptions o;
  o.rings = get<std::size_t>(cfg, "rings", 0);
  o.samples_per_point = get<std::size_t>(cfg, "samples_per_point", o.samples_per_point);
  o.max_samples_per_point = get<std::size_t>(cfg, "max_samples_per_point", 0);
  o.back_propagation = get<bool>(cfg, "back_propagation", true);
  o.mi.bins = get<std::size_t>(cfg, "bins", o.mi.bins);
  o.seed = spec.seed;
  const AirCurve curve = air_sweep(c, powers, o);

  Result r;
  r.table.schema = "air-sweep";
  r.table.columns = {"power_dbm", "snr_db", "mi_bits", "upper_bits", "lower_bits", "rings", "samples", "stable", "error"};
  Series mi{"AIR", {}, {}};
  Series up{"upper", {}, {}};
  Series lo{"lower", {}, {}};
  for (const AirPoint& p : curve.records) {
    r.table.add({p.power_dbm, p.snr_db, p.mi_bits, p.upper_bits, p.lower_bits,
                 static_cast<std::int64_t>(p.rings), static_cast<std::int64_t>(p.samples),
                 static_cast<std::int64_t>(p.stable), p.error});
    mi.x.push_back(p.snr_db);
    mi.y.push_back(p.mi_bits);
    up.x.push_back(p.snr_db);
    up.y.push_back(p.upper_bits);
    lo.x.push_back(p.snr_db);
    lo.y.push_back(p.lower_bits);
  }
  r.summary["lower_bound"] = "asymptotic, o(1) term dropped";
  r.plot = {"AIR with back-propagation", "SNR [dB]", "bits per 2D", {mi, up, lo}};
  return r;
}

Result scatter(const ExperimentSpec& spec) {
  require(spec.config, "snr_db", spec.command);
  const std::vector<double> snr = grid(spec.config, "snr_db");
  const auto sets = scatter_capture(spec.channel, snr, get<std::size_t>(spec.config, "symbols", 2000),
                                    get<std::size_t>(spec.config, "rings", 16), spec.seed);
  Result r;
  r.table.schema = "scatter";
  r.table.columns = {"snr_db", "symbol", "x_re", "x_im", "y_re", "y_im"};
  for (const ScatterSet& s : sets) {
    Series pts{"RX " + format_number(s.snr_db) + " dB", {}, {}, true};
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      r.table.add({s.snr_db, static_cast<std::int64_t>(s.symbol[i]), s.x[i].real(), s.x[i].imag(),
                   s.yhat[i].real(), s.yhat[i].imag()});
      pts.x.push_back(s.yhat[i].real());
      pts.y.push_back(s.yhat[i].imag());
    }
    r.plot.series.push_back(std::move(pts));
  }
  r.plot.title = "Back-propagated symbols";
  r.plot.x_label = "Re";
  r.plot.y_label = "Im";
  return r;
}

Result mk_pdf(const ExperimentSpec& spec) {
  const std::size_t trials = get<std::size_t>(spec.config, "trials", 10000);
  const std::size_t bins = get<std::size_t>(spec.config, "bins", 50);
  const ChannelConfig& base = spec.channel;
  const auto haar_cdf = [n = base.n](double w) { return haar_entry_marginal_cdf(w, n); };

  Result r;
  r.table.schema = "mk-pdf";
  r.table.columns = {"K", "bin_lo", "bin_hi", "density", "haar_pdf"};
  r.plot = {"|M_K| first entry", "|m_11|", "density", {}};
  Series haar{"Haar", {}, {}};
  for (std::size_t b = 0; b <= 200; ++b) {
    haar.x.push_back(b / 200.0);
    haar.y.push_back(haar_entry_marginal_pdf(b / 200.0, base.n));
  }
  r.summary["ks_haar"] = json::object();
  for (std::size_t K : k_grid(spec)) {
    ChannelConfig c = base;
    c.K = K;
    const DispersionProfile p = dispersion_multipliers(c);
    std::vector<double> w = first_entry_magnitudes(p, trials, spec.seed);
    const double ks = ks_statistic(w, haar_cdf);
    const auto hist = EmpiricalDistribution::uniform_bins(std::move(w), 0.0, 1.0, bins);
    Series s{"K=" + std::to_string(K), {}, {}};
    for (std::size_t b = 0; b < hist.bins(); ++b) {
      r.table.add({static_cast<std::int64_t>(K), hist.edges()[b], hist.edges()[b + 1], hist.density(b),
                   haar_entry_marginal_pdf(hist.center(b), c.n)});
      s.x.push_back(hist.center(b));
      s.y.push_back(hist.density(b));
    }
    r.summary["ks_haar"][std::to_string(K)] = ks;
    r.plot.series.push_back(std::move(s));
  }
  r.plot.series.push_back(std::move(haar));
  return r;
}

Result offdiag(const ExperimentSpec& spec) {
  require(spec.config, "K_values", spec.command);
  DecayFitOptions o;
  o.bootstrap = get<std::size_t>(spec.config, "bootstrap", o.bootstrap);
  o.seed = spec.seed;
  const std::vector<std::size_t> Ks = k_grid(spec);
  const DecayFit fit = offdiag_decay_fit(spec.channel, Ks,
                                         get<std::size_t>(spec.config, "trials", 200), o);
  Result r;
  r.table.schema = "offdiag-decay";
  r.table.columns = {"K", "median_max_offdiag", "fit"};
  Series med{"median", {}, {}, true};
  Series line{"fit", {}, {}};
  for (std::size_t k = 0; k < fit.K.size(); ++k) {
    const double lk = std::log(static_cast<double>(fit.K[k]));
    const double f = std::exp(fit.intercept + fit.slope * lk);
    r.table.add({static_cast<std::int64_t>(fit.K[k]), fit.median[k], f});
    med.x.push_back(std::log10(static_cast<double>(fit.K[k])));
    med.y.push_back(std::log10(fit.median[k]));
    line.x.push_back(med.x.back());
    line.y.push_back(std::log10(f));
  }
  r.summary["slope"] = fit.slope;
  r.summary["slope_stderr"] = fit.slope_stderr;
  r.summary["intercept"] = fit.intercept;
  r.summary["degenerate"] = fit.degenerate;
  r.plot = {"Off-diagonal decay", "log10 K", "log10 median max |M_ij|", {med, line}};
  return r;
}

Result haar_ks(const ExperimentSpec& spec) {
  const std::size_t trials = get<std::size_t>(spec.config, "trials", 10000);
  const ChannelConfig& c = spec.channel;
  const auto cdf = [n = c.n](double w) { return haar_entry_marginal_cdf(w, n); };
  const DispersionProfile p = dispersion_multipliers(c);
  const std::vector<double> model = first_entry_magnitudes(p, trials, spec.seed);

  std::vector<double> oracle(trials);
  parallel::for_each(Execution::parallel, trials, [&](std::size_t t) {
    RngStream rng = RngStream::derive(spec.seed, {kHaarOracleStream, t});
    oracle[t] = std::abs(haar_unitary(c.n, rng)(0, 0));
  });

  Result r;
  r.table.schema = "haar-ks";
  r.table.columns = {"source", "n", "K", "trials", "ks", "critical_1pct"};
  const double crit = 1.63 / std::sqrt(static_cast<double>(trials));
  const double ks_model = ks_statistic(model, cdf);
  const double ks_oracle = ks_statistic(oracle, cdf);
  r.table.add({std::string(c.mode == DispersionMode::fixed ? "ssfm_fixed_d" : "ssfm_finite_d"),
               static_cast<std::int64_t>(c.n), static_cast<std::int64_t>(c.K),
               static_cast<std::int64_t>(trials), ks_model, crit});
  r.table.add({std::string("qr_haar"), static_cast<std::int64_t>(c.n), std::int64_t{0},
               static_cast<std::int64_t>(trials), ks_oracle, crit});
  r.summary["ks_model"] = ks_model;
  r.summary["ks_qr_haar"] = ks_oracle;
  return r;
}

Result upsilon(const ExperimentSpec& spec) {
  require(spec.config, "deltas", spec.command);
  UpsilonOptions o;
  o.seed = spec.seed;
  o.power_reference = get<double>(spec.config, "power_reference", 1.0);
  const std::string norm = get<std::string>(spec.config, "normalization", "launch");
  if (norm == "launch") {
    o.normalization = PowerNormalization::launch;
  } else if (norm == "path_average") {
    o.normalization = PowerNormalization::path_average;
  } else {
    throw ConfigError("upsilon: 'normalization' must be \"launch\" or \"path_average\"");
  }
  const std::string variant = get<std::string>(spec.config, "variant", "single");
  if (variant == "single") {
    o.variant = UpsilonVariant::single;
  } else if (variant == "difference") {
    o.variant = UpsilonVariant::difference;
  } else {
    throw ConfigError("upsilon: 'variant' must be \"single\" or \"difference\"");
  }
  const std::size_t trials = get<std::size_t>(spec.config, "trials", 200);

  Result r;
  r.table.schema = "upsilon";
  r.table.columns = {"delta", "K", "median", "q25", "q75", "theory_general", "theory_low_noise"};
  std::map<std::size_t, Series> by_k;
  Series general{"general bound", {}, {}};
  Series low{"low-noise bound", {}, {}};
  const std::vector<double> deltas = grid(spec.config, "deltas");
  for (double d : deltas) {
    general.x.push_back(d);
    general.y.push_back(upsilon_theory(d, UpsilonRegime::general));
    low.x.push_back(d);
    low.y.push_back(upsilon_theory(d, UpsilonRegime::low_noise_iid));
  }
  for (std::size_t K : k_grid(spec)) {
    ChannelConfig c = spec.channel;
    c.K = K;
    for (double d : deltas) {
      const UpsilonEstimate e = convergence_rate_upsilon(c, d, trials, o);
      r.table.add({d, static_cast<std::int64_t>(K), e.median, e.q25, e.q75,
                   upsilon_theory(d, UpsilonRegime::general),
                   upsilon_theory(d, UpsilonRegime::low_noise_iid)});
      Series& s = by_k[K];
      s.name = "K=" + std::to_string(K);
      s.x.push_back(d);
      s.y.push_back(e.median);
    }
  }
  r.plot = {"Convergence exponent", "delta", "upsilon", {}};
  for (auto& [K, s] : by_k) r.plot.series.push_back(std::move(s));
  r.plot.series.push_back(std::move(general));
  r.plot.series.push_back(std::move(low));
  return r;
}

Result bounds_table(const ExperimentSpec& spec) {
  const json& cfg = spec.config;
  std::vector<double> snr_db;
  if (cfg.contains("snr_db")) {
    snr_db = grid(cfg, "snr_db");
  } else {
    const double lo = get<double>(cfg, "snr_db_min", 0.0);
    const double hi = get<double>(cfg, "snr_db_max", 80.0);
    const double step = get<double>(cfg, "snr_db_step", 1.0);
    if (!(step > 0.0) || hi < lo) throw ConfigError("bounds-table: invalid snr_db range");
    for (std::size_t i = 0; lo + step * static_cast<double>(i) <= hi + 1e-9; ++i) {
      snr_db.push_back(lo + step * static_cast<double>(i));
    }
  }
  double zeta = 0.0;
  if (cfg.contains("zeta")) {
    zeta = cfg.at("zeta").get<double>();
  } else if (!spec.channel.alpha.empty()) {
    spec.channel.validate();
    zeta = dispersion_multipliers(spec.channel).average_total_loss();
  }
  const double delta = get<double>(cfg, "delta", 1.0);

  Result r;
  r.table.schema = "bounds-table";
  r.table.columns = {"snr_db", "snr", "upper_bits", "lower_bits", "phase_noise_bits", "a", "prelog"};
  Series up{"upper", {}, {}};
  Series lo{"lower", {}, {}};
  Series pn{"phase noise", {}, {}};
  for (double s : snr_db) {
    const BoundSet b = BoundSet::evaluate(db_to_linear(s), zeta, delta);
    r.table.add({s, b.snr, b.upper, b.lower_asymptotic, b.phase_noise_ref, b.a, b.prelog});
    up.x.push_back(s);
    up.y.push_back(b.upper);
    lo.x.push_back(s);
    lo.y.push_back(b.lower_asymptotic);
    pn.x.push_back(s);
    pn.y.push_back(b.phase_noise_ref);
  }
  r.summary["zeta"] = zeta;
  r.summary["lower_bound"] = "asymptotic, o(1) term dropped";
  r.plot = {"Capacity bounds", "SNR [dB]", "bits per 2D", {up, lo, pn}};
  return r;
}

}  // namespace

Result compute(const ExperimentSpec& spec) {
  static const std::map<std::string, std::function<Result(const ExperimentSpec&)>> table = {
      {"air-sweep", air},         {"scatter", scatter}, {"mk-pdf", mk_pdf},
      {"offdiag-decay", offdiag}, {"haar-ks", haar_ks}, {"upsilon", upsilon},
      {"bounds-table", bounds_table}};
  const auto it = table.find(spec.command);
  if (it == table.end()) throw ConfigError("unknown command '" + spec.command + "'");
  try {
    return it->second(spec);
  } catch (const json::exception& e) {
    throw ConfigError(spec.command + ": bad config value: " + e.what());
  }
}

RunReport run(const ExperimentSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report;
  report.result = compute(spec);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::error_code ec;
  std::filesystem::create_directories(spec.out_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + spec.out_dir.string() + ": " + ec.message());
  auto open = [&](const std::string& suffix) {
    const std::filesystem::path path = spec.out_dir / (spec.command + suffix);
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    report.files.push_back(path);
    return f;
  };

  {
    std::ofstream f = open(".csv");
    write_csv(f, report.result.table);
    if (!f) throw std::runtime_error("write failed: " + report.files.back().string());
  }
  if (spec.plot) {
    std::ofstream f = open(".svg");
    write_svg(f, report.result.plot);
  }

  json meta;
  meta["command"] = spec.command;
  meta["schema"] = report.result.table.schema + "/" + std::to_string(report.result.table.version);
  meta["units"] = spec.units == Units::physical ? "physical" : "normalized";
  meta["seed"] = spec.seed;
  meta["config"] = spec.config;
  meta["versions"] = {{"ssfmlab", kVersion},
                      {"fftw", fft_backend_version()},
                      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                    std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                    std::to_string(EIGEN_MINOR_VERSION)},
                      {"boost", std::to_string(BOOST_VERSION / 100000) + "." +
                                    std::to_string(BOOST_VERSION / 100 % 1000)}};
  meta["threads"] = parallel::threads();
  meta["timing"] = {{"seconds", report.seconds}};
  meta["summary"] = report.result.summary;
  std::ofstream f = open(".meta.json");
  f << meta.dump(2) << '\n';
  if (!f) throw std::runtime_error("write failed: " + report.files.back().string());
  return report;
}

}  // namespace ssfm::lab
