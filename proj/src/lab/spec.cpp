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


#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "ssfm/info.hpp"
#include "ssfm/lab/lab.hpp"
#include "ssfm/matrix_lab.hpp"
#include "ssfm/types.hpp"

namespace ssfm::lab {

namespace {

using nlohmann::json;

// Keys read by make_spec or by any command; anything else is a typo.
const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "units", "seed", "out", "plot",
      // channel
      "n", "K", "L", "dt", "gamma", "sigma2", "M", "beta2", "max_dispersion", "mode",
      "total_dispersion", "segment_dispersion", "alpha", "power",
      // experiments
      "powers_dbm", "snr_db", "rings", "samples_per_point", "max_samples_per_point", "back_propagation", "bins",
      "symbols", "trials", "K_values", "bootstrap", "deltas", "normalization", "variant",
      "power_reference", "zeta", "delta", "snr_db_min", "snr_db_max", "snr_db_step"};
  return keys;
}

double number(const json& cfg, const char* key) {
  const json& v = cfg.at(key);
  if (!v.is_number()) throw ConfigError(std::string("config: '") + key + "' must be a number");
  return v.get<double>();
}

std::size_t count(const json& cfg, const char* key) {
  const json& v = cfg.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(std::string("config: '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<double> numbers(const json& cfg, const char* key) {
  const json& v = cfg.at(key);
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConfigError(std::string("config: '") + key + "' must be a list of numbers");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) throw ConfigError(std::string("config: '") + key + "' must be a list of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

ChannelConfig channel_from(const json& cfg, Units units) {
  const bool phys = units == Units::physical;
  ChannelConfig c;
  if (cfg.contains("n")) c.n = count(cfg, "n");
  if (cfg.contains("K")) c.K = count(cfg, "K");
  if (cfg.contains("M")) c.M = count(cfg, "M");
  if (cfg.contains("L")) c.L = number(cfg, "L") * (phys ? 1e3 : 1.0);
  if (cfg.contains("dt")) c.dt = number(cfg, "dt") * (phys ? 1e-12 : 1.0);
  if (cfg.contains("gamma")) c.gamma = number(cfg, "gamma") * (phys ? 1e-3 : 1.0);
  if (cfg.contains("sigma2")) c.sigma2 = number(cfg, "sigma2");
  if (cfg.contains("beta2") && cfg.contains("max_dispersion")) {
    throw ConfigError("config: give either 'beta2' or 'max_dispersion', not both");
  }
  if (cfg.contains("beta2")) c.beta2 = number(cfg, "beta2") * (phys ? 1e-27 : 1.0);
  if (cfg.contains("max_dispersion")) {
    // |d| at the Nyquist bin is L |beta2| pi^2 / (2 dt^2).
    c.beta2 = -2.0 * number(cfg, "max_dispersion") * c.dt * c.dt /
              (c.L * std::numbers::pi * std::numbers::pi);
  }
  if (cfg.contains("mode")) {
    const std::string m = cfg.at("mode").get<std::string>();
    if (m == "finite") {
      c.mode = DispersionMode::finite;
    } else if (m == "fixed") {
      c.mode = DispersionMode::fixed;
    } else {
      throw ConfigError("config: 'mode' must be \"finite\" or \"fixed\", got \"" + m + "\"");
    }
  }
  if (cfg.contains("total_dispersion")) c.total_dispersion = numbers(cfg, "total_dispersion");
  if (cfg.contains("segment_dispersion")) c.segment_dispersion = numbers(cfg, "segment_dispersion");
  if (cfg.contains("alpha")) {
    c.alpha = numbers(cfg, "alpha");
    // dB/km of power to 1/m.
    if (phys) for (double& a : c.alpha) a *= std::log(10.0) / 10.0 * 1e-3;
  }
  if (cfg.contains("power")) c.power = phys ? dbm_to_watt(number(cfg, "power")) : number(cfg, "power");
  return c;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"air-sweep", "scatter", "mk-pdf", "offdiag-decay",
                                                 "haar-ks", "upsilon", "bounds-table"};
  return names;
}

void apply_override(json& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override must look like key=value, got '" + std::string(assignment) + "'");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string value(assignment.substr(eq + 1));
  json parsed = json::parse(value, nullptr, false);
  if (parsed.is_discarded()) parsed = value;
  config[key] = std::move(parsed);
}

namespace {

ExperimentSpec make_spec_checked(const std::string& command, const json& config) {
  if (std::find(commands().begin(), commands().end(), command) == commands().end()) {
    throw ConfigError("unknown command '" + command + "'");
  }
  if (!config.is_object()) throw ConfigError("config: top level must be a JSON object");
  for (const auto& [key, value] : config.items()) {
    if (!known_keys().contains(key)) throw ConfigError("config: unknown key '" + key + "'");
  }

  ExperimentSpec spec;
  spec.command = command;
  spec.config = config;
  const std::string units = config.value("units", std::string("physical"));
  if (units == "physical") {
    spec.units = Units::physical;
  } else if (units == "normalized") {
    spec.units = Units::normalized;
  } else {
    throw ConfigError("config: 'units' must be \"physical\" or \"normalized\", got \"" + units + "\"");
  }
  if (config.contains("seed")) spec.seed = config.at("seed").get<std::uint64_t>();
  if (config.contains("out")) spec.out_dir = config.at("out").get<std::string>();
  spec.plot = config.value("plot", false);
  spec.channel = channel_from(config, spec.units);
  spec.channel.seed = spec.seed;
  // Fixed-D experiments default to a generic, non-block-diagonal spectrum.
  if (spec.channel.mode == DispersionMode::fixed && spec.channel.segment_dispersion.empty()) {
    spec.channel.segment_dispersion = generic_fixed_dispersion(spec.channel.n, spec.seed);
  }
  if (command != "bounds-table") spec.channel.validate();
  return spec;
}

}  // namespace

ExperimentSpec make_spec(const std::string& command, const json& config) {
  try {
    return make_spec_checked(command, config);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

}  // namespace ssfm::lab
