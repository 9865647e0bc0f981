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


#ifndef SSFM_LAB_LAB_HPP
#define SSFM_LAB_LAB_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssfm/config.hpp"

namespace ssfm::lab {

inline constexpr const char* kVersion = "0.3.0";

/// How config values are read. `physical` converts the boundary units below
/// to SI once; `normalized` takes every number as-is.
///
///   L          km
///   dt         ps
///   gamma      1/(W km)
///   beta2      ps^2/km
///   alpha      dB/km (power)
///   sigma2     W/m
///   power      dBm
///   powers_dbm dBm
enum class Units { physical, normalized };

/// A fully resolved experiment. `config` is the flat JSON after overrides, as
/// echoed into the metadata; `channel` is its SI translation.
struct ExperimentSpec {
  std::string command;
  nlohmann::json config;
  Units units = Units::physical;
  ChannelConfig channel;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = ".";
  bool plot = false;
};

/// Commands accepted by make_spec, in display order.
const std::vector<std::string>& commands();

/// Apply one `key=value` override. The value is parsed as JSON when it can be
/// (numbers, lists, true/false), and kept as a string otherwise.
void apply_override(nlohmann::json& config, std::string_view assignment);

/// Validate and translate a flat config. Throws ConfigError naming the bad key.
ExperimentSpec make_spec(const std::string& command, const nlohmann::json& config);

using Cell = std::variant<double, std::int64_t, std::string>;

/// One versioned CSV table.
struct Table {
  std::string schema;
  int version = 1;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  /// Index of a column; throws std::out_of_range.
  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
};

/// `#schema=<name>/<version>` then a header line, then rows. Floats carry 17
/// significant digits.
void write_csv(std::ostream& os, const Table& table);
std::string format_number(double v);

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool points = false;  ///< markers instead of a polyline
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

/// Minimal standalone SVG rendering of a line or scatter plot.
void write_svg(std::ostream& os, const Plot& plot);

struct Result {
  Table table;
  nlohmann::json summary = nlohmann::json::object();
  Plot plot;
};

/// Run the experiment in memory.
Result compute(const ExperimentSpec& spec);

struct RunReport {
  Result result;
  std::vector<std::filesystem::path> files;
  double seconds = 0.0;
};

/// compute(), then write <out>/<command>.csv, <command>.meta.json and, when
/// spec.plot is set, <command>.svg. Throws std::runtime_error on I/O failure.
RunReport run(const ExperimentSpec& spec);

}  // namespace ssfm::lab

#endif  // SSFM_LAB_LAB_HPP
