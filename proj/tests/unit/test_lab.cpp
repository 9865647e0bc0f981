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
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include "ssfm/bounds.hpp"
#include "ssfm/info.hpp"
#include "ssfm/lab/lab.hpp"
#include "ssfm/matrix_lab.hpp"

using namespace ssfm;
using nlohmann::json;

namespace {

std::string csv_of(const lab::Table& t) {
  std::ostringstream os;
  lab::write_csv(os, t);
  return os.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json small_air() {
  return json{{"units", "normalized"}, {"n", 16},         {"K", 20},
              {"L", 1.0},             {"dt", 1.0},        {"gamma", 0.5},
              {"sigma2", 1.0},        {"M", 1},           {"max_dispersion", 2.0},
              {"snr_db", {10.0, 0.0}}, {"samples_per_point", 10000}, {"seed", 3}};
}

}  // namespace

TEST_CASE("air-sweep CSV schema") {
  const lab::Result r = lab::compute(lab::make_spec("air-sweep", small_air()));
  const std::string csv = csv_of(r.table);
  CHECK(csv.rfind("#schema=air-sweep/1\npower_dbm,snr_db,mi_bits,upper_bits,lower_bits,rings,samples,stable,error\n", 0) == 0);
  REQUIRE(r.table.rows.size() == 2);
  CHECK(r.table.number(0, "snr_db") == Catch::Approx(0.0).margin(1e-12));
  CHECK(r.table.number(1, "snr_db") == Catch::Approx(10.0));
}

TEST_CASE("identical specs give identical CSV bodies") {
  const lab::ExperimentSpec spec = lab::make_spec("air-sweep", small_air());
  CHECK(csv_of(lab::compute(spec).table) == csv_of(lab::compute(spec).table));
  json other = small_air();
  other["seed"] = 4;
  CHECK(csv_of(lab::compute(lab::make_spec("air-sweep", other)).table) != csv_of(lab::compute(spec).table));
}

TEST_CASE("floats are written with 17 significant digits") {
  CHECK(lab::format_number(0.1) == "0.10000000000000001");
  CHECK(lab::format_number(1.0) == "1");
  CHECK(lab::format_number(std::nan("")) == "nan");
  CHECK(std::stod(lab::format_number(std::numbers::pi)) == std::numbers::pi);
  lab::Table t{"t", 2, {"a", "b"}, {}};
  t.add({std::string("x,\"y\""), std::int64_t{7}});
  CHECK(csv_of(t) == "#schema=t/2\na,b\n\"x,\"\"y\"\"\",7\n");
  CHECK_THROWS(t.add({1.0}));
}

TEST_CASE("overrides parse JSON values and fall back to strings") {
  json cfg = small_air();
  lab::apply_override(cfg, "K=40");
  lab::apply_override(cfg, "snr_db=[1,2,3]");
  lab::apply_override(cfg, "mode=fixed");
  lab::apply_override(cfg, "back_propagation=false");
  CHECK(cfg["K"] == 40);
  CHECK(cfg["snr_db"].size() == 3);
  CHECK(cfg["mode"] == "fixed");
  CHECK(cfg["back_propagation"] == false);
  CHECK_THROWS_AS(lab::apply_override(cfg, "novalue"), ConfigError);
  CHECK_THROWS_AS(lab::apply_override(cfg, "=3"), ConfigError);
}

TEST_CASE("physical units are converted to SI once") {
  const json cfg{{"n", 64},       {"K", 100},     {"L", 2000.0},  {"dt", 50.0},
                 {"gamma", 1.27}, {"beta2", -21.7}, {"alpha", 0.2}, {"power", 0.0},
                 {"sigma2", 1.2e-13}};
  const ChannelConfig c = lab::make_spec("air-sweep", cfg).channel;
  CHECK(c.L == Catch::Approx(2e6));
  CHECK(c.dt == Catch::Approx(50e-12));
  CHECK(c.gamma == Catch::Approx(1.27e-3));
  CHECK(c.beta2 == Catch::Approx(-21.7e-27));
  REQUIRE(c.alpha.size() == 1);
  CHECK(c.alpha[0] == Catch::Approx(0.2 * std::log(10.0) / 10.0 / 1000.0));
  CHECK(c.power == Catch::Approx(1e-3));
  CHECK(c.sigma2 == 1.2e-13);
}

TEST_CASE("max_dispersion sets the Nyquist-bin total dispersion") {
  json cfg = small_air();
  cfg["max_dispersion"] = 7.5;
  const ChannelConfig c = lab::make_spec("air-sweep", cfg).channel;
  const std::vector<double> d = dispersion_multipliers(c).total_dispersion();
  CHECK(std::abs(d[c.n / 2]) == Catch::Approx(7.5).epsilon(1e-12));
  cfg["beta2"] = -1.0;
  CHECK_THROWS_AS(lab::make_spec("air-sweep", cfg), ConfigError);
}

TEST_CASE("invalid specs are rejected with the offending key") {
  json cfg = small_air();
  cfg["typo"] = 1;
  CHECK_THROWS_WITH(lab::make_spec("air-sweep", cfg), Catch::Matchers::ContainsSubstring("typo"));
  CHECK_THROWS_AS(lab::make_spec("no-such-command", small_air()), ConfigError);
  json bad = small_air();
  bad["n"] = 12;
  CHECK_THROWS_AS(lab::make_spec("air-sweep", bad), ConfigError);
  bad = small_air();
  bad["n"] = "sixteen";
  CHECK_THROWS_AS(lab::make_spec("air-sweep", bad), ConfigError);
  bad = small_air();
  bad["units"] = "imperial";
  CHECK_THROWS_AS(lab::make_spec("air-sweep", bad), ConfigError);
  bad = small_air();
  bad.erase("snr_db");
  CHECK_THROWS_AS(lab::compute(lab::make_spec("air-sweep", bad)), ConfigError);
}

TEST_CASE("mk-pdf histogram of fixed-D M_K matches the Haar marginal") {
  const json cfg{{"units", "normalized"}, {"n", 8}, {"K", 1000}, {"mode", "fixed"},
                 {"trials", 3000},        {"bins", 25}, {"seed", 2}};
  const lab::Result r = lab::compute(lab::make_spec("mk-pdf", cfg));
  CHECK(r.table.rows.size() == 25);
  CHECK(r.summary["ks_haar"]["1000"].get<double>() < 0.05);
  double mass = 0.0;
  for (std::size_t i = 0; i < r.table.rows.size(); ++i) {
    mass += r.table.number(i, "density") * (r.table.number(i, "bin_hi") - r.table.number(i, "bin_lo"));
  }
  CHECK(mass == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("bounds-table and haar-ks commands") {
  const json b{{"snr_db", {0.0, 30.0}}, {"zeta", -1.0}, {"delta", 2.0}};
  const lab::Result r = lab::compute(lab::make_spec("bounds-table", b));
  REQUIRE(r.table.rows.size() == 2);
  CHECK(r.table.number(1, "upper_bits") == Catch::Approx(std::log2(1001.0)));
  CHECK(r.table.number(0, "prelog") == 0.25);
  CHECK(r.table.number(0, "a") == Catch::Approx(loss_factor_a(-1.0)));

  const json h{{"units", "normalized"}, {"n", 4}, {"K", 200}, {"mode", "fixed"}, {"trials", 2000}};
  const lab::Result k = lab::compute(lab::make_spec("haar-ks", h));
  CHECK(k.summary["ks_qr_haar"].get<double>() < 0.04);
  CHECK(k.summary["ks_model"].get<double>() < 0.06);
}

TEST_CASE("run writes the CSV, metadata and plot") {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "ssfmlab_test_run";
  std::filesystem::remove_all(dir);
  json cfg{{"snr_db_step", 10.0}, {"snr_db_max", 40.0}, {"out", dir.string()}, {"plot", true}, {"seed", 9}};
  const lab::RunReport rep = lab::run(lab::make_spec("bounds-table", cfg));
  CHECK(rep.files.size() == 3);
  const std::string csv = slurp(dir / "bounds-table.csv");
  CHECK(csv.rfind("#schema=bounds-table/1\n", 0) == 0);
  const json meta = json::parse(slurp(dir / "bounds-table.meta.json"));
  CHECK(meta["seed"] == 9);
  CHECK(meta["config"]["snr_db_max"] == 40.0);
  CHECK(meta["versions"].contains("fftw"));
  CHECK(meta["timing"]["seconds"].get<double>() >= 0.0);
  CHECK(slurp(dir / "bounds-table.svg").find("<svg") == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("shipped presets parse and validate") {
  const std::map<std::string, std::string> command_of = {
      {"air", "air-sweep"},         {"scatter", "scatter"}, {"mk_pdf", "mk-pdf"},
      {"offdiag_decay", "offdiag-decay"}, {"haar_ks", "haar-ks"}, {"upsilon", "upsilon"},
      {"bounds_table", "bounds-table"}};
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(SSFM_PRESET_DIR)) {
    if (entry.path().extension() != ".json") continue;
    const std::string stem = entry.path().stem().string();
    std::string command;
    for (const auto& [prefix, cmd] : command_of) {
      if (stem.starts_with(prefix) && prefix.size() > command.size()) command = cmd;
    }
    INFO(stem);
    REQUIRE_FALSE(command.empty());
    std::ifstream in(entry.path());
    const nlohmann::json cfg = nlohmann::json::parse(in);
    CHECK_NOTHROW(ssfm::lab::make_spec(command, cfg));
    ++seen;
  }
  CHECK(seen >= 8);
}
