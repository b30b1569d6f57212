/*
 * Copyright 2026 The xorcim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "xorcim/xorcim.h"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("xorcim_capi_" + name);
  fs::remove_all(dir);
  return dir;
}

xcim_run_options quiet_to(const fs::path& dir) {
  static thread_local std::string keep;
  keep = dir.string();
  xcim_run_options o{};
  o.out_dir = keep.c_str();
  o.quiet = 1;
  return o;
}

}  // namespace

TEST_CASE("version and status helpers") {
  CHECK(std::string(xcim_version()).size() > 0);
  CHECK(xcim_exit_code(XCIM_OK) == 0);
  CHECK(xcim_exit_code(XCIM_ERR_CONFIG) == 2);
  CHECK(xcim_exit_code(XCIM_ERR_NO_VALID_REFERENCE) == 3);
  CHECK(std::string(xcim_status_name(XCIM_ERR_CONFIG)).size() > 0);
}

TEST_CASE("device and array through the C interface") {
  xcim_device_params p;
  REQUIRE(xcim_device_defaults(&p) == XCIM_OK);
  CHECK(p.r_on_access == doctest::Approx(2706.48).epsilon(1e-5));
  double i = 0;
  REQUIRE(xcim_cell_current(1, p.r_lrs, &p, 1, &i) == XCIM_OK);
  CHECK(i == doctest::Approx(7.87e-6));
  CHECK(xcim_cell_current(1, 0.0, &p, 1, &i) == XCIM_ERR_INVALID_PARAMETER);
  CHECK(std::string(xcim_last_error()).find("resistance") != std::string::npos);
  double ohms = 0;
  CHECK(xcim_calibrate_access_resistance(20e-6, 0.1, 10e3, &ohms) == XCIM_ERR_INFEASIBLE_CALIBRATION);

  xcim_array* a = nullptr;
  REQUIRE(xcim_array_create(3, 3, &p, &a) == XCIM_OK);
  const int bits[3][3] = {{1, 1, 0}, {1, 0, 0}, {0, 0, 0}};
  for (size_t r = 0; r < 3; ++r)
    for (size_t c = 0; c < 3; ++c) REQUIRE(xcim_array_write_bit(a, r, c, bits[r][c]) == XCIM_OK);
  int bit = -1;
  REQUIRE(xcim_array_read_bit(a, 1, 0, 2e-6, &bit) == XCIM_OK);
  CHECK(bit == 1);
  CHECK(xcim_array_get_bit(a, 5, 0, &bit) == XCIM_ERR_OUT_OF_BOUNDS);

  xcim_current_levels lv;
  REQUIRE(xcim_nominal_levels(&p, 1, 0, &lv) == XCIM_OK);
  xcim_sense_config cfg;
  REQUIRE(xcim_logic_config(XCIM_OP_XOR, &lv, &cfg) == XCIM_OK);
  cfg.i_ref1 = 4e-6;
  cfg.i_ref2 = 12e-6;
  int out[3];
  double cur[3];
  REQUIRE(xcim_array_compute(a, 0, 1, &cfg, out, cur) == XCIM_OK);
  CHECK(out[0] == 0);
  CHECK(out[1] == 1);
  CHECK(out[2] == 0);
  CHECK(cur[0] == doctest::Approx(15.74e-6).epsilon(1e-4));
  uint64_t cycles = 0;
  REQUIRE(xcim_array_cycles(a, &cycles) == XCIM_OK);
  CHECK(cycles == 1);

  int tt[4];
  REQUIRE(xcim_logic_config(XCIM_OP_NOR, &lv, &cfg) == XCIM_OK);
  REQUIRE(xcim_truth_table(&cfg, &lv, tt) == XCIM_OK);
  CHECK((tt[0] == 1 && tt[1] == 0 && tt[2] == 0 && tt[3] == 0));

  const auto dir = scratch("array");
  fs::create_directories(dir);
  const auto path = (dir / "bits.txt").string();
  REQUIRE(xcim_array_save(a, path.c_str()) == XCIM_OK);
  xcim_array* b = nullptr;
  REQUIRE(xcim_array_load(path.c_str(), &p, &b) == XCIM_OK);
  size_t rows = 0, cols = 0;
  REQUIRE(xcim_array_dims(b, &rows, &cols) == XCIM_OK);
  CHECK(rows == 3);
  REQUIRE(xcim_array_get_bit(b, 0, 1, &bit) == XCIM_OK);
  CHECK(bit == 1);
  xcim_array_destroy(a);
  xcim_array_destroy(b);
  CHECK(xcim_array_load("/nonexistent/bits.txt", &p, &b) == XCIM_ERR_IO);
  fs::remove_all(dir);
}

TEST_CASE("analysis entry points") {
  xcim_device_params p;
  xcim_device_defaults(&p);
  xcim_sense_config cfg{4e-6, 12e-6, 0, 0, 0, 1, XCIM_GATE_AND, 0};
  uint64_t n = 0;
  REQUIRE(xcim_max_rows(&p, &cfg, 0.0, &n) == XCIM_OK);
  CHECK(n == 5169);
  p.leak_unaccessed_lrs = p.leak_unaccessed_hrs = 0;
  REQUIRE(xcim_max_rows(&p, &cfg, 0.0, &n) == XCIM_OK);
  CHECK(n == XCIM_NO_LEAKAGE_LIMIT);
  double s = 0;
  REQUIRE(xcim_speedup(256, 196, 9, 64, &s) == XCIM_OK);
  CHECK(s == doctest::Approx(63.918).epsilon(1e-5));
  REQUIRE(xcim_relative_speedup(256, 196, 9, 64, 1, &s) == XCIM_OK);
  CHECK(s == doctest::Approx(1.0));
  REQUIRE(xcim_xornet_adjusted_speedup(256, 196, 9, 64, &s) == XCIM_OK);
  CHECK(s == doctest::Approx(63.9509).epsilon(1e-6));
  CHECK(xcim_speedup(0, 196, 9, 64, &s) == XCIM_ERR_INVALID_PARAMETER);
}

TEST_CASE("sim command writes reproducible files") {
  xcim_scenario* sc = nullptr;
  REQUIRE(xcim_scenario_default(&sc) == XCIM_OK);
  const auto d1 = scratch("sim1"), d2 = scratch("sim2");
  auto o1 = quiet_to(d1);
  REQUIRE(xcim_cmd_sim(sc, &o1) == XCIM_OK);
  auto o2 = quiet_to(d2);
  REQUIRE(xcim_cmd_sim(sc, &o2) == XCIM_OK);
  for (const char* f : {"sim.csv", "truth_table.csv", "manifest.json"}) {
    REQUIRE(fs::exists(d1 / f));
    CHECK(slurp(d1 / f) == slurp(d2 / f));
  }
  const auto csv = slurp(d1 / "sim.csv");
  CHECK(csv.find("15.74 uA") != std::string::npos);
  CHECK(csv.find("7.87 uA") != std::string::npos);
  CHECK(csv.find("94.67 pA") != std::string::npos);

  // A saved scenario reloads to byte-identical outputs.
  const auto saved = (d1 / "resolved.scenario").string();
  REQUIRE(xcim_scenario_save(sc, saved.c_str()) == XCIM_OK);
  xcim_scenario* back = nullptr;
  REQUIRE(xcim_scenario_load(saved.c_str(), &back) == XCIM_OK);
  const auto d3 = scratch("sim3");
  auto o3 = quiet_to(d3);
  REQUIRE(xcim_cmd_sim(back, &o3) == XCIM_OK);
  CHECK(slurp(d3 / "sim.csv") == slurp(d1 / "sim.csv"));

  auto oj = quiet_to(d3);
  oj.format = XCIM_FORMAT_JSON;
  REQUIRE(xcim_cmd_sim(sc, &oj) == XCIM_OK);
  CHECK(fs::exists(d3 / "sim.json"));

  xcim_scenario_destroy(sc);
  xcim_scenario_destroy(back);
  for (const auto& d : {d1, d2, d3}) fs::remove_all(d);
}

TEST_CASE("mc, scale, bnn and speedup commands") {
  xcim_scenario* sc = nullptr;
  REQUIRE(xcim_scenario_default(&sc) == XCIM_OK);

  const auto dm = scratch("mc");
  auto om = quiet_to(dm);
  om.has_seed = 1;
  om.seed = 99;
  om.bins = 20;
  om.workers = 3;
  REQUIRE(xcim_cmd_mc(sc, &om) == XCIM_OK);
  const auto summary = slurp(dm / "mc_summary.json");
  CHECK(summary.find("\"seed\": 99") != std::string::npos);
  CHECK(fs::exists(dm / "mc_histogram.csv"));
  CHECK(fs::exists(dm / "mc_samples.csv"));
  CHECK(slurp(dm / "manifest.json").find("99") != std::string::npos);

  const auto ds = scratch("scale");
  auto os = quiet_to(ds);
  const double ratios[] = {10, 1e3, 1e5};
  const xcim_vary vary[] = {XCIM_VARY_LRS};
  REQUIRE(xcim_cmd_scale(sc, ratios, 3, vary, 1, &os) == XCIM_OK);
  const auto scale = slurp(ds / "scale.csv");
  CHECK(std::count(scale.begin(), scale.end(), '\n') == 4);
  const double unsorted[] = {100, 10};
  CHECK(xcim_cmd_scale(sc, unsorted, 2, nullptr, 0, &os) == XCIM_ERR_INVALID_PARAMETER);

  const auto db = scratch("bnn");
  auto ob = quiet_to(db);
  const std::string data = XORCIM_SOURCE_DIR "/data/";
  REQUIRE(xcim_cmd_bnn(sc, (data + "input_8x8x4.txt").c_str(), (data + "filters_8x3x3x4.txt").c_str(), 64, 1, 2,
                       &ob) == XCIM_OK);
  CHECK(slurp(db / "bnn_summary.json").find("\"raw_mismatches\": 0") != std::string::npos);
  CHECK(xcim_cmd_bnn(sc, "/missing", "/missing", 64, 1, 2, &ob) == XCIM_ERR_CONFIG);

  const auto dp = scratch("speedup");
  auto op = quiet_to(dp);
  const double widths[] = {64, 4096};
  const unsigned lat[] = {1, 3};
  REQUIRE(xcim_cmd_speedup(256, 196, 9, widths, 2, lat, 2, &op) == XCIM_OK);
  const auto sp = slurp(dp / "speedup.csv");
  CHECK(sp.find("64,1,64,63.918") != std::string::npos);
  CHECK(fs::exists(dp / "designs.csv"));

  xcim_scenario_destroy(sc);
  for (const auto& d : {dm, ds, db, dp}) fs::remove_all(d);
}

TEST_CASE("scenario errors map to status codes") {
  xcim_scenario* sc = nullptr;
  const std::string dir = XORCIM_SOURCE_DIR "/scenarios/";
  CHECK(xcim_scenario_load((dir + "invalid_rows1.scenario").c_str(), &sc) == XCIM_ERR_CONFIG);
  CHECK(sc == nullptr);
  REQUIRE(xcim_scenario_load((dir + "paper_3x3_xnor.scenario").c_str(), &sc) == XCIM_OK);
  const auto d = scratch("xnor");
  auto o = quiet_to(d);
  REQUIRE(xcim_cmd_sim(sc, &o) == XCIM_OK);
  CHECK(slurp(d / "sim.csv").find("0,1,1,1.57") != std::string::npos);
  xcim_scenario_destroy(sc);
  fs::remove_all(d);
}
