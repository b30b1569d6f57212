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

#include "test_support.hpp"
#include "xorcim/array.hpp"
#include "xorcim/scenario.hpp"

using namespace xorcim;

namespace {

Scenario parse(const std::string& text, const std::string& base = ".") {
  std::istringstream in(text);
  return parse_scenario(in, base);
}

std::vector<bool> run(const Scenario& s, std::vector<Amps>* currents) {
  ArrayState a(s.bits, s.device);
  return compute_cycle(a, s.row_a, s.row_b, resolve_sense(s), s.device, currents);
}

const char* kBaseScenario = R"(# 3x3
device.r_lrs = 10e3
array.rows = 3
array.cols = 3
array.bits = 110,100,000
sense.op = XOR
sense.i_ref1 = 4e-6
sense.i_ref2 = 12e-6
variation.seed = 7
output.format = json
)";

}  // namespace

TEST_CASE("3x3 scenario parses and simulates") {
  const auto s = parse(kBaseScenario);
  CHECK(s.bits == BitMatrix::from_rows({"110", "100", "000"}));
  CHECK(s.device.r_on_access == doctest::Approx(2706.48).epsilon(1e-5));
  CHECK(s.format == OutputFormat::Json);
  REQUIRE(s.variation.has_value());
  CHECK(s.variation->seed == 7);
  CHECK(s.variation->n_trials == 5000);
  std::vector<Amps> cur;
  CHECK(run(s, &cur) == std::vector<bool>{false, true, false});

  auto x = parse(std::string(kBaseScenario) + "sense.invert_out = true\n");
  CHECK(run(x, nullptr) == std::vector<bool>{true, false, true});
}

TEST_CASE("written scenarios read back to the same runs") {
  for (const std::string extra : {"", "sense.offset1 = 1e-7\n", "device.calibration_current = 6e-6\n"}) {
    const auto s = parse(std::string(kBaseScenario) + extra);
    std::ostringstream out;
    write_scenario(out, s);
    const auto back = parse(out.str());
    std::ostringstream again;
    write_scenario(again, back);
    CHECK(out.str() == again.str());
    CHECK(back.device == s.device);
    CHECK(back.variation == s.variation);
    std::vector<Amps> c1, c2;
    CHECK(run(s, &c1) == run(back, &c2));
    CHECK(c1 == c2);
  }
  std::ostringstream out;
  write_scenario(out, Scenario::reference_3x3());
  CHECK(parse(out.str()).bits == Scenario::reference_3x3().bits);
}

TEST_CASE("named operations resolve to mid-gap references") {
  const auto s = parse("array.bits = 11,10\nsense.op = AND\n");
  const auto cfg = resolve_sense(s);
  CHECK(cfg.i_ref1 == cfg.i_ref2);
  CHECK(run(s, nullptr) == std::vector<bool>{true, false});
}

TEST_CASE("configuration errors") {
  CHECK_ERROR(parse("array.rows = 1\narray.cols = 3\narray.bits = 110\nsense.op = XOR\n"), ErrorCode::Config);
  CHECK_ERROR(parse(std::string(kBaseScenario) + "bogus.key = 1\n"), ErrorCode::Config);
  CHECK_ERROR(parse(std::string(kBaseScenario) + "sense.op = XNOR\n"), ErrorCode::Config);
  CHECK_ERROR(parse("array.bits = 11,10\nsense.op = MAYBE\n"), ErrorCode::Config);
  CHECK_ERROR(parse("array.bits = 11,10\nsense.op = XOR\ndevice.r_lrs = ten\n"), ErrorCode::Config);
  CHECK_ERROR(parse("array.bits = 11,10\nsense.op = XOR\ndevice.r_hrs = 1\n"), ErrorCode::Config);
  CHECK_ERROR(parse("array.bits = 11,10\nsense.op = XOR\narray.rows = 3\n"), ErrorCode::Config);
  CHECK_ERROR(parse("array.bits = 11,10\nsense.op = XOR\narray.compute_rows = 0,0\n"), ErrorCode::Config);
  CHECK_ERROR(parse("array.bits = 11,10\nsense.op = XOR\nvariation.n_trials = -3\n"), ErrorCode::Config);
  CHECK_ERROR(parse("array.bits = 11,10\nsense.op = XOR\njust words\n"), ErrorCode::Config);
  CHECK_ERROR(parse("array.file = /nonexistent/bits.txt\nsense.op = XOR\n"), ErrorCode::Config);
  CHECK_ERROR(parse("array.bits = 11,10\nsense.op = XOR\ndevice.calibration_current = 20e-6\n"),
              ErrorCode::InfeasibleCalibration);
  CHECK_ERROR(load_scenario("/nonexistent.scenario"), ErrorCode::Config);
}

TEST_CASE("bit matrix file relative to the scenario directory") {
  const auto dir = std::filesystem::temp_directory_path() / "xorcim_test_scenario";
  std::filesystem::create_directories(dir);
  { std::ofstream(dir / "bits.txt") << "# rows\n011\n110\n"; }
  { std::ofstream(dir / "s.scenario") << "array.file = bits.txt\nsense.op = XOR\n"; }
  const auto s = load_scenario((dir / "s.scenario").string());
  CHECK(s.bits == BitMatrix::from_rows({"011", "110"}));
  CHECK(run(s, nullptr) == std::vector<bool>{true, false, true});
  std::filesystem::remove_all(dir);
}
