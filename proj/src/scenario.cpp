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

#include "xorcim/scenario.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "xorcim/error.hpp"

namespace xorcim {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    auto t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(d)) {
    fail(ErrorCode::Config, "'" + key + "' expects a number, got '" + v + "'");
  }
  return d;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  if (v.empty() || v.front() == '-') fail(ErrorCode::Config, "'" + key + "' expects a non-negative integer");
  const auto n = std::strtoull(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size() || errno == ERANGE) {
    fail(ErrorCode::Config, "'" + key + "' expects a non-negative integer, got '" + v + "'");
  }
  return n;
}

bool to_bool(const std::string& key, const std::string& v) {
  const auto l = lower(v);
  if (l == "true" || l == "1" || l == "yes" || l == "on") return true;
  if (l == "false" || l == "0" || l == "no" || l == "off") return false;
  fail(ErrorCode::Config, "'" + key + "' expects true/false, got '" + v + "'");
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::string_view to_string(OutputFormat f) noexcept { return f == OutputFormat::Csv ? "csv" : "json"; }

std::optional<OutputFormat> parse_output_format(std::string_view name) {
  const auto l = lower(std::string(name));
  if (l == "csv") return OutputFormat::Csv;
  if (l == "json") return OutputFormat::Json;
  return std::nullopt;
}

Scenario Scenario::reference_3x3() {
  Scenario s;
  s.bits = BitMatrix::from_rows({"110", "100", "000"});
  s.sense.op = LogicOp::Xor;
  s.sense.i_ref1 = 4e-6;
  s.sense.i_ref2 = 12e-6;
  return s;
}

void Scenario::validate() const {
  try {
    device.validate();
  } catch (const Error& e) {
    fail(ErrorCode::Config, std::string("device: ") + e.what());
  }
  if (bits.rows() == 0 || bits.cols() == 0) fail(ErrorCode::Config, "array: no cells defined");
  if (!sense.read) {
    if (bits.rows() < 2) fail(ErrorCode::Config, "array: compute mode needs at least two rows");
    if (row_a >= bits.rows() || row_b >= bits.rows()) fail(ErrorCode::Config, "array.compute_rows out of range");
    if (row_a == row_b) fail(ErrorCode::Config, "array.compute_rows must name two different rows");
    if (!sense.op && (!sense.i_ref1 || !sense.i_ref2 || !sense.composition)) {
      fail(ErrorCode::Config, "sense: give sense.op or explicit i_ref1, i_ref2 and composition");
    }
  }
  if (variation) {
    try {
      variation->validate();
    } catch (const Error& e) {
      fail(ErrorCode::Config, std::string("variation: ") + e.what());
    }
  }
}

Scenario parse_scenario(std::istream& in, const std::string& base_dir) {
  Scenario s;
  s.device = DeviceParams{};
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::Config, "line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    auto key = lower(trim(std::string_view(t).substr(0, eq)));
    auto value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) fail(ErrorCode::Config, "line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second) {
      fail(ErrorCode::Config, "line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }

  std::optional<std::size_t> rows;
  std::optional<std::size_t> cols;
  std::string inline_bits;
  std::optional<bool> comp_invert_a, comp_invert_b, comp_invert_out;
  std::optional<Gate> comp_gate;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters{
      {"device.r_lrs", [&](auto& k, auto& v) { s.device.r_lrs = to_double(k, v); }},
      {"device.r_hrs", [&](auto& k, auto& v) { s.device.r_hrs = to_double(k, v); }},
      {"device.r_on_access",
       [&](auto& k, auto& v) {
         s.device.r_on_access = to_double(k, v);
         s.r_on_explicit = true;
       }},
      {"device.calibration_current", [&](auto& k, auto& v) { s.calibration_current = to_double(k, v); }},
      {"device.leak_unaccessed_lrs", [&](auto& k, auto& v) { s.device.leak_unaccessed_lrs = to_double(k, v); }},
      {"device.leak_unaccessed_hrs", [&](auto& k, auto& v) { s.device.leak_unaccessed_hrs = to_double(k, v); }},
      {"device.v_bl_precharge", [&](auto& k, auto& v) { s.device.v_bl_precharge = to_double(k, v); }},
      {"device.v_write_set", [&](auto& k, auto& v) { s.device.v_write_set = to_double(k, v); }},
      {"device.v_write_reset", [&](auto& k, auto& v) { s.device.v_write_reset = to_double(k, v); }},
      {"array.rows", [&](auto& k, auto& v) { rows = to_u64(k, v); }},
      {"array.cols", [&](auto& k, auto& v) { cols = to_u64(k, v); }},
      {"array.bits", [&](auto&, auto& v) { inline_bits = v; }},
      {"array.file", [&](auto&, auto& v) { s.bits_file = v; }},
      {"array.compute_rows",
       [&](auto& k, auto& v) {
         const auto items = split_list(v);
         if (items.size() != 2) fail(ErrorCode::Config, "'" + k + "' expects two row indices");
         s.row_a = to_u64(k, items[0]);
         s.row_b = to_u64(k, items[1]);
       }},
      {"sense.op",
       [&](auto& k, auto& v) {
         if (lower(v) == "read") {
           s.sense.read = true;
           return;
         }
         s.sense.op = parse_logic_op(v);
         if (!s.sense.op) {
           fail(ErrorCode::Config, "'" + k + "' must be one of XOR, XNOR, AND, NAND, OR, NOR, READ; got '" + v + "'");
         }
       }},
      {"sense.i_ref1", [&](auto& k, auto& v) { s.sense.i_ref1 = to_double(k, v); }},
      {"sense.i_ref2", [&](auto& k, auto& v) { s.sense.i_ref2 = to_double(k, v); }},
      {"sense.offset1", [&](auto& k, auto& v) { s.sense.offset1 = to_double(k, v); }},
      {"sense.offset2", [&](auto& k, auto& v) { s.sense.offset2 = to_double(k, v); }},
      {"sense.read_ref", [&](auto& k, auto& v) { s.sense.read_ref = to_double(k, v); }},
      {"sense.invert_a",
       [&](auto& k, auto& v) {
         comp_invert_a = to_bool(k, v);
       }},
      {"sense.invert_b",
       [&](auto& k, auto& v) {
         comp_invert_b = to_bool(k, v);
       }},
      {"sense.invert_out",
       [&](auto& k, auto& v) {
         comp_invert_out = to_bool(k, v);
       }},
      {"sense.gate",
       [&](auto& k, auto& v) {
         const auto g = parse_gate(v);
         if (!g) fail(ErrorCode::Config, "'" + k + "' must be AND, OR, NAND or NOR");
         comp_gate = *g;
       }},
      {"output.dir", [&](auto&, auto& v) { s.output_dir = v; }},
      {"output.format",
       [&](auto& k, auto& v) {
         const auto f = parse_output_format(v);
         if (!f) fail(ErrorCode::Config, "'" + k + "' must be csv or json");
         s.format = *f;
       }},
  };

  auto variation = [&]() -> VariationSpec& {
    if (!s.variation) s.variation = VariationSpec{};
    return *s.variation;
  };
  const std::map<std::string, Setter> variation_setters{
      {"variation.r_sigma_fraction", [&](auto& k, auto& v) { variation().r_sigma_fraction = to_double(k, v); }},
      {"variation.vth_sigma", [&](auto& k, auto& v) { variation().vth_sigma = to_double(k, v); }},
      {"variation.gm_eff", [&](auto& k, auto& v) { variation().gm_eff = to_double(k, v); }},
      {"variation.n_trials", [&](auto& k, auto& v) { variation().n_trials = to_u64(k, v); }},
      {"variation.seed", [&](auto& k, auto& v) { variation().seed = to_u64(k, v); }},
      {"variation.node_vdd", [&](auto& k, auto& v) { variation().node_vdd = to_double(k, v); }},
      {"variation.node_r_load", [&](auto& k, auto& v) { variation().node_r_load = to_double(k, v); }},
  };

  for (const auto& [key, value] : kv) {
    if (auto it = setters.find(key); it != setters.end()) {
      it->second(key, value);
    } else if (auto vt = variation_setters.find(key); vt != variation_setters.end()) {
      vt->second(key, value);
    } else {
      fail(ErrorCode::Config, "unknown key '" + key + "'");
    }
  }
  if (comp_invert_a || comp_invert_b || comp_invert_out || comp_gate) {
    // Individual keys adjust the named operation's composition.
    Composition comp = s.sense.op ? logic_config(*s.sense.op, CurrentLevels{1.0, 2.0, 3.0}).composition
                                  : Composition{};
    if (comp_invert_a) comp.invert_a = *comp_invert_a;
    if (comp_invert_b) comp.invert_b = *comp_invert_b;
    if (comp_invert_out) comp.invert_out = *comp_invert_out;
    if (comp_gate) comp.gate = *comp_gate;
    s.sense.composition = comp;
  }

  if (!s.r_on_explicit) {
    try {
      s.device.r_on_access = calibrate_access_resistance(s.calibration_current, s.device.v_bl_precharge, s.device.r_lrs);
    } catch (const Error& e) {
      fail(e.code() == ErrorCode::InfeasibleCalibration ? e.code() : ErrorCode::Config,
           std::string("device calibration: ") + e.what());
    }
  }

  if (!inline_bits.empty() && !s.bits_file.empty()) {
    fail(ErrorCode::Config, "give either array.bits or array.file, not both");
  }
  if (!inline_bits.empty()) {
    s.bits = BitMatrix::from_rows(split_list(inline_bits));
  } else if (!s.bits_file.empty()) {
    std::filesystem::path p(s.bits_file);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    if (!std::filesystem::exists(p)) fail(ErrorCode::Config, "array.file '" + p.string() + "' does not exist");
    try {
      s.bits = load_bit_matrix(p.string());
    } catch (const Error& e) {
      fail(ErrorCode::Config, e.what());
    }
  } else if (rows && cols) {
    s.bits = BitMatrix(*rows, *cols);
  }
  if (rows && *rows != s.bits.rows()) fail(ErrorCode::Config, "array.rows disagrees with the bit matrix");
  if (cols && *cols != s.bits.cols()) fail(ErrorCode::Config, "array.cols disagrees with the bit matrix");

  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Config, "cannot open scenario '" + path + "'");
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_scenario(in, dir.empty() ? "." : dir.string());
}

void write_scenario(std::ostream& out, const Scenario& s) {
  const auto& d = s.device;
  out << "device.r_lrs = " << fmt(d.r_lrs) << '\n'
      << "device.r_hrs = " << fmt(d.r_hrs) << '\n'
      << "device.r_on_access = " << fmt(d.r_on_access) << '\n'
      << "device.calibration_current = " << fmt(s.calibration_current) << '\n'
      << "device.leak_unaccessed_lrs = " << fmt(d.leak_unaccessed_lrs) << '\n'
      << "device.leak_unaccessed_hrs = " << fmt(d.leak_unaccessed_hrs) << '\n'
      << "device.v_bl_precharge = " << fmt(d.v_bl_precharge) << '\n'
      << "device.v_write_set = " << fmt(d.v_write_set) << '\n'
      << "device.v_write_reset = " << fmt(d.v_write_reset) << '\n';

  out << "array.rows = " << s.bits.rows() << '\n' << "array.cols = " << s.bits.cols() << '\n' << "array.bits = ";
  for (std::size_t r = 0; r < s.bits.rows(); ++r) {
    if (r) out << ',';
    for (std::size_t c = 0; c < s.bits.cols(); ++c) out << (s.bits.at(r, c) ? '1' : '0');
  }
  out << '\n' << "array.compute_rows = " << s.row_a << ',' << s.row_b << '\n';

  if (s.sense.read) {
    out << "sense.op = READ\n";
  } else if (s.sense.op) {
    out << "sense.op = " << to_string(*s.sense.op) << '\n';
  }
  if (s.sense.i_ref1) out << "sense.i_ref1 = " << fmt(*s.sense.i_ref1) << '\n';
  if (s.sense.i_ref2) out << "sense.i_ref2 = " << fmt(*s.sense.i_ref2) << '\n';
  out << "sense.offset1 = " << fmt(s.sense.offset1) << '\n' << "sense.offset2 = " << fmt(s.sense.offset2) << '\n';
  if (s.sense.composition) {
    const auto& c = *s.sense.composition;
    out << "sense.invert_a = " << (c.invert_a ? "true" : "false") << '\n'
        << "sense.invert_b = " << (c.invert_b ? "true" : "false") << '\n'
        << "sense.gate = " << to_string(c.gate) << '\n'
        << "sense.invert_out = " << (c.invert_out ? "true" : "false") << '\n';
  }
  out << "sense.read_ref = " << fmt(s.sense.read_ref) << '\n';

  if (s.variation) {
    const auto& v = *s.variation;
    out << "variation.r_sigma_fraction = " << fmt(v.r_sigma_fraction) << '\n'
        << "variation.vth_sigma = " << fmt(v.vth_sigma) << '\n'
        << "variation.gm_eff = " << fmt(v.gm_eff) << '\n'
        << "variation.n_trials = " << v.n_trials << '\n'
        << "variation.seed = " << v.seed << '\n'
        << "variation.node_vdd = " << fmt(v.node_vdd) << '\n'
        << "variation.node_r_load = " << fmt(v.node_r_load) << '\n';
  }
  out << "output.dir = " << s.output_dir << '\n' << "output.format = " << to_string(s.format) << '\n';
}

CurrentLevels scenario_levels(const Scenario& s) {
  const std::size_t bystanders = s.bits.rows() >= 2 ? s.bits.rows() - 2 : 0;
  return nominal_levels(s.device, bystanders, false);
}

SenseConfig resolve_sense(const Scenario& s) {
  if (s.sense.read) fail(ErrorCode::Config, "READ scenarios have no compute sense configuration");
  SenseConfig cfg;
  if (s.sense.op) {
    const auto op = *s.sense.op;
    cfg = logic_config(op, scenario_levels(s));
    if (s.sense.i_ref1 || s.sense.i_ref2) {
      if (!s.sense.i_ref1 || !s.sense.i_ref2) fail(ErrorCode::Config, "give both sense.i_ref1 and sense.i_ref2");
      cfg.i_ref1 = *s.sense.i_ref1;
      cfg.i_ref2 = *s.sense.i_ref2;
    }
  } else {
    cfg.i_ref1 = *s.sense.i_ref1;
    cfg.i_ref2 = *s.sense.i_ref2;
  }
  if (s.sense.composition) cfg.composition = *s.sense.composition;
  cfg.offset1 = s.sense.offset1;
  cfg.offset2 = s.sense.offset2;
  try {
    cfg.validate();
  } catch (const Error& e) {
    fail(ErrorCode::Config, std::string("sense: ") + e.what());
  }
  return cfg;
}

}  // namespace xorcim
