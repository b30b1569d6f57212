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

#include "xorcim/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "xorcim/array.hpp"
#include "xorcim/monte_carlo.hpp"
#include "xorcim/table.hpp"

#ifndef XORCIM_VERSION
#define XORCIM_VERSION "0.0.0"
#endif

namespace xorcim {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr DesignLatency kDesigns[] = {
    {"Pinatubo", "CMOS", 7, 3},     {"FELIX", "Crossbar", -1, 3}, {"CMOS Memristive", "CMOS", 16, 2},
    {"XORiM", "CMOS", 12, 3},       {"SiXOR", "Memristor", -1, 1}, {"This design", "CMOS", 13, 1},
};

class OutputDir {
 public:
  OutputDir(const std::string& dir, std::string command) : dir_(dir), command_(std::move(command)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) fail(ErrorCode::Io, "cannot create output directory '" + dir_.string() + "': " + ec.message());
  }

  template <class Writer>
  void write(const std::string& name, Writer&& writer) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot write '" + path.string() + "'");
    writer(out);
    if (!out) fail(ErrorCode::Io, "write failed for '" + path.string() + "'");
    files_.push_back(name);
  }

  void table(const std::string& stem, const Table& t, OutputFormat format) {
    write(stem + (format == OutputFormat::Csv ? ".csv" : ".json"), [&](std::ostream& o) { t.write(o, format); });
  }

  // Everything needed to rerun the command: resolved parameters, seed,
  // options and the list of files produced.
  void manifest(json params, json options, std::optional<std::uint64_t> seed) {
    json m;
    m["tool"] = kToolName;
    m["version"] = tool_version();
    m["command"] = command_;
    m["seed"] = seed ? json(*seed) : json(nullptr);
    m["parameters"] = std::move(params);
    m["options"] = std::move(options);
    auto files = files_;
    m["outputs"] = files;
    write("manifest.json", [&](std::ostream& o) { o << m.dump(2) << '\n'; });
  }

  const fs::path& path() const noexcept { return dir_; }

 private:
  fs::path dir_;
  std::string command_;
  std::vector<std::string> files_;
};

json scenario_json(const Scenario& s) {
  std::ostringstream text;
  write_scenario(text, s);
  json j = json::object();
  std::istringstream in(text.str());
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) j[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return j;
}

std::string out_dir_for(const Scenario& s, const RunOptions& opts) { return opts.out_dir.value_or(s.output_dir); }
OutputFormat format_for(const Scenario& s, const RunOptions& opts) { return opts.format.value_or(s.format); }

std::ostream& log_of(const RunOptions& opts) {
  static std::ostringstream sink;
  if (opts.log) return *opts.log;
  sink.str({});
  return sink;
}

std::string bits_label(bool a, bool b) { return std::string{a ? '1' : '0', b ? '1' : '0'}; }

Table truth_table_rows(const TruthTable& tt) {
  Table t({"a", "b", "i_sl_A", "i_sl", "output"});
  for (const auto& row : tt) {
    t.add_row({std::int64_t{row.a}, std::int64_t{row.b}, row.current, format_current(row.current), row.output});
  }
  return t;
}

void print_truth_table(std::ostream& log, const TruthTable& tt) {
  log << "  ab | I_SL        | out\n";
  for (const auto& row : tt) {
    log << "  " << bits_label(row.a, row.b) << " | " << std::left << std::setw(11) << format_current(row.current)
        << std::right << " | " << row.output << '\n';
  }
}

}  // namespace

std::string_view tool_version() noexcept { return XORCIM_VERSION; }

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Config:
    case ErrorCode::InvalidParameter:
    case ErrorCode::OutOfBounds:
    case ErrorCode::DimensionMismatch:
      return 2;
    case ErrorCode::InfeasibleCalibration:
    case ErrorCode::AmbiguousReference:
    case ErrorCode::NoValidReference:
      return 3;
    case ErrorCode::Io:
      return 1;
  }
  return 1;
}

std::span<const DesignLatency> published_designs() noexcept { return kDesigns; }

std::vector<double> default_ratios() {
  std::vector<double> out;
  for (double decade = 10.0; decade <= 1e6; decade *= 10.0) {
    for (double m : {1.0, 2.0, 5.0}) {
      if (m * decade <= 1e6) out.push_back(m * decade);
    }
  }
  return out;
}

std::vector<double> default_widths() { return {64, 128, 256, 512, 1024, 2048, 4096}; }

void cmd_sim(const Scenario& scenario, const RunOptions& opts) {
  scenario.validate();
  auto& log = log_of(opts);
  const auto format = format_for(scenario, opts);
  OutputDir out(out_dir_for(scenario, opts), "sim");
  ArrayState array(scenario.bits, scenario.device);
  const auto& params = scenario.device;

  json options{{"format", to_string(format)}};
  if (scenario.sense.read) {
    Table t({"row", "col", "i_sl_A", "i_sl", "bit", "stored"});
    for (std::size_t r = 0; r < array.rows(); ++r) {
      const auto bias = BiasVector::read(array.rows(), array.cols(), r, params);
      for (std::size_t c = 0; c < array.cols(); ++c) {
        const Amps i = column_current(array, bias, c, params);
        const bool bit = read_bit(array, r, c, params, scenario.sense.read_ref);
        t.add_row({static_cast<std::int64_t>(r), static_cast<std::int64_t>(c), i, format_current(i), bit,
                   array.cell(r, c).bit});
      }
    }
    out.table("read", t, format);
    log << "memory read of " << array.rows() << "x" << array.cols() << " array, reference "
        << format_current(scenario.sense.read_ref) << '\n';
    for (std::size_t r = 0; r < array.rows(); ++r) {
      log << "  ";
      for (std::size_t c = 0; c < array.cols(); ++c) log << read_bit(array, r, c, params, scenario.sense.read_ref);
      log << '\n';
    }
  } else {
    const auto cfg = resolve_sense(scenario);
    std::vector<Amps> currents;
    const auto bits = compute_cycle(array, scenario.row_a, scenario.row_b, cfg, params, &currents);

    Table t({"col", "a", "b", "i_sl_A", "i_sl", "output", "expected"});
    for (std::size_t c = 0; c < array.cols(); ++c) {
      const bool a = array.cell(scenario.row_a, c).bit;
      const bool b = array.cell(scenario.row_b, c).bit;
      std::int64_t expected = -1;
      if (scenario.sense.op) expected = apply_logic(*scenario.sense.op, a, b) ? 1 : 0;
      t.add_row({static_cast<std::int64_t>(c), std::int64_t{a}, std::int64_t{b}, currents[c],
                 format_current(currents[c]), bits[c], expected});
    }
    const auto tt = truth_table(cfg, scenario_levels(scenario));
    out.table("sim", t, format);
    out.table("truth_table", truth_table_rows(tt), format);

    log << (scenario.sense.op ? std::string(to_string(*scenario.sense.op)) : std::string("custom"))
        << " on rows " << scenario.row_a << "," << scenario.row_b << " (I_REF1 " << format_current(cfg.i_ref1)
        << ", I_REF2 " << format_current(cfg.i_ref2) << "), " << array.cycle_count() << " cycle\n";
    for (std::size_t c = 0; c < array.cols(); ++c) {
      log << "  col " << c << "  " << std::left << std::setw(11) << format_current(currents[c]) << std::right
          << " -> " << bits[c] << '\n';
    }
    log << "truth table:\n";
    print_truth_table(log, tt);
    options["cycles"] = array.cycle_count();
  }
  out.manifest(scenario_json(scenario), std::move(options), std::nullopt);
}

void cmd_scale(const Scenario& scenario, std::span<const double> ratios, std::span<const VaryState> vary,
               const RunOptions& opts) {
  scenario.validate();
  auto& log = log_of(opts);
  const auto format = format_for(scenario, opts);
  OutputDir out(out_dir_for(scenario, opts), "scale");

  json options{{"format", to_string(format)}, {"ratios", std::vector<double>(ratios.begin(), ratios.end())}};
  json vary_names = json::array();

  if (!scenario.sense.read) {
    const auto cfg = resolve_sense(scenario);
    const auto n = max_rows(scenario.device, cfg);
    log << "max rows at the scenario references: "
        << (n == kNoLeakageLimit ? std::string("no leakage limit") : std::to_string(n)) << '\n';
    options["max_rows_scenario"] = n == kNoLeakageLimit ? json("unbounded") : json(n);
  }

  Table t({"vary", "ratio", "r_lrs", "r_hrs", "leak_lrs_A", "leak_hrs_A", "max_rows"});
  for (auto v : vary) {
    vary_names.push_back(to_string(v));
    const auto points = sweep_on_off_ratio(ratios, scenario.device, v);
    for (const auto& p : points) {
      const auto scaled = rescale_for_ratio(scenario.device, p.ratio, v);
      Table::Cell rows = p.max_rows == kNoLeakageLimit ? Table::Cell{std::string("unbounded")}
                                                       : Table::Cell{static_cast<std::int64_t>(p.max_rows)};
      t.add_row({std::string(to_string(v)), p.ratio, scaled.r_lrs, scaled.r_hrs, scaled.leak_unaccessed_lrs,
                 scaled.leak_unaccessed_hrs, rows});
      log << "  " << to_string(v) << "  ratio " << std::setw(10) << p.ratio << "  max rows "
          << (p.max_rows == kNoLeakageLimit ? std::string("unbounded") : std::to_string(p.max_rows)) << '\n';
    }
  }
  options["vary"] = vary_names;
  out.table("scale", t, format);
  out.manifest(scenario_json(scenario), std::move(options), std::nullopt);
}

void cmd_mc(const Scenario& scenario, const RunOptions& opts) {
  scenario.validate();
  auto& log = log_of(opts);
  OutputDir out(out_dir_for(scenario, opts), "mc");

  auto spec = scenario.variation.value_or(VariationSpec{});
  if (opts.seed) spec.seed = *opts.seed;
  const auto cfg = resolve_sense(scenario);
  const McLayout layout{scenario.bits, scenario.row_a, scenario.row_b};
  const auto report = monte_carlo(layout, spec, scenario.device, cfg, opts.workers);

  out.write("mc_samples.csv", [&](std::ostream& o) { write_samples_csv(o, report); });
  out.write("mc_histogram.csv", [&](std::ostream& o) { write_histogram_csv(o, report, opts.bins); });
  out.write("mc_summary.json", [&](std::ostream& o) { o << summary_json(report) << '\n'; });

  log << report.n_trials << " trials, seed " << report.seed << ", " << report.failure_count << " failures in "
      << report.evaluations << " column evaluations\n";
  for (std::size_t k = 0; k < 3; ++k) {
    if (report.currents[k].empty()) continue;
    const auto st = stats_of(report.currents[k]);
    log << "  I_" << kPatternNames[k] << "  mean " << format_current(st.mean) << "  sigma " << format_current(st.stddev)
        << "  [" << format_current(st.min) << ", " << format_current(st.max) << "]\n";
  }

  auto params = scenario_json(scenario);
  params["variation.seed"] = std::to_string(spec.seed);
  out.manifest(std::move(params), json{{"bins", opts.bins}, {"workers", opts.workers}}, spec.seed);
}

RealTensor batch_normalize(const RealTensor& t, double eps) {
  RealTensor out = t;
  const auto& d = t.dims;
  const double n = static_cast<double>(d.height * d.width);
  for (std::size_t c = 0; c < d.channels; ++c) {
    double mean = 0.0;
    for (std::size_t y = 0; y < d.height; ++y) {
      for (std::size_t x = 0; x < d.width; ++x) mean += t.at(y, x, c);
    }
    mean /= n;
    double var = 0.0;
    for (std::size_t y = 0; y < d.height; ++y) {
      for (std::size_t x = 0; x < d.width; ++x) var += (t.at(y, x, c) - mean) * (t.at(y, x, c) - mean);
    }
    var /= n;
    const double inv = 1.0 / std::sqrt(var + eps);
    for (std::size_t y = 0; y < d.height; ++y) {
      for (std::size_t x = 0; x < d.width; ++x) out.at(y, x, c) = (t.at(y, x, c) - mean) * inv;
    }
  }
  return out;
}

RealTensor max_pool(const ConvOutput& conv, std::size_t window) {
  if (window == 0) fail(ErrorCode::InvalidParameter, "pool window must be positive");
  RealTensor out(Dims3{conv.out_h / window, conv.out_w / window, conv.n_filters});
  for (std::size_t f = 0; f < conv.n_filters; ++f) {
    for (std::size_t y = 0; y < out.dims.height; ++y) {
      for (std::size_t x = 0; x < out.dims.width; ++x) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t dy = 0; dy < window; ++dy) {
          for (std::size_t dx = 0; dx < window; ++dx) {
            best = std::max(best, conv.values[conv.index(f, y * window + dy, x * window + dx)]);
          }
        }
        out.at(y, x, f) = best;
      }
    }
  }
  return out;
}

void cmd_bnn(const Scenario& scenario, const BnnOptions& bnn, const RunOptions& opts) {
  scenario.validate();
  auto& log = log_of(opts);
  const auto format = format_for(scenario, opts);

  RealTensor input;
  std::vector<RealTensor> filters;
  try {
    input = load_real_tensor(bnn.input_path);
    filters = load_filter_set(bnn.filters_path);
  } catch (const Error& e) {
    fail(ErrorCode::Config, e.what());
  }
  OutputDir out(out_dir_for(scenario, opts), "bnn");

  const auto layer = binarize_layer(batch_normalize(input), filters);
  const auto sim = xnor_conv2d_sim(layer.input, layer.filters, layer.scales, bnn.array_cols, scenario.device,
                                   bnn.latency_cycles);
  const auto oracle = xnor_conv2d_oracle(layer.input, layer.filters, layer.scales);

  Table t({"filter", "y", "x", "raw_sim", "raw_oracle", "value_sim", "value_oracle", "abs_diff"});
  std::size_t raw_mismatches = 0;
  double max_diff = 0.0;
  for (std::size_t f = 0; f < sim.n_filters; ++f) {
    for (std::size_t y = 0; y < sim.out_h; ++y) {
      for (std::size_t x = 0; x < sim.out_w; ++x) {
        const auto i = sim.index(f, y, x);
        const double diff = std::abs(sim.values[i] - oracle.values[i]);
        max_diff = std::max(max_diff, diff);
        raw_mismatches += sim.raw[i] != oracle.raw[i] ? 1 : 0;
        t.add_row({static_cast<std::int64_t>(f), static_cast<std::int64_t>(y), static_cast<std::int64_t>(x),
                   sim.raw[i], oracle.raw[i], sim.values[i], oracle.values[i], diff});
      }
    }
  }
  out.table("bnn_output", t, format);

  if (bnn.pool > 1 && sim.out_h >= bnn.pool && sim.out_w >= bnn.pool) {
    const auto pooled = max_pool(sim, bnn.pool);
    Table p({"filter", "y", "x", "value"});
    for (std::size_t f = 0; f < pooled.dims.channels; ++f) {
      for (std::size_t y = 0; y < pooled.dims.height; ++y) {
        for (std::size_t x = 0; x < pooled.dims.width; ++x) {
          p.add_row({static_cast<std::int64_t>(f), static_cast<std::int64_t>(y), static_cast<std::int64_t>(x),
                     pooled.at(y, x, f)});
        }
      }
    }
    out.table("bnn_pooled", p, format);
  }

  const std::size_t length = layer.filters.front().size();
  const std::size_t chunks = (length + bnn.array_cols - 1) / bnn.array_cols;
  json summary{{"filters", sim.n_filters},
               {"out_h", sim.out_h},
               {"out_w", sim.out_w},
               {"filter_length", length},
               {"array_cols", bnn.array_cols},
               {"chunks_per_patch", chunks},
               {"latency_cycles", bnn.latency_cycles},
               {"compute_cycles", sim.compute_cycles},
               {"write_ops", sim.write_ops},
               {"raw_mismatches", raw_mismatches},
               {"max_abs_diff", max_diff}};
  out.write("bnn_summary.json", [&](std::ostream& o) { o << summary.dump(2) << '\n'; });

  log << sim.n_filters << " filter(s), " << sim.out_h << "x" << sim.out_w << " outputs, " << sim.compute_cycles
      << " compute cycles, " << sim.write_ops << " bit writes\n"
      << "oracle agreement: " << raw_mismatches << " raw mismatches, max |diff| " << max_diff << '\n';

  out.manifest(scenario_json(scenario),
               json{{"input", bnn.input_path},
                    {"filters", bnn.filters_path},
                    {"array_cols", bnn.array_cols},
                    {"latency_cycles", bnn.latency_cycles},
                    {"pool", bnn.pool},
                    {"format", to_string(format)}},
               std::nullopt);
}

void cmd_speedup(const ConvSpec& layer, std::span<const double> n_o, std::span<const unsigned> latency,
                 const RunOptions& opts) {
  layer.validate();
  auto& log = log_of(opts);
  const auto format = opts.format.value_or(OutputFormat::Csv);
  OutputDir out(opts.out_dir.value_or("out"), "speedup");

  Table t({"n_o", "latency_cycles", "effective_n_o", "speedup", "relative_speedup", "xornet_speedup",
           "xornet_relative_speedup"});
  ConvSpec baseline = layer;
  baseline.n_o = kCpuBaselineOpsPerCycle;
  const double base = speedup(baseline);
  for (double width : n_o) {
    for (unsigned lat : latency) {
      ConvSpec eff = layer;
      eff.n_o = width / static_cast<double>(lat);
      const double s = speedup(eff);
      const double xs = xornet_adjusted_speedup(eff);
      t.add_row({width, static_cast<std::int64_t>(lat), eff.n_o, s, relative_speedup(width, lat, layer), xs,
                 xs / base});
    }
  }
  out.table("speedup", t, format);

  Table d({"design", "technology", "extra_transistors", "latency_cycles", "n_o", "relative_speedup"});
  for (const auto& design : published_designs()) {
    for (double width : n_o) {
      d.add_row({std::string(design.name), std::string(design.technology),
                 static_cast<std::int64_t>(design.extra_transistors), static_cast<std::int64_t>(design.latency_cycles),
                 width, relative_speedup(width, design.latency_cycles, layer)});
    }
  }
  out.table("designs", d, format);

  log << "c=" << layer.c << " N_W=" << layer.n_w << " N_I=" << layer.n_i << "  CPU baseline speedup "
      << std::setprecision(6) << base << '\n';
  for (double width : n_o) {
    log << "  N_O " << std::setw(6) << width;
    for (unsigned lat : latency) log << "  " << lat << "-cycle " << std::setw(9) << relative_speedup(width, lat, layer);
    log << '\n';
  }

  json params{{"c", layer.c}, {"n_w", layer.n_w}, {"n_i", layer.n_i}, {"baseline_n_o", kCpuBaselineOpsPerCycle},
              {"xornet_reduction", kXorNetFullPrecisionReduction}};
  out.manifest(std::move(params),
               json{{"n_o", std::vector<double>(n_o.begin(), n_o.end())},
                    {"latency", std::vector<unsigned>(latency.begin(), latency.end())},
                    {"format", to_string(format)}},
               std::nullopt);
}

}  // namespace xorcim
