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

#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xorcim/xorcim.h"

namespace {

struct Common {
  std::string scenario;
  std::optional<std::string> out;
  std::string format;
  std::optional<uint64_t> seed;
  size_t bins = 100;
  unsigned workers = 1;
  bool quiet = false;
};

int report(xcim_status st) {
  if (st != XCIM_OK) std::fprintf(stderr, "error: %s: %s\n", xcim_status_name(st), xcim_last_error());
  return xcim_exit_code(st);
}

xcim_run_options to_options(const Common& c) {
  xcim_run_options o{};
  o.out_dir = c.out ? c.out->c_str() : nullptr;
  o.format = c.format == "json" ? XCIM_FORMAT_JSON : c.format == "csv" ? XCIM_FORMAT_CSV : XCIM_FORMAT_DEFAULT;
  o.has_seed = c.seed.has_value();
  o.seed = c.seed.value_or(0);
  o.bins = c.bins;
  o.workers = c.workers;
  o.quiet = c.quiet;
  return o;
}

void add_common(CLI::App* sub, Common& c, bool with_scenario) {
  if (with_scenario) sub->add_option("--scenario", c.scenario, "Scenario file (default: built-in 3x3 XOR array)");
  sub->add_option("--out", c.out, "Output directory (overrides output.dir)");
  sub->add_option("--format", c.format, "Table format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--quiet,-q", c.quiet, "Suppress the log on stdout");
}

// Loads the scenario named on the command line, or the built-in default.
xcim_status open_scenario(const Common& c, xcim_scenario** out) {
  if (c.scenario.empty()) return xcim_scenario_default(out);
  return xcim_scenario_load(c.scenario.c_str(), out);
}

template <class F>
int with_scenario(const Common& c, F&& body) {
  xcim_scenario* sc = nullptr;
  xcim_status st = open_scenario(c, &sc);
  if (st == XCIM_OK) st = body(sc);
  xcim_scenario_destroy(sc);
  return report(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crossbar compute-in-memory simulator for single-cycle XOR/XNOR"};
  app.set_version_flag("--version", std::string(xcim_version()));
  app.require_subcommand(1);

  Common sim_c, scale_c, mc_c, bnn_c, sp_c;

  auto* sim = app.add_subcommand("sim", "Functional check: one compute cycle, per-column currents, outputs and truth table");
  add_common(sim, sim_c, true);

  auto* scale = app.add_subcommand("scale", "Scalability: row limit against the memristor on/off ratio");
  add_common(scale, scale_c, true);
  std::vector<double> ratios;
  std::vector<std::string> vary;
  scale->add_option("--ratios", ratios, "On/off ratios to evaluate (default 10..1e6)")->delimiter(',');
  scale->add_option("--vary", vary, "State whose resistance changes: lrs, hrs")
      ->delimiter(',')
      ->check(CLI::IsMember({"lrs", "hrs"}));

  auto* mc = app.add_subcommand("mc", "Variation: Monte Carlo current and sense-node histograms");
  add_common(mc, mc_c, true);
  mc->add_option("--seed", mc_c.seed, "Override variation.seed");
  mc->add_option("--bins", mc_c.bins, "Histogram bins")->check(CLI::PositiveNumber);
  mc->add_option("--workers", mc_c.workers, "Worker threads (results do not depend on this)")
      ->check(CLI::PositiveNumber);

  auto* bnn = app.add_subcommand("bnn", "Application: one XNOR-Net convolution block on the simulated array");
  add_common(bnn, bnn_c, true);
  std::string input_path, filters_path;
  size_t array_cols = 64, pool = 2;
  unsigned bnn_latency = 1;
  bnn->add_option("--input", input_path, "Input tensor file (h w c header)")->required();
  bnn->add_option("--filters", filters_path, "Filter set file (n h w c header)")->required();
  bnn->add_option("--array-cols", array_cols, "Array width used per compute cycle")->check(CLI::PositiveNumber);
  bnn->add_option("--latency", bnn_latency, "Clock cycles per XNOR")->check(CLI::PositiveNumber);
  bnn->add_option("--pool", pool, "Max-pool window (0 or 1 disables)");

  auto* sp = app.add_subcommand("speedup", "Application: XNOR-convolution speedup over the CPU baseline by width and latency");
  add_common(sp, sp_c, false);
  double c = 256, nw = 196, ni = 9;
  std::vector<double> n_o;
  std::vector<unsigned> latency;
  sp->add_option("--c", c, "Input channels")->check(CLI::PositiveNumber);
  sp->add_option("--nw", nw, "Filter size (weights per channel)")->check(CLI::PositiveNumber);
  sp->add_option("--ni", ni, "Input size (positions per channel)")->check(CLI::PositiveNumber);
  sp->add_option("--no", n_o, "Parallel XNOR operations per cycle (default 64..4096)")->delimiter(',');
  sp->add_option("--latency", latency, "Cycles per XNOR (default 1,2,3)")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed()) {
    const auto o = to_options(sim_c);
    return with_scenario(sim_c, [&](xcim_scenario* sc) { return xcim_cmd_sim(sc, &o); });
  }
  if (scale->parsed()) {
    const auto o = to_options(scale_c);
    std::vector<xcim_vary> v;
    for (const auto& s : vary) v.push_back(s == "lrs" ? XCIM_VARY_LRS : XCIM_VARY_HRS);
    return with_scenario(scale_c, [&](xcim_scenario* sc) {
      return xcim_cmd_scale(sc, ratios.empty() ? nullptr : ratios.data(), ratios.size(),
                            v.empty() ? nullptr : v.data(), v.size(), &o);
    });
  }
  if (mc->parsed()) {
    const auto o = to_options(mc_c);
    return with_scenario(mc_c, [&](xcim_scenario* sc) { return xcim_cmd_mc(sc, &o); });
  }
  if (bnn->parsed()) {
    const auto o = to_options(bnn_c);
    return with_scenario(bnn_c, [&](xcim_scenario* sc) {
      return xcim_cmd_bnn(sc, input_path.c_str(), filters_path.c_str(), array_cols, bnn_latency, pool, &o);
    });
  }
  if (sp->parsed()) {
    auto o = to_options(sp_c);
    if (!o.out_dir) o.out_dir = "out";
    return report(xcim_cmd_speedup(c, nw, ni, n_o.empty() ? nullptr : n_o.data(), n_o.size(),
                                   latency.empty() ? nullptr : latency.data(), latency.size(), &o));
  }
  return 2;
}
