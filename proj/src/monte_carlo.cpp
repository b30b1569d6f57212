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

#include "xorcim/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "xorcim/analysis.hpp"
#include "xorcim/error.hpp"

namespace xorcim {
namespace {

constexpr double kTruncationSigmas = 4.0;
constexpr Ohms kResistanceFloor = 1.0;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Ohms sample_resistance(Ohms mean, double r_sigma_fraction, std::mt19937_64& rng) {
  const double sigma = mean * r_sigma_fraction / 3.0;
  if (sigma <= 0.0) return mean;
  std::normal_distribution<double> z(0.0, 1.0);
  double d = z(rng);
  while (std::abs(d) > kTruncationSigmas) d = z(rng);
  return std::max(kResistanceFloor, mean + sigma * d);
}

// Everything one trial produces, before it is merged into the report.
struct TrialResult {
  std::vector<McSample> samples;
};

TrialResult run_trial(std::size_t trial, const McLayout& layout, const VariationSpec& spec,
                      const DeviceParams& params, const SenseConfig& cfg) {
  std::mt19937_64 rng(trial_seed(spec.seed, trial));
  const auto& bits = layout.bits;

  ArrayState array(bits, params);
  for (std::size_t r = 0; r < bits.rows(); ++r) {
    for (std::size_t c = 0; c < bits.cols(); ++c) {
      const bool bit = bits.at(r, c);
      array.set_cell(r, c, {bit, sample_resistance(params.resistance_for(bit), spec.r_sigma_fraction, rng)});
    }
  }

  const double offset_sigma = spec.gm_eff * spec.vth_sigma;
  std::normal_distribution<double> offset(0.0, 1.0);
  std::vector<SenseConfig> per_column(bits.cols(), cfg);
  for (auto& col_cfg : per_column) {
    col_cfg.offset1 = cfg.offset1 + offset_sigma * offset(rng);
    col_cfg.offset2 = cfg.offset2 + offset_sigma * offset(rng);
  }

  const auto bias = BiasVector::compute(bits.rows(), bits.cols(), layout.row_a, layout.row_b, params);
  TrialResult result;
  result.samples.reserve(bits.cols());
  for (std::size_t c = 0; c < bits.cols(); ++c) {
    const bool a = bits.at(layout.row_a, c);
    const bool b = bits.at(layout.row_b, c);
    const auto& col_cfg = per_column[c];
    McSample s;
    s.trial = trial;
    s.column = c;
    s.pattern = pattern_of(a, b);
    s.i_sl = column_current(array, bias, c, params);
    s.output = sense(s.i_sl, col_cfg);
    const auto v1 = node_voltages(s.i_sl, col_cfg.i_ref1 + col_cfg.offset1, spec.node_vdd, spec.node_r_load);
    const auto v2 = node_voltages(s.i_sl, col_cfg.i_ref2 + col_cfg.offset2, spec.node_vdd, spec.node_r_load);
    s.v_ncell = v1.v_ncell;
    s.v_nref1 = v1.v_nref;
    s.v_nref2 = v2.v_nref;
    result.samples.push_back(s);
  }
  return result;
}

}  // namespace

void VariationSpec::validate() const {
  if (!(r_sigma_fraction >= 0.0) || !(vth_sigma >= 0.0) || !(gm_eff >= 0.0)) {
    fail(ErrorCode::InvalidParameter, "variation sigmas must be non-negative");
  }
  if (n_trials < 1) fail(ErrorCode::InvalidParameter, "n_trials must be at least 1");
  if (!(node_vdd > 0.0) || !(node_r_load > 0.0)) {
    fail(ErrorCode::InvalidParameter, "sense-node v_dd and r_load must be positive");
  }
}

Pattern pattern_of(bool a, bool b) noexcept {
  if (a && b) return Pattern::P11;
  if (a || b) return Pattern::P01;
  return Pattern::P00;
}

McLayout McLayout::reference_3x3() {
  return {BitMatrix::from_rows({"110", "100", "000"}), 0, 1};
}

void McLayout::validate() const {
  if (bits.rows() < 2 || bits.cols() < 1) {
    fail(ErrorCode::InvalidParameter, "compute layout needs at least two rows and one column");
  }
  if (row_a >= bits.rows() || row_b >= bits.rows()) fail(ErrorCode::OutOfBounds, "compute row out of range");
  if (row_a == row_b) fail(ErrorCode::InvalidParameter, "compute rows must differ");
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept {
  return splitmix64(splitmix64(seed) ^ trial);
}

McReport monte_carlo(const McLayout& layout, const VariationSpec& spec, const DeviceParams& params,
                     const SenseConfig& cfg, unsigned workers) {
  layout.validate();
  spec.validate();
  params.validate();
  cfg.validate();

  // Ground truth is the configured function on the nominal levels for this
  // column height with the actual bystander rows.
  std::vector<bool> expected(layout.bits.cols());
  {
    ArrayState nominal(layout.bits, params);
    expected = compute_cycle(nominal, layout.row_a, layout.row_b, cfg, params);
  }

  std::vector<TrialResult> trials(spec.n_trials);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(spec.n_trials)));
  if (workers == 1) {
    for (std::size_t t = 0; t < spec.n_trials; ++t) trials[t] = run_trial(t, layout, spec, params, cfg);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < spec.n_trials; t += workers) trials[t] = run_trial(t, layout, spec, params, cfg);
      });
    }
  }

  McReport report;
  report.seed = spec.seed;
  report.n_trials = spec.n_trials;
  report.samples.reserve(spec.n_trials * layout.bits.cols());
  for (auto& trial : trials) {
    for (auto& s : trial.samples) {
      s.expected = expected[s.column];
      report.currents[static_cast<std::size_t>(s.pattern)].push_back(s.i_sl);
      report.v_ncell.push_back(s.v_ncell);
      report.v_nref1.push_back(s.v_nref1);
      report.v_nref2.push_back(s.v_nref2);
      if (s.output != s.expected) ++report.failure_count;
      report.samples.push_back(s);
    }
  }
  report.evaluations = report.samples.size();
  report.failure_rate =
      report.evaluations ? static_cast<double>(report.failure_count) / static_cast<double>(report.evaluations) : 0.0;
  return report;
}

SeriesStats stats_of(const std::vector<double>& xs) {
  SeriesStats st;
  st.count = xs.size();
  if (xs.empty()) return st;
  double sum = 0.0;
  for (double x : xs) sum += x;
  st.mean = sum / static_cast<double>(xs.size());
  double sq = 0.0;
  for (double x : xs) sq += (x - st.mean) * (x - st.mean);
  st.stddev = xs.size() > 1 ? std::sqrt(sq / static_cast<double>(xs.size() - 1)) : 0.0;
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  st.min = *lo;
  st.max = *hi;
  return st;
}

void write_samples_csv(std::ostream& out, const McReport& report) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << "trial,column,pattern,i_sl_A,v_ncell_V,v_nref1_V,v_nref2_V,output,expected\n";
  for (const auto& s : report.samples) {
    buf << s.trial << ',' << s.column << ',' << kPatternNames[static_cast<std::size_t>(s.pattern)] << ',' << s.i_sl
        << ',' << s.v_ncell << ',' << s.v_nref1 << ',' << s.v_nref2 << ',' << s.output << ',' << s.expected << '\n';
  }
  out << buf.str();
}

void write_histogram_csv(std::ostream& out, const McReport& report, std::size_t bins) {
  if (bins == 0) fail(ErrorCode::InvalidParameter, "histogram needs at least one bin");
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << "series,bin,lower,upper,count\n";
  auto emit = [&](std::string_view name, const std::vector<double>& xs) {
    if (xs.empty()) return;
    const auto st = stats_of(xs);
    const double width = (st.max - st.min) / static_cast<double>(bins);
    std::vector<std::size_t> counts(bins, 0);
    for (double x : xs) {
      std::size_t k = width > 0.0 ? static_cast<std::size_t>((x - st.min) / width) : 0;
      counts[std::min(k, bins - 1)]++;
    }
    for (std::size_t k = 0; k < bins; ++k) {
      buf << name << ',' << k << ',' << st.min + width * static_cast<double>(k) << ','
          << (k + 1 == bins ? st.max : st.min + width * static_cast<double>(k + 1)) << ',' << counts[k] << '\n';
    }
  };
  emit("i_00", report.currents[0]);
  emit("i_01", report.currents[1]);
  emit("i_11", report.currents[2]);
  emit("v_ncell", report.v_ncell);
  emit("v_nref1", report.v_nref1);
  emit("v_nref2", report.v_nref2);
  out << buf.str();
}

std::string summary_json(const McReport& report, int indent) {
  auto series = [](const std::vector<double>& xs) {
    const auto st = stats_of(xs);
    return nlohmann::ordered_json{{"count", st.count}, {"mean", st.mean}, {"stddev", st.stddev},
                                  {"min", st.min}, {"max", st.max}};
  };
  nlohmann::ordered_json j;
  j["seed"] = report.seed;
  j["n_trials"] = report.n_trials;
  j["evaluations"] = report.evaluations;
  j["failure_count"] = report.failure_count;
  j["failure_rate"] = report.failure_rate;
  j["currents"] = {{"00", series(report.currents[0])},
                   {"01", series(report.currents[1])},
                   {"11", series(report.currents[2])}};
  j["voltages"] = {{"n_cell", series(report.v_ncell)},
                   {"n_ref1", series(report.v_nref1)},
                   {"n_ref2", series(report.v_nref2)}};
  return j.dump(indent);
}

}  // namespace xorcim
