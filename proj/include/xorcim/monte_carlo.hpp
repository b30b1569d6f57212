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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "xorcim/array.hpp"
#include "xorcim/device.hpp"
#include "xorcim/sense.hpp"

namespace xorcim {

/// Gaussian variation model. `r_sigma_fraction` is the 3-sigma spread as a
/// fraction of the mean resistance; Vth variation enters each comparator as
/// an input-referred current offset gm_eff * dVth.
struct VariationSpec {
  double r_sigma_fraction = 0.10;
  Volts vth_sigma = 0.025;
  double gm_eff = 20e-6;  // A/V
  std::size_t n_trials = 5000;
  std::uint64_t seed = 42;
  // Sense-node load line used for the n_CELL / n_REF view.
  Volts node_vdd = 0.8;
  Ohms node_r_load = 40e3;

  void validate() const;

  bool operator==(const VariationSpec&) const = default;
};

/// Accessed-pair clusters; '10' columns land in the '01' cluster.
enum class Pattern : std::size_t { P00 = 0, P01 = 1, P11 = 2 };
inline constexpr std::array<std::string_view, 3> kPatternNames{"00", "01", "11"};

Pattern pattern_of(bool a, bool b) noexcept;

/// Array contents and the two rows asserted for the compute cycle.
struct McLayout {
  BitMatrix bits;
  std::size_t row_a = 0;
  std::size_t row_b = 1;

  /// 3x3 layout with columns holding '11', '10', '00' and an HRS bystander row.
  static McLayout reference_3x3();
  void validate() const;
};

/// One sensed column in one trial.
struct McSample {
  std::size_t trial = 0;
  std::size_t column = 0;
  Pattern pattern = Pattern::P00;
  Amps i_sl = 0.0;
  Volts v_ncell = 0.0;
  Volts v_nref1 = 0.0;
  Volts v_nref2 = 0.0;
  bool output = false;
  bool expected = false;

  bool operator==(const McSample&) const = default;
};

struct McReport {
  std::uint64_t seed = 0;
  std::size_t n_trials = 0;
  std::vector<McSample> samples;  // trial-major, then column
  /// Sense-line currents per cluster, in sample order.
  std::array<std::vector<Amps>, 3> currents;
  std::vector<Volts> v_ncell;
  std::vector<Volts> v_nref1;
  std::vector<Volts> v_nref2;
  std::size_t evaluations = 0;
  std::size_t failure_count = 0;
  double failure_rate = 0.0;

  bool operator==(const McReport&) const = default;
};

/// Trial t draws from an RNG seeded by (seed, t) alone, so the report does
/// not depend on `workers`.
McReport monte_carlo(const McLayout& layout, const VariationSpec& spec, const DeviceParams& params,
                     const SenseConfig& cfg, unsigned workers = 1);

/// Seed of the RNG stream for one trial.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept;

struct SeriesStats {
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

SeriesStats stats_of(const std::vector<double>& xs);

inline constexpr std::size_t kDefaultHistogramBins = 100;

void write_samples_csv(std::ostream& out, const McReport& report);
/// One block per series, each binned over its own [min, max].
void write_histogram_csv(std::ostream& out, const McReport& report, std::size_t bins = kDefaultHistogramBins);
std::string summary_json(const McReport& report, int indent = 2);

}  // namespace xorcim
