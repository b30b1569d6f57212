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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xorcim/analysis.hpp"
#include "xorcim/bnn.hpp"
#include "xorcim/error.hpp"
#include "xorcim/scenario.hpp"

namespace xorcim {

inline constexpr std::string_view kToolName = "xorcim";
std::string_view tool_version() noexcept;

/// Process exit code for an error: 2 for configuration problems, 3 when the
/// simulation itself is infeasible, 1 otherwise.
int exit_code_for(ErrorCode code) noexcept;

struct RunOptions {
  std::optional<std::string> out_dir;  // overrides the scenario's output.dir
  std::optional<OutputFormat> format;
  std::optional<std::uint64_t> seed;
  std::size_t bins = kDefaultHistogramBins;
  unsigned workers = 1;
  std::ostream* log = nullptr;  // human-readable progress, may be null
};

/// Per-column currents and logic outputs for one compute cycle (or a memory
/// read of every cell for READ scenarios), plus the truth table.
void cmd_sim(const Scenario& scenario, const RunOptions& opts);

/// max_rows against on/off ratio, one series per varied state.
void cmd_scale(const Scenario& scenario, std::span<const double> ratios, std::span<const VaryState> vary,
               const RunOptions& opts);

/// Monte Carlo samples, histograms and summary.
void cmd_mc(const Scenario& scenario, const RunOptions& opts);

struct BnnOptions {
  std::string input_path;
  std::string filters_path;
  std::size_t array_cols = 64;
  unsigned latency_cycles = 1;
  std::size_t pool = 2;  // max-pool window; 0 or 1 disables pooling
};

/// One XNOR-Net convolution block: batch norm and binarization in software,
/// the binary convolution on the simulated array and by the direct oracle.
void cmd_bnn(const Scenario& scenario, const BnnOptions& bnn, const RunOptions& opts);

/// Speedup sweep over array width and cycle latency.
void cmd_speedup(const ConvSpec& layer, std::span<const double> n_o, std::span<const unsigned> latency,
                 const RunOptions& opts);

/// Latency column of the published comparison table.
struct DesignLatency {
  std::string_view name;
  std::string_view technology;
  int extra_transistors;  // -1 where not applicable
  unsigned latency_cycles;
};
std::span<const DesignLatency> published_designs() noexcept;

std::vector<double> default_ratios();
std::vector<double> default_widths();

// Software stages of the convolution block that run outside the array.
RealTensor batch_normalize(const RealTensor& t, double eps = 1e-5);
RealTensor max_pool(const ConvOutput& conv, std::size_t window);

}  // namespace xorcim
