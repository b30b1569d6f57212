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
#include <limits>
#include <span>
#include <string_view>
#include <optional>
#include <vector>

#include "xorcim/device.hpp"
#include "xorcim/sense.hpp"

namespace xorcim {

/// Returned by max_rows when unaccessed cells do not leak at all.
inline constexpr std::size_t kNoLeakageLimit = std::numeric_limits<std::size_t>::max();

/// Largest column height N (two accessed rows, N - 2 unaccessed) for which
/// every accessed pattern still senses correctly with `margin` to spare when
/// the unaccessed rows take their worst-case contents.
///
/// A '00' or '01' column must stay at or below its upper threshold with every
/// unaccessed cell leaking as much as possible; '01' and '11' must stay above
/// their lower threshold with the least leakage. Throws NoValidReference if
/// the two-row column already misclassifies.
std::size_t max_rows(const DeviceParams& params, const SenseConfig& cfg, Amps margin = 0.0);

enum class VaryState { Lrs, Hrs };

std::string_view to_string(VaryState v) noexcept;
std::optional<VaryState> parse_vary_state(std::string_view name);

/// Device parameters at on/off ratio R_HRS/R_LRS = `ratio`, obtained by
/// moving only the `vary` resistance. That state's leakage follows
/// V_bl / (R + R_path), with R_path fixed so the nominal leakage is
/// reproduced at the nominal resistance.
DeviceParams rescale_for_ratio(const DeviceParams& params, double ratio, VaryState vary);

struct RatioPoint {
  double ratio;
  std::size_t max_rows;
};

/// References are re-chosen at mid-gap for each point.
std::vector<RatioPoint> sweep_on_off_ratio(std::span<const double> ratios, const DeviceParams& params,
                                           VaryState vary);

struct SenseMargins {
  Amps low;
  Amps high;
};

SenseMargins sense_margin(const CurrentLevels& levels, const SenseConfig& cfg);

struct NodeVoltages {
  Volts v_ncell;
  Volts v_nref;
};

/// Load-line view of the current sense amplifier: each node sits at
/// v_dd - I * r_load, clamped to the rails.
NodeVoltages node_voltages(Amps i_sl, Amps i_ref, Volts v_dd, Ohms r_load);

}  // namespace xorcim
