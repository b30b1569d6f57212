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

#include "xorcim/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "xorcim/array.hpp"
#include "xorcim/error.hpp"

namespace xorcim {
namespace {

// Count of unaccessed rows `base + k * leak <= limit` allows.
std::size_t rows_under(Amps limit, Amps base, Amps leak) {
  if (leak <= 0.0) return kNoLeakageLimit;
  const double k = std::floor((limit - base) / leak);
  if (k >= static_cast<double>(kNoLeakageLimit - 2)) return kNoLeakageLimit - 2;
  return static_cast<std::size_t>(k);
}

}  // namespace

std::size_t max_rows(const DeviceParams& params, const SenseConfig& cfg, Amps margin) {
  params.validate();
  cfg.validate();
  if (!(margin >= 0.0)) fail(ErrorCode::InvalidParameter, "margin must be non-negative");

  const Amps t1 = cfg.i_ref1 + cfg.offset1;
  const Amps t2 = cfg.i_ref2 + cfg.offset2;
  const auto levels = nominal_levels(params);
  const Amps leak_max = std::max(params.leak_unaccessed_lrs, params.leak_unaccessed_hrs);

  // Lower boundaries only get easier as rows are added, so they are checked
  // on the bare accessed pair.
  if (!(levels.i00 + margin <= t1) || !(levels.i01 - margin > t1) || !(levels.i01 + margin <= t2) ||
      !(levels.i11 - margin > t2)) {
    fail(ErrorCode::NoValidReference, "references do not separate the nominal levels with the requested margin");
  }

  const std::size_t unaccessed =
      std::min(rows_under(t1 - margin, levels.i00, leak_max), rows_under(t2 - margin, levels.i01, leak_max));
  if (unaccessed == kNoLeakageLimit) return kNoLeakageLimit;
  return unaccessed + 2;
}

std::string_view to_string(VaryState v) noexcept { return v == VaryState::Lrs ? "LRS" : "HRS"; }

std::optional<VaryState> parse_vary_state(std::string_view name) {
  std::string key(name);
  for (auto& ch : key) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (key == "LRS") return VaryState::Lrs;
  if (key == "HRS") return VaryState::Hrs;
  return std::nullopt;
}

DeviceParams rescale_for_ratio(const DeviceParams& params, double ratio, VaryState vary) {
  if (!(ratio > 1.0) || !std::isfinite(ratio)) {
    fail(ErrorCode::InvalidParameter, "on/off ratio must be finite and greater than 1");
  }
  DeviceParams out = params;
  const Volts v = params.v_bl_precharge;
  auto rescale_leak = [v](Amps leak, Ohms r_old, Ohms r_new) {
    if (leak <= 0.0 || r_new == r_old) return leak;
    const Ohms path = std::max(0.0, v / leak - r_old);
    return leak * (r_old + path) / (r_new + path);
  };
  if (vary == VaryState::Lrs) {
    out.r_lrs = params.r_hrs / ratio;
    out.leak_unaccessed_lrs = rescale_leak(params.leak_unaccessed_lrs, params.r_lrs, out.r_lrs);
  } else {
    out.r_hrs = params.r_lrs * ratio;
    out.leak_unaccessed_hrs = rescale_leak(params.leak_unaccessed_hrs, params.r_hrs, out.r_hrs);
  }
  return out;
}

std::vector<RatioPoint> sweep_on_off_ratio(std::span<const double> ratios, const DeviceParams& params,
                                           VaryState vary) {
  if (!std::is_sorted(ratios.begin(), ratios.end())) {
    fail(ErrorCode::InvalidParameter, "ratios must be sorted ascending");
  }
  std::vector<RatioPoint> out;
  out.reserve(ratios.size());
  for (double ratio : ratios) {
    const auto scaled = rescale_for_ratio(params, ratio, vary);
    const auto refs = choose_references(nominal_levels(scaled), 0.5, 0.0);
    out.push_back({ratio, max_rows(scaled, SenseConfig::xor_preset(refs.i_ref1, refs.i_ref2))});
  }
  return out;
}

SenseMargins sense_margin(const CurrentLevels& levels, const SenseConfig& cfg) {
  return {std::min(cfg.i_ref1 - levels.i00, levels.i01 - cfg.i_ref1),
          std::min(cfg.i_ref2 - levels.i01, levels.i11 - cfg.i_ref2)};
}

NodeVoltages node_voltages(Amps i_sl, Amps i_ref, Volts v_dd, Ohms r_load) {
  if (!(v_dd > 0.0) || !(r_load > 0.0)) fail(ErrorCode::InvalidParameter, "v_dd and r_load must be positive");
  auto node = [&](Amps i) { return std::clamp(v_dd - i * r_load, 0.0, v_dd); };
  return {node(i_sl), node(i_ref)};
}

}  // namespace xorcim
