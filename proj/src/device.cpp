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

#include "xorcim/device.hpp"

#include <cmath>
#include <string>

#include "xorcim/error.hpp"

namespace xorcim {

DeviceParams DeviceParams::defaults() {
  DeviceParams p;
  p.r_on_access = calibrate_access_resistance(kNominalLrsReadCurrent, p.v_bl_precharge, p.r_lrs);
  return p;
}

void DeviceParams::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!(finite(r_lrs) && finite(r_hrs) && finite(r_on_access) && finite(leak_unaccessed_lrs) &&
        finite(leak_unaccessed_hrs) && finite(v_bl_precharge) && finite(v_write_set) &&
        finite(v_write_reset))) {
    fail(ErrorCode::InvalidParameter, "device parameters must be finite");
  }
  if (!(r_lrs > 0.0)) fail(ErrorCode::InvalidParameter, "r_lrs must be positive");
  if (!(r_hrs > r_lrs)) fail(ErrorCode::InvalidParameter, "r_hrs must exceed r_lrs");
  if (r_on_access < 0.0) fail(ErrorCode::InvalidParameter, "r_on_access must be non-negative");
  if (!(leak_unaccessed_hrs >= 0.0 && leak_unaccessed_lrs >= leak_unaccessed_hrs)) {
    fail(ErrorCode::InvalidParameter, "leakage must satisfy leak_lrs >= leak_hrs >= 0");
  }
  if (!(v_write_set > v_bl_precharge && v_bl_precharge > 0.0 && v_write_reset < 0.0)) {
    fail(ErrorCode::InvalidParameter,
         "bias voltages must satisfy v_write_set > v_bl_precharge > 0 > v_write_reset");
  }
}

CellRecord make_cell(bool bit, const DeviceParams& params) { return {bit, params.resistance_for(bit)}; }

Amps cell_current(const CellRecord& cell, const DeviceParams& params, bool accessed) {
  if (!(cell.resistance > 0.0)) {
    fail(ErrorCode::InvalidParameter,
         "cell resistance must be positive, got " + std::to_string(cell.resistance));
  }
  if (!accessed) return params.leakage_for(cell.bit);
  if (params.r_on_access < 0.0) fail(ErrorCode::InvalidParameter, "r_on_access must be non-negative");
  if (params.v_bl_precharge <= 0.0) return 0.0;
  return params.v_bl_precharge / (cell.resistance + params.r_on_access);
}

Ohms calibrate_access_resistance(Amps target_current, Volts v_bl, Ohms r_lrs) {
  if (!(target_current > 0.0) || !(v_bl > 0.0) || !(r_lrs > 0.0)) {
    fail(ErrorCode::InvalidParameter, "calibration needs positive current, bias and resistance");
  }
  const Ohms total = v_bl / target_current;
  if (!(total > r_lrs)) {
    fail(ErrorCode::InfeasibleCalibration,
         "target current needs a series resistance <= 0 (v_bl/target <= r_lrs)");
  }
  return total - r_lrs;
}

}  // namespace xorcim
