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

#include "xorcim/units.hpp"

namespace xorcim {

/// One crossbar cell. `bit == true` is the set (LRS) state.
struct CellRecord {
  bool bit = false;
  Ohms resistance = 0.0;
};

inline constexpr Amps kNominalLrsReadCurrent = 7.87e-6;

/// Calibration constants for the ReRAM cell and its access transistor.
///
/// Unaccessed-cell leakage is carried as two per-state constants rather than
/// an off-resistance; the access-device on-resistance is the series term that
/// maps the LRS read current onto the calibration target.
struct DeviceParams {
  Ohms r_lrs = 10e3;
  Ohms r_hrs = 3e9;
  Ohms r_on_access = 0.0;
  Amps leak_unaccessed_lrs = 774e-12;
  Amps leak_unaccessed_hrs = 28e-12;
  Volts v_bl_precharge = 0.1;
  Volts v_write_set = 0.4;
  Volts v_write_reset = -0.15;

  /// Defaults with r_on_access calibrated so an accessed LRS cell draws 7.87 uA.
  static DeviceParams defaults();

  Ohms resistance_for(bool bit) const noexcept { return bit ? r_lrs : r_hrs; }
  Amps leakage_for(bool bit) const noexcept { return bit ? leak_unaccessed_lrs : leak_unaccessed_hrs; }

  /// Throws InvalidParameter when an invariant does not hold.
  void validate() const;

  bool operator==(const DeviceParams&) const = default;
};

CellRecord make_cell(bool bit, const DeviceParams& params);

/// Accessed: v_bl / (R_cell + R_on). Unaccessed: the per-state leakage constant.
Amps cell_current(const CellRecord& cell, const DeviceParams& params, bool accessed);

/// Series resistance that makes an accessed LRS cell conduct exactly `target_current`.
Ohms calibrate_access_resistance(Amps target_current, Volts v_bl, Ohms r_lrs);

}  // namespace xorcim
