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
#include <string>

#include "xorcim/array.hpp"
#include "xorcim/device.hpp"
#include "xorcim/monte_carlo.hpp"
#include "xorcim/sense.hpp"

namespace xorcim {

enum class OutputFormat { Csv, Json };

std::string_view to_string(OutputFormat f) noexcept;
std::optional<OutputFormat> parse_output_format(std::string_view name);

/// Sense request: a named operation (or memory READ) with optional explicit
/// references, offsets, and composition overrides.
struct SenseSpec {
  std::optional<LogicOp> op;  // empty with `read == false` means a fully explicit config
  bool read = false;
  std::optional<Amps> i_ref1;
  std::optional<Amps> i_ref2;
  Amps offset1 = 0.0;
  Amps offset2 = 0.0;
  std::optional<Composition> composition;
  Amps read_ref = kDefaultReadReference;
};

struct Scenario {
  DeviceParams device = DeviceParams::defaults();
  Amps calibration_current = kNominalLrsReadCurrent;
  bool r_on_explicit = false;

  BitMatrix bits;
  std::string bits_file;  // empty when the matrix is inline
  std::size_t row_a = 0;
  std::size_t row_b = 1;

  SenseSpec sense;
  std::optional<VariationSpec> variation;

  std::string output_dir = "out";
  OutputFormat format = OutputFormat::Csv;

  /// Built-in 3x3 XOR scenario (rows 110/100/000, refs 4 uA / 12 uA).
  static Scenario reference_3x3();

  /// Checks cross-field invariants; throws Config.
  void validate() const;
};

/// Flat `key = value` text with dotted section names; '#' starts a comment.
/// Relative file paths resolve against `base_dir`.
Scenario parse_scenario(std::istream& in, const std::string& base_dir = ".");
Scenario load_scenario(const std::string& path);

/// Writes a fully resolved scenario that parses back to the same runs.
void write_scenario(std::ostream& out, const Scenario& s);

/// The sense-amplifier configuration a compute run uses. Throws Config for
/// READ scenarios.
SenseConfig resolve_sense(const Scenario& s);

/// Nominal levels for this scenario's column height with HRS bystanders.
CurrentLevels scenario_levels(const Scenario& s);

}  // namespace xorcim
