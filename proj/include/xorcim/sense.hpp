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
#include <optional>
#include <string_view>

#include "xorcim/units.hpp"

namespace xorcim {

enum class Gate { And, Or, Nand, Nor };

/// How the two comparator bits become the sense output:
/// out = invert_out ^ gate(invert_a ^ a, invert_b ^ b).
struct Composition {
  bool invert_a = false;
  bool invert_b = false;
  Gate gate = Gate::And;
  bool invert_out = false;

  bool operator==(const Composition&) const = default;
};

/// Modified sense amplifier: two current comparators with their own
/// references and offsets, followed by the composition logic.
struct SenseConfig {
  Amps i_ref1 = 4e-6;
  Amps i_ref2 = 12e-6;
  Amps offset1 = 0.0;
  Amps offset2 = 0.0;
  Composition composition{false, true, Gate::And, false};

  static SenseConfig xor_preset(Amps i_ref1, Amps i_ref2);
  static SenseConfig xnor_preset(Amps i_ref1, Amps i_ref2);

  void validate() const;

  bool operator==(const SenseConfig&) const = default;
};

/// Nominal column currents for the accessed bit pairs '00', '01'/'10', '11'.
struct CurrentLevels {
  Amps i00 = 0.0;
  Amps i01 = 0.0;
  Amps i11 = 0.0;

  void validate() const;
};

enum class LogicOp { Xor, Xnor, And, Nand, Or, Nor };

inline constexpr std::array<LogicOp, 6> kAllLogicOps{LogicOp::Xor, LogicOp::Xnor, LogicOp::And,
                                                     LogicOp::Nand, LogicOp::Or, LogicOp::Nor};

std::string_view to_string(LogicOp op) noexcept;
std::string_view to_string(Gate gate) noexcept;
std::optional<LogicOp> parse_logic_op(std::string_view name);
std::optional<Gate> parse_gate(std::string_view name);

/// The Boolean function itself, for checking sensed results.
bool apply_logic(LogicOp op, bool a, bool b) noexcept;
bool apply_gate(Gate gate, bool a, bool b) noexcept;

/// 1 iff i_sl > i_ref + offset. Ties resolve to 0.
bool comparator(Amps i_sl, Amps i_ref, Amps offset) noexcept;

bool sense(Amps i_sl, const SenseConfig& cfg);

struct ReferencePair {
  Amps i_ref1;
  Amps i_ref2;
};

/// Places each reference at `placement` across its gap after lifting the
/// lower edge of the gap by `worst_case_leak_span`.
ReferencePair choose_references(const CurrentLevels& levels, double placement, Amps worst_case_leak_span);

/// Mid-gap references with the composition that realizes `op`.
SenseConfig logic_config(LogicOp op, const CurrentLevels& levels);

struct TruthRow {
  bool a;
  bool b;
  Amps current;
  bool output;
};
using TruthTable = std::array<TruthRow, 4>;

/// Rows in order 00, 01, 10, 11.
TruthTable truth_table(const SenseConfig& cfg, const CurrentLevels& levels);

}  // namespace xorcim
