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

#include "xorcim/sense.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "xorcim/error.hpp"

namespace xorcim {
namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

}  // namespace

SenseConfig SenseConfig::xor_preset(Amps i_ref1, Amps i_ref2) {
  SenseConfig cfg;
  cfg.i_ref1 = i_ref1;
  cfg.i_ref2 = i_ref2;
  cfg.composition = {false, true, Gate::And, false};
  return cfg;
}

SenseConfig SenseConfig::xnor_preset(Amps i_ref1, Amps i_ref2) {
  SenseConfig cfg = xor_preset(i_ref1, i_ref2);
  cfg.composition.invert_out = true;
  return cfg;
}

void SenseConfig::validate() const {
  if (!(std::isfinite(i_ref1) && std::isfinite(i_ref2) && i_ref1 > 0.0 && i_ref2 > 0.0)) {
    fail(ErrorCode::InvalidParameter, "reference currents must be positive");
  }
  if (!std::isfinite(offset1) || !std::isfinite(offset2)) {
    fail(ErrorCode::InvalidParameter, "comparator offsets must be finite");
  }
}

void CurrentLevels::validate() const {
  if (!(std::isfinite(i00) && std::isfinite(i11) && i00 >= 0.0 && i00 < i01 && i01 < i11)) {
    fail(ErrorCode::NoValidReference, "current levels must satisfy 0 <= i00 < i01 < i11");
  }
}

std::string_view to_string(LogicOp op) noexcept {
  switch (op) {
    case LogicOp::Xor: return "XOR";
    case LogicOp::Xnor: return "XNOR";
    case LogicOp::And: return "AND";
    case LogicOp::Nand: return "NAND";
    case LogicOp::Or: return "OR";
    case LogicOp::Nor: return "NOR";
  }
  return "?";
}

std::string_view to_string(Gate gate) noexcept {
  switch (gate) {
    case Gate::And: return "AND";
    case Gate::Or: return "OR";
    case Gate::Nand: return "NAND";
    case Gate::Nor: return "NOR";
  }
  return "?";
}

std::optional<LogicOp> parse_logic_op(std::string_view name) {
  const auto key = upper(name);
  for (auto op : kAllLogicOps) {
    if (key == to_string(op)) return op;
  }
  return std::nullopt;
}

std::optional<Gate> parse_gate(std::string_view name) {
  const auto key = upper(name);
  for (auto gate : {Gate::And, Gate::Or, Gate::Nand, Gate::Nor}) {
    if (key == to_string(gate)) return gate;
  }
  return std::nullopt;
}

bool apply_gate(Gate gate, bool a, bool b) noexcept {
  switch (gate) {
    case Gate::And: return a && b;
    case Gate::Or: return a || b;
    case Gate::Nand: return !(a && b);
    case Gate::Nor: return !(a || b);
  }
  return false;
}

bool apply_logic(LogicOp op, bool a, bool b) noexcept {
  switch (op) {
    case LogicOp::Xor: return a != b;
    case LogicOp::Xnor: return a == b;
    case LogicOp::And: return a && b;
    case LogicOp::Nand: return !(a && b);
    case LogicOp::Or: return a || b;
    case LogicOp::Nor: return !(a || b);
  }
  return false;
}

bool comparator(Amps i_sl, Amps i_ref, Amps offset) noexcept { return i_sl > i_ref + offset; }

bool sense(Amps i_sl, const SenseConfig& cfg) {
  const auto& comp = cfg.composition;
  const bool a = comparator(i_sl, cfg.i_ref1, cfg.offset1) != comp.invert_a;
  const bool b = comparator(i_sl, cfg.i_ref2, cfg.offset2) != comp.invert_b;
  return apply_gate(comp.gate, a, b) != comp.invert_out;
}

ReferencePair choose_references(const CurrentLevels& levels, double placement, Amps worst_case_leak_span) {
  levels.validate();
  if (!(placement > 0.0 && placement < 1.0)) {
    fail(ErrorCode::InvalidParameter, "reference placement must lie in (0, 1)");
  }
  if (!(worst_case_leak_span >= 0.0)) {
    fail(ErrorCode::InvalidParameter, "leak span must be non-negative");
  }
  const Amps low_floor = levels.i00 + worst_case_leak_span;
  const Amps high_floor = levels.i01 + worst_case_leak_span;
  if (!(low_floor < levels.i01)) {
    fail(ErrorCode::NoValidReference, "leakage closes the '00'/'01' gap");
  }
  if (!(high_floor < levels.i11)) {
    fail(ErrorCode::NoValidReference, "leakage closes the '01'/'11' gap");
  }
  ReferencePair refs{low_floor + placement * (levels.i01 - low_floor),
                     high_floor + placement * (levels.i11 - high_floor)};
  if (!(levels.i00 < refs.i_ref1 && refs.i_ref1 < levels.i01 && levels.i01 < refs.i_ref2 &&
        refs.i_ref2 < levels.i11)) {
    fail(ErrorCode::NoValidReference, "references collapse onto a current level");
  }
  return refs;
}

SenseConfig logic_config(LogicOp op, const CurrentLevels& levels) {
  const auto refs = choose_references(levels, 0.5, 0.0);
  SenseConfig cfg;
  switch (op) {
    case LogicOp::Xor:
    case LogicOp::Xnor:
      cfg = SenseConfig::xor_preset(refs.i_ref1, refs.i_ref2);
      break;
    case LogicOp::And:
    case LogicOp::Nand:
      cfg.i_ref1 = refs.i_ref2;
      cfg.i_ref2 = refs.i_ref2;
      cfg.composition = {};
      break;
    case LogicOp::Or:
    case LogicOp::Nor:
      cfg.i_ref1 = refs.i_ref1;
      cfg.i_ref2 = refs.i_ref1;
      cfg.composition = {};
      break;
  }
  cfg.composition.invert_out = (op == LogicOp::Xnor || op == LogicOp::Nand || op == LogicOp::Nor);
  return cfg;
}

TruthTable truth_table(const SenseConfig& cfg, const CurrentLevels& levels) {
  const std::array<Amps, 4> currents{levels.i00, levels.i01, levels.i01, levels.i11};
  TruthTable table{};
  for (std::size_t k = 0; k < 4; ++k) {
    table[k] = {(k & 2) != 0, (k & 1) != 0, currents[k], sense(currents[k], cfg)};
  }
  return table;
}

}  // namespace xorcim
