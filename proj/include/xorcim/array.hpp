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
#include <string>
#include <vector>

#include "xorcim/device.hpp"
#include "xorcim/sense.hpp"

namespace xorcim {

/// Dense row-major matrix of stored bits.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols, bool fill = false)
      : rows_(rows), cols_(cols), bits_(rows * cols, fill ? 1 : 0) {}

  /// Each string is one row of '0'/'1' characters.
  static BitMatrix from_rows(const std::vector<std::string>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool at(std::size_t r, std::size_t c) const { return bits_[r * cols_ + c] != 0; }
  void set(std::size_t r, std::size_t c, bool v) { bits_[r * cols_ + c] = v ? 1 : 0; }

  bool operator==(const BitMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Plain-text bit matrix: one row per line, '0'/'1' characters. Blank lines
/// and lines starting with '#' are ignored.
BitMatrix read_bit_matrix(std::istream& in);
BitMatrix load_bit_matrix(const std::string& path);
void write_bit_matrix(std::ostream& out, const BitMatrix& bits);
void save_bit_matrix(const std::string& path, const BitMatrix& bits);

enum class BiasMode { MemoryWrite, MemoryRead, Compute };

struct BiasVector {
  std::vector<bool> wl_asserted;
  std::vector<Volts> v_bl;
  BiasMode mode = BiasMode::Compute;

  static BiasVector compute(std::size_t rows, std::size_t cols, std::size_t row_a, std::size_t row_b,
                            const DeviceParams& params);
  static BiasVector read(std::size_t rows, std::size_t cols, std::size_t row, const DeviceParams& params);
  /// Target column driven to the set/reset level, the rest held at precharge.
  static BiasVector write(std::size_t rows, std::size_t cols, std::size_t row, std::size_t col, bool bit,
                          const DeviceParams& params);

  std::size_t asserted_count() const;
  void validate(std::size_t rows, std::size_t cols, const DeviceParams& params) const;
};

/// Crossbar contents plus the device model used to program it.
class ArrayState {
 public:
  /// All cells start in HRS.
  ArrayState(std::size_t rows, std::size_t cols, const DeviceParams& params);
  ArrayState(const BitMatrix& bits, const DeviceParams& params);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const DeviceParams& params() const noexcept { return params_; }

  const CellRecord& cell(std::size_t r, std::size_t c) const;
  /// Direct override, used to inject sampled resistances.
  void set_cell(std::size_t r, std::size_t c, const CellRecord& cell);

  BitMatrix bits() const;

  /// Number of compute cycles issued against this array.
  std::uint64_t cycle_count() const noexcept { return cycles_; }

 private:
  friend void apply_write_bias(ArrayState&, const BiasVector&);
  friend std::vector<bool> compute_cycle(ArrayState&, std::size_t, std::size_t, const SenseConfig&,
                                         const DeviceParams&, std::vector<Amps>*);

  void check_bounds(std::size_t r, std::size_t c) const;
  CellRecord& mutable_cell(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }

  std::size_t rows_;
  std::size_t cols_;
  DeviceParams params_;
  std::vector<CellRecord> cells_;
  std::uint64_t cycles_ = 0;
};

/// Applies the threshold write rule to every cell: a cell switches only when
/// its word line is asserted and its bit line reaches a write level.
void apply_write_bias(ArrayState& array, const BiasVector& bias);

void write_bit(ArrayState& array, std::size_t row, std::size_t col, bool bit);

/// Separable read-reference window for a column of `rows` cells: worst-case
/// accessed-HRS current (all other rows LRS leakage) to best-case accessed-LRS
/// current (all other rows HRS leakage).
struct ReadWindow {
  Amps low;
  Amps high;
};
ReadWindow read_window(std::size_t rows, const DeviceParams& params);

inline constexpr Amps kDefaultReadReference = 2e-6;

bool read_bit(const ArrayState& array, std::size_t row, std::size_t col, const DeviceParams& params,
              Amps read_ref = kDefaultReadReference);

Amps column_current(const ArrayState& array, const BiasVector& bias, std::size_t col, const DeviceParams& params);

/// One sense evaluation per column with rows `row_a` and `row_b` asserted.
/// Increments the array cycle counter by exactly one. Sense-line currents are
/// written to `currents` when non-null.
std::vector<bool> compute_cycle(ArrayState& array, std::size_t row_a, std::size_t row_b, const SenseConfig& cfg,
                                const DeviceParams& params, std::vector<Amps>* currents = nullptr);

/// Nominal accessed-pair column currents with `unaccessed_rows` extra cells
/// in state `unaccessed_bit` leaking into the column.
CurrentLevels nominal_levels(const DeviceParams& params, std::size_t unaccessed_rows = 0,
                             bool unaccessed_bit = false);

}  // namespace xorcim
