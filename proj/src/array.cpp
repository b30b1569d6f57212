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

#include "xorcim/array.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "xorcim/error.hpp"

namespace xorcim {
namespace {

Amps sum_column(const ArrayState& array, const BiasVector& bias, std::size_t col, const DeviceParams& params) {
  DeviceParams driven = params;
  driven.v_bl_precharge = bias.v_bl[col];
  Amps total = 0.0;
  for (std::size_t r = 0; r < array.rows(); ++r) {
    total += cell_current(array.cell(r, col), driven, bias.wl_asserted[r]);
  }
  return total;
}

}  // namespace

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) fail(ErrorCode::Config, "bit matrix has no rows");
  const std::size_t cols = rows.front().size();
  if (cols == 0) fail(ErrorCode::Config, "bit matrix has an empty row");
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      fail(ErrorCode::Config, "bit matrix row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                                  " columns, expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const char ch = rows[r][c];
      if (ch != '0' && ch != '1') {
        fail(ErrorCode::Config, std::string("bit matrix contains '") + ch + "' at row " + std::to_string(r));
      }
      m.set(r, c, ch == '1');
    }
  }
  return m;
}

BitMatrix read_bit_matrix(std::istream& in) {
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    rows.push_back(line.substr(first, last - first + 1));
  }
  return BitMatrix::from_rows(rows);
}

BitMatrix load_bit_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open bit matrix file '" + path + "'");
  return read_bit_matrix(in);
}

void write_bit_matrix(std::ostream& out, const BitMatrix& bits) {
  for (std::size_t r = 0; r < bits.rows(); ++r) {
    for (std::size_t c = 0; c < bits.cols(); ++c) out << (bits.at(r, c) ? '1' : '0');
    out << '\n';
  }
}

void save_bit_matrix(const std::string& path, const BitMatrix& bits) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot write bit matrix file '" + path + "'");
  write_bit_matrix(out, bits);
}

// --- bias ---------------------------------------------------------------

BiasVector BiasVector::compute(std::size_t rows, std::size_t cols, std::size_t row_a, std::size_t row_b,
                               const DeviceParams& params) {
  if (row_a >= rows || row_b >= rows) fail(ErrorCode::OutOfBounds, "compute row index out of range");
  if (row_a == row_b) fail(ErrorCode::InvalidParameter, "compute needs two distinct rows");
  BiasVector bias{std::vector<bool>(rows, false), std::vector<Volts>(cols, params.v_bl_precharge),
                  BiasMode::Compute};
  bias.wl_asserted[row_a] = true;
  bias.wl_asserted[row_b] = true;
  return bias;
}

BiasVector BiasVector::read(std::size_t rows, std::size_t cols, std::size_t row, const DeviceParams& params) {
  if (row >= rows) fail(ErrorCode::OutOfBounds, "read row index out of range");
  BiasVector bias{std::vector<bool>(rows, false), std::vector<Volts>(cols, params.v_bl_precharge),
                  BiasMode::MemoryRead};
  bias.wl_asserted[row] = true;
  return bias;
}

BiasVector BiasVector::write(std::size_t rows, std::size_t cols, std::size_t row, std::size_t col, bool bit,
                             const DeviceParams& params) {
  if (row >= rows || col >= cols) fail(ErrorCode::OutOfBounds, "write index out of range");
  // SL is held at 0 V, so the BL level is the full cell bias.
  BiasVector bias{std::vector<bool>(rows, false), std::vector<Volts>(cols, params.v_bl_precharge),
                  BiasMode::MemoryWrite};
  bias.wl_asserted[row] = true;
  bias.v_bl[col] = bit ? params.v_write_set : params.v_write_reset;
  return bias;
}

std::size_t BiasVector::asserted_count() const {
  std::size_t n = 0;
  for (bool on : wl_asserted) n += on ? 1 : 0;
  return n;
}

void BiasVector::validate(std::size_t rows, std::size_t cols, const DeviceParams& params) const {
  if (wl_asserted.size() != rows || v_bl.size() != cols) {
    fail(ErrorCode::DimensionMismatch, "bias vector does not match array dimensions");
  }
  const std::size_t expected = mode == BiasMode::Compute ? 2 : 1;
  if (asserted_count() != expected) {
    fail(ErrorCode::InvalidParameter, mode == BiasMode::Compute ? "compute mode asserts exactly two word lines"
                                                                : "memory mode asserts exactly one word line");
  }
  if (mode != BiasMode::MemoryWrite) {
    for (Volts v : v_bl) {
      if (v != params.v_bl_precharge) {
        fail(ErrorCode::InvalidParameter, "read/compute bit lines must sit at the precharge level");
      }
    }
  }
}

// --- array --------------------------------------------------------------

ArrayState::ArrayState(std::size_t rows, std::size_t cols, const DeviceParams& params)
    : rows_(rows), cols_(cols), params_(params), cells_(rows * cols, make_cell(false, params)) {
  if (rows == 0 || cols == 0) fail(ErrorCode::InvalidParameter, "array needs at least one row and column");
  params_.validate();
}

ArrayState::ArrayState(const BitMatrix& bits, const DeviceParams& params)
    : ArrayState(bits.rows(), bits.cols(), params) {
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) mutable_cell(r, c) = make_cell(bits.at(r, c), params_);
  }
}

void ArrayState::check_bounds(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) {
    fail(ErrorCode::OutOfBounds, "cell (" + std::to_string(r) + ", " + std::to_string(c) + ") outside " +
                                     std::to_string(rows_) + "x" + std::to_string(cols_) + " array");
  }
}

const CellRecord& ArrayState::cell(std::size_t r, std::size_t c) const {
  check_bounds(r, c);
  return cells_[r * cols_ + c];
}

void ArrayState::set_cell(std::size_t r, std::size_t c, const CellRecord& cell) {
  check_bounds(r, c);
  if (!(cell.resistance > 0.0)) fail(ErrorCode::InvalidParameter, "cell resistance must be positive");
  mutable_cell(r, c) = cell;
}

BitMatrix ArrayState::bits() const {
  BitMatrix m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m.set(r, c, cells_[r * cols_ + c].bit);
  }
  return m;
}

void apply_write_bias(ArrayState& array, const BiasVector& bias) {
  const auto& p = array.params_;
  bias.validate(array.rows(), array.cols(), p);
  for (std::size_t r = 0; r < array.rows(); ++r) {
    if (!bias.wl_asserted[r]) continue;
    for (std::size_t c = 0; c < array.cols(); ++c) {
      const Volts v = bias.v_bl[c];
      if (v >= p.v_write_set) {
        array.mutable_cell(r, c) = make_cell(true, p);
      } else if (v <= p.v_write_reset) {
        array.mutable_cell(r, c) = make_cell(false, p);
      }
    }
  }
}

void write_bit(ArrayState& array, std::size_t row, std::size_t col, bool bit) {
  apply_write_bias(array, BiasVector::write(array.rows(), array.cols(), row, col, bit, array.params()));
}

ReadWindow read_window(std::size_t rows, const DeviceParams& params) {
  const std::size_t others = rows > 0 ? rows - 1 : 0;
  const Amps hrs = cell_current(make_cell(false, params), params, true);
  const Amps lrs = cell_current(make_cell(true, params), params, true);
  return {hrs + static_cast<double>(others) * params.leak_unaccessed_lrs,
          lrs + static_cast<double>(others) * params.leak_unaccessed_hrs};
}

bool read_bit(const ArrayState& array, std::size_t row, std::size_t col, const DeviceParams& params,
              Amps read_ref) {
  array.cell(row, col);
  const auto window = read_window(array.rows(), params);
  if (!(read_ref > window.low && read_ref < window.high)) {
    fail(ErrorCode::AmbiguousReference, "read reference " + std::to_string(read_ref) +
                                            " A lies outside the separable window (" +
                                            std::to_string(window.low) + ", " + std::to_string(window.high) + ")");
  }
  const auto bias = BiasVector::read(array.rows(), array.cols(), row, params);
  return comparator(column_current(array, bias, col, params), read_ref, 0.0);
}

Amps column_current(const ArrayState& array, const BiasVector& bias, std::size_t col, const DeviceParams& params) {
  bias.validate(array.rows(), array.cols(), params);
  if (col >= array.cols()) fail(ErrorCode::OutOfBounds, "column index out of range");
  return sum_column(array, bias, col, params);
}

std::vector<bool> compute_cycle(ArrayState& array, std::size_t row_a, std::size_t row_b, const SenseConfig& cfg,
                                const DeviceParams& params, std::vector<Amps>* currents) {
  cfg.validate();
  const auto bias = BiasVector::compute(array.rows(), array.cols(), row_a, row_b, params);
  bias.validate(array.rows(), array.cols(), params);
  std::vector<bool> out(array.cols());
  if (currents) currents->assign(array.cols(), 0.0);
  for (std::size_t c = 0; c < array.cols(); ++c) {
    const Amps i_sl = sum_column(array, bias, c, params);
    out[c] = sense(i_sl, cfg);
    if (currents) (*currents)[c] = i_sl;
  }
  ++array.cycles_;
  return out;
}

CurrentLevels nominal_levels(const DeviceParams& params, std::size_t unaccessed_rows, bool unaccessed_bit) {
  const Amps lrs = cell_current(make_cell(true, params), params, true);
  const Amps hrs = cell_current(make_cell(false, params), params, true);
  const Amps leak = static_cast<double>(unaccessed_rows) * params.leakage_for(unaccessed_bit);
  return {2.0 * hrs + leak, lrs + hrs + leak, 2.0 * lrs + leak};
}

}  // namespace xorcim
