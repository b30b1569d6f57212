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

// Reference computations used only by the tests. They are written directly
// from the circuit equations and share no code with the library.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

inline double accessed_current(double v, double r_cell, double r_on) { return v / (r_cell + r_on); }

struct Column {
  std::vector<int> bits;  // top to bottom
};

// Sum of the accessed cells plus the per-state leakage of every other row.
inline double column_current(const std::vector<int>& bits, const std::vector<std::size_t>& accessed, double v,
                             double r_lrs, double r_hrs, double r_on, double leak_lrs, double leak_hrs) {
  double total = 0.0;
  for (std::size_t r = 0; r < bits.size(); ++r) {
    bool on = false;
    for (auto a : accessed) on = on || a == r;
    if (on) {
      total += accessed_current(v, bits[r] ? r_lrs : r_hrs, r_on);
    } else {
      total += bits[r] ? leak_lrs : leak_hrs;
    }
  }
  return total;
}

inline bool truth(int op, bool a, bool b) {
  // 0 XOR, 1 XNOR, 2 AND, 3 NAND, 4 OR, 5 NOR
  switch (op) {
    case 0: return a != b;
    case 1: return a == b;
    case 2: return a && b;
    case 3: return !(a && b);
    case 4: return a || b;
    default: return !(a || b);
  }
}

inline std::int64_t dot_pm1(const std::vector<int>& a, const std::vector<int>& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<std::int64_t>(a[i]) * b[i];
  return s;
}

// Grows the column one unaccessed row at a time, every extra row leaking the
// larger per-state current, until an accessed pattern crosses its threshold.
inline std::size_t max_rows_by_accumulation(double i00, double i01, double t1, double t2, double leak_max,
                                            std::size_t cap) {
  std::size_t n = 2;
  while (n < cap) {
    const double extra = static_cast<double>(n + 1 - 2) * leak_max;
    if (i00 + extra > t1 || i01 + extra > t2) break;
    ++n;
  }
  return n;
}

inline double speedup(double c, double nw, double ni, double no) {
  const double ops = c * nw * ni;
  return ops / (ops / no + ni);
}

}  // namespace oracle
