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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "test_support.hpp"
#include "xorcim/array.hpp"

using namespace xorcim;

namespace {

const DeviceParams P = DeviceParams::defaults();

std::vector<int> column_bits(const ArrayState& a, std::size_t c) {
  std::vector<int> out;
  for (std::size_t r = 0; r < a.rows(); ++r) out.push_back(a.cell(r, c).bit ? 1 : 0);
  return out;
}

double oracle_column(const ArrayState& a, std::size_t c, std::vector<std::size_t> accessed) {
  return oracle::column_current(column_bits(a, c), accessed, P.v_bl_precharge, P.r_lrs, P.r_hrs, P.r_on_access,
                                P.leak_unaccessed_lrs, P.leak_unaccessed_hrs);
}

ArrayState reference_array() { return ArrayState(BitMatrix::from_rows({"110", "100", "000"}), P); }

}  // namespace

TEST_CASE("write then read every cell without disturbing the rest") {
  std::mt19937_64 rng(3);
  ArrayState a(5, 7, P);
  BitMatrix expect(5, 7);
  for (int step = 0; step < 200; ++step) {
    const std::size_t r = rng() % 5, c = rng() % 7;
    const bool bit = rng() & 1;
    write_bit(a, r, c, bit);
    expect.set(r, c, bit);
    REQUIRE(a.bits() == expect);
  }
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 7; ++c) CHECK(read_bit(a, r, c, P) == expect.at(r, c));
}

TEST_CASE("write bias only switches the selected cell") {
  ArrayState a(3, 3, P);
  const auto bias = BiasVector::write(3, 3, 1, 2, true, P);
  CHECK(bias.v_bl[2] == P.v_write_set);
  CHECK(bias.v_bl[0] == P.v_bl_precharge);
  apply_write_bias(a, bias);
  CHECK(a.bits() == BitMatrix::from_rows({"000", "001", "000"}));
  apply_write_bias(a, BiasVector::write(3, 3, 1, 2, false, P));
  CHECK(a.bits() == BitMatrix(3, 3));
  CHECK(a.cell(1, 2).resistance == P.r_hrs);
}

TEST_CASE("3x3 column currents") {
  auto a = reference_array();
  std::vector<Amps> cur;
  const auto out = compute_cycle(a, 0, 1, SenseConfig::xor_preset(4e-6, 12e-6), P, &cur);
  REQUIRE(cur.size() == 3);
  CHECK(cur[0] == doctest::Approx(15.74e-6).epsilon(1e-4));
  CHECK(cur[1] == doctest::Approx(7.87e-6).epsilon(1e-4));
  CHECK(cur[2] == doctest::Approx(94.67e-12).epsilon(1e-3));
  CHECK(out == std::vector<bool>{false, true, false});
  CHECK(a.cycle_count() == 1);

  auto b = reference_array();
  CHECK(compute_cycle(b, 0, 1, SenseConfig::xnor_preset(4e-6, 12e-6), P) == std::vector<bool>{true, false, true});
}

TEST_CASE("column current equals the sum over cells") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {2u, 3u, 8u, 17u, 64u}) {
    for (std::size_t m : {1u, 5u, 64u}) {
      ArrayState a(n, m, P);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < m; ++c) a.set_cell(r, c, make_cell(rng() & 1, P));
      const std::size_t ra = rng() % n;
      std::size_t rb = rng() % n;
      if (rb == ra) rb = (ra + 1) % n;
      const auto bias = BiasVector::compute(n, m, ra, rb, P);
      for (std::size_t c = 0; c < m; ++c) {
        CHECK(column_current(a, bias, c, P) == doctest::Approx(oracle_column(a, c, {ra, rb})).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("swapping the accessed rows changes nothing") {
  auto a = reference_array();
  auto b = reference_array();
  std::vector<Amps> ca, cb;
  const auto cfg = SenseConfig::xor_preset(4e-6, 12e-6);
  CHECK(compute_cycle(a, 0, 1, cfg, P, &ca) == compute_cycle(b, 1, 0, cfg, P, &cb));
  CHECK(ca == cb);
}

TEST_CASE("nominal levels") {
  const auto l = nominal_levels(P, 1, false);
  CHECK(l.i11 == doctest::Approx(2 * 7.87e-6 + 28e-12));
  CHECK(l.i01 == doctest::Approx(7.87e-6 + oracle::accessed_current(0.1, 3e9, P.r_on_access) + 28e-12));
  CHECK(l.i00 == doctest::Approx(2 * oracle::accessed_current(0.1, 3e9, P.r_on_access) + 28e-12));
}

TEST_CASE("compute cycle errors") {
  auto a = reference_array();
  const auto cfg = SenseConfig::xor_preset(4e-6, 12e-6);
  CHECK_ERROR(compute_cycle(a, 0, 0, cfg, P), ErrorCode::InvalidParameter);
  CHECK_ERROR(compute_cycle(a, 0, 3, cfg, P), ErrorCode::OutOfBounds);
  CHECK(a.cycle_count() == 0);
  CHECK_ERROR(a.cell(3, 0), ErrorCode::OutOfBounds);
}

TEST_CASE("read window and ambiguous references") {
  const auto w = read_window(3, P);
  CHECK(w.low < kDefaultReadReference);
  CHECK(kDefaultReadReference < w.high);
  auto a = reference_array();
  CHECK(read_bit(a, 0, 0, P));
  CHECK_FALSE(read_bit(a, 2, 2, P));
  CHECK_ERROR(read_bit(a, 0, 0, P, w.high + 1e-9), ErrorCode::AmbiguousReference);
  CHECK_ERROR(read_bit(a, 0, 0, P, w.low * 0.5), ErrorCode::AmbiguousReference);
}

TEST_CASE("bit matrix text round trip") {
  std::istringstream in("# comment\n\n1010\n0111\n");
  const auto m = read_bit_matrix(in);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 4);
  CHECK(m.at(1, 3));
  std::ostringstream out;
  write_bit_matrix(out, m);
  std::istringstream back(out.str());
  CHECK(read_bit_matrix(back) == m);

  std::istringstream ragged("101\n11\n");
  CHECK_ERROR(read_bit_matrix(ragged), ErrorCode::Config);
  std::istringstream junk("10x\n");
  CHECK_ERROR(read_bit_matrix(junk), ErrorCode::Config);
}
