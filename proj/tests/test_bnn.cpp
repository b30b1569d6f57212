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

#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "test_support.hpp"
#include "xorcim/array.hpp"
#include "xorcim/bnn.hpp"

using namespace xorcim;

namespace {

const DeviceParams P = DeviceParams::defaults();

RealTensor random_tensor(Dims3 d, std::mt19937_64& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  RealTensor t(d);
  for (auto& v : t.values) v = z(rng);
  return t;
}

int sgn(double v) { return v >= 0.0 ? 1 : -1; }

// Scaled convolution computed straight from the real tensors.
double direct_value(const RealTensor& in, const RealTensor& w, std::size_t y, std::size_t x) {
  const auto& fd = w.dims;
  std::vector<int> a, b;
  double abs_w = 0.0, abs_x = 0.0;
  for (std::size_t dy = 0; dy < fd.height; ++dy)
    for (std::size_t dx = 0; dx < fd.width; ++dx)
      for (std::size_t c = 0; c < fd.channels; ++c) {
        a.push_back(sgn(w.at(dy, dx, c)));
        b.push_back(sgn(in.at(y + dy, x + dx, c)));
        abs_w += std::abs(w.at(dy, dx, c));
        abs_x += std::abs(in.at(y + dy, x + dx, c));
      }
  const double n = static_cast<double>(a.size());
  return static_cast<double>(oracle::dot_pm1(a, b)) * (abs_w / n) * (abs_x / n);
}

}  // namespace

TEST_CASE("binarization") {
  RealTensor t(Dims3{1, 2, 2});
  t.values = {-0.5, 0.0, 2.0, -3.0};
  const auto b = binarize_signs(t);
  CHECK(b.sign(0, 0, 0) == -1);
  CHECK(b.sign(0, 0, 1) == 1);
  CHECK(b.sign(0, 1, 0) == 1);
  CHECK(b.sign(0, 1, 1) == -1);
  CHECK(binarize_filter(t).alpha == doctest::Approx(5.5 / 4));

  RealTensor in(Dims3{2, 2, 1});
  in.values = {1, -2, 3, -4};
  const auto bi = binarize_input(in, 1, 2);
  REQUIRE(bi.k_rows == 2);
  REQUIRE(bi.k_cols == 1);
  CHECK(bi.k_map[0] == doctest::Approx(1.5));
  CHECK(bi.k_map[1] == doctest::Approx(3.5));
  CHECK_ERROR(binarize_input(in, 3, 1), ErrorCode::DimensionMismatch);
}

TEST_CASE("popcount identity for every vector pair up to length 10") {
  const auto levels = nominal_levels(P);
  const auto table = truth_table(logic_config(LogicOp::Xnor, levels), levels);
  for (unsigned len = 1; len <= 10; ++len) {
    for (unsigned a = 0; a < (1u << len); ++a) {
      for (unsigned b = 0; b < (1u << len); ++b) {
        std::vector<int> va(len), vb(len);
        std::int64_t matches = 0;
        for (unsigned i = 0; i < len; ++i) {
          const bool ba = (a >> i) & 1, bb = (b >> i) & 1;
          va[i] = ba ? 1 : -1;
          vb[i] = bb ? 1 : -1;
          matches += table[(ba ? 2 : 0) + (bb ? 1 : 0)].output ? 1 : 0;
        }
        REQUIRE(dot_from_matches(matches, len) == oracle::dot_pm1(va, vb));
        REQUIRE(matches == std::popcount(~(a ^ b) & ((1u << len) - 1)));
      }
    }
  }
}

TEST_CASE("popcount identity on the array for random longer vectors") {
  std::mt19937_64 rng(9);
  const auto cfg = logic_config(LogicOp::Xnor, nominal_levels(P));
  for (std::size_t len : {11u, 64u, 200u}) {
    ArrayState arr(2, len, P);
    std::vector<int> va(len), vb(len);
    for (std::size_t i = 0; i < len; ++i) {
      va[i] = (rng() & 1) ? 1 : -1;
      vb[i] = (rng() & 1) ? 1 : -1;
      write_bit(arr, 0, i, va[i] > 0);
      write_bit(arr, 1, i, vb[i] > 0);
    }
    const auto out = compute_cycle(arr, 0, 1, cfg, P);
    std::int64_t m = 0;
    for (bool bit : out) m += bit;
    CHECK(dot_from_matches(m, static_cast<std::int64_t>(len)) == oracle::dot_pm1(va, vb));
  }
}

TEST_CASE("array convolution equals the direct oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const auto input = random_tensor({8, 8, 4}, rng);
    std::vector<RealTensor> filters;
    for (int f = 0; f < 3; ++f) filters.push_back(random_tensor({3, 3, 4}, rng));
    const auto layer = binarize_layer(input, filters);
    const std::size_t cols = std::vector<std::size_t>{64, 36, 7, 1}[trial % 4];
    const auto sim = xnor_conv2d_sim(layer.input, layer.filters, layer.scales, cols, P);
    const auto ref = xnor_conv2d_oracle(layer.input, layer.filters, layer.scales);
    REQUIRE(sim.raw == ref.raw);
    for (std::size_t f = 0; f < filters.size(); ++f)
      for (std::size_t y = 0; y < 6; ++y)
        for (std::size_t x = 0; x < 6; ++x) {
          const auto i = sim.index(f, y, x);
          const double d = direct_value(input, filters[f], y, x);
          CHECK(sim.values[i] == doctest::Approx(ref.values[i]).epsilon(1e-12));
          CHECK(sim.values[i] == doctest::Approx(d).epsilon(1e-12));
        }
  }
}

TEST_CASE("cycle and write accounting") {
  std::mt19937_64 rng(1);
  const auto input = random_tensor({8, 8, 4}, rng);
  std::vector<RealTensor> filters{random_tensor({3, 3, 4}, rng), random_tensor({3, 3, 4}, rng)};
  const auto layer = binarize_layer(input, filters);
  const auto one = xnor_conv2d_sim(layer.input, layer.filters, layer.scales, 64, P);
  CHECK(one.compute_cycles == 2 * 36);
  CHECK(one.write_ops == 2 * 36 * 2 * 36);
  const auto chunked = xnor_conv2d_sim(layer.input, layer.filters, layer.scales, 10, P, 3);
  CHECK(chunked.compute_cycles == 2 * 36 * 4 * 3);
  CHECK_ERROR(xnor_conv2d_sim(layer.input, layer.filters, layer.scales, 0, P), ErrorCode::InvalidParameter);
}

TEST_CASE("mismatched channel counts are rejected") {
  std::mt19937_64 rng(4);
  const auto input = random_tensor({8, 8, 4}, rng);
  std::vector<RealTensor> filters{random_tensor({3, 3, 3}, rng)};
  CHECK_ERROR(binarize_layer(input, filters), ErrorCode::DimensionMismatch);
}

TEST_CASE("speedup model") {
  CHECK(speedup(ConvSpec{}) == doctest::Approx(63.918).epsilon(0.001 / 63.918));
  CHECK(speedup(ConvSpec{}) == doctest::Approx(oracle::speedup(256, 196, 9, 64)).epsilon(1e-15));
  CHECK(speedup(ConvSpec{1, 1, 1, 1, 1}) == doctest::Approx(0.5));
  CHECK(speedup(ConvSpec{256, 196, 9, 1e12, 1}) == doctest::Approx(256.0 * 196.0).epsilon(1e-6));

  CHECK(relative_speedup(64, 1, ConvSpec{}) == doctest::Approx(1.0));
  const double r256 = relative_speedup(256, 1, ConvSpec{}) / relative_speedup(256, 3, ConvSpec{});
  CHECK(r256 == doctest::Approx(2.99).epsilon(0.001));
  CHECK(r256 == doctest::Approx(oracle::speedup(256, 196, 9, 256) / oracle::speedup(256, 196, 9, 256.0 / 3)));
  double prev = 0.0;
  for (double n = 16; n <= 65536; n *= 2) {
    const double r = relative_speedup(n, 1, ConvSpec{});
    CHECK(r > prev);
    prev = r;
  }

  const double adjusted = 451584.0 / (7056.0 + 9.0 * (1.0 - 0.3984));
  CHECK(xornet_adjusted_speedup(ConvSpec{}) == doctest::Approx(adjusted).epsilon(1e-15));
  CHECK(xornet_adjusted_speedup(ConvSpec{}) == doctest::Approx(63.9509).epsilon(1e-6));
  CHECK(xornet_adjusted_speedup(ConvSpec{}, 0.0) == speedup(ConvSpec{}));
  CHECK(xornet_adjusted_speedup(ConvSpec{}, 1.0) == doctest::Approx(64.0).epsilon(1e-15));
  CHECK(kXorNetFullPrecisionReduction == 0.3984);

  CHECK_ERROR(speedup(ConvSpec{0, 1, 1, 1, 1}), ErrorCode::InvalidParameter);
  CHECK_ERROR(relative_speedup(64, 0, ConvSpec{}), ErrorCode::InvalidParameter);
}

TEST_CASE("tensor text round trip") {
  std::mt19937_64 rng(8);
  const auto t = random_tensor({3, 2, 2}, rng);
  std::stringstream ss;
  write_real_tensor(ss, t);
  const auto back = read_real_tensor(ss);
  CHECK(back.dims == t.dims);
  CHECK(back.values == t.values);

  std::vector<RealTensor> fs{random_tensor({2, 2, 2}, rng), random_tensor({2, 2, 2}, rng)};
  std::stringstream fss;
  write_filter_set(fss, fs);
  const auto fback = read_filter_set(fss);
  REQUIRE(fback.size() == 2);
  CHECK(fback[1].values == fs[1].values);

  std::istringstream shortfall("2 2 1\n1, 2, 3\n");
  CHECK(error_of([&] { read_real_tensor(shortfall); }).has_value());
}
