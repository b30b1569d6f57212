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
#include <span>
#include <string>
#include <vector>

#include "xorcim/device.hpp"

namespace xorcim {

struct Dims3 {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;

  std::size_t size() const noexcept { return height * width * channels; }
  bool operator==(const Dims3&) const = default;
};

/// Dense HWC tensor of reals.
struct RealTensor {
  Dims3 dims;
  std::vector<double> values;

  RealTensor() = default;
  explicit RealTensor(Dims3 d, double fill = 0.0) : dims(d), values(d.size(), fill) {}

  double& at(std::size_t y, std::size_t x, std::size_t c) { return values[(y * dims.width + x) * dims.channels + c]; }
  double at(std::size_t y, std::size_t x, std::size_t c) const {
    return values[(y * dims.width + x) * dims.channels + c];
  }
};

/// HWC tensor of {-1, +1} values packed one bit per element (1 = +1).
class BinaryTensor {
 public:
  BinaryTensor() = default;
  explicit BinaryTensor(Dims3 dims);

  const Dims3& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return dims_.size(); }

  bool bit(std::size_t y, std::size_t x, std::size_t c) const { return bit(index(y, x, c)); }
  void set(std::size_t y, std::size_t x, std::size_t c, bool v) { set(index(y, x, c), v); }
  bool bit(std::size_t flat) const { return (words_[flat / 64] >> (flat % 64)) & 1u; }
  void set(std::size_t flat, bool v);

  int sign(std::size_t y, std::size_t x, std::size_t c) const { return bit(y, x, c) ? 1 : -1; }

  bool operator==(const BinaryTensor&) const = default;

 private:
  std::size_t index(std::size_t y, std::size_t x, std::size_t c) const {
    return (y * dims_.width + x) * dims_.channels + c;
  }

  Dims3 dims_;
  std::vector<std::uint64_t> words_;
};

/// sign() with sign(0) = +1.
BinaryTensor binarize_signs(const RealTensor& t);

/// Per-filter alpha and the per-output-position K map of the input.
struct ScaleFactors {
  std::vector<double> alpha;
  std::size_t k_rows = 0;
  std::size_t k_cols = 0;
  std::vector<double> k_map;

  double k(std::size_t y, std::size_t x) const { return k_map[y * k_cols + x]; }
};

struct BinarizedFilter {
  BinaryTensor bits;
  double alpha = 0.0;  // mean |w|
};

BinarizedFilter binarize_filter(const RealTensor& filter);

struct BinarizedInput {
  BinaryTensor bits;
  std::size_t k_rows = 0;
  std::size_t k_cols = 0;
  std::vector<double> k_map;
};

/// K is the channel-mean |x| map averaged over every filter-sized window.
BinarizedInput binarize_input(const RealTensor& input, std::size_t filter_h, std::size_t filter_w);

/// Convenience: binarize both operands and assemble the scale factors.
struct BinarizedLayer {
  BinaryTensor input;
  std::vector<BinaryTensor> filters;
  ScaleFactors scales;
};
BinarizedLayer binarize_layer(const RealTensor& input, std::span<const RealTensor> filters);

/// Output of one binary convolution, indexed [filter][y][x].
struct ConvOutput {
  std::size_t n_filters = 0;
  std::size_t out_h = 0;
  std::size_t out_w = 0;
  std::vector<std::int64_t> raw;
  std::vector<double> values;
  std::uint64_t compute_cycles = 0;
  std::uint64_t write_ops = 0;

  std::size_t index(std::size_t f, std::size_t y, std::size_t x) const { return (f * out_h + y) * out_w + x; }
};

/// Signed +-1 dot product from a match count over `length` positions.
constexpr std::int64_t dot_from_matches(std::int64_t matches, std::int64_t length) noexcept {
  return 2 * matches - length;
}

/// Valid, stride-1 binary convolution executed on a simulated 2 x array_cols
/// crossbar: filter bits in one row, the input patch in the other, one XNOR
/// compute cycle per column chunk, popcount of the sensed bits.
ConvOutput xnor_conv2d_sim(const BinaryTensor& input, std::span<const BinaryTensor> filters,
                           const ScaleFactors& scales, std::size_t array_cols, const DeviceParams& params,
                           unsigned latency_cycles = 1);

/// Same contract as xnor_conv2d_sim, by direct multiply-accumulate on +-1 values.
ConvOutput xnor_conv2d_oracle(const BinaryTensor& input, std::span<const BinaryTensor> filters,
                              const ScaleFactors& scales);

/// Layer geometry for the XNOR-convolution speedup model.
struct ConvSpec {
  double c = 256;
  double n_w = 196;
  double n_i = 9;
  double n_o = 64;
  unsigned latency_cycles = 1;

  void validate() const;
};

inline constexpr double kCpuBaselineOpsPerCycle = 64.0;
inline constexpr double kXorNetFullPrecisionReduction = 0.3984;

/// c*N_W*N_I / (c*N_W*N_I / N_O + N_I)
double speedup(const ConvSpec& spec);

/// Speedup at effective width n_o / latency over the speedup at the CPU
/// baseline width.
double relative_speedup(double n_o, unsigned latency_cycles, const ConvSpec& spec,
                        double baseline_n_o = kCpuBaselineOpsPerCycle);

/// Speedup with the full-precision N_I term reduced by `reduction`.
double xornet_adjusted_speedup(const ConvSpec& spec, double reduction = kXorNetFullPrecisionReduction);

// Tensor text format: a header line with the dimensions, then the values in
// row-major (HWC) order. Commas and whitespace both separate; '#' starts a
// comment line. Inputs are "h w c"; filter sets are "n h w c".
RealTensor read_real_tensor(std::istream& in);
std::vector<RealTensor> read_filter_set(std::istream& in);
RealTensor load_real_tensor(const std::string& path);
std::vector<RealTensor> load_filter_set(const std::string& path);
void write_real_tensor(std::ostream& out, const RealTensor& t);
void write_filter_set(std::ostream& out, std::span<const RealTensor> filters);

}  // namespace xorcim
