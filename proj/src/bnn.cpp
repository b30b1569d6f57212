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

#include "xorcim/bnn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "xorcim/array.hpp"
#include "xorcim/error.hpp"
#include "xorcim/sense.hpp"

namespace xorcim {
namespace {

struct Geometry {
  std::size_t kh, kw, channels, length, out_h, out_w;
};

Geometry check_geometry(const BinaryTensor& input, std::span<const BinaryTensor> filters, const ScaleFactors& scales) {
  if (filters.empty()) fail(ErrorCode::DimensionMismatch, "no filters given");
  const auto& in = input.dims();
  const auto& fd = filters.front().dims();
  for (const auto& f : filters) {
    if (!(f.dims() == fd)) fail(ErrorCode::DimensionMismatch, "filters differ in shape");
  }
  if (in.size() == 0 || fd.size() == 0) fail(ErrorCode::DimensionMismatch, "empty tensor");
  if (fd.channels != in.channels) fail(ErrorCode::DimensionMismatch, "filter and input channel counts differ");
  if (fd.height > in.height || fd.width > in.width) fail(ErrorCode::DimensionMismatch, "filter larger than input");
  Geometry g{fd.height, fd.width, fd.channels, fd.size(), in.height - fd.height + 1, in.width - fd.width + 1};
  if (scales.alpha.size() != filters.size()) fail(ErrorCode::DimensionMismatch, "one alpha per filter expected");
  if (scales.k_rows != g.out_h || scales.k_cols != g.out_w || scales.k_map.size() != g.out_h * g.out_w) {
    fail(ErrorCode::DimensionMismatch, "K map does not match the output size");
  }
  return g;
}

void flatten_filter(const BinaryTensor& f, std::vector<bool>& out) {
  out.assign(f.size(), false);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f.bit(i);
}

void flatten_patch(const BinaryTensor& in, const Geometry& g, std::size_t y0, std::size_t x0, std::vector<bool>& out) {
  out.resize(g.length);
  std::size_t i = 0;
  for (std::size_t dy = 0; dy < g.kh; ++dy) {
    for (std::size_t dx = 0; dx < g.kw; ++dx) {
      for (std::size_t c = 0; c < g.channels; ++c) out[i++] = in.bit(y0 + dy, x0 + dx, c);
    }
  }
}

ConvOutput make_output(const Geometry& g, std::size_t n_filters) {
  ConvOutput out;
  out.n_filters = n_filters;
  out.out_h = g.out_h;
  out.out_w = g.out_w;
  out.raw.assign(n_filters * g.out_h * g.out_w, 0);
  out.values.assign(out.raw.size(), 0.0);
  return out;
}

std::vector<double> read_numbers(std::istream& in, std::vector<std::size_t>& header, std::size_t header_len) {
  std::vector<double> values;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    for (auto& ch : line) {
      if (ch == ',' || ch == ';') ch = ' ';
    }
    std::istringstream ls(line);
    if (!have_header) {
      double d = 0.0;
      while (ls >> d) {
        if (d < 1 || d != std::floor(d)) fail(ErrorCode::Config, "tensor dimensions must be positive integers");
        header.push_back(static_cast<std::size_t>(d));
      }
      if (!ls.eof()) fail(ErrorCode::Config, "malformed tensor header");
      if (header.size() != header_len) {
        fail(ErrorCode::Config, "tensor header needs " + std::to_string(header_len) + " dimensions");
      }
      have_header = true;
      continue;
    }
    double v = 0.0;
    while (ls >> v) values.push_back(v);
    if (!ls.eof()) fail(ErrorCode::Config, "non-numeric tensor value: " + line);
  }
  if (!have_header) fail(ErrorCode::Config, "tensor file is empty");
  return values;
}

}  // namespace

BinaryTensor::BinaryTensor(Dims3 dims) : dims_(dims), words_((dims.size() + 63) / 64, 0) {}

void BinaryTensor::set(std::size_t flat, bool v) {
  const auto mask = std::uint64_t{1} << (flat % 64);
  if (v) {
    words_[flat / 64] |= mask;
  } else {
    words_[flat / 64] &= ~mask;
  }
}

BinaryTensor binarize_signs(const RealTensor& t) {
  if (t.values.size() != t.dims.size() || t.values.empty()) {
    fail(ErrorCode::DimensionMismatch, "tensor values do not match its dimensions");
  }
  BinaryTensor bits(t.dims);
  for (std::size_t i = 0; i < t.values.size(); ++i) bits.set(i, t.values[i] >= 0.0);
  return bits;
}

BinarizedFilter binarize_filter(const RealTensor& filter) {
  BinarizedFilter out{binarize_signs(filter), 0.0};
  double sum = 0.0;
  for (double v : filter.values) sum += std::abs(v);
  out.alpha = sum / static_cast<double>(filter.values.size());
  return out;
}

BinarizedInput binarize_input(const RealTensor& input, std::size_t filter_h, std::size_t filter_w) {
  const auto& d = input.dims;
  if (filter_h == 0 || filter_w == 0 || filter_h > d.height || filter_w > d.width) {
    fail(ErrorCode::DimensionMismatch, "filter window does not fit the input");
  }
  BinarizedInput out;
  out.bits = binarize_signs(input);

  std::vector<double> a(d.height * d.width, 0.0);
  for (std::size_t y = 0; y < d.height; ++y) {
    for (std::size_t x = 0; x < d.width; ++x) {
      double s = 0.0;
      for (std::size_t c = 0; c < d.channels; ++c) s += std::abs(input.at(y, x, c));
      a[y * d.width + x] = s / static_cast<double>(d.channels);
    }
  }

  out.k_rows = d.height - filter_h + 1;
  out.k_cols = d.width - filter_w + 1;
  out.k_map.assign(out.k_rows * out.k_cols, 0.0);
  const double area = static_cast<double>(filter_h * filter_w);
  for (std::size_t y = 0; y < out.k_rows; ++y) {
    for (std::size_t x = 0; x < out.k_cols; ++x) {
      double s = 0.0;
      for (std::size_t dy = 0; dy < filter_h; ++dy) {
        for (std::size_t dx = 0; dx < filter_w; ++dx) s += a[(y + dy) * d.width + (x + dx)];
      }
      out.k_map[y * out.k_cols + x] = s / area;
    }
  }
  return out;
}

BinarizedLayer binarize_layer(const RealTensor& input, std::span<const RealTensor> filters) {
  if (filters.empty()) fail(ErrorCode::DimensionMismatch, "no filters given");
  BinarizedLayer layer;
  const auto& fd = filters.front().dims;
  auto bin_in = binarize_input(input, fd.height, fd.width);
  layer.input = std::move(bin_in.bits);
  layer.scales.k_rows = bin_in.k_rows;
  layer.scales.k_cols = bin_in.k_cols;
  layer.scales.k_map = std::move(bin_in.k_map);
  for (const auto& f : filters) {
    if (!(f.dims == fd) || fd.channels != input.dims.channels) {
      fail(ErrorCode::DimensionMismatch, "filters must share one shape with the input's channel count");
    }
    auto bf = binarize_filter(f);
    layer.filters.push_back(std::move(bf.bits));
    layer.scales.alpha.push_back(bf.alpha);
  }
  return layer;
}

ConvOutput xnor_conv2d_sim(const BinaryTensor& input, std::span<const BinaryTensor> filters,
                           const ScaleFactors& scales, std::size_t array_cols, const DeviceParams& params,
                           unsigned latency_cycles) {
  if (array_cols == 0) fail(ErrorCode::InvalidParameter, "array needs at least one column");
  if (latency_cycles == 0) fail(ErrorCode::InvalidParameter, "latency must be at least one cycle");
  const auto g = check_geometry(input, filters, scales);
  auto out = make_output(g, filters.size());

  // Two physical rows are reused for every chunk: row 0 holds filter bits,
  // row 1 the input patch.
  ArrayState array(2, array_cols, params);
  const auto cfg = logic_config(LogicOp::Xnor, nominal_levels(params));
  const std::size_t chunks = (g.length + array_cols - 1) / array_cols;

  std::vector<bool> fbits;
  std::vector<bool> pbits;
  for (std::size_t f = 0; f < filters.size(); ++f) {
    flatten_filter(filters[f], fbits);
    for (std::size_t y = 0; y < g.out_h; ++y) {
      for (std::size_t x = 0; x < g.out_w; ++x) {
        flatten_patch(input, g, y, x, pbits);
        std::int64_t matches = 0;
        for (std::size_t k = 0; k < chunks; ++k) {
          const std::size_t begin = k * array_cols;
          const std::size_t used = std::min(array_cols, g.length - begin);
          for (std::size_t j = 0; j < used; ++j) {
            write_bit(array, 0, j, fbits[begin + j]);
            write_bit(array, 1, j, pbits[begin + j]);
          }
          out.write_ops += 2 * used;
          const auto sensed = compute_cycle(array, 0, 1, cfg, params);
          for (std::size_t j = 0; j < used; ++j) matches += sensed[j] ? 1 : 0;
        }
        const auto idx = out.index(f, y, x);
        out.raw[idx] = dot_from_matches(matches, static_cast<std::int64_t>(g.length));
        out.values[idx] = static_cast<double>(out.raw[idx]) * scales.alpha[f] * scales.k(y, x);
      }
    }
  }
  out.compute_cycles = array.cycle_count() * latency_cycles;
  return out;
}

ConvOutput xnor_conv2d_oracle(const BinaryTensor& input, std::span<const BinaryTensor> filters,
                              const ScaleFactors& scales) {
  const auto g = check_geometry(input, filters, scales);
  auto out = make_output(g, filters.size());
  for (std::size_t f = 0; f < filters.size(); ++f) {
    for (std::size_t y = 0; y < g.out_h; ++y) {
      for (std::size_t x = 0; x < g.out_w; ++x) {
        std::int64_t acc = 0;
        for (std::size_t dy = 0; dy < g.kh; ++dy) {
          for (std::size_t dx = 0; dx < g.kw; ++dx) {
            for (std::size_t c = 0; c < g.channels; ++c) {
              acc += filters[f].sign(dy, dx, c) * input.sign(y + dy, x + dx, c);
            }
          }
        }
        const auto idx = out.index(f, y, x);
        out.raw[idx] = acc;
        out.values[idx] = static_cast<double>(acc) * scales.alpha[f] * scales.k(y, x);
      }
    }
  }
  return out;
}

void ConvSpec::validate() const {
  if (!(c > 0 && n_w > 0 && n_i > 0 && n_o > 0) || latency_cycles == 0) {
    fail(ErrorCode::InvalidParameter, "conv spec values must be positive");
  }
}

double speedup(const ConvSpec& spec) {
  spec.validate();
  const double work = spec.c * spec.n_w * spec.n_i;
  return work / (work / spec.n_o + spec.n_i);
}

double relative_speedup(double n_o, unsigned latency_cycles, const ConvSpec& spec, double baseline_n_o) {
  if (!(n_o > 0.0) || latency_cycles == 0 || !(baseline_n_o > 0.0)) {
    fail(ErrorCode::InvalidParameter, "relative speedup inputs must be positive");
  }
  ConvSpec design = spec;
  design.n_o = n_o / static_cast<double>(latency_cycles);
  design.latency_cycles = 1;
  ConvSpec baseline = spec;
  baseline.n_o = baseline_n_o;
  baseline.latency_cycles = 1;
  return speedup(design) / speedup(baseline);
}

double xornet_adjusted_speedup(const ConvSpec& spec, double reduction) {
  spec.validate();
  if (!(reduction >= 0.0 && reduction <= 1.0)) fail(ErrorCode::InvalidParameter, "reduction must lie in [0, 1]");
  const double work = spec.c * spec.n_w * spec.n_i;
  return work / (work / spec.n_o + spec.n_i * (1.0 - reduction));
}

RealTensor read_real_tensor(std::istream& in) {
  std::vector<std::size_t> header;
  auto values = read_numbers(in, header, 3);
  RealTensor t(Dims3{header[0], header[1], header[2]});
  if (values.size() != t.values.size()) {
    fail(ErrorCode::Config, "tensor has " + std::to_string(values.size()) + " values, header implies " +
                                std::to_string(t.values.size()));
  }
  t.values = std::move(values);
  return t;
}

std::vector<RealTensor> read_filter_set(std::istream& in) {
  std::vector<std::size_t> header;
  auto values = read_numbers(in, header, 4);
  const Dims3 d{header[1], header[2], header[3]};
  if (values.size() != header[0] * d.size()) {
    fail(ErrorCode::Config, "filter set has " + std::to_string(values.size()) + " values, header implies " +
                                std::to_string(header[0] * d.size()));
  }
  std::vector<RealTensor> out;
  for (std::size_t f = 0; f < header[0]; ++f) {
    RealTensor t(d);
    std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(f * d.size()), d.size(), t.values.begin());
    out.push_back(std::move(t));
  }
  return out;
}

RealTensor load_real_tensor(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open tensor file '" + path + "'");
  return read_real_tensor(in);
}

std::vector<RealTensor> load_filter_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open filter file '" + path + "'");
  return read_filter_set(in);
}

void write_real_tensor(std::ostream& out, const RealTensor& t) {
  out << std::setprecision(17) << t.dims.height << ' ' << t.dims.width << ' ' << t.dims.channels << '\n';
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    out << t.values[i] << ((i + 1) % t.dims.channels == 0 ? '\n' : ' ');
  }
}

void write_filter_set(std::ostream& out, std::span<const RealTensor> filters) {
  if (filters.empty()) fail(ErrorCode::DimensionMismatch, "no filters to write");
  const auto& d = filters.front().dims;
  out << std::setprecision(17) << filters.size() << ' ' << d.height << ' ' << d.width << ' ' << d.channels << '\n';
  for (const auto& f : filters) {
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      out << f.values[i] << ((i + 1) % d.channels == 0 ? '\n' : ' ');
    }
  }
}

}  // namespace xorcim
