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

#include "xorcim/xorcim.h"

#include <exception>
#include <fstream>
#include <iostream>
#include <new>
#include <string>
#include <vector>

#include "xorcim/analysis.hpp"
#include "xorcim/array.hpp"
#include "xorcim/bnn.hpp"
#include "xorcim/commands.hpp"
#include "xorcim/scenario.hpp"

struct xcim_array {
  xorcim::ArrayState state;
};

struct xcim_scenario {
  xorcim::Scenario scenario;
};

namespace {

using namespace xorcim;

thread_local std::string g_last_error;

xcim_status status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return XCIM_ERR_INVALID_PARAMETER;
    case ErrorCode::InfeasibleCalibration: return XCIM_ERR_INFEASIBLE_CALIBRATION;
    case ErrorCode::OutOfBounds: return XCIM_ERR_OUT_OF_BOUNDS;
    case ErrorCode::AmbiguousReference: return XCIM_ERR_AMBIGUOUS_REFERENCE;
    case ErrorCode::NoValidReference: return XCIM_ERR_NO_VALID_REFERENCE;
    case ErrorCode::DimensionMismatch: return XCIM_ERR_DIMENSION_MISMATCH;
    case ErrorCode::Config: return XCIM_ERR_CONFIG;
    case ErrorCode::Io: return XCIM_ERR_IO;
  }
  return XCIM_ERR_INTERNAL;
}

template <class Fn>
xcim_status guarded(Fn&& fn) noexcept {
  g_last_error.clear();
  try {
    fn();
    return XCIM_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_for(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown exception";
  }
  return XCIM_ERR_INTERNAL;
}

template <class... Ptrs>
void require(const Ptrs*... ptrs) {
  if (((ptrs == nullptr) || ...)) fail(ErrorCode::InvalidParameter, "null argument");
}

DeviceParams from_c(const xcim_device_params& p) {
  return {p.r_lrs, p.r_hrs, p.r_on_access, p.leak_unaccessed_lrs, p.leak_unaccessed_hrs,
          p.v_bl_precharge, p.v_write_set, p.v_write_reset};
}

xcim_device_params to_c(const DeviceParams& p) {
  return {p.r_lrs, p.r_hrs, p.r_on_access, p.leak_unaccessed_lrs, p.leak_unaccessed_hrs,
          p.v_bl_precharge, p.v_write_set, p.v_write_reset};
}

Gate gate_from_c(xcim_gate g) {
  switch (g) {
    case XCIM_GATE_AND: return Gate::And;
    case XCIM_GATE_OR: return Gate::Or;
    case XCIM_GATE_NAND: return Gate::Nand;
    case XCIM_GATE_NOR: return Gate::Nor;
  }
  fail(ErrorCode::InvalidParameter, "unknown gate");
}

xcim_gate gate_to_c(Gate g) {
  switch (g) {
    case Gate::And: return XCIM_GATE_AND;
    case Gate::Or: return XCIM_GATE_OR;
    case Gate::Nand: return XCIM_GATE_NAND;
    case Gate::Nor: return XCIM_GATE_NOR;
  }
  return XCIM_GATE_AND;
}

SenseConfig from_c(const xcim_sense_config& c) {
  SenseConfig cfg;
  cfg.i_ref1 = c.i_ref1;
  cfg.i_ref2 = c.i_ref2;
  cfg.offset1 = c.offset1;
  cfg.offset2 = c.offset2;
  cfg.composition = {c.invert_a != 0, c.invert_b != 0, gate_from_c(c.gate), c.invert_out != 0};
  return cfg;
}

xcim_sense_config to_c(const SenseConfig& cfg) {
  return {cfg.i_ref1, cfg.i_ref2, cfg.offset1, cfg.offset2, cfg.composition.invert_a ? 1 : 0,
          cfg.composition.invert_b ? 1 : 0, gate_to_c(cfg.composition.gate), cfg.composition.invert_out ? 1 : 0};
}

CurrentLevels from_c(const xcim_current_levels& l) { return {l.i00, l.i01, l.i11}; }

LogicOp op_from_c(xcim_logic_op op) {
  switch (op) {
    case XCIM_OP_XOR: return LogicOp::Xor;
    case XCIM_OP_XNOR: return LogicOp::Xnor;
    case XCIM_OP_AND: return LogicOp::And;
    case XCIM_OP_NAND: return LogicOp::Nand;
    case XCIM_OP_OR: return LogicOp::Or;
    case XCIM_OP_NOR: return LogicOp::Nor;
  }
  fail(ErrorCode::InvalidParameter, "unknown logic op");
}

RunOptions run_options(const xcim_run_options* o) {
  RunOptions r;
  r.log = &std::cout;
  if (!o) return r;
  if (o->out_dir) r.out_dir = std::string(o->out_dir);
  if (o->format == XCIM_FORMAT_CSV) r.format = OutputFormat::Csv;
  if (o->format == XCIM_FORMAT_JSON) r.format = OutputFormat::Json;
  if (o->has_seed) r.seed = o->seed;
  if (o->bins) r.bins = o->bins;
  if (o->workers) r.workers = o->workers;
  if (o->quiet) r.log = nullptr;
  return r;
}

ConvSpec layer_spec(double c, double n_w, double n_i, double n_o) {
  ConvSpec s;
  s.c = c;
  s.n_w = n_w;
  s.n_i = n_i;
  s.n_o = n_o;
  return s;
}

}  // namespace

extern "C" {

const char* xcim_version(void) { return tool_version().data(); }

const char* xcim_last_error(void) { return g_last_error.c_str(); }

const char* xcim_status_name(xcim_status status) {
  switch (status) {
    case XCIM_OK: return "ok";
    case XCIM_ERR_INVALID_PARAMETER: return "invalid parameter";
    case XCIM_ERR_INFEASIBLE_CALIBRATION: return "infeasible calibration";
    case XCIM_ERR_OUT_OF_BOUNDS: return "out of bounds";
    case XCIM_ERR_AMBIGUOUS_REFERENCE: return "ambiguous reference";
    case XCIM_ERR_NO_VALID_REFERENCE: return "no valid reference";
    case XCIM_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case XCIM_ERR_CONFIG: return "configuration error";
    case XCIM_ERR_IO: return "i/o error";
    case XCIM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

int xcim_exit_code(xcim_status status) {
  switch (status) {
    case XCIM_OK: return 0;
    case XCIM_ERR_INVALID_PARAMETER: return exit_code_for(ErrorCode::InvalidParameter);
    case XCIM_ERR_INFEASIBLE_CALIBRATION: return exit_code_for(ErrorCode::InfeasibleCalibration);
    case XCIM_ERR_OUT_OF_BOUNDS: return exit_code_for(ErrorCode::OutOfBounds);
    case XCIM_ERR_AMBIGUOUS_REFERENCE: return exit_code_for(ErrorCode::AmbiguousReference);
    case XCIM_ERR_NO_VALID_REFERENCE: return exit_code_for(ErrorCode::NoValidReference);
    case XCIM_ERR_DIMENSION_MISMATCH: return exit_code_for(ErrorCode::DimensionMismatch);
    case XCIM_ERR_CONFIG: return exit_code_for(ErrorCode::Config);
    case XCIM_ERR_IO: return exit_code_for(ErrorCode::Io);
    case XCIM_ERR_INTERNAL: return 1;
  }
  return 1;
}

xcim_status xcim_device_defaults(xcim_device_params* out) {
  return guarded([&] {
    require(out);
    *out = to_c(DeviceParams::defaults());
  });
}

xcim_status xcim_calibrate_access_resistance(double target_current, double v_bl, double r_lrs, double* out_ohms) {
  return guarded([&] {
    require(out_ohms);
    *out_ohms = calibrate_access_resistance(target_current, v_bl, r_lrs);
  });
}

xcim_status xcim_cell_current(int bit, double resistance, const xcim_device_params* params, int accessed,
                              double* out_amps) {
  return guarded([&] {
    require(params, out_amps);
    *out_amps = cell_current({bit != 0, resistance}, from_c(*params), accessed != 0);
  });
}

xcim_status xcim_array_create(size_t rows, size_t cols, const xcim_device_params* params, xcim_array** out) {
  return guarded([&] {
    require(params, out);
    *out = new xcim_array{ArrayState(rows, cols, from_c(*params))};
  });
}

xcim_status xcim_array_load(const char* path, const xcim_device_params* params, xcim_array** out) {
  return guarded([&] {
    require(path, params, out);
    *out = new xcim_array{ArrayState(load_bit_matrix(path), from_c(*params))};
  });
}

void xcim_array_destroy(xcim_array* array) { delete array; }

xcim_status xcim_array_save(const xcim_array* array, const char* path) {
  return guarded([&] {
    require(array, path);
    save_bit_matrix(path, array->state.bits());
  });
}

xcim_status xcim_array_dims(const xcim_array* array, size_t* rows, size_t* cols) {
  return guarded([&] {
    require(array, rows, cols);
    *rows = array->state.rows();
    *cols = array->state.cols();
  });
}

xcim_status xcim_array_get_bit(const xcim_array* array, size_t row, size_t col, int* out_bit) {
  return guarded([&] {
    require(array, out_bit);
    *out_bit = array->state.cell(row, col).bit ? 1 : 0;
  });
}

xcim_status xcim_array_write_bit(xcim_array* array, size_t row, size_t col, int bit) {
  return guarded([&] {
    require(array);
    write_bit(array->state, row, col, bit != 0);
  });
}

xcim_status xcim_array_read_bit(const xcim_array* array, size_t row, size_t col, double read_ref, int* out_bit) {
  return guarded([&] {
    require(array, out_bit);
    *out_bit = read_bit(array->state, row, col, array->state.params(), read_ref) ? 1 : 0;
  });
}

xcim_status xcim_array_compute(xcim_array* array, size_t row_a, size_t row_b, const xcim_sense_config* cfg,
                               int* out_bits, double* out_currents) {
  return guarded([&] {
    require(array, cfg, out_bits);
    std::vector<double> currents;
    const auto bits = compute_cycle(array->state, row_a, row_b, from_c(*cfg), array->state.params(), &currents);
    for (std::size_t c = 0; c < bits.size(); ++c) {
      out_bits[c] = bits[c] ? 1 : 0;
      if (out_currents) out_currents[c] = currents[c];
    }
  });
}

xcim_status xcim_array_cycles(const xcim_array* array, uint64_t* out) {
  return guarded([&] {
    require(array, out);
    *out = array->state.cycle_count();
  });
}

xcim_status xcim_nominal_levels(const xcim_device_params* params, size_t unaccessed_rows, int unaccessed_bit,
                                xcim_current_levels* out) {
  return guarded([&] {
    require(params, out);
    const auto l = nominal_levels(from_c(*params), unaccessed_rows, unaccessed_bit != 0);
    *out = {l.i00, l.i01, l.i11};
  });
}

xcim_status xcim_logic_config(xcim_logic_op op, const xcim_current_levels* levels, xcim_sense_config* out) {
  return guarded([&] {
    require(levels, out);
    *out = to_c(logic_config(op_from_c(op), from_c(*levels)));
  });
}

xcim_status xcim_sense(double i_sl, const xcim_sense_config* cfg, int* out_bit) {
  return guarded([&] {
    require(cfg, out_bit);
    *out_bit = sense(i_sl, from_c(*cfg)) ? 1 : 0;
  });
}

xcim_status xcim_truth_table(const xcim_sense_config* cfg, const xcim_current_levels* levels, int out_bits[4]) {
  return guarded([&] {
    require(cfg, levels, out_bits);
    const auto tt = truth_table(from_c(*cfg), from_c(*levels));
    for (std::size_t k = 0; k < 4; ++k) out_bits[k] = tt[k].output ? 1 : 0;
  });
}

xcim_status xcim_max_rows(const xcim_device_params* params, const xcim_sense_config* cfg, double margin,
                          uint64_t* out_rows) {
  return guarded([&] {
    require(params, cfg, out_rows);
    const auto n = max_rows(from_c(*params), from_c(*cfg), margin);
    *out_rows = n == kNoLeakageLimit ? XCIM_NO_LEAKAGE_LIMIT : static_cast<uint64_t>(n);
  });
}

xcim_status xcim_speedup(double c, double n_w, double n_i, double n_o, double* out) {
  return guarded([&] {
    require(out);
    *out = speedup(layer_spec(c, n_w, n_i, n_o));
  });
}

xcim_status xcim_relative_speedup(double c, double n_w, double n_i, double n_o, unsigned latency_cycles,
                                  double* out) {
  return guarded([&] {
    require(out);
    *out = relative_speedup(n_o, latency_cycles, layer_spec(c, n_w, n_i, kCpuBaselineOpsPerCycle));
  });
}

xcim_status xcim_xornet_adjusted_speedup(double c, double n_w, double n_i, double n_o, double* out) {
  return guarded([&] {
    require(out);
    *out = xornet_adjusted_speedup(layer_spec(c, n_w, n_i, n_o));
  });
}

xcim_status xcim_scenario_load(const char* path, xcim_scenario** out) {
  return guarded([&] {
    require(path, out);
    *out = new xcim_scenario{load_scenario(path)};
  });
}

xcim_status xcim_scenario_default(xcim_scenario** out) {
  return guarded([&] {
    require(out);
    *out = new xcim_scenario{Scenario::reference_3x3()};
  });
}

void xcim_scenario_destroy(xcim_scenario* scenario) { delete scenario; }

xcim_status xcim_scenario_save(const xcim_scenario* scenario, const char* path) {
  return guarded([&] {
    require(scenario, path);
    std::ofstream out(path);
    if (!out) fail(ErrorCode::Io, std::string("cannot write scenario '") + path + "'");
    write_scenario(out, scenario->scenario);
  });
}

xcim_status xcim_cmd_sim(const xcim_scenario* scenario, const xcim_run_options* opts) {
  return guarded([&] {
    require(scenario);
    cmd_sim(scenario->scenario, run_options(opts));
  });
}

xcim_status xcim_cmd_scale(const xcim_scenario* scenario, const double* ratios, size_t n_ratios,
                           const xcim_vary* vary, size_t n_vary, const xcim_run_options* opts) {
  return guarded([&] {
    require(scenario);
    const auto rs = ratios ? std::vector<double>(ratios, ratios + n_ratios) : default_ratios();
    std::vector<VaryState> vs;
    if (vary) {
      for (size_t i = 0; i < n_vary; ++i) vs.push_back(vary[i] == XCIM_VARY_HRS ? VaryState::Hrs : VaryState::Lrs);
    } else {
      vs = {VaryState::Lrs, VaryState::Hrs};
    }
    cmd_scale(scenario->scenario, rs, vs, run_options(opts));
  });
}

xcim_status xcim_cmd_mc(const xcim_scenario* scenario, const xcim_run_options* opts) {
  return guarded([&] {
    require(scenario);
    cmd_mc(scenario->scenario, run_options(opts));
  });
}

xcim_status xcim_cmd_bnn(const xcim_scenario* scenario, const char* input_path, const char* filters_path,
                         size_t array_cols, unsigned latency_cycles, size_t pool, const xcim_run_options* opts) {
  return guarded([&] {
    require(scenario, input_path, filters_path);
    BnnOptions b;
    b.input_path = input_path;
    b.filters_path = filters_path;
    b.array_cols = array_cols;
    b.latency_cycles = latency_cycles;
    b.pool = pool;
    cmd_bnn(scenario->scenario, b, run_options(opts));
  });
}

xcim_status xcim_cmd_speedup(double c, double n_w, double n_i, const double* n_o, size_t n_n_o,
                             const unsigned* latency, size_t n_latency, const xcim_run_options* opts) {
  return guarded([&] {
    const auto widths = n_o ? std::vector<double>(n_o, n_o + n_n_o) : default_widths();
    const auto lats = latency ? std::vector<unsigned>(latency, latency + n_latency) : std::vector<unsigned>{1, 2, 3};
    cmd_speedup(layer_spec(c, n_w, n_i, kCpuBaselineOpsPerCycle), widths, lats, run_options(opts));
  });
}

}  // extern "C"
