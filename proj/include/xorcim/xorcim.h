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

#ifndef XORCIM_XORCIM_H
#define XORCIM_XORCIM_H

/*
 * C interface to the xorcim crossbar simulator.
 *
 * Every function returns an xcim_status. On failure the message for the
 * calling thread is available from xcim_last_error() until the next call.
 * Objects are opaque handles released with their matching *_destroy.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(XORCIM_BUILDING)
#    define XCIM_API __declspec(dllexport)
#  else
#    define XCIM_API __declspec(dllimport)
#  endif
#else
#  define XCIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xcim_status {
  XCIM_OK = 0,
  XCIM_ERR_INVALID_PARAMETER = 1,
  XCIM_ERR_INFEASIBLE_CALIBRATION = 2,
  XCIM_ERR_OUT_OF_BOUNDS = 3,
  XCIM_ERR_AMBIGUOUS_REFERENCE = 4,
  XCIM_ERR_NO_VALID_REFERENCE = 5,
  XCIM_ERR_DIMENSION_MISMATCH = 6,
  XCIM_ERR_CONFIG = 7,
  XCIM_ERR_IO = 8,
  XCIM_ERR_INTERNAL = 9
} xcim_status;

typedef enum xcim_gate { XCIM_GATE_AND = 0, XCIM_GATE_OR, XCIM_GATE_NAND, XCIM_GATE_NOR } xcim_gate;

typedef enum xcim_logic_op {
  XCIM_OP_XOR = 0,
  XCIM_OP_XNOR,
  XCIM_OP_AND,
  XCIM_OP_NAND,
  XCIM_OP_OR,
  XCIM_OP_NOR
} xcim_logic_op;

typedef enum xcim_vary { XCIM_VARY_LRS = 0, XCIM_VARY_HRS = 1 } xcim_vary;

typedef enum xcim_format { XCIM_FORMAT_DEFAULT = 0, XCIM_FORMAT_CSV, XCIM_FORMAT_JSON } xcim_format;

/* Returned by xcim_max_rows when unaccessed cells do not leak. */
#define XCIM_NO_LEAKAGE_LIMIT UINT64_MAX

typedef struct xcim_device_params {
  double r_lrs;
  double r_hrs;
  double r_on_access;
  double leak_unaccessed_lrs;
  double leak_unaccessed_hrs;
  double v_bl_precharge;
  double v_write_set;
  double v_write_reset;
} xcim_device_params;

typedef struct xcim_sense_config {
  double i_ref1;
  double i_ref2;
  double offset1;
  double offset2;
  int invert_a;
  int invert_b;
  xcim_gate gate;
  int invert_out;
} xcim_sense_config;

typedef struct xcim_current_levels {
  double i00;
  double i01;
  double i11;
} xcim_current_levels;

typedef struct xcim_array xcim_array;
typedef struct xcim_scenario xcim_scenario;

XCIM_API const char* xcim_version(void);
XCIM_API const char* xcim_last_error(void);
XCIM_API const char* xcim_status_name(xcim_status status);
/* 0 for XCIM_OK, 2 for configuration errors, 3 for infeasible simulations. */
XCIM_API int xcim_exit_code(xcim_status status);

/* --- device --------------------------------------------------------- */
XCIM_API xcim_status xcim_device_defaults(xcim_device_params* out);
XCIM_API xcim_status xcim_calibrate_access_resistance(double target_current, double v_bl, double r_lrs,
                                                      double* out_ohms);
XCIM_API xcim_status xcim_cell_current(int bit, double resistance, const xcim_device_params* params, int accessed,
                                       double* out_amps);

/* --- array ---------------------------------------------------------- */
XCIM_API xcim_status xcim_array_create(size_t rows, size_t cols, const xcim_device_params* params,
                                       xcim_array** out);
XCIM_API xcim_status xcim_array_load(const char* path, const xcim_device_params* params, xcim_array** out);
XCIM_API void xcim_array_destroy(xcim_array* array);
XCIM_API xcim_status xcim_array_save(const xcim_array* array, const char* path);
XCIM_API xcim_status xcim_array_dims(const xcim_array* array, size_t* rows, size_t* cols);
XCIM_API xcim_status xcim_array_get_bit(const xcim_array* array, size_t row, size_t col, int* out_bit);
XCIM_API xcim_status xcim_array_write_bit(xcim_array* array, size_t row, size_t col, int bit);
XCIM_API xcim_status xcim_array_read_bit(const xcim_array* array, size_t row, size_t col, double read_ref,
                                         int* out_bit);
/* out_bits and out_currents (nullable) hold one entry per column. */
XCIM_API xcim_status xcim_array_compute(xcim_array* array, size_t row_a, size_t row_b, const xcim_sense_config* cfg,
                                        int* out_bits, double* out_currents);
XCIM_API xcim_status xcim_array_cycles(const xcim_array* array, uint64_t* out);

/* --- sense ---------------------------------------------------------- */
XCIM_API xcim_status xcim_nominal_levels(const xcim_device_params* params, size_t unaccessed_rows,
                                         int unaccessed_bit, xcim_current_levels* out);
XCIM_API xcim_status xcim_logic_config(xcim_logic_op op, const xcim_current_levels* levels,
                                       xcim_sense_config* out);
XCIM_API xcim_status xcim_sense(double i_sl, const xcim_sense_config* cfg, int* out_bit);
/* Rows in order 00, 01, 10, 11. */
XCIM_API xcim_status xcim_truth_table(const xcim_sense_config* cfg, const xcim_current_levels* levels,
                                      int out_bits[4]);

/* --- analysis ------------------------------------------------------- */
XCIM_API xcim_status xcim_max_rows(const xcim_device_params* params, const xcim_sense_config* cfg, double margin,
                                   uint64_t* out_rows);
XCIM_API xcim_status xcim_speedup(double c, double n_w, double n_i, double n_o, double* out);
XCIM_API xcim_status xcim_relative_speedup(double c, double n_w, double n_i, double n_o, unsigned latency_cycles,
                                           double* out);
XCIM_API xcim_status xcim_xornet_adjusted_speedup(double c, double n_w, double n_i, double n_o, double* out);

/* --- scenarios and commands ----------------------------------------- */
XCIM_API xcim_status xcim_scenario_load(const char* path, xcim_scenario** out);
/* Built-in 3x3 XOR scenario. */
XCIM_API xcim_status xcim_scenario_default(xcim_scenario** out);
XCIM_API void xcim_scenario_destroy(xcim_scenario* scenario);
XCIM_API xcim_status xcim_scenario_save(const xcim_scenario* scenario, const char* path);

/* Options shared by the commands. Zero-initialise, then fill what you need:
 * NULL out_dir keeps the scenario's output.dir; has_seed = 0 keeps the
 * scenario seed; bins = 0 selects 100; workers = 0 selects 1. The command
 * writes a human-readable log to stdout unless quiet is set. */
typedef struct xcim_run_options {
  const char* out_dir;
  xcim_format format;
  int has_seed;
  uint64_t seed;
  size_t bins;
  unsigned workers;
  int quiet;
} xcim_run_options;

XCIM_API xcim_status xcim_cmd_sim(const xcim_scenario* scenario, const xcim_run_options* opts);
/* ratios NULL selects the default 10..1e6 sweep; vary NULL selects both states. */
XCIM_API xcim_status xcim_cmd_scale(const xcim_scenario* scenario, const double* ratios, size_t n_ratios,
                                    const xcim_vary* vary, size_t n_vary, const xcim_run_options* opts);
XCIM_API xcim_status xcim_cmd_mc(const xcim_scenario* scenario, const xcim_run_options* opts);
XCIM_API xcim_status xcim_cmd_bnn(const xcim_scenario* scenario, const char* input_path, const char* filters_path,
                                  size_t array_cols, unsigned latency_cycles, size_t pool,
                                  const xcim_run_options* opts);
/* n_o / latency NULL select 64..4096 and {1, 2, 3}. */
XCIM_API xcim_status xcim_cmd_speedup(double c, double n_w, double n_i, const double* n_o, size_t n_n_o,
                                      const unsigned* latency, size_t n_latency, const xcim_run_options* opts);

#ifdef __cplusplus
}
#endif

#endif /* XORCIM_XORCIM_H */
