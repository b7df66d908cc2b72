/*
 * Copyright 2026 The focdes Authors. All rights reserved.
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

/*
 * C interface to the focdes library.
 *
 * Every fallible call returns a focdes_status. On failure the message is
 * available from focdes_last_error() on the calling thread until the next
 * call on that thread. Handles are opaque; each *_free accepts NULL.
 * Strings returned through focdes_buffer stay valid until the buffer is freed.
 */

#ifndef FOCDES_FOCDES_H_
#define FOCDES_FOCDES_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FOCDES_API __declspec(dllexport)
#else
#define FOCDES_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum focdes_status {
  FOCDES_OK = 0,
  FOCDES_ERR_INVALID_ARGUMENT = 2,
  FOCDES_ERR_DIVERGED = 3,
  FOCDES_ERR_IO = 4,
  FOCDES_ERR_CANCELLED = 5,
  FOCDES_ERR_EVALUATION = 6,
  FOCDES_ERR_INTERNAL = 7
} focdes_status;

typedef struct focdes_config focdes_config;
typedef struct focdes_params focdes_params;
typedef struct focdes_trace focdes_trace;
typedef struct focdes_scenarios focdes_scenarios;
typedef struct focdes_buffer focdes_buffer;

/* Trace channels, in CSV column order. */
typedef enum focdes_channel {
  FOCDES_CH_T = 0,
  FOCDES_CH_DF1,
  FOCDES_CH_DF2,
  FOCDES_CH_DPTIE,
  FOCDES_CH_ACE1,
  FOCDES_CH_ACE2,
  FOCDES_CH_U1,
  FOCDES_CH_U2
} focdes_channel;

FOCDES_API const char* focdes_version(void);
FOCDES_API const char* focdes_last_error(void);

/* Cooperative cancellation of long operations; safe to call from a signal handler. */
FOCDES_API void focdes_cancel(void);
FOCDES_API void focdes_reset_cancel(void);
FOCDES_API int focdes_cancel_requested(void);

FOCDES_API const char* focdes_buffer_data(const focdes_buffer* buf);
FOCDES_API size_t focdes_buffer_size(const focdes_buffer* buf);
FOCDES_API void focdes_buffer_free(focdes_buffer* buf);

/* Configuration: defaults, then the JSON file (path may be NULL), then key=value overrides. */
FOCDES_API focdes_status focdes_config_load(const char* path, const char* const* overrides, size_t n_overrides,
                                            focdes_config** out);
FOCDES_API focdes_status focdes_config_from_json(const char* json_text, focdes_config** out);
FOCDES_API focdes_status focdes_config_to_json(const focdes_config* cfg, focdes_buffer** out);
FOCDES_API void focdes_config_free(focdes_config* cfg);

/* Controller parameters for both areas. */
FOCDES_API focdes_status focdes_params_load(const char* path, focdes_params** out);
FOCDES_API focdes_status focdes_params_from_json(const char* json_text, focdes_params** out);
FOCDES_API focdes_status focdes_params_from_genome(const double* genome, size_t n, const char* family,
                                                   focdes_params** out);
FOCDES_API focdes_status focdes_params_to_json(const focdes_params* params, focdes_buffer** out);
FOCDES_API void focdes_params_free(focdes_params* params);

/* Closed-loop simulation. A diverged run still returns a trace, flagged and NaN-padded. */
FOCDES_API focdes_status focdes_simulate(const focdes_config* cfg, const focdes_params* params, focdes_trace** out);
FOCDES_API size_t focdes_trace_length(const focdes_trace* trace);
FOCDES_API const double* focdes_trace_channel(const focdes_trace* trace, focdes_channel ch);
FOCDES_API int focdes_trace_diverged(const focdes_trace* trace);
FOCDES_API focdes_status focdes_trace_objectives(const focdes_trace* trace, double* itse, double* isdco);
FOCDES_API focdes_status focdes_trace_write_csv(const focdes_trace* trace, const char* path);
FOCDES_API focdes_status focdes_trace_summary_json(const focdes_trace* trace, focdes_buffer** out);
FOCDES_API void focdes_trace_free(focdes_trace* trace);

/* T12 sweep, optionally followed by a seeded random-load scenario. */
FOCDES_API focdes_status focdes_robustness(const focdes_config* cfg, const focdes_params* params,
                                           const double* t12_factors, size_t n_factors, int random_load,
                                           uint64_t load_seed, focdes_scenarios** out);
FOCDES_API size_t focdes_scenarios_count(const focdes_scenarios* s);
FOCDES_API const char* focdes_scenario_name(const focdes_scenarios* s, size_t i);
FOCDES_API const char* focdes_scenario_verdict(const focdes_scenarios* s, size_t i);
FOCDES_API const focdes_trace* focdes_scenario_trace(const focdes_scenarios* s, size_t i);
/* traces/<scenario>.csv and robustness.json under out_dir. */
FOCDES_API focdes_status focdes_scenarios_write(const focdes_scenarios* s, const char* out_dir);
FOCDES_API void focdes_scenarios_free(focdes_scenarios* s);

typedef struct focdes_study_options {
  int pop_size;          /* 0: 15 x n_var */
  int max_gen;           /* 0: 200 x n_var */
  unsigned threads;      /* 0: hardware concurrency */
  int record_wall_time;  /* 0 writes zero seconds so outputs are byte-reproducible */
} focdes_study_options;

FOCDES_API void focdes_study_options_init(focdes_study_options* opts);

typedef struct focdes_study_report {
  size_t runs_expected;
  size_t runs_completed;
  int cancelled;
} focdes_study_report;

/*
 * Optimization studies. family is slow, fast or pid; variant is uniform,
 * logistic or henon; NULL for either selects all three. Results go under
 * out_dir. A cancelled study returns FOCDES_ERR_CANCELLED after writing
 * the finished runs; the report is filled in either way.
 */
FOCDES_API focdes_status focdes_optimize(const focdes_config* cfg, const char* family, const char* variant, int runs,
                                         uint64_t base_seed, const focdes_study_options* opts, const char* out_dir,
                                         focdes_study_report* report);

/* Compromise JSON for a directory of fronts; criterion NULL evaluates all four. */
FOCDES_API focdes_status focdes_compromise(const char* fronts_dir, const char* criterion, focdes_buffer** out);

/* Front metrics on interleaved (j1, j2) pairs. */
FOCDES_API focdes_status focdes_hypervolume(const double* xy, size_t n_points, double* out);
FOCDES_API focdes_status focdes_spacing(const double* xy, size_t n_points, double* out);
FOCDES_API focdes_status focdes_spread(const double* xy, size_t n_points, double* out);
FOCDES_API focdes_status focdes_diversity(const double* xy, size_t n_points, double* out);
FOCDES_API focdes_status focdes_best_compromise(const double* xy, size_t n_points, size_t* out);

#ifdef __cplusplus
}
#endif

#endif /* FOCDES_FOCDES_H_ */
