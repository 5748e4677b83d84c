// Copyright 2026 The marsolve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MAR_MAR_H
#define MAR_MAR_H

/* C interface to the marsolve library. Objects are opaque handles owned by
 * the caller and released with the matching *_free function. Every fallible
 * call returns a mar_status; on failure mar_last_error() describes the cause
 * for the calling thread. */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(MAR_BUILDING_LIBRARY)
#    define MAR_API __declspec(dllexport)
#  else
#    define MAR_API __declspec(dllimport)
#  endif
#else
#  define MAR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mar_status {
  MAR_OK = 0,
  MAR_ERR_USAGE = 1,      /* bad argument: null handle, index out of range */
  MAR_ERR_CONFIG = 2,     /* invalid scenario or unreadable config */
  MAR_ERR_INFEASIBLE = 3, /* no feasible allocation */
  MAR_ERR_SOLVER = 4      /* numerical failure or iteration cap */
} mar_status;

typedef enum mar_redundancy {
  MAR_REDUNDANCY_REWARD = 0,
  MAR_REDUNDANCY_PAPER = 1
} mar_redundancy;

typedef struct mar_scenario mar_scenario;
typedef struct mar_outcome mar_outcome;

/* Message of the last failed call on this thread; never NULL. */
MAR_API const char* mar_last_error(void);
MAR_API const char* mar_status_name(mar_status status);

/* Scenarios ------------------------------------------------------------ */
MAR_API mar_status mar_scenario_default(mar_scenario** out);
MAR_API mar_status mar_scenario_load(const char* path, mar_scenario** out);
MAR_API mar_status mar_scenario_parse(const char* text, mar_scenario** out);
MAR_API mar_status mar_scenario_clone(const mar_scenario* scenario, mar_scenario** out);
MAR_API void mar_scenario_free(mar_scenario* scenario);

/* Scalar keys as in the config file: carrier_frequency_hz, bandwidth_hz,
 * noise_power_w, distance_factor, lambda, mu, gamma, r_th_bps,
 * total_power_w, epsilon. Setters validate the resulting scenario and leave
 * it unchanged on failure. */
MAR_API mar_status mar_scenario_set(mar_scenario* scenario, const char* key, double value);
MAR_API mar_status mar_scenario_get(const mar_scenario* scenario, const char* key, double* value);
MAR_API mar_status mar_scenario_set_redundancy(mar_scenario* scenario, mar_redundancy convention);
MAR_API mar_redundancy mar_scenario_redundancy(const mar_scenario* scenario);
MAR_API size_t mar_scenario_num_users(const mar_scenario* scenario);

/* Per-user link quantities; user is 0-based, tier is 1..3. */
MAR_API mar_status mar_user_distance(const mar_scenario* scenario, size_t user, double* meters);
MAR_API mar_status mar_user_gain(const mar_scenario* scenario, size_t user, double* gain);
MAR_API mar_status mar_min_power(const mar_scenario* scenario, size_t user, int tier, double* watts);

/* Writes the scenario in config-file form. Returns the full length; at most
 * cap - 1 bytes plus a terminator are copied into buf (buf may be NULL when
 * cap is 0). */
MAR_API size_t mar_scenario_to_text(const mar_scenario* scenario, char* buf, size_t cap);

/* Solvers -------------------------------------------------------------- */
MAR_API mar_status mar_solve_oa(const mar_scenario* scenario, mar_outcome** out);
MAR_API mar_status mar_solve_greedy(const mar_scenario* scenario, mar_outcome** out);
MAR_API void mar_outcome_free(mar_outcome* outcome);

MAR_API double mar_outcome_utility(const mar_outcome* outcome);
MAR_API double mar_outcome_objective(const mar_outcome* outcome);
MAR_API int mar_outcome_feasible(const mar_outcome* outcome);
MAR_API size_t mar_outcome_num_users(const mar_outcome* outcome);
MAR_API int mar_outcome_tier(const mar_outcome* outcome, size_t user);
MAR_API double mar_outcome_power(const mar_outcome* outcome, size_t user);
MAR_API int mar_outcome_iterations(const mar_outcome* outcome);
MAR_API double mar_outcome_gap(const mar_outcome* outcome);

/* Outer-approximation trace; empty for greedy outcomes. */
MAR_API size_t mar_outcome_trace_length(const mar_outcome* outcome);
MAR_API mar_status mar_outcome_trace_record(const mar_outcome* outcome, size_t index, int* iter,
                                            double* z_ub, double* z_lb, double* gap);
/* Same length/copy convention as mar_scenario_to_text. */
MAR_API size_t mar_outcome_trace_csv(const mar_outcome* outcome, char* buf, size_t cap);
MAR_API size_t mar_outcome_master_listing(const mar_outcome* outcome, char* buf, size_t cap);

#ifdef __cplusplus
}
#endif

#endif /* MAR_MAR_H */
