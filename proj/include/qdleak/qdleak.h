/* Copyright 2026 The qdleak Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of libqdleak.
 *
 * Every fallible call returns a qdleak_status; on failure a description is
 * available from qdleak_last_error() on the same thread until the next call.
 */

#ifndef QDLEAK_QDLEAK_H
#define QDLEAK_QDLEAK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(QDLEAK_BUILDING_LIBRARY)
#define QDLEAK_API __declspec(dllexport)
#else
#define QDLEAK_API __declspec(dllimport)
#endif
#else
#define QDLEAK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qdleak_status {
    QDLEAK_OK = 0,
    QDLEAK_ERR_ARGUMENT = 1,
    QDLEAK_ERR_CONFIG = 2,
    QDLEAK_ERR_NUMERICAL = 3,
    QDLEAK_ERR_DEGENERATE = 4,
    QDLEAK_ERR_DIMENSION = 5,
    QDLEAK_ERR_CONTRACT = 6,
    QDLEAK_ERR_IO = 7,
    QDLEAK_ERR_INTERNAL = 8
} qdleak_status;

typedef enum qdleak_basis { QDLEAK_BASIS_COMPUTATIONAL = 0, QDLEAK_BASIS_HADAMARD = 1 } qdleak_basis;

typedef enum qdleak_mode { QDLEAK_MODE_ANALYTIC = 0, QDLEAK_MODE_HAAR = 1 } qdleak_mode;

QDLEAK_API const char *qdleak_version(void);

/* Message of the last failed call on this thread; "" if none. */
QDLEAK_API const char *qdleak_last_error(void);

QDLEAK_API const char *qdleak_status_name(qdleak_status status);

/* ---- scalar quantities ---- */

QDLEAK_API qdleak_status qdleak_analytic_pguess(int n_layers, double epsilon, double alpha, double *out);
QDLEAK_API qdleak_status qdleak_key_rate(double p_guess, double *out);
QDLEAK_API qdleak_status qdleak_mutual_information(double p_guess, double *out);

/* Helstrom guessing probability for two dim x dim density matrices given as
 * row-major interleaved (re, im) arrays of length 2 * dim * dim. */
QDLEAK_API qdleak_status qdleak_helstrom_pguess(const double *rho0, const double *rho1, size_t dim, double lambda,
                                                double *out);

/* ---- single scenarios ---- */

typedef struct qdleak_scenario qdleak_scenario;

QDLEAK_API qdleak_status qdleak_scenario_create(qdleak_scenario **out);
QDLEAK_API void qdleak_scenario_destroy(qdleak_scenario *scenario);

QDLEAK_API qdleak_status qdleak_scenario_set_layers(qdleak_scenario *scenario, int n_layers, int qubits_per_layer);
QDLEAK_API qdleak_status qdleak_scenario_set_interaction(qdleak_scenario *scenario, qdleak_mode mode,
                                                         double epsilon, double alpha);
QDLEAK_API qdleak_status qdleak_scenario_set_basis(qdleak_scenario *scenario, qdleak_basis basis);
QDLEAK_API qdleak_status qdleak_scenario_set_seed(qdleak_scenario *scenario, uint64_t seed);
/* 1-based; 0 selects the last layer. */
QDLEAK_API qdleak_status qdleak_scenario_set_eve_layer(qdleak_scenario *scenario, int layer);

/* Runs both key bits with one device realization and returns Eve's full
 * control guessing probability on the chosen layer. */
QDLEAK_API qdleak_status qdleak_scenario_pguess(const qdleak_scenario *scenario, double *out);

/* Same, with Eve confined to a 2^k-dimensional subspace of the layer, drawn
 * Haar-randomly from the scenario seed. */
QDLEAK_API qdleak_status qdleak_scenario_pguess_rank_limited(const qdleak_scenario *scenario, int controlled_qubits,
                                                             double *out);

/* Decoherence factor of the A-E_1 interaction for the rejected round measured
 * in the scenario basis and prepared in the other one. */
QDLEAK_API qdleak_status qdleak_scenario_gamma(const qdleak_scenario *scenario, double *out);

/* ---- experiment sweeps ---- */

typedef struct qdleak_sweep qdleak_sweep;

/* `experiment` is a command name such as "layers-table". */
QDLEAK_API qdleak_status qdleak_sweep_create(const char *experiment, qdleak_sweep **out);
QDLEAK_API void qdleak_sweep_destroy(qdleak_sweep *sweep);

QDLEAK_API qdleak_status qdleak_sweep_load_config(qdleak_sweep *sweep, const char *path);
/* Same keys as the config file. */
QDLEAK_API qdleak_status qdleak_sweep_set(qdleak_sweep *sweep, const char *key, const char *value);

/* Configured output path; "" when unset. Valid until the next call on the
 * handle. */
QDLEAK_API const char *qdleak_sweep_output_path(const qdleak_sweep *sweep);

/* Runs the sweep and keeps the rows in the handle. */
QDLEAK_API qdleak_status qdleak_sweep_run(qdleak_sweep *sweep);
QDLEAK_API size_t qdleak_sweep_row_count(const qdleak_sweep *sweep);

/* Writes the rows of the last run as CSV; a NULL path uses the configured
 * output path. */
QDLEAK_API qdleak_status qdleak_sweep_write_csv(const qdleak_sweep *sweep, const char *path);

/* CSV of the last run in a buffer owned by the caller; release it with
 * qdleak_string_free. */
QDLEAK_API qdleak_status qdleak_sweep_csv(const qdleak_sweep *sweep, char **out);
QDLEAK_API void qdleak_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif /* QDLEAK_QDLEAK_H */
