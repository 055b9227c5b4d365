// Copyright 2026 The mcnc Authors.
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

/* C interface to libmcnc. All structured results are JSON strings owned by
 * the caller and released with mcnc_string_free. Handles are opaque. */
#ifndef MCNC_MCNC_H_
#define MCNC_MCNC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MCNC_API __declspec(dllexport)
#else
#define MCNC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  MCNC_OK = 0,
  MCNC_CHECK_FAILED = 1, /* a verification ran and failed; see the result JSON */
  MCNC_INVALID_INPUT = 2,
  MCNC_BUDGET_EXCEEDED = 3,
  MCNC_INTERNAL = 4
} mcnc_status;

typedef struct mcnc_instance mcnc_instance;
typedef struct mcnc_bundle mcnc_bundle;

typedef enum {
  MCNC_MODE_AUTO = 0, /* exhaustive up to exhaustive_limit vertices */
  MCNC_MODE_EXHAUSTIVE = 1,
  MCNC_MODE_SAMPLED = 2
} mcnc_mode;

typedef struct {
  mcnc_mode mode;
  size_t samples;
  uint64_t seed;
  int has_seed; /* sampled mode requires a seed */
  size_t exhaustive_limit;
  int skip_bruteforce;
  size_t bruteforce_limit;
  size_t max_paths;
  size_t simulation_trials;
} mcnc_options;

MCNC_API mcnc_options mcnc_default_options(void);

/* Message for the most recent failure on this thread; empty after success. */
MCNC_API const char* mcnc_last_error(void);
MCNC_API void mcnc_string_free(char* s);
MCNC_API const char* mcnc_version(void);

MCNC_API mcnc_status mcnc_instance_from_json(const char* json, mcnc_instance** out);
MCNC_API mcnc_status mcnc_instance_to_json(const mcnc_instance* inst, char** out);
MCNC_API void mcnc_instance_free(mcnc_instance* inst);
MCNC_API size_t mcnc_instance_vertex_count(const mcnc_instance* inst);
/* Counts and terminal summary of a parsed instance. */
MCNC_API mcnc_status mcnc_instance_summary(const mcnc_instance* inst, char** out);

MCNC_API mcnc_status mcnc_path_instance(size_t n, mcnc_instance** out);
MCNC_API mcnc_status mcnc_instance_product(const mcnc_instance* a, const mcnc_instance* b, mcnc_instance** out);

/* `inst` may be NULL when the bundle embeds its instance. */
MCNC_API mcnc_status mcnc_bundle_from_json(const char* json, const mcnc_instance* inst, mcnc_bundle** out);
MCNC_API mcnc_status mcnc_bundle_to_json(const mcnc_bundle* bundle, int with_instance, char** out);
MCNC_API void mcnc_bundle_free(mcnc_bundle* bundle);
MCNC_API mcnc_status mcnc_bundle_instance(const mcnc_bundle* bundle, mcnc_instance** out);

/* paths_json: [{"commodity": i, "vertices": [labels...]}]. */
MCNC_API mcnc_status mcnc_path_code(const mcnc_instance* inst, const char* paths_json, uint32_t modulus,
                                    mcnc_bundle** out);
MCNC_API mcnc_status mcnc_bundle_product(const mcnc_bundle* a, const mcnc_bundle* b, const char* left_name,
                                         const char* right_name, mcnc_bundle** out);
MCNC_API mcnc_status mcnc_saks_bundle(size_t n, size_t k, mcnc_bundle** out);

MCNC_API mcnc_status mcnc_min_multicut(const mcnc_instance* inst, size_t max_vertices, char** out);
MCNC_API mcnc_status mcnc_minimal_multicuts(const mcnc_instance* inst, char** out);
/* max_len 0 means |V|. */
MCNC_API mcnc_status mcnc_flow(const mcnc_instance* inst, size_t max_len, size_t max_paths, char** out);

/* Checks validity, decodability and certifiability witnesses. Returns
 * MCNC_CHECK_FAILED with the failing clause in `out` when one fails. */
MCNC_API mcnc_status mcnc_check_code(const mcnc_bundle* bundle, const mcnc_options* options, char** out);
MCNC_API mcnc_status mcnc_simulate(const mcnc_bundle* bundle, size_t trials, uint64_t seed, char** out);

/* Family verification; `table` (optional) receives the text table. */
MCNC_API mcnc_status mcnc_saks(size_t n, size_t k, const mcnc_options* options, char** out, char** table);
MCNC_API mcnc_status mcnc_corollary2(const mcnc_instance* inst, const char* paths_json, size_t k,
                                     const mcnc_options* options, char** out, char** table);

/* Flow value, coding rate, rho, |f(T)| and the brute-force cut when small enough. */
MCNC_API mcnc_status mcnc_report(const mcnc_bundle* bundle, const mcnc_options* options, char** out, char** table);

#ifdef __cplusplus
}
#endif

#endif /* MCNC_MCNC_H_ */
