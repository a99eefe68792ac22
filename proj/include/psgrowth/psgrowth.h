// Copyright 2026 The psgrowth Authors
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

// C interface to the psgrowth library.
//
// Strings returned through char** are heap-allocated and released with
// psg_free_string. On a nonzero status the out-parameters are untouched and
// psg_last_error() describes the failure (thread-local, valid until the next
// call on the same thread).
#ifndef PSGROWTH_PSGROWTH_H_
#define PSGROWTH_PSGROWTH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PSG_API __declspec(dllexport)
#else
#define PSG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum psg_status {
  PSG_OK = 0,
  PSG_INVALID_ARGUMENT = 1,
  PSG_CONTEXT_MISMATCH = 2,
  PSG_PARSE = 3,
  PSG_BUDGET_EXCEEDED = 4,
  PSG_UNSUPPORTED = 5,
  PSG_CONFIG = 6,
  PSG_INTERNAL = 7
} psg_status;

// Process exit codes used by psg_run_config.
enum {
  PSG_EXIT_OK = 0,
  PSG_EXIT_FAILURE = 1,
  PSG_EXIT_VIOLATION = 2,
  PSG_EXIT_TRUNCATED = 3,
  PSG_EXIT_CONFIG = 4
};

typedef struct psg_space psg_space;
typedef struct psg_set psg_set;

PSG_API const char* psg_version(void);
PSG_API const char* psg_last_error(void);
PSG_API void psg_free_string(char* s);

// Spaces. psg_space_from_json takes the "space" object of a config.
PSG_API psg_status psg_space_free_group(unsigned rank, psg_space** out);
PSG_API psg_status psg_space_free_product(uint32_t order_a, uint32_t order_b, psg_space** out);
PSG_API psg_status psg_space_from_json(const char* space_json, psg_space** out);
PSG_API void psg_space_destroy(psg_space* space);
// Constants as JSON: backend, delta, edge_length, rho0, kappa0, n0.
PSG_API psg_status psg_space_describe(const psg_space* space, char** json_out);
// Exact distance between two points, as a rational string.
PSG_API psg_status psg_space_dist(const psg_space* space, const char* x, const char* y, char** out);
PSG_API psg_status psg_translation_length(const psg_space* space, const char* element, char** out);

// Finite sets of group elements. A set keeps its space alive.
PSG_API psg_status psg_set_parse(const psg_space* space, const char* const* words, size_t count, psg_set** out);
PSG_API psg_status psg_set_safin(const psg_space* space, unsigned n, psg_set** out);
PSG_API psg_status psg_set_random(const psg_space* space, uint64_t seed, unsigned count, unsigned max_length,
                                  psg_set** out);
PSG_API size_t psg_set_size(const psg_set* set);
// Canonical words, newline separated.
PSG_API psg_status psg_set_words(const psg_set* set, char** out);
PSG_API void psg_set_destroy(psg_set* set);

// sizes[k-1] = |U^k| for k <= n; *computed is how many were filled before
// the budget ran out.
PSG_API psg_status psg_product_sizes(const psg_set* set, unsigned n, uint64_t budget, uint64_t* sizes,
                                     unsigned* computed);
// Energy profile and case split as JSON, practical defaults.
PSG_API psg_status psg_energy(const psg_set* set, char** json_out);

// Runs an experiment config. Config and budget problems are reported through
// *exit_code and the report, not the status. sizes_csv may be NULL.
PSG_API psg_status psg_run_config(const char* config_json, char** report_json, char** sizes_csv, int* exit_code);
// Writes report.json (and sizes.csv when nonempty) into dir.
PSG_API psg_status psg_write_outputs(const char* dir, const char* report_json, const char* sizes_csv);
PSG_API psg_status psg_verify_all(uint64_t seed, uint64_t budget, char** report_json, int* exit_code);
// One acceptance criterion: *pass, a one-line summary and its JSON data.
PSG_API psg_status psg_run_criterion(int id, uint64_t seed, uint64_t budget, int* pass, char** line,
                                     char** data_json);

#ifdef __cplusplus
}
#endif

#endif  // PSGROWTH_PSGROWTH_H_
