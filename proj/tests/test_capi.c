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

// Plain C client of the shared library.
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "psgrowth/psgrowth.h"

static int failures = 0;

#define CHECK(cond)                                             \
  do {                                                          \
    if (!(cond)) {                                              \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                               \
    }                                                           \
  } while (0)

int main(void) {
  psg_space* f2 = NULL;
  CHECK(psg_space_free_group(2, &f2) == PSG_OK);

  char* s = NULL;
  CHECK(psg_translation_length(f2, "abA", &s) == PSG_OK);
  CHECK(s && strcmp(s, "1") == 0);
  psg_free_string(s);
  CHECK(psg_translation_length(f2, "abAB", &s) == PSG_OK);
  CHECK(s && strcmp(s, "4") == 0);
  psg_free_string(s);
  CHECK(psg_space_dist(f2, "ab", "aB", &s) == PSG_OK);
  CHECK(s && strcmp(s, "2") == 0);
  psg_free_string(s);

  const char* words[] = {"a", "b"};
  psg_set* u = NULL;
  CHECK(psg_set_parse(f2, words, 2, &u) == PSG_OK);
  CHECK(psg_set_size(u) == 2);
  uint64_t sizes[4] = {0};
  unsigned computed = 0;
  CHECK(psg_product_sizes(u, 4, 1000000, sizes, &computed) == PSG_OK);
  CHECK(computed == 4 && sizes[0] == 2 && sizes[1] == 4 && sizes[2] == 8 && sizes[3] == 16);
  psg_set_destroy(u);

  const char* bad[] = {"a?"};
  psg_set* v = NULL;
  CHECK(psg_set_parse(f2, bad, 1, &v) != PSG_OK);
  CHECK(v == NULL);
  CHECK(strlen(psg_last_error()) > 0);
  CHECK(psg_set_parse(NULL, words, 2, &v) == PSG_INVALID_ARGUMENT);

  psg_set* safin = NULL;
  CHECK(psg_set_safin(f2, 3, &safin) == PSG_OK);
  CHECK(psg_set_size(safin) == 8);
  /* The set keeps the space alive. */
  psg_space_destroy(f2);
  CHECK(psg_energy(safin, &s) == PSG_OK);
  CHECK(s && strstr(s, "\"case\"") != NULL);
  psg_free_string(s);
  psg_set_destroy(safin);

  char* report = NULL;
  char* csv = NULL;
  int exit_code = -1;
  CHECK(psg_run_config("{\"command\": \"growth\", \"set\": {\"safin\": 2}, \"n\": 2}", &report, &csv,
                       &exit_code) == PSG_OK);
  CHECK(exit_code == PSG_EXIT_OK);
  CHECK(report && strstr(report, "\"config_echo\"") != NULL);
  CHECK(csv && strncmp(csv, "n,size,bound,holds\n", 19) == 0);
  psg_free_string(report);
  psg_free_string(csv);
  CHECK(psg_run_config("{\"command\": \"growth\", \"space\": {\"backend\": \"nope\"}}", &report, NULL,
                       &exit_code) == PSG_OK);
  CHECK(exit_code == PSG_EXIT_CONFIG);
  psg_free_string(report);

  psg_space* z = NULL;
  CHECK(psg_space_from_json("{\"backend\": \"free_product\", \"orders\": [5, 7]}", &z) == PSG_OK);
  CHECK(psg_space_describe(z, &s) == PSG_OK);
  CHECK(s && strstr(s, "Z/5*Z/7") != NULL);
  psg_free_string(s);
  psg_space_destroy(z);
  CHECK(psg_space_from_json("{\"backend\": \"free_group\", \"bogus\": 1}", &z) == PSG_CONFIG);

  if (failures) return 1;
  printf("capi: ok\n");
  return 0;
}
