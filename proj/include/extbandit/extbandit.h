/* Copyright 2026 The extbandit Authors
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

/* C interface to the extbandit experiment engine.
 *
 * Experiments are configured with a JSON document (see the project README
 * for the schema), run to completion, and queried through an opaque result
 * handle. Every fallible call returns an extbandit_status; on failure
 * extbandit_last_error() holds a message for the calling thread until the
 * next API call on that thread.
 */

#ifndef EXTBANDIT_EXTBANDIT_H_
#define EXTBANDIT_EXTBANDIT_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum extbandit_status {
  EXTBANDIT_OK = 0,
  EXTBANDIT_INVALID_ARGUMENT = 1, /* bad config value or combination */
  EXTBANDIT_PARSE_ERROR = 2,      /* malformed JSON or data file */
  EXTBANDIT_IO_ERROR = 3,
  EXTBANDIT_NUMERIC_ERROR = 4,
  EXTBANDIT_RUNTIME_ERROR = 5
} extbandit_status;

typedef struct extbandit_experiment extbandit_experiment;
typedef struct extbandit_result extbandit_result;

/* Parses and validates a JSON configuration (presets expanded, referenced
 * data files loaded). On success *out owns the experiment. */
extbandit_status extbandit_experiment_create_json(const char* json_text,
                                                  extbandit_experiment** out);
void extbandit_experiment_free(extbandit_experiment* exp);

/* The fully-expanded configuration as a JSON string; free with
 * extbandit_string_free. */
extbandit_status extbandit_experiment_manifest(
    const extbandit_experiment* exp, char** out_json);

/* Runs all replicas. The experiment stays reusable; each call produces an
 * independent result with identical contents for identical configs. */
extbandit_status extbandit_experiment_run(extbandit_experiment* exp,
                                          extbandit_result** out);
void extbandit_result_free(extbandit_result* res);

/* Number of rounds (rows) in the result, or -1 on a null handle. */
int64_t extbandit_result_rounds(const extbandit_result* res);

/* Copies per-round mean / standard deviation of cumulative regret into a
 * caller buffer of capacity len; len must be >= rounds. */
extbandit_status extbandit_result_mean(const extbandit_result* res,
                                       double* out, int64_t len);
extbandit_status extbandit_result_stddev(const extbandit_result* res,
                                         double* out, int64_t len);

/* Writes the CSV and its .meta.json sidecar exactly as the CLI does. */
extbandit_status extbandit_result_write_csv(const extbandit_result* res,
                                            const char* path);

/* Message for the most recent failure on this thread ("" if none). The
 * pointer stays valid until the next extbandit call on the same thread. */
const char* extbandit_last_error(void);

/* Stable name for a status code, e.g. "EXTBANDIT_PARSE_ERROR". */
const char* extbandit_status_name(extbandit_status status);

void extbandit_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EXTBANDIT_EXTBANDIT_H_ */
