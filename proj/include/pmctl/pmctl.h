/* Copyright 2026 The pmctl Authors
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

/* C interface to libpmctl.
 *
 * Every function returns a status code; on failure a description is
 * available from pmctl_last_error() on the calling thread until the next
 * call. Handles are opaque and owned by the caller once returned. Strings
 * handed out by the library stay valid until the owning handle is freed,
 * except those from pmctl_field_to_json(), which need pmctl_string_free().
 *
 * Commands take a JSON config (frequencies in MHz, times in ns/us) and
 * produce a summary document plus named data files; see README.md for the
 * keys each command accepts.
 */

#ifndef PMCTL_PMCTL_H_
#define PMCTL_PMCTL_H_

#include <stddef.h>

#if defined(PMCTL_BUILDING_LIBRARY)
#define PMCTL_API __attribute__((visibility("default")))
#else
#define PMCTL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pmctl_status {
    PMCTL_OK = 0,
    PMCTL_ERR_ARGUMENT = 1, /* null pointer, out-of-range value */
    PMCTL_ERR_CONFIG = 2,   /* malformed config or field document */
    PMCTL_ERR_NUMERIC = 3,  /* ran, but no usable answer; the result is still filled in */
    PMCTL_ERR_CONTRACT = 4, /* internal invariant violated */
    PMCTL_ERR_INTERNAL = 5  /* anything else, including allocation failure */
} pmctl_status;

typedef struct pmctl_field pmctl_field;
typedef struct pmctl_result pmctl_result;

PMCTL_API const char* pmctl_version(void);
PMCTL_API const char* pmctl_last_error(void);

/* ---- control fields ---------------------------------------------------- */

PMCTL_API pmctl_status pmctl_field_from_json(const char* json, pmctl_field** out);
PMCTL_API pmctl_status pmctl_field_to_json(const pmctl_field* field, char** out);
PMCTL_API void pmctl_string_free(char* s);
PMCTL_API void pmctl_field_free(pmctl_field* field);

/* Horizon in seconds. */
PMCTL_API pmctl_status pmctl_field_horizon(const pmctl_field* field, double* seconds);
/* Complex envelope c(t) in rad/s. */
PMCTL_API pmctl_status pmctl_field_envelope(const pmctl_field* field, double t_seconds, double* re, double* im);
/* |<up| U(T) |down>|^2 for one detuning (rad/s) and amplitude scale. */
PMCTL_API pmctl_status pmctl_field_transfer_probability(const pmctl_field* field, double delta, double alpha,
                                                        double dt_seconds, double* probability);

/* ---- commands ---------------------------------------------------------- */

/* command: "optimize", "eval", "map", "sweep", "dd" or "spectrum". */
PMCTL_API pmctl_status pmctl_run(const char* command, const char* config_json, pmctl_result** out);

PMCTL_API pmctl_status pmctl_optimize(const char* config_json, pmctl_result** out);
PMCTL_API pmctl_status pmctl_eval(const char* config_json, pmctl_result** out);
PMCTL_API pmctl_status pmctl_map(const char* config_json, pmctl_result** out);
PMCTL_API pmctl_status pmctl_sweep(const char* config_json, pmctl_result** out);
PMCTL_API pmctl_status pmctl_dd(const char* config_json, pmctl_result** out);
PMCTL_API pmctl_status pmctl_spectrum(const char* config_json, pmctl_result** out);

PMCTL_API const char* pmctl_result_summary(const pmctl_result* result);
PMCTL_API size_t pmctl_result_artifact_count(const pmctl_result* result);
/* NULL when index is out of range. */
PMCTL_API const char* pmctl_result_artifact_name(const pmctl_result* result, size_t index);
PMCTL_API const char* pmctl_result_artifact_data(const pmctl_result* result, size_t index, size_t* size);
PMCTL_API void pmctl_result_free(pmctl_result* result);

#ifdef __cplusplus
}
#endif

#endif /* PMCTL_PMCTL_H_ */
