/* C interface to the qnb quantum noise budget library. */

#ifndef QNB_H
#define QNB_H

/* This file is generated by cbindgen from qnb-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of an FFI call. Error values mirror the CLI exit codes
 * (2 config, 3 numerical); null-argument and encoding failures get their
 * own codes.
 */
typedef enum QnbStatus {
  QNB_STATUS_OK = 0,
  QNB_STATUS_CONFIG_ERROR = 2,
  QNB_STATUS_NUMERICAL_ERROR = 3,
  QNB_STATUS_NULL_ARGUMENT = 4,
  QNB_STATUS_INVALID_UTF8 = 5,
} QnbStatus;

/**
 * Opaque scenario handle.
 */
typedef struct QnbScenario QnbScenario;

/**
 * Band-integrated noise decomposition, m^2.
 */
typedef struct QnbFilteredNoise {
  double bandwidth;
  double photon_counting;
  double cross_correlation;
  double radiation_pressure;
  double extra_force;
  double total;
} QnbFilteredNoise;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Description of the most recent error on this thread, or NULL if none.
 * The caller owns the returned string and must free it with
 * `qnb_string_free`.
 */
char *qnb_last_error_message(void);

/**
 * Release a string returned by this library. NULL is a no-op.
 *
 * # Safety
 * `s` must be NULL or a pointer previously returned by this library and
 * not yet freed.
 */
void qnb_string_free(char *s);

/**
 * Parse and validate a scenario from a JSON document. On success writes
 * a new handle to `out`.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be a valid
 * pointer.
 */
enum QnbStatus qnb_scenario_parse(const char *json, struct QnbScenario **out);

/**
 * Release a scenario handle. NULL is a no-op.
 *
 * # Safety
 * `scenario` must be NULL or a handle from `qnb_scenario_parse` not yet
 * freed.
 */
void qnb_scenario_free(struct QnbScenario *scenario);

/**
 * Band-integrated noise of the scenario as configured (no optimization).
 *
 * # Safety
 * `scenario` must be a valid handle and `out` a valid pointer.
 */
enum QnbStatus qnb_filtered_noise(const struct QnbScenario *scenario, struct QnbFilteredNoise *out);

/**
 * Run the configured strategies and return the comparison report as a
 * JSON string (same document the CLI `compare` subcommand emits).
 *
 * # Safety
 * `scenario` must be a valid handle and `out` a valid pointer.
 */
enum QnbStatus qnb_compare_json(const struct QnbScenario *scenario, char **out);

/**
 * Tabulate the noise budget as CSV (`omega,pc,xc,rp,ef,total`) over a
 * frequency grid of `count` points from `min` to `max`, log-spaced when
 * `log_scale` is nonzero.
 *
 * # Safety
 * `scenario` must be a valid handle and `out` a valid pointer.
 */
enum QnbStatus qnb_spectrum_csv(const struct QnbScenario *scenario,
                                double min,
                                double max,
                                size_t count,
                                int32_t log_scale,
                                char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QNB_H */
