#ifndef PAULI_MINIMAX_H
#define PAULI_MINIMAX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PmStatus {
  PM_STATUS_OK = 0,
  PM_STATUS_NULL_POINTER = 1,
  PM_STATUS_INVALID_UTF8 = 2,
  PM_STATUS_PARSE_ERROR = 3,
  PM_STATUS_INVALID_DISTRIBUTION = 4,
  PM_STATUS_INVALID_ARGUMENT = 5,
  PM_STATUS_OUT_OF_RANGE = 6,
  PM_STATUS_OVERFLOW = 7,
  PM_STATUS_INTERNAL = 8,
  PM_STATUS_PANIC = 9,
} PmStatus;

/**
 * A validated pair of Pauli channels.
 */
typedef struct PmPair PmPair;

/**
 * The full analysis of a pair.
 */
typedef struct PmReport PmReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a clean success.
 * The pointer stays valid until the next `pm_*` call on the same thread.
 */
const char *pm_last_error(void);

/**
 * Build a pair from two arrays of four weight strings ("3/10", "0.3", "1").
 *
 * # Safety
 * `q1` and `q2` must each point to four valid NUL-terminated strings.
 */
enum PmStatus pm_pair_new(const char *const *q1, const char *const *q2, struct PmPair **pair);

/**
 * Build a pair from pair-file JSON.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string.
 */
enum PmStatus pm_pair_from_json(const char *json, struct PmPair **pair);

/**
 * # Safety
 * `pair` must come from `pm_pair_new`/`pm_pair_from_json` and not be freed twice. Null is ignored.
 */
void pm_pair_free(struct PmPair *pair);

/**
 * Exact entangled Bayes risk at the prior `p_num / p_den`.
 *
 * # Safety
 * `pair` must be a live handle; output pointers must be writable.
 */
enum PmStatus pm_bayes_risk_entangled(const struct PmPair *pair,
                                      int64_t p_num,
                                      int64_t p_den,
                                      int64_t *num,
                                      int64_t *den);

/**
 * Exact no-ancilla Bayes risk at the prior `p_num / p_den`.
 *
 * # Safety
 * `pair` must be a live handle; output pointers must be writable.
 */
enum PmStatus pm_bayes_risk_no_ancilla(const struct PmPair *pair,
                                       int64_t p_num,
                                       int64_t p_den,
                                       int64_t *num,
                                       int64_t *den);

/**
 * Run the full analysis.
 *
 * # Safety
 * `pair` must be a live handle; `report` must be writable.
 */
enum PmStatus pm_report_new(const struct PmPair *pair, struct PmReport **report);

/**
 * # Safety
 * `report` must come from `pm_report_new` and not be freed twice. Null is ignored.
 */
void pm_report_free(struct PmReport *report);

/**
 * Minimax risk with an entangled input, and its worst prior (left end of any plateau).
 *
 * # Safety
 * `report` must be a live handle; output pointers must be writable.
 */
enum PmStatus pm_report_entangled(const struct PmReport *report,
                                  int64_t *risk_num,
                                  int64_t *risk_den,
                                  int64_t *prior_num,
                                  int64_t *prior_den);

/**
 * Minimax risk without ancilla, and its worst prior (left end of any plateau).
 *
 * # Safety
 * `report` must be a live handle; output pointers must be writable.
 */
enum PmStatus pm_report_no_ancilla(const struct PmReport *report,
                                   int64_t *risk_num,
                                   int64_t *risk_den,
                                   int64_t *prior_num,
                                   int64_t *prior_den);

/**
 * Case label such as "T5_middle_double" or "Mirror_T5_triple_left".
 *
 * # Safety
 * `report` must be a live handle; `label` must be writable.
 */
enum PmStatus pm_report_case_label(const struct PmReport *report, char **label);

/**
 * Whether an entangled input strictly lowers the minimax risk.
 *
 * # Safety
 * `report` must be a live handle; `helps` must be writable.
 */
enum PmStatus pm_report_entanglement_helps(const struct PmReport *report, bool *helps);

/**
 * Number of optimal single-qubit inputs; 0 for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
size_t pm_report_state_count(const struct PmReport *report);

/**
 * Bloch vector of optimal input `index`.
 *
 * # Safety
 * `report` must be a live handle; `bloch` must point to three writable doubles.
 */
enum PmStatus pm_report_state(const struct PmReport *report, size_t index, double *bloch);

/**
 * The report as JSON (same schema as the command-line `analyze`).
 *
 * # Safety
 * `report` must be a live handle; `json` must be writable.
 */
enum PmStatus pm_report_json(const struct PmReport *report, char **json);

/**
 * Risk-curve CSV on `points` uniform priors plus every breakpoint.
 *
 * # Safety
 * `pair` must be a live handle; `csv` must be writable.
 */
enum PmStatus pm_sweep_csv(const struct PmPair *pair, size_t points, char **csv);

/**
 * Run the randomized verification suites.
 *
 * # Safety
 * `all_passed` must be writable.
 */
enum PmStatus pm_verify(size_t trials, uint64_t seed, bool *all_passed);

/**
 * # Safety
 * `s` must come from a `pm_*` out-parameter and not be freed twice. Null is ignored.
 */
void pm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PAULI_MINIMAX_H */
