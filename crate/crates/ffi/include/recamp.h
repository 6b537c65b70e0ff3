#ifndef RECAMP_H
#define RECAMP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RecampAlgorithm {
  RECAMP_ALGORITHM_AUTO = 0,
  RECAMP_ALGORITHM_CRC1 = 1,
  RECAMP_ALGORITHM_B_MATCH = 2,
  RECAMP_ALGORITHM_FPT = 3,
  RECAMP_ALGORITHM_E1 = 4,
  RECAMP_ALGORITHM_E2 = 5,
  RECAMP_ALGORITHM_BRUTE = 6,
} RecampAlgorithm;

typedef enum RecampStatus {
  RECAMP_STATUS_OK = 0,
  RECAMP_STATUS_NULL_POINTER = 1,
  RECAMP_STATUS_INVALID_UTF8 = 2,
  RECAMP_STATUS_PARSE = 3,
  RECAMP_STATUS_INVALID = 4,
  RECAMP_STATUS_WRONG_VARIANT = 5,
  RECAMP_STATUS_RESOURCE = 6,
  RECAMP_STATUS_INTERNAL = 7,
} RecampStatus;

/**
 * A parsed recampaigning instance.
 */
typedef struct RecampInstance RecampInstance;

/**
 * The outcome of [`recamp_solve`].
 */
typedef struct RecampResult RecampResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an instance document. On success `*out` owns a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string or null; `out` must be writable or
 * null.
 */
enum RecampStatus recamp_instance_from_json(const char *json, struct RecampInstance **out);

/**
 * Renders an instance as a document. On success `*out` owns a new string.
 *
 * # Safety
 * `inst` must be a live handle or null; `out` must be writable or null.
 */
enum RecampStatus recamp_instance_to_json(const struct RecampInstance *inst, char **out);

/**
 * Number of districts, or 0 for a null handle.
 *
 * # Safety
 * `inst` must be a live handle or null.
 */
size_t recamp_instance_district_count(const struct RecampInstance *inst);

/**
 * Number of additional candidates, or 0 for a null handle.
 *
 * # Safety
 * `inst` must be a live handle or null.
 */
size_t recamp_instance_additional_count(const struct RecampInstance *inst);

/**
 * # Safety
 * `inst` must be a handle from [`recamp_instance_from_json`] not yet freed,
 * or null.
 */
void recamp_instance_free(struct RecampInstance *inst);

/**
 * Decides an instance. A `node_budget` of 0 selects the default brute-force
 * budget. A No answer is a successful call; inspect it with
 * [`recamp_result_is_yes`].
 *
 * # Safety
 * `inst` must be a live handle or null; `out` must be writable or null.
 */
enum RecampStatus recamp_solve(const struct RecampInstance *inst,
                               enum RecampAlgorithm algorithm,
                               uint64_t node_budget,
                               struct RecampResult **out);

/**
 * # Safety
 * `res` must be a live handle or null.
 */
bool recamp_result_is_yes(const struct RecampResult *res);

/**
 * Writes the witness cost of a Yes answer on a priced instance to `*cost`
 * and returns true; returns false otherwise.
 *
 * # Safety
 * `res` must be a live handle or null; `cost` must be writable or null.
 */
bool recamp_result_cost(const struct RecampResult *res, uint64_t *cost);

/**
 * Renders the run report (answer, algorithm, assignment, cost, statistics).
 *
 * # Safety
 * `res` must be a live handle or null; `out` must be writable or null.
 */
enum RecampStatus recamp_result_to_json(const struct RecampResult *res, char **out);

/**
 * # Safety
 * `res` must be a handle from [`recamp_solve`] not yet freed, or null.
 */
void recamp_result_free(struct RecampResult *res);

/**
 * Checks an assignment document against an instance; `*valid` receives the
 * verdict.
 *
 * # Safety
 * `inst` must be a live handle or null; `assignment_json` a NUL-terminated
 * string or null; `valid` writable or null.
 */
enum RecampStatus recamp_verify_json(const struct RecampInstance *inst,
                                     const char *assignment_json,
                                     bool *valid);

/**
 * Winners of an election document under a rule such as `borda` or
 * `t-approval:2`, as a JSON array of names.
 *
 * # Safety
 * `election_json` and `rule` must be NUL-terminated strings or null; `out`
 * writable or null.
 */
enum RecampStatus recamp_winners_json(const char *election_json, const char *rule, char **out);

/**
 * Message for the last failed call on this thread, or null after a
 * successful call. Valid until the next call on the same thread.
 */
const char *recamp_last_error_message(void);

/**
 * # Safety
 * `s` must be a string returned by this library not yet freed, or null.
 */
void recamp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RECAMP_H */
