#ifndef NUSP_H
#define NUSP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>

typedef enum NuspPersistence {
  NUSP_PERSISTENCE_LITERAL = 0,
  NUSP_PERSISTENCE_PRESERVE = 1,
} NuspPersistence;

/**
 * Result codes.
 */
typedef enum NuspStatus {
  NUSP_STATUS_OK = 0,
  NUSP_STATUS_NULL_ARGUMENT = 1,
  NUSP_STATUS_INVALID_UTF8 = 2,
  NUSP_STATUS_PARSE = 3,
  NUSP_STATUS_INVALID_NETWORK = 4,
  NUSP_STATUS_INVALID_INPUT = 5,
  NUSP_STATUS_COMPILE = 6,
  NUSP_STATUS_PANIC = 7,
} NuspStatus;

typedef enum NuspTmVerdict {
  NUSP_TM_VERDICT_ACCEPT = 0,
  NUSP_TM_VERDICT_REJECT = 1,
  NUSP_TM_VERDICT_BOUND_EXCEEDED = 2,
} NuspTmVerdict;

typedef enum NuspVerdict {
  NUSP_VERDICT_ACCEPTED = 0,
  NUSP_VERDICT_STEP_LIMIT_REACHED = 1,
  NUSP_VERDICT_RESOURCE_LIMIT_REACHED = 2,
  NUSP_VERDICT_CYCLE_DETECTED = 3,
  NUSP_VERDICT_EXHAUSTED = 4,
} NuspVerdict;

/**
 * Opaque machine handle.
 */
typedef struct NuspMachine NuspMachine;

/**
 * Opaque network handle.
 */
typedef struct NuspNetwork NuspNetwork;

/**
 * Outcome of [`nusp_run`]. `step` is the accepting step, or 0.
 */
typedef struct NuspRunResult {
  enum NuspVerdict verdict;
  size_t step;
  size_t steps_taken;
} NuspRunResult;

/**
 * Outcome of [`nusp_tm_run`]. `depth` is 0 for `BOUND_EXCEEDED`.
 */
typedef struct NuspTmResult {
  enum NuspTmVerdict verdict;
  size_t depth;
} NuspTmResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Owned by the
 * library.
 */
const char *nusp_last_error(void);

/**
 * Library version, a static string.
 */
const char *nusp_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void nusp_string_free(char *s);

/**
 * Parses a network file.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum NuspStatus nusp_network_parse(const char *text, struct NuspNetwork **out);

/**
 * Canonical text of a network; free it with [`nusp_string_free`].
 *
 * # Safety
 * `net` must be a live handle; `out` must be writable.
 */
enum NuspStatus nusp_network_emit(const struct NuspNetwork *net, char **out);

/**
 * # Safety
 * `net` must be a live handle; `out` must be writable.
 */
enum NuspStatus nusp_network_node_count(const struct NuspNetwork *net, size_t *out);

/**
 * Structural check; `INVALID_NETWORK` with the report as the error message.
 *
 * # Safety
 * `net` must be a live handle.
 */
enum NuspStatus nusp_network_validate(const struct NuspNetwork *net);

/**
 * # Safety
 * `net` must be null or a handle not yet freed.
 */
void nusp_network_free(struct NuspNetwork *net);

/**
 * Parses a machine file.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum NuspStatus nusp_machine_parse(const char *text, struct NuspMachine **out);

/**
 * Canonical text of a machine; free it with [`nusp_string_free`].
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum NuspStatus nusp_machine_emit(const struct NuspMachine *m, char **out);

/**
 * # Safety
 * `m` must be null or a handle not yet freed.
 */
void nusp_machine_free(struct NuspMachine *m);

/**
 * Compiles a machine into a new network handle.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum NuspStatus nusp_compile(const struct NuspMachine *m,
                             enum NuspPersistence persistence,
                             struct NuspNetwork **out);

/**
 * Runs `net` on `input` (whitespace-separated tokens, or one token per
 * character when `chars` is set). `max_steps` of 0 means the default.
 *
 * # Safety
 * `net` must be a live handle, `input` a NUL-terminated string and `out`
 * writable.
 */
enum NuspStatus nusp_run(const struct NuspNetwork *net,
                         const char *input,
                         bool chars,
                         size_t max_steps,
                         struct NuspRunResult *out);

/**
 * Breadth-first machine run with at most `bound` steps.
 *
 * # Safety
 * `m` must be a live handle, `input` a NUL-terminated string and `out`
 * writable.
 */
enum NuspStatus nusp_tm_run(const struct NuspMachine *m,
                            const char *input,
                            bool chars,
                            size_t bound,
                            struct NuspTmResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NUSP_H */
