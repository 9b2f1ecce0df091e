#ifndef DHYPER_H
#define DHYPER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Values 3 to 10 match the CLI exit codes.
 */
typedef enum DhStatus {
  DH_STATUS_OK = 0,
  DH_STATUS_VERDICT_FAILED = 1,
  DH_STATUS_NULL_ARGUMENT = 2,
  DH_STATUS_PARSE = 3,
  DH_STATUS_DIMENSION_MISMATCH = 4,
  DH_STATUS_UNSUPPORTED_CHARACTER = 5,
  DH_STATUS_RANK_DEFICIENT = 6,
  DH_STATUS_INVALID_INPUT = 7,
  DH_STATUS_INVALID_OPERATOR = 8,
  DH_STATUS_NOT_TORAL = 9,
  DH_STATUS_SERIES = 10,
  DH_STATUS_INVALID_UTF8 = 11,
  DH_STATUS_PANIC = 12,
} DhStatus;

/**
 * An integer matrix.
 */
typedef struct DhMatrix DhMatrix;

/**
 * An element of the Weyl algebra.
 */
typedef struct DhOperator DhOperator;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *dh_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void dh_string_free(char *s);

/**
 * Parses a matrix from its JSON encoding.
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` is writable.
 */
enum DhStatus dh_matrix_from_json(const char *text, struct DhMatrix **out);

/**
 * # Safety
 * `m` is null or a live matrix handle.
 */
void dh_matrix_free(struct DhMatrix *m);

/**
 * # Safety
 * `m` is a live matrix handle.
 */
uintptr_t dh_matrix_rows(const struct DhMatrix *m);

/**
 * # Safety
 * `m` is a live matrix handle.
 */
uintptr_t dh_matrix_cols(const struct DhMatrix *m);

/**
 * Reduced degrevlex basis of the toric ideal of `a`, as a JSON array of
 * operators.
 *
 * # Safety
 * `a` is a live matrix handle; `out` is writable.
 */
enum DhStatus dh_toric_ideal(const struct DhMatrix *a, char **out);

/**
 * Parses an operator from its JSON encoding.
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` is writable.
 */
enum DhStatus dh_operator_from_json(const char *text, struct DhOperator **out);

/**
 * # Safety
 * `op` is null or a live operator handle.
 */
void dh_operator_free(struct DhOperator *op);

/**
 * The normal-ordered product `p * q`.
 *
 * # Safety
 * `p` and `q` are live operator handles; `out` is writable.
 */
enum DhStatus dh_operator_mul(const struct DhOperator *p,
                              const struct DhOperator *q,
                              struct DhOperator **out);

/**
 * JSON encoding of an operator.
 *
 * # Safety
 * `op` is a live operator handle; `out` is writable.
 */
enum DhStatus dh_operator_to_json(const struct DhOperator *op, char **out);

/**
 * Membership of `op` in the left ideal generated by `gens` (a JSON array
 * of operators), with a certificate as JSON.
 *
 * # Safety
 * `gens` and `op` are NUL-terminated strings; `out` is writable.
 */
enum DhStatus dh_membership(const char *gens, const char *op, uint32_t cap, char **out);

/**
 * Runs a CLI command given as a JSON array of arguments (without the
 * program name) and returns its report. A failed verdict yields
 * `VerdictFailed` with the report still written.
 *
 * # Safety
 * `args` is a NUL-terminated string; `out` is writable.
 */
enum DhStatus dh_run(const char *args, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DHYPER_H */
