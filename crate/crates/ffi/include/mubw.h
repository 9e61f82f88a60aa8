#ifndef MUBW_H
#define MUBW_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MubwStatus {
  MUBW_STATUS_OK = 0,
  MUBW_STATUS_NULL_POINTER = 1,
  MUBW_STATUS_INVALID_STATE = 2,
  MUBW_STATUS_NOT_PPT = 3,
  MUBW_STATUS_NUMERICAL = 4,
  MUBW_STATUS_PARSE = 5,
  MUBW_STATUS_BUFFER_TOO_SMALL = 6,
  MUBW_STATUS_NOT_FOUND = 7,
  MUBW_STATUS_PANIC = 99,
} MubwStatus;

typedef enum MubwVerdictKind {
  MUBW_VERDICT_KIND_NPT = 0,
  MUBW_VERDICT_KIND_BOUND_DETECTED = 1,
  MUBW_VERDICT_KIND_SEPARABLE_CERTIFIED = 2,
  MUBW_VERDICT_KIND_PPT_UNDECIDED = 3,
} MubwVerdictKind;

/**
 * Opaque GHZ-diagonal state.
 */
typedef struct MubwState MubwState;

/**
 * Opaque classification result.
 */
typedef struct MubwVerdict MubwVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *mubw_version(void);

/**
 * Copies the calling thread's last error message into `buf`.
 *
 * # Safety
 * `buf` must be null or valid for `cap` bytes; `needed` must be null or
 * writable.
 */
enum MubwStatus mubw_last_error(char *buf, size_t cap, size_t *needed);

/**
 * Builds a state from the 8 probabilities `p`.
 *
 * # Safety
 * `p` must be valid for `len` reads and `out` writable.
 */
enum MubwStatus mubw_state_from_p(const double *p, size_t len, struct MubwState **out);

/**
 * Builds a state from the 7 correlations `r`.
 *
 * # Safety
 * `r` must be valid for `len` reads and `out` writable.
 */
enum MubwStatus mubw_state_from_r(const double *r, size_t len, struct MubwState **out);

/**
 * # Safety
 * `s` must be null or a handle from `mubw_state_from_*` not yet freed.
 */
void mubw_state_free(struct MubwState *s);

/**
 * Writes the 8 probabilities of `s` to `out`.
 *
 * # Safety
 * `out` must be writable for 8 doubles.
 */
enum MubwStatus mubw_state_probabilities(const struct MubwState *s, double *out);

/**
 * Writes the 7 correlations of `s` to `out`.
 *
 * # Safety
 * `out` must be writable for 7 doubles.
 */
enum MubwStatus mubw_state_correlations(const struct MubwState *s, double *out);

/**
 * Writes the 24 PPT inequality values of `s` to `out`, grouped by qubit
 * and parity block.
 *
 * # Safety
 * `out` must be writable for 24 doubles.
 */
enum MubwStatus mubw_ppt_inequalities(const struct MubwState *s, double *out);

/**
 * PPT test at tolerance `tol`. `pass` receives 1 or 0 and
 * `min_inequality` the smallest inequality value.
 *
 * # Safety
 * Output pointers must be writable.
 */
enum MubwStatus mubw_is_ppt(const struct MubwState *s,
                            double tol,
                            int32_t *pass,
                            double *min_inequality);

/**
 * Minimum over ψ of the witness family `id` (e.g. `"+1-(47)(56)"`).
 *
 * # Safety
 * `id` must be a NUL-terminated string and `value` writable.
 */
enum MubwStatus mubw_nonlinear_value(const struct MubwState *s, const char *id, double *value);

/**
 * Classifies `s` at tolerance `tol`.
 *
 * # Safety
 * `out` must be writable.
 */
enum MubwStatus mubw_classify(const struct MubwState *s, double tol, struct MubwVerdict **out);

/**
 * # Safety
 * `v` must be null or a handle from `mubw_classify` not yet freed.
 */
void mubw_verdict_free(struct MubwVerdict *v);

/**
 * # Safety
 * `kind` must be writable.
 */
enum MubwStatus mubw_verdict_kind(const struct MubwVerdict *v, enum MubwVerdictKind *kind);

/**
 * Smallest PPT inequality value and smallest partial-transpose eigenvalue
 * behind the verdict.
 *
 * # Safety
 * Output pointers must be writable.
 */
enum MubwStatus mubw_verdict_ppt(const struct MubwVerdict *v,
                                 double *min_inequality,
                                 double *min_eigenvalue);

/**
 * Detecting witness id and its value. Returns `NotFound` when no witness
 * fired.
 *
 * # Safety
 * `buf` must be null or valid for `cap` bytes; other outputs null or
 * writable.
 */
enum MubwStatus mubw_verdict_witness(const struct MubwVerdict *v,
                                     char *buf,
                                     size_t cap,
                                     size_t *needed,
                                     double *value);

/**
 * Term count and reconstruction error of the separability certificate.
 * Returns `NotFound` when the state was not certified.
 *
 * # Safety
 * Output pointers must be writable.
 */
enum MubwStatus mubw_verdict_certificate(const struct MubwVerdict *v,
                                         size_t *n_terms,
                                         double *reconstruction_error);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MUBW_H */
