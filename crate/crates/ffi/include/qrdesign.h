#ifndef QRDESIGN_H
#define QRDESIGN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Label value denoting the point at infinity.
 */
#define QRD_INFINITY -1

typedef enum QrdStatus {
  QRD_STATUS_OK = 0,
  QRD_STATUS_NULL_POINTER = 1,
  QRD_STATUS_INVALID_ARGUMENT = 2,
  QRD_STATUS_BUDGET_EXCEEDED = 3,
  QRD_STATUS_CHECK_FAILED = 4,
  QRD_STATUS_INTERNAL = 5,
  QRD_STATUS_PANIC = 6,
} QrdStatus;

/**
 * Which block set a design report describes.
 */
typedef enum QrdBlockSet {
  QRD_BLOCK_SET_CODE = 0,
  QRD_BLOCK_SET_DUAL = 1,
  QRD_BLOCK_SET_UNION = 2,
} QrdBlockSet;

typedef struct QrdCode QrdCode;

typedef struct QrdJacobi QrdJacobi;

typedef struct QrdOrbits QrdOrbits;

/**
 * Enumeration limits; `threads == 0` means available parallelism.
 */
typedef struct QrdOptions {
  size_t budget;
  size_t threads;
} QrdOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *qrd_last_error_message(void);

/**
 * Default options: the library's dimension budget and all available threads.
 */
struct QrdOptions qrd_default_options(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void qrd_string_free(char *s);

/**
 * Builds the QR code of prime length p (p = +-1 mod 8), extended by a parity
 * coordinate when `extended` is true.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum QrdStatus qrd_code_quadratic_residue(uint64_t p, bool extended, struct QrdCode **out);

/**
 * Parses a generator matrix in the "n k" + rows text format.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum QrdStatus qrd_code_from_text(const char *text, struct QrdCode **out);

/**
 * # Safety
 * `code` must be null or a handle from this library, not yet freed.
 */
void qrd_code_free(struct QrdCode *code);

/**
 * Length n, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
size_t qrd_code_length(const struct QrdCode *code);

/**
 * Dimension k, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
size_t qrd_code_dimension(const struct QrdCode *code);

/**
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum QrdStatus qrd_code_dual(const struct QrdCode *code, struct QrdCode **out);

/**
 * Writes the number of codewords of each weight 0..=n into `counts`, which
 * must hold `len >= n + 1` entries.
 *
 * # Safety
 * `code` must be a live handle; `counts` must point to `len` writable
 * `uint64_t`; `opts` may be null for defaults.
 */
enum QrdStatus qrd_code_weight_distribution(const struct QrdCode *code,
                                            const struct QrdOptions *opts,
                                            uint64_t *counts,
                                            size_t len);

/**
 * Generator matrix in the "n k" + rows text format.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum QrdStatus qrd_code_to_text(const struct QrdCode *code, char **out);

/**
 * Jacobi polynomial of `code` at the `t` labels in `labels`.
 *
 * # Safety
 * `code` must be a live handle; `labels` must point to `t` values; `opts`
 * may be null; `out` must be writable.
 */
enum QrdStatus qrd_jacobi_new(const struct QrdCode *code,
                              const int64_t *labels,
                              size_t t,
                              const struct QrdOptions *opts,
                              struct QrdJacobi **out);

/**
 * # Safety
 * `j` must be null or a live handle.
 */
void qrd_jacobi_free(struct QrdJacobi *j);

/**
 * Coefficient of w^(t-m1) z^m1 x^(n-t-n1) y^n1; 0 when out of range or null.
 *
 * # Safety
 * `j` must be null or a live handle.
 */
uint64_t qrd_jacobi_coeff(const struct QrdJacobi *j, size_t m1, size_t n1);

/**
 * Sum of all coefficients (the number of codewords).
 *
 * # Safety
 * `j` must be null or a live handle.
 */
uint64_t qrd_jacobi_mass(const struct QrdJacobi *j);

/**
 * JSON {n, t, T, terms: [{m0, m1, n0, n1, coeff}]}.
 *
 * # Safety
 * `j` must be a live handle; `out` must be writable.
 */
enum QrdStatus qrd_jacobi_to_json(const struct QrdJacobi *j, char **out);

/**
 * Monomial-style rendering, e.g. "w^3x^39 + 744w^3x^29y^10 + ...".
 *
 * # Safety
 * `j` must be a live handle; `out` must be writable.
 */
enum QrdStatus qrd_jacobi_to_text(const struct QrdJacobi *j, char **out);

/**
 * PSL(2, p) orbits on 3-subsets of the projective line, p = 1 mod 8.
 *
 * # Safety
 * `out` must be writable.
 */
enum QrdStatus qrd_orbits_new(uint64_t p, struct QrdOrbits **out);

/**
 * # Safety
 * `o` must be null or a live handle.
 */
void qrd_orbits_free(struct QrdOrbits *o);

/**
 * Size of orbit 1 or 2; 0 otherwise.
 *
 * # Safety
 * `o` must be null or a live handle.
 */
size_t qrd_orbits_size(const struct QrdOrbits *o, uint8_t orbit);

/**
 * Orbit (1 or 2) of the triple {a, b, c}.
 *
 * # Safety
 * `o` must be a live handle; `orbit` must be writable.
 */
enum QrdStatus qrd_orbits_label(const struct QrdOrbits *o,
                                int64_t a,
                                int64_t b,
                                int64_t c,
                                uint8_t *orbit);

/**
 * Design report JSON for one shell of the extended QR code of length p + 1,
 * with verdicts for t = 1..=t_max.
 *
 * # Safety
 * `opts` may be null; `out` must be writable.
 */
enum QrdStatus qrd_design_report_json(uint64_t p,
                                      enum QrdBlockSet set,
                                      size_t shell,
                                      size_t t_max,
                                      const struct QrdOptions *opts,
                                      char **out);

/**
 * Runs every named check for p. Returns `CheckFailed` if any check fails;
 * the counts are written either way. `report_json`, if non-null, receives
 * the list of checks as JSON.
 *
 * # Safety
 * `passed` and `total` must be writable; `opts` and `report_json` may be null.
 */
enum QrdStatus qrd_reproduce(uint64_t p,
                             const struct QrdOptions *opts,
                             size_t *passed,
                             size_t *total,
                             char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QRDESIGN_H */
