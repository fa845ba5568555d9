#ifndef CHAINLIFT_H
#define CHAINLIFT_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ChainliftOrder {
  CHAINLIFT_ORDER_LEX = 0,
  CHAINLIFT_ORDER_GRLEX = 1,
  CHAINLIFT_ORDER_GREVLEX = 2,
} ChainliftOrder;

typedef enum ChainliftStatus {
  CHAINLIFT_STATUS_OK = 0,
  CHAINLIFT_STATUS_NULL_POINTER = 1,
  CHAINLIFT_STATUS_INVALID_UTF8 = 2,
  CHAINLIFT_STATUS_PARSE = 3,
  CHAINLIFT_STATUS_RING_MISMATCH = 4,
  CHAINLIFT_STATUS_NOT_FOUND = 5,
  CHAINLIFT_STATUS_PANIC = 6,
} ChainliftStatus;

/**
 * An ideal of a polynomial ring.
 */
typedef struct ChainliftIdeal ChainliftIdeal;

/**
 * A polynomial together with its ring.
 */
typedef struct ChainliftPoly ChainliftPoly;

/**
 * A polynomial ring.
 */
typedef struct ChainliftRing ChainliftRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *chainlift_last_error(void);

/**
 * Library version as a static string.
 */
const char *chainlift_version(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void chainlift_string_free(char *s);

/**
 * Creates `K[vars]` from a comma-separated variable list. `characteristic`
 * is 0 or a prime below 2^31.
 *
 * # Safety
 * `vars` must be a NUL-terminated string; `out` must be writable.
 */
enum ChainliftStatus chainlift_ring_new(const char *vars,
                                        uint32_t characteristic,
                                        struct ChainliftRing **out);

/**
 * # Safety
 * `ring` must come from [`chainlift_ring_new`] or be NULL.
 */
void chainlift_ring_free(struct ChainliftRing *ring);

/**
 * # Safety
 * `ring` must be live; `text` NUL-terminated; `out` writable.
 */
enum ChainliftStatus chainlift_poly_parse(const struct ChainliftRing *ring,
                                          const char *text,
                                          struct ChainliftPoly **out);

/**
 * Canonical text of `poly`; free with [`chainlift_string_free`]. NULL if
 * `poly` is NULL.
 *
 * # Safety
 * `poly` must be live or NULL.
 */
char *chainlift_poly_to_string(const struct ChainliftPoly *poly);

/**
 * # Safety
 * `poly` must come from this library or be NULL.
 */
void chainlift_poly_free(struct ChainliftPoly *poly);

/**
 * The ideal generated by `n` polynomial strings.
 *
 * # Safety
 * `gens` must point to `n` NUL-terminated strings (it may be NULL when
 * `n` is 0); `ring` must be live; `out` writable.
 */
enum ChainliftStatus chainlift_ideal_new(const struct ChainliftRing *ring,
                                         const char *const *gens,
                                         uintptr_t n,
                                         struct ChainliftIdeal **out);

/**
 * # Safety
 * `ideal` must come from this library or be NULL.
 */
void chainlift_ideal_free(struct ChainliftIdeal *ideal);

/**
 * Canonical form of the ideal, e.g. `(X, Y^2*Z - 1)`.
 *
 * # Safety
 * `ideal` must be live or NULL.
 */
char *chainlift_ideal_to_string(const struct ChainliftIdeal *ideal);

/**
 * # Safety
 * Both handles live and in the same ring; `out` writable.
 */
enum ChainliftStatus chainlift_ideal_contains(const struct ChainliftIdeal *ideal,
                                              const struct ChainliftPoly *poly,
                                              bool *out);

/**
 * Reduced Gröbner basis, one element per line.
 *
 * # Safety
 * `ideal` live; `out` writable. Free the result with
 * [`chainlift_string_free`].
 */
enum ChainliftStatus chainlift_ideal_groebner(const struct ChainliftIdeal *ideal,
                                              enum ChainliftOrder order,
                                              char **out);

/**
 * Parses and runs a session. `task` selects one task or is NULL for all.
 * `out_json` receives the JSON report document; `out_passed` whether every
 * task passed. A session that runs but fails its tasks still returns
 * `CHAINLIFT_STATUS_OK`.
 *
 * # Safety
 * `text` NUL-terminated; `task` NUL-terminated or NULL; outputs writable.
 */
enum ChainliftStatus chainlift_session_run(const char *text,
                                           const char *task,
                                           char **out_json,
                                           bool *out_passed);

/**
 * Re-checks a certificate file's identity and stored hash.
 *
 * # Safety
 * `json` NUL-terminated; `out_valid` writable.
 */
enum ChainliftStatus chainlift_certificate_verify(const char *json, bool *out_valid);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHAINLIFT_H */
