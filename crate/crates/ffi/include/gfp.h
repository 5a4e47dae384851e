#ifndef GFP_H
#define GFP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum GfpStatus {
  GFP_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  GFP_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  GFP_STATUS_INVALID_UTF8 = 2,
  /**
   * Polynomial or family text did not parse.
   */
  GFP_STATUS_PARSE = 3,
  /**
   * An argument was outside the operation's domain.
   */
  GFP_STATUS_INVALID_ARGUMENT = 4,
  /**
   * No closed form covers the requested members.
   */
  GFP_STATUS_NO_CLOSED_FORM = 5,
  /**
   * A closed form's hypothesis (e.g. constant g) does not hold.
   */
  GFP_STATUS_HYPOTHESIS = 6,
  /**
   * A verification sweep ran and found a counterexample.
   */
  GFP_STATUS_VERIFICATION_FAILED = 7,
  /**
   * The library panicked; this is a bug.
   */
  GFP_STATUS_INTERNAL = 8,
} GfpStatus;

/**
 * Opaque generalized Fibonacci family.
 */
typedef struct GfpFamily GfpFamily;

/**
 * Opaque polynomial with rational coefficients.
 */
typedef struct GfpPoly GfpPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *gfp_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *gfp_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void gfp_string_free(char *s);

/**
 * Parses a polynomial such as `"3*x^2 - x + 1/2"`.
 *
 * # Safety
 * `text` must be a valid C string; `out` must be writable.
 */
enum GfpStatus gfp_poly_parse(const char *text, struct GfpPoly **out);

/**
 * Renders a polynomial; free the result with [`gfp_string_free`].
 *
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
enum GfpStatus gfp_poly_to_string(const struct GfpPoly *poly, char **out);

/**
 * Degree of `poly`; -1 for the zero polynomial.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
enum GfpStatus gfp_poly_degree(const struct GfpPoly *poly, int64_t *out);

/**
 * Formal derivative as a new handle.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be writable.
 */
enum GfpStatus gfp_poly_derivative(const struct GfpPoly *poly, struct GfpPoly **out);

/**
 * Releases a polynomial handle. Null is ignored.
 *
 * # Safety
 * `poly` must come from this library and not have been freed.
 */
void gfp_poly_free(struct GfpPoly *poly);

/**
 * Looks up a family by built-in name (`"fibonacci"`, `"chebyshev-T"`, ...)
 * or inline spec (`"fib:<d>:<g>"`, `"lucas:<d>:<g>:<p0>"`).
 *
 * # Safety
 * `spec` must be a valid C string; `out` must be writable.
 */
enum GfpStatus gfp_family_new(const char *spec, struct GfpFamily **out);

/**
 * The `n`-th member of `family` as a new handle.
 *
 * # Safety
 * `family` must be a live handle; `out` must be writable.
 */
enum GfpStatus gfp_family_generate(const struct GfpFamily *family, size_t n, struct GfpPoly **out);

/**
 * Releases a family handle. Null is ignored.
 *
 * # Safety
 * `family` must come from this library and not have been freed.
 */
void gfp_family_free(struct GfpFamily *family);

/**
 * Sylvester resultant `Res(p, q)` as a rational string.
 *
 * # Safety
 * `p` and `q` must be live handles; `out` must be writable.
 */
enum GfpStatus gfp_resultant(const struct GfpPoly *p, const struct GfpPoly *q, char **out);

/**
 * Discriminant of a non-constant polynomial as a rational string.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum GfpStatus gfp_discriminant(const struct GfpPoly *p, char **out);

/**
 * Closed-form `Res(G1_i, G2_j)` for members of one family or of a
 * conjugate pair.
 *
 * # Safety
 * `first` and `second` must be live handles; `out` must be writable.
 */
enum GfpStatus gfp_closed_resultant(const struct GfpFamily *first,
                                    uint64_t i,
                                    const struct GfpFamily *second,
                                    uint64_t j,
                                    char **out);

/**
 * Closed-form discriminant of the `n`-th member; needs `deg d = 1` and
 * constant `g`.
 *
 * # Safety
 * `family` must be a live handle; `out` must be writable.
 */
enum GfpStatus gfp_closed_discriminant(const struct GfpFamily *family, uint64_t n, char **out);

/**
 * Runs the verification sweep up to `max_n` and writes the reports as JSON
 * lines to `out_json`.
 *
 * `identities` is a comma-separated list of identity ids, or null for all.
 * Returns [`GfpStatus::VerificationFailed`] (with the reports still
 * written) if any identity fails.
 *
 * # Safety
 * `identities` must be null or a valid C string; `out_json` must be writable.
 */
enum GfpStatus gfp_verify_json(const char *identities,
                               uint64_t max_n,
                               size_t jobs,
                               char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GFP_H */
