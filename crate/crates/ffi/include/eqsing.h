#ifndef EQSING_H
#define EQSING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EqsingStatus {
  EQSING_STATUS_OK = 0,
  EQSING_STATUS_NULL_POINTER = 1,
  EQSING_STATUS_INVALID_UTF8 = 2,
  EQSING_STATUS_PARSE = 3,
  EQSING_STATUS_DOMAIN = 4,
  EQSING_STATUS_PANIC = 5,
} EqsingStatus;

// A polynomial with rational coefficients.
typedef struct EqsingPolynomial EqsingPolynomial;

// A singularity `Σ x_i^{α_i}` together with the degree of the hypersurface.
typedef struct EqsingSpec EqsingSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// Valid until the next call on the same thread.
const char *eqsing_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not have been freed.
void eqsing_string_free(char *s);

// Parses a polynomial in `x1..xn`. `nvars = 0` infers `n` from the text.
//
// # Safety
// `text` must be a nul-terminated string and `out` writable.
enum EqsingStatus eqsing_polynomial_parse(const char *text,
                                          size_t nvars,
                                          struct EqsingPolynomial **out);

// # Safety
// `p` must come from this library and not have been freed.
void eqsing_polynomial_free(struct EqsingPolynomial *p);

// Text form of `p`, re-parsable by [`eqsing_polynomial_parse`].
//
// # Safety
// `p` must be a live handle and `out` writable.
enum EqsingStatus eqsing_polynomial_to_string(const struct EqsingPolynomial *p, char **out);

// Local Tjurina number of `p` at the origin.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum EqsingStatus eqsing_polynomial_tjurina(const struct EqsingPolynomial *p, uint64_t *out);

// Normal form of `f` with respect to `gens` under a global ordering
// spelled `lp`, `Dp` or `Wp(w1,...,wn)`.
//
// # Safety
// `f` and the `ngens` entries of `gens` must be live handles, `ord` a
// nul-terminated string and `out` writable.
enum EqsingStatus eqsing_normal_form(const struct EqsingPolynomial *f,
                                     const struct EqsingPolynomial *const *gens,
                                     size_t ngens,
                                     const char *ord,
                                     struct EqsingPolynomial **out);

// Spec for `Σ x_i^{α_i}` on a hypersurface of degree `degree`
// (`0` selects the default degree).
//
// # Safety
// `alpha` must point to `n` values and `out` be writable.
enum EqsingStatus eqsing_spec_new(const uint32_t *alpha,
                                  size_t n,
                                  uint32_t degree,
                                  struct EqsingSpec **out);

// # Safety
// `s` must come from this library and not have been freed.
void eqsing_spec_free(struct EqsingSpec *s);

// Degree of the hypersurface.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum EqsingStatus eqsing_spec_degree(const struct EqsingSpec *s, uint32_t *out);

// `τ = ∏(α_i − 1)`.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum EqsingStatus eqsing_spec_tau(const struct EqsingSpec *s, uint64_t *out);

// `h^1` of the singular scheme twisted by `k`.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum EqsingStatus eqsing_spec_h1(const struct EqsingSpec *s, int64_t k, uint64_t *out);

// The singularity polynomial of the spec.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum EqsingStatus eqsing_spec_polynomial(const struct EqsingSpec *s, struct EqsingPolynomial **out);

// Classification of the equisingular stratum as a JSON object.
// `param_cap < 0` disables truncation of parameter degrees.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum EqsingStatus eqsing_stratum_classify(const struct EqsingSpec *s,
                                          int32_t param_cap,
                                          char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EQSING_H */
