#ifndef SU2SU2_H
#define SU2SU2_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum Su2Status {
  SU2_STATUS_OK = 0,
  SU2_STATUS_NULL_POINTER = 1,
  SU2_STATUS_INVALID_ARGUMENT = 2,
  SU2_STATUS_NON_HERMITIAN = 3,
  SU2_STATUS_PRECONDITION = 4,
  SU2_STATUS_NEGATIVE_RADICAND = 5,
  SU2_STATUS_DEGENERATE = 6,
  SU2_STATUS_INVALID_DENSITY = 7,
  SU2_STATUS_PANIC = 8,
} Su2Status;

typedef enum Su2Case {
  SU2_CASE_SEPARABLE_DYADIC = 0,
  SU2_CASE_DIAGONAL_OMEGA = 1,
  SU2_CASE_ENTANGLED_ALPHA_NULL = 2,
  SU2_CASE_ENTANGLED_BETA_NULL = 3,
  SU2_CASE_ENTANGLED_BOTH = 4,
  SU2_CASE_GENERAL = 5,
} Su2Case;

typedef enum Su2Method {
  SU2_METHOD_SEPARABLE_CLOSED_FORM = 0,
  SU2_METHOD_ENTANGLED_CLOSED_FORM = 1,
  SU2_METHOD_QUARTIC_PLUS_ORACLE_VECTORS = 2,
  SU2_METHOD_ORACLE_NUMERIC = 3,
} Su2Method;

/**
 * Opaque coefficient set (υ, α, β, ω).
 */
typedef struct Su2Coefficients Su2Coefficients;

/**
 * Opaque eigensystem.
 */
typedef struct Su2Eigensystem Su2Eigensystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty if none. Valid
 * until the next failing call on the same thread.
 */
const char *su2_last_error(void);

/**
 * `alpha`, `beta`: 3 doubles each. `omega`: 9 doubles, row-major.
 *
 * # Safety
 * Pointers must be valid for the stated lengths.
 */
enum Su2Status su2_coefficients_new(double upsilon,
                                    const double *alpha,
                                    const double *beta,
                                    const double *omega,
                                    struct Su2Coefficients **out);

/**
 * Coefficient set of the biased bilayer graphene model at (kx, ky).
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum Su2Status su2_graphene_coefficients(double t,
                                         double t3,
                                         double tperp,
                                         double m,
                                         double bias,
                                         double lattice,
                                         double kx,
                                         double ky,
                                         struct Su2Coefficients **out);

/**
 * # Safety
 * `c` must come from a constructor above and not be freed twice.
 */
void su2_coefficients_free(struct Su2Coefficients *c);

/**
 * # Safety
 * `c` must be a live handle, `out` valid for a write.
 */
enum Su2Status su2_classify(const struct Su2Coefficients *c, enum Su2Case *out);

/**
 * # Safety
 * `c` must be a live handle, `out` valid for a write.
 */
enum Su2Status su2_solve(const struct Su2Coefficients *c, struct Su2Eigensystem **out);

/**
 * # Safety
 * `es` must come from `su2_solve` and not be freed twice.
 */
void su2_eigensystem_free(struct Su2Eigensystem *es);

/**
 * Eigenvalues in label order (1,1), (1,2), (2,1), (2,2); `values` holds 4 doubles.
 *
 * # Safety
 * `es` must be a live handle, `values` valid for 4 writes.
 */
enum Su2Status su2_eigensystem_values(const struct Su2Eigensystem *es, double *values);

/**
 * Projector of level `k` (0..4) as 16 real and 16 imaginary parts, row-major.
 *
 * # Safety
 * `es` must be a live handle, `re` and `im` valid for 16 writes each.
 */
enum Su2Status su2_eigensystem_state(const struct Su2Eigensystem *es,
                                     uint32_t k,
                                     double *re,
                                     double *im);

/**
 * # Safety
 * `es` must be a live handle, `method` and `degenerate` valid for a write.
 */
enum Su2Status su2_eigensystem_method(const struct Su2Eigensystem *es,
                                      enum Su2Method *method,
                                      bool *degenerate);

/**
 * ln Z at temperature `t`; `positive` keeps the two highest levels only.
 *
 * # Safety
 * `c` must be a live handle, `out` valid for a write.
 */
enum Su2Status su2_log_partition(const struct Su2Coefficients *c,
                                 double t,
                                 bool positive,
                                 double *out);

/**
 * Tr ρ² of the thermal state.
 *
 * # Safety
 * `c` must be a live handle, `out` valid for a write.
 */
enum Su2Status su2_purity(const struct Su2Coefficients *c, double t, bool positive, double *out);

/**
 * Closed-form concurrence of eigenstate (m, n) of a constrained set.
 *
 * # Safety
 * `c` must be a live handle, `out` valid for a write.
 */
enum Su2Status su2_concurrence(const struct Su2Coefficients *c, uint8_t m, uint8_t n, double *out);

/**
 * Closed-form thermal concurrence; `verified` reports whether it is exact
 * for this set.
 *
 * # Safety
 * `c` must be a live handle, `out` and `verified` valid for a write.
 */
enum Su2Status su2_thermal_concurrence(const struct Su2Coefficients *c,
                                       double t,
                                       double *out,
                                       bool *verified);

/**
 * Roots of c[0] x⁴ + c[1] x³ + c[2] x² + c[3] x + c[4].
 *
 * # Safety
 * `coeffs` valid for 5 reads, `re` and `im` for 4 writes each.
 */
enum Su2Status su2_quartic(const double *coeffs, double *re, double *im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SU2SU2_H */
