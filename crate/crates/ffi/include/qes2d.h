#ifndef QES2D_H
#define QES2D_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum Qes2dFamily {
  /**
   * `a r² + b r⁴ + c r⁶`, coefficients `[a, b, c]`
   */
  QES2D_FAMILY_SEXTIC = 0,
  /**
   * `a r + b r² + c/r`, coefficients `[a, b, c]`
   */
  QES2D_FAMILY_MIXED = 1,
  /**
   * `a r² + b/r² + c/r⁴ + d/r⁶`, coefficients `[a, b, c, d]`
   */
  QES2D_FAMILY_SINGULAR = 2,
} Qes2dFamily;

typedef enum Qes2dStatus {
  QES2D_STATUS_OK = 0,
  QES2D_STATUS_NULL_POINTER = 1,
  QES2D_STATUS_INVALID_ARGUMENT = 2,
  QES2D_STATUS_CONSTRAINT_VIOLATED = 3,
  QES2D_STATUS_NO_REAL_ROOTS = 4,
  QES2D_STATUS_NO_SOLUTION = 5,
  QES2D_STATUS_NON_REAL_ENERGY = 6,
  QES2D_STATUS_NUMERICAL_FAILURE = 7,
  QES2D_STATUS_BUFFER_TOO_SMALL = 8,
  QES2D_STATUS_INDEX_OUT_OF_RANGE = 9,
  QES2D_STATUS_PANIC = 10,
} Qes2dStatus;

/**
 * Normalized closed-form states for one configuration, ordered by energy.
 */
typedef struct Qes2dSolutionSet Qes2dSolutionSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Solves one configuration and stores a new handle in `*out`.
 * `family` takes a [`Qes2dFamily`] value.
 * On failure `*out` is set to null.
 *
 * # Safety
 * `coeffs` must point to `n_coeffs` doubles; `out` must be writable.
 */
enum Qes2dStatus qes2d_solve(uint32_t family,
                             const double *coeffs,
                             size_t n_coeffs,
                             uint32_t m,
                             size_t p,
                             bool use_printed,
                             struct Qes2dSolutionSet **out);

/**
 * Releases a handle from [`qes2d_solve`]. Null is ignored.
 *
 * # Safety
 * `set` must come from [`qes2d_solve`] and not be freed twice.
 */
void qes2d_solution_set_free(struct Qes2dSolutionSet *set);

/**
 * # Safety
 * `set` must be a live handle or null; `out` must be writable.
 */
enum Qes2dStatus qes2d_solution_count(const struct Qes2dSolutionSet *set, size_t *out);

/**
 * # Safety
 * `set` must be a live handle or null; `out` must be writable.
 */
enum Qes2dStatus qes2d_solution_energy(const struct Qes2dSolutionSet *set,
                                       size_t index,
                                       double *out);

/**
 * Series coefficients `a₀…a_p` (with `a₀ = 1`).
 *
 * # Safety
 * `buf` must hold `len` doubles or be null; `out_len` must be writable.
 */
enum Qes2dStatus qes2d_solution_coefficients(const struct Qes2dSolutionSet *set,
                                             size_t index,
                                             double *buf,
                                             size_t len,
                                             size_t *out_len);

/**
 * # Safety
 * `set` must be a live handle or null; `out` must be writable.
 */
enum Qes2dStatus qes2d_solution_normalization(const struct Qes2dSolutionSet *set,
                                              size_t index,
                                              double *out);

/**
 * # Safety
 * `set` must be a live handle or null; `out` must be writable.
 */
enum Qes2dStatus qes2d_solution_node_count(const struct Qes2dSolutionSet *set,
                                           size_t index,
                                           size_t *out);

/**
 * # Safety
 * `set` must be a live handle or null; `out` must be writable.
 */
enum Qes2dStatus qes2d_solution_ode_residual(const struct Qes2dSolutionSet *set,
                                             size_t index,
                                             double *out);

/**
 * Normalized `R(r)` for `r > 0`.
 *
 * # Safety
 * `set` must be a live handle or null; `out` must be writable.
 */
enum Qes2dStatus qes2d_radial_value(const struct Qes2dSolutionSet *set,
                                    size_t index,
                                    double r,
                                    double *out);

/**
 * Coefficient values that make a configuration solvable at order `p`.
 * `known` holds `[b, c]` (sextic, returns `a`), `[a, b]` (mixed, returns `c`)
 * or `[a, c, d]` (singular, returns `b`).
 *
 * # Safety
 * `known` must point to `n_known` doubles; `buf`/`out_len` as in
 * [`qes2d_solution_coefficients`].
 */
enum Qes2dStatus qes2d_constraint_roots(uint32_t family,
                                        const double *known,
                                        size_t n_known,
                                        uint32_t m,
                                        size_t p,
                                        bool use_printed,
                                        double *buf,
                                        size_t len,
                                        size_t *out_len);

/**
 * Lowest `k` eigenvalues of the discretized radial problem on
 * `n_points` cells of `[r_min, r_max]`. `buf` must hold `k` doubles.
 *
 * # Safety
 * `coeffs` must point to `n_coeffs` doubles; `buf` to `k` doubles.
 */
enum Qes2dStatus qes2d_fd_spectrum(uint32_t family,
                                   const double *coeffs,
                                   size_t n_coeffs,
                                   uint32_t m,
                                   double r_min,
                                   double r_max,
                                   size_t n_points,
                                   size_t k,
                                   double *buf);

/**
 * Static description of a status code.
 */
const char *qes2d_status_message(enum Qes2dStatus status);

/**
 * Detail for the most recent failing call on this thread; empty after a
 * successful call. Valid until the next call on the same thread.
 */
const char *qes2d_last_error(void);

const char *qes2d_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QES2D_H */
