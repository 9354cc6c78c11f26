#ifndef LIECHECK_H
#define LIECHECK_H

/* Generated by cbindgen from the liecheck-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every fallible entry point.
 */
typedef enum LiecheckStatus {
  /**
   * The call succeeded.
   */
  LIECHECK_STATUS_OK = 0,
  /**
   * The call failed; `liecheck_last_error` has the reason.
   */
  LIECHECK_STATUS_ERROR = 1,
  /**
   * The arguments were malformed or out of range.
   */
  LIECHECK_STATUS_USAGE = 2,
  /**
   * An enumeration exceeded its point budget.
   */
  LIECHECK_STATUS_BUDGET = 3,
  /**
   * A required pointer argument was null.
   */
  LIECHECK_STATUS_NULL_ARG = 4,
} LiecheckStatus;

/**
 * Opaque algebra handle.
 */
typedef struct LiecheckAlgebra LiecheckAlgebra;

/**
 * Opaque handle to an enumerated long-root cone.
 */
typedef struct LiecheckCone LiecheckCone;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Latest error message for this thread; the pointer stays valid until
 * the next failing call from the same thread.
 */
const char *liecheck_last_error(void);

/**
 * Version of the underlying library as a static NUL-terminated string.
 */
const char *liecheck_version(void);

/**
 * Build the algebra of the given root system type (letter `A`–`G`),
 * rank and odd-or-even prime `p`, storing a handle through `out`.
 *
 * # Safety
 * `out` must be a valid pointer; on `Ok` the caller owns the handle and
 * must release it with `liecheck_algebra_free`.
 */
enum LiecheckStatus liecheck_algebra_new(char kind,
                                         uintptr_t rank,
                                         uint64_t p,
                                         struct LiecheckAlgebra **out);

/**
 * Release an algebra handle.  A null pointer is ignored.
 *
 * # Safety
 * The handle must come from `liecheck_algebra_new` and not be used
 * again afterwards.
 */
void liecheck_algebra_free(struct LiecheckAlgebra *a);

/**
 * Dimension of the algebra (the length of coefficient arrays); 0 for a
 * null handle.
 *
 * # Safety
 * `a` must be a live handle or null.
 */
uintptr_t liecheck_algebra_dim(const struct LiecheckAlgebra *a);

/**
 * Rank of the root system; 0 for a null handle.
 *
 * # Safety
 * `a` must be a live handle or null.
 */
uintptr_t liecheck_algebra_rank(const struct LiecheckAlgebra *a);

/**
 * Field characteristic; 0 for a null handle.
 *
 * # Safety
 * `a` must be a live handle or null.
 */
uint64_t liecheck_algebra_p(const struct LiecheckAlgebra *a);

/**
 * Number of roots; 0 for a null handle.
 *
 * # Safety
 * `a` must be a live handle or null.
 */
uintptr_t liecheck_algebra_num_roots(const struct LiecheckAlgebra *a);

/**
 * Lie bracket `[x, y]` of two coefficient vectors of length `dim`.
 *
 * # Safety
 * `x`, `y` and `out` must point to `dim` readable (resp. writable)
 * `uint64_t` slots; `out` may alias `x` or `y`.
 */
enum LiecheckStatus liecheck_bracket(const struct LiecheckAlgebra *a,
                                     const uint64_t *x,
                                     const uint64_t *y,
                                     uint64_t *out);

/**
 * Apply the exponentiated root generator `x_root(t)` to a vector.
 *
 * # Safety
 * As for `liecheck_bracket`; `root` must be below
 * `liecheck_algebra_num_roots`.
 */
enum LiecheckStatus liecheck_adexp(const struct LiecheckAlgebra *a,
                                   uintptr_t root,
                                   uint64_t t,
                                   const uint64_t *x,
                                   uint64_t *out);

/**
 * Restricted p-th power `x^[p]` of a coefficient vector.
 *
 * # Safety
 * As for `liecheck_bracket`.
 */
enum LiecheckStatus liecheck_p_power(const struct LiecheckAlgebra *a,
                                     const uint64_t *x,
                                     uint64_t *out);

/**
 * Normalized invariant form `<x, y>`, written to `out_value`.
 *
 * # Safety
 * As for `liecheck_bracket`, with `out_value` pointing to one slot.
 */
enum LiecheckStatus liecheck_form_value(const struct LiecheckAlgebra *a,
                                        const uint64_t *x,
                                        const uint64_t *y,
                                        uint64_t *out_value);

/**
 * Enumerate the long-root cone, up to `budget` points (0 selects the
 * built-in default), storing a handle through `out`.
 *
 * # Safety
 * `out` must be valid; on `Ok` release the handle with
 * `liecheck_cone_free`.  The cone may outlive the algebra handle.
 */
enum LiecheckStatus liecheck_cone_new(const struct LiecheckAlgebra *a,
                                      uintptr_t budget,
                                      struct LiecheckCone **out);

/**
 * Release a cone handle.  A null pointer is ignored.
 *
 * # Safety
 * The handle must come from `liecheck_cone_new` and not be used again.
 */
void liecheck_cone_free(struct LiecheckCone *c);

/**
 * Number of cone points (the zero vector included); 0 for null.
 *
 * # Safety
 * `c` must be a live handle or null.
 */
uintptr_t liecheck_cone_len(const struct LiecheckCone *c);

/**
 * Copy cone point `i` into `out` (length `dim`).
 *
 * # Safety
 * `out` must have room for `dim` slots; `i` must be below
 * `liecheck_cone_len`.
 */
enum LiecheckStatus liecheck_cone_get(const struct LiecheckCone *c, uintptr_t i, uint64_t *out);

/**
 * Does `x` lie in the enumerated cone?  Returns 1, 0, or -1 on error.
 *
 * # Safety
 * `x` must point to `dim` readable slots matching the cone's algebra.
 */
int32_t liecheck_cone_contains(const struct LiecheckAlgebra *a,
                               const struct LiecheckCone *c,
                               const uint64_t *x);

/**
 * Rank of the span of the cone inside the algebra.
 *
 * # Safety
 * Both handles must be live and built from the same algebra.
 */
uintptr_t liecheck_cone_spanning_rank(const struct LiecheckAlgebra *a,
                                      const struct LiecheckCone *c);

/**
 * Run a named scenario.  `params_json` may be null or a JSON object
 * with optional fields `type`, `rank`, `p`, `seed`, `samples`,
 * `budget`; omitted fields use the scenario's defaults.  On `Ok`,
 * `*out_json` holds the report as a JSON line; free it with
 * `liecheck_string_free`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out_json` must be valid.
 */
enum LiecheckStatus liecheck_run_scenario(const char *name,
                                          const char *params_json,
                                          char **out_json);

/**
 * Free a string returned by this library.  A null pointer is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void liecheck_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIECHECK_H */
