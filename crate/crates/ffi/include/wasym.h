#ifndef WASYM_H
#define WASYM_H

/* Generated by cbindgen from the wasym-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible entry point.
typedef enum WasymStatus {
  // The call succeeded and all out-parameters are set.
  WASYM_STATUS_OK = 0,
  // A required pointer argument was null.
  WASYM_STATUS_NULL_POINTER = 1,
  // An argument was outside its documented domain.
  WASYM_STATUS_INVALID_ARGUMENT = 2,
  // Arguments were structurally valid but the computation failed
  // (for example, a singular covariance matrix).
  WASYM_STATUS_COMPUTE_ERROR = 3,
  // An internal panic was caught at the boundary.
  WASYM_STATUS_PANIC = 4,
} WasymStatus;

// Transport cost exponent, accepted by `order` parameters.
typedef enum WasymOrder {
  // First-order cost (sum of distances).
  WASYM_ORDER_W1 = 1,
  // Second-order cost (root of summed squared distances).
  WASYM_ORDER_W2 = 2,
} WasymOrder;

// Ground metric, accepted by `metric` parameters.
typedef enum WasymMetric {
  // Sum of absolute coordinate differences.
  WASYM_METRIC_L1 = 0,
  // Euclidean distance.
  WASYM_METRIC_L2 = 1,
  // Maximum absolute coordinate difference.
  WASYM_METRIC_LINF = 2,
} WasymMetric;

// Opaque handle to an immutable point cloud (`n` points in `d`
// dimensions, row-major).
typedef struct WasymCloud WasymCloud;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string; never null.
const char *wasym_version(void);

// Message for the most recent failure on the calling thread, or an empty
// string if there has been none. The pointer stays valid until the next
// failing `wasym_*` call on the same thread; do not free it.
const char *wasym_last_error_message(void);

// Copies `n * d` row-major coordinates into a new cloud handle and stores
// it in `*out`. All coordinates must be finite; `n >= 1`, `d >= 1`.
//
// # Safety
// `data` must point to at least `n * d` readable doubles; `out` must be a
// valid writable pointer.
enum WasymStatus wasym_cloud_new(const double *data, size_t n, size_t d, struct WasymCloud **out);

// Releases a handle created by [`wasym_cloud_new`]; null is a no-op.
//
// # Safety
// `cloud` must be null or an unfreed handle from [`wasym_cloud_new`];
// the handle must not be used afterwards.
void wasym_cloud_free(struct WasymCloud *cloud);

// Writes the point count and dimension of `cloud`.
//
// # Safety
// Pointer arguments must be valid (see [`wasym_cloud_new`]).
enum WasymStatus wasym_cloud_shape(const struct WasymCloud *cloud, size_t *out_n, size_t *out_d);

// Empirical transport distance between two equally sized clouds.
// `order` takes a `WasymOrder` value and `metric` a `WasymMetric` value.
//
// # Safety
// Pointer arguments must be valid (see [`wasym_cloud_new`]).
enum WasymStatus wasym_wasserstein(const struct WasymCloud *x,
                                   const struct WasymCloud *y,
                                   uint32_t order,
                                   uint32_t metric,
                                   double *out);

// Split-half estimate of the reflection distance of `x` (mean over `r`
// replications); the standard error is also written when `out_std_error`
// is non-null. Deterministic in `seed`.
//
// # Safety
// Pointer arguments must be valid (see [`wasym_cloud_new`]).
enum WasymStatus wasym_reflection_split(const struct WasymCloud *x,
                                        uint32_t order,
                                        uint32_t metric,
                                        size_t r,
                                        uint64_t seed,
                                        double *out_mean,
                                        double *out_std_error);

// P-value of the bootstrap-permutation symmetry test with `r`
// replications of `m_perms` permutations (inclusive tie rule, no
// subsampling, no centering). Deterministic in `seed`.
//
// # Safety
// Pointer arguments must be valid (see [`wasym_cloud_new`]).
enum WasymStatus wasym_symmetry_pvalue(const struct WasymCloud *x,
                                       uint32_t order,
                                       uint32_t metric,
                                       size_t r,
                                       size_t m_perms,
                                       uint64_t seed,
                                       double *out_p);

// Mardia skewness test of `x`: writes the statistic, the chi-squared
// degrees of freedom, and the p-value.
//
// # Safety
// Pointer arguments must be valid (see [`wasym_cloud_new`]).
enum WasymStatus wasym_mardia(const struct WasymCloud *x,
                              double *out_statistic,
                              size_t *out_df,
                              double *out_p);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WASYM_H */
