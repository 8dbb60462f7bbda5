/* C interface for the negcurv curvature and coarse-geometry library. */

#ifndef NEGCURV_H
#define NEGCURV_H

/* Generated by cbindgen from negcurv-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code for every FFI entry point.
typedef enum NcStatus {
  // Success; all out parameters were written.
  NC_STATUS_OK = 0,
  // A pointer was null, a size was zero/odd where it must not be, or a
  // scalar argument was out of its documented range.
  NC_STATUS_BAD_ARGUMENT = 1,
  // A name (potential or space) failed to parse.
  NC_STATUS_PARSE_ERROR = 2,
  // The evaluation point lies outside the potential's domain.
  NC_STATUS_DOMAIN_ERROR = 3,
  // The metric degenerates at the requested point.
  NC_STATUS_SINGULARITY = 4,
  // The metric is not positive definite at the requested point.
  NC_STATUS_NOT_POSITIVE_DEFINITE = 5,
  // A vector or plane argument was degenerate (zero or collinear).
  NC_STATUS_DEGENERATE_INPUT = 6,
  // Adaptive quadrature failed to converge or the integrand blew up.
  NC_STATUS_QUADRATURE_ERROR = 7,
  // An iterative solve did not converge.
  NC_STATUS_NO_CONVERGENCE = 8,
  // The geodesic left the metric's coordinate domain before `t_final`.
  NC_STATUS_DOMAIN_EXITED = 9,
  // The geodesic integrator detected unacceptable speed drift.
  NC_STATUS_STEP_TOO_LARGE = 10,
} NcStatus;

// Opaque handle to a registered radial potential.
typedef struct NcPotential NcPotential;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parse a potential by its registry name (`"linear"`, `"exp"`, `"log_ball"`,
// `"fubini"`, or `"poly:c1,c2,…"`) and store a fresh handle in `*out`.
//
// # Safety
// `name` must be a NUL-terminated string valid for the duration of the
// call; `out` must be a valid pointer. On `NC_STATUS_OK` the caller owns
// the handle and must release it with [`nc_potential_free`].
enum NcStatus nc_potential_parse(const char *name, struct NcPotential **out);

// Release a handle created by [`nc_potential_parse`]. Null is a no-op.
//
// # Safety
// `p` must be null or a handle obtained from [`nc_potential_parse`] that
// has not been freed already.
void nc_potential_free(struct NcPotential *p);

// Supremum of the potential's domain in `x = r²` (may be `+inf`).
//
// # Safety
// `p` must be a live handle from [`nc_potential_parse`].
double nc_potential_domain_sup(const struct NcPotential *p);

// Evaluate the potential's scalar jet at `x = r²`: writes
// `[f, f′, f″, f‴, f⁗]` into `out[0..5]`.
//
// # Safety
// `p` must be a live handle; `out` must point to at least 5 doubles.
enum NcStatus nc_potential_jet(const struct NcPotential *p, double x, double *out);

// The four pointwise negativity margins at radius `r`, written into
// `out[0..4]` in the order (a), (c), (d), (e). All four strictly positive
// means the sufficient test for negative sectional curvature holds at `r`.
//
// # Safety
// `p` must be a live handle; `out` must point to at least 4 doubles.
enum NcStatus nc_condition_margins(const struct NcPotential *p, double r, double *out);

// Radial length integral `∫₀^{r_max} √(f′+s²f″) ds` together with a
// divergence verdict for the completeness test: `*divergent` is 1 when the
// tail growth classifies the full integral as divergent, 0 otherwise.
//
// # Safety
// `p` must be a live handle; `integral` and `divergent` must be valid.
enum NcStatus nc_completeness(const struct NcPotential *p,
                              double r_max,
                              double *integral,
                              int32_t *divergent);

// Geodesic distance from the origin to Euclidean radius `r` along a ray.
//
// # Safety
// `p` must be a live handle; `out` must be valid.
enum NcStatus nc_radial_distance(const struct NcPotential *p, double r, double *out);

// Holomorphic sectional curvature `H(v)` of the complex line through `v`
// at the point `z`, both given as `2n` interleaved doubles.
//
// # Safety
// `p` must be a live handle; `z` and `v` must each point to `2n` doubles;
// `out` must be valid; `n ≥ 1`.
enum NcStatus nc_holomorphic_sectional(const struct NcPotential *p,
                                       size_t n,
                                       const double *z,
                                       const double *v,
                                       double *out);

// Holomorphic bisectional curvature `B(v, w)` at the point `z` (all given
// as `2n` interleaved doubles).
//
// # Safety
// `p` must be a live handle; `z`, `v`, `w` must each point to `2n`
// doubles; `out` must be valid; `n ≥ 1`.
enum NcStatus nc_holomorphic_bisectional(const struct NcPotential *p,
                                         size_t n,
                                         const double *z,
                                         const double *v,
                                         const double *w,
                                         double *out);

// Real sectional curvature of `span{x, y}` at a point of ℝ²ⁿ, computed on
// the realified metric by finite differences (independent of the complex
// route above). `coords`, `x`, `y` are `dim = 2n` doubles each.
//
// # Safety
// `p` must be a live handle; `coords`, `x`, `y` must each point to `dim`
// doubles; `out` must be valid; `dim` must be positive and even.
enum NcStatus nc_real_sectional(const struct NcPotential *p,
                                size_t dim,
                                const double *coords,
                                const double *x,
                                const double *y,
                                double *out);

// Calibrated lower Ricci bound at the point `z` (`2n` interleaved doubles):
// twice the minimum eigenvalue of the Ricci tensor relative to the metric,
// so that for n=1 it equals the Gaussian curvature.
//
// # Safety
// `p` must be a live handle; `z` must point to `2n` doubles; `out` must be
// valid; `n ≥ 1`.
enum NcStatus nc_ricci_lower(const struct NcPotential *p, size_t n, const double *z, double *out);

// Integrate the geodesic with the given start and velocity (interleaved
// real coordinates, `dim = 2n` each) for time `t_final`; writes the final
// position into `end[0..dim]` and, when `speed` is non-null, the metric
// speed at the endpoint.
//
// # Safety
// `p` must be a live handle; `start` and `velocity` must each point to
// `dim` doubles; `end` must point to `dim` writable doubles; `speed` must
// be null or valid; `dim` must be positive and even; `t_final` must be
// positive and finite.
enum NcStatus nc_geodesic_endpoint(const struct NcPotential *p,
                                   size_t dim,
                                   const double *start,
                                   const double *velocity,
                                   double t_final,
                                   double *end,
                                   double *speed);

// Four-point hyperbolicity estimate over seeded random quadruples of the
// named sample space (`"line"`, `"segment"`, `"ray"`, `"plane"`, `"disc4"`,
// `"product-rays"`, or `"product-discs"`). `combiner` may be null for the
// space's default, or `"l1"` / `"l2"` for the product spaces.
//
// # Safety
// `space` must be a NUL-terminated string; `combiner` must be null or a
// NUL-terminated string; `out` must be valid.
enum NcStatus nc_four_point_delta(const char *space,
                                  const char *combiner,
                                  double scale,
                                  size_t quadruples,
                                  uint64_t seed,
                                  double *out);

// Static, NUL-terminated description of a status code. Never null.
const char *nc_status_message(enum NcStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NEGCURV_H */
