//! C ABI over the `negcurv` library.
//!
//! The surface is deliberately flat: an opaque potential handle plus
//! stateless functions taking interleaved real coordinates
//! `[re z_1, im z_1, …, re z_n, im z_n]` and writing results through out
//! pointers. Every function returns an [`NcStatus`]; `NC_STATUS_OK` means
//! all out parameters were written. On any other status the out parameters
//! are untouched.
//!
//! Handles created by [`nc_potential_parse`] must be released with
//! [`nc_potential_free`]. All other functions borrow the handle and are safe
//! to call concurrently from multiple threads.
//!
//! The C header mirroring this module lives at `include/negcurv.h` and is
//! regenerated by the build script when `cbindgen` is available.

use std::ffi::{c_char, CStr};

use negcurv::conditions::{
    completeness_integral, margins_at, radial_distance, Classification, DEFAULT_PANELS,
};
use negcurv::geodesic::{integrate_geodesic, GeodesicError};
use negcurv::hyperbolicity::four_point_delta;
use negcurv::kahler::{
    curvature_tensor_at, holomorphic_bisectional, holomorphic_sectional, ricci_at, PointCn,
};
use negcurv::num_complex::Complex64;
use negcurv::realified::real_sectional;
use negcurv::spaces::{Combiner, MetricSpace};
use negcurv::{Error, RadialPotential};

/// Opaque handle to a registered radial potential.
pub struct NcPotential(RadialPotential);

/// Result code for every FFI entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NcStatus {
    /// Success; all out parameters were written.
    Ok = 0,
    /// A pointer was null, a size was zero/odd where it must not be, or a
    /// scalar argument was out of its documented range.
    BadArgument = 1,
    /// A name (potential or space) failed to parse.
    ParseError = 2,
    /// The evaluation point lies outside the potential's domain.
    DomainError = 3,
    /// The metric degenerates at the requested point.
    Singularity = 4,
    /// The metric is not positive definite at the requested point.
    NotPositiveDefinite = 5,
    /// A vector or plane argument was degenerate (zero or collinear).
    DegenerateInput = 6,
    /// Adaptive quadrature failed to converge or the integrand blew up.
    QuadratureError = 7,
    /// An iterative solve did not converge.
    NoConvergence = 8,
    /// The geodesic left the metric's coordinate domain before `t_final`.
    DomainExited = 9,
    /// The geodesic integrator detected unacceptable speed drift.
    StepTooLarge = 10,
}

fn status_of(e: &Error) -> NcStatus {
    match e {
        Error::Parse(_) => NcStatus::ParseError,
        Error::Domain { .. } | Error::JetDomain { .. } => NcStatus::DomainError,
        Error::Singularity { .. } => NcStatus::Singularity,
        Error::NotPositiveDefinite { .. } => NcStatus::NotPositiveDefinite,
        Error::ZeroVector | Error::DegeneratePlane => NcStatus::DegenerateInput,
        Error::Quadrature { .. } => NcStatus::QuadratureError,
        Error::NoConvergence { .. } => NcStatus::NoConvergence,
        Error::NotAGeodesic { .. } | Error::BadConstants { .. } | Error::MissingOracle { .. } => {
            NcStatus::BadArgument
        }
    }
}

/// Parse a UTF-8, NUL-terminated C string; `None` on null or bad encoding.
unsafe fn c_str<'a>(s: *const c_char) -> Option<&'a str> {
    if s.is_null() {
        return None;
    }
    CStr::from_ptr(s).to_str().ok()
}

/// Reconstruct `n` complex numbers from `2n` interleaved doubles.
unsafe fn complex_slice(ptr: *const f64, n: usize) -> Vec<Complex64> {
    let reals = std::slice::from_raw_parts(ptr, 2 * n);
    reals
        .chunks_exact(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect()
}

/// Parse a potential by its registry name (`"linear"`, `"exp"`, `"log_ball"`,
/// `"fubini"`, or `"poly:c1,c2,…"`) and store a fresh handle in `*out`.
///
/// # Safety
/// `name` must be a NUL-terminated string valid for the duration of the
/// call; `out` must be a valid pointer. On `NC_STATUS_OK` the caller owns
/// the handle and must release it with [`nc_potential_free`].
#[no_mangle]
pub unsafe extern "C" fn nc_potential_parse(
    name: *const c_char,
    out: *mut *mut NcPotential,
) -> NcStatus {
    if out.is_null() {
        return NcStatus::BadArgument;
    }
    let Some(name) = c_str(name) else {
        return NcStatus::BadArgument;
    };
    match name.parse::<RadialPotential>() {
        Ok(p) => {
            *out = Box::into_raw(Box::new(NcPotential(p)));
            NcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Release a handle created by [`nc_potential_parse`]. Null is a no-op.
///
/// # Safety
/// `p` must be null or a handle obtained from [`nc_potential_parse`] that
/// has not been freed already.
#[no_mangle]
pub unsafe extern "C" fn nc_potential_free(p: *mut NcPotential) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Supremum of the potential's domain in `x = r²` (may be `+inf`).
///
/// # Safety
/// `p` must be a live handle from [`nc_potential_parse`].
#[no_mangle]
pub unsafe extern "C" fn nc_potential_domain_sup(p: *const NcPotential) -> f64 {
    if p.is_null() {
        return f64::NAN;
    }
    (*p).0.domain_sup()
}

/// Evaluate the potential's scalar jet at `x = r²`: writes
/// `[f, f′, f″, f‴, f⁗]` into `out[0..5]`.
///
/// # Safety
/// `p` must be a live handle; `out` must point to at least 5 doubles.
#[no_mangle]
pub unsafe extern "C" fn nc_potential_jet(
    p: *const NcPotential,
    x: f64,
    out: *mut f64,
) -> NcStatus {
    if p.is_null() || out.is_null() {
        return NcStatus::BadArgument;
    }
    match (*p).0.jet(x) {
        Ok(j) => {
            let out = std::slice::from_raw_parts_mut(out, 5);
            out.copy_from_slice(&[j.v0, j.v1, j.v2, j.v3, j.v4]);
            NcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The four pointwise negativity margins at radius `r`, written into
/// `out[0..4]` in the order (a), (c), (d), (e). All four strictly positive
/// means the sufficient test for negative sectional curvature holds at `r`.
///
/// # Safety
/// `p` must be a live handle; `out` must point to at least 4 doubles.
#[no_mangle]
pub unsafe extern "C" fn nc_condition_margins(
    p: *const NcPotential,
    r: f64,
    out: *mut f64,
) -> NcStatus {
    if p.is_null() || out.is_null() {
        return NcStatus::BadArgument;
    }
    match margins_at(&(*p).0, r) {
        Ok(m) => {
            std::slice::from_raw_parts_mut(out, 4).copy_from_slice(&m);
            NcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Radial length integral `∫₀^{r_max} √(f′+s²f″) ds` together with a
/// divergence verdict for the completeness test: `*divergent` is 1 when the
/// tail growth classifies the full integral as divergent, 0 otherwise.
///
/// # Safety
/// `p` must be a live handle; `integral` and `divergent` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nc_completeness(
    p: *const NcPotential,
    r_max: f64,
    integral: *mut f64,
    divergent: *mut i32,
) -> NcStatus {
    if p.is_null() || integral.is_null() || divergent.is_null() {
        return NcStatus::BadArgument;
    }
    match completeness_integral(&(*p).0, r_max, DEFAULT_PANELS) {
        Ok(c) => {
            *integral = c.integral;
            *divergent = i32::from(c.classification == Classification::Divergent);
            NcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Geodesic distance from the origin to Euclidean radius `r` along a ray.
///
/// # Safety
/// `p` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nc_radial_distance(
    p: *const NcPotential,
    r: f64,
    out: *mut f64,
) -> NcStatus {
    if p.is_null() || out.is_null() {
        return NcStatus::BadArgument;
    }
    match radial_distance(&(*p).0, r) {
        Ok(d) => {
            *out = d;
            NcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Holomorphic sectional curvature `H(v)` of the complex line through `v`
/// at the point `z`, both given as `2n` interleaved doubles.
///
/// # Safety
/// `p` must be a live handle; `z` and `v` must each point to `2n` doubles;
/// `out` must be valid; `n ≥ 1`.
#[no_mangle]
pub unsafe extern "C" fn nc_holomorphic_sectional(
    p: *const NcPotential,
    n: usize,
    z: *const f64,
    v: *const f64,
    out: *mut f64,
) -> NcStatus {
    if p.is_null() || z.is_null() || v.is_null() || out.is_null() || n == 0 {
        return NcStatus::BadArgument;
    }
    let point = PointCn::new(complex_slice(z, n));
    let vec = complex_slice(v, n);
    match curvature_tensor_at(&(*p).0, &point).and_then(|t| holomorphic_sectional(&t, &vec)) {
        Ok(h) => {
            *out = h;
            NcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Holomorphic bisectional curvature `B(v, w)` at the point `z` (all given
/// as `2n` interleaved doubles).
///
/// # Safety
/// `p` must be a live handle; `z`, `v`, `w` must each point to `2n`
/// doubles; `out` must be valid; `n ≥ 1`.
#[no_mangle]
pub unsafe extern "C" fn nc_holomorphic_bisectional(
    p: *const NcPotential,
    n: usize,
    z: *const f64,
    v: *const f64,
    w: *const f64,
    out: *mut f64,
) -> NcStatus {
    if p.is_null() || z.is_null() || v.is_null() || w.is_null() || out.is_null() || n == 0 {
        return NcStatus::BadArgument;
    }
    let point = PointCn::new(complex_slice(z, n));
    let (v, w) = (complex_slice(v, n), complex_slice(w, n));
    match curvature_tensor_at(&(*p).0, &point).and_then(|t| holomorphic_bisectional(&t, &v, &w)) {
        Ok(b) => {
            *out = b;
            NcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Real sectional curvature of `span{x, y}` at a point of ℝ²ⁿ, computed on
/// the realified metric by finite differences (independent of the complex
/// route above). `coords`, `x`, `y` are `dim = 2n` doubles each.
///
/// # Safety
/// `p` must be a live handle; `coords`, `x`, `y` must each point to `dim`
/// doubles; `out` must be valid; `dim` must be positive and even.
#[no_mangle]
pub unsafe extern "C" fn nc_real_sectional(
    p: *const NcPotential,
    dim: usize,
    coords: *const f64,
    x: *const f64,
    y: *const f64,
    out: *mut f64,
) -> NcStatus {
    if p.is_null()
        || coords.is_null()
        || x.is_null()
        || y.is_null()
        || out.is_null()
        || dim == 0
        || !dim.is_multiple_of(2)
    {
        return NcStatus::BadArgument;
    }
    let coords = std::slice::from_raw_parts(coords, dim);
    let x = std::slice::from_raw_parts(x, dim);
    let y = std::slice::from_raw_parts(y, dim);
    match real_sectional(&(*p).0, coords, x, y) {
        Ok(k) => {
            *out = k;
            NcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Calibrated lower Ricci bound at the point `z` (`2n` interleaved doubles):
/// twice the minimum eigenvalue of the Ricci tensor relative to the metric,
/// so that for n=1 it equals the Gaussian curvature.
///
/// # Safety
/// `p` must be a live handle; `z` must point to `2n` doubles; `out` must be
/// valid; `n ≥ 1`.
#[no_mangle]
pub unsafe extern "C" fn nc_ricci_lower(
    p: *const NcPotential,
    n: usize,
    z: *const f64,
    out: *mut f64,
) -> NcStatus {
    if p.is_null() || z.is_null() || out.is_null() || n == 0 {
        return NcStatus::BadArgument;
    }
    match ricci_at(&(*p).0, &PointCn::new(complex_slice(z, n))) {
        Ok(r) => {
            *out = r.ricci_lower;
            NcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Integrate the geodesic with the given start and velocity (interleaved
/// real coordinates, `dim = 2n` each) for time `t_final`; writes the final
/// position into `end[0..dim]` and, when `speed` is non-null, the metric
/// speed at the endpoint.
///
/// # Safety
/// `p` must be a live handle; `start` and `velocity` must each point to
/// `dim` doubles; `end` must point to `dim` writable doubles; `speed` must
/// be null or valid; `dim` must be positive and even; `t_final` must be
/// positive and finite.
#[no_mangle]
pub unsafe extern "C" fn nc_geodesic_endpoint(
    p: *const NcPotential,
    dim: usize,
    start: *const f64,
    velocity: *const f64,
    t_final: f64,
    end: *mut f64,
    speed: *mut f64,
) -> NcStatus {
    if p.is_null()
        || start.is_null()
        || velocity.is_null()
        || end.is_null()
        || dim == 0
        || !dim.is_multiple_of(2)
        || !(t_final > 0.0 && t_final.is_finite())
    {
        return NcStatus::BadArgument;
    }
    let start = std::slice::from_raw_parts(start, dim);
    let velocity = std::slice::from_raw_parts(velocity, dim);
    match integrate_geodesic(&(*p).0, start, velocity, t_final, 2) {
        Ok(path) => {
            std::slice::from_raw_parts_mut(end, dim).copy_from_slice(path.end_point());
            if !speed.is_null() {
                *speed = *path.speeds.last().expect("path has samples");
            }
            NcStatus::Ok
        }
        Err(GeodesicError::DomainExited { .. }) => NcStatus::DomainExited,
        Err(GeodesicError::StepTooLarge { .. }) => NcStatus::StepTooLarge,
    }
}

/// Four-point hyperbolicity estimate over seeded random quadruples of the
/// named sample space (`"line"`, `"segment"`, `"ray"`, `"plane"`, `"disc4"`,
/// `"product-rays"`, or `"product-discs"`). `combiner` may be null for the
/// space's default, or `"l1"` / `"l2"` for the product spaces.
///
/// # Safety
/// `space` must be a NUL-terminated string; `combiner` must be null or a
/// NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nc_four_point_delta(
    space: *const c_char,
    combiner: *const c_char,
    scale: f64,
    quadruples: usize,
    seed: u64,
    out: *mut f64,
) -> NcStatus {
    if out.is_null() || !(scale > 0.0 && scale.is_finite()) || quadruples == 0 {
        return NcStatus::BadArgument;
    }
    let Some(space) = c_str(space) else {
        return NcStatus::BadArgument;
    };
    let comb = if combiner.is_null() {
        None
    } else {
        let Some(text) = c_str(combiner) else {
            return NcStatus::BadArgument;
        };
        match text.parse::<Combiner>() {
            Ok(c) => Some(c),
            Err(e) => return status_of(&e),
        }
    };
    match MetricSpace::parse(space, comb) {
        Ok(s) => {
            *out = four_point_delta(&s, scale, quadruples, seed).delta_estimate;
            NcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Static, NUL-terminated description of a status code. Never null.
#[no_mangle]
pub extern "C" fn nc_status_message(status: NcStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        NcStatus::Ok => c"ok",
        NcStatus::BadArgument => c"bad argument: null pointer or out-of-range scalar",
        NcStatus::ParseError => c"unrecognized potential or space name",
        NcStatus::DomainError => c"evaluation point outside the potential's domain",
        NcStatus::Singularity => c"metric degenerates at the requested point",
        NcStatus::NotPositiveDefinite => c"metric not positive definite at the requested point",
        NcStatus::DegenerateInput => c"zero vector or degenerate plane",
        NcStatus::QuadratureError => c"quadrature failed to converge",
        NcStatus::NoConvergence => c"iterative solve did not converge",
        NcStatus::DomainExited => c"geodesic left the coordinate domain",
        NcStatus::StepTooLarge => c"geodesic integrator detected speed drift",
    };
    msg.as_ptr()
}
