//! Geodesic integration and two-point distance estimation for the
//! realified metrics of radial potentials.
//!
//! The geodesic equation `ẍ^a = −Γ^a_{bc} ẋ^b ẋ^c` is integrated by
//! classical fixed-step RK4 in the interleaved real coordinates of
//! [`crate::realified`]. The Christoffel symbols come from the closed-form
//! metric derivative (no finite differencing), so the conserved g-speed is
//! limited only by the integrator.
//!
//! Two float-hostile regimes are handled explicitly:
//!
//! * **Boundary stagnation.** For potentials with a finite domain (the unit
//!   ball), a unit-speed geodesic approaches the boundary like
//!   `1 − ρ ≈ 2e⁻²ᵗ`; long before the coordinates could leave the domain,
//!   the per-step increment drops below one ulp and an RK4 step returns a
//!   bitwise-identical position. The integrator detects this, freezes the
//!   state, and fills the remaining samples with the frozen point — the run
//!   finishes normally rather than dying to rounding at the boundary.
//! * **Conditioning of the conservation check.** Within `≈1e-9` of the
//!   domain boundary the metric evaluation itself loses digits to
//!   cancellation in `sup − x` (observed speed noise reaches 30% at
//!   `1 − x ≈ 1e-14` even though the trajectory is fine), so such samples
//!   are recorded but excluded from the speed-drift check.

use crate::error::Error;
use crate::kahler::{complex_metric_derivative, PointCn};
use crate::potential::RadialPotential;
use crate::realified::real_metric;
use crate::rng::stream_rng;
use nalgebra::{DMatrix, DVector};
use rand::Rng;

/// Relative speed drift above which an integration is rejected as
/// under-resolved. Tests on specific metrics assert far tighter bounds;
/// this threshold only catches gross step failures.
const STEP_DRIFT_TOL: f64 = 1e-3;

/// A sampled geodesic: times, interleaved real coordinates, and the metric
/// speed at each sample.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    pub times: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    pub speeds: Vec<f64>,
}

impl GeodesicPath {
    pub fn end_point(&self) -> &[f64] {
        self.points.last().expect("path has at least one sample")
    }

    /// Render as CSV: header `t,x_1,…,x_{2n},speed`, one row per sample.
    pub fn to_csv(&self) -> String {
        let dim = self.points.first().map_or(0, |p| p.len());
        let mut out = String::from("t");
        for k in 1..=dim {
            out.push_str(&format!(",x_{k}"));
        }
        out.push_str(",speed\n");
        for i in 0..self.times.len() {
            out.push_str(&format!("{:.12e}", self.times[i]));
            for c in &self.points[i] {
                out.push_str(&format!(",{c:.12e}"));
            }
            out.push_str(&format!(",{:.12e}\n", self.speeds[i]));
        }
        out
    }
}

/// Integration failures. Both variants carry the partial path up to the
/// failure so callers can inspect or render what was computed.
#[derive(Debug, Clone)]
pub enum GeodesicError {
    /// The trajectory left the potential's domain (or the metric stopped
    /// being positive definite) at `exit_time`.
    DomainExited { exit_time: f64, path: GeodesicPath },
    /// The conserved speed drifted by more than the step-failure threshold
    /// on well-conditioned samples: the fixed step did not resolve the flow.
    StepTooLarge { drift: f64, path: GeodesicPath },
}

impl std::fmt::Display for GeodesicError {
    fn fmt(&self, w: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GeodesicError::DomainExited { exit_time, .. } => {
                write!(w, "trajectory left the metric's domain at t = {exit_time}")
            }
            GeodesicError::StepTooLarge { drift, .. } => {
                write!(
                    w,
                    "speed drifted by {drift:.3e}: step too large for this flow"
                )
            }
        }
    }
}

impl std::error::Error for GeodesicError {}

/// Christoffel symbols `Γ^a_{bc}` at an interleaved real point, flat as
/// `gamma[((a·d + b)·d + c)]`, from the closed-form metric derivative.
fn christoffel(p: &RadialPotential, coords: &[f64]) -> Result<Vec<f64>, Error> {
    let d = coords.len();
    let n = d / 2;
    let z = PointCn::from_real(coords);
    let g = real_metric(p, coords)?;
    let g_inv = g
        .try_inverse()
        .ok_or(Error::NotPositiveDefinite { eigenvalue: 0.0 })?;
    let dgc = complex_metric_derivative(p, &z)?;
    let hol = |k: usize, i: usize, j: usize| dgc[(k * n + i) * n + j];

    // Real partials of the complex matrix: ∂/∂x_k = ∂_k + ∂_k̄ and
    // ∂/∂y_k = i(∂_k − ∂_k̄), with ∂_k̄ g_{ij̄} = conj(∂_k g_{jī});
    // then realify each (Hermitian) derivative matrix blockwise.
    let mut dg: Vec<DMatrix<f64>> = Vec::with_capacity(d);
    for a in 0..d {
        let k = a / 2;
        let mut m = DMatrix::zeros(d, d);
        for i in 0..n {
            for j in 0..n {
                let anti = hol(k, j, i).conj();
                let v = if a % 2 == 0 {
                    hol(k, i, j) + anti
                } else {
                    (hol(k, i, j) - anti) * num_complex::Complex64::new(0.0, 1.0)
                };
                m[(2 * i, 2 * j)] = v.re;
                m[(2 * i, 2 * j + 1)] = v.im;
                m[(2 * i + 1, 2 * j)] = -v.im;
                m[(2 * i + 1, 2 * j + 1)] = v.re;
            }
        }
        dg.push(m);
    }

    let mut gamma = vec![0.0; d * d * d];
    for b in 0..d {
        for c in 0..d {
            for a in 0..d {
                let mut s = 0.0;
                for e in 0..d {
                    s += g_inv[(a, e)] * (dg[b][(e, c)] + dg[c][(e, b)] - dg[e][(b, c)]);
                }
                gamma[(a * d + b) * d + c] = 0.5 * s;
            }
        }
    }
    Ok(gamma)
}

/// Metric speed `√G(v,v)` of a velocity at a point.
pub fn metric_speed(p: &RadialPotential, coords: &[f64], v: &[f64]) -> Result<f64, Error> {
    let g = real_metric(p, coords)?;
    let d = coords.len();
    let mut s = 0.0;
    for a in 0..d {
        for b in 0..d {
            s += g[(a, b)] * v[a] * v[b];
        }
    }
    Ok(s.max(0.0).sqrt())
}

/// Geodesic acceleration `−Γ(v, v)`.
fn acceleration(p: &RadialPotential, x: &[f64], v: &[f64]) -> Result<Vec<f64>, Error> {
    let d = x.len();
    let gamma = christoffel(p, x)?;
    let mut acc = vec![0.0; d];
    for a in 0..d {
        let mut s = 0.0;
        for b in 0..d {
            for c in 0..d {
                s += gamma[(a * d + b) * d + c] * v[b] * v[c];
            }
        }
        acc[a] = -s;
    }
    Ok(acc)
}

struct StepOutcome {
    x: Vec<f64>,
    v: Vec<f64>,
    frozen: bool,
}

fn rk4_step(p: &RadialPotential, x: &[f64], v: &[f64], h: f64) -> Result<StepOutcome, Error> {
    let d = x.len();
    let lin = |base: &[f64], dir: &[f64], t: f64| -> Vec<f64> {
        base.iter().zip(dir).map(|(b, dd)| b + t * dd).collect()
    };
    let k1v = acceleration(p, x, v)?;
    let x2 = lin(x, v, 0.5 * h);
    let v2 = lin(v, &k1v, 0.5 * h);
    let k2v = acceleration(p, &x2, &v2)?;
    let x3 = lin(x, &v2, 0.5 * h);
    let v3 = lin(v, &k2v, 0.5 * h);
    let k3v = acceleration(p, &x3, &v3)?;
    let x4 = lin(x, &v3, h);
    let v4 = lin(v, &k3v, h);
    let k4v = acceleration(p, &x4, &v4)?;

    let mut nx = vec![0.0; d];
    let mut nv = vec![0.0; d];
    for a in 0..d {
        nx[a] = x[a] + h / 6.0 * (v[a] + 2.0 * v2[a] + 2.0 * v3[a] + v4[a]);
        nv[a] = v[a] + h / 6.0 * (k1v[a] + 2.0 * k2v[a] + 2.0 * k3v[a] + k4v[a]);
    }
    let frozen = nx == x;
    Ok(StepOutcome {
        x: nx,
        v: nv,
        frozen,
    })
}

/// True when a point is too close to the domain boundary for the metric
/// evaluation itself to be trusted to full precision.
fn near_boundary(p: &RadialPotential, coords: &[f64]) -> bool {
    let sup = p.domain_sup();
    if !sup.is_finite() {
        return false;
    }
    let x: f64 = coords.iter().map(|c| c * c).sum();
    sup - x < 1e-9 * sup.max(1.0)
}

/// Integrate the geodesic with initial position and velocity (interleaved
/// real coordinates) for time `t_final`, recording `samples ≥ 2` uniformly
/// spaced rows. The step count is `max(200, ⌈100·t_final⌉)`, rounded up to a
/// multiple of the sample intervals.
pub fn integrate_geodesic(
    p: &RadialPotential,
    start: &[f64],
    velocity: &[f64],
    t_final: f64,
    samples: usize,
) -> Result<GeodesicPath, GeodesicError> {
    assert!(start.len() == velocity.len() && start.len().is_multiple_of(2));
    assert!(samples >= 2, "need at least the two endpoint samples");
    assert!(t_final > 0.0 && t_final.is_finite());

    let intervals = samples - 1;
    let total_steps = 200usize.max((100.0 * t_final).ceil() as usize);
    let sub = total_steps.div_ceil(intervals);
    let h = t_final / (intervals as f64) / (sub as f64);

    let mut path = GeodesicPath {
        times: Vec::with_capacity(samples),
        points: Vec::with_capacity(samples),
        speeds: Vec::with_capacity(samples),
    };
    let fail_exit = |t: f64, path: GeodesicPath| GeodesicError::DomainExited { exit_time: t, path };

    let mut x = start.to_vec();
    let mut v = velocity.to_vec();
    let speed0 = match metric_speed(p, &x, &v) {
        Ok(s) => s,
        Err(_) => return Err(fail_exit(0.0, path)),
    };
    path.times.push(0.0);
    path.points.push(x.clone());
    path.speeds.push(speed0);

    let mut frozen = false;
    let mut max_drift = 0.0_f64;
    for i in 0..intervals {
        if !frozen {
            for s in 0..sub {
                let t_now = (i * sub + s) as f64 * h;
                match rk4_step(p, &x, &v, h) {
                    Ok(out) => {
                        x = out.x;
                        v = out.v;
                        if out.frozen {
                            frozen = true;
                            break;
                        }
                    }
                    Err(_) => return Err(fail_exit(t_now, path)),
                }
            }
        }
        let t = (i + 1) as f64 * t_final / intervals as f64;
        let speed = match metric_speed(p, &x, &v) {
            Ok(s) => s,
            Err(_) => return Err(fail_exit(t, path)),
        };
        if !frozen && !near_boundary(p, &x) && speed0 > 0.0 {
            max_drift = max_drift.max((speed - speed0).abs() / speed0);
        }
        path.times.push(t);
        path.points.push(x.clone());
        path.speeds.push(speed);
    }

    if max_drift > STEP_DRIFT_TOL {
        return Err(GeodesicError::StepTooLarge {
            drift: max_drift,
            path,
        });
    }
    Ok(path)
}

/// Endpoint-only integration used by the shooting solver: no sampling, and
/// a domain exit returns the last in-domain state (flagged) instead of
/// failing, so the solver can treat it as a misdistance.
fn shoot_endpoint(
    p: &RadialPotential,
    start: &[f64],
    velocity: &[f64],
    t_final: f64,
) -> (Vec<f64>, bool) {
    let steps = 200usize.max((100.0 * t_final).ceil() as usize);
    let h = t_final / steps as f64;
    let mut x = start.to_vec();
    let mut v = velocity.to_vec();
    for _ in 0..steps {
        match rk4_step(p, &x, &v, h) {
            Ok(out) => {
                let was_frozen = out.frozen;
                x = out.x;
                v = out.v;
                if was_frozen {
                    break;
                }
            }
            Err(_) => return (x, true),
        }
    }
    (x, false)
}

/// Result of a two-point distance estimate.
#[derive(Debug, Clone)]
pub struct DistanceEstimate {
    /// Geodesic distance (the unit-speed flight time of the matched shot).
    pub distance: f64,
    /// Euclidean endpoint mismatch of the accepted shot.
    pub residual: f64,
}

/// Map `dim−1` spherical angles to a unit vector in ℝ^dim.
fn unit_from_angles(angles: &[f64]) -> Vec<f64> {
    let dim = angles.len() + 1;
    let mut v = vec![0.0; dim];
    let mut sin_prod = 1.0;
    for (k, &a) in angles.iter().enumerate() {
        v[k] = sin_prod * a.cos();
        sin_prod *= a.sin();
    }
    v[dim - 1] = sin_prod;
    v
}

fn angles_from_unit(v: &[f64]) -> Vec<f64> {
    let dim = v.len();
    let mut angles = vec![0.0; dim - 1];
    let mut tail: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    for k in 0..dim - 1 {
        if tail < 1e-300 {
            angles[k] = 0.0;
            continue;
        }
        angles[k] = (v[k] / tail).clamp(-1.0, 1.0).acos();
        tail = (tail * tail - v[k] * v[k]).max(0.0).sqrt();
    }
    // The construction above loses the sign of the final coordinate; flip
    // the last angle's branch when needed.
    if v[dim - 1] < 0.0 {
        angles[dim - 2] = -angles[dim - 2];
    }
    angles
}

/// Geodesic distance between two points of the potential's metric.
///
/// From the origin the answer is the radial arclength integral (rotational
/// symmetry makes radial lines minimizing geodesics). Otherwise a damped
/// Gauss–Newton shooting solve matches the endpoint over the square system
/// (2n−1 direction angles, flight time), restarting from stratified
/// perturbations of the straight-line initial guess until the residual
/// passes `1e-8`.
pub fn distance_estimate(
    p: &RadialPotential,
    from: &[f64],
    to: &[f64],
    seed: u64,
) -> Result<DistanceEstimate, Error> {
    assert!(from.len() == to.len() && from.len().is_multiple_of(2));
    let d = from.len();
    let sep: f64 = from
        .iter()
        .zip(to)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    if sep == 0.0 {
        return Ok(DistanceEstimate {
            distance: 0.0,
            residual: 0.0,
        });
    }
    let from_origin = from.iter().all(|c| c.abs() < 1e-12);
    if from_origin {
        let r: f64 = to.iter().map(|c| c * c).sum::<f64>().sqrt();
        let dist = crate::conditions::radial_distance(p, r)?;
        return Ok(DistanceEstimate {
            distance: dist,
            residual: 0.0,
        });
    }

    // Initial guess: aim straight at the target, with flight time equal to
    // the metric length of the straight segment (32-point midpoint rule).
    let dir0: Vec<f64> = from.iter().zip(to).map(|(a, b)| (b - a) / sep).collect();
    let mut t0 = 0.0;
    for k in 0..32 {
        let s = (k as f64 + 0.5) / 32.0;
        let pt: Vec<f64> = from.iter().zip(to).map(|(a, b)| a + s * (b - a)).collect();
        t0 += metric_speed(p, &pt, &dir0)? * sep / 32.0;
    }

    let residual_of = |params: &[f64]| -> Vec<f64> {
        let angles = &params[..d - 1];
        let t = params[d - 1].abs().max(1e-9);
        let dir = unit_from_angles(angles);
        let speed = metric_speed(p, from, &dir).unwrap_or(f64::INFINITY);
        if !speed.is_finite() || speed == 0.0 {
            return vec![f64::INFINITY; d];
        }
        let v: Vec<f64> = dir.iter().map(|c| c / speed).collect();
        let (endpoint, exited) = shoot_endpoint(p, from, &v, t);
        let scale = if exited { 10.0 } else { 1.0 };
        endpoint
            .iter()
            .zip(to)
            .map(|(a, b)| scale * (a - b))
            .collect()
    };
    let norm = |r: &[f64]| r.iter().map(|c| c * c).sum::<f64>().sqrt();

    let mut best: Option<(f64, f64)> = None; // (residual, distance)
    let mut rng = stream_rng(seed, 0x6765_6f64); // "geod"
    const RESTARTS: usize = 32;
    for restart in 0..RESTARTS {
        let mut params = angles_from_unit(&dir0);
        params.push(t0);
        if restart > 0 {
            // Stratified perturbation: direction cone and time band widen
            // with the restart index.
            let band = restart as f64 / RESTARTS as f64;
            for a in params.iter_mut().take(d - 1) {
                *a += (rng.random::<f64>() - 0.5) * std::f64::consts::PI * band;
            }
            params[d - 1] = t0 * (1.0 + (rng.random::<f64>() - 0.5) * band);
        }

        let mut res = residual_of(&params);
        let mut rnorm = norm(&res);
        let mut lambda = 1e-3;
        for _ in 0..60 {
            if rnorm <= 1e-8 {
                break;
            }
            if !rnorm.is_finite() {
                break;
            }
            // Forward-difference Jacobian.
            let mut jac = DMatrix::zeros(d, d);
            let fd = 1e-7;
            for c in 0..d {
                let mut bumped = params.clone();
                bumped[c] += fd;
                let rb = residual_of(&bumped);
                if rb.iter().any(|x| !x.is_finite()) {
                    jac.fill(f64::NAN);
                    break;
                }
                for r in 0..d {
                    jac[(r, c)] = (rb[r] - res[r]) / fd;
                }
            }
            if jac.iter().any(|x| !x.is_finite()) {
                break;
            }
            let jt = jac.transpose();
            let rhs = &jt * DVector::from_column_slice(&res);
            let mut improved = false;
            for _ in 0..12 {
                let lhs = &jt * &jac + DMatrix::identity(d, d) * lambda;
                let Some(step) = lhs.lu().solve(&rhs) else {
                    lambda *= 10.0;
                    continue;
                };
                let trial: Vec<f64> = params.iter().zip(step.iter()).map(|(p, s)| p - s).collect();
                let rt = residual_of(&trial);
                let rtn = norm(&rt);
                if rtn < rnorm {
                    params = trial;
                    res = rt;
                    rnorm = rtn;
                    lambda = (lambda * 0.3).max(1e-12);
                    improved = true;
                    break;
                }
                lambda *= 10.0;
            }
            if !improved {
                break;
            }
        }
        let dist = params[d - 1].abs();
        if rnorm.is_finite() {
            match best {
                Some((br, _)) if br <= rnorm => {}
                _ => best = Some((rnorm, dist)),
            }
        }
        if let Some((br, bd)) = best {
            if br <= 1e-8 {
                return Ok(DistanceEstimate {
                    distance: bd,
                    residual: br,
                });
            }
        }
    }
    let (residual, distance) = best.unwrap_or((f64::INFINITY, f64::NAN));
    Err(Error::NoConvergence {
        best: distance,
        residual,
    })
}
