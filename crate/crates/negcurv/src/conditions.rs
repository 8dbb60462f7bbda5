//! Pointwise curvature conditions and the completeness integral for radial
//! potentials.
//!
//! For a potential `f` and `x = r²`, with `u = f′ + x f″` (the radial metric
//! eigenvalue), the five classical sufficient conditions for a complete
//! negatively curved metric read, as strict positivity of margins:
//!
//! * (a) `u = f′ + x f″ > 0`
//! * (b) `∫₀^∞ √u(r²) dr = ∞` (completeness; classified, not decided)
//! * (c) `f″ > 0`
//! * (d) `f″ + x f‴ − x f″²/f′ > 0`
//! * (e) `(1/r)·d/dr( r·d/dr ln u(r²) ) > 0`
//!
//! Margin (e) is evaluated by composing jets in `r` — build the `r`-jet of
//! `x = r²`, push it through the derivative bundles of `f′` and `f″`, apply
//! the Leibniz rule and `ln`, and read off `h′/r + h″` — with no finite
//! differencing anywhere. When `u ≤ 0` at a grid point the (e) margin is
//! reported as NaN (the log is undefined there) and the verdict fails.

use crate::error::{Error, Result};
use crate::jet::{jet_elementary, jet_mul, Jet4, JetFn};
use crate::potential::RadialPotential;
use crate::quad;
use rayon::prelude::*;
use serde::Serialize;

/// Relative tolerance used for all radial quadrature in this module.
const QUAD_REL_TOL: f64 = 1e-9;

/// Default number of initial quadrature panels.
pub const DEFAULT_PANELS: usize = 8;

/// Per-condition margin arrays over the grid.
#[derive(Debug, Clone, Serialize)]
pub struct Margins {
    pub a: Vec<f64>,
    pub c: Vec<f64>,
    pub d: Vec<f64>,
    pub e: Vec<f64>,
}

/// Pass/fail verdict per condition: pass iff every margin sample is finite
/// and strictly positive.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Verdicts {
    pub a: bool,
    pub c: bool,
    pub d: bool,
    pub e: bool,
}

impl Verdicts {
    pub fn all(&self) -> bool {
        self.a && self.c && self.d && self.e
    }
}

/// Divergence classification of the completeness integral. There is no
/// numerical procedure that decides divergence, so the honest outputs are
/// `Divergent` (integrand bounded below by a non-decreasing positive envelope
/// near the right endpoint) and `Inconclusive` (everything else). The
/// classifier never claims convergence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Divergent,
    Inconclusive,
}

/// Value and tail behaviour of `∫₀^{R} √(f′(r²)+r²f″(r²)) dr`.
///
/// The JSON shape is fixed as `{value, classification}`; the endpoint and
/// the fitted tail slope are programmatic extras and stay out of reports.
#[derive(Debug, Clone, Serialize)]
pub struct CompletenessQuadrature {
    #[serde(skip)]
    pub r_max: f64,
    #[serde(rename = "value")]
    pub integral: f64,
    /// Least-squares slope of `ln(integrand)` over the last 20% of the range
    /// (positive: growing tail; ~0: flat tail; negative: decaying tail).
    #[serde(skip)]
    pub tail_growth: f64,
    pub classification: Classification,
}

/// Margins, verdicts, and completeness data for one potential on one grid.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub potential: String,
    pub grid: Vec<f64>,
    pub margins: Margins,
    pub verdicts: Verdicts,
    pub completeness: CompletenessQuadrature,
}

impl ConditionReport {
    /// Overall verdict: all four pointwise conditions pass and the
    /// completeness integral classifies as divergent.
    pub fn pass(&self) -> bool {
        self.verdicts.all() && self.completeness.classification == Classification::Divergent
    }
}

/// Default radius grid: `count` logarithmically spaced points on
/// `(1e-3, r_max]`, the last one exactly `r_max`.
pub fn default_grid(r_max: f64, count: usize) -> Vec<f64> {
    assert!(r_max > 1e-3 && count >= 2);
    let lo = 1e-3_f64.ln();
    let hi = r_max.ln();
    (1..=count)
        .map(|i| {
            if i == count {
                r_max
            } else {
                (lo + (hi - lo) * i as f64 / count as f64).exp()
            }
        })
        .collect()
}

/// The four pointwise margins (a), (c), (d), (e) at a single radius.
///
/// Returns `[a, c, d, e]`; margin (e) is NaN when `u ≤ 0` at the point.
pub fn margins_at(p: &RadialPotential, r: f64) -> Result<[f64; 4]> {
    let x = r * r;
    let f = p.jet(x)?;
    if f.v1 == 0.0 {
        return Err(Error::Singularity { r });
    }
    let a = f.v1 + x * f.v2;
    let c = f.v2;
    let d = f.v2 + x * f.v3 - x * f.v2 * f.v2 / f.v1;

    // Margin (e): jets in r. x(r) = r² has jet (r², 2r, 2, 0, 0); the outer
    // derivative bundles of f′ and f″ are shifted slices of the f bundle
    // (exact through orders 3 and 2 respectively — more than the two orders
    // of ln u that the margin reads).
    let x_jet = Jet4::new(x, 2.0 * r, 2.0, 0.0, 0.0);
    let fp_r = Jet4::compose([f.v1, f.v2, f.v3, f.v4, 0.0], x_jet);
    let fs_r = Jet4::compose([f.v2, f.v3, f.v4, 0.0, 0.0], x_jet);
    let u_r = fp_r + jet_mul(x_jet, fs_r);
    let e = if u_r.v0 <= 0.0 {
        f64::NAN
    } else {
        let h = jet_elementary(JetFn::Ln, u_r).expect("u > 0 checked above");
        h.v1 / r + h.v2
    };
    Ok([a, c, d, e])
}

fn margin_pass(v: &[f64]) -> bool {
    v.iter().all(|&m| m.is_finite() && m > 0.0)
}

/// Evaluate all pointwise margins on a strictly increasing radius grid and
/// classify the completeness integral up to the last grid radius.
pub fn check_conditions(p: &RadialPotential, grid: &[f64]) -> Result<ConditionReport> {
    if grid.is_empty() {
        return Err(Error::Parse("empty radius grid".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) || grid[0] <= 0.0 {
        return Err(Error::Parse(
            "grid must be strictly increasing and positive".into(),
        ));
    }
    let rows: Result<Vec<[f64; 4]>> = grid.par_iter().map(|&r| margins_at(p, r)).collect();
    let rows = rows?;
    let margins = Margins {
        a: rows.iter().map(|m| m[0]).collect(),
        c: rows.iter().map(|m| m[1]).collect(),
        d: rows.iter().map(|m| m[2]).collect(),
        e: rows.iter().map(|m| m[3]).collect(),
    };
    let verdicts = Verdicts {
        a: margin_pass(&margins.a),
        c: margin_pass(&margins.c),
        d: margin_pass(&margins.d),
        e: margin_pass(&margins.e),
    };
    let completeness = completeness_integral(p, *grid.last().unwrap(), DEFAULT_PANELS)?;
    Ok(ConditionReport {
        potential: p.to_string(),
        grid: grid.to_vec(),
        margins,
        verdicts,
        completeness,
    })
}

/// The radial length element `√(f′(r²)+r²f″(r²))`, clamped to 0 where the
/// radicand is negative (possible for potentials that fail condition (a)).
fn radial_integrand(p: &RadialPotential, r: f64) -> f64 {
    match p.jet(r * r) {
        Ok(f) => (f.v1 + r * r * f.v2).max(0.0).sqrt(),
        Err(_) => f64::NAN,
    }
}

/// `∫₀^{r_max} √(f′+ρ²f″) dρ` with divergence classification.
pub fn completeness_integral(
    p: &RadialPotential,
    r_max: f64,
    n_panels: usize,
) -> Result<CompletenessQuadrature> {
    let sup = p.domain_sup().sqrt();
    if !(r_max > 0.0 && r_max < sup) {
        return Err(Error::Domain { x: r_max, sup });
    }
    let q = quad::integrate(
        |r| radial_integrand(p, r),
        0.0,
        r_max,
        QUAD_REL_TOL,
        n_panels,
    )?;

    // Tail inspection: 64 samples of the integrand over the last 20% of the
    // range. Divergent requires a strictly positive integrand there together
    // with a non-decreasing least-squares envelope of its logarithm.
    let lo = 0.8 * r_max;
    let n = 64;
    let mut min_val = f64::INFINITY;
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for i in 0..n {
        let r = lo + (r_max - lo) * i as f64 / (n - 1) as f64;
        let v = radial_integrand(p, r);
        min_val = min_val.min(v);
        if v > 0.0 {
            xs.push(r);
            ys.push(v.ln());
        }
    }
    let tail_growth = if xs.len() == n {
        least_squares_slope(&xs, &ys)
    } else {
        f64::NAN
    };
    let classification = if min_val > 0.0 && tail_growth >= -1e-9 {
        Classification::Divergent
    } else {
        Classification::Inconclusive
    };
    Ok(CompletenessQuadrature {
        r_max,
        integral: q.value,
        tail_growth,
        classification,
    })
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}

/// g-distance from the origin to any point of Euclidean radius `r` (the
/// metric is invariant under the unitary group, so the distance depends on
/// the radius alone): `∫₀^r √(f′(ρ²)+ρ²f″(ρ²)) dρ`.
pub fn radial_distance(p: &RadialPotential, r: f64) -> Result<f64> {
    let sup = p.domain_sup().sqrt();
    if !(0.0..sup).contains(&r) {
        return Err(Error::Domain { x: r, sup });
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    Ok(quad::integrate(
        |s| radial_integrand(p, s),
        0.0,
        r,
        QUAD_REL_TOL,
        DEFAULT_PANELS,
    )?
    .value)
}
