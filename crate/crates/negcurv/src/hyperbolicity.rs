//! Coarse metric geometry: Gromov products, four-point δ estimation,
//! thin-triangle defects (including the σ_n product triangle that witnesses
//! non-hyperbolicity), bi-Lipschitz ratio certification, and the
//! Schwarz-contraction / product-inequality checkers.
//!
//! All estimators are sampled sups, hence *lower bounds* of the true
//! constants: "not hyperbolic" claims (δ grows with scale) are certified by
//! witnesses, while "hyperbolic" claims (δ stays bounded) are asserted only
//! on spaces with closed-form distances and controlled sampling density.
//! Parallel evaluation reduces in fixed order so every report is
//! byte-reproducible per seed independently of thread count.

use crate::error::{Error, Result};
use crate::rng::stream_rng;
use crate::spaces::{Combiner, MetricSpace, SpacePoint};
use rayon::prelude::*;
use serde::Serialize;

/// The Gromov product `(x|y)_w = (d(w,x) + d(w,y) − d(x,y)) / 2`.
pub fn gromov_product(s: &MetricSpace, w: &SpacePoint, x: &SpacePoint, y: &SpacePoint) -> f64 {
    0.5 * (s.dist(w, x) + s.dist(w, y) - s.dist(x, y))
}

/// Result of a four-point δ estimation run.
#[derive(Debug, Clone, Serialize)]
pub struct HyperbolicityReport {
    pub space: String,
    pub combiner: Option<Combiner>,
    pub scale: f64,
    pub n_quadruples: usize,
    pub seed: u64,
    pub delta_estimate: f64,
    /// The first quadruple (in evaluation order: anchors, then samples)
    /// attaining the estimate, as `(w, x, y, z)`.
    pub worst_quadruple: [SpacePoint; 4],
}

/// Four-point defect of one quadruple `(w, x, y, z)`:
/// `min((x|z)_w, (y|z)_w) − (x|y)_w` (not yet clamped at 0).
fn four_point_defect(
    dist: &(impl Fn(&SpacePoint, &SpacePoint) -> f64 + Sync),
    q: &[SpacePoint; 4],
) -> f64 {
    let (w, x, y, z) = (&q[0], &q[1], &q[2], &q[3]);
    let gp = |a: &SpacePoint, b: &SpacePoint| 0.5 * (dist(w, a) + dist(w, b) - dist(a, b));
    gp(x, z).min(gp(y, z)) - gp(x, y)
}

/// Estimate δ as the sup of the four-point defect over deterministic anchor
/// quadruples followed by `n_quadruples` seeded ones (quadruple `i` draws
/// from stream `i`, so samples nest across sizes), clamped at 0. The
/// reported worst quadruple is the first attaining the sup.
pub fn four_point_delta(
    space: &MetricSpace,
    scale: f64,
    n_quadruples: usize,
    seed: u64,
) -> HyperbolicityReport {
    four_point_delta_with(space, |x, y| space.dist(x, y), scale, n_quadruples, seed)
}

/// As [`four_point_delta`], but measuring with a caller-supplied distance on
/// the same point set (used to check scaling covariance and bi-Lipschitz
/// perturbations without re-sampling).
pub fn four_point_delta_with(
    space: &MetricSpace,
    dist: impl Fn(&SpacePoint, &SpacePoint) -> f64 + Sync,
    scale: f64,
    n_quadruples: usize,
    seed: u64,
) -> HyperbolicityReport {
    assert!(n_quadruples >= 1, "need at least one quadruple");
    let mut quadruples = space.anchor_quadruples(scale);
    let sampled: Vec<[SpacePoint; 4]> = (0..n_quadruples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            [
                space.sample(scale, &mut rng),
                space.sample(scale, &mut rng),
                space.sample(scale, &mut rng),
                space.sample(scale, &mut rng),
            ]
        })
        .collect();
    quadruples.extend(sampled);

    let defects: Vec<f64> = quadruples
        .par_iter()
        .map(|q| four_point_defect(&dist, q))
        .collect();
    let mut worst = 0usize;
    for (i, &d) in defects.iter().enumerate() {
        if d > defects[worst] {
            worst = i;
        }
    }
    HyperbolicityReport {
        space: space.name.clone(),
        combiner: space.combiner(),
        scale,
        n_quadruples,
        seed,
        delta_estimate: defects[worst].max(0.0),
        worst_quadruple: quadruples[worst].clone(),
    }
}

/// A geodesic triangle with densely sampled sides. Side `k` runs from
/// `vertices[k]` to `vertices[(k+1) % 3]`; consecutive sides share their
/// endpoint samples exactly.
#[derive(Debug, Clone, Serialize)]
pub struct TriangleSpec {
    pub vertices: [SpacePoint; 3],
    pub sides: [Vec<SpacePoint>; 3],
    pub labels: [String; 3],
}

/// Sample the geodesic triangle on three vertices of a space with a
/// geodesic oracle.
pub fn triangle(
    space: &MetricSpace,
    a: &SpacePoint,
    b: &SpacePoint,
    c: &SpacePoint,
    samples_per_side: usize,
) -> Result<TriangleSpec> {
    assert!(samples_per_side >= 2);
    let side = |from: &SpacePoint, to: &SpacePoint| -> Result<Vec<SpacePoint>> {
        (0..samples_per_side)
            .map(|i| {
                let u = i as f64 / (samples_per_side - 1) as f64;
                space
                    .geodesic_point(from, to, u)
                    .ok_or(Error::MissingOracle {
                        space: space.name.clone(),
                        oracle: "geodesic",
                    })
            })
            .collect()
    };
    Ok(TriangleSpec {
        vertices: [a.clone(), b.clone(), c.clone()],
        sides: [side(a, b)?, side(b, c)?, side(c, a)?],
        labels: ["AB".into(), "BC".into(), "CA".into()],
    })
}

/// Max over sampled points of each side of the min distance to the sampled
/// union of the other two sides — a lower bound for the triangle's true
/// thinness constant. `samples_per_side` subsamples the stored sides by
/// striding when they are denser than requested.
pub fn thin_triangle_defect(space: &MetricSpace, t: &TriangleSpec, samples_per_side: usize) -> f64 {
    assert!(samples_per_side >= 2);
    let strided: Vec<Vec<&SpacePoint>> = t
        .sides
        .iter()
        .map(|side| {
            let m = side.len();
            let k = samples_per_side.min(m);
            (0..k).map(|i| &side[(i * (m - 1)) / (k - 1)]).collect()
        })
        .collect();
    let mut defect = 0.0_f64;
    for s in 0..3 {
        let others: Vec<&SpacePoint> = strided[(s + 1) % 3]
            .iter()
            .chain(strided[(s + 2) % 3].iter())
            .copied()
            .collect();
        let side_max: f64 = strided[s]
            .par_iter()
            .map(|p| {
                others
                    .iter()
                    .map(|q| space.dist(p, q))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect::<Vec<f64>>()
            .into_iter()
            .fold(0.0, f64::max);
        defect = defect.max(side_max);
    }
    defect
}

/// The σ_n triangle in the ℓ¹ product of two geodesic rays: sides
///
/// * `σ_n(t) = (γ₁(t), γ₂(n))` for `t ≤ n`, `(γ₁(n), γ₂(2n−t))` for `t ≥ n`
///   — a geodesic from `(γ₁(0), γ₂(n))` to `(γ₁(n), γ₂(0))`,
/// * `S₁ = γ₁([0,n]) × {γ₂(0)}` and `S₂ = {γ₁(0)} × γ₂([0,n])`.
///
/// Its midpoint `σ_n(n) = (γ₁(n), γ₂(n))` sits at distance `n` from
/// `S₁ ∪ S₂`, so the thinness defect grows linearly with `n` — the product
/// is not hyperbolic. Before returning, σ_n is *verified* to be a geodesic
/// by checking `d(σ(t), σ(s)) = |t−s|` to 1e-9 on all sample pairs; a
/// failure (broken factor ray) is [`Error::NotAGeodesic`].
///
/// Returns the triangle and the ℓ¹ product space it lives in.
pub fn lemma_not_triangle(
    n: f64,
    x1: &MetricSpace,
    x2: &MetricSpace,
    samples_per_side: usize,
) -> Result<(TriangleSpec, MetricSpace)> {
    assert!(n > 0.0 && n.is_finite());
    assert!(samples_per_side >= 3);
    let ray = |x: &MetricSpace, t: f64| -> Result<SpacePoint> {
        x.ray_point(t).ok_or(Error::MissingOracle {
            space: x.name.clone(),
            oracle: "ray",
        })
    };
    let product = MetricSpace::product("product-rays", x1.clone(), x2.clone(), Combiner::L1);
    let pt = |a: SpacePoint, b: SpacePoint| SpacePoint::Pair(Box::new(a), Box::new(b));

    let k = samples_per_side;
    let sigma_at = |t: f64| -> Result<SpacePoint> {
        if t <= n {
            Ok(pt(ray(x1, t)?, ray(x2, n)?))
        } else {
            Ok(pt(ray(x1, n)?, ray(x2, 2.0 * n - t)?))
        }
    };
    let mut sigma_times = Vec::with_capacity(k);
    let mut sigma = Vec::with_capacity(k);
    for j in 0..k {
        let t = 2.0 * n * (j as f64 / (k - 1) as f64);
        sigma_times.push(t);
        sigma.push(sigma_at(t)?);
    }
    // Sampled isometry check: a geodesic is an isometric embedding of the
    // interval, so every sample pair must satisfy d = |t−s|.
    for j in 0..k {
        for l in (j + 1)..k {
            let expected = sigma_times[l] - sigma_times[j];
            let actual = product.dist(&sigma[j], &sigma[l]);
            if (actual - expected).abs() > 1e-9 {
                return Err(Error::NotAGeodesic {
                    t: sigma_times[j],
                    s: sigma_times[l],
                    expected,
                    actual,
                });
            }
        }
    }

    let mut s1 = Vec::with_capacity(k); // C = (γ₁(n), γ₂(0)) → O = (γ₁(0), γ₂(0))
    let mut s2 = Vec::with_capacity(k); // O → B = (γ₁(0), γ₂(n))
    for j in 0..k {
        let u = j as f64 / (k - 1) as f64;
        s1.push(pt(ray(x1, n * (1.0 - u))?, ray(x2, 0.0)?));
        s2.push(pt(ray(x1, 0.0)?, ray(x2, n * u)?));
    }
    let b = sigma[0].clone();
    let c = sigma[k - 1].clone();
    let o = s2[0].clone();
    Ok((
        TriangleSpec {
            vertices: [b, c, o],
            sides: [sigma, s1, s2],
            labels: ["sigma_n".into(), "S1".into(), "S2".into()],
        },
        product,
    ))
}

/// Sampled range of `d2/d1` over seeded point pairs (pairs with `d1 = 0`
/// are skipped): returns `(inf, sup)`. The certified bi-Lipschitz constant
/// for the sample is `max(sup, 1/inf)`.
pub fn bilipschitz_ratio(
    sampler: &MetricSpace,
    scale: f64,
    d1: impl Fn(&SpacePoint, &SpacePoint) -> f64 + Sync,
    d2: impl Fn(&SpacePoint, &SpacePoint) -> f64 + Sync,
    pairs: usize,
    seed: u64,
) -> (f64, f64) {
    assert!(pairs >= 1);
    let ratios: Vec<Option<f64>> = (0..pairs)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            let p = sampler.sample(scale, &mut rng);
            let q = sampler.sample(scale, &mut rng);
            let a = d1(&p, &q);
            if a == 0.0 {
                None
            } else {
                Some(d2(&p, &q) / a)
            }
        })
        .collect();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for r in ratios.into_iter().flatten() {
        lo = lo.min(r);
        hi = hi.max(r);
    }
    (lo, hi)
}

/// The constants of the distance-contraction bound: `c` an upper bound for
/// the target's holomorphic sectional curvature, `d` a lower bound for the
/// domain's Ricci curvature — both strictly negative — and the resulting
/// Lipschitz constant `L = √(d/c)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SchwarzConstants {
    pub c: f64,
    pub d: f64,
    pub l: f64,
}

impl SchwarzConstants {
    /// Both curvature bounds must be strictly negative; nonnegative (or NaN)
    /// inputs are rejected rather than silently reinterpreted through an
    /// absolute value.
    pub fn new(c: f64, d: f64) -> Result<Self> {
        if c.is_nan() || d.is_nan() || c >= 0.0 || d >= 0.0 {
            return Err(Error::BadConstants { c, d });
        }
        Ok(SchwarzConstants {
            c,
            d,
            l: (d / c).sqrt(),
        })
    }

    /// Replace the derived Lipschitz constant — a corruption knob for
    /// negative-control runs; the sign validation still applies to `c`, `d`.
    pub fn with_l(mut self, l: f64) -> Self {
        self.l = l;
        self
    }
}

/// One pair that violates a checked inequality, with its slack.
#[derive(Debug, Clone, Serialize)]
pub struct PairViolation {
    /// Index of the sampled pair (its RNG stream).
    pub index: usize,
    /// Which inequality (1 or 2; Schwarz checks have only 1).
    pub inequality: u8,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

/// Report of a sampled inequality check. `max_slack_*` is the largest
/// observed `lhs − rhs` (relative for the product inequalities, absolute for
/// the Schwarz bound); negative values mean the inequality held with room.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub pairs: usize,
    pub violations: Vec<PairViolation>,
    pub max_slack_1: f64,
    /// `None` for single-inequality (Schwarz) checks.
    pub max_slack_2: Option<f64>,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the distance-contraction bound
/// `d_target(map p, map q) ≤ L · d_domain(p, q) + 1e-9`
/// on seeded pairs of the domain. Violations are returned as data, not
/// errors; `max_slack_1` is the largest absolute slack `lhs − rhs`.
pub fn schwarz_bound_check(
    map: impl Fn(&SpacePoint) -> SpacePoint + Sync,
    domain: &MetricSpace,
    target_dist: impl Fn(&SpacePoint, &SpacePoint) -> f64 + Sync,
    constants: &SchwarzConstants,
    scale: f64,
    pairs: usize,
    seed: u64,
) -> InequalityReport {
    assert!(pairs >= 1);
    let rows: Vec<(f64, f64)> = (0..pairs)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            let p = domain.sample(scale, &mut rng);
            let q = domain.sample(scale, &mut rng);
            let lhs = target_dist(&map(&p), &map(&q));
            let rhs = constants.l * domain.dist(&p, &q);
            (lhs, rhs)
        })
        .collect();
    let mut violations = Vec::new();
    let mut max_slack = f64::NEG_INFINITY;
    for (i, &(lhs, rhs)) in rows.iter().enumerate() {
        let slack = lhs - rhs;
        max_slack = max_slack.max(slack);
        if lhs > rhs + 1e-9 {
            violations.push(PairViolation {
                index: i,
                inequality: 1,
                lhs,
                rhs,
                slack,
            });
        }
    }
    InequalityReport {
        pairs,
        violations,
        max_slack_1: max_slack,
        max_slack_2: None,
    }
}

/// Relative slack of `lhs ≤ rhs`, with the degenerate `0 ≤ 0` pair scoring 0.
fn relative_slack(lhs: f64, rhs: f64) -> f64 {
    if rhs == 0.0 {
        if lhs.abs() <= 1e-15 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (lhs - rhs) / rhs
    }
}

/// Check the two product inequalities on seeded pairs of a two-factor
/// product space with factor distances `d₁, d₂` and product distance `d`:
///
/// 1. `d₁(p₁,q₁) + d₂(p₂,q₂) ≤ 2L² · d(p,q)`
/// 2. `d(p,q) ≤ L · (d₁(p₁,q₁) + d₂(p₂,q₂))`
///
/// Reports the maximal *relative* slack of each; a pair violates when its
/// relative slack exceeds 1e-9.
pub fn key_lemma_check(
    product: &MetricSpace,
    constants: &SchwarzConstants,
    scale: f64,
    pairs: usize,
    seed: u64,
) -> Result<InequalityReport> {
    assert!(pairs >= 1);
    let Some((fa, fb)) = product.factors() else {
        return Err(Error::MissingOracle {
            space: product.name.clone(),
            oracle: "product factors",
        });
    };
    let rows: Vec<(f64, f64)> = (0..pairs)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            let p = product.sample(scale, &mut rng);
            let q = product.sample(scale, &mut rng);
            let d = product.dist(&p, &q);
            let factor_sum = match (&p, &q) {
                (SpacePoint::Pair(p1, p2), SpacePoint::Pair(q1, q2)) => {
                    fa.dist(p1, q1) + fb.dist(p2, q2)
                }
                _ => unreachable!("product samples are pairs"),
            };
            (factor_sum, d)
        })
        .collect();
    let two_l_sq = 2.0 * constants.l * constants.l;
    let mut violations = Vec::new();
    let mut max_slack_1 = f64::NEG_INFINITY;
    let mut max_slack_2 = f64::NEG_INFINITY;
    for (i, &(factor_sum, d)) in rows.iter().enumerate() {
        let s1 = relative_slack(factor_sum, two_l_sq * d);
        let s2 = relative_slack(d, constants.l * factor_sum);
        max_slack_1 = max_slack_1.max(s1);
        max_slack_2 = max_slack_2.max(s2);
        if s1 > 1e-9 {
            violations.push(PairViolation {
                index: i,
                inequality: 1,
                lhs: factor_sum,
                rhs: two_l_sq * d,
                slack: s1,
            });
        }
        if s2 > 1e-9 {
            violations.push(PairViolation {
                index: i,
                inequality: 2,
                lhs: d,
                rhs: constants.l * factor_sum,
                slack: s2,
            });
        }
    }
    Ok(InequalityReport {
        pairs,
        violations,
        max_slack_1,
        max_slack_2: Some(max_slack_2),
    })
}
