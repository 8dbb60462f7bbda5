//! Registry of concrete metric spaces for the coarse-geometry estimators:
//! the real line, segment, ray, Euclidean plane, the constant-curvature −4
//! disc, arclength-parametrized radial rays of potential surfaces, and
//! (recursive) two-factor products with an ℓ¹ or ℓ² combiner.
//!
//! Product distances are always composed from factor distances — nothing in
//! this module shoots geodesics. The −4 disc stores points in *polar*
//! geodesic coordinates `(s, θ)` (`s` = geodesic distance from the center),
//! because the Euclidean-coordinate model collapses at radius ≈ 19 where
//! `tanh s` rounds to 1; the polar distance formula
//!
//! ```text
//! cosh(2 d) = 1 + ε,   ε = 2 sinh²(s₁−s₂) + 2 sinh(2s₁) sinh(2s₂) sin²(Δθ/2)
//! ```
//!
//! stays accurate out to `s ≈ 350`. Geodesic *paths* in the disc are
//! assembled by the same side-angle-side trigonometry (see [`disc4_walk`]),
//! so they share that range.

use crate::conditions::radial_distance;
use crate::error::{Error, Result};
use crate::potential::RadialPotential;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A point of one of the registry spaces. Products nest.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpacePoint {
    /// A point of ℝ (line, segment, ray, surface-ray radial coordinate).
    Real(f64),
    /// A point of the Euclidean plane.
    Plane([f64; 2]),
    /// A point of the −4 disc in polar geodesic coordinates.
    Disc { s: f64, theta: f64 },
    /// A point of a two-factor product.
    Pair(Box<SpacePoint>, Box<SpacePoint>),
}

impl SpacePoint {
    fn real(&self) -> f64 {
        match self {
            SpacePoint::Real(x) => *x,
            other => panic!("expected a real-line point, got {other:?}"),
        }
    }
    fn plane(&self) -> [f64; 2] {
        match self {
            SpacePoint::Plane(p) => *p,
            other => panic!("expected a plane point, got {other:?}"),
        }
    }
    fn disc(&self) -> (f64, f64) {
        match self {
            SpacePoint::Disc { s, theta } => (*s, *theta),
            other => panic!("expected a disc point, got {other:?}"),
        }
    }
    fn pair(&self) -> (&SpacePoint, &SpacePoint) {
        match self {
            SpacePoint::Pair(a, b) => (a, b),
            other => panic!("expected a product point, got {other:?}"),
        }
    }
}

/// How a product composes factor distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Combiner {
    /// `d = d₁ + d₂` (exact).
    L1,
    /// `d = √(d₁² + d₂²)`.
    L2,
}

impl std::str::FromStr for Combiner {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l1" => Ok(Combiner::L1),
            "l2" => Ok(Combiner::L2),
            other => Err(Error::Parse(format!(
                "unknown combiner {other:?} (expected \"l1\" or \"l2\")"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
enum SpaceKind {
    Line,
    Segment,
    Ray,
    Plane,
    Disc4,
    /// The radial ray of a potential surface, carrying the Euclidean radial
    /// coordinate; distances are arclength differences via quadrature.
    SurfaceRay(RadialPotential),
    Product {
        a: Box<MetricSpace>,
        b: Box<MetricSpace>,
        combiner: Combiner,
    },
}

/// A named metric space with a distance oracle, a seeded sampler, and —
/// where the geometry provides them — geodesic and ray oracles.
#[derive(Debug, Clone)]
pub struct MetricSpace {
    pub name: String,
    kind: SpaceKind,
}

/// Stable −4 disc distance in polar geodesic coordinates.
fn disc4_distance(s1: f64, t1: f64, s2: f64, t2: f64) -> f64 {
    let ds = s1 - s2;
    let half_sin = (0.5 * (t1 - t2)).sin();
    let eps = 2.0 * ds.sinh() * ds.sinh()
        + 2.0 * (2.0 * s1).sinh() * (2.0 * s2).sinh() * half_sin * half_sin;
    if eps > 1e150 {
        // Asymptotic form; ε² would overflow below.
        return 0.5 * (eps.ln() + std::f64::consts::LN_2);
    }
    // ½ arccosh(1+ε) in the log form that is exact for small ε.
    0.5 * (eps + (eps * (eps + 2.0)).sqrt()).ln_1p()
}

/// The point at arclength `m` from `(s1,t1)` along the geodesic toward
/// `(s2,t2)` in the −4 disc, by hyperbolic trigonometry on the triangle
/// (center, start, walked point). Every intermediate quantity is a product
/// of `sinh` factors that are nonnegative by triangle inequalities, so the
/// construction has no cancellation and works at any radius (the Euclidean
/// disc model, by contrast, cannot represent points deeper than ~18:
/// `tanh` saturates).
fn disc4_walk(s1: f64, t1: f64, s2: f64, t2: f64, m: f64) -> (f64, f64) {
    if s1 == 0.0 {
        // Geodesics through the center are radial.
        return (m, t2);
    }
    let d = disc4_distance(s1, t1, s2, t2);
    // Angle α at the start point between the geodesics toward the center
    // and toward the target, from the law of cosines on (center, x, y):
    //   sin²(α/2) = sinh(s1+s2−d)·sinh(d+s2−s1) / (sinh 2s1 · sinh 2d).
    let half_alpha_sq = ((s1 + s2 - d).max(0.0).sinh() * (d + s2 - s1).max(0.0).sinh()
        / ((2.0 * s1).sinh() * (2.0 * d).sinh()))
    .clamp(0.0, 1.0);
    // Radial coordinate of the walked point, side-angle-side:
    //   cosh 2sp = cosh 2(s1−m) + 2 sinh 2s1 · sinh 2m · sin²(α/2).
    let eps =
        2.0 * (s1 - m).sinh().powi(2) + 2.0 * (2.0 * s1).sinh() * (2.0 * m).sinh() * half_alpha_sq;
    let sp = 0.5 * (eps + (eps * (eps + 2.0)).sqrt()).ln_1p();
    // Angular displacement at the center, law of cosines on (center, x, p):
    //   sin²(Δθ/2) = sinh(m+sp−s1)·sinh(m+s1−sp) / (sinh 2s1 · sinh 2sp).
    let den = (2.0 * s1).sinh() * (2.0 * sp).sinh();
    let dtheta = if den > 0.0 {
        let num = (m + sp - s1).max(0.0).sinh() * (m + s1 - sp).max(0.0).sinh();
        2.0 * (num / den).clamp(0.0, 1.0).sqrt().asin()
    } else {
        0.0 // walked (essentially) into the center; θ is immaterial there
    };
    // θ moves monotonically from t1 toward t2 (short way around).
    let target = (t2 - t1).rem_euclid(std::f64::consts::TAU);
    let signed = if target <= std::f64::consts::PI {
        dtheta
    } else {
        -dtheta
    };
    (sp, t1 + signed)
}

impl MetricSpace {
    pub fn line() -> Self {
        MetricSpace {
            name: "line".into(),
            kind: SpaceKind::Line,
        }
    }
    pub fn segment() -> Self {
        MetricSpace {
            name: "segment".into(),
            kind: SpaceKind::Segment,
        }
    }
    pub fn ray() -> Self {
        MetricSpace {
            name: "ray".into(),
            kind: SpaceKind::Ray,
        }
    }
    pub fn plane() -> Self {
        MetricSpace {
            name: "plane".into(),
            kind: SpaceKind::Plane,
        }
    }
    pub fn disc4() -> Self {
        MetricSpace {
            name: "disc4".into(),
            kind: SpaceKind::Disc4,
        }
    }
    pub fn surface_ray(p: RadialPotential) -> Self {
        MetricSpace {
            name: format!("surface-ray:{p}"),
            kind: SpaceKind::SurfaceRay(p),
        }
    }
    pub fn product(name: &str, a: MetricSpace, b: MetricSpace, combiner: Combiner) -> Self {
        MetricSpace {
            name: name.into(),
            kind: SpaceKind::Product {
                a: Box::new(a),
                b: Box::new(b),
                combiner,
            },
        }
    }
    pub fn product_rays(combiner: Combiner) -> Self {
        Self::product("product-rays", Self::ray(), Self::ray(), combiner)
    }
    pub fn product_discs(combiner: Combiner) -> Self {
        Self::product("product-discs", Self::disc4(), Self::disc4(), combiner)
    }

    /// Parse a registry space name, with an optional combiner override for
    /// the product spaces (defaults: `product-rays` is ℓ¹, `product-discs`
    /// is ℓ²).
    pub fn parse(name: &str, combiner: Option<Combiner>) -> Result<Self> {
        let space = match name {
            "line" => Self::line(),
            "segment" => Self::segment(),
            "ray" => Self::ray(),
            "plane" => Self::plane(),
            "disc4" => Self::disc4(),
            "product-rays" => Self::product_rays(combiner.unwrap_or(Combiner::L1)),
            "product-discs" => Self::product_discs(combiner.unwrap_or(Combiner::L2)),
            other => {
                return Err(Error::Parse(format!(
                    "unknown space {other:?} (expected line, segment, ray, plane, \
                     disc4, product-rays, or product-discs)"
                )))
            }
        };
        if combiner.is_some() && space.combiner().is_none() {
            return Err(Error::Parse(format!(
                "space {name:?} is not a product: a combiner does not apply"
            )));
        }
        Ok(space)
    }

    pub fn combiner(&self) -> Option<Combiner> {
        match &self.kind {
            SpaceKind::Product { combiner, .. } => Some(*combiner),
            _ => None,
        }
    }

    /// The two factor spaces, when this is a product.
    pub fn factors(&self) -> Option<(&MetricSpace, &MetricSpace)> {
        match &self.kind {
            SpaceKind::Product { a, b, .. } => Some((a, b)),
            _ => None,
        }
    }

    /// Distance between two points of this space.
    pub fn dist(&self, x: &SpacePoint, y: &SpacePoint) -> f64 {
        match &self.kind {
            SpaceKind::Line | SpaceKind::Segment | SpaceKind::Ray => (x.real() - y.real()).abs(),
            SpaceKind::Plane => {
                let (a, b) = (x.plane(), y.plane());
                let (dx, dy) = (a[0] - b[0], a[1] - b[1]);
                (dx * dx + dy * dy).sqrt()
            }
            SpaceKind::Disc4 => {
                let (s1, t1) = x.disc();
                let (s2, t2) = y.disc();
                disc4_distance(s1, t1, s2, t2)
            }
            SpaceKind::SurfaceRay(p) => {
                let da = radial_distance(p, x.real())
                    .expect("surface-ray point outside the potential's domain");
                let db = radial_distance(p, y.real())
                    .expect("surface-ray point outside the potential's domain");
                (da - db).abs()
            }
            SpaceKind::Product { a, b, combiner } => {
                let (xa, xb) = x.pair();
                let (ya, yb) = y.pair();
                let d1 = a.dist(xa, ya);
                let d2 = b.dist(xb, yb);
                match combiner {
                    Combiner::L1 => d1 + d2,
                    Combiner::L2 => (d1 * d1 + d2 * d2).sqrt(),
                }
            }
        }
    }

    /// Draw one point. The scale parameter bounds the region: coordinates in
    /// `[−scale, scale]` (line, plane), `[0, scale]` (segment, ray, surface
    /// ray), geodesic radius in `[0, scale]` (disc).
    pub fn sample(&self, scale: f64, rng: &mut ChaCha8Rng) -> SpacePoint {
        match &self.kind {
            SpaceKind::Line => SpacePoint::Real((2.0 * rng.random::<f64>() - 1.0) * scale),
            SpaceKind::Segment | SpaceKind::Ray => SpacePoint::Real(rng.random::<f64>() * scale),
            SpaceKind::Plane => SpacePoint::Plane([
                (2.0 * rng.random::<f64>() - 1.0) * scale,
                (2.0 * rng.random::<f64>() - 1.0) * scale,
            ]),
            SpaceKind::Disc4 => SpacePoint::Disc {
                s: rng.random::<f64>() * scale,
                theta: rng.random::<f64>() * std::f64::consts::TAU,
            },
            SpaceKind::SurfaceRay(_) => {
                let t = rng.random::<f64>() * scale;
                self.ray_point(t)
                    .expect("surface rays always have a ray oracle")
            }
            SpaceKind::Product { a, b, .. } => SpacePoint::Pair(
                Box::new(a.sample(scale, rng)),
                Box::new(b.sample(scale, rng)),
            ),
        }
    }

    /// Deterministic witness quadruples evaluated before any sampled ones.
    /// Product spaces contribute the corner quadruple
    /// `(0,0), (s,0), (0,s), (s,s)` whose four-point defect is the scale
    /// itself in the ℓ¹ ray product.
    pub fn anchor_quadruples(&self, scale: f64) -> Vec<[SpacePoint; 4]> {
        match &self.kind {
            SpaceKind::Product { a, b, .. } => {
                let (oa, ob) = (a.basepoint(), b.basepoint());
                let (ra, rb) = (a.ray_point(scale), b.ray_point(scale));
                match (oa, ob, ra, rb) {
                    (Some(oa), Some(ob), Some(ra), Some(rb)) => {
                        let pt = |x: &SpacePoint, y: &SpacePoint| {
                            SpacePoint::Pair(Box::new(x.clone()), Box::new(y.clone()))
                        };
                        vec![[pt(&oa, &ob), pt(&ra, &ob), pt(&oa, &rb), pt(&ra, &rb)]]
                    }
                    _ => vec![],
                }
            }
            _ => vec![],
        }
    }

    /// The distinguished basepoint, where one exists.
    pub fn basepoint(&self) -> Option<SpacePoint> {
        match &self.kind {
            SpaceKind::Line | SpaceKind::Segment | SpaceKind::Ray => Some(SpacePoint::Real(0.0)),
            SpaceKind::Plane => Some(SpacePoint::Plane([0.0, 0.0])),
            SpaceKind::Disc4 => Some(SpacePoint::Disc { s: 0.0, theta: 0.0 }),
            SpaceKind::SurfaceRay(_) => Some(SpacePoint::Real(0.0)),
            SpaceKind::Product { a, b, .. } => Some(SpacePoint::Pair(
                Box::new(a.basepoint()?),
                Box::new(b.basepoint()?),
            )),
        }
    }

    /// The point at arclength `t ≥ 0` along the canonical unit-speed
    /// geodesic ray from the basepoint; `None` for spaces without one
    /// (bounded segment, products).
    pub fn ray_point(&self, t: f64) -> Option<SpacePoint> {
        match &self.kind {
            SpaceKind::Line | SpaceKind::Ray => Some(SpacePoint::Real(t)),
            SpaceKind::Plane => Some(SpacePoint::Plane([t, 0.0])),
            SpaceKind::Disc4 => Some(SpacePoint::Disc { s: t, theta: 0.0 }),
            SpaceKind::SurfaceRay(p) => Some(SpacePoint::Real(invert_radial(p, t))),
            SpaceKind::Segment | SpaceKind::Product { .. } => None,
        }
    }

    /// The point at fraction `u ∈ [0,1]` along a geodesic from `x` to `y`,
    /// parametrized proportionally to arclength. `None` where no geodesic
    /// oracle exists.
    pub fn geodesic_point(&self, x: &SpacePoint, y: &SpacePoint, u: f64) -> Option<SpacePoint> {
        match &self.kind {
            SpaceKind::Line | SpaceKind::Segment | SpaceKind::Ray => {
                Some(SpacePoint::Real(x.real() + u * (y.real() - x.real())))
            }
            SpaceKind::Plane => {
                let (a, b) = (x.plane(), y.plane());
                Some(SpacePoint::Plane([
                    a[0] + u * (b[0] - a[0]),
                    a[1] + u * (b[1] - a[1]),
                ]))
            }
            SpaceKind::Disc4 => {
                if u <= 0.0 {
                    return Some(x.clone());
                }
                if u >= 1.0 {
                    return Some(y.clone());
                }
                let (s1, t1) = x.disc();
                let (s2, t2) = y.disc();
                let d = disc4_distance(s1, t1, s2, t2);
                if d == 0.0 {
                    return Some(x.clone());
                }
                // Walk from the *nearer* endpoint: absolute angles can only
                // be stored to ~1 ulp, which at depth s is a metric error of
                // order e^{2s}·ulp, so points near an endpoint must inherit
                // its angle (the relative displacement underflows to zero)
                // rather than re-derive it from the far side.
                let (s, theta) = if u <= 0.5 {
                    disc4_walk(s1, t1, s2, t2, u * d)
                } else {
                    disc4_walk(s2, t2, s1, t1, (1.0 - u) * d)
                };
                Some(SpacePoint::Disc { s, theta })
            }
            SpaceKind::SurfaceRay(p) => {
                let sa = radial_distance(p, x.real()).ok()?;
                let sb = radial_distance(p, y.real()).ok()?;
                Some(SpacePoint::Real(invert_radial(p, sa + u * (sb - sa))))
            }
            SpaceKind::Product { a, b, .. } => {
                let (xa, xb) = x.pair();
                let (ya, yb) = y.pair();
                Some(SpacePoint::Pair(
                    Box::new(a.geodesic_point(xa, ya, u)?),
                    Box::new(b.geodesic_point(xb, yb, u)?),
                ))
            }
        }
    }
}

/// Invert the radial arclength function: the Euclidean radial coordinate at
/// arclength `t` from the origin, by monotone bisection against the same
/// quadrature that measures distances (so the roundtrip is self-consistent
/// to ~1e-12 regardless of the quadrature's own absolute accuracy).
fn invert_radial(p: &RadialPotential, t: f64) -> f64 {
    assert!(t >= 0.0 && t.is_finite());
    if t == 0.0 {
        return 0.0;
    }
    let sup = p.domain_sup();
    let cap = if sup.is_finite() {
        sup.sqrt() * (1.0 - 1e-12)
    } else {
        f64::INFINITY
    };
    let mut hi = 1.0_f64.min(cap);
    let dist = |r: f64| radial_distance(p, r).expect("radial bracket left the domain");
    while dist(hi) < t {
        let next = (hi * 2.0).min(cap);
        if next == hi {
            break; // boundary has finite total length below t: return the cap
        }
        hi = next;
    }
    let mut lo = 0.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if dist(mid) < t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A distance-scaled view of another space: `dist = factor × inner`.
/// Samplers, rays, and geodesics pass through unchanged, so estimates on the
/// scaled space see exactly the same point sets.
#[derive(Debug, Clone)]
pub struct ScaledMetric {
    pub factor: f64,
    pub inner: MetricSpace,
}

impl ScaledMetric {
    pub fn new(factor: f64, inner: MetricSpace) -> Self {
        assert!(factor > 0.0);
        ScaledMetric { factor, inner }
    }
    pub fn dist(&self, x: &SpacePoint, y: &SpacePoint) -> f64 {
        self.factor * self.inner.dist(x, y)
    }
}
