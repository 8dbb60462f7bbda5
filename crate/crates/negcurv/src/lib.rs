//! Numerical laboratory for negatively curved radial Kähler metrics on ℂⁿ
//! and the coarse geometry of metric products.
//!
//! The crate is organized as a pipeline of small labs:
//!
//! * [`jet`] — fourth-order scalar Taylor jets with Leibniz products and
//!   composition; the differentiation engine everything else leans on.
//! * [`potential`] — the registry of radial potentials `f(x)`, `x = |z|²`
//!   (`linear`, `exp`, `log_ball`, `fubini`, `poly:c₁,…`), each exposing an
//!   exact order-4 jet.
//! * [`conditions`] — pointwise sufficient-condition margins (a), (c), (d),
//!   (e) for negative curvature of the induced metric, and the completeness
//!   (b) integral with a divergent/inconclusive classifier.
//! * [`quad`] — deterministic adaptive Gauss–Kronrod quadrature backing the
//!   radial integrals.
//! * [`kahler`] — the analytic complex route: metric, inverse, curvature
//!   tensor `R_{ij̄kl̄}`, holomorphic sectional/bisectional curvature, Ricci.
//! * [`realified`] — the independent real route: the same metric viewed on
//!   ℝ²ⁿ, differentiated by finite differences to real sectional curvature.
//!   Agreement of the two routes is a structural cross-check, so neither
//!   ever calls into the other's curvature pipeline.
//! * [`geodesic`] — RK4 geodesic integration (closed-form Christoffels) and
//!   two-point distance by shooting.
//! * [`spaces`] / [`hyperbolicity`] — model metric spaces (line, ray, −4
//!   disc, products) with four-point δ estimation, thin-triangle defects,
//!   the σ_n non-hyperbolicity witness, bi-Lipschitz ratios, and the
//!   distance-contraction / product-inequality checkers.
//! * [`report`] — seeded curvature-range scans combining both routes.
//!
//! Determinism contract: every sampled estimator takes a single `u64` seed
//! and derives per-work-item RNG streams ([`rng::stream_rng`]), reduces in
//! fixed order, and therefore produces byte-identical reports across runs
//! and thread counts.

pub mod conditions;
pub mod error;
pub mod geodesic;
pub mod hyperbolicity;
pub mod jet;
pub mod kahler;
pub mod potential;
pub mod quad;
pub mod realified;
pub mod report;
pub mod rng;
pub mod spaces;

/// Re-export of the complex-number crate used in the public API
/// ([`kahler::PointCn`], curvature tensors), so downstream crates can name
/// the exact same types without a separate version pin.
pub use num_complex;

pub use conditions::{
    check_conditions, completeness_integral, default_grid, margins_at, radial_distance,
    Classification, CompletenessQuadrature, ConditionReport,
};
pub use error::{Error, Result};
pub use geodesic::{
    distance_estimate, integrate_geodesic, metric_speed, DistanceEstimate, GeodesicError,
    GeodesicPath,
};
pub use hyperbolicity::{
    bilipschitz_ratio, four_point_delta, four_point_delta_with, gromov_product, key_lemma_check,
    lemma_not_triangle, schwarz_bound_check, thin_triangle_defect, triangle, HyperbolicityReport,
    InequalityReport, PairViolation, SchwarzConstants, TriangleSpec,
};
pub use jet::{jet_elementary, jet_mul, Jet4, JetFn};
pub use kahler::{
    curvature_tensor_at, holomorphic_bisectional, holomorphic_sectional, metric_at, ricci_at,
    ricci_from_trace, HermitianMetric, KahlerCurvatureTensor, PointCn, RicciData,
};
pub use potential::RadialPotential;
pub use realified::{apply_j, real_curvature_at, real_metric, real_sectional, RealCurvature};
pub use report::{curvature_range_report, CurvatureReport, CurvatureRow};
pub use spaces::{Combiner, MetricSpace, ScaledMetric, SpacePoint};
