//! Error taxonomy shared by the analysis modules.
//!
//! Geodesic integration has its own error type ([`crate::geodesic::GeodesicError`])
//! because its failures carry the partial path that was computed before the
//! failure; everything else funnels through [`Error`].

use thiserror::Error;

/// Crate-wide error type for domain, linear-algebra, and estimator failures.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// An evaluation point left the admissible interval of the potential.
    #[error("domain error: x = {x} outside [0, {sup})")]
    Domain { x: f64, sup: f64 },

    /// f' vanished exactly at a grid point, so the margin of condition (d)
    /// (which divides by f') is undefined there.
    #[error("singularity: f'(r^2) = 0 at r = {r}")]
    Singularity { r: f64 },

    /// The induced metric stopped being positive definite.
    #[error("metric not positive definite: eigenvalue {eigenvalue}")]
    NotPositiveDefinite { eigenvalue: f64 },

    /// A curvature quantity was requested for the zero vector.
    #[error("zero vector has no associated curvature")]
    ZeroVector,

    /// The two real vectors do not span a 2-plane (numerically).
    #[error("degenerate plane: |X wedge Y|^2 <= 1e-12 relative to |X|^2 |Y|^2")]
    DegeneratePlane,

    /// Adaptive quadrature could not reach the requested relative tolerance.
    #[error(
        "quadrature failed to converge: best relative error {rel_error:.3e} after {panels} panels"
    )]
    Quadrature { rel_error: f64, panels: usize },

    /// An elementary jet function was evaluated outside its domain.
    #[error("jet domain error: {func} undefined at value {value}")]
    JetDomain { func: &'static str, value: f64 },

    /// A textual spec (potential string, space name, vector list) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// The sampled isometry check on a constructed geodesic failed: the
    /// parametrization is not distance-preserving at (t, s).
    #[error("not a geodesic: |t - s| = {expected} but d = {actual} at t = {t}, s = {s}")]
    NotAGeodesic {
        t: f64,
        s: f64,
        expected: f64,
        actual: f64,
    },

    /// Shooting failed to connect two points; carries the best length found
    /// and the endpoint miss of that best attempt.
    #[error(
        "distance estimate did not converge: best length {best}, endpoint residual {residual:.3e}"
    )]
    NoConvergence { best: f64, residual: f64 },

    /// Constants violate the required sign convention (both bounds negative).
    #[error("invalid constants: c = {c}, d = {d} (both must be strictly negative)")]
    BadConstants { c: f64, d: f64 },

    /// The operation needs an oracle (geodesic, ray, product factors) that
    /// this space does not provide.
    #[error("space {space:?} has no {oracle} oracle")]
    MissingOracle { space: String, oracle: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
