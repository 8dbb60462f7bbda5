//! Adaptive quadrature and the completeness/radial-distance integrals
//! against high-precision goldens and closed forms.

// Golden values keep every digit their oracle printed, even past f64
// precision, so a reader can diff them against the oracle output verbatim.
#![allow(clippy::excessive_precision)]

use approx::assert_relative_eq;
use negcurv::conditions::DEFAULT_PANELS;
use negcurv::quad::integrate;
use negcurv::{completeness_integral, radial_distance, Classification, Error, RadialPotential};

/// The 7-point Gauss rule inside the Kronrod pair is exact through degree 13,
/// so a single panel gives a zero error indicator on x¹³ and the adaptive
/// driver must not refine at all. This pins the rule constants.
#[test]
fn single_panel_is_exact_on_degree_13() {
    let q = integrate(|x| x.powi(13), 0.0, 1.0, 1e-12, 1).unwrap();
    assert_relative_eq!(q.value, 1.0 / 14.0, max_relative = 1e-14);
    assert_eq!(q.panels, 1);
}

#[test]
fn smooth_integral_golden() {
    let q = integrate(f64::sin, 0.0, std::f64::consts::PI, 1e-12, 4).unwrap();
    assert_relative_eq!(q.value, 2.0, max_relative = 1e-12);
}

#[test]
fn adaptive_meets_requested_tolerance() {
    // A sharp but integrable peak forces refinement.
    let q = integrate(|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-9, 2).unwrap();
    let exact = 2.0 * (1.0 / 1e-2) * (1.0_f64 / 1e-2).atan(); // 2·arctan(100)/0.01
    assert_relative_eq!(q.value, exact, max_relative = 1e-9);
    assert!(q.abs_error <= 1e-9 * q.value.abs() * 1.01);
    assert!(q.panels > 2);
}

#[test]
fn non_integrable_singularity_exhausts_budget_honestly() {
    // ∫₀¹ dx/x diverges; nodes never touch 0 so every refinement just finds
    // more mass. The driver must report failure, not a number.
    assert!(matches!(
        integrate(|x| 1.0 / x, 0.0, 1.0, 1e-9, 8),
        Err(Error::Quadrature { .. })
    ));
}

#[test]
fn completeness_goldens() {
    // 30-digit independent quadrature values.
    let c4 = completeness_integral(&RadialPotential::Exp, 4.0, DEFAULT_PANELS).unwrap();
    assert_relative_eq!(c4.integral, 3088.58508231026199, max_relative = 1e-9);
    assert_eq!(c4.classification, Classification::Divergent);
    assert!(c4.integral > 1e3);

    let c5 = completeness_integral(&RadialPotential::Exp, 5.0, DEFAULT_PANELS).unwrap();
    assert_relative_eq!(c5.integral, 274164.015447247614, max_relative = 1e-9);
    assert_eq!(c5.classification, Classification::Divergent);
}

#[test]
fn log_ball_completeness_matches_inverse_tanh() {
    // Radial integrand 1/(1−r²) integrates to atanh in closed form.
    let c = completeness_integral(&RadialPotential::LogBall, 0.999, DEFAULT_PANELS).unwrap();
    assert!((c.integral - 0.999_f64.atanh()).abs() < 1e-6);
    assert_eq!(c.classification, Classification::Divergent);
}

#[test]
fn fubini_completeness_is_inconclusive() {
    // Radial integrand 1/(1+r²) integrates to arctan and decays, so the
    // classifier must not claim divergence.
    let c = completeness_integral(&RadialPotential::Fubini, 4.0, DEFAULT_PANELS).unwrap();
    assert_relative_eq!(c.integral, 4.0_f64.atan(), max_relative = 1e-9);
    assert_eq!(c.classification, Classification::Inconclusive);
}

#[test]
fn linear_completeness_is_exact_and_divergent() {
    // Integrand ≡ 1: flat tails count as non-decaying.
    let c = completeness_integral(&RadialPotential::Linear, 10.0, DEFAULT_PANELS).unwrap();
    assert_relative_eq!(c.integral, 10.0, max_relative = 1e-12);
    assert_eq!(c.classification, Classification::Divergent);
}

#[test]
fn radial_distance_goldens() {
    let p = RadialPotential::Exp;
    assert_relative_eq!(
        radial_distance(&p, 1.0).unwrap(),
        1.39492583654066066,
        max_relative = 1e-9
    );
    assert_relative_eq!(
        radial_distance(&p, 2.0).unwrap(),
        8.15736905572175771,
        max_relative = 1e-9
    );
    assert_relative_eq!(
        radial_distance(&RadialPotential::LogBall, 0.5).unwrap(),
        0.5_f64.atanh(),
        max_relative = 1e-9
    );
    let poly: RadialPotential = "poly:1,0.5".parse().unwrap();
    assert_relative_eq!(
        radial_distance(&poly, 1.3).unwrap(),
        1.84435529265950073,
        max_relative = 1e-9
    );
    assert_relative_eq!(
        radial_distance(&RadialPotential::Linear, 7.25).unwrap(),
        7.25,
        max_relative = 1e-12
    );
    assert_eq!(radial_distance(&p, 0.0).unwrap(), 0.0);
}

#[test]
fn integral_is_additive_over_subintervals() {
    let f = |r: f64| {
        let x = r * r;
        (x.exp() * (1.0 + x)).sqrt()
    };
    let whole = integrate(f, 0.0, 2.0, 1e-10, 8).unwrap().value;
    let left = integrate(f, 0.0, 1.0, 1e-10, 8).unwrap().value;
    let right = integrate(f, 1.0, 2.0, 1e-10, 8).unwrap().value;
    assert_relative_eq!(whole, left + right, max_relative = 1e-9);
}

/// The completeness integral and the radial distance run the identical
/// quadrature, so at the same endpoint they agree bitwise — the completeness
/// number doubles as a distance with no separate tuning.
#[test]
fn completeness_equals_radial_distance_bitwise() {
    let p = RadialPotential::Exp;
    let c = completeness_integral(&p, 3.0, DEFAULT_PANELS).unwrap();
    let d = radial_distance(&p, 3.0).unwrap();
    assert_eq!(c.integral.to_bits(), d.to_bits());
}

#[test]
fn repeated_runs_are_bitwise_identical() {
    let a = completeness_integral(&RadialPotential::Exp, 4.0, DEFAULT_PANELS).unwrap();
    let b = completeness_integral(&RadialPotential::Exp, 4.0, DEFAULT_PANELS).unwrap();
    assert_eq!(a.integral.to_bits(), b.integral.to_bits());
    assert_eq!(a.tail_growth.to_bits(), b.tail_growth.to_bits());
}

#[test]
fn domain_errors_for_out_of_range_endpoints() {
    let lb = RadialPotential::LogBall;
    assert!(matches!(
        radial_distance(&lb, 1.0),
        Err(Error::Domain { .. })
    ));
    assert!(matches!(
        completeness_integral(&lb, 1.0, DEFAULT_PANELS),
        Err(Error::Domain { .. })
    ));
    assert!(matches!(
        completeness_integral(&RadialPotential::Exp, 0.0, DEFAULT_PANELS),
        Err(Error::Domain { .. })
    ));
}
