//! Pointwise negativity margins against closed forms, the finite-difference
//! cross-route for margin (e), and verdict/classification behaviour per
//! potential.

use approx::assert_relative_eq;
use negcurv::{check_conditions, default_grid, margins_at, Classification, Error, RadialPotential};
use proptest::prelude::*;

/// exp: margins (a), (c), (d), (e) equal eˣ(1+x), eˣ, eˣ, 4 + 4/(1+x)²
/// (derived by hand from f′ = f″ = f‴ = eˣ) — (d) and (e) at 1e-8 relative.
#[test]
fn exp_margins_match_closed_forms() {
    let p = RadialPotential::Exp;
    for &r in default_grid(5.0, 500).iter() {
        let x = r * r;
        let [a, c, d, e] = margins_at(&p, r).unwrap();
        assert_relative_eq!(a, x.exp() * (1.0 + x), max_relative = 1e-12);
        assert_relative_eq!(c, x.exp(), max_relative = 1e-12);
        assert_relative_eq!(d, x.exp(), max_relative = 1e-8);
        let e_closed = 4.0 + 4.0 / ((1.0 + x) * (1.0 + x));
        assert_relative_eq!(e, e_closed, max_relative = 1e-8);
        assert!(a > 0.0 && c > 0.0 && d > 0.0 && e > 0.0);
    }
}

/// log_ball: margins equal (1−x)⁻², (1−x)⁻², (1−x)⁻³, 8(1−x)⁻² — the
/// constant-curvature model's closed forms.
#[test]
fn log_ball_margins_match_closed_forms() {
    let p = RadialPotential::LogBall;
    for &r in &[0.05, 0.2, 0.5, 0.7, 0.9, 0.99] {
        let x: f64 = r * r;
        let s = 1.0 / (1.0 - x);
        let [a, c, d, e] = margins_at(&p, r).unwrap();
        assert_relative_eq!(a, s * s, max_relative = 1e-10);
        assert_relative_eq!(c, s * s, max_relative = 1e-10);
        assert_relative_eq!(d, s * s * s, max_relative = 1e-10);
        assert_relative_eq!(e, 8.0 * s * s, max_relative = 1e-10);
    }
}

/// linear: (a) ≡ 1 exactly; (c), (d), (e) ≡ 0, so the strict verdicts fail.
#[test]
fn linear_margins_are_flat_and_fail() {
    let p = RadialPotential::Linear;
    for &r in &[0.1, 1.0, 3.0] {
        let [a, c, d, e] = margins_at(&p, r).unwrap();
        assert_eq!(a, 1.0);
        assert_eq!(c, 0.0);
        assert_eq!(d, 0.0);
        assert_eq!(e, 0.0);
    }
    let report = check_conditions(&p, &default_grid(5.0, 100)).unwrap();
    assert!(report.verdicts.a);
    assert!(!report.verdicts.c);
    assert!(!report.verdicts.d);
    assert!(!report.verdicts.e);
    assert!(!report.pass());
}

/// fubini: (a) = (1+x)⁻² stays positive while (c) = −(1+x)⁻² fails — a
/// positively curved model is rejected by the right condition.
#[test]
fn fubini_fails_condition_c_only_where_expected() {
    let p = RadialPotential::Fubini;
    for &r in &[0.1, 0.7, 2.0] {
        let x: f64 = r * r;
        let s = 1.0 / (1.0 + x);
        let [a, c, _, _] = margins_at(&p, r).unwrap();
        assert_relative_eq!(a, s * s, max_relative = 1e-10);
        assert_relative_eq!(c, -s * s, max_relative = 1e-10);
    }
    let report = check_conditions(&p, &default_grid(5.0, 100)).unwrap();
    assert!(report.verdicts.a);
    assert!(!report.verdicts.c);
    assert!(!report.pass());
}

/// poly:1,-0.5 (f = x − x²/2): (c) ≡ −1, and the metric degenerates at
/// r = 1 where f′ vanishes — reported as a singularity, not a number.
#[test]
fn concave_poly_fails_and_flags_singularity() {
    let p: RadialPotential = "poly:1,-0.5".parse().unwrap();
    let [_, c, _, _] = margins_at(&p, 0.5).unwrap();
    assert_eq!(c, -1.0);
    assert!(matches!(
        margins_at(&p, 1.0),
        Err(Error::Singularity { .. })
    ));
    let report = check_conditions(&p, &default_grid(5.0, 100)).unwrap();
    assert!(!report.verdicts.c);
    assert!(!report.pass());
}

/// Margin (e) is NaN (and the verdict fails) where u ≤ 0: the log-derivative
/// margin is undefined rather than silently clamped.
#[test]
fn margin_e_is_nan_where_radial_eigenvalue_nonpositive() {
    // f = x − x²/2: u = 1 − 2x ≤ 0 for x ≥ 0.5 (r ≥ 0.7071…).
    let p: RadialPotential = "poly:1,-0.5".parse().unwrap();
    let [a, _, _, e] = margins_at(&p, 0.9).unwrap();
    assert!(a < 0.0);
    assert!(e.is_nan());
}

/// The jet-composed margin (e) agrees with a central finite difference of
/// h(r) = ln u(r²) within 1e-5 — the two routes share no derivative code.
fn margin_e_fd(p: &RadialPotential, r: f64) -> f64 {
    let u = |r: f64| {
        let x = r * r;
        let j = p.jet(x).unwrap();
        j.v1 + x * j.v2
    };
    let h = 1e-4 * r.max(1.0);
    let hp = (u(r + h).ln() - u(r - h).ln()) / (2.0 * h);
    let hpp = (u(r + h).ln() - 2.0 * u(r).ln() + u(r - h).ln()) / (h * h);
    hp / r + hpp
}

#[test]
fn margin_e_matches_finite_differences_on_registry() {
    let cases: Vec<(RadialPotential, Vec<f64>)> = vec![
        (RadialPotential::Exp, vec![0.1, 0.5, 1.0, 1.7, 2.5]),
        (RadialPotential::LogBall, vec![0.1, 0.4, 0.7, 0.9]),
        (RadialPotential::Fubini, vec![0.1, 0.8, 2.0]),
        ("poly:1,0.5".parse().unwrap(), vec![0.2, 1.0, 2.0]),
    ];
    for (p, radii) in cases {
        for r in radii {
            let e_jet = margins_at(&p, r).unwrap()[3];
            let e_fd = margin_e_fd(&p, r);
            assert_relative_eq!(e_jet, e_fd, max_relative = 1e-5, epsilon = 1e-5);
        }
    }
}

proptest! {
    #[test]
    fn margin_e_matches_fd_for_exp_everywhere(r in 0.05..2.5_f64) {
        let e_jet = margins_at(&RadialPotential::Exp, r).unwrap()[3];
        let e_fd = margin_e_fd(&RadialPotential::Exp, r);
        prop_assert!((e_jet - e_fd).abs() <= 1e-5 * e_jet.abs().max(1.0));
    }
}

#[test]
fn default_grid_shape() {
    let g = default_grid(5.0, 500);
    assert_eq!(g.len(), 500);
    assert!(g[0] > 1e-3);
    assert_eq!(*g.last().unwrap(), 5.0);
    assert!(g.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn exp_report_passes_everything() {
    let report = check_conditions(&RadialPotential::Exp, &default_grid(5.0, 500)).unwrap();
    assert!(report.verdicts.all());
    assert_eq!(
        report.completeness.classification,
        Classification::Divergent
    );
    assert!(report.pass());
    assert_eq!(report.margins.a.len(), 500);
}

#[test]
fn grid_validation_rejects_bad_input() {
    let p = RadialPotential::Exp;
    assert!(matches!(check_conditions(&p, &[]), Err(Error::Parse(_))));
    assert!(matches!(
        check_conditions(&p, &[1.0, 1.0]),
        Err(Error::Parse(_))
    ));
    assert!(matches!(
        check_conditions(&p, &[2.0, 1.0]),
        Err(Error::Parse(_))
    ));
    assert!(matches!(
        check_conditions(&p, &[0.0, 1.0]),
        Err(Error::Parse(_))
    ));
}
