//! Tests for geodesic integration and two-point distance shooting:
//! closed-form flows, conservation, isometry equivariance, boundary
//! stagnation, failure modes, and distance recovery.

use negcurv::{
    distance_estimate, integrate_geodesic, metric_speed, radial_distance, GeodesicError,
    RadialPotential,
};

fn pot(name: &str) -> RadialPotential {
    name.parse().unwrap()
}

/// Flat metric: geodesics are straight lines with exactly conserved speed.
#[test]
fn euclidean_geodesics_are_straight_lines() {
    let p = pot("linear");
    let start = [0.1, 0.2, -0.3, 0.4];
    let v = [0.3, -0.1, 0.2, 0.5];
    let t = 10.0;
    let path = integrate_geodesic(&p, &start, &v, t, 11).unwrap();
    let end = path.end_point();
    for a in 0..4 {
        assert!(
            (end[a] - (start[a] + t * v[a])).abs() <= 1e-9,
            "coordinate {a}: {} vs {}",
            end[a],
            start[a] + t * v[a]
        );
    }
    let s0 = path.speeds[0];
    for s in &path.speeds {
        assert!((s - s0).abs() <= 1e-12 * s0);
    }
}

/// Unit-speed radial flow in the ball model follows ρ(t) = tanh t.
#[test]
fn ball_radial_geodesic_matches_tanh() {
    let p = pot("log_ball");
    let path = integrate_geodesic(&p, &[0.0, 0.0], &[1.0, 0.0], 1.0, 21).unwrap();
    for (i, pt) in path.points.iter().enumerate() {
        let t = path.times[i];
        assert!(
            (pt[0] - t.tanh()).abs() <= 1e-9,
            "ρ({t}) = {} vs tanh = {}",
            pt[0],
            t.tanh()
        );
        assert!(pt[1].abs() <= 1e-15);
    }
    for s in &path.speeds {
        assert!((s - 1.0).abs() <= 1e-9, "speed drifted to {s}");
    }
}

/// The unit-speed radial flight time to radius 1 of the exponential metric
/// is the radial arclength integral; integrating for exactly that long must
/// land on the unit sphere.
#[test]
fn exponential_radial_geodesic_reaches_unit_radius() {
    let p = pot("exp");
    let t = radial_distance(&p, 1.0).unwrap();
    assert!((t - 1.3949258365406607).abs() <= 1e-12);
    let path = integrate_geodesic(&p, &[0.0, 0.0], &[1.0, 0.0], t, 2).unwrap();
    assert!((path.end_point()[0] - 1.0).abs() <= 1e-6);
    for s in &path.speeds {
        assert!((s - 1.0).abs() <= 1e-8);
    }
}

/// Complex conjugation (flipping every imaginary coordinate) is an isometry
/// of every radial metric; the integrator must commute with it.
#[test]
fn conjugation_isometry_commutes_with_the_flow() {
    let p = pot("exp");
    let start = [0.5, -0.2, 0.1, 0.3];
    let v = [0.3, 0.7, -0.4, 0.2];
    let conj = |c: &[f64]| -> Vec<f64> {
        c.iter()
            .enumerate()
            .map(|(a, x)| if a % 2 == 1 { -x } else { *x })
            .collect()
    };
    let fwd = integrate_geodesic(&p, &start, &v, 2.0, 9).unwrap();
    let mirrored = integrate_geodesic(&p, &conj(&start), &conj(&v), 2.0, 9).unwrap();
    for i in 0..fwd.points.len() {
        let want = conj(&fwd.points[i]);
        for (a, want_a) in want.iter().enumerate() {
            assert!(
                (mirrored.points[i][a] - want_a).abs() <= 1e-12,
                "sample {i}, coordinate {a}"
            );
        }
        assert!((mirrored.speeds[i] - fwd.speeds[i]).abs() <= 1e-12);
    }
}

/// Running the ball model for far longer than the coordinates can resolve
/// must finish normally with the state frozen near the boundary, not crash
/// or leave the domain.
#[test]
fn boundary_approach_freezes_instead_of_dying() {
    let p = pot("log_ball");
    let samples = 50;
    let path = integrate_geodesic(&p, &[0.0, 0.0], &[1.0, 0.0], 100.0, samples).unwrap();
    assert_eq!(path.times.len(), samples);
    let end = path.end_point();
    let r2 = end[0] * end[0] + end[1] * end[1];
    assert!(r2 < 1.0, "endpoint left the unit ball: r² = {r2}");
    // Once frozen, the held state repeats bitwise.
    assert_eq!(path.points[samples - 1], path.points[samples - 2]);
    assert_eq!(path.speeds[samples - 1], path.speeds[samples - 2]);
}

/// A velocity far too large for the fixed step must be rejected with the
/// measured drift and the partial trace, not silently returned.
#[test]
fn under_resolved_flow_is_rejected() {
    let p = pot("poly:1,0.5");
    match integrate_geodesic(&p, &[0.0, 0.0], &[300.0, 0.0], 1.0, 5) {
        Err(GeodesicError::StepTooLarge { drift, path }) => {
            assert!(drift > 1e-3, "reported drift {drift} below threshold");
            assert_eq!(path.times[0], 0.0);
            assert_eq!(path.times.len(), 5, "full trace retained for inspection");
        }
        other => panic!("expected a step-size rejection, got {other:?}"),
    }
}

/// When the state blows past what the metric can evaluate, the failure is a
/// domain exit carrying the partial path and exit time.
#[test]
fn numeric_blowup_is_reported_as_domain_exit() {
    let p = pot("exp");
    match integrate_geodesic(&p, &[0.0, 0.0], &[1000.0, 0.0], 1.0, 3) {
        Err(GeodesicError::DomainExited { exit_time, path }) => {
            assert!(exit_time > 0.0 && exit_time < 1.0);
            assert!(!path.times.is_empty());
        }
        other => panic!("expected a domain exit, got {other:?}"),
    }
}

/// Flat-metric distance shooting recovers the 3-4-5 triangle and generic
/// Euclidean separations.
#[test]
fn shooting_recovers_euclidean_distances() {
    let p = pot("linear");
    let d = distance_estimate(&p, &[3.0, 0.0], &[0.0, 4.0], 0).unwrap();
    assert!((d.distance - 5.0).abs() <= 1e-6, "3-4-5: {}", d.distance);
    assert!(d.residual <= 1e-8);

    let from = [0.1, 0.2, -0.3, 0.4];
    let to = [1.1, -0.5, 0.2, 0.9];
    let euclid = from
        .iter()
        .zip(&to)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    let d2 = distance_estimate(&p, &from, &to, 0).unwrap();
    assert!((d2.distance - euclid).abs() <= 1e-6);
}

/// From the origin the estimator short-circuits to the radial arclength
/// integral (rotational symmetry makes radial rays minimizing), and the ball
/// model's value is the inverse hyperbolic tangent.
#[test]
fn shooting_from_origin_uses_radial_arclength() {
    let p = pot("log_ball");
    let d = distance_estimate(&p, &[0.0, 0.0], &[0.5, 0.0], 0).unwrap();
    assert_eq!(d.distance, radial_distance(&p, 0.5).unwrap());
    assert!((d.distance - 0.5_f64.atanh()).abs() <= 1e-9);
    assert_eq!(d.residual, 0.0);
}

/// Chord distance in the ball model between two generic interior points,
/// against the Möbius-invariant closed form atanh(|z−w| / |1−z̄w|).
#[test]
fn ball_chord_distance_matches_closed_form() {
    let p = pot("log_ball");
    let (zr, zi, wr, wi): (f64, f64, f64, f64) = (0.3, 0.1, -0.2, 0.4);
    let num = (zr - wr).hypot(zi - wi);
    let den_re = 1.0 - (zr * wr + zi * wi);
    let den_im = -(zr * wi - zi * wr);
    let m = num / den_re.hypot(den_im);
    let expected = m.atanh();
    let d = distance_estimate(&p, &[zr, zi], &[wr, wi], 0).unwrap();
    assert!(
        (d.distance - expected).abs() <= 1e-6,
        "chord: {} vs closed form {expected}",
        d.distance
    );
}

/// Identical endpoints have distance zero without any solve.
#[test]
fn identical_points_have_zero_distance() {
    let p = pot("exp");
    let d = distance_estimate(&p, &[0.4, 0.1, 0.2, -0.3], &[0.4, 0.1, 0.2, -0.3], 0).unwrap();
    assert_eq!(d.distance, 0.0);
    assert_eq!(d.residual, 0.0);
}

/// In a complete simply connected nonpositively curved space every geodesic
/// is globally minimizing, so the flight time of a unit-speed geodesic is
/// the distance between its endpoints.
#[test]
fn unit_speed_flight_time_is_the_distance() {
    let p = pot("exp");
    let x0 = [0.5, -0.2, 0.1, 0.3];
    let raw = [0.3, -1.1, 0.5, 0.2];
    let s = metric_speed(&p, &x0, &raw).unwrap();
    let v: Vec<f64> = raw.iter().map(|c| c / s).collect();
    let path = integrate_geodesic(&p, &x0, &v, 0.8, 2).unwrap();
    let d = distance_estimate(&p, &x0, path.end_point(), 0).unwrap();
    assert!(
        (d.distance - 0.8).abs() <= 5e-6,
        "flight time 0.8 vs distance {}",
        d.distance
    );
}

/// CSV rendering: one header, one row per sample, time first and speed last.
#[test]
fn csv_rendering_has_expected_shape() {
    let p = pot("linear");
    let path = integrate_geodesic(&p, &[0.0, 0.0], &[1.0, 0.0], 1.0, 4).unwrap();
    let csv = path.to_csv();
    let lines: Vec<&str> = csv.trim_end().lines().collect();
    assert_eq!(lines[0], "t,x_1,x_2,speed");
    assert_eq!(lines.len(), 1 + 4);
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first.len(), 4);
    assert_eq!(first[0].parse::<f64>().unwrap(), 0.0);
}
