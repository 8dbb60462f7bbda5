//! Coarse-geometry estimator suite: Gromov products, four-point δ
//! estimation, thin-triangle defects (including the staircase triangle in
//! ℓ¹ ray products whose defect grows linearly with its parameter),
//! bi-Lipschitz ratio certification, and negative controls for broken or
//! missing geodesic oracles.
//!
//! Frozen constants were cross-checked against closed forms where one
//! exists (corner-quadruple defects, staircase defects, polar distances)
//! and against a high-precision external evaluation for the disc distance.

use negcurv::hyperbolicity::{
    bilipschitz_ratio, four_point_delta, four_point_delta_with, gromov_product, lemma_not_triangle,
    thin_triangle_defect, triangle,
};
use negcurv::potential::RadialPotential;
use negcurv::spaces::{Combiner, MetricSpace, ScaledMetric, SpacePoint};
use negcurv::Error;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

fn dp(s: f64, theta: f64) -> SpacePoint {
    SpacePoint::Disc { s, theta }
}

fn pair(a: SpacePoint, b: SpacePoint) -> SpacePoint {
    SpacePoint::Pair(Box::new(a), Box::new(b))
}

#[test]
fn gromov_products_recover_overlap_lengths() {
    let line = MetricSpace::line();
    let w = SpacePoint::Real(0.0);
    // Opposite sides of the basepoint: the segments share nothing.
    assert_eq!(
        gromov_product(&line, &w, &SpacePoint::Real(5.0), &SpacePoint::Real(-3.0)),
        0.0
    );
    // Same side: the product is the length of the shared initial segment.
    assert_eq!(
        gromov_product(&line, &w, &SpacePoint::Real(5.0), &SpacePoint::Real(3.0)),
        3.0
    );
    // 3-4-5 right triangle in the plane: (3 + 4 - 5) / 2 = 1.
    let plane = MetricSpace::plane();
    assert_eq!(
        gromov_product(
            &plane,
            &SpacePoint::Plane([0.0, 0.0]),
            &SpacePoint::Plane([3.0, 0.0]),
            &SpacePoint::Plane([0.0, 4.0])
        ),
        1.0
    );
}

#[test]
fn four_point_defect_vanishes_on_the_line() {
    let report = four_point_delta(&MetricSpace::line(), 10.0, 1000, 11);
    // The line is a tree: every quadruple defect is <= 0 up to rounding.
    assert!(
        report.delta_estimate <= 1e-12,
        "delta = {}",
        report.delta_estimate
    );
    assert_eq!(report.space, "line");
    assert_eq!(report.combiner, None);
    assert_eq!(report.scale, 10.0);
    assert_eq!(report.n_quadruples, 1000);
    assert_eq!(report.seed, 11);
}

#[test]
fn disc_estimates_stay_bounded_while_plane_estimates_scale() {
    let disc = MetricSpace::disc4();
    let d10 = four_point_delta(&disc, 10.0, 10_000, 7);
    let d20 = four_point_delta(&disc, 20.0, 10_000, 7);
    // Doubling the sampled region barely moves the estimate: the disc is
    // hyperbolic and its four-point constant is an absolute bound.
    assert_eq!(d10.delta_estimate, 0.346054396193459);
    assert_eq!(d20.delta_estimate, 0.3463023508904399);
    assert!(d10.delta_estimate <= 1.0 && d20.delta_estimate <= 1.0);
    assert!((d10.delta_estimate - d20.delta_estimate).abs() <= 0.05);

    // The flat plane has no such bound: the sampler is linear in the scale,
    // so the estimate doubles bitwise with it.
    let plane = MetricSpace::plane();
    let p10 = four_point_delta(&plane, 10.0, 2000, 7);
    let p20 = four_point_delta(&plane, 20.0, 2000, 7);
    assert_eq!(p10.delta_estimate, 5.539013848528159);
    assert_eq!(p20.delta_estimate, 2.0 * p10.delta_estimate);
    assert!(p10.delta_estimate > 4.0 * d10.delta_estimate);
}

#[test]
fn doubling_the_metric_doubles_the_estimate_bitwise() {
    let disc = MetricSpace::disc4();
    let base = four_point_delta(&disc, 10.0, 2000, 3);
    let scaled = ScaledMetric::new(2.0, disc.clone());
    let doubled = four_point_delta_with(&disc, |x, y| scaled.dist(x, y), 10.0, 2000, 3);
    // Multiplying a float by 2 is exact, so the covariance is bitwise and
    // the winning quadruple is the same one.
    assert_eq!(doubled.delta_estimate, 2.0 * base.delta_estimate);
    assert_eq!(doubled.worst_quadruple, base.worst_quadruple);
    assert!(base.delta_estimate > 0.0);
}

#[test]
fn quadruple_streams_nest_across_sample_sizes() {
    // Quadruple i always draws from RNG stream i, so a larger run evaluates
    // a superset of the smaller run's quadruples: the sup cannot decrease.
    let disc = MetricSpace::disc4();
    let small = four_point_delta(&disc, 10.0, 1000, 7);
    let big = four_point_delta(&disc, 10.0, 10_000, 7);
    assert_eq!(small.delta_estimate, 0.3382694913652493);
    assert!(big.delta_estimate >= small.delta_estimate);
}

#[test]
fn corner_quadruple_pins_the_ray_product_estimate() {
    // In the l1 product of two rays the corner quadruple
    // (0,0), (s,0), (0,s), (s,s) has defect exactly s, and no sampled
    // quadruple inside the box beats it: the estimate equals the scale,
    // which therefore grows without bound.
    let prod = MetricSpace::product_rays(Combiner::L1);
    for scale in [10.0, 25.0] {
        let r = four_point_delta(&prod, scale, 4000, 5);
        assert_eq!(r.delta_estimate, scale);
        assert_eq!(r.combiner, Some(Combiner::L1));
        let o = || SpacePoint::Real(0.0);
        let s = || SpacePoint::Real(scale);
        assert_eq!(
            r.worst_quadruple,
            [
                pair(o(), o()),
                pair(s(), o()),
                pair(o(), s()),
                pair(s(), s())
            ]
        );
    }

    // The l2 product of two discs is flat along the pair of distinguished
    // rays; its corner defect is (sqrt(2)-1)*s, again unbounded.
    let discs = MetricSpace::product_discs(Combiner::L2);
    let r = four_point_delta(&discs, 10.0, 2000, 5);
    assert_eq!(r.delta_estimate, (2f64.sqrt() - 1.0) * 10.0);
}

#[test]
fn staircase_triangle_defect_equals_its_parameter() {
    // The staircase side through (n, n) stays exactly n away from the two
    // axis sides; with an odd sample count the apex is hit exactly and every
    // arithmetic step is dyadic, so the defect is n bitwise.
    for n in [5.0, 10.0, 20.0] {
        let (tri, prod) =
            lemma_not_triangle(n, &MetricSpace::ray(), &MetricSpace::ray(), 65).unwrap();
        assert_eq!(tri.labels, ["sigma_n", "S1", "S2"]);
        assert_eq!(prod.name, "product-rays");
        assert_eq!(prod.combiner(), Some(Combiner::L1));
        assert_eq!(
            tri.vertices[0],
            pair(SpacePoint::Real(0.0), SpacePoint::Real(n))
        );
        assert_eq!(
            tri.vertices[1],
            pair(SpacePoint::Real(n), SpacePoint::Real(0.0))
        );
        assert_eq!(
            tri.vertices[2],
            pair(SpacePoint::Real(0.0), SpacePoint::Real(0.0))
        );
        assert_eq!(thin_triangle_defect(&prod, &tri, 65), n);
    }
}

#[test]
fn surface_rays_support_the_staircase_construction() {
    // Radial rays of potential surfaces are genuine unit-speed rays (the
    // arclength inversion is self-consistent with the distance quadrature),
    // so the same construction goes through with curved factors.
    let e = MetricSpace::surface_ray(RadialPotential::Exp);
    let (tri, prod) = lemma_not_triangle(5.0, &e, &e, 33).unwrap();
    let defect = thin_triangle_defect(&prod, &tri, 33);
    assert!((defect - 5.0).abs() <= 1e-9, "defect = {defect}");

    // Heterogeneous factors: a flat ray times a bounded-coordinate ray.
    let lb = MetricSpace::surface_ray(RadialPotential::LogBall);
    let (tri, prod) = lemma_not_triangle(3.0, &MetricSpace::ray(), &lb, 33).unwrap();
    let defect = thin_triangle_defect(&prod, &tri, 33);
    assert!((defect - 3.0).abs() <= 1e-9, "defect = {defect}");
}

#[test]
fn saturated_factor_ray_is_rejected_as_a_geodesic() {
    // The unit-ball ray stores the Euclidean radial coordinate, which runs
    // out of floating-point room near the boundary: past arclength ~14 the
    // ray oracle saturates and stops being an isometric embedding. The
    // staircase constructor must detect this instead of returning a bogus
    // triangle.
    let lb = MetricSpace::surface_ray(RadialPotential::LogBall);
    let err = lemma_not_triangle(16.0, &lb, &MetricSpace::ray(), 9).unwrap_err();
    match err {
        Error::NotAGeodesic {
            t,
            s,
            expected,
            actual,
        } => {
            assert!(t < s, "t = {t}, s = {s}");
            assert!((0.0..=32.0).contains(&t) && (0.0..=32.0).contains(&s));
            assert_eq!(expected, s - t);
            assert!((actual - expected).abs() > 1e-9);
        }
        other => panic!("expected NotAGeodesic, got {other:?}"),
    }
}

#[test]
fn segment_factors_lack_the_ray_oracle() {
    let err = lemma_not_triangle(2.0, &MetricSpace::segment(), &MetricSpace::ray(), 9).unwrap_err();
    match err {
        Error::MissingOracle { space, oracle } => {
            assert_eq!(space, "segment");
            assert_eq!(oracle, "ray");
        }
        other => panic!("expected MissingOracle, got {other:?}"),
    }
}

#[test]
fn disc_triangles_are_uniformly_thin_while_plane_triangles_fatten() {
    // Equilateral triangles inscribed at growing radius: in the disc the
    // defect saturates well under 0.9; in the plane it is the distance from
    // a side midpoint to the opposite sides and grows with the radius
    // (7.5 at circumradius 10).
    let disc = MetricSpace::disc4();
    let mut defects = Vec::new();
    for radius in [10.0, 20.0] {
        let a = dp(radius, 0.0);
        let b = dp(radius, TAU / 3.0);
        let c = dp(radius, 2.0 * TAU / 3.0);
        let tri = triangle(&disc, &a, &b, &c, 65).unwrap();
        assert_eq!(tri.labels, ["AB", "BC", "CA"]);
        let d = thin_triangle_defect(&disc, &tri, 65);
        assert!(d <= 0.9, "defect = {d} at radius {radius}");
        defects.push(d);
    }
    assert_eq!(defects[0], 0.46643408508084916);
    assert_eq!(defects[1], 0.4812118250596089);
    assert!((defects[0] - defects[1]).abs() <= 0.1);

    let plane = MetricSpace::plane();
    let h = 75f64.sqrt(); // circumradius 10: vertices (10,0), (-5, +-sqrt(75))
    let tri = triangle(
        &plane,
        &SpacePoint::Plane([10.0, 0.0]),
        &SpacePoint::Plane([-5.0, h]),
        &SpacePoint::Plane([-5.0, -h]),
        65,
    )
    .unwrap();
    let fat = thin_triangle_defect(&plane, &tri, 65);
    assert!((fat - 7.5).abs() <= 1e-9, "plane defect = {fat}");
}

#[test]
fn line_triangles_read_zero_up_to_sample_quantization() {
    // On the line every triangle is degenerate (sides overlap), so the
    // defect is pure sample quantization: at most half the largest sample
    // gap, here exactly (20 / 64) / 2.
    let line = MetricSpace::line();
    let tri = triangle(
        &line,
        &SpacePoint::Real(-10.0),
        &SpacePoint::Real(4.0),
        &SpacePoint::Real(10.0),
        65,
    )
    .unwrap();
    let d = thin_triangle_defect(&line, &tri, 65);
    assert_eq!(d, 0.15625);
}

#[test]
fn polar_distances_hold_up_at_extreme_depth() {
    let disc = MetricSpace::disc4();
    // Antipodal points at geodesic radius 170: the connecting geodesic runs
    // through the center, so the distance is exactly the sum of the radii —
    // far beyond where any bounded-coordinate disc model could represent
    // the points at all.
    assert_eq!(disc.dist(&dp(170.0, 0.0), &dp(170.0, PI)), 340.0);
    // Radial pairs are exact arclength differences at any depth.
    assert_eq!(disc.dist(&dp(7.0, 1.3), &dp(2.0, 1.3)), 5.0);
}

#[test]
fn polar_distance_matches_the_bounded_model_where_both_exist() {
    // Two moderate points given in the bounded-coordinate model, converted
    // to polar coordinates via s = atanh(rho). The reference value comes
    // from a 40-digit evaluation of the bounded-model cross-ratio formula.
    let disc = MetricSpace::disc4();
    let got = disc.dist(&dp(0.3f64.atanh(), 0.7), &dp(0.55f64.atanh(), 0.2 + PI));
    assert!((got - 0.9070527139743596).abs() <= 1e-12, "got {got}");
}

#[test]
fn swapping_the_product_combiner_is_a_root_two_bilipschitz_change() {
    let l1 = MetricSpace::product_rays(Combiner::L1);
    let l2 = MetricSpace::product_rays(Combiner::L2);
    let (lo, hi) = bilipschitz_ratio(
        &l1,
        10.0,
        |x, y| l2.dist(x, y),
        |x, y| l1.dist(x, y),
        4000,
        13,
    );
    // sqrt(d1^2 + d2^2) <= d1 + d2 <= sqrt(2) * sqrt(d1^2 + d2^2), and the
    // sample gets close to both walls.
    assert!(lo >= 1.0 - 1e-12, "lo = {lo}");
    assert!(hi <= 2f64.sqrt() + 1e-12, "hi = {hi}");
    assert_eq!(lo, 1.0002171801007755);
    assert_eq!(hi, 1.4142135572554426);
    let certified = hi.max(1.0 / lo);
    assert!(certified <= 2f64.sqrt() + 1e-12);
}

#[test]
fn constant_rescaling_is_certified_with_a_tight_ratio_range() {
    let disc = MetricSpace::disc4();
    let scaled = ScaledMetric::new(2.0, disc.clone());
    let (lo, hi) = bilipschitz_ratio(
        &disc,
        10.0,
        |x, y| disc.dist(x, y),
        |x, y| scaled.dist(x, y),
        500,
        2,
    );
    // Doubling is exact in binary floating point, so every sampled ratio
    // is exactly 2.
    assert_eq!((lo, hi), (2.0, 2.0));
}

proptest! {
    #[test]
    fn gromov_products_are_nonnegative_and_bounded(
        s in prop::array::uniform3(0.0..30.0f64),
        t in prop::array::uniform3(0.0..TAU),
    ) {
        let space = MetricSpace::disc4();
        let w = dp(s[0], t[0]);
        let x = dp(s[1], t[1]);
        let y = dp(s[2], t[2]);
        let g = gromov_product(&space, &w, &x, &y);
        prop_assert!(g >= -1e-9, "negative product {g}");
        let bound = space.dist(&w, &x).min(space.dist(&w, &y));
        prop_assert!(g <= bound + 1e-9, "product {g} exceeds {bound}");
    }

    #[test]
    fn polar_distances_satisfy_the_triangle_inequality(
        s in prop::array::uniform3(0.0..30.0f64),
        t in prop::array::uniform3(0.0..TAU),
    ) {
        let space = MetricSpace::disc4();
        let a = dp(s[0], t[0]);
        let b = dp(s[1], t[1]);
        let c = dp(s[2], t[2]);
        let direct = space.dist(&a, &c);
        let via = space.dist(&a, &b) + space.dist(&b, &c);
        prop_assert!(direct <= via + 1e-9, "d(a,c) = {direct} > {via}");
    }
}
