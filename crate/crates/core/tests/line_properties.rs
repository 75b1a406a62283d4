use std::f64::consts::PI;

use heston_geom::*;
use proptest::prelude::*;

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn agrees_with_oracle(beta in -6.0..6.0f64, gamma in -6.0..6.0f64) {
        prop_assume!((beta + gamma).abs() > 1e-6);
        let f = dist_to_line(beta, gamma).unwrap();
        let o = oracle_dist(beta, gamma).unwrap();
        prop_assert!(rel_err(f.value, o.value) <= 1e-6, "({}, {}): {} vs {}", beta, gamma, f.value, o.value);
    }

    #[test]
    fn reflection_is_exact(beta in -6.0..6.0f64, gamma in -6.0..6.0f64) {
        let a = dist_to_line(beta, gamma).unwrap();
        let b = dist_to_line(-beta, -gamma).unwrap();
        prop_assert_eq!(a.value, b.value);
        prop_assert_eq!(a.argmin.x, -b.argmin.x);
    }

    #[test]
    fn solution_invariants(beta in -6.0..6.0f64, gamma in -6.0..6.0f64) {
        let s = dist_to_line(beta, gamma).unwrap();
        prop_assert_eq!(s.value * s.value, 2.0 * s.half_squared);
        let p = s.argmin;
        prop_assert!((p.x - (beta + gamma * p.v)).abs() <= 1e-9 * p.v.max(1.0));
        let d = dist(ManifoldPoint::BASE, p).unwrap();
        prop_assert!((d - s.value).abs() <= 1e-8, "{} vs {}", d, s.value);
        let t = delta_of(p.x, p.v).unwrap().value();
        prop_assert!((t - s.theta_at_argmin.value()).abs() <= 1e-6, "{} vs {}", t, s.theta_at_argmin.value());
    }

    #[test]
    fn nearest_level_set_is_admissible(beta in 0.01..6.0f64, gamma in -6.0..6.0f64) {
        prop_assume!((beta + gamma).abs() > 1e-6);
        let s = dist_to_line(beta, gamma).unwrap();
        let t = s.theta_at_argmin.value();
        let pieces = admissible_intervals(beta, gamma).unwrap();
        let slack = 1e-7;
        prop_assert!(
            pieces.iter().any(|iv| t >= iv.lo.value() - slack && t <= iv.hi.value() + slack),
            "theta {} outside {:?}", t, pieces
        );
    }

    #[test]
    fn vertical_interval_variants_agree(beta in 0.01..30.0f64) {
        let o = SolverOptions::default();
        let base = dist_to_vertical(beta, VerticalInterval::Standard, &o).unwrap().value;
        for variant in [VerticalInterval::Tight, VerticalInterval::Simple, VerticalInterval::Full] {
            let v = dist_to_vertical(beta, variant, &o).unwrap().value;
            prop_assert!((v - base).abs() <= 1e-9, "{:?}: {} vs {}", variant, v, base);
        }
    }

    #[test]
    fn close_range_is_enough_for_far_vertical_lines(beta in (PI / 2.0)..40.0f64) {
        let o = SolverOptions::default();
        let full = dist_to_vertical(beta, VerticalInterval::Full, &o).unwrap().value;
        let close = dist_to_vertical(beta, VerticalInterval::CloseRange, &o).unwrap().value;
        prop_assert!((full - close).abs() <= 1e-9);
    }

    #[test]
    fn tangent_lines(theta in 0.01..(PI - 0.01)) {
        let l = tangent_line(theta).unwrap();
        let s = dist_to_line(l.beta, l.gamma).unwrap();
        prop_assert!((s.value - theta).abs() <= 1e-8);
        prop_assert_eq!(dist_to_tangent_line(theta).unwrap().value, theta);
    }

    #[test]
    fn correlated_reduction_against_brute_force(
        c in 0.2..3.0f64, rho in -0.9..0.9f64,
        x0 in -2.0..2.0f64, v0 in 0.05..3.0f64,
        beta in -3.0..3.0f64, gamma in -3.0..3.0f64,
    ) {
        let frame = CorrelationFrame::new(c, rho).unwrap();
        let p0 = ManifoldPoint::new(x0, v0).unwrap();
        let formula = dist_to_line_correlated(frame, p0, beta, gamma).unwrap();
        let at = |v: f64| ManifoldPoint { x: beta + gamma * v, v };
        let m = minimize_over_half_line(
            |v| dist_correlated(frame, p0, at(v)).unwrap(),
            |v| t_bound(frame.decorrelate(p0), frame.decorrelate(at(v))) / c,
            &OracleOptions::default(),
        ).unwrap();
        prop_assert!(rel_err(formula, m.value) <= 1e-6, "{} vs {}", formula, m.value);
    }
}

#[test]
fn left_slanted_axis_crossing() {
    // β < |γ|: the nearest point is on the part of the line with x ≤ 0,
    // starting at (0, β/|γ|).
    let (beta, gamma) = (1.0, -3.0);
    let s = dist_to_line(beta, gamma).unwrap();
    assert!(s.argmin.x <= 0.0 && s.theta_at_argmin.value() <= 0.0);
    assert_eq!(s.branch, Branch::LeftSlanted);
    // β > |γ|: nearest point has x ≥ 0.
    let s = dist_to_line(3.0, -1.0).unwrap();
    assert!(s.argmin.x >= 0.0 && s.theta_at_argmin.value() >= 0.0);
}

#[test]
fn steep_lines_approach_the_vertical_axis() {
    // lines through the origin steepen towards the boundary ray as γ grows
    let mut last = 0.0;
    for &g in &[0.5, 2.0, 10.0, 100.0] {
        let d = dist_to_line(0.0, g).unwrap().value;
        assert!(d > last && d < 2.0);
        last = d;
    }
}
