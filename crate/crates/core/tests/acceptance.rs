//! Acceptance suite. Prints one `[PASS]` / `[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

use heston_geom::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Criterion = (&'static str, &'static str, Box<dyn FnOnce(&mut StdRng) -> Outcome>);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, checked: usize, what: &str) -> Outcome {
    match failures.first() {
        None => Outcome { ok: true, detail: format!("{checked} {what}") },
        Some(first) => Outcome {
            ok: false,
            detail: format!("{} of {checked} {what} failed; first: {first}", failures.len()),
        },
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn ac1_tangent_lines() -> Outcome {
    let mut bad = Vec::new();
    for k in 1..=31 {
        let theta = 0.1 * k as f64;
        let d = dist_to_line(theta / 2.0, (theta / 2.0).tan()).unwrap().value;
        if (d - theta).abs() > 1e-8 {
            bad.push(format!("theta={theta}: {d}"));
        }
    }
    outcome(bad, 31, "tangent lines")
}

/// Minimum of the point distance along Γ_θ by direct x-sampling: a coarse
/// pass over [ψ(θ), ψ(θ) + 8] followed by a dense pass around the best node.
fn sampled_level_set_distance(theta: f64) -> f64 {
    let t = DeltaAngle::new(theta).unwrap();
    let p = psi(theta).unwrap();
    let at = |x: f64| dist(ManifoldPoint::BASE, ManifoldPoint { x, v: curve_v(t, x).unwrap() }).unwrap();
    let grid = |a: f64, b: f64| {
        (0..4001)
            .map(|i| a + (b - a) * (i as f64 / 4000.0))
            .map(|x| (x, at(x)))
            .fold((a, f64::INFINITY), |m, c| if c.1 < m.1 { c } else { m })
    };
    let (x0, _) = grid(p, p + 8.0);
    let h = 8.0 / 4000.0;
    let (x1, _) = grid((x0 - h).max(p), x0 + h);
    let h = 2.0 * h / 4000.0;
    grid((x1 - h).max(p), x1 + h).1
}

fn ac2_level_sets() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    let close = (1..=62).map(|k| 0.05 * k as f64).filter(|&t| t < PI);
    let far = (0..=25).map(|k| PI + k as f64 * (PI - 0.1) / 25.0);
    for theta in close.chain(far) {
        n += 1;
        let s = dist_to_level_set(DeltaAngle::new(theta).unwrap());
        let (value, x, v) = if theta < PI {
            let c = (theta / 2.0).cos();
            (theta, (theta + theta.sin()) / 2.0, c * c)
        } else {
            (theta / (theta / 2.0).sin(), psi(theta).unwrap(), 0.0)
        };
        if (s.value - value).abs() > 1e-12 {
            bad.push(format!("theta={theta}: value {} vs {value}", s.value));
        }
        if (s.argmin.x - x).abs() > 1e-12 || (s.argmin.v - v).abs() > 1e-12 {
            bad.push(format!("theta={theta}: argmin {:?} vs ({x}, {v})", s.argmin));
        }
        let sampled = sampled_level_set_distance(theta);
        if (sampled - s.value).abs() > 1e-6 {
            bad.push(format!("theta={theta}: sampled {sampled} vs {}", s.value));
        }
    }
    outcome(bad, n, "level sets")
}

fn ac3_horizontal_lines() -> Outcome {
    let mut bad = Vec::new();
    let taus = [0.0, 0.25, 1.0, 4.0, 100.0];
    for tau in taus {
        let d = dist_to_horizontal(tau).unwrap();
        let exact = 2.0 * (tau.sqrt() - 1.0).abs();
        if (d - exact).abs() > 1e-12 {
            bad.push(format!("tau={tau}: {d} vs {exact}"));
        }
        let sampled = (0..=50_000)
            .map(|i| dist(ManifoldPoint::BASE, ManifoldPoint { x: 50.0 * i as f64 / 50_000.0, v: tau }).unwrap())
            .fold(f64::INFINITY, f64::min);
        if (sampled - d).abs() > 1e-6 {
            bad.push(format!("tau={tau}: sampled {sampled} vs {d}"));
        }
    }
    outcome(bad, taus.len(), "horizontal lines")
}

fn ac4_vertical_lines() -> Outcome {
    let mut bad = Vec::new();
    let betas = [0.1, 0.5, 1.0, FRAC_PI_2, 2.0, 5.0, 20.0];
    let opts = SolverOptions::default();
    for beta in betas {
        let f = dist_to_line(beta, 0.0).unwrap().value;
        let o = oracle_dist(beta, 0.0).unwrap().value;
        if (f - o).abs() > 1e-6 {
            bad.push(format!("beta={beta}: formula {f} vs oracle {o}"));
        }
        let mut variants = vec![VerticalInterval::Standard, VerticalInterval::Tight, VerticalInterval::Simple];
        if beta >= FRAC_PI_2 {
            variants.push(VerticalInterval::CloseRange);
        }
        let values: Vec<(VerticalInterval, f64)> = variants
            .into_iter()
            .map(|var| (var, dist_to_vertical(beta, var, &opts).unwrap().value))
            .collect();
        for (i, a) in values.iter().enumerate() {
            for b in &values[i + 1..] {
                if (a.1 - b.1).abs() > 1e-9 {
                    bad.push(format!("beta={beta}: {:?} {} vs {:?} {}", a.0, a.1, b.0, b.1));
                }
            }
        }
    }
    outcome(bad, betas.len(), "vertical lines")
}

fn ac5_slanted_lines() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for beta in [0.0, 0.25, 1.0, 2.0, 4.0] {
        for gamma in [-3.0, -1.0, -0.5, 0.5, 1.0, 2.0, 5.0] {
            if LineParams::new(beta, gamma).unwrap().passes_through_base() {
                continue;
            }
            n += 1;
            let f = dist_to_line(beta, gamma).unwrap().value;
            let o = oracle_dist(beta, gamma).unwrap().value;
            if (f - o).abs() > 1e-6 * f.abs().max(o.abs()) {
                bad.push(format!("({beta}, {gamma}): formula {f} vs oracle {o}"));
            }
        }
    }
    outcome(bad, n, "slanted lines")
}

fn ac6_two_sided_estimate(rng: &mut StdRng) -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    while n < 1000 {
        let mut p = ManifoldPoint { x: rng.gen_range(-50.0..50.0), v: rng.gen_range(0.0..100.0) };
        let mut q = ManifoldPoint { x: rng.gen_range(-50.0..50.0), v: rng.gen_range(0.0..100.0) };
        // exercise the boundary on a share of the pairs
        match n % 10 {
            0 => p.v = 0.0,
            1 => q.v = 0.0,
            _ => {}
        }
        n += 1;
        let d = dist(p, q).unwrap();
        let t = t_bound(p, q);
        if !(t <= d && d <= 12.0 * t) {
            bad.push(format!("{p:?} {q:?}: T={t} d={d}"));
        }
    }
    outcome(bad, n, "point pairs")
}

fn ac7_metric_identities(rng: &mut StdRng) -> Outcome {
    let mut bad = Vec::new();
    let close = |a: f64, b: f64| rel_err(a, b) <= 1e-10;
    for _ in 0..1000 {
        let p = ManifoldPoint { x: rng.gen_range(-50.0..50.0), v: rng.gen_range(1e-3..100.0) };
        let q = ManifoldPoint { x: rng.gen_range(-50.0..50.0), v: rng.gen_range(1e-3..100.0) };
        let shift = rng.gen_range(-50.0..50.0);
        let alpha: f64 = rng.gen_range(0.01..100.0);
        let d = dist(p, q).unwrap();
        let checks = [
            ("symmetry", dist(q, p).unwrap(), d),
            (
                "mirror",
                dist(ManifoldPoint { x: -p.x, ..p }, ManifoldPoint { x: -q.x, ..q }).unwrap(),
                d,
            ),
            (
                "translation",
                dist(ManifoldPoint { x: p.x + shift, ..p }, ManifoldPoint { x: q.x + shift, ..q }).unwrap(),
                d,
            ),
            (
                "scaling",
                dist(
                    ManifoldPoint { x: alpha * p.x, v: alpha * p.v },
                    ManifoldPoint { x: alpha * q.x, v: alpha * q.v },
                )
                .unwrap(),
                alpha.sqrt() * d,
            ),
        ];
        for (name, a, b) in checks {
            if !close(a, b) {
                bad.push(format!("{name} {p:?} {q:?}: {a} vs {b}"));
            }
        }
        let back = from_delta(to_delta(p).unwrap()).unwrap();
        if !close(back.x, p.x) || back.v != p.v {
            bad.push(format!("chart {p:?} -> {back:?}"));
        }
    }
    outcome(bad, 1000, "instances")
}

fn ac8_delta_consistency(rng: &mut StdRng) -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    while n < 1000 {
        let x = rng.gen_range(-50.0..50.0);
        let v = rng.gen_range(0.0..100.0);
        let delta = delta_of(x, v).unwrap().value();
        if delta == 0.0 {
            continue;
        }
        n += 1;
        let h = dist(ManifoldPoint::BASE, ManifoldPoint { x, v }).unwrap().powi(2) / 2.0;
        let l = lambda_big(x, delta).unwrap();
        if (h - l).abs() > 1e-9 * h.abs().max(l.abs()) {
            bad.push(format!("({x}, {v}): {h} vs {l}"));
        }
    }
    outcome(bad, n, "points")
}

fn ac9_branch_law(rng: &mut StdRng) -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    let mut ties = 0;
    while n < 500 {
        let beta = rng.gen_range(0.0..5.0);
        let gamma = rng.gen_range(0.01..5.0);
        let theta = rng.gen_range(0.01..(TAU - 0.01));
        let (Ok(lp), Ok(lm)) = (lambda_plus(beta, gamma, theta), lambda_minus(beta, gamma, theta)) else {
            continue;
        };
        n += 1;
        let diff = lp - lm;
        let law = gamma / (theta / 2.0).tan() - 1.0;
        if diff.abs() <= 1e-12 * lp.abs().max(lm.abs()).max(1.0) || law.abs() <= 1e-12 {
            ties += 1;
            continue;
        }
        if diff.signum() != law.signum() {
            bad.push(format!("({beta}, {gamma}, {theta}): diff {diff} law {law}"));
        }
    }
    let mut o = outcome(bad, n, "triples");
    o.detail.push_str(&format!(" ({ties} ties)"));
    o
}

fn ac10_smile(rng: &mut StdRng) -> Outcome {
    let mut bad = Vec::new();
    for _ in 0..50 {
        let m: f64 = rng.gen_range(0.01..1.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let v0 = rng.gen_range(0.01..1.0);
        let frame = CorrelationFrame::new(rng.gen_range(0.1..2.0), rng.gen_range(-0.9..0.9)).unwrap();
        let spot = rng.gen_range(10.0..200.0);
        let q = SmileQuery::new(spot, spot * m.exp(), v0, frame).unwrap();
        let got = iv_limit(&q).unwrap().iv_limit;
        // brute force: |log(S₀/K)| over the infimum of the correlated distance
        // from (log(S₀/K), v₀) to the vertical axis
        let p0 = ManifoldPoint { x: -q.log_moneyness(), v: v0 };
        let at = |v: f64| ManifoldPoint { x: 0.0, v };
        let inf = minimize_over_half_line(
            |v| dist_correlated(frame, p0, at(v)).unwrap(),
            |v| t_bound(frame.decorrelate(p0), frame.decorrelate(at(v))) / frame.c,
            &OracleOptions::default(),
        )
        .unwrap()
        .value;
        let brute = q.log_moneyness().abs() / inf;
        if (got - brute).abs() > 1e-6 * got.abs().max(brute.abs()) {
            bad.push(format!("{q:?}: {got} vs {brute}"));
        }
    }
    for _ in 0..50 {
        let m: f64 = rng.gen_range(0.01..2.0);
        let model = SmileModel::new(100.0, rng.gen_range(0.01..1.0), CorrelationFrame::new(rng.gen_range(0.1..2.0), 0.0).unwrap()).unwrap();
        let up = iv_limit(&model.query(100.0 * m.exp()).unwrap()).unwrap().iv_limit;
        let down = iv_limit(&model.query(100.0 * (-m).exp()).unwrap()).unwrap().iv_limit;
        if (up - down).abs() > 1e-8 * up {
            bad.push(format!("symmetry m={m}: {up} vs {down}"));
        }
    }
    outcome(bad, 100, "queries")
}

fn ac11_growth() -> Outcome {
    let mut bad = Vec::new();
    let v: f64 = 1e8;
    for beta in [0.0, 1.0, 10.0] {
        let r = dist(ManifoldPoint::BASE, ManifoldPoint { x: beta, v }).unwrap() / v.sqrt();
        if (r - 2.0).abs() > 1e-3 {
            bad.push(format!("beta={beta}: {r}"));
        }
    }
    outcome(bad, 3, "vertical lines")
}

fn main() -> ExitCode {
    let mut rng = StdRng::seed_from_u64(20_261_016);
    let criteria: Vec<Criterion> = vec![
        ("AC1", "tangent-line exactness", Box::new(|_| ac1_tangent_lines())),
        ("AC2", "level-set distances", Box::new(|_| ac2_level_sets())),
        ("AC3", "horizontal lines", Box::new(|_| ac3_horizontal_lines())),
        ("AC4", "vertical lines vs oracle", Box::new(|_| ac4_vertical_lines())),
        ("AC5", "slanted lines vs oracle", Box::new(|_| ac5_slanted_lines())),
        ("AC6", "two-sided estimate", Box::new(ac6_two_sided_estimate)),
        ("AC7", "metric identities", Box::new(ac7_metric_identities)),
        ("AC8", "delta consistency", Box::new(ac8_delta_consistency)),
        ("AC9", "branch law", Box::new(ac9_branch_law)),
        ("AC10", "implied-vol reduction", Box::new(ac10_smile)),
        ("AC11", "growth limit", Box::new(|_| ac11_growth())),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let o = run(&mut rng);
        let tag = if o.ok { "PASS" } else { "FAIL" };
        if !o.ok {
            failed += 1;
        }
        println!("[{tag}] {id} {name}: {} ({:.2?})", o.detail, start.elapsed());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
