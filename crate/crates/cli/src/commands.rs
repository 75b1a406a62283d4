//! Each subcommand maps its arguments onto one library call per record.

use heston_geom::{
    dist, dist_correlated, dist_to_level_set, dist_to_line_correlated, dist_to_line_with, horizontal_solution,
    oracle_dist_with, reduce_line, sample_level_curve, smile_table, CorrelationFrame, DeltaAngle, DistanceSolution,
    LineParams, ManifoldPoint, OracleOptions, Result, SmileModel, SolverOptions,
};

use crate::args::{
    Command, CompareArgs, Correlation, DistCommand, EmitArgs, LevelsetCommand, LineArgs, OracleCommand, PointArgs,
    SmileArgs,
};
use crate::record::{Diagnostics, OutputRecord, RecordKind};

pub struct Settings {
    pub solver: SolverOptions,
    pub oracle: OracleOptions,
}

impl Settings {
    pub fn new(tol: Option<f64>) -> Self {
        let mut solver = SolverOptions::default();
        let mut oracle = OracleOptions::default();
        if let Some(t) = tol {
            solver.min_tol = t;
            oracle.refine_tol = t;
        }
        Settings { solver, oracle }
    }
}

pub fn execute(cmd: &Command, settings: &Settings) -> Result<Vec<OutputRecord>> {
    match cmd {
        Command::Dist(DistCommand::Point(a)) => point(a).map(|r| vec![r]),
        Command::Dist(DistCommand::Line(a)) => line(a, settings).map(|r| vec![r]),
        Command::Dist(DistCommand::LevelSet(a)) => level_set(a.theta).map(|r| vec![r]),
        Command::Dist(DistCommand::Horizontal(a)) => horizontal(a.tau).map(|r| vec![r]),
        Command::Levelset(LevelsetCommand::Emit(a)) => emit(a),
        Command::Smile(a) => smile(a),
        Command::Oracle(OracleCommand::Compare(a)) => Ok(compare(a, settings)),
    }
}

fn frame(corr: &Correlation) -> Result<CorrelationFrame> {
    CorrelationFrame::new(corr.c.unwrap_or(1.0), corr.rho.unwrap_or(0.0))
}

fn with_frame(r: OutputRecord, f: CorrelationFrame) -> OutputRecord {
    r.input("c", f.c).input("rho", f.rho)
}

fn solution_outputs(r: OutputRecord, s: &DistanceSolution) -> OutputRecord {
    r.output("value", s.value)
        .output("half_squared", s.half_squared)
        .output("argmin_x", s.argmin.x)
        .output("argmin_v", s.argmin.v)
        .output("theta", s.theta_at_argmin.value())
        .with_diagnostics(Diagnostics {
            branch: Some(s.branch.as_str().to_string()),
            ..Diagnostics::from_report(&s.report)
        })
}

fn point(a: &PointArgs) -> Result<OutputRecord> {
    let p0 = ManifoldPoint::new(a.x0, a.v0)?;
    let p1 = ManifoldPoint::new(a.x1, a.v1)?;
    let mut r = OutputRecord::new(RecordKind::PointDistance)
        .input("x0", a.x0)
        .input("v0", a.v0)
        .input("x1", a.x1)
        .input("v1", a.v1);
    let value = if a.corr.is_set() {
        let f = frame(&a.corr)?;
        r = with_frame(r, f);
        dist_correlated(f, p0, p1)?
    } else {
        dist(p0, p1)?
    };
    Ok(r.output("value", value))
}

fn line(a: &LineArgs, settings: &Settings) -> Result<OutputRecord> {
    let r = OutputRecord::new(RecordKind::LineDistance)
        .input("beta", a.beta)
        .input("gamma", a.gamma);
    if a.x0.is_none() && a.v0.is_none() && !a.corr.is_set() {
        let s = dist_to_line_with(a.beta, a.gamma, &settings.solver)?;
        return Ok(solution_outputs(r, &s));
    }
    let p0 = ManifoldPoint::new(a.x0.unwrap_or(0.0), a.v0.unwrap_or(1.0))?;
    let f = frame(&a.corr)?;
    let reduced = reduce_line(f, p0, LineParams::new(a.beta, a.gamma)?)?;
    let value = dist_to_line_correlated(f, p0, a.beta, a.gamma)?;
    Ok(with_frame(r.input("x0", p0.x).input("v0", p0.v), f)
        .output("value", value)
        .output("reduced_beta", reduced.beta)
        .output("reduced_gamma", reduced.gamma))
}

fn level_set(theta: f64) -> Result<OutputRecord> {
    let s = dist_to_level_set(DeltaAngle::new(theta)?);
    Ok(solution_outputs(OutputRecord::new(RecordKind::LevelSet).input("theta", theta), &s))
}

fn horizontal(tau: f64) -> Result<OutputRecord> {
    let s = horizontal_solution(tau)?;
    Ok(solution_outputs(OutputRecord::new(RecordKind::Horizontal).input("tau", tau), &s))
}

fn emit(a: &EmitArgs) -> Result<Vec<OutputRecord>> {
    let samples = sample_level_curve(DeltaAngle::new(a.theta)?, a.x_max, a.samples)?;
    Ok(samples
        .iter()
        .map(|s| {
            OutputRecord::new(RecordKind::LevelSet)
                .input("theta", s.theta.value())
                .output("x", s.x)
                .output("v", s.v)
                .output("slope", s.slope)
        })
        .collect())
}

fn smile(a: &SmileArgs) -> Result<Vec<OutputRecord>> {
    let model = SmileModel::new(a.spot, a.v0, CorrelationFrame::new(a.c, a.rho)?)?;
    let table = smile_table(&model, &a.strikes);
    Ok(a.strikes
        .iter()
        .zip(table)
        .map(|(&k, res)| {
            let r = OutputRecord::new(RecordKind::Smile)
                .input("spot", a.spot)
                .input("strike", k)
                .input("v0", a.v0)
                .input("c", a.c)
                .input("rho", a.rho);
            match res {
                Ok(p) => r
                    .output("log_moneyness", p.log_moneyness)
                    .output("iv_limit", p.iv_limit)
                    .output("line_beta", p.line_beta)
                    .output("line_gamma", p.line_gamma)
                    .output("distance", p.distance),
                Err(e) => r.with_diagnostics(Diagnostics::failed(&e)),
            }
        })
        .collect())
}

fn compare(a: &CompareArgs, settings: &Settings) -> Vec<OutputRecord> {
    let mut oracle = settings.oracle;
    if let Some(n) = a.grid {
        oracle.nodes = n as usize;
    }
    let mut out = Vec::with_capacity(a.beta.len() * a.gamma.len());
    for &beta in &a.beta {
        for &gamma in &a.gamma {
            let r = OutputRecord::new(RecordKind::OracleCompare)
                .input("beta", beta)
                .input("gamma", gamma);
            let pair = dist_to_line_with(beta, gamma, &settings.solver)
                .and_then(|f| oracle_dist_with(beta, gamma, &oracle).map(|o| (f, o)));
            out.push(match pair {
                Ok((f, o)) => {
                    let diff = (f.value - o.value).abs();
                    // scaled by max(1, value) so lines through (0, 1) compare sensibly
                    let rel = diff / f.value.abs().max(o.value.abs()).max(1.0);
                    r.output("formula", f.value)
                        .output("oracle", o.value)
                        .output("abs_diff", diff)
                        .output("rel_diff", rel)
                        .with_diagnostics(Diagnostics {
                            branch: Some(f.branch.as_str().to_string()),
                            ..Diagnostics::from_report(&f.report)
                        })
                }
                Err(e) => r.with_diagnostics(Diagnostics::failed(&e)),
            });
        }
    }
    out
}
