//! Distance from `(0, 1)` to the line `L_{β,γ} = {x = β + γ v}`.
//!
//! The line is swept by the level sets `Γ_θ`; on each level set the
//! distance is known in closed form, so the problem reduces to a scalar
//! minimization over the admissible `θ`. Which `θ` are admissible, and which
//! of the (up to two) intersection points must be considered, depends on
//! the signs and ordering of `β` and `γ`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{domain, GeomError, Result};
use crate::functions::{
    half_sq_from_chart, level_sqrt_v, line_roots, DeltaAngle, LineParams, ENDPOINT_DISC_TOL,
};
use crate::inverse::{eta_alpha_inv, eta_inv, psi_inv, x_crit_inv};
use crate::level_set::{critical_point, theta_crit};
use crate::point::{delta_of, dist, CorrelationFrame, ManifoldPoint};
use crate::solvers::{
    minimize_with, Bracket, Method, Minimum, SolveReport, SolverOptions,
};

/// Gap left before an open endpoint where an intersection escapes to
/// `v = ∞`.
pub const OPEN_END_CLIP: f64 = 1e-9;

/// Relative tolerance under which the two branch minima count as equal.
const BRANCH_TIE_TOL: f64 = 1e-12;

/// Which formula produced a distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    OnLine,
    VerticalKp,
    SlantedPlus,
    SlantedMinus,
    LeftSlanted,
    TangentExact,
    LevelSet,
    Horizontal,
    Oracle,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::OnLine => "on-line",
            Branch::VerticalKp => "vertical-kp",
            Branch::SlantedPlus => "slanted-plus",
            Branch::SlantedMinus => "slanted-minus",
            Branch::LeftSlanted => "left-slanted",
            Branch::TangentExact => "tangent-exact",
            Branch::LevelSet => "level-set",
            Branch::Horizontal => "horizontal",
            Branch::Oracle => "oracle",
        }
    }
}

/// A distance from `(0, 1)` to a set, with the point that attains it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceSolution {
    /// The distance `D̂`.
    pub value: f64,
    /// `D = D̂²/2`.
    pub half_squared: f64,
    pub argmin: ManifoldPoint,
    pub theta_at_argmin: DeltaAngle,
    pub branch: Branch,
    pub report: SolveReport,
}

impl DistanceSolution {
    pub(crate) fn from_value(
        value: f64,
        argmin: ManifoldPoint,
        theta: DeltaAngle,
        branch: Branch,
        report: SolveReport,
    ) -> Self {
        DistanceSolution {
            value,
            half_squared: 0.5 * value * value,
            argmin,
            theta_at_argmin: theta,
            branch,
            report,
        }
    }

    pub(crate) fn from_half_squared(
        half_squared: f64,
        argmin: ManifoldPoint,
        theta: DeltaAngle,
        branch: Branch,
        report: SolveReport,
    ) -> Self {
        let value = (2.0 * half_squared.max(0.0)).sqrt();
        Self::from_value(value, argmin, theta, branch, report)
    }
}

/// A piece of the set of `θ` whose level set meets the line, with the
/// intersection roots valid on it.
///
/// For negative `θ` the flags refer to the mirrored problem: the line
/// `L_{-β,-γ}` against `Γ_{|θ|}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleInterval {
    pub lo: DeltaAngle,
    pub hi: DeltaAngle,
    pub lo_open: bool,
    pub hi_open: bool,
    pub branch_plus: bool,
    pub branch_minus: bool,
}

impl AdmissibleInterval {
    fn new(lo: f64, hi: f64, lo_open: bool, hi_open: bool, plus: bool, minus: bool) -> Result<Self> {
        Ok(AdmissibleInterval {
            lo: DeltaAngle::new(lo)?,
            hi: DeltaAngle::new(hi)?,
            lo_open,
            hi_open,
            branch_plus: plus,
            branch_minus: minus,
        })
    }

    pub fn contains(&self, theta: f64) -> bool {
        let (lo, hi) = (self.lo.value(), self.hi.value());
        (if self.lo_open { theta > lo } else { theta >= lo })
            && (if self.hi_open { theta < hi } else { theta <= hi })
    }
}

/// The `θ` for which `Γ_θ` meets `L_{β,γ}`, split into pieces on which the
/// set of valid roots is constant. Requires `β ≥ 0`, and `γ ≥ 0` when
/// `β = 0`.
pub fn admissible_intervals(beta: f64, gamma: f64) -> Result<Vec<AdmissibleInterval>> {
    let line = LineParams::new(beta, gamma)?;
    if beta < 0.0 {
        return Err(domain("admissible_intervals", beta, "beta >= 0"));
    }
    let iv = AdmissibleInterval::new;
    if beta == 0.0 {
        if gamma < 0.0 {
            return Err(domain("admissible_intervals", gamma, "gamma >= 0 when beta = 0"));
        }
        if gamma == 0.0 {
            return Ok(vec![iv(0.0, 0.0, false, false, true, false)?]);
        }
        return Ok(vec![iv(0.0, psi_inv(gamma)?, false, true, false, true)?]);
    }
    let _ = line;
    let pb = psi_inv(beta)?;
    if gamma == 0.0 {
        return Ok(vec![iv(0.0, pb, true, false, true, false)?]);
    }
    if gamma < 0.0 {
        let pg = psi_inv(-gamma)?;
        return Ok(vec![
            iv(-pg, 0.0, true, true, false, true)?,
            iv(0.0, pb, false, false, true, false)?,
        ]);
    }
    if gamma == beta {
        let lo = eta_inv(beta)?;
        return Ok(vec![
            iv(lo, pb, false, true, true, true)?,
            iv(pb, pb, false, false, true, false)?,
        ]);
    }
    if gamma > beta {
        let lo = eta_alpha_inv(gamma, beta)?;
        let pg = psi_inv(gamma)?;
        return Ok(vec![
            iv(lo, pb, false, false, true, true)?,
            iv(pb, pg, true, true, false, true)?,
        ]);
    }
    let lo = eta_alpha_inv(beta, gamma)?;
    let pg = psi_inv(gamma)?;
    Ok(vec![
        iv(lo, pg, false, true, true, true)?,
        iv(pg, pb, false, false, true, false)?,
    ])
}

// ---------------------------------------------------------------------------
// Objectives

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Root {
    Plus,
    Minus,
}

/// `√v` of the chosen intersection of `L_{b,g}` with `Γ_θ`, `θ ≥ 0`.
fn root_at(b: f64, g: f64, theta: f64, root: Root) -> f64 {
    match line_roots(b, g, theta, ENDPOINT_DISC_TOL) {
        None => f64::NAN,
        Some((plus, minus)) => {
            let s = if root == Root::Plus { plus } else { minus };
            clamp_root(s)
        }
    }
}

/// Roots that should be exactly zero at an endpoint come out as tiny
/// negatives.
fn clamp_root(s: f64) -> f64 {
    if s < 0.0 && s > -1e-9 {
        0.0
    } else if s < 0.0 {
        f64::NAN
    } else {
        s
    }
}

/// `√v` of the point of `Γ_θ` on the vertical line `x = β`.
fn vertical_root(beta: f64, theta: f64) -> f64 {
    let (s, radicand) = level_sqrt_v(theta, beta);
    if radicand < 0.0 {
        f64::NAN
    } else {
        clamp_root(s)
    }
}

/// The minimum of one branch, in the frame where the line is `L_{b,g}` and
/// `θ ≥ 0`.
#[derive(Debug, Clone, Copy)]
struct Candidate {
    half_sq: f64,
    theta: f64,
    sqrt_v: f64,
    branch: Branch,
    report: SolveReport,
}

fn minimize_root<F>(root: F, lo: f64, hi: f64, branch: Branch, opts: &SolverOptions) -> Result<Candidate>
where
    F: Fn(f64) -> f64,
{
    let objective = |t: f64| half_sq_from_chart(t, root(t));
    let m: Minimum = minimize_with(
        objective,
        Bracket::new(lo, hi)?,
        opts.min_tol,
        opts.scan_nodes,
        opts.max_iter,
    )?;
    Ok(Candidate {
        half_sq: m.value,
        theta: m.argmin,
        sqrt_v: root(m.argmin),
        branch,
        report: m.report,
    })
}

fn slanted(b: f64, g: f64, root: Root, lo: f64, hi: f64, branch: Branch, opts: &SolverOptions) -> Result<Candidate> {
    minimize_root(|t| root_at(b, g, t, root), lo, hi, branch, opts)
}

/// Picks the smaller of two branch minima; near-ties go to `plus`.
fn better(plus: Candidate, minus: Candidate) -> Candidate {
    let scale = plus.half_sq.abs().max(1.0);
    if minus.half_sq < plus.half_sq - BRANCH_TIE_TOL * scale {
        minus
    } else {
        plus
    }
}

// ---------------------------------------------------------------------------
// Vertical lines

/// Intervals of `θ` over which `Λ(β, θ)` can be minimized for the vertical
/// line `x = β`. All of them contain the minimizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerticalInterval {
    /// `[β/11, 2β]` for `β < π/2`, `[1/7, π]` otherwise. The default.
    Standard,
    /// Bracketed by the critical point on the line and a separating
    /// horizontal line: `[δ(β, τ(β)), x₀⁻¹(β)]` with `τ = (x₀⁻¹(β)/2 + 1)²`
    /// for `β < π/2`; `[δ(β, τ̂(β)), π]` otherwise.
    Tight,
    /// `[δ(β, (β+1)²), 2β]` for `β < π/2`, `[δ(β, 5β), π]` otherwise.
    Simple,
    /// Every level set meeting the line: `(0, ψ⁻¹(β)]`, opened at
    /// `1e-6·min(1, β)` (small `θ` corresponds to `v → ∞`).
    Full,
    /// `(0, π]`, which is all that matters when `β ≥ π/2`; opened like
    /// `Full`.
    CloseRange,
}

/// The `θ`-interval of `variant` for the vertical line `x = β`, `β > 0`.
pub fn vertical_interval(beta: f64, variant: VerticalInterval) -> Result<Bracket> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(domain("vertical_interval", beta, "beta > 0"));
    }
    let near = beta < FRAC_PI_2;
    let tiny = 1e-6 * beta.min(1.0);
    let (lo, hi) = match variant {
        VerticalInterval::Standard => {
            if near {
                (beta / 11.0, 2.0 * beta)
            } else {
                (1.0 / 7.0, PI)
            }
        }
        VerticalInterval::Tight => {
            if near {
                let t0 = x_crit_inv(beta)?;
                let tau = (0.5 * t0 + 1.0).powi(2);
                (delta_of(beta, tau)?.value(), t0)
            } else {
                let w = 2.0 * PI * beta;
                let z = (w + 8.0 - 4.0 * (w + 4.0 - PI * PI).sqrt()).sqrt();
                let tau = (0.5 * z + 1.0).powi(2);
                (delta_of(beta, tau)?.value(), PI)
            }
        }
        VerticalInterval::Simple => {
            if near {
                (delta_of(beta, (beta + 1.0).powi(2))?.value(), 2.0 * beta)
            } else {
                (delta_of(beta, 5.0 * beta)?.value(), PI)
            }
        }
        VerticalInterval::Full => (tiny, psi_inv(beta)?),
        VerticalInterval::CloseRange => {
            if near {
                return Err(domain("vertical_interval", beta, "beta >= pi/2 for close-range"));
            }
            (tiny, PI)
        }
    };
    Bracket::new(lo, hi)
}

/// `D̂_{β,0}` for `β > 0`, minimizing `Λ(β, ·)` over the chosen interval.
pub fn dist_to_vertical(beta: f64, variant: VerticalInterval, opts: &SolverOptions) -> Result<DistanceSolution> {
    let br = vertical_interval(beta, variant)?;
    let c = minimize_root(|t| vertical_root(beta, t), br.lo, br.hi, Branch::VerticalKp, opts)?;
    Ok(finish(c, beta, 0.0, false))
}

// ---------------------------------------------------------------------------
// Dispatch

fn finish(c: Candidate, b: f64, g: f64, mirrored: bool) -> DistanceSolution {
    let v = c.sqrt_v * c.sqrt_v;
    let x = b + g * v;
    let (x, theta) = if mirrored { (-x, -c.theta) } else { (x, c.theta) };
    DistanceSolution::from_half_squared(
        c.half_sq,
        ManifoldPoint { x, v },
        DeltaAngle::new(theta).unwrap_or(DeltaAngle::ZERO),
        c.branch,
        c.report,
    )
}

fn on_line() -> DistanceSolution {
    DistanceSolution::from_value(
        0.0,
        ManifoldPoint::BASE,
        DeltaAngle::ZERO,
        Branch::OnLine,
        SolveReport::closed_form(0.0),
    )
}

/// Distance from `(0, 1)` to `L_{β,γ}` with default tolerances.
pub fn dist_to_line(beta: f64, gamma: f64) -> Result<DistanceSolution> {
    dist_to_line_with(beta, gamma, &SolverOptions::default())
}

pub fn dist_to_line_with(beta: f64, gamma: f64, opts: &SolverOptions) -> Result<DistanceSolution> {
    LineParams::new(beta, gamma)?;
    if beta + gamma == 0.0 {
        return Ok(on_line());
    }
    // D_{β,γ} = D_{-β,-γ}: bring the line into β ≥ 0, and γ > 0 when β = 0.
    let (b, g, mirrored) = if beta < 0.0 || (beta == 0.0 && gamma < 0.0) {
        (-beta, -gamma, true)
    } else {
        (beta, gamma, false)
    };

    if g == 0.0 {
        let mut s = dist_to_vertical(b, VerticalInterval::Standard, opts)?;
        if mirrored {
            s.argmin.x = -s.argmin.x;
            s.theta_at_argmin = DeltaAngle::new(-s.theta_at_argmin.value())?;
        }
        return Ok(s);
    }

    if g < 0.0 {
        let a = -g;
        if b > a {
            // Only the part of the line with δ ≥ 0 can be nearest.
            let c = slanted(b, g, Root::Plus, 0.0, psi_inv(b)?, Branch::LeftSlanted, opts)?;
            return Ok(finish(c, b, g, mirrored));
        }
        // Only δ ≤ 0 matters: mirror to L_{-b,a} and δ ≥ 0, where the
        // single nonnegative intersection is the minus root.
        let hi = clip_below(psi_inv(a)?);
        let c = slanted(-b, a, Root::Minus, 0.0, hi, Branch::LeftSlanted, opts)?;
        return Ok(finish(c, -b, a, !mirrored));
    }

    // γ > 0 from here on.
    if b == 0.0 {
        let cap = if g < FRAC_PI_2 { 2.0 * g } else { PI };
        let hi = cap.min(clip_below(psi_inv(g)?));
        let c = slanted(0.0, g, Root::Minus, 0.0, hi, Branch::SlantedMinus, opts)?;
        return Ok(finish(c, b, g, mirrored));
    }

    let pb = psi_inv(b)?;
    let c = if g == b {
        let lo = eta_inv(b)?;
        let hi = if b < FRAC_PI_2 { theta_crit(LineParams { beta: b, gamma: g })?.value().min(pb) } else { pb };
        slanted(b, g, Root::Plus, lo, hi.max(lo), Branch::SlantedPlus, opts)?
    } else if g > b {
        let lo = eta_alpha_inv(g, b)?;
        if b > FRAC_PI_2 && g > FRAC_PI_2 + 2.0 / (2.0 * b - PI) {
            slanted(b, g, Root::Plus, lo, pb, Branch::SlantedPlus, opts)?
        } else {
            let tc = theta_crit(LineParams { beta: b, gamma: g })?.value();
            let hi_plus = tc.min(pb).max(lo);
            let hi_minus = tc.min(clip_below(psi_inv(g)?)).max(lo);
            let plus = slanted(b, g, Root::Plus, lo, hi_plus, Branch::SlantedPlus, opts)?;
            let minus = slanted(b, g, Root::Minus, lo, hi_minus, Branch::SlantedMinus, opts)?;
            better(plus, minus)
        }
    } else {
        let lo = eta_alpha_inv(b, g)?;
        let hi_minus = clip_below(psi_inv(g)?).max(lo);
        let plus = slanted(b, g, Root::Plus, lo, pb, Branch::SlantedPlus, opts)?;
        let minus = slanted(b, g, Root::Minus, lo, hi_minus, Branch::SlantedMinus, opts)?;
        better(plus, minus)
    };
    Ok(finish(c, b, g, mirrored))
}

fn clip_below(end: f64) -> f64 {
    end - OPEN_END_CLIP
}

/// Distance to the tangent line of `Γ_θ` at its critical point,
/// `L_{θ/2, tan(θ/2)}`, which is exactly `θ` for `0 < θ < π`.
pub fn dist_to_tangent_line(theta: f64) -> Result<DistanceSolution> {
    if !(theta > 0.0 && theta < PI) {
        return Err(domain("dist_to_tangent_line", theta, "0 < theta < pi"));
    }
    Ok(DistanceSolution::from_value(
        theta,
        critical_point(theta)?,
        DeltaAngle::new(theta)?,
        Branch::TangentExact,
        SolveReport::closed_form(theta),
    ))
}

/// `(β, γ)` of the tangent line `T_θ`.
pub fn tangent_line(theta: f64) -> Result<LineParams> {
    if !(theta > 0.0 && theta < PI) {
        return Err(domain("tangent_line", theta, "0 < theta < pi"));
    }
    LineParams::new(0.5 * theta, (0.5 * theta).tan())
}

// ---------------------------------------------------------------------------
// Correlated model

/// The line `L_{ξ,η}` such that the correlated distance from `p0` to
/// `L_{β,γ}` equals `(√v0 / c) D̂_{ξ,η}`.
pub fn reduce_line(frame: CorrelationFrame, p0: ManifoldPoint, line: LineParams) -> Result<LineParams> {
    if !(p0.v > 0.0) {
        return Err(domain("reduce_line", p0.v, "v0 > 0"));
    }
    let rb = frame.rho_bar();
    let CorrelationFrame { c, rho } = frame;
    LineParams::new(
        (c * line.beta - c * p0.x + rho * p0.v) / (p0.v * rb),
        (c * line.gamma - rho) / rb,
    )
}

/// Correlated-model distance from `p0` (`v0 > 0`) to `L_{β,γ}`.
pub fn dist_to_line_correlated(frame: CorrelationFrame, p0: ManifoldPoint, beta: f64, gamma: f64) -> Result<f64> {
    let reduced = reduce_line(frame, p0, LineParams::new(beta, gamma)?)?;
    let s = dist_to_line(reduced.beta, reduced.gamma)?;
    Ok(p0.v.sqrt() / frame.c * s.value)
}

// ---------------------------------------------------------------------------
// Brute-force reference

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleOptions {
    /// Grid nodes, uniform in `√v`.
    pub nodes: usize,
    pub v_max_start: f64,
    pub max_doublings: usize,
    /// Tolerance on `√v` for the final refinement.
    pub refine_tol: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            nodes: 4096,
            v_max_start: 16.0,
            max_doublings: 20,
            refine_tol: 1e-10,
        }
    }
}

/// Minimizes `objective(v)` over `v ≥ 0` by a grid in `√v` on `[0, V]`,
/// doubling `V` until `lower_bound(V)` exceeds the best grid value, then
/// refining around the best node. `lower_bound(V)` must bound the objective
/// from below on `[V, ∞)`.
pub fn minimize_over_half_line<F, L>(objective: F, lower_bound: L, opts: &OracleOptions) -> Result<Minimum>
where
    F: Fn(f64) -> f64,
    L: Fn(f64) -> f64,
{
    let n = opts.nodes.max(3);
    let mut v_max = opts.v_max_start;
    let mut evaluations = 0;
    let (mut best_u, mut best, mut cell);
    let mut doublings = 0;
    loop {
        let u_max = v_max.sqrt();
        let du = u_max / (n - 1) as f64;
        best_u = 0.0;
        best = f64::INFINITY;
        for i in 0..n {
            let u = i as f64 * du;
            let y = objective(u * u);
            if !y.is_finite() {
                return Err(GeomError::NonFiniteSample { node: u * u, value: y });
            }
            if y < best {
                best = y;
                best_u = u;
            }
        }
        evaluations += n;
        cell = du;
        if lower_bound(v_max) > best || doublings == opts.max_doublings {
            break;
        }
        v_max *= 2.0;
        doublings += 1;
    }
    let br = Bracket::new((best_u - cell).max(0.0), best_u + cell)?;
    let m = minimize_with(|u| objective(u * u), br, opts.refine_tol, 64, 500)?;
    let (u, value) = if m.value < best { (m.argmin, m.value) } else { (best_u, best) };
    Ok(Minimum {
        argmin: u * u,
        value,
        report: SolveReport {
            value: u * u,
            iterations: evaluations + m.report.iterations,
            residual: m.report.residual,
            method: Method::GridRefine,
        },
    })
}

/// Distance to `L_{β,γ}` by direct minimization of the point distance along
/// the line. Slow; used as a reference for [`dist_to_line`].
pub fn oracle_dist(beta: f64, gamma: f64) -> Result<DistanceSolution> {
    oracle_dist_with(beta, gamma, &OracleOptions::default())
}

pub fn oracle_dist_with(beta: f64, gamma: f64, opts: &OracleOptions) -> Result<DistanceSolution> {
    LineParams::new(beta, gamma)?;
    let at = |v: f64| ManifoldPoint { x: beta + gamma * v, v };
    let objective = |v: f64| dist(ManifoldPoint::BASE, at(v)).unwrap_or(f64::NAN);
    let bound = |v: f64| crate::functions::t_bound(ManifoldPoint::BASE, at(v));
    let m = minimize_over_half_line(objective, bound, opts)?;
    let p = at(m.argmin);
    Ok(DistanceSolution::from_value(
        m.value,
        p,
        delta_of(p.x, p.v)?,
        Branch::Oracle,
        m.report,
    ))
}
