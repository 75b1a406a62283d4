//! The level sets `Γ_θ = {p : δ((0,1), p) = θ}` and the critical curve.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{domain, GeomError, Result};
use crate::functions::{k_fn, level_sqrt_v, psi_ext, t_minus_sin, DeltaAngle, LineParams};
use crate::inverse::{psi_inv, x_crit_inv, zeta_inv};
use crate::line::{Branch, DistanceSolution};
use crate::point::ManifoldPoint;
use crate::solvers::SolveReport;

/// One point of a sampled level curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelCurveSample {
    pub theta: DeltaAngle,
    pub x: f64,
    pub v: f64,
    /// `dv/dx`.
    pub slope: f64,
    /// `d²v/dx²`.
    pub curvature: f64,
}

/// Maps `(θ, x)` to the equivalent query on `Γ_{|θ|}`, checking the domain.
fn positive_side(func: &'static str, theta: DeltaAngle, x: f64) -> Result<(f64, f64)> {
    let t = theta.value();
    if t == 0.0 {
        return Err(domain(func, t, "theta != 0"));
    }
    if !x.is_finite() {
        return Err(domain(func, x, "finite x"));
    }
    let (t, x) = if t < 0.0 { (-t, -x) } else { (t, x) };
    if x < psi_ext(t) {
        return Err(domain(func, x, "|x| >= psi(|theta|) on the side of theta"));
    }
    Ok((t, x))
}

/// `(√v, N)` on `Γ_t`, `t > 0`, `x ≥ ψ(t)`.
fn sqrt_v_and_n(t: f64, x: f64) -> (f64, f64) {
    let (s, radicand) = level_sqrt_v(t, x);
    let sh = (0.5 * t).sin();
    (s.max(0.0), sh * sh * radicand.max(0.0))
}

/// `v` such that `(x, v) ∈ Γ_θ`; `Γ_{-θ}` is the mirror image of `Γ_θ`.
pub fn curve_v(theta: DeltaAngle, x: f64) -> Result<f64> {
    let (t, x) = positive_side("curve_v", theta, x)?;
    let (s, _) = sqrt_v_and_n(t, x);
    Ok(s * s)
}

/// `curve_v` evaluated as the difference `v₁ - v₂` of an affine function
/// and the square root of an affine function. Loses accuracy near
/// `x = ψ(θ)`, where the two terms nearly cancel.
pub fn curve_v_split(theta: DeltaAngle, x: f64) -> Result<f64> {
    let (t, x) = positive_side("curve_v_split", theta, x)?;
    let s = t_minus_sin(t);
    let c1 = 1.0 - t.cos();
    let k = k_fn(t);
    let sh = (0.5 * t).sin();
    let v1 = c1 / s * x + 2.0 * k * k / (s * s) - 1.0;
    let radicand = 2.0 * s * x + 2.0 * c1 - t * t;
    let v2 = 2.0 * sh * k / (s * s) * radicand.max(0.0).sqrt();
    Ok(v1 - v2)
}

/// `dv/dx` along `Γ_θ`; zero at the boundary point `x = ψ(θ)`.
pub fn curve_slope(theta: DeltaAngle, x: f64) -> Result<f64> {
    let sign = theta.value().signum();
    let (t, x) = positive_side("curve_slope", theta, x)?;
    let (s, n) = sqrt_v_and_n(t, x);
    // (1 - cos θ)/(θ - sin θ) · (1 - k/√N) = (1 - cos θ) √v / √N
    Ok(sign * (1.0 - t.cos()) * s / n.sqrt())
}

/// `d²v/dx²` along `Γ_θ`.
///
/// `N(θ, ψ(θ)) = k(θ)² > 0`, so the curvature stays finite at the boundary
/// point; [`GeomError::Pole`] is only reachable if `N` underflows to zero.
pub fn curve_curvature(theta: DeltaAngle, x: f64) -> Result<f64> {
    let (t, xp) = positive_side("curve_curvature", theta, x)?;
    let (_, n) = sqrt_v_and_n(t, xp);
    if n == 0.0 {
        return Err(GeomError::Pole {
            func: "curve_curvature",
            theta: theta.value(),
            x,
        });
    }
    let c1 = 1.0 - t.cos();
    Ok(k_fn(t) * c1 * c1 / (2.0 * n * n.sqrt()))
}

/// Samples `Γ_θ` at `samples` equally spaced abscissae between the boundary
/// point `±ψ(|θ|)` and `±x_max`.
pub fn sample_level_curve(theta: DeltaAngle, x_max: f64, samples: usize) -> Result<Vec<LevelCurveSample>> {
    let t = theta.value();
    if t == 0.0 {
        return Err(domain("sample_level_curve", t, "theta != 0"));
    }
    let start = psi_ext(t.abs());
    if !(x_max >= start) || !x_max.is_finite() {
        return Err(domain("sample_level_curve", x_max, "x_max >= psi(|theta|)"));
    }
    if samples == 0 {
        return Ok(Vec::new());
    }
    let sign = t.signum();
    let step = if samples > 1 {
        (x_max - start) / (samples - 1) as f64
    } else {
        0.0
    };
    (0..samples)
        .map(|i| {
            let ax = if i + 1 == samples && samples > 1 {
                x_max
            } else {
                start + i as f64 * step
            };
            let x = sign * ax;
            Ok(LevelCurveSample {
                theta,
                x,
                v: curve_v(theta, x)?,
                slope: curve_slope(theta, x)?,
                curvature: curve_curvature(theta, x)?,
            })
        })
        .collect()
}

/// Distance from `(0, 1)` to `Γ_θ`.
///
/// For `|θ| < π` the nearest point is the critical point `P_|θ|` at
/// distance `|θ|`; for `π ≤ |θ| < 2π` it is the boundary point `(ψ(θ), 0)`
/// at distance `|θ| / sin(|θ|/2)`.
pub fn dist_to_level_set(theta: DeltaAngle) -> DistanceSolution {
    let t = theta.value();
    let a = t.abs();
    let sign = if t < 0.0 { -1.0 } else { 1.0 };
    let (value, argmin) = if a == 0.0 {
        (0.0, ManifoldPoint::BASE)
    } else if a < PI {
        let h = 0.5 * a;
        let c = h.cos();
        (a, ManifoldPoint { x: sign * 0.5 * (a + a.sin()), v: c * c })
    } else {
        (a / (0.5 * a).sin(), ManifoldPoint { x: sign * psi_ext(a), v: 0.0 })
    };
    DistanceSolution::from_value(value, argmin, theta, Branch::LevelSet, SolveReport::closed_form(t))
}

/// Distance `2|√τ - 1|` from `(0, 1)` to the horizontal line `v = τ`.
pub fn dist_to_horizontal(tau: f64) -> Result<f64> {
    if !(tau >= 0.0) || !tau.is_finite() {
        return Err(domain("dist_to_horizontal", tau, "tau >= 0"));
    }
    Ok(2.0 * (tau.sqrt() - 1.0).abs())
}

/// [`dist_to_horizontal`] with its nearest point `(0, τ)`.
pub fn horizontal_solution(tau: f64) -> Result<DistanceSolution> {
    let value = dist_to_horizontal(tau)?;
    Ok(DistanceSolution::from_value(
        value,
        ManifoldPoint { x: 0.0, v: tau },
        DeltaAngle::ZERO,
        Branch::Horizontal,
        SolveReport::closed_form(0.0),
    ))
}

/// The critical point `P_θ = ((θ + sin θ)/2, cos²(θ/2))`, the point of `Γ_θ`
/// nearest to `(0, 1)`, for `0 ≤ θ ≤ π`.
pub fn critical_point(theta: f64) -> Result<ManifoldPoint> {
    if !(0.0..=PI).contains(&theta) {
        return Err(domain("critical_point", theta, "0 <= theta <= pi"));
    }
    let c = (0.5 * theta).cos();
    Ok(ManifoldPoint {
        x: 0.5 * (theta + theta.sin()),
        v: c * c,
    })
}

/// The critical curve as a graph: `v = (1 + cos x₀⁻¹(x))/2`, `0 ≤ x ≤ π/2`.
pub fn critical_curve_v(x: f64) -> Result<f64> {
    let t = x_crit_inv(x)?;
    Ok(0.5 * (1.0 + t.cos()))
}

/// The `θ` whose critical point lies on `L_{β,γ}` (`β, γ ≥ 0`): `ζ_γ⁻¹(β)`
/// for `β ≤ π/2`, and `ψ⁻¹(β)` (boundary critical point) beyond.
pub fn theta_crit(line: LineParams) -> Result<DeltaAngle> {
    let LineParams { beta, gamma } = line;
    if !(beta >= 0.0) {
        return Err(domain("theta_crit", beta, "beta >= 0"));
    }
    if !(gamma >= 0.0) {
        return Err(domain("theta_crit", gamma, "gamma >= 0"));
    }
    let t = if beta <= FRAC_PI_2 {
        zeta_inv(gamma, beta)?
    } else {
        psi_inv(beta)?
    };
    DeltaAngle::new(t)
}
