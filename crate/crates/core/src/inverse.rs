//! Inverses of the monotone functions in [`crate::functions`].

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{domain, Result};
use crate::functions::{eta_alpha_ext, eta_ext, psi_ext};
use crate::solvers::{invert_toward_open_end, solve_monotone, Bracket};

/// Inverses are solved to a few ulps of the root.
const INVERSE_TOL: f64 = 0.0;

fn check_positive(func: &'static str, y: f64) -> Result<()> {
    if y > 0.0 && y.is_finite() {
        Ok(())
    } else {
        Err(domain(func, y, "y > 0"))
    }
}

/// `ψ⁻¹ : (0, ∞) → (0, 2π)`.
pub fn psi_inv(y: f64) -> Result<f64> {
    check_positive("psi_inv", y)?;
    invert_toward_open_end(psi_ext, 0.0, TAU, y, INVERSE_TOL)
}

/// `η⁻¹ : (0, ∞) → (0, 2π)`.
pub fn eta_inv(y: f64) -> Result<f64> {
    check_positive("eta_inv", y)?;
    invert_toward_open_end(eta_ext, 0.0, TAU, y, INVERSE_TOL)
}

/// `η_α⁻¹ : (0, ∞) → (0, ψ⁻¹(α))`.
pub fn eta_alpha_inv(alpha: f64, y: f64) -> Result<f64> {
    check_positive("eta_alpha_inv", alpha)?;
    check_positive("eta_alpha_inv", y)?;
    let end = psi_inv(alpha)?;
    let f = |t: f64| {
        if psi_ext(t) >= alpha {
            f64::MAX
        } else {
            eta_alpha_ext(alpha, t)
        }
    };
    invert_toward_open_end(f, 0.0, end, y, INVERSE_TOL)
}

/// `ζ_γ⁻¹ : [-γ, π/2] → [0, π]` for `γ ≥ 0`.
pub fn zeta_inv(gamma: f64, y: f64) -> Result<f64> {
    if !(gamma >= 0.0) || !gamma.is_finite() {
        return Err(domain("zeta_inv", gamma, "gamma >= 0"));
    }
    if !(y >= -gamma && y <= FRAC_PI_2) {
        return Err(domain("zeta_inv", y, "-gamma <= y <= pi/2"));
    }
    let f = |t: f64| 0.5 * (t + t.sin() - gamma * (1.0 + t.cos()));
    solve_monotone(f, Bracket { lo: 0.0, hi: PI }, y, INVERSE_TOL).map(|r| r.value)
}

/// `x₀⁻¹ : [0, π/2] → [0, π]`, the inverse of `θ ↦ (θ + sin θ)/2`.
pub fn x_crit_inv(y: f64) -> Result<f64> {
    if !(0.0..=FRAC_PI_2).contains(&y) {
        return Err(domain("x_crit_inv", y, "0 <= y <= pi/2"));
    }
    let f = |t: f64| 0.5 * (t + t.sin());
    solve_monotone(f, Bracket { lo: 0.0, hi: PI }, y, INVERSE_TOL).map(|r| r.value)
}
