//! Scalar functions of the Heston geometry with the base point fixed at
//! `(0, 1)`.
//!
//! Most of these are ratios whose numerator and denominator both vanish to
//! third order at `θ = 0` (`θ - sin θ`, `2 sin(θ/2) - θ cos(θ/2)`), and a few
//! blow up as `θ → ±2π`. The two cancelling building blocks are evaluated by
//! their power series for small arguments, so the ratio forms keep full
//! relative precision down to `|θ| = SMALL_THETA`. Below that threshold the
//! ratios themselves switch to truncated Taylor expansions.
//!
//! Functions that are only meaningful on `0 < θ < 2π` return
//! [`GeomError::Domain`] outside it; negative angles are handled by the
//! mirror symmetry `(x, θ) ↦ (-x, -θ)` where the caller needs them.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{domain, GeomError, Result};
use crate::point::ManifoldPoint;

/// Below this `|θ|` the ratio functions use their Taylor expansions.
pub const SMALL_THETA: f64 = 1e-4;

/// A discriminant with `|Δ| ≤ TANGENCY_TOL · max(1, A(θ)²)` is a tangency.
pub const TANGENCY_TOL: f64 = 1e-12;

/// Clamp applied to the scaled discriminant at numerically solved interval
/// endpoints, where the exact value is zero.
pub(crate) const ENDPOINT_DISC_TOL: f64 = 1e-9;

/// The angle `δ ∈ (-2π, 2π)` solving the distance equation; it also indexes
/// the level sets `Γ_θ` of that solution.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DeltaAngle(f64);

impl DeltaAngle {
    pub const ZERO: DeltaAngle = DeltaAngle(0.0);

    pub fn new(theta: f64) -> Result<Self> {
        if theta.is_finite() && theta.abs() < TAU {
            Ok(DeltaAngle(theta))
        } else {
            Err(domain("DeltaAngle::new", theta, "-2pi < theta < 2pi"))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `|δ| ≤ π`: the point is δ-close to `(0, 1)`.
    pub fn is_close(self) -> bool {
        self.0.abs() <= PI
    }
}

impl From<DeltaAngle> for f64 {
    fn from(d: DeltaAngle) -> f64 {
        d.0
    }
}

/// The line `{x = β + γ v, v ≥ 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineParams {
    /// Abscissa where the line meets `v = 0`.
    pub beta: f64,
    /// Slope `dx/dv`.
    pub gamma: f64,
}

impl LineParams {
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        if !beta.is_finite() {
            return Err(GeomError::InvalidInput {
                what: "beta",
                value: beta,
            });
        }
        if !gamma.is_finite() {
            return Err(GeomError::InvalidInput {
                what: "gamma",
                value: gamma,
            });
        }
        Ok(LineParams { beta, gamma })
    }

    #[inline]
    pub fn x_at(&self, v: f64) -> f64 {
        self.beta + self.gamma * v
    }

    /// The mirror image under `x ↦ -x`.
    pub fn reflected(&self) -> LineParams {
        LineParams {
            beta: -self.beta,
            gamma: -self.gamma,
        }
    }

    /// True when `(0, 1)` lies on the line.
    pub fn passes_through_base(&self) -> bool {
        self.beta + self.gamma == 0.0
    }
}

// ---------------------------------------------------------------------------
// Cancellation-free building blocks

/// `t - sin t`.
pub(crate) fn t_minus_sin(t: f64) -> f64 {
    if t.abs() >= 1.0 {
        return t - t.sin();
    }
    let t2 = t * t;
    let mut term = t * t2 / 6.0;
    let mut sum = term;
    for n in 1..40 {
        let n = n as f64;
        term *= -t2 / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// `sin h - h cos h`.
pub(crate) fn sin_minus_t_cos(h: f64) -> f64 {
    if h.abs() >= 1.0 {
        return h.sin() - h * h.cos();
    }
    let h2 = h * h;
    let mut term = h * h2 / 3.0;
    let mut sum = term;
    for n in 1..40 {
        let n = n as f64;
        term *= -h2 / (2.0 * n * (2.0 * n + 3.0));
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// `2 sin(θ/2) - θ cos(θ/2)`; positive on `(0, 2π)`.
#[inline]
pub(crate) fn k_fn(theta: f64) -> f64 {
    2.0 * sin_minus_t_cos(0.5 * theta)
}

/// `θ² / (1 - cos θ)`, extended by its limit 2 at `θ = 0`.
pub(crate) fn arc_weight(theta: f64) -> f64 {
    let h = 0.5 * theta;
    if h.abs() < SMALL_THETA {
        let h2 = h * h;
        return 2.0 * (1.0 + h2 / 3.0 + h2 * h2 / 15.0);
    }
    let r = h / h.sin();
    2.0 * r * r
}

fn check_open_circle(func: &'static str, theta: f64) -> Result<()> {
    if theta.is_finite() && theta.abs() < TAU {
        Ok(())
    } else {
        Err(domain(func, theta, "-2pi < theta < 2pi"))
    }
}

fn check_positive_arc(func: &'static str, theta: f64) -> Result<()> {
    if theta.is_finite() && theta > 0.0 && theta < TAU {
        Ok(())
    } else {
        Err(domain(func, theta, "0 < theta < 2pi"))
    }
}

fn check_half_turn(func: &'static str, theta: f64) -> Result<()> {
    if theta.is_finite() && (0.0..=PI).contains(&theta) {
        Ok(())
    } else {
        Err(domain(func, theta, "0 <= theta <= pi"))
    }
}

// ---------------------------------------------------------------------------
// ψ, A, B

fn psi_series(theta: f64) -> f64 {
    let t2 = theta * theta;
    theta * (1.0 / 3.0 + t2 * (1.0 / 90.0 + t2 * (1.0 / 2520.0 + t2 / 75600.0)))
}

fn psi_closed(theta: f64) -> f64 {
    let s = (0.5 * theta).sin();
    t_minus_sin(theta) / (2.0 * s * s)
}

/// ψ on `(-2π, 2π)` including the removable point `ψ(0) = 0`.
pub(crate) fn psi_ext(theta: f64) -> f64 {
    if theta.abs() < SMALL_THETA {
        psi_series(theta)
    } else {
        psi_closed(theta)
    }
}

/// `ψ(θ) = (θ - sin θ) / (1 - cos θ)`, the abscissa where `Γ_θ` meets the
/// boundary. Odd, strictly increasing from 0 to ∞ on `(0, 2π)`.
pub fn psi(theta: f64) -> Result<f64> {
    check_open_circle("psi", theta)?;
    if theta == 0.0 {
        return Err(domain("psi", theta, "theta != 0"));
    }
    Ok(psi_ext(theta))
}

fn coef_a_series(theta: f64) -> f64 {
    let t2 = theta * theta;
    -0.5 - t2 * (1.0 / 80.0 + t2 * (19.0 / 134_400.0 - t2 / 16_128_000.0))
}

fn coef_a_closed(theta: f64) -> f64 {
    -k_fn(theta) / t_minus_sin(theta)
}

/// `A` on `(-2π, 2π)`; even, with `A(0) = -1/2`.
pub(crate) fn coef_a_ext(theta: f64) -> f64 {
    if theta.abs() < SMALL_THETA {
        coef_a_series(theta)
    } else {
        coef_a_closed(theta)
    }
}

/// `A(θ) = (θ cos(θ/2) - 2 sin(θ/2)) / (θ - sin θ)`; negative, with `-A`
/// strictly increasing on `(0, 2π)`.
pub fn coef_a(theta: f64) -> Result<f64> {
    check_positive_arc("coef_a", theta)?;
    Ok(coef_a_ext(theta))
}

fn coef_b_series(theta: f64) -> f64 {
    let t2 = theta * theta;
    3.0 / theta - theta * (1.0 / 10.0 + t2 * (1.0 / 4200.0 - t2 / 126_000.0))
}

fn coef_b_closed(theta: f64) -> f64 {
    let s = (0.5 * theta).sin();
    2.0 * s * s / t_minus_sin(theta)
}

/// `B(θ) = (1 - cos θ) / (θ - sin θ) = 1/ψ(θ)`; positive and strictly
/// decreasing on `(0, 2π)`.
pub fn coef_b(theta: f64) -> Result<f64> {
    check_positive_arc("coef_b", theta)?;
    Ok(if theta < SMALL_THETA {
        coef_b_series(theta)
    } else {
        coef_b_closed(theta)
    })
}

// ---------------------------------------------------------------------------
// f and Λ

/// Left-hand side of the distance equation `f(v, δ) = x` for the base
/// point `(0, 1)`.
///
/// Evaluated as `(√v - 1)² ψ(δ) + √v (δ + 2 sin(δ/2)) / (2 cos²(δ/4))`,
/// which is algebraically the same function but has no removable
/// singularity at `δ = 0`. Odd in `δ`, strictly increasing on `(-2π, 2π)`.
pub fn f_of(v: f64, delta: f64) -> Result<f64> {
    if !(v >= 0.0) || !v.is_finite() {
        return Err(domain("f_of", v, "v >= 0"));
    }
    check_open_circle("f_of", delta)?;
    Ok(f_unchecked(v, delta))
}

#[inline]
pub(crate) fn f_unchecked(v: f64, delta: f64) -> f64 {
    let r = v.sqrt();
    let c = (0.25 * delta).cos();
    (r - 1.0) * (r - 1.0) * psi_ext(delta)
        + r * (delta + 2.0 * (0.5 * delta).sin()) / (2.0 * c * c)
}

/// Half squared distance from `(0, 1)` to a point with chart coordinates
/// `(θ, √v = sqrt_v)`:  `θ²/(1 - cos θ) · ((√v - 1)² + 4 √v sin²(θ/4))`.
#[inline]
pub(crate) fn half_sq_from_chart(theta: f64, sqrt_v: f64) -> f64 {
    let q = (0.25 * theta).sin();
    let d = sqrt_v - 1.0;
    arc_weight(theta) * (d * d + 4.0 * sqrt_v * q * q)
}

/// `√v` of the point of `Γ_θ` (0 < θ < 2π) with abscissa `x`, together with
/// the radicand `2(θ - sin θ)x + 2(1 - cos θ) - θ²`.
///
/// Uses the rationalised root `(x(1 - cos θ) - (θ - sin θ)) / (√N + k)`,
/// which is negative exactly when `x < ψ(θ)`.
pub(crate) fn level_sqrt_v(theta: f64, x: f64) -> (f64, f64) {
    let h = 0.5 * theta;
    let sh = h.sin();
    let s = t_minus_sin(theta);
    let radicand = 2.0 * s * x - 4.0 * t_minus_sin(h) * (h + sh);
    if radicand < 0.0 {
        return (f64::NAN, radicand);
    }
    let root_n = sh * radicand.sqrt();
    let sqrt_v = (2.0 * sh * sh * x - s) / (root_n + k_fn(theta));
    (sqrt_v, radicand)
}

/// `Λ(x, θ)`: half the squared distance from `(0, 1)` to the point of `Γ_θ`
/// with abscissa `x`. Satisfies `Λ(x, θ) = Λ(-x, -θ)`.
pub fn lambda_big(x: f64, theta: f64) -> Result<f64> {
    check_open_circle("lambda_big", theta)?;
    if theta == 0.0 {
        return Err(domain("lambda_big", theta, "theta != 0"));
    }
    if !x.is_finite() {
        return Err(domain("lambda_big", x, "finite x"));
    }
    let (x, theta) = if theta < 0.0 { (-x, -theta) } else { (x, theta) };
    let (sqrt_v, radicand) = level_sqrt_v(theta, x);
    if radicand < 0.0 {
        return Err(domain(
            "lambda_big",
            x,
            "2(theta - sin theta)x + 2(1 - cos theta) - theta^2 >= 0",
        ));
    }
    Ok(half_sq_from_chart(theta, sqrt_v))
}

// ---------------------------------------------------------------------------
// η, η_α, ζ_γ, x₀, ξ

/// `η(θ) = ψ(θ)(1 - A(θ))`; strictly increasing from 0 to ∞ on `(0, 2π)`.
pub fn eta(theta: f64) -> Result<f64> {
    check_positive_arc("eta", theta)?;
    Ok(eta_ext(theta))
}

pub(crate) fn eta_ext(theta: f64) -> f64 {
    psi_ext(theta) * (1.0 - coef_a_ext(theta))
}

/// `η_α(θ) = ψ²A²/(α - ψ) + ψ`, defined for `0 < θ < ψ⁻¹(α)`.
pub fn eta_alpha(alpha: f64, theta: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(domain("eta_alpha", alpha, "alpha > 0"));
    }
    check_positive_arc("eta_alpha", theta)?;
    let p = psi_ext(theta);
    if p >= alpha {
        return Err(domain("eta_alpha", theta, "psi(theta) < alpha"));
    }
    Ok(eta_alpha_ext(alpha, theta))
}

pub(crate) fn eta_alpha_ext(alpha: f64, theta: f64) -> f64 {
    let p = psi_ext(theta);
    let ap = coef_a_ext(theta) * p;
    ap * ap / (alpha - p) + p
}

/// `ζ_γ(θ) = (θ + sin θ - γ(1 + cos θ)) / 2` on `[0, π]`; maps onto
/// `[-γ, π/2]`.
pub fn zeta(gamma: f64, theta: f64) -> Result<f64> {
    check_half_turn("zeta", theta)?;
    Ok(0.5 * (theta + theta.sin() - gamma * (1.0 + theta.cos())))
}

/// Abscissa `(θ + sin θ)/2` of the critical point `P_θ`, `θ ∈ [0, π]`.
pub fn x_crit(theta: f64) -> Result<f64> {
    check_half_turn("x_crit", theta)?;
    Ok(0.5 * (theta + theta.sin()))
}

/// `ξ(δ) = δ² / (δ - sin δ)`; decreasing on `(0, π]`, increasing on `[π, 2π)`.
pub fn xi(delta: f64) -> Result<f64> {
    check_positive_arc("xi", delta)?;
    Ok(delta * delta / t_minus_sin(delta))
}

// ---------------------------------------------------------------------------
// Intersections of L_{β,γ} with Γ_θ

/// `A(θ)² - (1 - γB(θ))(1 - βB(θ))`. Its sign decides whether the line meets
/// `Γ_θ`; a value within `TANGENCY_TOL · max(1, A²)` of zero is a tangency.
pub fn discriminant(beta: f64, gamma: f64, theta: f64) -> Result<f64> {
    check_positive_arc("discriminant", theta)?;
    let p = psi_ext(theta);
    let a = coef_a_ext(theta);
    Ok(a * a - (p - gamma) * (p - beta) / (p * p))
}

/// Roots `√v` of `(ψ - γ) s² - 2Aψ s + (ψ - β) = 0`, the intersection
/// equation multiplied through by `ψ(θ)`.
///
/// Valid for `0 ≤ θ < 2π` (at `θ = 0` it reduces to `x = 0`). Returns
/// `(S⁺, S⁻)`; `S⁻` is infinite when `ψ(θ) = γ`. `None` when the scaled
/// discriminant is negative beyond `clamp` (relative).
pub(crate) fn line_roots(beta: f64, gamma: f64, theta: f64, clamp: f64) -> Option<(f64, f64)> {
    let p = psi_ext(theta);
    let ap = coef_a_ext(theta) * p;
    let lead = p - gamma;
    let c = p - beta;
    let mut d = ap * ap - lead * c;
    if d < 0.0 {
        let scale = (ap * ap).max((lead * c).abs()).max(f64::MIN_POSITIVE);
        if d >= -clamp * scale {
            d = 0.0;
        } else {
            return None;
        }
    }
    // q ≤ 0 since A < 0; both divisions below are cancellation-free.
    let q = ap - d.sqrt();
    if q == 0.0 {
        // θ = 0 with (ψ - γ)(ψ - β) = 0: the double root s = 0.
        return Some((0.0, if lead != 0.0 { 0.0 } else { f64::NAN }));
    }
    let plus = c / q;
    let minus = if lead != 0.0 { q / lead } else { f64::INFINITY };
    Some((plus, minus))
}

fn checked_roots(func: &'static str, beta: f64, gamma: f64, theta: f64) -> Result<(f64, f64)> {
    check_positive_arc(func, theta)?;
    let p = psi_ext(theta);
    if (p - gamma).abs() <= 4.0 * f64::EPSILON * p.abs().max(gamma.abs()) {
        return Err(GeomError::DivisionDegenerate { func, theta });
    }
    let a = coef_a_ext(theta);
    let disc = discriminant(beta, gamma, theta)?;
    if disc < -TANGENCY_TOL * a.mul_add(a, 0.0).max(1.0) {
        return Err(domain(func, disc, "discriminant >= 0"));
    }
    line_roots(beta, gamma, theta, f64::INFINITY)
        .ok_or_else(|| domain(func, disc, "discriminant >= 0"))
}

/// `S⁺_{β,γ}(θ) = (A + √Δ) / (1 - γB)`. The result may be negative, in which
/// case that branch has no intersection.
pub fn s_plus(beta: f64, gamma: f64, theta: f64) -> Result<f64> {
    checked_roots("s_plus", beta, gamma, theta).map(|r| r.0)
}

/// `S⁻_{β,γ}(θ) = (A - √Δ) / (1 - γB)`.
pub fn s_minus(beta: f64, gamma: f64, theta: f64) -> Result<f64> {
    checked_roots("s_minus", beta, gamma, theta).map(|r| r.1)
}

/// `S_β(θ) = (1 - βB(θ)) / (2A(θ))`, the single root when `γ = ψ(θ)`.
pub fn s_tangent(beta: f64, theta: f64) -> Result<f64> {
    check_positive_arc("s_tangent", theta)?;
    let p = psi_ext(theta);
    Ok((p - beta) / (2.0 * coef_a_ext(theta) * p))
}

fn lambda_branch(func: &'static str, sqrt_v: f64, theta: f64) -> Result<f64> {
    if sqrt_v < 0.0 || !sqrt_v.is_finite() {
        return Err(GeomError::NoIntersection { func, sqrt_v });
    }
    Ok(half_sq_from_chart(theta, sqrt_v))
}

/// `Λ⁺_{β,γ}(θ)`: half squared distance to the intersection `√v = S⁺`.
pub fn lambda_plus(beta: f64, gamma: f64, theta: f64) -> Result<f64> {
    let s = s_plus(beta, gamma, theta)?;
    lambda_branch("lambda_plus", s, theta)
}

/// `Λ⁻_{β,γ}(θ)`: half squared distance to the intersection `√v = S⁻`.
pub fn lambda_minus(beta: f64, gamma: f64, theta: f64) -> Result<f64> {
    let s = s_minus(beta, gamma, theta)?;
    lambda_branch("lambda_minus", s, theta)
}

// ---------------------------------------------------------------------------
// Bounds

const PI2_OVER_12: f64 = PI * PI / 12.0;

/// Invertible majorant `g(v, δ) ≥ f(v, δ)` on `0 < δ < 2π`.
pub fn g_major(v: f64, delta: f64) -> Result<f64> {
    if !(v >= 0.0) || !v.is_finite() {
        return Err(domain("g_major", v, "v >= 0"));
    }
    check_positive_arc("g_major", delta)?;
    let m = v + v.sqrt() + 1.0;
    Ok(if delta <= PI {
        PI2_OVER_12 * m * delta
    } else {
        PI.powi(8) / 12.0 * m * (TAU - delta).powi(-5)
    })
}

/// Lower bound `h(x, v) ≤ δ((0,1), (x, v))` for `x > 0`, the inverse of
/// [`g_major`] in `δ`.
pub fn h_lower(x: f64, v: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("h_lower", x, "x > 0"));
    }
    if !(v >= 0.0) || !v.is_finite() {
        return Err(domain("h_lower", v, "v >= 0"));
    }
    Ok(h_lower_unchecked(x, v))
}

pub(crate) fn h_lower_unchecked(x: f64, v: f64) -> f64 {
    let m = v + v.sqrt() + 1.0;
    if x <= PI2_OVER_12 * PI * m {
        x / (PI2_OVER_12 * m)
    } else {
        TAU - (PI.powi(8) * m / (12.0 * x)).powf(0.2)
    }
}

/// `T(p0, p1) = r / (√v0 + √v1 + √r)` with `r` the Euclidean distance;
/// `T ≤ d_H ≤ 12 T`.
pub fn t_bound(p0: ManifoldPoint, p1: ManifoldPoint) -> f64 {
    let r = (p0.x - p1.x).hypot(p0.v - p1.v);
    if r == 0.0 {
        return 0.0;
    }
    r / (p0.v.sqrt() + p1.v.sqrt() + r.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
    }

    /// Λ straight from its defining formula, usable away from θ = 0.
    fn lambda_direct(x: f64, t: f64) -> f64 {
        let s = t - t.sin();
        let c = 1.0 - t.cos();
        let rad = 2.0 * s * x + 2.0 * c - t * t;
        t * t / (s * s) * (s * x + 2.0 * c - t * t.sin() - c * rad.sqrt())
    }

    #[test]
    fn psi_known_values() {
        assert!(close(psi(PI).unwrap(), PI / 2.0, 1e-15));
        assert!(close(psi(1.5 * PI).unwrap(), 1.5 * PI + 1.0, 1e-15));
        assert!(close(psi(-1.0).unwrap(), -psi(1.0).unwrap(), 0.0));
        assert!(close(psi(1e-7).unwrap() / 1e-7, 1.0 / 3.0, 1e-12));
    }

    #[test]
    fn psi_domain() {
        assert!(psi(0.0).is_err());
        assert!(psi(TAU).is_err());
        assert!(psi(-7.0).is_err());
        assert!(psi(f64::NAN).is_err());
    }

    #[test]
    fn building_blocks_match_direct_away_from_zero() {
        for &t in &[0.5, 0.9, 0.999, 1.0, 2.0] {
            assert!(close(t_minus_sin(t), t - t.sin(), 1e-13));
            assert!(close(sin_minus_t_cos(t), t.sin() - t * t.cos(), 1e-13));
        }
    }

    #[test]
    fn series_and_closed_forms_agree_at_switch() {
        for &t in &[SMALL_THETA, 0.99 * SMALL_THETA, 1.01 * SMALL_THETA] {
            assert!(close(psi_series(t), psi_closed(t), 1e-9));
            assert!(close(coef_a_series(t), coef_a_closed(t), 1e-9));
            assert!(close(coef_b_series(t), coef_b_closed(t), 1e-9));
        }
        let below = f_of(2.0, SMALL_THETA * (1.0 - 1e-12)).unwrap();
        let above = f_of(2.0, SMALL_THETA * (1.0 + 1e-12)).unwrap();
        assert!(close(below, above, 1e-9));
        let below = lambda_big(0.5, SMALL_THETA * (1.0 - 1e-12)).unwrap();
        let above = lambda_big(0.5, SMALL_THETA * (1.0 + 1e-12)).unwrap();
        assert!(close(below, above, 1e-9));
    }

    #[test]
    fn f_of_examples() {
        assert!(close(f_of(1.0, PI).unwrap(), PI + 2.0, 1e-15));
        for &d in &[0.3, 1.0, 3.0, 5.5] {
            assert!(close(f_of(0.0, d).unwrap(), psi(d).unwrap(), 1e-15));
            assert_eq!(f_of(3.0, -d).unwrap(), -f_of(3.0, d).unwrap());
        }
        assert_eq!(f_of(2.0, 0.0).unwrap(), 0.0);
        assert!(f_of(-1.0, 1.0).is_err());
        assert!(f_of(1.0, TAU).is_err());
    }

    #[test]
    fn f_of_matches_defining_formula() {
        for &v in &[0.0f64, 0.3, 1.0, 7.0] {
            for &d in &[0.4f64, 1.7, 3.0, 4.4, 6.0] {
                let r: f64 = v.sqrt();
                let h: f64 = d / 2.0;
                let direct = ((v + 1.0) * (d - d.sin()) + 2.0 * r * (2.0 * h.sin() - d * h.cos()))
                    / (2.0 * h.sin().powi(2));
                assert!(close(f_of(v, d).unwrap(), direct, 1e-12), "v={v} d={d}");
            }
        }
    }

    #[test]
    fn lambda_big_examples() {
        for &t in &[0.3f64, 1.0, 2.0, 3.0, 4.0, 5.5] {
            let x0 = 0.5 * (t + t.sin());
            let l = lambda_big(x0, t).unwrap();
            assert!(close(l, t * t / 2.0, 1e-12), "obs1 at {t}: {l}");
            let lp = lambda_big(psi(t).unwrap(), t).unwrap();
            assert!(close(lp, t * t / (1.0 - t.cos()), 1e-12), "obs2 at {t}");
        }
        let a = lambda_big(1e3, 1.0).unwrap();
        let b = lambda_big(1e6, 1.0).unwrap();
        assert!(b > a && b > 1e5);
    }

    #[test]
    fn lambda_big_matches_defining_formula() {
        for &t in &[0.5, 1.0, 2.5, 4.0, 6.0] {
            for &x in &[psi(t).unwrap(), 1.0, 3.0, 20.0] {
                if x < psi(t).unwrap() {
                    continue;
                }
                let direct = lambda_direct(x, t);
                assert!(close(lambda_big(x, t).unwrap(), direct, 1e-9), "t={t} x={x}");
            }
        }
    }

    #[test]
    fn lambda_big_reflection_and_domain() {
        assert_eq!(lambda_big(-2.0, -1.3).unwrap(), lambda_big(2.0, 1.3).unwrap());
        assert!(lambda_big(1.0, 0.0).is_err());
        // radicand negative: x far to the left of the level set
        assert!(lambda_big(-10.0, 1.0).is_err());
    }

    #[test]
    fn coefficient_examples() {
        assert!(close(coef_a(PI).unwrap(), -2.0 / PI, 1e-15));
        assert!(close(coef_b(PI).unwrap(), 2.0 / PI, 1e-15));
        for &t in &[1e-3, 0.2, 1.0, 3.0, 6.0] {
            assert!(close(coef_b(t).unwrap() * psi(t).unwrap(), 1.0, 1e-14));
        }
        assert!(coef_a(0.0).is_err());
        assert!(coef_b(-1.0).is_err());
    }

    #[test]
    fn eta_zeta_xcrit_xi_examples() {
        assert!(close(x_crit(PI).unwrap(), PI / 2.0, 1e-15));
        for &g in &[0.0, 0.5, 3.0] {
            assert!(close(zeta(g, PI).unwrap(), PI / 2.0, 1e-15));
        }
        assert!(eta(1e-6).unwrap() < 1e-6);
        assert!(close(xi(PI).unwrap(), PI, 1e-15));
        // ξ'(π) = 0: symmetric difference quotient vanishes
        let h = 1e-5;
        let slope = (xi(PI + h).unwrap() - xi(PI - h).unwrap()) / (2.0 * h);
        assert!(slope.abs() < 1e-8);
        assert!(zeta(1.0, 3.5).is_err());
        assert!(eta_alpha(1.0, 3.0).is_err()); // ψ(3) > 1
    }

    #[test]
    fn eta_alpha_two_forms() {
        for &(alpha, t) in &[(1.0, 0.5), (2.0, 1.5), (10.0, 4.0)] {
            let a = coef_a(t).unwrap();
            let b = coef_b(t).unwrap();
            let other = (a * a / (alpha * b - 1.0) + 1.0) / b;
            assert!(close(eta_alpha(alpha, t).unwrap(), other, 1e-12));
        }
    }

    #[test]
    fn intersection_roots() {
        // tangency: both roots coincide
        let t = 1.2;
        let gamma = 0.3;
        let p = psi(t).unwrap();
        let a = coef_a(t).unwrap();
        // choose β so that the discriminant vanishes: η_γ(θ) = β
        let beta = p * p * a * a / (gamma - p) + p;
        let d = discriminant(beta, gamma, t).unwrap();
        assert!(d.abs() < 1e-12);
        let sp = s_plus(beta, gamma, t).unwrap();
        let sm = s_minus(beta, gamma, t).unwrap();
        let lead = 1.0 - gamma * coef_b(t).unwrap();
        assert!(close(sp, a / lead, 1e-6) && close(sm, a / lead, 1e-6));

        // β = ψ(θ), γ > ψ(θ): √v₁ = 0 and √v₂ = -2A/(γB - 1)
        let t = 1.0;
        let (p, a, b) = (psi(t).unwrap(), coef_a(t).unwrap(), coef_b(t).unwrap());
        let gamma = 2.0;
        assert!(s_plus(p, gamma, t).unwrap().abs() < 1e-15);
        assert!(close(s_minus(p, gamma, t).unwrap(), -2.0 * a / (gamma * b - 1.0), 1e-13));

        // degenerate leading coefficient
        assert!(matches!(
            s_plus(0.1, p, t),
            Err(GeomError::DivisionDegenerate { .. })
        ));
        assert!(s_tangent(1.0, t).unwrap() > 0.0);
    }

    #[test]
    fn roots_solve_quadratic() {
        for &(beta, gamma, t) in &[(2.0, 0.5, 2.0), (2.0, 3.0, 3.4), (0.5, -1.0, 0.7), (0.0, 1.0, 0.5)] {
            let (a, b) = (coef_a(t).unwrap(), coef_b(t).unwrap());
            for s in [s_plus(beta, gamma, t).unwrap(), s_minus(beta, gamma, t).unwrap()] {
                let r = (1.0 - gamma * b) * s * s - 2.0 * a * s + 1.0 - beta * b;
                assert!(r.abs() < 1e-11 * (1.0 + s * s * b.abs()), "{beta} {gamma} {t}: {r}");
            }
        }
    }

    #[test]
    fn lambda_branches_match_formula() {
        let (beta, gamma, t) = (2.0f64, 3.0, 3.4);
        let s = s_plus(beta, gamma, t).unwrap();
        let direct = t * t / (1.0 - t.cos()) * (s * s + 1.0 - 2.0 * s * (t / 2.0).cos());
        assert!(close(lambda_plus(beta, gamma, t).unwrap(), direct, 1e-13));
        // γ = 0 reduces to Λ(β, θ)
        let (beta, t) = (1.0, 0.8);
        assert!(close(lambda_plus(beta, 0.0, t).unwrap(), lambda_big(beta, t).unwrap(), 1e-12));
        // negative root is rejected
        assert!(matches!(
            lambda_minus(2.0, 0.5, 2.0),
            Err(GeomError::NoIntersection { .. })
        ));
    }

    #[test]
    fn bound_joints() {
        for &v in &[0.0, 1.0, 9.0] {
            let m = v + f64::sqrt(v) + 1.0;
            let lo = PI2_OVER_12 * m * PI;
            let hi = PI.powi(8) / 12.0 * m * PI.powi(-5);
            assert!(close(lo, hi, 1e-14));
            assert!(close(g_major(v, PI).unwrap(), PI.powi(3) / 12.0 * m, 1e-14));
            let x = PI.powi(3) / 12.0 * m;
            assert!(close(h_lower(x, v).unwrap(), PI, 1e-14));
            assert!(close(h_lower(x * (1.0 + 1e-14), v).unwrap(), PI, 1e-12));
        }
        let p = ManifoldPoint::new(0.0, 1.0).unwrap();
        assert_eq!(t_bound(p, p), 0.0);
    }

    #[test]
    fn delta_angle_validation() {
        assert!(DeltaAngle::new(6.0).is_ok());
        assert!(DeltaAngle::new(-6.3).is_err());
        assert!(DeltaAngle::new(PI).unwrap().is_close());
        assert!(!DeltaAngle::new(4.0).unwrap().is_close());
    }
}
