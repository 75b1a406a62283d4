//! Point-to-point distance in the Heston manifold.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{domain, GeomError, Result};
use crate::functions::{f_unchecked, half_sq_from_chart, h_lower_unchecked, DeltaAngle};
use crate::solvers::invert_toward_open_end;

/// A point `(x, v)` of the closed upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ManifoldPoint {
    /// Log-price coordinate.
    pub x: f64,
    /// Variance coordinate.
    pub v: f64,
}

impl ManifoldPoint {
    /// The reference point `(0, 1)`.
    pub const BASE: ManifoldPoint = ManifoldPoint { x: 0.0, v: 1.0 };

    pub fn new(x: f64, v: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(GeomError::InvalidInput { what: "x", value: x });
        }
        if !(v >= 0.0) || !v.is_finite() {
            return Err(domain("ManifoldPoint::new", v, "v >= 0"));
        }
        Ok(ManifoldPoint { x, v })
    }

    pub fn on_boundary(&self) -> bool {
        self.v == 0.0
    }
}

/// Vol-of-vol `c` and correlation `ρ` of the correlated model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationFrame {
    pub c: f64,
    pub rho: f64,
}

impl CorrelationFrame {
    pub const UNCORRELATED: CorrelationFrame = CorrelationFrame { c: 1.0, rho: 0.0 };

    pub fn new(c: f64, rho: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(GeomError::InvalidInput { what: "c", value: c });
        }
        if !(rho.abs() < 1.0) {
            return Err(GeomError::InvalidInput {
                what: "rho",
                value: rho,
            });
        }
        Ok(CorrelationFrame { c, rho })
    }

    /// `√(1 - ρ²)`.
    pub fn rho_bar(&self) -> f64 {
        ((1.0 - self.rho) * (1.0 + self.rho)).sqrt()
    }

    /// Image of `p` in the uncorrelated model: `((c x - ρ v)/√(1-ρ²), v)`.
    pub fn decorrelate(&self, p: ManifoldPoint) -> ManifoldPoint {
        ManifoldPoint {
            x: (self.c * p.x - self.rho * p.v) / self.rho_bar(),
            v: p.v,
        }
    }
}

/// A point written in the chart `(δ, v)` centred at `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaCoordinate {
    pub theta: DeltaAngle,
    pub v: f64,
}

impl DeltaCoordinate {
    pub fn new(theta: f64, v: f64) -> Result<Self> {
        if !(v >= 0.0) || !v.is_finite() {
            return Err(domain("DeltaCoordinate::new", v, "v >= 0"));
        }
        Ok(DeltaCoordinate {
            theta: DeltaAngle::new(theta)?,
            v,
        })
    }
}

/// The unique `δ ∈ (-2π, 2π)` with `f(v, δ) = x`.
pub fn delta_of(x: f64, v: f64) -> Result<DeltaAngle> {
    if !x.is_finite() {
        return Err(GeomError::InvalidInput { what: "x", value: x });
    }
    if !(v >= 0.0) || !v.is_finite() {
        return Err(domain("delta_of", v, "v >= 0"));
    }
    if x == 0.0 {
        return Ok(DeltaAngle::ZERO);
    }
    let ax = x.abs();
    let lo = h_lower_unchecked(ax, v).min(TAU);
    let lo = if f_unchecked(v, lo) > ax { 0.0 } else { lo };
    let theta = invert_toward_open_end(|d| f_unchecked(v, d), lo, TAU, ax, 0.0)?;
    DeltaAngle::new(theta.copysign(x))
}

/// Distance from `(0, 1)` to `(x, v)`.
fn dist_from_base(x: f64, v: f64) -> Result<f64> {
    let delta = delta_of(x, v)?.value();
    let r = v.sqrt();
    if delta == 0.0 {
        return Ok(2.0 * (r - 1.0).abs());
    }
    Ok((2.0 * half_sq_from_chart(delta.abs(), r)).sqrt())
}

/// Heston distance between two points, not both on the boundary.
///
/// The pair is normalised so that the point with the larger `v` becomes
/// `(0, 1)`, using translation invariance in `x` and the scaling
/// `d(αp, αq) = √α d(p, q)`.
pub fn dist(p0: ManifoldPoint, p1: ManifoldPoint) -> Result<f64> {
    for p in [p0, p1] {
        ManifoldPoint::new(p.x, p.v)?;
    }
    if p0 == p1 {
        return Ok(0.0);
    }
    let (base, other) = if p1.v > p0.v { (p1, p0) } else { (p0, p1) };
    if base.v == 0.0 {
        return Err(GeomError::BoundaryPair { x0: p0.x, x1: p1.x });
    }
    let d = dist_from_base((other.x - base.x) / base.v, other.v / base.v)?;
    Ok(base.v.sqrt() * d)
}

/// Distance in the correlated model with parameters `frame`.
pub fn dist_correlated(frame: CorrelationFrame, p0: ManifoldPoint, p1: ManifoldPoint) -> Result<f64> {
    let d = dist(frame.decorrelate(p0), frame.decorrelate(p1))?;
    Ok(d / frame.c)
}

pub fn to_delta(p: ManifoldPoint) -> Result<DeltaCoordinate> {
    Ok(DeltaCoordinate {
        theta: delta_of(p.x, p.v)?,
        v: p.v,
    })
}

pub fn from_delta(d: DeltaCoordinate) -> Result<ManifoldPoint> {
    if !(d.v >= 0.0) || !d.v.is_finite() {
        return Err(domain("from_delta", d.v, "v >= 0"));
    }
    DeltaAngle::new(d.theta.value())?;
    Ok(ManifoldPoint {
        x: f_unchecked(d.v, d.theta.value()),
        v: d.v,
    })
}
