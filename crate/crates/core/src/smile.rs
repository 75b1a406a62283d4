//! Small-maturity limit of the implied volatility in the correlated Heston
//! model.
//!
//! The limit at strike `K` is `c |log(S₀/K)| / (√v₀ D̂_{β,γ})`, where
//! `D̂_{β,γ}` is the distance from `(0, 1)` to the line obtained by reducing
//! the correlated problem to the uncorrelated one. No claim is made about
//! the conditions under which the short-time limit itself holds, nor about
//! the rate of convergence.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::line::dist_to_line;
use crate::point::CorrelationFrame;

/// Spot, initial variance and correlation frame shared by a strike ladder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmileModel {
    pub spot: f64,
    pub v0: f64,
    pub frame: CorrelationFrame,
}

impl SmileModel {
    pub fn new(spot: f64, v0: f64, frame: CorrelationFrame) -> Result<Self> {
        if !(spot > 0.0) || !spot.is_finite() {
            return Err(GeomError::InvalidInput { what: "spot", value: spot });
        }
        if !(v0 > 0.0) || !v0.is_finite() {
            return Err(GeomError::InvalidInput { what: "v0", value: v0 });
        }
        CorrelationFrame::new(frame.c, frame.rho)?;
        Ok(SmileModel { spot, v0, frame })
    }

    pub fn query(&self, strike: f64) -> Result<SmileQuery> {
        SmileQuery::new(self.spot, strike, self.v0, self.frame)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmileQuery {
    pub spot: f64,
    pub strike: f64,
    pub v0: f64,
    pub frame: CorrelationFrame,
}

impl SmileQuery {
    pub fn new(spot: f64, strike: f64, v0: f64, frame: CorrelationFrame) -> Result<Self> {
        SmileModel::new(spot, v0, frame)?;
        if !(strike > 0.0) || !strike.is_finite() {
            return Err(GeomError::InvalidInput {
                what: "strike",
                value: strike,
            });
        }
        if strike == spot {
            return Err(GeomError::AtTheMoney { strike });
        }
        Ok(SmileQuery {
            spot,
            strike,
            v0,
            frame,
        })
    }

    /// `log(K / S₀)`.
    pub fn log_moneyness(&self) -> f64 {
        (self.strike / self.spot).ln()
    }

    /// The reduced line `(β, γ)`.
    pub fn line(&self) -> (f64, f64) {
        let CorrelationFrame { c, rho } = self.frame;
        let rb = self.frame.rho_bar();
        let beta = c * self.log_moneyness() / (self.v0 * rb) + rho / rb;
        (beta, -rho / rb)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmilePoint {
    pub strike: f64,
    pub log_moneyness: f64,
    pub iv_limit: f64,
    pub line_beta: f64,
    pub line_gamma: f64,
    /// `D̂_{β,γ}` of the reduced line.
    pub distance: f64,
}

pub fn iv_limit(q: &SmileQuery) -> Result<SmilePoint> {
    let q = SmileQuery::new(q.spot, q.strike, q.v0, q.frame)?;
    let m = q.log_moneyness();
    if m == 0.0 {
        return Err(GeomError::AtTheMoney { strike: q.strike });
    }
    let (beta, gamma) = q.line();
    let distance = dist_to_line(beta, gamma)?.value;
    if !(distance > 0.0) {
        return Err(GeomError::DegenerateDistance);
    }
    Ok(SmilePoint {
        strike: q.strike,
        log_moneyness: m,
        iv_limit: q.frame.c * m.abs() / (q.v0.sqrt() * distance),
        line_beta: beta,
        line_gamma: gamma,
        distance,
    })
}

/// One result per strike, in input order; failures do not stop the ladder.
pub fn smile_table(model: &SmileModel, strikes: &[f64]) -> Vec<Result<SmilePoint>> {
    strikes
        .iter()
        .map(|&k| model.query(k).and_then(|q| iv_limit(&q)))
        .collect()
}
