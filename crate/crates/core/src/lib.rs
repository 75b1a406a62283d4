//! Distances in the Heston manifold: the upper half-plane `{(x, v) : v > 0}`
//! with metric `ds² = (dx² + dv²) / v`, which governs the short-time
//! behaviour of the Heston stochastic volatility model.
//!
//! The crate computes
//!
//! * the distance between two points ([`dist`], [`dist_correlated`]),
//! * the geometry of the level sets of the angle `δ` that parametrizes
//!   geodesics from `(0, 1)` ([`curve_v`], [`dist_to_level_set`]),
//! * the distance from `(0, 1)` to an arbitrary line `x = β + γ v`
//!   ([`dist_to_line`]) together with a brute-force reference
//!   ([`oracle_dist`]),
//! * the small-maturity implied volatility limit of the correlated model
//!   ([`iv_limit`], [`smile_table`]).
//!
//! ```
//! use heston_geom::{dist, dist_to_line, ManifoldPoint};
//!
//! let d = dist(ManifoldPoint::new(0.0, 1.0)?, ManifoldPoint::new(0.0, 4.0)?)?;
//! assert!((d - 2.0).abs() < 1e-12);
//!
//! // The tangent line to the level set δ = π/2 at its nearest point.
//! let s = dist_to_line(std::f64::consts::FRAC_PI_4, 1.0)?;
//! assert!((s.value - std::f64::consts::FRAC_PI_2).abs() < 1e-8);
//! # Ok::<(), heston_geom::GeomError>(())
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod functions;
pub mod inverse;
pub mod level_set;
pub mod line;
pub mod point;
pub mod smile;
pub mod solvers;

pub use error::{GeomError, Result};
pub use functions::{
    coef_a, coef_b, discriminant, eta, eta_alpha, f_of, g_major, h_lower, lambda_big,
    lambda_minus, lambda_plus, psi, s_minus, s_plus, s_tangent, t_bound, x_crit, xi, zeta,
    DeltaAngle, LineParams, SMALL_THETA, TANGENCY_TOL,
};
pub use inverse::{eta_alpha_inv, eta_inv, psi_inv, x_crit_inv, zeta_inv};
pub use level_set::{
    critical_curve_v, critical_point, curve_curvature, curve_slope, curve_v, curve_v_split,
    dist_to_horizontal, dist_to_level_set, horizontal_solution, sample_level_curve, theta_crit,
    LevelCurveSample,
};
pub use line::{
    admissible_intervals, dist_to_line, dist_to_line_correlated, dist_to_line_with,
    dist_to_tangent_line, dist_to_vertical, minimize_over_half_line, oracle_dist,
    oracle_dist_with, reduce_line, tangent_line, vertical_interval, AdmissibleInterval, Branch,
    DistanceSolution, OracleOptions, VerticalInterval,
};
pub use point::{
    delta_of, dist, dist_correlated, from_delta, to_delta, CorrelationFrame, DeltaCoordinate,
    ManifoldPoint,
};
pub use smile::{iv_limit, smile_table, SmileModel, SmilePoint, SmileQuery};
pub use solvers::{
    minimize_on_interval, solve_monotone, Bracket, Method, Minimum, SolveReport, SolverOptions,
};
