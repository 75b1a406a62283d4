//! Bracketed root finding and one-dimensional minimization.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
pub const DEFAULT_MIN_TOL: f64 = 1e-9;
pub const DEFAULT_SCAN_NODES: usize = 256;
pub const DEFAULT_MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo <= hi {
            Ok(Bracket { lo, hi })
        } else {
            Err(GeomError::InvalidInput {
                what: "bracket",
                value: hi - lo,
            })
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    BisectionHybrid,
    GoldenSection,
    GridRefine,
    /// No iteration: the answer is an explicit formula.
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::BisectionHybrid => "bisection-hybrid",
            Method::GoldenSection => "golden-section",
            Method::GridRefine => "grid-refine",
            Method::ClosedForm => "closed-form",
        }
    }
}

/// Outcome of a solve. For root finding `value` is the root and `residual`
/// is `|fn(root) - target|`; for minimization `value` is the argmin and
/// `residual` the width of the final refinement bracket.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub value: f64,
    pub iterations: usize,
    pub residual: f64,
    pub method: Method,
}

impl SolveReport {
    pub fn closed_form(value: f64) -> Self {
        SolveReport {
            value,
            iterations: 0,
            residual: 0.0,
            method: Method::ClosedForm,
        }
    }
}

/// Result of [`minimize_on_interval`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Minimum {
    pub argmin: f64,
    pub value: f64,
    pub report: SolveReport,
}

/// Tolerances shared by the higher-level routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Absolute tolerance on the argument of root solves.
    pub root_tol: f64,
    /// Absolute tolerance on the argmin of minimizations.
    pub min_tol: f64,
    pub scan_nodes: usize,
    pub max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            root_tol: DEFAULT_ROOT_TOL,
            min_tol: DEFAULT_MIN_TOL,
            scan_nodes: DEFAULT_SCAN_NODES,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

/// Finds `r` in `bracket` with `fn(r) = target` for a monotone `fn`.
///
/// Brent's method: inverse quadratic interpolation and secant steps,
/// falling back to bisection whenever they fail to shrink the bracket fast
/// enough. Terminates once the bracket is narrower than `tol` (plus a few
/// ulps of the root) or the residual is exactly zero.
pub fn solve_monotone<F>(f: F, bracket: Bracket, target: f64, tol: f64) -> Result<SolveReport>
where
    F: Fn(f64) -> f64,
{
    solve_monotone_with(f, bracket, target, tol, DEFAULT_MAX_ITER)
}

pub fn solve_monotone_with<F>(
    f: F,
    bracket: Bracket,
    target: f64,
    tol: f64,
    max_iter: usize,
) -> Result<SolveReport>
where
    F: Fn(f64) -> f64,
{
    let g = |x: f64| -> Result<f64> {
        let y = f(x) - target;
        if y.is_nan() {
            Err(GeomError::NonFiniteSample { node: x, value: y })
        } else {
            Ok(y)
        }
    };
    let done = |x: f64, iterations: usize, fx: f64| SolveReport {
        value: x,
        iterations,
        residual: fx.abs(),
        method: Method::BisectionHybrid,
    };

    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (g(a)?, g(b)?);
    if fa == 0.0 {
        return Ok(done(a, 0, fa));
    }
    if fb == 0.0 {
        return Ok(done(b, 0, fb));
    }
    if fa.signum() == fb.signum() {
        return Err(GeomError::NoSignChange {
            lo: a,
            hi: b,
            f_lo: fa + target,
            f_hi: fb + target,
        });
    }

    let (mut c, mut fc) = (b, fb);
    let (mut d, mut e) = (b - a, b - a);
    for iter in 1..=max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(done(b, iter, fb));
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = g(b)?;
    }
    Err(GeomError::MaxIterations {
        iterations: max_iter,
        lo: b.min(c),
        hi: b.max(c),
    })
}

/// Solves `fn(θ) = target` for `fn` increasing on `[lo, end)` and unbounded
/// as `θ → end`. The right end of the bracket approaches `end` by halving
/// the remaining gap until `fn` reaches the target.
pub(crate) fn invert_toward_open_end<F>(f: F, lo: f64, end: f64, target: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut left = lo;
    let mut right = lo;
    let mut found = false;
    for k in 1..=200 {
        let candidate = end - (end - lo) / 2f64.powi(k);
        if candidate <= right {
            break;
        }
        right = candidate;
        if f(right) >= target {
            found = true;
            break;
        }
        left = right;
    }
    if !found {
        return Err(GeomError::NoSignChange {
            lo,
            hi: right,
            f_lo: f(lo),
            f_hi: f(right),
        });
    }
    solve_monotone(f, Bracket { lo: left, hi: right }, target, tol).map(|r| r.value)
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimizes `fn` over the closed `bracket`.
///
/// A uniform scan localizes the best node; golden-section search then
/// refines inside the two cells adjacent to it. The result is never worse
/// than the best scanned node, either endpoint, or the midpoint.
pub fn minimize_on_interval<F>(f: F, bracket: Bracket, tol: f64) -> Result<Minimum>
where
    F: Fn(f64) -> f64,
{
    minimize_with(f, bracket, tol, DEFAULT_SCAN_NODES, DEFAULT_MAX_ITER)
}

pub fn minimize_with<F>(
    f: F,
    bracket: Bracket,
    tol: f64,
    nodes: usize,
    max_iter: usize,
) -> Result<Minimum>
where
    F: Fn(f64) -> f64,
{
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(GeomError::NonFiniteSample { node: x, value: y })
        }
    };
    let Bracket { lo, hi } = bracket;
    if lo == hi {
        let value = eval(lo)?;
        return Ok(Minimum {
            argmin: lo,
            value,
            report: SolveReport {
                value: lo,
                iterations: 0,
                residual: 0.0,
                // a one-point interval needs no search
                method: Method::ClosedForm,
            },
        });
    }

    let n = nodes.max(3);
    let step = (hi - lo) / (n - 1) as f64;
    let node = |i: usize| if i == n - 1 { hi } else { lo + i as f64 * step };
    let mut best_i = 0;
    let mut best = eval(lo)?;
    for i in 1..n {
        let y = eval(node(i))?;
        if y < best {
            best = y;
            best_i = i;
        }
    }
    let mut argmin = node(best_i);

    let mid = bracket.midpoint();
    let fmid = eval(mid)?;
    if fmid < best {
        best = fmid;
        argmin = mid;
    }

    // Golden section on the cell pair around the best node.
    let mut a = node(best_i.saturating_sub(1));
    let mut b = node((best_i + 1).min(n - 1));
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    let mut iterations = 0;
    while b - a > tol {
        if iterations == max_iter {
            return Err(GeomError::MaxIterations {
                iterations,
                lo: a,
                hi: b,
            });
        }
        iterations += 1;
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = eval(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = eval(x2)?;
        }
    }
    let (xr, fr) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    if fr < best {
        best = fr;
        argmin = xr;
    }
    Ok(Minimum {
        argmin,
        value: best,
        report: SolveReport {
            value: argmin,
            iterations,
            residual: b - a,
            method: Method::GoldenSection,
        },
    })
}
