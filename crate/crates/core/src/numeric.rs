//! Scalar root finding and 1-D maximization helpers.

use crate::error::{Error, Result};

pub const ROOT_XTOL: f64 = 1e-12;
pub const ROOT_MAX_ITER: usize = 200;

/// Find the root of an increasing function on `[lo, hi]`.
///
/// `f` returns the value and, when cheap, its derivative; Newton steps are
/// taken inside the maintained bracket and fall back to bisection. Assumes
/// `f(lo) <= 0 <= f(hi)` up to noise (clamps to the nearer endpoint else).
pub fn solve_increasing<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    xtol: f64,
    max_iter: usize,
    context: &'static str,
) -> Result<f64>
where
    F: FnMut(f64) -> (f64, Option<f64>),
{
    let (mut a, mut b) = (lo, hi);
    let (fa, _) = f(a);
    let (fb, _) = f(b);
    if fa > 0.0 && fb > 0.0 {
        return Ok(a);
    }
    if fa < 0.0 && fb < 0.0 {
        return Ok(b);
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..max_iter {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx > 0.0 {
            b = x;
        } else {
            a = x;
        }
        if b - a <= xtol {
            return Ok(0.5 * (a + b));
        }
        // Newton candidate, kept only when it stays inside the bracket.
        let mut next = f64::NAN;
        if let Some(d) = dfx {
            if d.abs() > 1e-300 {
                let cand = x - fx / d;
                if cand > a && cand < b {
                    next = cand;
                }
            }
        }
        x = if next.is_finite() {
            next
        } else {
            0.5 * (a + b)
        };
    }
    if b - a <= xtol * 16.0 {
        Ok(0.5 * (a + b))
    } else {
        Err(Error::NumericNonconvergence { context })
    }
}

/// Bisection for a continuous function with a sign change on `[lo, hi]`;
/// no derivative and no monotonicity assumption beyond the bracket.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, xtol: f64, max_iter: usize) -> f64
where
    F: FnMut(f64) -> f64,
{
    let rising = f(hi) >= 0.0;
    for _ in 0..max_iter {
        if hi - lo <= xtol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let v = f(mid);
        if (v >= 0.0) == rising {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section maximization of a unimodal function on `[lo, hi]`.
pub fn golden_max<F>(mut f: F, mut lo: f64, mut hi: f64, xtol: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > xtol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}
