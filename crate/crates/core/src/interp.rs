//! Monotonicity-preserving cubic Hermite interpolation.
//!
//! Slopes are either supplied by the caller (when the table generator knows
//! the exact derivative) or estimated by finite differences: fourth-order
//! stencils on uniform grids, weighted three-point formulas otherwise. A
//! Hyman-style limiter is always applied afterwards, so the interpolant never
//! overshoots locally monotone data.

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ds: Vec<f64>,
}

impl MonotoneCubic {
    /// Build from knots with caller-supplied slopes (limited before use).
    pub fn with_slopes(xs: Vec<f64>, ys: Vec<f64>, mut ds: Vec<f64>) -> Result<Self> {
        check_knots(&xs, &ys)?;
        if ds.len() != xs.len() {
            return Err(Error::BadParam {
                what: format!("slope table length {} != {}", ds.len(), xs.len()),
            });
        }
        hyman_limit(&xs, &ys, &mut ds);
        Ok(Self { xs, ys, ds })
    }

    /// Build from knots, estimating slopes by finite differences.
    pub fn fit(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        check_knots(&xs, &ys)?;
        let ds = estimate_slopes(&xs, &ys);
        Self::with_slopes(xs, ys, ds)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn x_min(&self) -> f64 {
        self.xs[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.xs.last().unwrap()
    }

    fn segment(&self, x: f64) -> (usize, f64, f64) {
        let n = self.xs.len();
        let x = x.clamp(self.xs[0], self.xs[n - 1]);
        let i = match self.xs.partition_point(|&k| k <= x) {
            0 => 0,
            k if k >= n => n - 2,
            k => k - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        ((i), (x - self.xs[i]) / h, h)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_with_d2(x).0
    }

    pub fn eval_with_d(&self, x: f64) -> (f64, f64) {
        let (v, d, _) = self.eval_with_d2(x);
        (v, d)
    }

    /// Value, first and second derivative at `x` (clamped to the domain).
    pub fn eval_with_d2(&self, x: f64) -> (f64, f64, f64) {
        let (i, t, h) = self.segment(x);
        let (y0, y1) = (self.ys[i], self.ys[i + 1]);
        let (d0, d1) = (self.ds[i], self.ds[i + 1]);
        let t2 = t * t;
        let t3 = t2 * t;
        let v = y0 * (2.0 * t3 - 3.0 * t2 + 1.0)
            + d0 * h * (t3 - 2.0 * t2 + t)
            + y1 * (-2.0 * t3 + 3.0 * t2)
            + d1 * h * (t3 - t2);
        let dv = (y0 * (6.0 * t2 - 6.0 * t) + y1 * (6.0 * t - 6.0 * t2)) / h
            + d0 * (3.0 * t2 - 4.0 * t + 1.0)
            + d1 * (3.0 * t2 - 2.0 * t);
        let ddv = (y0 * (12.0 * t - 6.0) + y1 * (6.0 - 12.0 * t)) / (h * h)
            + (d0 * (6.0 * t - 4.0) + d1 * (6.0 * t - 2.0)) / h;
        (v, dv, ddv)
    }

    /// Shift the whole domain by `delta` (used by body rotations).
    pub fn shifted(&self, delta: f64) -> Self {
        Self {
            xs: self.xs.iter().map(|x| x + delta).collect(),
            ys: self.ys.clone(),
            ds: self.ds.clone(),
        }
    }
}

fn check_knots(xs: &[f64], ys: &[f64]) -> Result<()> {
    if xs.len() < 2 || xs.len() != ys.len() {
        return Err(Error::BadParam {
            what: format!("degenerate sample table: {} knots", xs.len()),
        });
    }
    for w in xs.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::BadParam {
                what: "sample table abscissae not strictly increasing".into(),
            });
        }
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::BadParam {
            what: "non-finite sample value".into(),
        });
    }
    Ok(())
}

fn is_uniform(xs: &[f64]) -> bool {
    let h = xs[1] - xs[0];
    let span = xs[xs.len() - 1] - xs[0];
    xs.windows(2)
        .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * span.max(1.0))
}

fn estimate_slopes(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    if n == 2 {
        let d = (ys[1] - ys[0]) / (xs[1] - xs[0]);
        return vec![d, d];
    }
    if n >= 5 && is_uniform(xs) {
        let h = (xs[n - 1] - xs[0]) / (n - 1) as f64;
        let mut ds = vec![0.0; n];
        ds[0] = (-25.0 * ys[0] + 48.0 * ys[1] - 36.0 * ys[2] + 16.0 * ys[3] - 3.0 * ys[4])
            / (12.0 * h);
        ds[1] = (-3.0 * ys[0] - 10.0 * ys[1] + 18.0 * ys[2] - 6.0 * ys[3] + ys[4]) / (12.0 * h);
        for i in 2..n - 2 {
            ds[i] = (ys[i - 2] - 8.0 * ys[i - 1] + 8.0 * ys[i + 1] - ys[i + 2]) / (12.0 * h);
        }
        ds[n - 2] = (3.0 * ys[n - 1] + 10.0 * ys[n - 2] - 18.0 * ys[n - 3] + 6.0 * ys[n - 4]
            - ys[n - 5])
            / (12.0 * h);
        ds[n - 1] = (25.0 * ys[n - 1] - 48.0 * ys[n - 2] + 36.0 * ys[n - 3] - 16.0 * ys[n - 4]
            + 3.0 * ys[n - 5])
            / (12.0 * h);
        return ds;
    }
    // Non-uniform: weighted three-point differences.
    let mut ds = vec![0.0; n];
    for i in 1..n - 1 {
        let h0 = xs[i] - xs[i - 1];
        let h1 = xs[i + 1] - xs[i];
        let d0 = (ys[i] - ys[i - 1]) / h0;
        let d1 = (ys[i + 1] - ys[i]) / h1;
        ds[i] = (h1 * d0 + h0 * d1) / (h0 + h1);
    }
    let h0 = xs[1] - xs[0];
    let h1 = xs[2] - xs[1];
    let d0 = (ys[1] - ys[0]) / h0;
    let d1 = (ys[2] - ys[1]) / h1;
    ds[0] = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    let hm = xs[n - 1] - xs[n - 2];
    let hm1 = xs[n - 2] - xs[n - 3];
    let dm = (ys[n - 1] - ys[n - 2]) / hm;
    let dm1 = (ys[n - 2] - ys[n - 3]) / hm1;
    ds[n - 1] = ((2.0 * hm + hm1) * dm - hm * dm1) / (hm + hm1);
    ds
}

/// Clamp slopes so the Hermite interpolant preserves local monotonicity.
fn hyman_limit(xs: &[f64], ys: &[f64], ds: &mut [f64]) {
    let n = xs.len();
    let delta = |i: usize| (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    for i in 0..n {
        let (dl, dr) = (
            if i > 0 { Some(delta(i - 1)) } else { None },
            if i < n - 1 { Some(delta(i)) } else { None },
        );
        let limited = match (dl, dr) {
            (Some(a), Some(b)) => {
                if a * b <= 0.0 {
                    0.0
                } else {
                    clamp_to(ds[i], a, b)
                }
            }
            (Some(a), None) => clamp_to(ds[i], a, a),
            (None, Some(b)) => clamp_to(ds[i], b, b),
            (None, None) => ds[i],
        };
        ds[i] = limited;
    }
}

fn clamp_to(d: f64, a: f64, b: f64) -> f64 {
    let sign = a.signum();
    if d * sign < 0.0 {
        0.0
    } else {
        let cap = 3.0 * a.abs().min(b.abs());
        sign * d.abs().min(cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect()
    }

    #[test]
    fn exact_slopes_are_fourth_order() {
        let xs = grid(1.0, 2.2, 96);
        let ys: Vec<f64> = xs.iter().map(|x| 1.0 / x).collect();
        let ds: Vec<f64> = xs.iter().map(|x| -1.0 / (x * x)).collect();
        let c = MonotoneCubic::with_slopes(xs.clone(), ys, ds).unwrap();
        let mut err: f64 = 0.0;
        for i in 0..961 {
            let x = 1.0 + 1.2 * i as f64 / 960.0;
            err = err.max((c.eval(x) - 1.0 / x).abs());
        }
        assert!(err < 2e-9, "err = {err:.3e}");
    }

    #[test]
    fn fitted_slopes_close_to_exact() {
        let xs = grid(0.0, 1.2, 128);
        let ys: Vec<f64> = xs.iter().map(|x| x.sin()).collect();
        let c = MonotoneCubic::fit(xs, ys).unwrap();
        let mut verr: f64 = 0.0;
        let mut derr: f64 = 0.0;
        for i in 0..500 {
            let x = 1.2 * i as f64 / 499.0;
            let (v, d) = c.eval_with_d(x);
            verr = verr.max((v - x.sin()).abs());
            derr = derr.max((d - x.cos()).abs());
        }
        assert!(verr < 1e-8, "value err {verr:.3e}");
        assert!(derr < 1e-6, "slope err {derr:.3e}");
    }

    #[test]
    fn preserves_monotonicity() {
        // Data with a sharp shoulder that plain cubic splines overshoot.
        let xs = vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let ys = vec![0.0, 0.0, 0.0, 0.5, 1.0, 1.0, 1.0];
        let c = MonotoneCubic::fit(xs, ys).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=600 {
            let v = c.eval(6.0 * i as f64 / 600.0);
            assert!(v >= prev - 1e-12, "not monotone at {i}");
            assert!((-1e-12..=1.0 + 1e-12).contains(&v), "overshoot: {v}");
            prev = v;
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(MonotoneCubic::fit(vec![0.0, 0.0, 1.0], vec![1.0, 2.0, 3.0]).is_err());
        assert!(MonotoneCubic::fit(vec![0.0], vec![1.0]).is_err());
    }
}
