//! Canonical angles and cyclic intervals on the normal circle.
//!
//! Every angular quantity in the engine is reduced to `[0, 2π)`. Cyclic
//! intervals are stored as `(start, width)` so that a full-circle piece
//! (`width = 2π`) is unambiguous.

use std::f64::consts::TAU;

/// Tolerance for angle equality (radians).
pub const ANGLE_EPS: f64 = 1e-9;

/// An angle canonicalized to `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle(f64);

impl Angle {
    pub fn new(radians: f64) -> Self {
        debug_assert!(radians.is_finite(), "non-finite angle");
        let r = radians.rem_euclid(TAU);
        // rem_euclid can return TAU for tiny negative inputs.
        Self(if r >= TAU { 0.0 } else { r })
    }

    pub fn rad(self) -> f64 {
        self.0
    }

    pub fn approx_eq(self, other: Angle, eps: f64) -> bool {
        cyclic_dist(self.0, other.0) <= eps
    }

    /// The antipodal angle.
    pub fn opposite(self) -> Angle {
        Angle::new(self.0 + std::f64::consts::PI)
    }
}

impl From<f64> for Angle {
    fn from(r: f64) -> Self {
        Angle::new(r)
    }
}

/// Counterclockwise distance from `from` to `to`, in `[0, 2π)`.
pub fn cyclic_delta(from: f64, to: f64) -> f64 {
    let d = (to - from).rem_euclid(TAU);
    if d >= TAU {
        0.0
    } else {
        d
    }
}

/// Unsigned cyclic distance between two angles, in `[0, π]`.
pub fn cyclic_dist(a: f64, b: f64) -> f64 {
    let d = cyclic_delta(a, b);
    d.min(TAU - d)
}

/// Difference `a - b` wrapped to `(-π, π]`.
pub fn signed_cyclic_diff(a: f64, b: f64) -> f64 {
    let d = cyclic_delta(b, a);
    if d > std::f64::consts::PI {
        d - TAU
    } else {
        d
    }
}

/// A cyclic interval `[start, start + width]` with `width` in `(0, 2π]`.
#[derive(Clone, Copy, Debug)]
pub struct AngleInterval {
    pub start: Angle,
    pub width: f64,
}

impl AngleInterval {
    pub fn new(start: Angle, width: f64) -> Self {
        debug_assert!(
            width > 0.0 && width <= TAU + ANGLE_EPS,
            "interval width {width} out of range"
        );
        Self {
            start,
            width: width.min(TAU),
        }
    }

    pub fn end(&self) -> Angle {
        if self.width >= TAU {
            self.start
        } else {
            Angle::new(self.start.rad() + self.width)
        }
    }

    /// Offset of `θ` past `start`, in `[0, 2π)`.
    pub fn offset_of(&self, theta: f64) -> f64 {
        cyclic_delta(self.start.rad(), theta)
    }

    pub fn contains(&self, theta: f64, eps: f64) -> bool {
        if self.width >= TAU - eps {
            return true;
        }
        let off = self.offset_of(theta);
        off <= self.width + eps || off >= TAU - eps
    }

    /// True when `θ` is in the open interior, at least `eps` from both ends.
    pub fn strictly_contains(&self, theta: f64, eps: f64) -> bool {
        if self.width >= TAU - eps {
            return true;
        }
        let off = self.offset_of(theta);
        off > eps && off < self.width - eps
    }

    pub fn midpoint(&self) -> Angle {
        Angle::new(self.start.rad() + 0.5 * self.width)
    }

    pub fn approx_eq(&self, other: &AngleInterval, eps: f64) -> bool {
        self.start.approx_eq(other.start, eps) && (self.width - other.width).abs() <= eps
    }
}
