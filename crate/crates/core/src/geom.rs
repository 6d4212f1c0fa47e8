//! Euclidean points/vectors in the plane.

use crate::angle::Angle;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

pub fn pt(x: f64, y: f64) -> Point2 {
    Point2 { x, y }
}

/// Unit vector `u(θ) = (cos θ, sin θ)`.
pub fn dir(theta: f64) -> Point2 {
    pt(theta.cos(), theta.sin())
}

/// Counterclockwise tangent `u(θ + π/2) = (-sin θ, cos θ)`.
pub fn dir_perp(theta: f64) -> Point2 {
    pt(-theta.sin(), theta.cos())
}

impl Point2 {
    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product `self × o`.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    /// Position angle `atan2(y, x)` canonicalized to `[0, 2π)`.
    pub fn pos_angle(self) -> Angle {
        Angle::new(self.y.atan2(self.x))
    }

    pub fn rotated(self, by: Angle) -> Point2 {
        let (s, c) = by.rad().sin_cos();
        pt(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn approx_eq(self, o: Point2, eps: f64) -> bool {
        self.dist(o) <= eps
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        pt(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        pt(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        pt(-self.x, -self.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        pt(self.x * s, self.y * s)
    }
}

impl Div<f64> for Point2 {
    type Output = Point2;
    fn div(self, s: f64) -> Point2 {
        pt(self.x / s, self.y / s)
    }
}

/// Distance from `x` to the closed segment `[a, b]`.
pub fn dist_to_segment(x: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm2();
    if len2 == 0.0 {
        return x.dist(a);
    }
    let t = ((x - a).dot(ab) / len2).clamp(0.0, 1.0);
    x.dist(a + ab * t)
}
