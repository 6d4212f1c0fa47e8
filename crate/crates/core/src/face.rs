//! Faces of a planar convex body and cones on the normal side.
//!
//! In the plane every non-empty proper face is an extremal point or a
//! segment; every touching cone is the origin, a ray, a salient sector
//! (a corner's normal cone), or the whole plane.

use crate::angle::{cyclic_delta, Angle, AngleInterval, ANGLE_EPS};
use crate::geom::{dist_to_segment, Point2};
use std::f64::consts::PI;
use std::fmt;

#[derive(Clone, Debug)]
pub enum Face {
    Empty,
    Point(Point2),
    Segment(Point2, Point2),
    Whole,
}

impl Face {
    pub fn approx_eq(&self, other: &Face, eps: f64) -> bool {
        match (self, other) {
            (Face::Empty, Face::Empty) | (Face::Whole, Face::Whole) => true,
            (Face::Point(a), Face::Point(b)) => a.approx_eq(*b, eps),
            (Face::Segment(a, b), Face::Segment(c, d)) => {
                (a.approx_eq(*c, eps) && b.approx_eq(*d, eps))
                    || (a.approx_eq(*d, eps) && b.approx_eq(*c, eps))
            }
            _ => false,
        }
    }

    /// Set inclusion `self ⊆ other`, up to `eps`.
    pub fn subset_of(&self, other: &Face, eps: f64) -> bool {
        match (self, other) {
            (Face::Empty, _) => true,
            (_, Face::Whole) => true,
            (Face::Point(p), Face::Point(q)) => p.approx_eq(*q, eps),
            (Face::Point(p), Face::Segment(a, b)) => dist_to_segment(*p, *a, *b) <= eps,
            (Face::Segment(a, b), Face::Segment(c, d)) => {
                dist_to_segment(*a, *c, *d) <= eps && dist_to_segment(*b, *c, *d) <= eps
            }
            _ => false,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Face::Empty)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Face::Empty => write!(f, "empty"),
            Face::Point(p) => write!(f, "point({:.6},{:.6})", p.x, p.y),
            Face::Segment(a, b) => write!(
                f,
                "segment({:.6},{:.6})-({:.6},{:.6})",
                a.x, a.y, b.x, b.y
            ),
            Face::Whole => write!(f, "whole"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Cone {
    Origin,
    Ray(Angle),
    /// Salient sector, width in `(0, π)`.
    Sector(AngleInterval),
    FullPlane,
}

impl Cone {
    pub fn sector(from: Angle, to: Angle) -> Cone {
        let w = cyclic_delta(from.rad(), to.rad());
        debug_assert!(w > 0.0 && w < PI + ANGLE_EPS, "sector width {w}");
        Cone::Sector(AngleInterval::new(from, w))
    }

    pub fn dim(&self) -> usize {
        match self {
            Cone::Origin => 0,
            Cone::Ray(_) => 1,
            Cone::Sector(_) => 2,
            Cone::FullPlane => 2,
        }
    }

    pub fn approx_eq(&self, other: &Cone, eps: f64) -> bool {
        match (self, other) {
            (Cone::Origin, Cone::Origin) | (Cone::FullPlane, Cone::FullPlane) => true,
            (Cone::Ray(a), Cone::Ray(b)) => a.approx_eq(*b, eps),
            (Cone::Sector(a), Cone::Sector(b)) => a.approx_eq(b, eps),
            _ => false,
        }
    }

    /// Set inclusion `self ⊆ other`, up to `eps` on angles.
    pub fn subset_of(&self, other: &Cone, eps: f64) -> bool {
        match (self, other) {
            (Cone::Origin, _) => true,
            (_, Cone::FullPlane) => true,
            (Cone::Ray(a), Cone::Ray(b)) => a.approx_eq(*b, eps),
            (Cone::Ray(a), Cone::Sector(s)) => s.contains(a.rad(), eps),
            (Cone::Sector(s), Cone::Sector(t)) => {
                t.contains(s.start.rad(), eps) && t.contains(s.end().rad(), eps)
                    && s.width <= t.width + eps
            }
            _ => false,
        }
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cone::Origin => write!(f, "origin"),
            Cone::Ray(a) => write!(f, "ray({:.6})", a.rad()),
            Cone::Sector(s) => write!(f, "sector[{:.6},{:.6}]", s.start.rad(), s.end().rad()),
            Cone::FullPlane => write!(f, "plane"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::pt;

    #[test]
    fn face_inclusion() {
        let seg = Face::Segment(pt(-0.5, -0.5), pt(0.5, -0.5));
        assert!(Face::Point(pt(0.5, -0.5)).subset_of(&seg, 1e-9));
        assert!(Face::Point(pt(0.0, -0.5)).subset_of(&seg, 1e-9));
        assert!(!Face::Point(pt(0.0, 0.0)).subset_of(&seg, 1e-9));
        assert!(seg.subset_of(&Face::Whole, 1e-9));
        assert!(Face::Empty.subset_of(&Face::Empty, 1e-9));
    }

    #[test]
    fn cone_inclusion() {
        let s = Cone::sector(Angle::new(1.0), Angle::new(2.0));
        assert!(Cone::Ray(Angle::new(1.0)).subset_of(&s, 1e-9));
        assert!(Cone::Ray(Angle::new(1.5)).subset_of(&s, 1e-9));
        assert!(!Cone::Ray(Angle::new(2.5)).subset_of(&s, 1e-9));
        assert!(s.subset_of(&Cone::FullPlane, 1e-9));
        assert!(Cone::Origin.subset_of(&Cone::Ray(Angle::new(0.3)), 1e-9));
    }
}
