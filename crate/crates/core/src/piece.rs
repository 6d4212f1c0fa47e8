//! Support pieces: one angular interval of outward normals.
//!
//! A piece is either a CORNER (fixed contact point, supporting lines pivot
//! around it) or an arc of a strictly convex boundary stretch, given in
//! closed form (circle) or as a sampled support table. Evaluation formulas
//! are global in θ; the interval only assigns the piece its slice of the
//! normal circle.

use crate::angle::{cyclic_delta, Angle, AngleInterval, ANGLE_EPS};
use crate::error::{Error, Result};
use crate::geom::{dir, dir_perp, Point2};
use crate::interp::MonotoneCubic;
use std::f64::consts::TAU;
use std::sync::Arc;

/// Minimum number of samples in a sampled-arc table.
pub const MIN_ARC_SAMPLES: usize = 8;

#[derive(Clone, Debug)]
pub enum PieceKind {
    Corner {
        point: Point2,
    },
    CircularArc {
        center: Point2,
        radius: f64,
    },
    SampledArc {
        table: Arc<MonotoneCubic>,
    },
}

#[derive(Clone, Debug)]
pub struct SupportPiece {
    pub kind: PieceKind,
    pub interval: AngleInterval,
}

impl SupportPiece {
    pub fn corner(point: Point2, start: Angle, width: f64) -> Self {
        Self {
            kind: PieceKind::Corner { point },
            interval: AngleInterval::new(start, width),
        }
    }

    pub fn circular(center: Point2, radius: f64, start: Angle, width: f64) -> Self {
        Self {
            kind: PieceKind::CircularArc { center, radius },
            interval: AngleInterval::new(start, width),
        }
    }

    /// Sampled arc over the table's own domain; `xs[0]` is canonicalized to
    /// `[0, 2π)` and becomes the interval start.
    pub fn sampled(table: MonotoneCubic) -> Result<Self> {
        if table.xs().len() < MIN_ARC_SAMPLES {
            return Err(Error::BadParam {
                what: format!(
                    "sampled arc needs at least {MIN_ARC_SAMPLES} samples, got {}",
                    table.xs().len()
                ),
            });
        }
        let width = table.x_max() - table.x_min();
        if width <= 0.0 || width > TAU + ANGLE_EPS {
            return Err(Error::BadParam {
                what: format!("sampled arc spans {width} rad"),
            });
        }
        let start = Angle::new(table.x_min());
        let table = rebase(&table, start.rad() - table.x_min());
        Ok(Self {
            kind: PieceKind::SampledArc {
                table: Arc::new(table),
            },
            interval: AngleInterval::new(start, width.min(TAU)),
        })
    }

    /// Lift a canonical angle next to this piece's table/interval frame.
    fn lift(&self, theta: f64) -> f64 {
        let anchor = match &self.kind {
            PieceKind::SampledArc { table } => table.x_min(),
            _ => self.interval.start.rad(),
        };
        anchor + cyclic_delta(anchor, theta)
    }

    pub fn support(&self, theta: f64) -> f64 {
        match &self.kind {
            PieceKind::Corner { point } => point.dot(dir(theta)),
            PieceKind::CircularArc { center, radius } => center.dot(dir(theta)) + radius,
            PieceKind::SampledArc { table } => table.eval(self.lift(theta)),
        }
    }

    /// Support value and first derivative.
    pub fn support_d(&self, theta: f64) -> (f64, f64) {
        match &self.kind {
            PieceKind::Corner { point } => (point.dot(dir(theta)), point.dot(dir_perp(theta))),
            PieceKind::CircularArc { center, radius } => (
                center.dot(dir(theta)) + radius,
                center.dot(dir_perp(theta)),
            ),
            PieceKind::SampledArc { table } => table.eval_with_d(self.lift(theta)),
        }
    }

    /// Support value, first and second derivative. `h + h''` is the
    /// curvature radius of the contact curve.
    pub fn support_d2(&self, theta: f64) -> (f64, f64, f64) {
        match &self.kind {
            PieceKind::Corner { point } => {
                let h = point.dot(dir(theta));
                (h, point.dot(dir_perp(theta)), -h)
            }
            PieceKind::CircularArc { center, radius } => {
                let c = center.dot(dir(theta));
                (c + radius, center.dot(dir_perp(theta)), -c)
            }
            PieceKind::SampledArc { table } => table.eval_with_d2(self.lift(theta)),
        }
    }

    /// Contact point of the supporting line with normal `u(θ)`.
    pub fn contact(&self, theta: f64) -> Point2 {
        match &self.kind {
            PieceKind::Corner { point } => *point,
            PieceKind::CircularArc { center, radius } => *center + dir(theta) * *radius,
            PieceKind::SampledArc { .. } => {
                let (h, dh) = self.support_d(theta);
                dir(theta) * h + dir_perp(theta) * dh
            }
        }
    }

    /// Contact at the given offset into the interval (exact at the ends).
    pub fn contact_at_offset(&self, offset: f64) -> Point2 {
        let theta = self.interval.start.rad() + offset.clamp(0.0, self.interval.width);
        match &self.kind {
            PieceKind::Corner { point } => *point,
            PieceKind::CircularArc { center, radius } => *center + dir(theta) * *radius,
            PieceKind::SampledArc { table } => {
                let t = (table.x_min() + offset.clamp(0.0, self.interval.width))
                    .min(table.x_max());
                let (h, dh) = table.eval_with_d(t);
                dir(t) * h + dir_perp(t) * dh
            }
        }
    }

    pub fn start_contact(&self) -> Point2 {
        self.contact_at_offset(0.0)
    }

    pub fn end_contact(&self) -> Point2 {
        self.contact_at_offset(self.interval.width)
    }

    pub fn is_arc(&self) -> bool {
        !matches!(self.kind, PieceKind::Corner { .. })
    }

    pub fn rotated(&self, by: f64) -> Self {
        let start = Angle::new(self.interval.start.rad() + by);
        let kind = match &self.kind {
            PieceKind::Corner { point } => PieceKind::Corner {
                point: point.rotated(Angle::new(by)),
            },
            PieceKind::CircularArc { center, radius } => PieceKind::CircularArc {
                center: center.rotated(Angle::new(by)),
                radius: *radius,
            },
            PieceKind::SampledArc { table } => {
                let shifted = table.shifted(by);
                let rebased = rebase(&shifted, Angle::new(shifted.x_min()).rad() - shifted.x_min());
                PieceKind::SampledArc {
                    table: Arc::new(rebased),
                }
            }
        };
        Self {
            kind,
            interval: AngleInterval::new(start, self.interval.width),
        }
    }

    /// Point reflection through the origin: normals shift by π, contact
    /// points negate.
    pub fn reflected(&self) -> Self {
        let rotated = self.rotated(std::f64::consts::PI);
        let kind = match rotated.kind {
            PieceKind::Corner { point } => PieceKind::Corner { point: -point },
            PieceKind::CircularArc { center, radius } => PieceKind::CircularArc {
                center: -center,
                radius,
            },
            // h_{-K}(u) = h_K(-u): the shifted table already encodes it.
            k @ PieceKind::SampledArc { .. } => k,
        };
        Self { kind, ..rotated }
    }

    /// Same piece restricted to a sub-interval (tables are kept whole).
    pub fn with_interval(&self, start: Angle, width: f64) -> Self {
        Self {
            kind: self.kind.clone(),
            interval: AngleInterval::new(start, width),
        }
    }

    /// Minimum of `h + h''` sampled across the interval.
    pub fn min_curvature(&self, samples: usize) -> f64 {
        match &self.kind {
            PieceKind::Corner { .. } => f64::INFINITY,
            PieceKind::CircularArc { radius, .. } => *radius,
            PieceKind::SampledArc { table } => {
                let (lo, hi) = (
                    table.x_min(),
                    table.x_min() + self.interval.width.min(table.x_max() - table.x_min()),
                );
                let mut min = f64::INFINITY;
                for i in 0..=samples {
                    let t = lo + (hi - lo) * i as f64 / samples as f64;
                    let (h, _, ddh) = table.eval_with_d2(t);
                    min = min.min(h + ddh);
                }
                min
            }
        }
    }
}

fn rebase(table: &MonotoneCubic, delta: f64) -> MonotoneCubic {
    if delta == 0.0 {
        table.clone()
    } else {
        table.shifted(delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::pt;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn corner_support_and_contact() {
        let p = SupportPiece::corner(pt(0.0, 2.0), Angle::new(PI / 6.0), 2.0 * PI / 3.0);
        assert!((p.support(FRAC_PI_2) - 2.0).abs() < 1e-15);
        assert!(p.contact(1.0).approx_eq(pt(0.0, 2.0), 1e-15));
        let (h, _, ddh) = p.support_d2(FRAC_PI_2);
        assert!((h + ddh).abs() < 1e-15);
    }

    #[test]
    fn circular_arc_contact_matches_parametrization() {
        let p = SupportPiece::circular(pt(0.5, 0.0), 0.5, Angle::new(3.0 * PI / 2.0), FRAC_PI_2);
        let theta = 3.0 * PI / 2.0 + 0.3;
        assert!(p
            .contact(theta)
            .approx_eq(pt(0.5, 0.0) + dir(theta) * 0.5, 1e-15));
        assert!((p.min_curvature(4) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn sampled_arc_reproduces_circle() {
        // h(θ) = 1 on [0, π/2]: quarter of the unit circle.
        let n = 32;
        let xs: Vec<f64> = (0..n).map(|i| FRAC_PI_2 * i as f64 / (n - 1) as f64).collect();
        let ys = vec![1.0; n];
        let ds = vec![0.0; n];
        let p = SupportPiece::sampled(MonotoneCubic::with_slopes(xs, ys, ds).unwrap()).unwrap();
        assert!((p.support(0.7) - 1.0).abs() < 1e-14);
        assert!(p.contact(0.7).approx_eq(dir(0.7), 1e-12));
        assert!(p.end_contact().approx_eq(dir(FRAC_PI_2), 1e-12));
    }

    #[test]
    fn reflection_is_involution() {
        let p = SupportPiece::circular(pt(0.3, -0.1), 1.2, Angle::new(1.0), 1.5);
        let q = p.reflected().reflected();
        for i in 0..10 {
            let th = 1.0 + 1.5 * i as f64 / 9.0;
            assert!((p.support(th) - q.support(th)).abs() < 1e-12);
        }
    }
}
