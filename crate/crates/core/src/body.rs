//! The planar convex body: a cyclic partition of the normal circle into
//! support pieces, with the origin in the interior.
//!
//! Edges are implicit: at a junction angle β between consecutive pieces, a
//! positive contact jump along the tangent `u(β + π/2)` IS the edge with
//! outward normal `u(β)`. Zero jumps are smooth (or tangent) junctions.

use crate::angle::{cyclic_delta, cyclic_dist, Angle, AngleInterval, ANGLE_EPS};
use crate::error::{Error, Result};
use crate::face::Face;
use crate::geom::{dir, Point2};
use crate::numeric::{solve_increasing, ROOT_MAX_ITER, ROOT_XTOL};
use crate::piece::{PieceKind, SupportPiece};
use std::f64::consts::TAU;

/// Interiority margin for the origin.
pub const INT_EPS: f64 = 1e-9;
/// Strict-convexity floor for arc pieces.
pub const CURV_EPS: f64 = 1e-9;
/// Relative contact-jump tolerance (scaled by the body diameter).
pub const LEN_EPS_REL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct PlanarBody {
    pieces: Vec<SupportPiece>,
    metadata: Option<String>,
    scale: f64,
}

/// A junction between consecutive pieces.
#[derive(Clone, Debug)]
pub struct Junction {
    pub index: usize,
    pub angle: Angle,
    /// Contact reached from below (end of the previous piece).
    pub before: Point2,
    /// Contact leaving above (start of the next piece).
    pub after: Point2,
}

impl Junction {
    pub fn jump(&self) -> Point2 {
        self.after - self.before
    }
}

impl PlanarBody {
    /// Normalize and validate a piece list.
    pub fn new(pieces: Vec<SupportPiece>) -> Result<Self> {
        let body = Self::from_pieces_unchecked(normalize(pieces));
        body.validate()?;
        Ok(body)
    }

    /// Build without normalization or validation (for `validate` testing).
    pub fn from_pieces_unchecked(pieces: Vec<SupportPiece>) -> Self {
        let scale = rough_scale(&pieces);
        Self {
            pieces,
            metadata: None,
            scale,
        }
    }

    pub fn with_metadata(mut self, tag: impl Into<String>) -> Self {
        self.metadata = Some(tag.into());
        self
    }

    pub fn metadata(&self) -> Option<&str> {
        self.metadata.as_deref()
    }

    pub fn pieces(&self) -> &[SupportPiece] {
        &self.pieces
    }

    /// Rough magnitude of the body (max sampled |h|); tolerance scaling.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Length tolerance: `1e-9 ×` body diameter.
    pub fn len_eps(&self) -> f64 {
        LEN_EPS_REL * 2.0 * self.scale
    }

    /// First violated invariant, or `Ok(())`.
    pub fn validate(&self) -> Result<()> {
        let n = self.pieces.len();
        if n == 0 {
            return Err(Error::BadParam {
                what: "empty piece list".into(),
            });
        }
        // Partition of the normal circle.
        let total: f64 = self.pieces.iter().map(|p| p.interval.width).sum();
        if (total - TAU).abs() > 1e-6 {
            return Err(Error::IntervalGap {
                piece: 0,
                gap: total - TAU,
            });
        }
        for i in 0..n {
            let next = &self.pieces[(i + 1) % n];
            let gap = cyclic_dist(self.pieces[i].interval.end().rad(), next.interval.start.rad());
            if gap > 1e-6 {
                return Err(Error::IntervalGap { piece: i, gap });
            }
        }
        // Strict convexity of arcs.
        for (i, p) in self.pieces.iter().enumerate() {
            if p.is_arc() {
                let samples = 16 + (p.interval.width / TAU * 256.0) as usize;
                let min_curv = p.min_curvature(samples);
                if min_curv <= CURV_EPS {
                    return Err(Error::ArcNotStrictlyConvex {
                        piece: i,
                        min_curvature: min_curv,
                    });
                }
            }
        }
        // Junction jumps: on the supporting line, non-negative along the
        // ccw tangent; no duplicated adjacent corners.
        let eps = self.len_eps().max(1e-12);
        for j in self.junctions() {
            let u = dir(j.angle.rad());
            let t = crate::geom::dir_perp(j.angle.rad());
            let jump = j.jump();
            let off_line = jump.dot(u).abs();
            let along = jump.dot(t);
            if off_line > 1e-6 * self.scale.max(1.0) || along < -1e-6 * self.scale.max(1.0) {
                return Err(Error::NonconvexJump {
                    junction: j.index,
                    angle: j.angle.rad(),
                    defect: if along < 0.0 { along } else { off_line },
                });
            }
            if n > 1 {
                let prev = &self.pieces[(j.index + n - 1) % n];
                let here = &self.pieces[j.index];
                if let (PieceKind::Corner { point: a }, PieceKind::Corner { point: b }) =
                    (&prev.kind, &here.kind)
                {
                    if a.dist(*b) <= eps {
                        return Err(Error::NonconvexJump {
                            junction: j.index,
                            angle: j.angle.rad(),
                            defect: 0.0,
                        });
                    }
                }
            }
        }
        // Origin strictly interior: min over a support sample.
        let mut min_h = f64::INFINITY;
        for p in &self.pieces {
            let m = 8.max((p.interval.width / TAU * 128.0) as usize);
            for k in 0..=m {
                let th = p.interval.start.rad() + p.interval.width * k as f64 / m as f64;
                min_h = min_h.min(p.support(th));
            }
        }
        if min_h <= INT_EPS {
            return Err(Error::OriginNotInterior { min_support: min_h });
        }
        Ok(())
    }

    /// Index of the piece whose interval contains `θ` (junction angles
    /// resolve to the piece starting there).
    pub fn piece_index_at(&self, theta: f64) -> usize {
        let n = self.pieces.len();
        for (i, p) in self.pieces.iter().enumerate() {
            let off = p.interval.offset_of(theta);
            if off < p.interval.width - ANGLE_EPS {
                return i;
            }
        }
        // θ is at (or within eps of) some junction: pick the starting piece.
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, p) in self.pieces.iter().enumerate() {
            let d = cyclic_dist(p.interval.start.rad(), theta);
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        let _ = n;
        best
    }

    pub fn support_at(&self, theta: Angle) -> f64 {
        self.pieces[self.piece_index_at(theta.rad())].support(theta.rad())
    }

    /// Junction before piece `i` (between pieces `i-1` and `i`).
    pub fn junction(&self, i: usize) -> Junction {
        let n = self.pieces.len();
        let prev = &self.pieces[(i + n - 1) % n];
        let here = &self.pieces[i];
        Junction {
            index: i,
            angle: here.interval.start,
            before: prev.end_contact(),
            after: here.start_contact(),
        }
    }

    pub fn junctions(&self) -> impl Iterator<Item = Junction> + '_ {
        (0..self.pieces.len()).map(|i| self.junction(i))
    }

    /// Junctions carrying an edge (positive contact jump).
    pub fn edges(&self) -> Vec<Junction> {
        let eps = self.len_eps();
        self.junctions()
            .filter(|j| j.jump().norm() > eps)
            .collect()
    }

    pub fn nearest_junction(&self, theta: f64) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for (i, p) in self.pieces.iter().enumerate() {
            let d = cyclic_dist(p.interval.start.rad(), theta);
            if d < best.1 {
                best = (i, d);
            }
        }
        best
    }

    /// The exposed face `K ∩ H_K(u(θ))`.
    pub fn contact_set(&self, theta: Angle) -> Face {
        let (j, d) = self.nearest_junction(theta.rad());
        if d <= ANGLE_EPS && self.pieces.len() > 1 {
            let junction = self.junction(j);
            if junction.jump().norm() > self.len_eps() {
                return Face::Segment(junction.before, junction.after);
            }
            return Face::Point(junction.after);
        }
        let i = self.piece_index_at(theta.rad());
        Face::Point(self.pieces[i].contact(theta.rad()))
    }

    /// Boundary features ordered by position angle (used for radial rays).
    pub fn boundary_features(&self) -> Vec<BoundaryFeature> {
        let n = self.pieces.len();
        let eps = self.len_eps();
        let mut feats = Vec::with_capacity(2 * n);
        for i in 0..n {
            let j = self.junction(i);
            if j.jump().norm() > eps {
                feats.push(BoundaryFeature::Edge {
                    junction: i,
                    a: j.before,
                    b: j.after,
                });
            }
            let p = &self.pieces[i];
            match &p.kind {
                PieceKind::Corner { point } => feats.push(BoundaryFeature::Corner {
                    piece: i,
                    point: *point,
                }),
                _ => feats.push(BoundaryFeature::Arc { piece: i }),
            }
        }
        feats
    }

    /// Locate the boundary feature hit by the ray in direction `u(θ)`.
    pub fn locate_ray(&self, theta: Angle) -> Result<RayHit> {
        let th = theta.rad();
        let full_circle = self.pieces.len() == 1;
        for feat in self.boundary_features() {
            match feat {
                BoundaryFeature::Edge { junction, a, b } => {
                    let (pa, pb) = (a.pos_angle().rad(), b.pos_angle().rad());
                    let w = cyclic_delta(pa, pb);
                    let off = cyclic_delta(pa, th);
                    if off <= w + ANGLE_EPS || off >= TAU - ANGLE_EPS {
                        let point = ray_segment(th, a, b);
                        return Ok(RayHit::Edge { junction, point });
                    }
                }
                BoundaryFeature::Corner { piece, point } => {
                    if cyclic_dist(point.pos_angle().rad(), th) <= ANGLE_EPS {
                        return Ok(RayHit::Corner { piece, point });
                    }
                }
                BoundaryFeature::Arc { piece } => {
                    let p = &self.pieces[piece];
                    let (pa, pb) = (
                        p.start_contact().pos_angle().rad(),
                        p.end_contact().pos_angle().rad(),
                    );
                    let w = if full_circle || p.interval.width >= TAU - ANGLE_EPS {
                        TAU
                    } else {
                        cyclic_delta(pa, pb)
                    };
                    let off = cyclic_delta(pa, th);
                    if off <= w + ANGLE_EPS || off >= TAU - ANGLE_EPS {
                        if let Some(hit) = self.ray_on_arc(piece, th)? {
                            return Ok(hit);
                        }
                    }
                }
            }
        }
        // Tolerance fallthrough: nearest corner by position angle.
        let mut best: Option<(f64, usize, Point2)> = None;
        for feat in self.boundary_features() {
            if let BoundaryFeature::Corner { piece, point } = feat {
                let d = cyclic_dist(point.pos_angle().rad(), th);
                if best.map_or(true, |(bd, _, _)| d < bd) {
                    best = Some((d, piece, point));
                }
            }
        }
        best.map(|(_, piece, point)| RayHit::Corner { piece, point })
            .ok_or(Error::NumericNonconvergence {
                context: "locate_ray",
            })
    }

    /// Distance from the origin to the boundary along `u(θ)`.
    pub fn radial_at(&self, theta: Angle) -> Result<f64> {
        Ok(self.locate_ray(theta)?.point().norm())
    }

    /// Boundary point `ρ(θ) u(θ)`.
    pub fn boundary_point_at(&self, theta: Angle) -> Result<Point2> {
        Ok(self.locate_ray(theta)?.point())
    }

    /// Invert the (monotone) position-angle map on one arc piece.
    fn ray_on_arc(&self, piece: usize, th: f64) -> Result<Option<RayHit>> {
        let p = &self.pieces[piece];
        match &p.kind {
            PieceKind::Corner { .. } => Ok(None),
            PieceKind::CircularArc { center, radius } => {
                // Ray-circle intersection, outer root.
                let cu = center.dot(dir(th));
                let disc = cu * cu - center.norm2() + radius * radius;
                if disc < 0.0 {
                    return Ok(None);
                }
                let rho = cu + disc.sqrt();
                let point = dir(th) * rho;
                let normal = (point - *center).pos_angle().rad();
                Ok(Some(RayHit::Arc {
                    piece,
                    normal,
                    point,
                }))
            }
            PieceKind::SampledArc { .. } => {
                let lo = p.interval.start.rad();
                let hi = lo + p.interval.width;
                let g = |psi: f64| {
                    let (h, dh, ddh) = p.support_d2(psi);
                    let x = dir(psi) * h + crate::geom::dir_perp(psi) * dh;
                    let val = crate::angle::signed_cyclic_diff(x.pos_angle().rad(), th);
                    let slope = h * (h + ddh) / x.norm2().max(1e-300);
                    (val, Some(slope))
                };
                let psi = solve_increasing(g, lo, hi, ROOT_XTOL, ROOT_MAX_ITER, "radial_at")?;
                let (h, dh) = p.support_d(psi);
                let x = dir(psi) * h + crate::geom::dir_perp(psi) * dh;
                Ok(Some(RayHit::Arc {
                    piece,
                    normal: psi,
                    point: x,
                }))
            }
        }
    }

    pub fn rotated(&self, by: Angle) -> Self {
        let pieces = normalize(self.pieces.iter().map(|p| p.rotated(by.rad())).collect());
        Self {
            scale: self.scale,
            metadata: self.metadata.clone(),
            pieces,
        }
    }

    /// Point reflection through the origin (`x ↦ -x`).
    pub fn reflected(&self) -> Self {
        let pieces = normalize(self.pieces.iter().map(|p| p.reflected()).collect());
        Self {
            scale: self.scale,
            metadata: self.metadata.clone(),
            pieces,
        }
    }
}

#[derive(Clone, Debug)]
pub enum BoundaryFeature {
    /// Edge at junction `junction`, from `a` to `b` (ccw).
    Edge { junction: usize, a: Point2, b: Point2 },
    Corner { piece: usize, point: Point2 },
    Arc { piece: usize },
}

/// Where a radial ray meets the boundary.
#[derive(Clone, Debug)]
pub enum RayHit {
    Edge { junction: usize, point: Point2 },
    Corner { piece: usize, point: Point2 },
    /// Hit inside an arc, with the outward normal angle there.
    Arc {
        piece: usize,
        normal: f64,
        point: Point2,
    },
}

impl RayHit {
    pub fn point(&self) -> Point2 {
        match self {
            RayHit::Edge { point, .. } => *point,
            RayHit::Corner { point, .. } => *point,
            RayHit::Arc { point, .. } => *point,
        }
    }
}

fn ray_segment(th: f64, a: Point2, b: Point2) -> Point2 {
    let u = dir(th);
    let denom = u.cross(b - a);
    if denom.abs() < 1e-300 {
        // Ray parallel to the edge: the nearer endpoint radially.
        return if a.dot(u) >= b.dot(u) { a } else { b };
    }
    let t = (u.cross(a) / -denom).clamp(0.0, 1.0);
    a + (b - a) * t
}

fn rough_scale(pieces: &[SupportPiece]) -> f64 {
    let mut m: f64 = 0.0;
    for p in pieces {
        for k in 0..=8 {
            let th = p.interval.start.rad() + p.interval.width * k as f64 / 8.0;
            m = m.max(p.support(th).abs());
        }
    }
    m.max(1e-9)
}

/// Canonical form: sort by start angle, merge identical neighbours, elide
/// zero-width pieces (which also merges collinear edges).
fn normalize(mut pieces: Vec<SupportPiece>) -> Vec<SupportPiece> {
    if pieces.is_empty() {
        return pieces;
    }
    let scale = rough_scale(&pieces);
    let geom_eps = 1e-11 * scale.max(1.0);
    pieces.sort_by(|a, b| {
        a.interval
            .start
            .rad()
            .partial_cmp(&b.interval.start.rad())
            .unwrap()
    });
    loop {
        let mut changed = false;
        // Elide zero-width pieces, widening the follower backwards.
        if pieces.len() > 1 {
            let mut i = 0;
            while i < pieces.len() && pieces.len() > 1 {
                if pieces[i].interval.width <= ANGLE_EPS {
                    let start = pieces[i].interval.start;
                    let width = pieces[i].interval.width;
                    let n = pieces.len();
                    let next = (i + 1) % n;
                    let nw = pieces[next].interval.width + width;
                    pieces[next] = pieces[next].with_interval(start, nw);
                    pieces.remove(i);
                    changed = true;
                } else {
                    i += 1;
                }
            }
        }
        // Merge consecutive pieces with identical geometry.
        let mut i = 0;
        while pieces.len() > 1 && i < pieces.len() {
            let n = pieces.len();
            let j = (i + 1) % n;
            if j == i {
                break;
            }
            let same = match (&pieces[i].kind, &pieces[j].kind) {
                (PieceKind::Corner { point: a }, PieceKind::Corner { point: b }) => {
                    a.dist(*b) <= geom_eps
                }
                (
                    PieceKind::CircularArc {
                        center: c1,
                        radius: r1,
                    },
                    PieceKind::CircularArc {
                        center: c2,
                        radius: r2,
                    },
                ) => c1.dist(*c2) <= geom_eps && (r1 - r2).abs() <= geom_eps,
                _ => false,
            };
            let adjacent = cyclic_dist(
                pieces[i].interval.end().rad(),
                pieces[j].interval.start.rad(),
            ) <= ANGLE_EPS;
            let total = pieces[i].interval.width + pieces[j].interval.width;
            if same && adjacent && total <= TAU + ANGLE_EPS {
                let start = pieces[i].interval.start;
                pieces[i] = pieces[i].with_interval(start, total.min(TAU));
                pieces.remove(j);
                changed = true;
                if j < i {
                    break; // wrapped merge consumed the head; restart
                }
            } else {
                i += 1;
            }
        }
        if !changed {
            break;
        }
    }
    if pieces.len() == 1 {
        let start = pieces[0].interval.start;
        pieces[0] = pieces[0].with_interval(start, TAU);
    }
    pieces.sort_by(|a, b| {
        a.interval
            .start
            .rad()
            .partial_cmp(&b.interval.start.rad())
            .unwrap()
    });
    pieces
}
