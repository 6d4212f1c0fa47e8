//! Face calculus: boundary classification, the maps Φ and Ψ, exposed and
//! normal closures, positive hull isomorphisms, conjugate faces and their
//! preimages, coatoms/completeness, lattice joins and meets, and the census
//! with its linear identities.
//!
//! Everything combinatorial (which junctions carry edges, corner classes,
//! completeness) is decided from the piece structure, never numerically.

use crate::angle::{Angle, AngleInterval, ANGLE_EPS};
use crate::body::{PlanarBody, RayHit};
use crate::error::{Error, Result};
use crate::face::{Cone, Face};
use crate::geom::{dist_to_segment, Point2};
use crate::piece::PieceKind;
use crate::polarity::polar;
use std::fmt;

/// Classification of an extremal point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremalClass {
    SmoothExposed,
    NonExposed,
    PolyhedralCorner,
    MixedCorner,
    FreeCorner,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CornerClass {
    Polyhedral,
    Mixed,
    Free,
}

impl CornerClass {
    pub fn as_extremal(self) -> ExtremalClass {
        match self {
            CornerClass::Polyhedral => ExtremalClass::PolyhedralCorner,
            CornerClass::Mixed => ExtremalClass::MixedCorner,
            CornerClass::Free => ExtremalClass::FreeCorner,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SegmentInfo {
    pub junction: usize,
    pub angle: Angle,
    pub a: Point2,
    pub b: Point2,
}

impl SegmentInfo {
    pub fn face(&self) -> Face {
        Face::Segment(self.a, self.b)
    }
}

#[derive(Clone, Debug)]
pub struct CornerInfo {
    pub piece: usize,
    pub point: Point2,
    pub interval: AngleInterval,
    pub class: CornerClass,
    pub start_has_edge: bool,
    pub end_has_edge: bool,
}

#[derive(Clone, Debug)]
pub struct NonExposedInfo {
    pub point: Point2,
    /// Normal ray direction (the incident segment's junction angle).
    pub normal: Angle,
    pub segment: (Point2, Point2),
}

/// All countable special faces: segments, corners, non-exposed points.
/// Smooth exposed points are uncountable and never enumerated.
#[derive(Clone, Debug, Default)]
pub struct SpecialFaces {
    pub segments: Vec<SegmentInfo>,
    pub corners: Vec<CornerInfo>,
    pub non_exposed: Vec<NonExposedInfo>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecialKind {
    Segment,
    Extremal(ExtremalClass),
}

impl SpecialFaces {
    pub fn entries(&self) -> Vec<(Face, SpecialKind)> {
        let mut out = Vec::new();
        for s in &self.segments {
            out.push((s.face(), SpecialKind::Segment));
        }
        for c in &self.corners {
            out.push((
                Face::Point(c.point),
                SpecialKind::Extremal(c.class.as_extremal()),
            ));
        }
        for n in &self.non_exposed {
            out.push((
                Face::Point(n.point),
                SpecialKind::Extremal(ExtremalClass::NonExposed),
            ));
        }
        out
    }
}

/// Enumerate segments and classified special points.
pub fn special_faces(body: &PlanarBody) -> SpecialFaces {
    let n = body.pieces().len();
    let eps = body.len_eps();
    let mut out = SpecialFaces::default();
    let has_edge: Vec<bool> = (0..n)
        .map(|i| body.junction(i).jump().norm() > eps)
        .collect();
    for i in 0..n {
        let j = body.junction(i);
        if has_edge[i] {
            out.segments.push(SegmentInfo {
                junction: i,
                angle: j.angle,
                a: j.before,
                b: j.after,
            });
            // Segment endpoints on arcs are non-exposed points.
            let prev = (i + n - 1) % n;
            if body.pieces()[prev].is_arc() {
                out.non_exposed.push(NonExposedInfo {
                    point: j.before,
                    normal: j.angle,
                    segment: (j.before, j.after),
                });
            }
            if body.pieces()[i].is_arc() {
                out.non_exposed.push(NonExposedInfo {
                    point: j.after,
                    normal: j.angle,
                    segment: (j.before, j.after),
                });
            }
        }
        if let PieceKind::Corner { point } = &body.pieces()[i].kind {
            let start_has_edge = has_edge[i];
            let end_has_edge = has_edge[(i + 1) % n];
            let class = match (start_has_edge, end_has_edge) {
                (true, true) => CornerClass::Polyhedral,
                (false, false) => CornerClass::Free,
                _ => CornerClass::Mixed,
            };
            out.corners.push(CornerInfo {
                piece: i,
                point: *point,
                interval: body.pieces()[i].interval,
                class,
                start_has_edge,
                end_has_edge,
            });
        }
    }
    out
}

/// The census `(n, p, m, f, s)` of a planar body.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Census {
    /// Non-exposed points.
    pub n: usize,
    /// Polyhedral corners.
    pub p: usize,
    /// Mixed corners.
    pub m: usize,
    /// Free corners.
    pub f: usize,
    /// Segments.
    pub s: usize,
}

impl fmt::Display for Census {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            fm,
            "n={} p={} m={} f={} s={}",
            self.n, self.p, self.m, self.f, self.s
        )
    }
}

pub fn census(body: &PlanarBody) -> Census {
    let sf = special_faces(body);
    Census {
        n: sf.non_exposed.len(),
        p: sf
            .corners
            .iter()
            .filter(|c| c.class == CornerClass::Polyhedral)
            .count(),
        m: sf
            .corners
            .iter()
            .filter(|c| c.class == CornerClass::Mixed)
            .count(),
        f: sf
            .corners
            .iter()
            .filter(|c| c.class == CornerClass::Free)
            .count(),
        s: sf.segments.len(),
    }
}

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub label: String,
    pub lhs: i64,
    pub rhs: i64,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The three linear equations of a polar/dual pair, both primed and
/// unprimed: `n = m° + 2f°`, `s = p° + m° + f°`, `2s = n + 2p + m`.
pub fn check_pair_identities(k: &Census, p: &Census) -> Vec<IdentityCheck> {
    let c = |label: &str, lhs: i64, rhs: i64| IdentityCheck {
        label: label.into(),
        lhs,
        rhs,
    };
    vec![
        c("n = m° + 2f°", k.n as i64, (p.m + 2 * p.f) as i64),
        c("n° = m + 2f", p.n as i64, (k.m + 2 * k.f) as i64),
        c("s = p° + m° + f°", k.s as i64, (p.p + p.m + p.f) as i64),
        c("s° = p + m + f", p.s as i64, (k.p + k.m + k.f) as i64),
        c("2s = n + 2p + m", 2 * k.s as i64, (k.n + 2 * k.p + k.m) as i64),
        c(
            "2s° = n° + 2p° + m°",
            2 * p.s as i64,
            (p.n + 2 * p.p + p.m) as i64,
        ),
    ]
}

/// Self-dual identity `s - p = n - f = (n + m)/2`, checked without halves.
pub fn check_selfdual_identity(c: &Census) -> Vec<IdentityCheck> {
    vec![
        IdentityCheck {
            label: "s - p = n - f".into(),
            lhs: c.s as i64 - c.p as i64,
            rhs: c.n as i64 - c.f as i64,
        },
        IdentityCheck {
            label: "2(s - p) = n + m".into(),
            lhs: 2 * (c.s as i64 - c.p as i64),
            rhs: (c.n + c.m) as i64,
        },
    ]
}

/// Coordinate tolerance for face identification.
pub fn face_tol(body: &PlanarBody) -> f64 {
    body.len_eps().max(1e-9)
}

/// The normal cone `N(x)` at a boundary point.
pub fn normal_cone(body: &PlanarBody, x: Point2) -> Result<Cone> {
    let tol = face_tol(body);
    for p in body.pieces() {
        if let PieceKind::Corner { point } = &p.kind {
            if point.dist(x) <= tol {
                return Ok(Cone::Sector(p.interval));
            }
        }
    }
    match body.locate_ray(x.pos_angle())? {
        RayHit::Edge { junction, .. } => {
            let j = body.junction(junction);
            if dist_to_segment(x, j.before, j.after) <= tol {
                return Ok(Cone::Ray(j.angle));
            }
        }
        RayHit::Corner { point, .. } => {
            if point.dist(x) <= tol {
                // Covered above; defensive.
                let idx = body
                    .pieces()
                    .iter()
                    .position(|p| matches!(&p.kind, PieceKind::Corner { point: q } if q.dist(x) <= tol));
                if let Some(i) = idx {
                    return Ok(Cone::Sector(body.pieces()[i].interval));
                }
            }
        }
        RayHit::Arc { normal, point, .. } => {
            if point.dist(x) <= tol {
                return Ok(Cone::Ray(Angle::new(normal)));
            }
        }
    }
    Err(Error::NotOnBoundary { x: x.x, y: x.y })
}

/// Ψ: faces to normal cones. `Ψ(∅) = ℝ²`, `Ψ(K) = {0}`, segments map to
/// their edge normal ray, points to their normal cone.
pub fn psi(body: &PlanarBody, face: &Face) -> Result<Cone> {
    let tol = face_tol(body);
    match face {
        Face::Empty => Ok(Cone::FullPlane),
        Face::Whole => Ok(Cone::Origin),
        Face::Segment(a, b) => {
            for s in &special_faces(body).segments {
                if s.face().approx_eq(face, tol) {
                    return Ok(Cone::Ray(s.angle));
                }
            }
            let _ = (a, b);
            Err(Error::NotAFace {
                what: face.to_string(),
            })
        }
        Face::Point(x) => {
            // Must be extremal: interior points of edges are not faces.
            for s in &special_faces(body).segments {
                let on_edge = dist_to_segment(*x, s.a, s.b) <= tol;
                let at_end = x.dist(s.a) <= tol || x.dist(s.b) <= tol;
                if on_edge && !at_end {
                    return Err(Error::NotAFace {
                        what: face.to_string(),
                    });
                }
            }
            normal_cone(body, *x).map_err(|_| Error::NotAFace {
                what: face.to_string(),
            })
        }
    }
}

/// Φ: touching cones to exposed faces. `Φ({0}) = K`, `Φ(ℝ²) = ∅`, rays map
/// to the contact set, sectors to the corner at their midline.
pub fn phi(body: &PlanarBody, cone: &Cone) -> Result<Face> {
    match cone {
        Cone::Origin => Ok(Face::Whole),
        Cone::FullPlane => Ok(Face::Empty),
        Cone::Ray(theta) => {
            if ray_inside_corner(body, *theta) {
                return Err(Error::NotATouchingCone {
                    what: cone.to_string(),
                });
            }
            Ok(body.contact_set(*theta))
        }
        Cone::Sector(iv) => match matching_corner(body, iv) {
            Some(i) => match &body.pieces()[i].kind {
                PieceKind::Corner { point } => Ok(Face::Point(*point)),
                _ => unreachable!(),
            },
            None => Err(Error::NotATouchingCone {
                what: cone.to_string(),
            }),
        },
    }
}

fn ray_inside_corner(body: &PlanarBody, theta: Angle) -> bool {
    let i = body.piece_index_at(theta.rad());
    let p = &body.pieces()[i];
    matches!(p.kind, PieceKind::Corner { .. })
        && p.interval.strictly_contains(theta.rad(), ANGLE_EPS)
}

fn matching_corner(body: &PlanarBody, iv: &AngleInterval) -> Option<usize> {
    body.pieces().iter().position(|p| {
        matches!(p.kind, PieceKind::Corner { .. }) && p.interval.approx_eq(iv, 1e-7)
    })
}

/// Smallest exposed face containing `face`: `cl_E = Φ ∘ Ψ`.
pub fn closure_exposed(body: &PlanarBody, face: &Face) -> Result<Face> {
    phi(body, &psi(body, face)?)
}

/// Smallest normal cone containing `cone`: `cl_N = Ψ ∘ Φ`.
pub fn closure_normal(body: &PlanarBody, cone: &Cone) -> Result<Cone> {
    psi(body, &phi(body, cone)?)
}

/// Is the cone a touching cone of the body?
pub fn is_touching_cone(body: &PlanarBody, cone: &Cone) -> bool {
    match cone {
        Cone::Origin | Cone::FullPlane => true,
        Cone::Ray(theta) => !ray_inside_corner(body, *theta),
        Cone::Sector(iv) => matching_corner(body, iv).is_some(),
    }
}

/// Is the cone a normal cone of the body?
pub fn is_normal_cone(body: &PlanarBody, cone: &Cone) -> bool {
    match cone {
        Cone::Origin | Cone::FullPlane => true,
        Cone::Sector(iv) => matching_corner(body, iv).is_some(),
        Cone::Ray(theta) => {
            if ray_inside_corner(body, *theta) {
                return false;
            }
            match body.contact_set(*theta) {
                Face::Segment(..) => true,
                Face::Point(p) => !body.pieces().iter().any(|q| {
                    matches!(&q.kind, PieceKind::Corner { point } if point.dist(p) <= face_tol(body))
                }),
                _ => false,
            }
        }
    }
}

/// Coatoms of the principal ideal of touching cones under a normal cone.
pub fn coatoms_of_normal_cone(body: &PlanarBody, cone: &Cone) -> Result<Vec<Cone>> {
    match cone {
        Cone::Sector(iv) => {
            if matching_corner(body, iv).is_none() {
                return Err(Error::NotATouchingCone {
                    what: cone.to_string(),
                });
            }
            Ok(vec![Cone::Ray(iv.start), Cone::Ray(iv.end())])
        }
        Cone::Ray(_) => Ok(vec![Cone::Origin]),
        Cone::Origin => Ok(vec![]),
        Cone::FullPlane => Err(Error::NotATouchingCone {
            what: "coatoms of the full plane are not enumerated".into(),
        }),
    }
}

/// A normal cone is complete when every coatom of its touching-cone ideal
/// is itself a normal cone. For a corner sector that is a combinatorial
/// question: do both adjacent junctions carry edges?
pub fn is_complete(body: &PlanarBody, cone: &Cone) -> Result<bool> {
    match cone {
        Cone::Origin | Cone::FullPlane | Cone::Ray(_) => Ok(true),
        Cone::Sector(iv) => {
            let i = matching_corner(body, iv).ok_or_else(|| Error::NotATouchingCone {
                what: cone.to_string(),
            })?;
            let sf = special_faces(body);
            let c = sf
                .corners
                .iter()
                .find(|c| c.piece == i)
                .expect("matched corner piece");
            Ok(c.start_has_edge && c.end_has_edge)
        }
    }
}

/// Positive hull of a face of the polar body, as a cone.
pub fn pos_hull(face: &Face) -> Cone {
    match face {
        Face::Empty => Cone::Origin,
        Face::Whole => Cone::FullPlane,
        Face::Point(p) => Cone::Ray(p.pos_angle()),
        Face::Segment(a, b) => {
            let (pa, pb) = (a.pos_angle(), b.pos_angle());
            let w = crate::angle::cyclic_delta(pa.rad(), pb.rad());
            if w <= std::f64::consts::PI {
                Cone::Sector(AngleInterval::new(pa, w))
            } else {
                Cone::Sector(AngleInterval::new(pb, std::f64::consts::TAU - w))
            }
        }
    }
}

/// Inverse of `pos`: `T ↦ ∂K° ∩ T`, carving a face out of the polar body.
pub fn pos_inverse(polar_body: &PlanarBody, cone: &Cone) -> Result<Face> {
    let tol = face_tol(polar_body);
    match cone {
        Cone::Origin => Ok(Face::Empty),
        Cone::FullPlane => Ok(Face::Whole),
        Cone::Ray(theta) => match polar_body.locate_ray(*theta)? {
            RayHit::Edge { junction, point } => {
                let j = polar_body.junction(junction);
                if point.dist(j.before) <= tol {
                    Ok(Face::Point(j.before))
                } else if point.dist(j.after) <= tol {
                    Ok(Face::Point(j.after))
                } else {
                    Err(Error::NotATouchingCone {
                        what: cone.to_string(),
                    })
                }
            }
            hit => Ok(Face::Point(hit.point())),
        },
        Cone::Sector(iv) => {
            for s in &special_faces(polar_body).segments {
                let w = crate::angle::cyclic_delta(
                    s.a.pos_angle().rad(),
                    s.b.pos_angle().rad(),
                );
                let siv = AngleInterval::new(s.a.pos_angle(), w);
                if siv.approx_eq(iv, 1e-7) {
                    return Ok(s.face());
                }
            }
            Err(Error::NotATouchingCone {
                what: cone.to_string(),
            })
        }
    }
}

/// Meet of two faces (the set intersection, always a face).
pub fn face_meet(body: &PlanarBody, f: &Face, g: &Face) -> Face {
    let tol = face_tol(body);
    match (f, g) {
        (Face::Empty, _) | (_, Face::Empty) => Face::Empty,
        (Face::Whole, x) | (x, Face::Whole) => x.clone(),
        (Face::Point(p), Face::Point(q)) => {
            if p.approx_eq(*q, tol) {
                Face::Point(*p)
            } else {
                Face::Empty
            }
        }
        (Face::Point(p), Face::Segment(a, b)) | (Face::Segment(a, b), Face::Point(p)) => {
            if p.approx_eq(*a, tol) || p.approx_eq(*b, tol) {
                Face::Point(*p)
            } else {
                Face::Empty
            }
        }
        (Face::Segment(a, b), Face::Segment(c, d)) => {
            if f.approx_eq(g, tol) {
                f.clone()
            } else {
                for p in [*a, *b] {
                    if p.approx_eq(*c, tol) || p.approx_eq(*d, tol) {
                        return Face::Point(p);
                    }
                }
                Face::Empty
            }
        }
    }
}

/// Join of two faces: the smallest face containing both.
pub fn face_join(body: &PlanarBody, f: &Face, g: &Face) -> Face {
    let tol = face_tol(body);
    if f.subset_of(g, tol) {
        return g.clone();
    }
    if g.subset_of(f, tol) {
        return f.clone();
    }
    match (f, g) {
        (Face::Point(p), Face::Point(q)) => {
            // Two extremal points span a segment only if both are its ends.
            for s in &special_faces(body).segments {
                let hit = (p.approx_eq(s.a, tol) && q.approx_eq(s.b, tol))
                    || (p.approx_eq(s.b, tol) && q.approx_eq(s.a, tol));
                if hit {
                    return s.face();
                }
            }
            Face::Whole
        }
        _ => Face::Whole,
    }
}

/// Meet of two touching cones (the set intersection).
pub fn cone_meet(body: &PlanarBody, t: &Cone, u: &Cone) -> Cone {
    let eps = 1e-7;
    let _ = body;
    match (t, u) {
        (Cone::Origin, _) | (_, Cone::Origin) => Cone::Origin,
        (Cone::FullPlane, x) | (x, Cone::FullPlane) => x.clone(),
        (Cone::Ray(a), Cone::Ray(b)) => {
            if a.approx_eq(*b, eps) {
                Cone::Ray(*a)
            } else {
                Cone::Origin
            }
        }
        (Cone::Ray(a), Cone::Sector(s)) | (Cone::Sector(s), Cone::Ray(a)) => {
            if s.contains(a.rad(), eps) {
                Cone::Ray(*a)
            } else {
                Cone::Origin
            }
        }
        (Cone::Sector(s), Cone::Sector(r)) => {
            if s.approx_eq(r, eps) {
                return Cone::Sector(*s);
            }
            // Normal fans have disjoint sector interiors: the overlap is at
            // most a shared boundary ray (handled generally anyway).
            let lo = if r.contains(s.start.rad(), eps) {
                Some(s.start)
            } else if s.contains(r.start.rad(), eps) {
                Some(r.start)
            } else {
                None
            };
            match lo {
                None => Cone::Origin,
                Some(start) => {
                    let end_s = s.end();
                    let end_r = r.end();
                    let end = if r.contains(end_s.rad(), eps) {
                        end_s
                    } else {
                        end_r
                    };
                    let w = crate::angle::cyclic_delta(start.rad(), end.rad());
                    if w <= eps || w > std::f64::consts::PI {
                        Cone::Ray(start)
                    } else {
                        Cone::Sector(AngleInterval::new(start, w))
                    }
                }
            }
        }
    }
}

/// Join of two touching cones: the smallest touching cone containing both.
pub fn cone_join(body: &PlanarBody, t: &Cone, u: &Cone) -> Cone {
    let eps = 1e-7;
    if t.subset_of(u, eps) {
        return u.clone();
    }
    if u.subset_of(t, eps) {
        return t.clone();
    }
    // The only 2-dimensional touching cones are corner sectors; find the
    // narrowest one containing both operands.
    let mut best: Option<AngleInterval> = None;
    for p in body.pieces() {
        if !matches!(p.kind, PieceKind::Corner { .. }) {
            continue;
        }
        let sector = Cone::Sector(p.interval);
        if t.subset_of(&sector, eps) && u.subset_of(&sector, eps) {
            if best.map_or(true, |b| p.interval.width < b.width) {
                best = Some(p.interval);
            }
        }
    }
    match best {
        Some(iv) => Cone::Sector(iv),
        None => Cone::FullPlane,
    }
}

/// A body together with its polar; hosts the conjugate face maps.
pub struct PolarPair {
    pub body: PlanarBody,
    pub polar: PlanarBody,
}

impl PolarPair {
    pub fn new(body: &PlanarBody) -> Result<Self> {
        Ok(Self {
            body: body.clone(),
            polar: polar(body)?,
        })
    }

    /// Conjugate face map `𝒞_K : 𝓕_K → 𝓔_{K°}`, realized as `Φ ∘ pos`.
    pub fn conjugate(&self, face: &Face) -> Result<Face> {
        phi(&self.polar, &pos_hull(face))
    }

    /// Conjugate face map on the polar side, `𝒞_{K°} : 𝓕_{K°} → 𝓔_K`.
    pub fn conjugate_back(&self, face: &Face) -> Result<Face> {
        phi(&self.body, &pos_hull(face))
    }

    /// Direct algebraic route: `𝒞(F) = {v ∈ K° : ⟨v,u⟩ = 1 ∀u ∈ F}`.
    /// Kept independent of `Φ ∘ pos` so the commuting diagram is testable.
    pub fn conjugate_direct(&self, face: &Face) -> Result<Face> {
        conjugate_direct_in(&self.polar, face)
    }

    pub fn conjugate_back_direct(&self, face: &Face) -> Result<Face> {
        conjugate_direct_in(&self.body, face)
    }

    /// All faces of the body whose conjugate is the exposed face `G` of the
    /// polar: `𝒞_K^{-1}(G) = cl_E^{-1}(𝒞_{K°}(G))`.
    pub fn conjugate_preimage(&self, g: &Face) -> Result<Vec<Face>> {
        let tol = face_tol(&self.polar);
        let cl = closure_exposed(&self.polar, g).map_err(|_| Error::NotExposed {
            what: g.to_string(),
        })?;
        if !cl.approx_eq(g, tol) {
            return Err(Error::NotExposed {
                what: g.to_string(),
            });
        }
        let exposed = self.conjugate_back(g)?;
        let mut out = vec![exposed.clone()];
        if let Face::Segment(..) = &exposed {
            let btol = face_tol(&self.body);
            for ne in &special_faces(&self.body).non_exposed {
                if Face::Segment(ne.segment.0, ne.segment.1).approx_eq(&exposed, btol) {
                    out.push(Face::Point(ne.point));
                }
            }
        }
        Ok(out)
    }
}

/// `{v ∈ P : ⟨v,u⟩ = 1 ∀u ∈ F}` computed inside the given polar body.
fn conjugate_direct_in(polar_body: &PlanarBody, face: &Face) -> Result<Face> {
    match face {
        Face::Empty => Ok(Face::Whole),
        Face::Whole => Ok(Face::Empty),
        Face::Point(x) => Ok(polar_body.contact_set(x.pos_angle())),
        Face::Segment(a, b) => {
            let det = a.cross(*b);
            if det.abs() < 1e-300 {
                return Err(Error::NotAFace {
                    what: face.to_string(),
                });
            }
            let v = Point2 {
                x: (b.y - a.y) / det,
                y: (a.x - b.x) / det,
            };
            Ok(Face::Point(v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::pt;
    use crate::selfdual;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn ex2() -> PlanarBody {
        selfdual::gallery("example2", &[0.5, 0.5]).unwrap()
    }

    fn fig1c() -> PlanarBody {
        selfdual::gallery("fig1c", &[]).unwrap()
    }

    fn disk() -> PlanarBody {
        selfdual::gallery("disk", &[]).unwrap()
    }

    #[test]
    fn example2_special_faces() {
        let sf = special_faces(&ex2());
        assert_eq!(sf.segments.len(), 1);
        assert_eq!(sf.corners.len(), 0);
        assert_eq!(sf.non_exposed.len(), 2);
        let pts: Vec<Point2> = sf.non_exposed.iter().map(|n| n.point).collect();
        assert!(pts.iter().any(|p| p.approx_eq(pt(0.5, -0.5), 1e-9)));
        assert!(pts.iter().any(|p| p.approx_eq(pt(-0.5, -0.5), 1e-9)));
        assert_eq!(census(&ex2()), Census { n: 2, p: 0, m: 0, f: 0, s: 1 });
    }

    #[test]
    fn disk_has_no_special_faces() {
        let sf = special_faces(&disk());
        assert!(sf.entries().is_empty());
    }

    #[test]
    fn fig1c_classification() {
        let sf = special_faces(&fig1c());
        assert_eq!(sf.segments.len(), 2);
        assert_eq!(sf.corners.len(), 1);
        assert_eq!(sf.corners[0].class, CornerClass::Polyhedral);
        assert!(sf.corners[0].point.approx_eq(pt(0.0, 2.0), 1e-9));
        assert_eq!(sf.non_exposed.len(), 2);
        assert_eq!(census(&fig1c()), Census { n: 2, p: 1, m: 0, f: 0, s: 2 });
    }

    #[test]
    fn normal_cones() {
        let d = disk();
        match normal_cone(&d, pt(1.0, 0.0)).unwrap() {
            Cone::Ray(a) => assert!(a.approx_eq(Angle::new(0.0), 1e-9)),
            c => panic!("expected ray, got {c}"),
        }
        let f = fig1c();
        match normal_cone(&f, pt(0.0, 2.0)).unwrap() {
            Cone::Sector(s) => {
                assert!(s.start.approx_eq(Angle::new(PI / 6.0), 1e-9));
                assert!(s.end().approx_eq(Angle::new(5.0 * PI / 6.0), 1e-9));
            }
            c => panic!("expected sector, got {c}"),
        }
        match normal_cone(&ex2(), pt(0.5, -0.5)).unwrap() {
            Cone::Ray(a) => assert!(a.approx_eq(Angle::new(3.0 * FRAC_PI_2), 1e-9)),
            c => panic!("expected ray, got {c}"),
        }
        assert!(normal_cone(&d, pt(0.2, 0.2)).is_err());
    }

    #[test]
    fn psi_and_phi() {
        let k = ex2();
        assert!(matches!(psi(&k, &Face::Empty).unwrap(), Cone::FullPlane));
        assert!(matches!(psi(&k, &Face::Whole).unwrap(), Cone::Origin));
        let edge = Face::Segment(pt(-0.5, -0.5), pt(0.5, -0.5));
        match psi(&k, &edge).unwrap() {
            Cone::Ray(a) => assert!(a.approx_eq(Angle::new(3.0 * FRAC_PI_2), 1e-9)),
            c => panic!("{c}"),
        }
        // Sub-segments of an edge are not faces.
        assert!(psi(&k, &Face::Point(pt(0.1, -0.5))).is_err());

        assert!(matches!(phi(&k, &Cone::FullPlane).unwrap(), Face::Empty));
        assert!(matches!(phi(&k, &Cone::Origin).unwrap(), Face::Whole));
        match phi(&k, &Cone::Ray(Angle::new(3.0 * FRAC_PI_2))).unwrap() {
            Face::Segment(a, b) => {
                assert!(a.approx_eq(pt(-0.5, -0.5), 1e-9) && b.approx_eq(pt(0.5, -0.5), 1e-9));
            }
            f => panic!("{f}"),
        }
        // Boundary ray of the free corner of the dual body exposes the
        // corner point only.
        let dual = selfdual::gallery("fig1b", &[]);
        assert!(dual.is_err()); // not a gallery name; construct directly
        let dual = crate::polarity::dual(&k).unwrap();
        match phi(&dual, &Cone::Ray(Angle::new(PI / 4.0))).unwrap() {
            Face::Point(p) => assert!(p.approx_eq(pt(0.0, 2.0), 1e-9)),
            f => panic!("{f}"),
        }
        // Rays strictly inside a corner sector are not touching cones.
        assert!(phi(&dual, &Cone::Ray(Angle::new(FRAC_PI_2))).is_err());
    }

    #[test]
    fn closures() {
        let k = ex2();
        let ne = Face::Point(pt(0.5, -0.5));
        let cl = closure_exposed(&k, &ne).unwrap();
        match &cl {
            Face::Segment(..) => {}
            f => panic!("closure should be the segment, got {f}"),
        }
        // Exposed faces are fixed points.
        let again = closure_exposed(&k, &cl).unwrap();
        assert!(again.approx_eq(&cl, 1e-9));
        assert!(matches!(
            closure_exposed(&k, &Face::Empty).unwrap(),
            Face::Empty
        ));

        // Free corner of the dual: boundary rays close to the full sector.
        let dual = crate::polarity::dual(&k).unwrap();
        let ray = Cone::Ray(Angle::new(PI / 4.0));
        match closure_normal(&dual, &ray).unwrap() {
            Cone::Sector(s) => assert!((s.width - FRAC_PI_2).abs() < 1e-9),
            c => panic!("{c}"),
        }
        // Edge normals are normal cones already.
        let edge_ray = Cone::Ray(Angle::new(3.0 * FRAC_PI_2));
        assert!(closure_normal(&k, &edge_ray)
            .unwrap()
            .approx_eq(&edge_ray, 1e-9));
        assert!(matches!(
            closure_normal(&k, &Cone::Origin).unwrap(),
            Cone::Origin
        ));
    }

    #[test]
    fn pos_and_inverse() {
        assert!(matches!(pos_hull(&Face::Empty), Cone::Origin));
        match pos_hull(&Face::Point(pt(0.0, -2.0))) {
            Cone::Ray(a) => assert!(a.approx_eq(Angle::new(3.0 * FRAC_PI_2), 1e-12)),
            c => panic!("{c}"),
        }
        let s3 = 3f64.sqrt() / 2.0;
        match pos_hull(&Face::Segment(pt(-s3, 0.5), pt(s3, 0.5))) {
            Cone::Sector(s) => {
                assert!(s.start.approx_eq(Angle::new(PI / 6.0), 1e-12));
                assert!(s.end().approx_eq(Angle::new(5.0 * PI / 6.0), 1e-12));
            }
            c => panic!("{c}"),
        }

        let k = ex2();
        let p = polar(&k).unwrap();
        match pos_inverse(&p, &Cone::Ray(Angle::new(3.0 * FRAC_PI_2))).unwrap() {
            Face::Point(v) => assert!(v.approx_eq(pt(0.0, -2.0), 1e-9)),
            f => panic!("{f}"),
        }
        assert!(matches!(
            pos_inverse(&p, &Cone::Origin).unwrap(),
            Face::Empty
        ));
        // Round trip on the polar's special faces.
        for (face, _) in special_faces(&p).entries() {
            let back = pos_inverse(&p, &pos_hull(&face)).unwrap();
            assert!(back.approx_eq(&face, 1e-7), "{face} -> {back}");
        }
    }

    #[test]
    fn conjugation_examples() {
        let pair = PolarPair::new(&ex2()).unwrap();
        assert!(matches!(pair.conjugate(&Face::Empty).unwrap(), Face::Whole));
        let edge = Face::Segment(pt(-0.5, -0.5), pt(0.5, -0.5));
        match pair.conjugate(&edge).unwrap() {
            Face::Point(v) => assert!(v.approx_eq(pt(0.0, -2.0), 1e-9)),
            f => panic!("{f}"),
        }
        match pair.conjugate(&Face::Point(pt(0.5, -0.5))).unwrap() {
            Face::Point(v) => assert!(v.approx_eq(pt(0.0, -2.0), 1e-9)),
            f => panic!("{f}"),
        }
        // Direct algebraic route agrees.
        let direct = pair.conjugate_direct(&edge).unwrap();
        assert!(direct.approx_eq(&pair.conjugate(&edge).unwrap(), 1e-9));

        let pair1c = PolarPair::new(&fig1c()).unwrap();
        let s3 = 3f64.sqrt() / 2.0;
        match pair1c.conjugate(&Face::Point(pt(0.0, 2.0))).unwrap() {
            Face::Segment(a, b) => {
                assert!(a.approx_eq(pt(s3, 0.5), 1e-9) || a.approx_eq(pt(-s3, 0.5), 1e-9));
                assert!(b.approx_eq(pt(s3, 0.5), 1e-9) || b.approx_eq(pt(-s3, 0.5), 1e-9));
            }
            f => panic!("{f}"),
        }
    }

    #[test]
    fn conjugate_preimages() {
        let pair = PolarPair::new(&ex2()).unwrap();
        // The free corner (0,-2) of the polar pulls back to the edge plus
        // both non-exposed endpoints: the 2-1 case.
        let pre = pair.conjugate_preimage(&Face::Point(pt(0.0, -2.0))).unwrap();
        assert_eq!(pre.len(), 3);
        let points: Vec<&Face> = pre
            .iter()
            .filter(|f| matches!(f, Face::Point(_)))
            .collect();
        assert_eq!(points.len(), 2);
        // Non-exposed points of the polar are rejected.
        let p = &pair.polar;
        let sfp = special_faces(p);
        assert_eq!(sfp.non_exposed.len(), 0);

        // Smooth exposed point of the polar: singleton preimage. The polar
        // boundary passes through (0,1) since h_{K°}(π/2) = 1/ρ_K(π/2) = 1.
        let smooth = pair.conjugate_back(&Face::Point(pt(0.0, 1.0))).unwrap();
        let pre2 = pair.conjugate_preimage(&Face::Point(pt(0.0, 1.0))).unwrap();
        assert_eq!(pre2.len(), 1);
        assert!(pre2[0].approx_eq(&smooth, 1e-7));
    }

    #[test]
    fn coatoms_and_completeness() {
        let f1c = fig1c();
        let sector = Cone::Sector(AngleInterval::new(
            Angle::new(PI / 6.0),
            2.0 * PI / 3.0,
        ));
        let co = coatoms_of_normal_cone(&f1c, &sector).unwrap();
        assert_eq!(co.len(), 2);
        assert!(is_complete(&f1c, &sector).unwrap()); // polyhedral corner

        let dual2 = crate::polarity::dual(&ex2()).unwrap();
        let free = Cone::Sector(AngleInterval::new(Angle::new(PI / 4.0), FRAC_PI_2));
        assert!(!is_complete(&dual2, &free).unwrap()); // free corner

        let ray = Cone::Ray(Angle::new(1.0));
        assert!(is_complete(&ex2(), &ray).unwrap());
    }

    #[test]
    fn joins_and_meets() {
        let k = ex2();
        let a = Face::Point(pt(-0.5, -0.5));
        let b = Face::Point(pt(0.5, -0.5));
        let edge = Face::Segment(pt(-0.5, -0.5), pt(0.5, -0.5));
        assert!(face_join(&k, &a, &b).approx_eq(&edge, 1e-9));
        assert!(matches!(face_meet(&k, &a, &b), Face::Empty));
        // Points on different arcs join to the whole body.
        let p1 = Face::Point(pt(0.0, 1.0));
        let p2 = Face::Point(pt(-1.0, 0.0));
        assert!(matches!(face_join(&k, &p1, &p2), Face::Whole));

        let dual2 = crate::polarity::dual(&k).unwrap();
        let r1 = Cone::Ray(Angle::new(PI / 4.0));
        let r2 = Cone::Ray(Angle::new(3.0 * PI / 4.0));
        match cone_join(&dual2, &r1, &r2) {
            Cone::Sector(s) => assert!((s.width - FRAC_PI_2).abs() < 1e-9),
            c => panic!("{c}"),
        }
        assert!(matches!(cone_meet(&dual2, &r1, &r2), Cone::Origin));
        let s = Cone::Sector(AngleInterval::new(Angle::new(PI / 4.0), FRAC_PI_2));
        match cone_meet(&dual2, &s, &r1) {
            Cone::Ray(a) => assert!(a.approx_eq(Angle::new(PI / 4.0), 1e-9)),
            c => panic!("{c}"),
        }
    }

    #[test]
    fn census_identities() {
        let k = ex2();
        let p = polar(&k).unwrap();
        let (ck, cp) = (census(&k), census(&p));
        assert_eq!(cp, Census { n: 0, p: 0, m: 0, f: 1, s: 0 });
        for id in check_pair_identities(&ck, &cp) {
            assert!(id.holds(), "{} fails: {} vs {}", id.label, id.lhs, id.rhs);
        }
        // Triangle: census (0,3,0,0,3) and the boxed identity.
        let tri = selfdual::gallery("regular_selfdual_polygon", &[3.0]).unwrap();
        let ct = census(&tri);
        assert_eq!(ct, Census { n: 0, p: 3, m: 0, f: 0, s: 3 });
        for id in check_selfdual_identity(&ct) {
            assert!(id.holds());
        }
    }
}
