//! Structural polarity: `K°` is built piece by piece, never by generic
//! point-set operations.
//!
//! The correspondence: an edge of `K` at junction angle ψ becomes the corner
//! `u(ψ)/h(ψ)` of `K°` whose normal interval spans the position angles of
//! the edge endpoints; a corner of `K` becomes an edge of `K°` at the
//! corner's position angle; arcs map to arcs with `h_{K°}(φ) = 1/ρ_K(u(φ))`.
//! Origin-centered circular arcs stay circular (exactly); all other arcs
//! become sampled arcs with exact knot values and slopes.

use crate::angle::{cyclic_delta, Angle, ANGLE_EPS};
use crate::body::PlanarBody;
use crate::error::{Error, Result};
use crate::geom::{dir, dir_perp, Point2};
use crate::interp::MonotoneCubic;
use crate::numeric::{solve_increasing, ROOT_MAX_ITER, ROOT_XTOL};
use crate::piece::{PieceKind, SupportPiece};
use std::f64::consts::{PI, TAU};

/// Default number of samples in a polar arc table.
pub const POLAR_TABLE_LEN: usize = 4096;

/// The polar body `K° = {u : ⟨u,v⟩ ≤ 1 ∀v ∈ K}`.
pub fn polar(body: &PlanarBody) -> Result<PlanarBody> {
    polar_with_table_len(body, POLAR_TABLE_LEN)
}

pub fn polar_with_table_len(body: &PlanarBody, table_len: usize) -> Result<PlanarBody> {
    let n = body.pieces().len();
    let eps_len = body.len_eps();
    let tiny_center = 1e-12 * body.scale().max(1.0);
    let mut out: Vec<SupportPiece> = Vec::new();
    let mut interp_bound: f64 = 0.0;
    for i in 0..n {
        let j = body.junction(i);
        if j.jump().norm() > eps_len {
            // Edge of K -> corner of K°.
            let h = body.support_at(j.angle);
            let v = dir(j.angle.rad()) / h;
            let pa0 = j.before.pos_angle();
            let width = cyclic_delta(pa0.rad(), j.after.pos_angle().rad());
            if width > ANGLE_EPS {
                out.push(SupportPiece::corner(v, pa0, width));
            }
        }
        let p = &body.pieces()[i];
        match &p.kind {
            PieceKind::Corner { .. } => {}
            PieceKind::CircularArc { center, radius } if center.norm() <= tiny_center => {
                let pa0 = p.start_contact().pos_angle();
                out.push(SupportPiece::circular(
                    crate::geom::ORIGIN,
                    1.0 / radius,
                    pa0,
                    p.interval.width,
                ));
            }
            _ => {
                let (piece, bound) = polar_arc(body, i, table_len)?;
                interp_bound = interp_bound.max(bound);
                out.push(piece);
            }
        }
    }
    let mut meta = format!("polar-of:{}", body.metadata().unwrap_or("anonymous"));
    if interp_bound > 0.0 {
        meta.push_str(&format!(";interp_err<={interp_bound:.3e}"));
    }
    Ok(PlanarBody::new(out)?.with_metadata(meta))
}

/// Polar image of one strictly convex arc piece, as a sampled arc.
fn polar_arc(body: &PlanarBody, idx: usize, table_len: usize) -> Result<(SupportPiece, f64)> {
    let p = &body.pieces()[idx];
    let lo = p.interval.start.rad();
    let hi = lo + p.interval.width;
    let full = p.interval.width >= TAU - ANGLE_EPS;
    let pa0 = p.start_contact().pos_angle().rad();
    let width = if full {
        TAU
    } else {
        cyclic_delta(pa0, p.end_contact().pos_angle().rad())
    };
    let m = table_len.max(crate::piece::MIN_ARC_SAMPLES);

    // Invert φ = posangle(x(ψ)): monotone increasing in ψ across the piece.
    let invert = |phi: f64, bracket_lo: f64| -> Result<f64> {
        let g = |psi: f64| {
            let (h, dh, ddh) = p.support_d2(psi);
            let x = dir(psi) * h + dir_perp(psi) * dh;
            let val = crate::angle::signed_cyclic_diff(x.pos_angle().rad(), phi);
            (val, Some(h * (h + ddh) / x.norm2().max(1e-300)))
        };
        solve_increasing(g, bracket_lo, hi, ROOT_XTOL, ROOT_MAX_ITER, "polar_arc")
    };
    // Boundary point of K° at normal φ is v = u(ψ)/h_K(ψ); support value
    // ⟨v, u(φ)⟩ and slope ⟨v, u⊥(φ)⟩ there are exact.
    let knot = |psi: f64, phi: f64| -> (f64, f64) {
        let (h, _) = p.support_d(psi);
        let v = dir(psi) / h;
        (v.dot(dir(phi)), v.dot(dir_perp(phi)))
    };

    let mut xs = Vec::with_capacity(m);
    let mut ys = Vec::with_capacity(m);
    let mut ds = Vec::with_capacity(m);
    let mut psi_prev = lo;
    for k in 0..m {
        let phi = pa0 + width * k as f64 / (m - 1) as f64;
        let psi = if k == 0 {
            lo
        } else if k == m - 1 && !full {
            hi
        } else {
            invert(phi, psi_prev)?
        };
        psi_prev = psi;
        let (y, d) = knot(psi, phi);
        xs.push(phi);
        ys.push(y);
        ds.push(d);
    }
    let table = MonotoneCubic::with_slopes(xs, ys, ds)?;
    // Measure the interpolation error at a few inter-knot midpoints.
    let mut bound: f64 = 0.0;
    let probes = 32.min(m - 1);
    for t in 0..probes {
        let phi = pa0 + width * (t as f64 + 0.5) / probes as f64;
        let psi = invert(phi, lo)?;
        let (y, _) = knot(psi, phi);
        bound = bound.max((table.eval(phi) - y).abs());
    }
    Ok((SupportPiece::sampled(table)?, bound * 1.5))
}

/// The dual body `K* = -K°`.
pub fn dual(body: &PlanarBody) -> Result<PlanarBody> {
    let meta = format!("dual-of:{}", body.metadata().unwrap_or("anonymous"));
    Ok(polar(body)?.reflected().with_metadata(meta))
}

/// Boundary point of `K*` in direction `u(θ)`: `u(θ)/h_K(-u(θ))`.
pub fn dual_boundary_point(body: &PlanarBody, theta: Angle) -> Point2 {
    dir(theta.rad()) / body.support_at(theta.opposite())
}

/// Convex hull of the body and a finite point set.
pub fn hull_with_points(body: &PlanarBody, points: &[Point2]) -> Result<PlanarBody> {
    let mut b = body.clone();
    for q in points {
        b = hull_one(&b, *q)?;
    }
    Ok(b)
}

fn hull_one(body: &PlanarBody, q: Point2) -> Result<PlanarBody> {
    // Beyond-ness g(θ) = ⟨q, u(θ)⟩ - h(θ): positive exactly on the window
    // of normals the new vertex takes over.
    let g = |theta: f64| {
        q.dot(dir(theta)) - body.pieces()[body.piece_index_at(theta)].support(theta)
    };
    let (theta_max, g_max) = maximize_beyond(body, q);
    if g_max <= body.len_eps() {
        return Ok(body.clone()); // interior (or boundary) point: no change
    }
    let tau2 = scan_root(&g, theta_max, 1.0)?;
    let tau1 = scan_root(&g, theta_max, -1.0)?;
    let window = cyclic_delta(tau1, tau2);
    let keep_start = tau2;
    let keep_width = TAU - window;
    let mut pieces = clip_all(body, keep_start, keep_width);
    pieces.push(SupportPiece::corner(q, Angle::new(tau1), window));
    PlanarBody::new(pieces)
}

/// Max of `⟨q,u(θ)⟩ - h(θ)`; closed form per corner/circular piece, knot
/// scan on sampled arcs.
fn maximize_beyond(body: &PlanarBody, q: Point2) -> (f64, f64) {
    let mut best = (0.0, f64::NEG_INFINITY);
    let mut consider = |theta: f64, val: f64| {
        if val > best.1 {
            best = (theta, val);
        }
    };
    for p in body.pieces() {
        let (lo, w) = (p.interval.start.rad(), p.interval.width);
        match &p.kind {
            PieceKind::Corner { point } => {
                let d = q - *point;
                let th = d.pos_angle().rad();
                if p.interval.contains(th, 0.0) {
                    consider(th, d.norm());
                }
            }
            PieceKind::CircularArc { center, radius } => {
                let d = q - *center;
                let th = d.pos_angle().rad();
                if p.interval.contains(th, 0.0) {
                    consider(th, d.norm() - radius);
                }
            }
            PieceKind::SampledArc { .. } => {
                let m = 64.max((w / TAU * 512.0) as usize);
                for k in 0..=m {
                    let t = lo + w * k as f64 / m as f64;
                    consider(t, q.dot(dir(t)) - p.support(t));
                }
            }
        }
        for t in [lo, lo + w] {
            consider(t, q.dot(dir(t)) - p.support(t));
        }
    }
    best
}

/// March from a point inside the window to a sign change, then bisect.
fn scan_root(g: &dyn Fn(f64) -> f64, from: f64, sign: f64) -> Result<f64> {
    let step = PI / 256.0;
    let mut prev = from;
    for k in 1..=512 {
        let t = from + sign * step * k as f64;
        if g(t) <= 0.0 {
            let (lo, hi) = if sign > 0.0 { (prev, t) } else { (t, prev) };
            let root = crate::numeric::bisect(|x| g(x), lo, hi, 1e-14, 200);
            return Ok(Angle::new(root).rad());
        }
        prev = t;
    }
    Err(Error::NumericNonconvergence {
        context: "hull tangency",
    })
}

/// Intersect with halfplanes `{x : ⟨x, u(normal)⟩ ≤ offset}`, `offset > 0`.
pub fn intersect_halfplanes(body: &PlanarBody, halfplanes: &[(Angle, f64)]) -> Result<PlanarBody> {
    let mut b = body.clone();
    for (normal, offset) in halfplanes {
        if *offset <= 0.0 {
            return Err(Error::BadParam {
                what: format!("halfplane offset {offset} must be positive"),
            });
        }
        b = cut_one(&b, *normal, *offset)?;
    }
    Ok(b)
}

fn cut_one(body: &PlanarBody, psi: Angle, c: f64) -> Result<PlanarBody> {
    if body.support_at(psi) <= c + body.len_eps() {
        return Ok(body.clone()); // inactive halfplane
    }
    let below = find_crossing(body, psi, c, -1.0)?;
    let above = find_crossing(body, psi, c, 1.0)?;
    let keep_width = TAU - cyclic_delta(below.cut_angle, above.cut_angle);
    let mut pieces = clip_all(body, above.cut_angle, keep_width);
    let wa = cyclic_delta(below.cut_angle, psi.rad());
    if wa > ANGLE_EPS {
        pieces.push(SupportPiece::corner(
            below.point,
            Angle::new(below.cut_angle),
            wa,
        ));
    }
    let wb = cyclic_delta(psi.rad(), above.cut_angle);
    if wb > ANGLE_EPS {
        pieces.push(SupportPiece::corner(above.point, psi, wb));
    }
    PlanarBody::new(pieces)
}

struct Crossing {
    cut_angle: f64,
    point: Point2,
}

/// Locate where the chord line `⟨x, u(ψ)⟩ = c` crosses the boundary on one
/// side of ψ. `f(θ) = ⟨x(θ), u(ψ)⟩ - c` is monotone on each half-circle
/// around ψ (rising below, falling above), with jumps at edge junctions.
fn find_crossing(body: &PlanarBody, psi: Angle, c: f64, side: f64) -> Result<Crossing> {
    let u = dir(psi.rad());
    let tol = 1e-9 * body.scale().max(1.0);
    let pr = psi.rad();
    let f_at = |theta: f64| -> f64 {
        let i = body.piece_index_at(theta);
        body.pieces()[i].contact(theta).dot(u) - c
    };
    let rising = side < 0.0;
    let (mut lo, mut hi) = if rising {
        (pr - PI + 1e-9, pr)
    } else {
        (pr, pr + PI - 1e-9)
    };
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if (f_at(mid) >= 0.0) == rising {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let theta_star = 0.5 * (lo + hi);

    let edge_crossing = |jidx: usize| -> Option<Crossing> {
        let j = body.junction(jidx);
        let fb = j.before.dot(u) - c;
        let fa = j.after.dot(u) - c;
        if fb.abs() <= tol {
            return Some(Crossing {
                cut_angle: j.angle.rad(),
                point: j.before,
            });
        }
        if fa.abs() <= tol {
            return Some(Crossing {
                cut_angle: j.angle.rad(),
                point: j.after,
            });
        }
        if fb * fa < 0.0 {
            let t = fb / (fb - fa);
            return Some(Crossing {
                cut_angle: j.angle.rad(),
                point: j.before + (j.after - j.before) * t,
            });
        }
        None
    };

    let (jidx, jdist) = body.nearest_junction(theta_star);
    if jdist <= 1e-7 && body.pieces().len() > 1 {
        if let Some(cr) = edge_crossing(jidx) {
            return Ok(cr);
        }
    }
    let i = body.piece_index_at(theta_star);
    let p = &body.pieces()[i];
    if let PieceKind::Corner { point } = &p.kind {
        let fc = point.dot(u) - c;
        if fc.abs() <= tol {
            // Chord passes through the corner: it keeps its point and the
            // cut trims the whole original interval on this side.
            let cut = if rising {
                p.interval.start.rad()
            } else {
                p.interval.end().rad()
            };
            return Ok(Crossing {
                cut_angle: cut,
                point: *point,
            });
        }
        // Sign change sits at one of the corner's boundary junctions.
        let jang = if (fc > 0.0) == rising {
            p.interval.start.rad()
        } else {
            p.interval.end().rad()
        };
        let (jj, _) = body.nearest_junction(jang);
        if let Some(cr) = edge_crossing(jj) {
            return Ok(cr);
        }
        return Err(Error::NumericNonconvergence {
            context: "halfplane crossing",
        });
    }
    // Arc: θ* is the root; project the contact onto the chord line.
    let x = p.contact(theta_star);
    let point = x + u * (c - x.dot(u));
    Ok(Crossing {
        cut_angle: Angle::new(theta_star).rad(),
        point,
    })
}

/// Clip every piece of the body to the kept cyclic window.
fn clip_all(body: &PlanarBody, win_start: f64, win_width: f64) -> Vec<SupportPiece> {
    let mut out = Vec::new();
    for p in body.pieces() {
        let rel = cyclic_delta(win_start, p.interval.start.rad());
        let w = p.interval.width;
        for base in [rel, rel - TAU] {
            let lo = base.max(0.0);
            let hi = (base + w).min(win_width);
            if hi - lo > ANGLE_EPS {
                out.push(p.with_interval(Angle::new(win_start + lo), hi - lo));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::pt;
    use std::f64::consts::FRAC_PI_2;

    fn unit_disk() -> PlanarBody {
        PlanarBody::new(vec![SupportPiece::circular(
            pt(0.0, 0.0),
            1.0,
            Angle::new(0.0),
            TAU,
        )])
        .unwrap()
    }

    fn example2(a: f64, b: f64) -> PlanarBody {
        PlanarBody::new(vec![
            SupportPiece::circular(pt(0.0, 0.0), a + b, Angle::new(0.0), PI),
            SupportPiece::circular(pt(-a, 0.0), b, Angle::new(PI), FRAC_PI_2),
            SupportPiece::circular(pt(a, 0.0), b, Angle::new(3.0 * FRAC_PI_2), FRAC_PI_2),
        ])
        .unwrap()
    }

    fn square() -> PlanarBody {
        crate::selfdual::polygon_body(&[pt(1.0, 1.0), pt(-1.0, 1.0), pt(-1.0, -1.0), pt(1.0, -1.0)])
            .unwrap()
    }

    #[test]
    fn polar_disk_is_disk() {
        let d = unit_disk();
        let p = polar(&d).unwrap();
        assert_eq!(p.pieces().len(), 1);
        for i in 0..64 {
            let th = Angle::new(TAU * i as f64 / 64.0);
            assert!((p.support_at(th) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn polar_square_is_diamond() {
        let p = polar(&square()).unwrap();
        assert_eq!(p.pieces().len(), 4);
        let mut corners: Vec<Point2> = p
            .pieces()
            .iter()
            .filter_map(|q| match &q.kind {
                PieceKind::Corner { point } => Some(*point),
                _ => None,
            })
            .collect();
        corners.sort_by(|a, b| a.pos_angle().rad().partial_cmp(&b.pos_angle().rad()).unwrap());
        let expect = [pt(1.0, 0.0), pt(0.0, 1.0), pt(-1.0, 0.0), pt(0.0, -1.0)];
        for (c, e) in corners.iter().zip(expect.iter()) {
            assert!(c.approx_eq(*e, 1e-12), "{c:?} vs {e:?}");
        }
    }

    #[test]
    fn polar_example2_has_free_corner() {
        let k = example2(0.5, 0.5);
        let p = polar(&k).unwrap();
        // Corner at (0,-2) spanning the position angles of (∓1/2,-1/2).
        let corner = p
            .pieces()
            .iter()
            .find_map(|q| match &q.kind {
                PieceKind::Corner { point } => Some((q.interval, *point)),
                _ => None,
            })
            .expect("polar of example2 must have a corner");
        assert!(corner.1.approx_eq(pt(0.0, -2.0), 1e-9));
        assert!(corner.0.start.approx_eq(Angle::new(5.0 * PI / 4.0), 1e-9));
        assert!((corner.0.width - FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn dual_example2_radials_match_formula() {
        let k = example2(0.5, 0.5);
        let d = dual(&k).unwrap();
        let r_half_pi = d.radial_at(Angle::new(FRAC_PI_2)).unwrap();
        assert!((r_half_pi - 2.0).abs() < 1e-9, "got {r_half_pi}");
        let r_bottom = d.radial_at(Angle::new(3.0 * FRAC_PI_2)).unwrap();
        assert!((r_bottom - 1.0).abs() < 1e-9, "got {r_bottom}");
    }

    #[test]
    fn dual_boundary_points() {
        let d = unit_disk();
        assert!(dual_boundary_point(&d, Angle::new(0.0)).approx_eq(pt(1.0, 0.0), 1e-12));
        let k = example2(0.5, 0.5);
        assert!(dual_boundary_point(&k, Angle::new(0.0)).approx_eq(pt(1.0, 0.0), 1e-12));
        assert!(dual_boundary_point(&k, Angle::new(FRAC_PI_2)).approx_eq(pt(0.0, 2.0), 1e-12));
    }

    #[test]
    fn hull_disk_with_apex() {
        let h = hull_with_points(&unit_disk(), &[pt(0.0, 2.0)]).unwrap();
        // Tangent lines from (0,2) touch the circle at (±√3/2, 1/2).
        let corner = h
            .pieces()
            .iter()
            .find_map(|q| match &q.kind {
                PieceKind::Corner { point } => Some((q.interval, *point)),
                _ => None,
            })
            .expect("hull must have the apex corner");
        assert!(corner.1.approx_eq(pt(0.0, 2.0), 1e-12));
        assert!(corner.0.start.approx_eq(Angle::new(PI / 6.0), 1e-9));
        assert!(corner.0.end().approx_eq(Angle::new(5.0 * PI / 6.0), 1e-9));
        let edges = h.edges();
        assert_eq!(edges.len(), 2);
        let s3 = 3f64.sqrt() / 2.0;
        let touched: Vec<Point2> = edges
            .iter()
            .flat_map(|e| [e.before, e.after])
            .filter(|p| p.norm() < 1.5)
            .collect();
        assert!(touched.iter().any(|p| p.approx_eq(pt(s3, 0.5), 1e-9)));
        assert!(touched.iter().any(|p| p.approx_eq(pt(-s3, 0.5), 1e-9)));
    }

    #[test]
    fn hull_with_interior_point_is_identity() {
        let d = unit_disk();
        let h = hull_with_points(&d, &[pt(0.0, 0.5)]).unwrap();
        assert_eq!(h.pieces().len(), 1);
        let h2 = hull_with_points(&d, &[]).unwrap();
        assert_eq!(h2.pieces().len(), 1);
    }

    #[test]
    fn cut_disk_to_figure_1d() {
        let b = intersect_halfplanes(&unit_disk(), &[(Angle::new(3.0 * FRAC_PI_2), 0.5)]).unwrap();
        let s3 = 3f64.sqrt() / 2.0;
        let edges = b.edges();
        assert_eq!(edges.len(), 1);
        assert!(edges[0].before.approx_eq(pt(-s3, -0.5), 1e-9));
        assert!(edges[0].after.approx_eq(pt(s3, -0.5), 1e-9));
        let corners: Vec<Point2> = b
            .pieces()
            .iter()
            .filter_map(|q| match &q.kind {
                PieceKind::Corner { point } => Some(*point),
                _ => None,
            })
            .collect();
        assert_eq!(corners.len(), 2);
    }

    #[test]
    fn inactive_cut_is_identity() {
        let b = intersect_halfplanes(&unit_disk(), &[(Angle::new(0.0), 2.0)]).unwrap();
        assert_eq!(b.pieces().len(), 1);
    }

    #[test]
    fn square_from_big_disk() {
        let big = PlanarBody::new(vec![SupportPiece::circular(
            pt(0.0, 0.0),
            10.0,
            Angle::new(0.0),
            TAU,
        )])
        .unwrap();
        let cuts: Vec<(Angle, f64)> = (0..4)
            .map(|k| (Angle::new(k as f64 * FRAC_PI_2), 1.0))
            .collect();
        let sq = intersect_halfplanes(&big, &cuts).unwrap();
        let expect = square();
        for i in 0..256 {
            let th = Angle::new(TAU * i as f64 / 256.0);
            assert!(
                (sq.support_at(th) - expect.support_at(th)).abs() < 1e-9,
                "mismatch at {th:?}"
            );
        }
    }

    #[test]
    fn double_polar_round_trip() {
        let k = example2(0.5, 0.5);
        let kk = polar(&polar(&k).unwrap()).unwrap();
        let mut worst: f64 = 0.0;
        for i in 0..1024 {
            let th = Angle::new(TAU * i as f64 / 1024.0);
            worst = worst.max((kk.support_at(th) - k.support_at(th)).abs());
        }
        assert!(worst < 1e-8, "sup diff {worst:.3e}");
    }

    #[test]
    fn radial_support_reciprocity() {
        let k = example2(0.5, 0.5);
        let d = dual(&k).unwrap();
        for i in 0..512 {
            let th = Angle::new(TAU * i as f64 / 512.0);
            let lhs = d.radial_at(th).unwrap() * k.support_at(th.opposite());
            assert!((lhs - 1.0).abs() < 1e-9, "reciprocity off at {th:?}: {lhs}");
        }
    }
}
