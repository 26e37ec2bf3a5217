//! Tangents from a point to a convex chain of segments and involute
//! pieces, and common tangents of two such chains.

use thiserror::Error;

use crate::geom::{segment_intersection_point, Point};
use crate::hull::Sense;
use crate::path::PathPiece;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum TangentError {
    #[error("no tangent: the point sees the chain over a half-turn or more")]
    NoTangent,
    #[error("chains cross at {0}")]
    Crossing(Point),
    #[error("common tangent iteration did not converge")]
    NoConvergence,
}

/// A touch point on a chain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Touch {
    pub point: Point,
    pub piece: usize,
}

fn chain_samples(chain: &[PathPiece], per_curve: usize) -> Vec<(Point, usize)> {
    let mut out = Vec::new();
    for (i, p) in chain.iter().enumerate() {
        match p {
            PathPiece::Line { from, to } => {
                out.push((*from, i));
                out.push((*to, i));
            }
            PathPiece::Curve(_) => {
                for j in 0..=per_curve {
                    out.push((p.point_at_param(j as f64 / per_curve as f64), i));
                }
            }
        }
    }
    out
}

/// Point where a line from `q` supports the chain, with the chain on the
/// left of the directed line `q → x` for [`Sense::Ccw`] and on its right
/// for [`Sense::Cw`]. Linear in the number of pieces.
pub fn tangent_point_chain(q: Point, chain: &[PathPiece], side: Sense) -> Result<Touch, TangentError> {
    let mut cands: Vec<(Point, usize)> = Vec::new();
    for (i, p) in chain.iter().enumerate() {
        cands.push((p.start(), i));
        if let PathPiece::Curve(c) = p {
            for (t, _) in c.tangents_from(q, c.theta[0], c.theta[1]) {
                cands.push((c.point(t), i));
            }
        }
    }
    if let Some(last) = chain.last() {
        cands.push((last.end(), chain.len() - 1));
    }
    let r = cands.iter().find_map(|(p, _)| (*p - q).normalized()).ok_or(TangentError::NoTangent)?;
    let ang = |p: Point| {
        let d = p - q;
        r.cross(d).atan2(r.dot(d))
    };
    let samples = chain_samples(chain, 64);
    let (lo, hi) = samples.iter().fold((0.0f64, 0.0f64), |(lo, hi), (p, _)| {
        let a = ang(*p);
        (lo.min(a), hi.max(a))
    });
    if hi - lo >= std::f64::consts::PI - 1e-12 || samples.iter().any(|(p, _)| p.dist(q) <= 1e-12) {
        return Err(TangentError::NoTangent);
    }
    let pick = cands.iter().filter(|(p, _)| p.dist(q) > 0.0).min_by(|a, b| {
        let (x, y) = (ang(a.0), ang(b.0));
        match side {
            Sense::Ccw => x.total_cmp(&y),
            Sense::Cw => y.total_cmp(&x),
        }
    });
    pick.map(|&(point, piece)| Touch { point, piece }).ok_or(TangentError::NoTangent)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TangentKind {
    /// Both chains on the same side of the line.
    Outer,
    /// The chains on opposite sides.
    Inner,
}

/// Common tangent segment from chain `a` to chain `b`. For `Outer` both
/// chains lie left of the directed segment; for `Inner`, `a` lies left and
/// `b` right. Crossing chains are reported with a crossing point.
pub fn common_tangent(a: &[PathPiece], b: &[PathPiece], kind: TangentKind) -> Result<(Touch, Touch), TangentError> {
    let sa = chain_samples(a, 128);
    let sb = chain_samples(b, 128);
    for wa in sa.windows(2) {
        for wb in sb.windows(2) {
            if let Some(x) = segment_intersection_point(wa[0].0, wa[1].0, wb[0].0, wb[1].0) {
                return Err(TangentError::Crossing(x));
            }
        }
    }
    let (to_b, to_a) = match kind {
        TangentKind::Outer => (Sense::Ccw, Sense::Cw),
        TangentKind::Inner => (Sense::Cw, Sense::Cw),
    };
    let mut ta = Touch { point: a.first().ok_or(TangentError::NoTangent)?.start(), piece: 0 };
    let mut tb = tangent_point_chain(ta.point, b, to_b)?;
    for _ in 0..500 {
        let na = tangent_point_chain(tb.point, a, to_a)?;
        let nb = tangent_point_chain(na.point, b, to_b)?;
        let done = na.point.dist(ta.point) <= 1e-13 && nb.point.dist(tb.point) <= 1e-13;
        ta = na;
        tb = nb;
        if done {
            return Ok((ta, tb));
        }
    }
    Err(TangentError::NoConvergence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involute::InvolutePiece;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn polyline(pts: &[Point]) -> Vec<PathPiece> {
        pts.windows(2).map(|w| PathPiece::Line { from: w[0], to: w[1] }).collect()
    }

    /// Support check by brute force: every sample on the requested side.
    fn supports(q: Point, x: Point, chain: &[PathPiece], side: Sense) -> bool {
        chain_samples(chain, 256).iter().all(|(s, _)| side.sign() * (x - q).cross(*s - q) >= -1e-9)
    }

    #[test]
    fn arc_tangent_length() {
        let arc = vec![PathPiece::Curve(InvolutePiece::arc(p(0., 0.), 1.0, -PI / 2.0, PI))];
        let q = p(3., 0.);
        let t = tangent_point_chain(q, &arc, Sense::Cw).unwrap();
        assert!((t.point.dist(q) - 8f64.sqrt()).abs() < 1e-12);
        assert!(supports(q, t.point, &arc, Sense::Cw));
        assert_eq!(tangent_point_chain(p(0.1, 0.), &arc, Sense::Ccw), Err(TangentError::NoTangent));
    }

    #[test]
    fn equal_circles_outer_tangent_is_parallel() {
        let a = vec![PathPiece::Curve(InvolutePiece::arc(p(0., 0.), 1.0, 0.0, 2.0 * PI - 0.01))];
        let b = vec![PathPiece::Curve(InvolutePiece::arc(p(5., 0.), 1.0, 0.0, 2.0 * PI - 0.01))];
        let (ta, tb) = common_tangent(&a, &b, TangentKind::Outer).unwrap();
        assert!((ta.point.y - tb.point.y).abs() < 1e-9);
        assert!((ta.point.y.abs() - 1.0).abs() < 1e-9);
        let (ta, tb) = common_tangent(&a, &b, TangentKind::Inner).unwrap();
        // Inner tangents of two unit circles 5 apart cross the centre line at 2.5.
        let d = tb.point - ta.point;
        let x0 = ta.point.x - ta.point.y * d.x / d.y;
        assert!((x0 - 2.5).abs() < 1e-9);
        assert!((ta.point.dist(tb.point) - (25.0f64 - 4.0).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn crossing_chains_are_reported() {
        let a = polyline(&[p(-2., 0.), p(2., 0.)]);
        let b = vec![PathPiece::Curve(InvolutePiece::arc(p(0., -0.5), 1.0, 0.0, PI))];
        assert!(matches!(common_tangent(&a, &b, TangentKind::Outer), Err(TangentError::Crossing(_))));
    }

    fn convex_chain(k: usize, phase: f64, span: f64, c: Point, r: f64) -> Vec<Point> {
        (0..k).map(|i| c + Point::from_polar(r, phase + span * i as f64 / (k - 1) as f64)).collect()
    }

    proptest! {
        #[test]
        fn polygonal_tangent_matches_scan(k in 3usize..12, phase in 0.0..6.2f64, span in 0.3..3.0f64,
                                          qa in 0.0..6.2f64, qr in 2.5..6.0f64, ccw in any::<bool>()) {
            let pts = convex_chain(k, phase, span, p(0., 0.), 1.0);
            let chain = polyline(&pts);
            let q = Point::from_polar(qr, qa);
            let side = if ccw { Sense::Ccw } else { Sense::Cw };
            let t = tangent_point_chain(q, &chain, side).unwrap();
            // O(m^2) oracle: the unique vertex supporting the chain on that side.
            let oracle: Vec<Point> = pts.iter().copied().filter(|&v| supports(q, v, &chain, side)).collect();
            prop_assert!(oracle.iter().any(|v| v.dist(t.point) < 1e-12), "{:?} vs {:?}", t, oracle);
        }

        #[test]
        fn bitangent_matches_brute_force(phase in 0.0..6.2f64, k in 3usize..8, dy in -1.0..1.0f64, inner in any::<bool>()) {
            let a = convex_chain(k, phase, 2.0, p(0., 0.), 1.0);
            let b = convex_chain(k, phase + 1.0, 2.0, p(6., dy), 1.0);
            let (ca, cb) = (polyline(&a), polyline(&b));
            let kind = if inner { TangentKind::Inner } else { TangentKind::Outer };
            let (ta, tb) = common_tangent(&ca, &cb, kind).unwrap();
            let (sa, sb) = match kind { TangentKind::Outer => (Sense::Ccw, Sense::Ccw), TangentKind::Inner => (Sense::Ccw, Sense::Cw) };
            let brute: Vec<(Point, Point)> = a.iter().flat_map(|&u| b.iter().map(move |&v| (u, v)))
                .filter(|&(u, v)| supports(u, v, &ca, sa) && supports(u, v, &cb, sb))
                .collect();
            prop_assert!(brute.iter().any(|&(u, v)| u.dist(ta.point) < 1e-9 && v.dist(tb.point) < 1e-9), "{:?} {:?} vs {:?}", ta, tb, brute);
        }
    }
}
