//! Shortest self-approaching path between two points of a simple polygon.
//!
//! The path is built backwards from `t`. The current suffix starts at an
//! anchor `A` (a polygon vertex after the first step) and its convex hull
//! is kept as a [`SuffixHull`]. Each step either prepends the geodesic
//! predecessor of `A` as a straight segment (Case 1), or unwinds an
//! involute from `A` around the hull (Case 2). In Case 2 the involute cuts
//! a dead region off the polygon, and the next prefix is the shortest way
//! around that region: a segment tangent to the involute followed by the
//! involute back to `A`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geodesic::{build_spt, GeodesicError, GeodesicOracle, Node, ShortestPathTree};
use crate::geom::{point_in_polygon, Location, Point, Polygon, EPS_GEOM};
use crate::hull::{HullError, Prim, Sense, SuffixHull};
use crate::involute::InvolutePiece;
use crate::path::{PathPiece, SAPath};
use crate::solve::find_roots;

/// Slack on the 90° threshold of Case 1 (radians).
pub const EPS_ANG: f64 = 1e-9;
/// Samples per chain piece for region polygons and crossing parity.
const CHAIN_SAMPLES: usize = 48;

/// Numerical breakdown, distinct from a proof of unreachability.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Error)]
#[error("solver failure in {stage} at anchor {anchor}: {detail}")]
pub struct SolverFailure {
    pub stage: String,
    pub anchor: Point,
    pub detail: String,
}

impl SolverFailure {
    fn new(stage: &str, anchor: Point, detail: impl Into<String>) -> Self {
        SolverFailure { stage: stage.to_string(), anchor, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ShortestError {
    #[error("endpoint {0} lies outside the polygon")]
    EndpointOutside(Point),
    #[error(transparent)]
    Solver(#[from] SolverFailure),
}

impl From<GeodesicError> for ShortestError {
    fn from(e: GeodesicError) -> Self {
        match e {
            GeodesicError::RootOutside(p) | GeodesicError::EndpointOutside(p) => ShortestError::EndpointOutside(p),
            other => ShortestError::Solver(SolverFailure::new("geodesic", Point::default(), other.to_string())),
        }
    }
}

/// Where the unwound involute first meets the polygon boundary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryHit {
    pub point: Point,
    pub edge: usize,
}

/// Involute chain unwound from the anchor around the suffix hull. Pieces
/// are oriented away from the anchor; the first starts at it with zero
/// string length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeadRegionBoundary {
    pub anchor: Point,
    pub side: Sense,
    pub chain: Vec<InvolutePiece>,
    pub hit: Option<BoundaryHit>,
}

impl DeadRegionBoundary {
    /// Dense polyline of the chain from the anchor outward.
    pub fn polyline(&self, per_piece: usize) -> Vec<Point> {
        let mut out = vec![self.anchor];
        for c in &self.chain {
            let (a, b) = (c.start_theta(), c.end_theta());
            for j in 1..=per_piece {
                out.push(c.point(a + (b - a) * j as f64 / per_piece as f64));
            }
        }
        out
    }

    /// Chain length from the anchor to parameter `theta` of piece `j`.
    pub fn length_to(&self, j: usize, theta: f64) -> f64 {
        let before: f64 = self.chain[..j].iter().map(InvolutePiece::length).sum();
        before + self.chain[j].arc_length_unchecked(self.chain[j].start_theta(), theta)
    }
}

/// Evidence that no self-approaching path exists.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// The taut string from `point` to the hull is shorter than the
    /// boundary it would have to unwind, so `point` lies strictly inside
    /// the involute.
    DeadPoint { point: Point, side: Sense, tangent_point: Point, string: f64, boundary: f64, hull: SuffixHull },
    /// The involute chain runs from the anchor to the polygon boundary and
    /// `point` lies on its concave (dead) side, the same side as `probe`.
    Separation { point: Point, region: DeadRegionBoundary, probe: Point },
}

/// Outcome of the construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum SAPathResult {
    Path { path: SAPath },
    NotReachable { witness: Witness },
}

/// Whether segment `p_i → a` may be prepended to a suffix with the given
/// hull: the hull must lie in the closed half-plane ahead of the segment,
/// i.e. the segment meets both boundary tangents at `a` at ≥ 90° − ε.
pub fn case1_extend(hull: &SuffixHull, a: Point, p_i: Point) -> bool {
    let Some(d) = (p_i - a).normalized() else { return true };
    [Sense::Ccw, Sense::Cw].iter().all(|&s| match hull.anchor_tangent(s) {
        Some(w) => d.dot(w) <= EPS_ANG.sin(),
        None => true,
    })
}

/// Result of the string test for a point against the hull.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeadTest {
    pub dead: bool,
    pub tangent_point: Point,
    pub string: f64,
    pub boundary: f64,
}

/// String test: `g` is dead iff `|g t_g|` is strictly shorter than the
/// boundary from `t_g` back to the anchor on the unwinding side. Equality
/// counts as alive.
pub fn dead_point_test(hull: &SuffixHull, g: Point, side: Sense) -> Result<DeadTest, SolverFailure> {
    let tp = hull
        .tangent_point(g, side)
        .ok_or_else(|| SolverFailure::new("tangent", hull.anchor, format!("no hull tangent from {g}")))?;
    let string = g.dist(tp.point);
    let boundary = tp.boundary_dist;
    let tol = 1e-12 * (1.0 + boundary);
    Ok(DeadTest { dead: string < boundary - tol, tangent_point: tp.point, string, boundary })
}

/// Initial direction of the involute leaving the anchor on `side`.
fn initial_direction(hull: &SuffixHull, side: Sense) -> Option<Point> {
    let w = hull.anchor_tangent(side)?;
    Some(match side {
        Sense::Ccw => -w.perp(),
        Sense::Cw => w.perp(),
    })
}

fn turn(a: Point, b: Point) -> f64 {
    a.cross(b).atan2(a.dot(b))
}

/// Unwinds the involute of the hull from its anchor in `side` order.
/// `stop` sees each new piece and may return a parameter at which to cut
/// it and finish. A point hull yields an empty chain (the circle about it
/// has radius zero).
pub fn unwind_involute<F>(
    hull: &SuffixHull,
    side: Sense,
    max_pieces: usize,
    mut stop: F,
) -> Result<DeadRegionBoundary, SolverFailure>
where
    F: FnMut(&InvolutePiece) -> Option<f64>,
{
    let mut region = DeadRegionBoundary { anchor: hull.anchor, side, chain: Vec::new(), hit: None };
    let trav = hull.traversal(side);
    let n = trav.len();
    if n == 0 {
        return Ok(region);
    }
    let mut x = hull.anchor;
    let mut string = 0.0;
    let mut i = 0usize;
    let scale = 1.0 + hull.perimeter;
    loop {
        let e = &trav[i % n];
        let mut emitted: Option<InvolutePiece> = None;
        if i > 0 {
            let v = e.start();
            let b = turn(trav[(i - 1) % n].end_tangent(), e.start_tangent()) * side.sign();
            let beta = if n == 2 && b.abs() > 3.0 { std::f64::consts::PI } else { b.max(0.0) };
            if string > 1e-14 * scale && beta > 1e-14 {
                let a0 = (x - v).angle();
                emitted = Some(InvolutePiece::arc(v, string, a0, a0 + side.sign() * beta));
            }
        }
        if let Some(arc) = emitted.take() {
            if let Some(done) = push_piece(&mut region, arc, &mut stop, &mut x) {
                return done.map(|_| region);
            }
            if region.chain.len() > max_pieces {
                break;
            }
        }
        match e {
            PathPiece::Line { .. } => string += e.length(),
            PathPiece::Curve(c) => {
                let mut child = c.child_through(c.start_theta(), x);
                child.theta = c.theta;
                child.dir = c.dir;
                string += c.length();
                if let Some(done) = push_piece(&mut region, child, &mut stop, &mut x) {
                    return done.map(|_| region);
                }
            }
        }
        if region.chain.len() > max_pieces {
            break;
        }
        i += 1;
    }
    Err(SolverFailure::new(
        "unwind",
        hull.anchor,
        format!("involute exceeded {max_pieces} pieces without meeting the stop rule (hull of {n} elements)"),
    ))
}

/// Appends a piece, applying the stop rule. `Some(Ok)` means finished.
fn push_piece<F>(
    region: &mut DeadRegionBoundary,
    mut piece: InvolutePiece,
    stop: &mut F,
    x: &mut Point,
) -> Option<Result<(), SolverFailure>>
where
    F: FnMut(&InvolutePiece) -> Option<f64>,
{
    if let Some(t) = stop(&piece) {
        let s = piece.start_theta();
        piece.theta = [s.min(t), s.max(t)];
        if piece.theta[1] > piece.theta[0] {
            region.chain.push(piece);
        }
        return Some(Ok(()));
    }
    *x = piece.end_point();
    region.chain.push(piece);
    None
}

/// Axis-aligned bounds of a curve piece, padded for the chord sag.
fn piece_bounds(c: &InvolutePiece) -> (Point, Point) {
    let (a, b) = (c.theta[0], c.theta[1]);
    let n = 32;
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for j in 0..=n {
        let p = c.point(a + (b - a) * j as f64 / n as f64);
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let pad = c.length() / 8.0 + 1e-9;
    (lo - Point::new(pad, pad), hi + Point::new(pad, pad))
}

fn boxes_overlap(a: (Point, Point), b: (Point, Point)) -> bool {
    a.0.x <= b.1.x && b.0.x <= a.1.x && a.0.y <= b.1.y && b.0.y <= a.1.y
}

fn seg_bounds(a: Point, b: Point) -> (Point, Point) {
    (Point::new(a.x.min(b.x), a.y.min(b.y)), Point::new(a.x.max(b.x), a.y.max(b.y)))
}

/// Parameters where the piece crosses segment `a b`, with the crossing
/// point and the segment parameter.
fn piece_segment_crossings(c: &InvolutePiece, a: Point, b: Point) -> Vec<(f64, Point, f64)> {
    let d = b - a;
    let len2 = d.norm2();
    if len2 == 0.0 || !boxes_overlap(piece_bounds(c), seg_bounds(a, b)) {
        return Vec::new();
    }
    let (lo, hi) = (c.theta[0], c.theta[1]);
    let f = |t: f64| d.cross(c.point(t) - a);
    let df = |t: f64| d.cross(c.velocity(t));
    let step = ((hi - lo) / 16.0).clamp(1e-9, 0.01);
    find_roots(f, df, lo, hi, step, 1e-15 * (1.0 + a.norm()))
        .into_iter()
        .filter_map(|r| {
            let p = c.point(r.x);
            let u = (p - a).dot(d) / len2;
            (-1e-12..=1.0 + 1e-12).contains(&u).then_some((r.x, p, u))
        })
        .collect()
}

/// Stop rule for [`unwind_involute`]: the first crossing of the polygon
/// boundary, ignoring contact at the anchor itself.
fn boundary_stop<'a>(
    poly: &'a Polygon,
    anchor: Point,
    hit: &'a mut Option<BoundaryHit>,
) -> impl FnMut(&InvolutePiece) -> Option<f64> + 'a {
    let tol = 1e-9 * (1.0 + anchor.norm());
    move |c: &InvolutePiece| {
        let s = c.start_theta();
        let mut best: Option<(f64, Point, usize)> = None;
        for (e, (a, b)) in poly.edges().enumerate() {
            for (t, p, _) in piece_segment_crossings(c, a, b) {
                if p.dist(anchor) <= tol {
                    continue;
                }
                let key = (t - s) * c.dir;
                if key < -1e-15 {
                    continue;
                }
                if best.is_none_or(|(k, _, _)| key < k) {
                    best = Some((key, p, e));
                }
            }
        }
        best.map(|(key, point, edge)| {
            *hit = Some(BoundaryHit { point, edge });
            s + key * c.dir
        })
    }
}

/// Unwinds the dead-region boundary from the hull's anchor until it meets
/// the polygon boundary.
pub fn dead_region(poly: &Polygon, hull: &SuffixHull, side: Sense) -> Result<DeadRegionBoundary, SolverFailure> {
    let max_pieces = 4 * poly.len() + 8 + 4 * hull.elems.len();
    let mut hit = None;
    let mut region = unwind_involute(hull, side, max_pieces, boundary_stop(poly, hull.anchor, &mut hit))?;
    region.hit = hit;
    Ok(region)
}

/// Closed polygon of the dead side and a probe point inside it.
/// The region is the chain closed by the boundary walk from the hit back
/// to the anchor vertex that contains a point just off the chain's concave
/// side.
pub fn dead_region_polygon(poly: &Polygon, region: &DeadRegionBoundary) -> Option<(Vec<Point>, Point)> {
    let hit = region.hit?;
    if region.chain.is_empty() {
        return None;
    }
    let a = poly.vertex_index(region.anchor, 1e-9 * (1.0 + region.anchor.norm()))?;
    let chain_pts = region.polyline(CHAIN_SAMPLES);
    let probe = concave_probe(region)?;
    let n = poly.len();
    let mut fwd = chain_pts.clone();
    let mut j = (hit.edge + 1) % n;
    loop {
        fwd.push(poly.vertex(j));
        if j == a {
            break;
        }
        j = (j + 1) % n;
    }
    let mut bwd = chain_pts;
    let mut j = hit.edge;
    loop {
        bwd.push(poly.vertex(j));
        if j == a {
            break;
        }
        j = (j + n - 1) % n;
    }
    for cand in [fwd, bwd] {
        if ring_contains(&cand, probe) {
            return Some((cand, probe));
        }
    }
    None
}

/// A point just off the middle of the chain toward its centers of
/// curvature.
pub fn concave_probe(region: &DeadRegionBoundary) -> Option<Point> {
    let c = region.chain.get(region.chain.len() / 2)?;
    let (a, b) = (c.start_theta(), c.end_theta());
    // The midpoint is a vertex of the region polyline (even sample
    // count), so chords cannot hide the probe.
    let t = a + (b - a) * 0.5;
    let x = c.point(t);
    let toward = c.evolute_point(t) - x;
    let r = toward.norm();
    if r == 0.0 {
        return None;
    }
    let delta = (1e-6 * (1.0 + x.norm())).min(0.05 * r);
    Some(x + toward * (delta / r))
}

/// Crossing-number containment for a closed ring; boundary counts as out.
pub fn ring_contains(ring: &[Point], q: Point) -> bool {
    let n = ring.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (ring[i], ring[(i + 1) % n]);
        if crate::geom::point_segment_distance(q, a, b) <= 1e-13 * (1.0 + q.norm()) {
            return false;
        }
        if (a.y > q.y) != (b.y > q.y) {
            let x = a.x + (q.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if x > q.x {
                inside = !inside;
            }
        }
    }
    inside
}

/// First point where segment `a b` crosses the chain, ignoring contacts
/// near the points in `ignore` and at the segment's own endpoints.
pub fn segment_crosses_chain(a: Point, b: Point, chain: &[InvolutePiece], ignore: &[Point]) -> Option<Point> {
    let tol = 1e-6 * (1.0 + a.norm().max(b.norm()));
    for c in chain {
        for (_, p, u) in piece_segment_crossings(c, a, b) {
            if u <= 1e-9 || u >= 1.0 - 1e-9 || ignore.iter().any(|q| q.dist(p) <= tol) {
                continue;
            }
            return Some(p);
        }
    }
    None
}

/// Prefix chosen in Case 2.
#[derive(Clone, Debug, PartialEq)]
pub enum Case2Outcome {
    Extend { prefix: Vec<PathPiece>, next: Node, region: DeadRegionBoundary },
    NotReachable(Witness),
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    cost: f64,
    node: Node,
    from: Point,
    to: Point,
    /// Chain piece and parameter of the tangent point; `None` for a
    /// straight segment into the anchor.
    at: Option<(usize, f64)>,
}

/// Picks the unwinding side for a predecessor that fails Case 1: among the
/// violated hull tangents, the one whose involute heads toward `pred`.
fn choose_side(hull: &SuffixHull, a: Point, pred: Point) -> Sense {
    let d = (pred - a).normalized().unwrap_or_default();
    let mut best = (f64::NEG_INFINITY, Sense::Cw);
    for side in [Sense::Cw, Sense::Ccw] {
        let (Some(w), Some(v0)) = (hull.anchor_tangent(side), initial_direction(hull, side)) else { continue };
        if d.dot(w) > EPS_ANG.sin() {
            let score = v0.dot(d);
            if score > best.0 {
                best = (score, side);
            }
        }
    }
    best.1
}

/// Case 2 at `anchor` (which fails Case 1 against its predecessor): report
/// unreachability, or return the prefix that skirts the dead region.
pub fn case2_extend(
    poly: &Polygon,
    spt: &ShortestPathTree,
    hull: &SuffixHull,
    anchor: Node,
    pred: Point,
) -> Result<Case2Outcome, SolverFailure> {
    let a = hull.anchor;
    let side = choose_side(hull, a, pred);
    let region = dead_region(poly, hull, side)?;
    let s = spt.root;
    if !ring_contains(&hull.polyline(64), s) {
        let t = dead_point_test(hull, s, side)?;
        if t.dead {
            return Ok(Case2Outcome::NotReachable(Witness::DeadPoint {
                point: s,
                side,
                tangent_point: t.tangent_point,
                string: t.string,
                boundary: t.boundary,
                hull: hull.clone(),
            }));
        }
    }
    let (ring, probe) = dead_region_polygon(poly, &region)
        .ok_or_else(|| SolverFailure::new("dead-region", a, "involute does not close a region against the boundary"))?;
    if ring_contains(&ring, s) {
        return Ok(Case2Outcome::NotReachable(Witness::Separation { point: s, region, probe }));
    }

    let chain = &region.chain;
    let mut before = Vec::with_capacity(chain.len());
    let mut acc = 0.0;
    for c in chain {
        before.push(acc);
        acc += c.length();
    }
    let mut nodes = vec![Node::Root];
    nodes.extend((0..poly.len()).filter(|&v| Some(v) != spt.root_vertex).map(Node::Vertex));
    let mut cands = Vec::new();
    for &node in &nodes {
        if node == anchor {
            continue;
        }
        let q = spt.point(node);
        let dq = spt.dist(node);
        if q.dist(a) > EPS_GEOM && case1_extend(hull, a, q) {
            cands.push(Candidate { cost: dq + q.dist(a), node, from: q, to: a, at: None });
        }
        for (j, c) in chain.iter().enumerate() {
            for (theta, _) in c.tangents_from(q, c.theta[0], c.theta[1]) {
                let x = c.point(theta);
                if x.dist(q) <= EPS_GEOM || (x - q).dot(-c.tangent_at(theta)) <= 0.0 {
                    continue;
                }
                let along = before[j] + c.arc_length_unchecked(c.start_theta(), theta);
                cands.push(Candidate { cost: dq + x.dist(q) + along, node, from: q, to: x, at: Some((j, theta)) });
            }
        }
    }
    cands.sort_by(|x, y| x.cost.total_cmp(&y.cost));
    for cand in cands {
        if !poly.segment_inside(cand.from, cand.to) {
            continue;
        }
        if segment_crosses_chain(cand.from, cand.to, chain, &[cand.to, a]).is_some() {
            continue;
        }
        if ring_contains(&ring, cand.from.lerp(cand.to, 0.5)) {
            continue;
        }
        let Ok(up) = spt.path_to_root(cand.node) else { continue };
        if up.contains(&anchor) {
            continue;
        }
        let pts: Vec<Point> = up.iter().map(|&u| spt.point(u)).collect();
        if pts.windows(2).any(|w| segment_crosses_chain(w[0], w[1], chain, &[a]).is_some()) {
            continue;
        }
        let mut prefix = vec![PathPiece::Line { from: cand.from, to: cand.to }];
        if let Some((j, theta)) = cand.at {
            let c = &chain[j];
            let st = c.start_theta();
            if (theta - st).abs() > 0.0 {
                prefix.push(PathPiece::Curve(InvolutePiece {
                    theta: [st.min(theta), st.max(theta)],
                    dir: -c.dir,
                    ..c.clone()
                }));
            }
            for c in chain[..j].iter().rev() {
                prefix.push(PathPiece::Curve(InvolutePiece { dir: -c.dir, ..c.clone() }));
            }
        }
        return Ok(Case2Outcome::Extend { prefix, next: cand.node, region });
    }
    Err(SolverFailure::new(
        "case2",
        a,
        format!("no admissible tangent into the involute chain of {} pieces", chain.len()),
    ))
}

/// Hull of the enlarged suffix: old hull, new prefix and the new anchor.
pub fn hull_update(hull: &SuffixHull, prefix: &[PathPiece], anchor: Point) -> Result<SuffixHull, HullError> {
    let mut prims: Vec<Prim> = if hull.is_point() {
        vec![Prim::Point(hull.anchor)]
    } else {
        hull.elems.iter().flat_map(Prim::of_piece).collect()
    };
    prims.extend(prefix.iter().flat_map(Prim::of_piece));
    prims.push(Prim::Point(anchor));
    SuffixHull::new(&prims, anchor)
}

fn inside_or_on(poly: &Polygon, p: Point) -> Result<Point, ShortestError> {
    if !p.is_finite() || point_in_polygon(poly, p) == Location::Outside {
        return Err(ShortestError::EndpointOutside(p));
    }
    Ok(p)
}

/// Shortest self-approaching path from `s` to `t` inside `poly`, or a
/// witness that none exists.
pub fn shortest_sa_path(poly: &Polygon, s: Point, t: Point) -> Result<SAPathResult, ShortestError> {
    let s = inside_or_on(poly, s)?;
    let t = inside_or_on(poly, t)?;
    if s.dist(t) <= EPS_GEOM {
        return Ok(SAPathResult::Path { path: SAPath { source: s, target: t, pieces: Vec::new() } });
    }
    let spt = build_spt(poly, s)?;
    let geo = GeodesicOracle::new(poly).path(s, t)?;
    let m = geo.points.len();
    let mut anchor = match geo.vertex_ids[m - 2] {
        Some(v) if m > 2 && Some(v) != spt.root_vertex => Node::Vertex(v),
        _ => Node::Root,
    };
    let first = vec![PathPiece::Line { from: spt.point(anchor), to: t }];
    let mut hull = hull_update(&SuffixHull::point(t), &first, spt.point(anchor)).map_err(|e| hull_failure(e, t))?;
    let mut chunks = vec![first];
    let cap = 4 * poly.len() * poly.len() + 16;
    while anchor != Node::Root {
        if chunks.len() > cap {
            return Err(
                SolverFailure::new("main-loop", spt.point(anchor), format!("more than {cap} extension steps")).into()
            );
        }
        let a = spt.point(anchor);
        let pred_node = spt.parent(anchor).unwrap_or(Node::Root);
        let pred = spt.point(pred_node);
        let (prefix, next) = if case1_extend(&hull, a, pred) {
            (vec![PathPiece::Line { from: pred, to: a }], pred_node)
        } else {
            match case2_extend(poly, &spt, &hull, anchor, pred)? {
                Case2Outcome::Extend { prefix, next, .. } => (prefix, next),
                Case2Outcome::NotReachable(witness) => return Ok(SAPathResult::NotReachable { witness }),
            }
        };
        hull = hull_update(&hull, &prefix, spt.point(next)).map_err(|e| hull_failure(e, a))?;
        chunks.push(prefix);
        anchor = next;
    }
    let pieces: Vec<PathPiece> = chunks.into_iter().rev().flatten().collect();
    let path = SAPath::new(s, t, pieces)
        .map_err(|e| SolverFailure::new("assemble", s, format!("assembled path is not continuous: {e}")))?;
    Ok(SAPathResult::Path { path })
}

fn hull_failure(e: HullError, at: Point) -> ShortestError {
    SolverFailure::new("hull", at, e.to_string()).into()
}

/// Independent re-check of a witness against the polygon.
pub fn check_witness(poly: &Polygon, w: &Witness) -> Result<(), String> {
    match w {
        Witness::DeadPoint { point, side, hull, .. } => {
            let t = dead_point_test(hull, *point, *side).map_err(|e| e.to_string())?;
            if t.dead {
                Ok(())
            } else {
                Err(format!("string {} is not shorter than boundary {}", t.string, t.boundary))
            }
        }
        Witness::Separation { point, region, probe } => {
            let chain = &region.chain;
            let first = chain.first().ok_or("empty chain")?;
            let scale = 1.0 + region.anchor.norm();
            if first.start_point().dist(region.anchor) > 1e-9 * scale {
                return Err("chain does not start at the anchor".into());
            }
            if poly.vertex_index(region.anchor, 1e-9 * scale).is_none() {
                return Err("anchor is not a polygon vertex".into());
            }
            for w in chain.windows(2) {
                if w[0].end_point().dist(w[1].start_point()) > 1e-8 * scale {
                    return Err("chain is not continuous".into());
                }
            }
            let hit = region.hit.ok_or("chain does not reach the boundary")?;
            let end = chain.last().unwrap().end_point();
            let (e0, e1) = poly.edge(hit.edge);
            if end.dist(hit.point) > 1e-8 * scale || crate::geom::point_segment_distance(end, e0, e1) > 1e-7 * scale {
                return Err("chain does not end on the boundary".into());
            }
            let pts = region.polyline(256);
            for p in &pts[1..pts.len() - 1] {
                if point_in_polygon(poly, *p) == Location::Outside {
                    return Err(format!("chain leaves the polygon at {p}"));
                }
            }
            match concave_probe(region) {
                Some(p) if p.dist(*probe) <= 1e-12 * scale => {}
                _ => return Err("probe is not on the concave side of the chain".into()),
            }
            let geo = GeodesicOracle::new(poly).path(*point, *probe).map_err(|e| e.to_string())?;
            let mut crossings = 0usize;
            for g in geo.points.windows(2) {
                for c in pts.windows(2) {
                    if crate::geom::segments_intersect(g[0], g[1], c[0], c[1]) {
                        crossings += 1;
                    }
                }
            }
            if crossings.is_multiple_of(2) {
                Ok(())
            } else {
                Err(format!("point and probe are on opposite sides ({crossings} crossings)"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::{path_length, verify_normal_property, verify_triples, DEFAULT_TOL};

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn poly(v: &[(f64, f64)]) -> Polygon {
        Polygon::new(&v.iter().map(|&(x, y)| p(x, y)).collect::<Vec<_>>()).unwrap()
    }

    fn solve(pg: &Polygon, s: Point, t: Point) -> SAPath {
        match shortest_sa_path(pg, s, t).unwrap() {
            SAPathResult::Path { path } => path,
            other => panic!("expected a path, got {other:?}"),
        }
    }

    fn assert_sa(pg: &Polygon, path: &SAPath) {
        let r = verify_normal_property(path, Some(pg), 64, DEFAULT_TOL);
        assert!(r.passed, "normal property: {r:?}");
        let r = verify_triples(path, 16, DEFAULT_TOL);
        assert!(r.passed, "triples: {r:?}");
    }

    #[test]
    fn unit_square_is_straight() {
        let sq = poly(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]);
        let path = solve(&sq, p(0.2, 0.2), p(0.8, 0.8));
        assert_eq!(path.pieces.len(), 1);
        assert!((path_length(&path) - 0.72f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn l_polygon_follows_geodesic() {
        let l = poly(&[(0., 0.), (3., 0.), (3., 1.), (1., 1.), (1., 3.), (0., 3.)]);
        let path = solve(&l, p(0.5, 2.5), p(2.5, 0.5));
        assert!((path_length(&path) - 2.0 * 2.5f64.sqrt()).abs() < 1e-9);
        assert!(path.pieces.iter().all(|c| !c.is_curve()));
        assert_sa(&l, &path);
    }

    #[test]
    fn closed_hook_is_unreachable() {
        // Straight-walled hook: from the upper arm the geodesic bends away
        // from t at (1,2) too early for any self-approaching path.
        let hook = poly(&[(0., 0.), (3., 0.), (3., 1.), (1., 1.), (1., 2.), (3., 2.), (3., 3.), (0., 3.)]);
        match shortest_sa_path(&hook, p(2.5, 2.5), p(2.5, 0.5)).unwrap() {
            SAPathResult::NotReachable { witness } => check_witness(&hook, &witness).unwrap(),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hook_turns_around_target() {
        // A wedge-shaped notch with its tip at the origin separates s from t;
        // the geodesic turns by more than 90° at the tip.
        let hook = poly(&[(-1., -1.), (3., -1.), (3., 0.3), (0., 0.), (3., 0.6), (3., 2.), (-1., 2.)]);
        let s = p(1.2, 1.5);
        let t = p(1.0, 0.0);
        let path = solve(&hook, s, t);
        let arc = path.pieces.iter().find_map(|c| match c {
            PathPiece::Curve(c) if c.order() == 0 => Some(c.clone()),
            _ => None,
        });
        let arc = arc.expect("an arc piece");
        assert!(arc.center.dist(t) < 1e-12);
        assert_sa(&hook, &path);
        for b in crate::path::bend_points(&path) {
            assert!(hook.vertex_index(b, 1e-6).is_some(), "bend {b} off the vertices");
        }
    }
}


#[cfg(test)]
mod units {
    use super::*;
    use std::f64::consts::PI;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    /// Hull of the segment `(0,0) → (1,0)` anchored at the origin.
    fn seg_hull() -> SuffixHull {
        SuffixHull::of_path(&[PathPiece::Line { from: p(0., 0.), to: p(1., 0.) }], p(0., 0.)).unwrap()
    }

    /// Stop rule that keeps the first `k` pieces whole.
    fn after(k: usize) -> impl FnMut(&InvolutePiece) -> Option<f64> {
        let mut seen = 0;
        move |c| {
            seen += 1;
            (seen >= k).then(|| c.end_theta())
        }
    }

    #[test]
    fn dead_point_on_segment_hull() {
        let h = seg_hull();
        let t = dead_point_test(&h, p(1., 0.5), Sense::Cw).unwrap();
        assert!(t.dead);
        assert_eq!(t.tangent_point, p(1., 0.));
        assert!((t.string - 0.5).abs() < 1e-15 && (t.boundary - 1.0).abs() < 1e-15);
        assert!(!dead_point_test(&h, p(1., 0.5), Sense::Ccw).unwrap().dead);
        assert!(dead_point_test(&h, p(1., -0.5), Sense::Ccw).unwrap().dead);
        // Behind the anchor, and exactly on the involute (equality is alive).
        for side in [Sense::Ccw, Sense::Cw] {
            assert!(!dead_point_test(&h, p(-1., 0.), side).unwrap().dead);
            assert!(!dead_point_test(&h, p(2., 0.), side).unwrap().dead);
        }
        assert!(!dead_point_test(&h, p(1., 1.), Sense::Cw).unwrap().dead);
    }

    #[test]
    fn case1_threshold() {
        let h = seg_hull();
        assert!(case1_extend(&h, p(0., 0.), p(-1., 0.)));
        assert!(case1_extend(&h, p(0., 0.), p(0., 1.)));
        assert!(case1_extend(&h, p(0., 0.), p(0., -2.)));
        assert!(!case1_extend(&h, p(0., 0.), Point::from_polar(1.0, PI / 3.0)));
        // A point hull accepts any predecessor.
        assert!(case1_extend(&SuffixHull::point(p(0., 0.)), p(0., 0.), p(1., 0.)));
    }

    #[test]
    fn segment_hull_unwinds_to_arc_about_far_end() {
        let h = seg_hull();
        let r = unwind_involute(&h, Sense::Cw, 8, after(1)).unwrap();
        assert_eq!(r.chain.len(), 1);
        let c = &r.chain[0];
        assert_eq!(c.order(), 0);
        assert_eq!(c.center, p(1., 0.));
        assert!((c.r0 - 1.0).abs() < 1e-15);
        assert!(c.start_point().dist(p(0., 0.)) < 1e-15);
        // Clockwise from the anchor: heads up first, half a turn to (2,0).
        assert!(c.point(c.start_theta() + c.dir * 0.1).y > 0.0);
        assert!(c.end_point().dist(p(2., 0.)) < 1e-12);
    }

    #[test]
    fn point_hull_has_empty_involute() {
        let r = unwind_involute(&SuffixHull::point(p(3., 4.)), Sense::Ccw, 8, |_| None).unwrap();
        assert!(r.chain.is_empty());
    }

    #[test]
    fn curved_hull_element_unwinds_to_order_one() {
        // Quarter arc then its chord back: the hull has one curve element.
        let arc = InvolutePiece::arc(p(0., 0.), 1.0, 0.0, PI / 2.0);
        let h = SuffixHull::of_path(&[PathPiece::Curve(arc)], p(1., 0.)).unwrap();
        for side in [Sense::Ccw, Sense::Cw] {
            let r = unwind_involute(&h, side, 16, after(4)).unwrap();
            assert!(r.chain.iter().any(|c| c.order() == 1), "{side:?}");
            // String property: each piece's evolute point is at string
            // distance from the curve, and the chain is continuous.
            let mut x = h.anchor;
            for c in &r.chain {
                assert!(c.start_point().dist(x) < 1e-9);
                x = c.end_point();
            }
            let trav = h.traversal(side);
            let mut boundary = 0.0;
            let mut k = 0;
            for c in &r.chain {
                if c.order() == 0 {
                    // Arcs sit at junctions; radius equals boundary so far.
                    while trav[k % trav.len()].start().dist(c.center) > 1e-12 {
                        boundary += trav[k % trav.len()].length();
                        k += 1;
                    }
                    assert!((c.r0 - boundary).abs() < 1e-9, "{} vs {boundary}", c.r0);
                }
            }
        }
    }

    #[test]
    fn hull_update_adds_prefix_and_anchor() {
        let h = seg_hull();
        let prefix = [PathPiece::Line { from: p(0., 1.), to: p(0., 0.) }];
        let u = hull_update(&h, &prefix, p(0., 1.)).unwrap();
        assert_eq!(u.anchor, p(0., 1.));
        assert!((u.perimeter - (2.0 + 2f64.sqrt())).abs() < 1e-12);
        // A prefix inside the old hull leaves the perimeter unchanged.
        let inner = [PathPiece::Line { from: p(0.5, 0.), to: p(0.25, 0.) }];
        let v = hull_update(&u, &inner, p(0., 1.)).unwrap();
        assert!((v.perimeter - u.perimeter).abs() < 1e-12);
    }

    #[test]
    fn construction_is_deterministic() {
        let inst = crate::gen::generate(crate::gen::GenKind::Hook, 16, 0).unwrap();
        let pg = inst.polygon().unwrap();
        let run = || serde_json::to_string(&shortest_sa_path(&pg, inst.s.unwrap(), inst.t.unwrap()).unwrap()).unwrap();
        assert_eq!(run(), run());
    }

    #[test]
    fn spiral_witness_is_separation() {
        let inst = crate::gen::generate(crate::gen::GenKind::Spiral, 32, 0).unwrap();
        let pg = inst.polygon().unwrap();
        match shortest_sa_path(&pg, inst.s.unwrap(), inst.t.unwrap()).unwrap() {
            SAPathResult::NotReachable { witness: w @ Witness::Separation { .. } } => {
                check_witness(&pg, &w).unwrap();
                // A chain that stops short of the boundary proves nothing.
                let Witness::Separation { point, mut region, probe } = w else { unreachable!() };
                region.chain.pop();
                assert!(check_witness(&pg, &Witness::Separation { point, region, probe }).is_err());
            }
            other => panic!("expected a separation witness, got {other:?}"),
        }
    }
}
