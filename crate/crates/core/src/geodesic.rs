//! Geodesics inside a simple polygon: ear-clipping triangulation, the
//! funnel algorithm over the dual-tree sleeve, shortest path trees with
//! root-path LCA queries, and inflection extraction.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::geom::{orientation, Orientation, Point, Polygon, EPS_GEOM};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeodesicError {
    #[error("tree root {0} is outside the polygon")]
    RootOutside(Point),
    #[error("endpoint {0} is outside the polygon")]
    EndpointOutside(Point),
    #[error("node {0:?} is not in the tree")]
    NodeNotInTree(Node),
}

/// A taut polyline `s = v_0, ..., v_m = t`. `vertex_ids[i]` names the
/// polygon vertex at `points[i]`, if any; every interior point has one.
#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicPath {
    pub points: Vec<Point>,
    pub vertex_ids: Vec<Option<usize>>,
}

impl GeodesicPath {
    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|w| w[0].dist(w[1])).sum()
    }

    pub fn source(&self) -> Point {
        self.points[0]
    }

    pub fn target(&self) -> Point {
        *self.points.last().unwrap()
    }
}

/// Triangles of a polygon, as CCW vertex-index triples.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub triangles: Vec<[usize; 3]>,
    adjacency: Vec<Vec<(usize, usize, usize)>>,
}

/// Ear clipping in O(n^2); polygons here are desk-sized.
pub fn triangulate(poly: &Polygon) -> Triangulation {
    let pts = poly.vertices();
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    let mut triangles = Vec::with_capacity(pts.len().saturating_sub(2));
    while idx.len() > 3 {
        let m = idx.len();
        let mut best: Option<(usize, f64)> = None;
        for k in 0..m {
            let (a, b, c) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
            let turn = (pts[b] - pts[a]).cross(pts[c] - pts[b]);
            if turn <= 0.0 {
                continue;
            }
            let blocked =
                idx.iter().any(|&j| j != a && j != b && j != c && in_closed_triangle(pts[j], pts[a], pts[b], pts[c]));
            if blocked {
                continue;
            }
            if turn > EPS_GEOM {
                best = Some((k, turn));
                break;
            }
            // Nearly flat ear: keep as a fallback only.
            if best.is_none_or(|(_, t)| turn > t) {
                best = Some((k, turn));
            }
        }
        // A simple polygon always has an ear; the final fallback guards
        // against tolerance-induced dead ends.
        let k = best.map(|(k, _)| k).unwrap_or_else(|| {
            (0..m)
                .max_by(|&x, &y| {
                    let t = |k: usize| {
                        let (a, b, c) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
                        (pts[b] - pts[a]).cross(pts[c] - pts[b])
                    };
                    t(x).total_cmp(&t(y))
                })
                .unwrap()
        });
        triangles.push([idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]]);
        idx.remove(k);
    }
    triangles.push([idx[0], idx[1], idx[2]]);

    let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (t, tri) in triangles.iter().enumerate() {
        for e in 0..3 {
            let (a, b) = (tri[e], tri[(e + 1) % 3]);
            by_edge.entry((a.min(b), a.max(b))).or_default().push(t);
        }
    }
    let mut adjacency = vec![Vec::new(); triangles.len()];
    for ((a, b), ts) in by_edge {
        if let [x, y] = ts[..] {
            adjacency[x].push((y, a, b));
            adjacency[y].push((x, a, b));
        }
    }
    for adj in &mut adjacency {
        adj.sort_unstable();
    }
    Triangulation { triangles, adjacency }
}

fn in_closed_triangle(p: Point, a: Point, b: Point, c: Point) -> bool {
    let d1 = (b - a).cross(p - a);
    let d2 = (c - b).cross(p - b);
    let d3 = (a - c).cross(p - c);
    d1 >= -EPS_GEOM && d2 >= -EPS_GEOM && d3 >= -EPS_GEOM
}

impl Triangulation {
    /// A triangle containing `q`, or the nearest one when `q` sits in the
    /// tolerance band outside every triangle.
    pub fn locate(&self, poly: &Polygon, q: Point) -> usize {
        let pts = poly.vertices();
        let mut best = (f64::INFINITY, 0);
        for (t, tri) in self.triangles.iter().enumerate() {
            let (a, b, c) = (pts[tri[0]], pts[tri[1]], pts[tri[2]]);
            if in_closed_triangle(q, a, b, c) {
                return t;
            }
            let d = [(a, b), (b, c), (c, a)]
                .iter()
                .map(|&(u, v)| crate::geom::point_segment_distance(q, u, v))
                .fold(f64::INFINITY, f64::min);
            if d < best.0 {
                best = (d, t);
            }
        }
        best.1
    }

    /// Triangle sequence from `from` to `to` with the shared diagonals.
    fn sleeve(&self, from: usize, to: usize) -> Vec<(usize, usize, usize)> {
        let mut prev: Vec<Option<(usize, usize, usize)>> = vec![None; self.triangles.len()];
        let mut seen = vec![false; self.triangles.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(t) = queue.pop_front() {
            if t == to {
                break;
            }
            for &(u, a, b) in &self.adjacency[t] {
                if !seen[u] {
                    seen[u] = true;
                    prev[u] = Some((t, a, b));
                    queue.push_back(u);
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = to;
        while cur != from {
            let (p, a, b) = prev[cur].expect("dual tree is connected");
            out.push((cur, a, b));
            cur = p;
        }
        out.reverse();
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Tagged {
    p: Point,
    id: Option<usize>,
}

fn area(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

/// Simple funnel over `(left, right)` portals; the first and last portal
/// are the degenerate endpoints.
fn funnel(portals: &[(Tagged, Tagged)]) -> Vec<Tagged> {
    let mut path = vec![portals[0].0];
    let mut apex = portals[0].0;
    let (mut left, mut right) = (portals[0].0, portals[0].1);
    let (mut left_i, mut right_i) = (0usize, 0usize);
    let mut i = 1;
    while i < portals.len() {
        let (l, r) = portals[i];
        if area(apex.p, right.p, r.p) >= 0.0 {
            if apex.p == right.p || area(apex.p, left.p, r.p) < 0.0 {
                right = r;
                right_i = i;
            } else {
                path.push(left);
                apex = left;
                right = apex;
                right_i = left_i;
                i = left_i + 1;
                continue;
            }
        }
        if area(apex.p, left.p, l.p) <= 0.0 {
            if apex.p == left.p || area(apex.p, right.p, l.p) > 0.0 {
                left = l;
                left_i = i;
            } else {
                path.push(right);
                apex = right;
                left = apex;
                left_i = right_i;
                i = right_i + 1;
                continue;
            }
        }
        i += 1;
    }
    path.push(portals[portals.len() - 1].0);
    path
}

/// Drops repeated points and straight pass-throughs.
fn tighten(path: Vec<Tagged>) -> Vec<Tagged> {
    let mut out: Vec<Tagged> = Vec::with_capacity(path.len());
    for q in path {
        if out.last().is_some_and(|l| l.p.dist(q.p) <= EPS_GEOM) {
            if q.id.is_some() && out.len() > 1 {
                out.last_mut().unwrap().id = q.id;
            }
            continue;
        }
        while out.len() >= 2 {
            let (a, b) = (out[out.len() - 2].p, out[out.len() - 1].p);
            let straight = orientation(a, b, q.p) == Orientation::Collinear && (b - a).dot(q.p - b) > 0.0;
            if straight {
                out.pop();
            } else {
                break;
            }
        }
        out.push(q);
    }
    out
}

/// Precomputed triangulation for repeated geodesic queries in one polygon.
#[derive(Clone, Debug)]
pub struct GeodesicOracle<'a> {
    poly: &'a Polygon,
    tri: Triangulation,
}

impl<'a> GeodesicOracle<'a> {
    pub fn new(poly: &'a Polygon) -> Self {
        GeodesicOracle { poly, tri: triangulate(poly) }
    }

    pub fn polygon(&self) -> &Polygon {
        self.poly
    }

    pub fn path(&self, s: Point, t: Point) -> Result<GeodesicPath, GeodesicError> {
        for q in [s, t] {
            if !self.poly.contains(q) {
                return Err(GeodesicError::EndpointOutside(q));
            }
        }
        let ts = Tagged { p: s, id: self.poly.vertex_index(s, EPS_GEOM) };
        let tt = Tagged { p: t, id: self.poly.vertex_index(t, EPS_GEOM) };
        if s.dist(t) <= EPS_GEOM {
            return Ok(GeodesicPath { points: vec![s], vertex_ids: vec![ts.id] });
        }
        let a = self.tri.locate(self.poly, s);
        let b = self.tri.locate(self.poly, t);
        let pts = self.poly.vertices();
        let mut portals = vec![(ts, ts)];
        let mut cur = a;
        for (next, u, v) in self.tri.sleeve(a, b) {
            let dir = centroid(pts, &self.tri.triangles[next]) - centroid(pts, &self.tri.triangles[cur]);
            let mid = (pts[u] + pts[v]) * 0.5;
            let (pu, pv) = (Tagged { p: pts[u], id: Some(u) }, Tagged { p: pts[v], id: Some(v) });
            if dir.cross(pts[u] - mid) > 0.0 {
                portals.push((pu, pv));
            } else {
                portals.push((pv, pu));
            }
            cur = next;
        }
        portals.push((tt, tt));
        let path = tighten(funnel(&portals));
        let mut points: Vec<Point> = path.iter().map(|q| q.p).collect();
        let mut vertex_ids: Vec<Option<usize>> = path.iter().map(|q| q.id).collect();
        // Endpoints keep their exact input coordinates.
        points[0] = s;
        *points.last_mut().unwrap() = t;
        vertex_ids[0] = ts.id;
        *vertex_ids.last_mut().unwrap() = tt.id;
        Ok(GeodesicPath { points, vertex_ids })
    }
}

fn centroid(pts: &[Point], tri: &[usize; 3]) -> Point {
    (pts[tri[0]] + pts[tri[1]] + pts[tri[2]]) * (1.0 / 3.0)
}

/// Shortest polygonal path from `s` to `t` inside `poly`.
pub fn geodesic(poly: &Polygon, s: Point, t: Point) -> Result<GeodesicPath, GeodesicError> {
    GeodesicOracle::new(poly).path(s, t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Root,
    Vertex(usize),
}

/// Shortest path tree over the polygon vertices.
#[derive(Clone, Debug)]
pub struct ShortestPathTree {
    pub root: Point,
    /// Vertex coinciding with the root, if any; it is identified with
    /// [`Node::Root`].
    pub root_vertex: Option<usize>,
    vertices: Vec<Point>,
    parent: Vec<Option<Node>>,
    dist: Vec<f64>,
}

/// Result of an LCA query: the ancestor and the two tree chains hanging
/// below it, each listed from the ancestor down to the query node.
#[derive(Clone, Debug, PartialEq)]
pub struct Lca {
    pub node: Node,
    pub chain_u: Vec<Node>,
    pub chain_v: Vec<Node>,
}

pub fn build_spt(poly: &Polygon, root: Point) -> Result<ShortestPathTree, GeodesicError> {
    if !poly.contains(root) {
        return Err(GeodesicError::RootOutside(root));
    }
    let oracle = GeodesicOracle::new(poly);
    let root_vertex = poly.vertex_index(root, EPS_GEOM);
    let n = poly.len();
    let mut parent = vec![None; n];
    let mut dist = vec![0.0; n];
    for v in 0..n {
        if Some(v) == root_vertex {
            continue;
        }
        let g = oracle.path(root, poly.vertex(v))?;
        let m = g.points.len();
        parent[v] = Some(if m <= 2 {
            Node::Root
        } else {
            match g.vertex_ids[m - 2] {
                Some(u) if Some(u) != root_vertex => Node::Vertex(u),
                _ => Node::Root,
            }
        });
        dist[v] = g.length();
    }
    Ok(ShortestPathTree { root, root_vertex, vertices: poly.vertices().to_vec(), parent, dist })
}

impl ShortestPathTree {
    fn canon(&self, u: Node) -> Node {
        match u {
            Node::Vertex(v) if Some(v) == self.root_vertex => Node::Root,
            other => other,
        }
    }

    fn check(&self, u: Node) -> Result<Node, GeodesicError> {
        match u {
            Node::Vertex(v) if v >= self.vertices.len() => Err(GeodesicError::NodeNotInTree(u)),
            _ => Ok(self.canon(u)),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn point(&self, u: Node) -> Point {
        match u {
            Node::Root => self.root,
            Node::Vertex(v) => self.vertices[v],
        }
    }

    pub fn parent(&self, u: Node) -> Option<Node> {
        match self.canon(u) {
            Node::Root => None,
            Node::Vertex(v) => self.parent[v],
        }
    }

    /// Geodesic distance from the root.
    pub fn dist(&self, u: Node) -> f64 {
        match self.canon(u) {
            Node::Root => 0.0,
            Node::Vertex(v) => self.dist[v],
        }
    }

    /// Nodes from `u` up to and including the root.
    pub fn path_to_root(&self, u: Node) -> Result<Vec<Node>, GeodesicError> {
        let mut cur = self.check(u)?;
        let mut out = vec![cur];
        while let Some(p) = self.parent(cur) {
            out.push(p);
            cur = p;
            if out.len() > self.vertices.len() + 1 {
                break;
            }
        }
        Ok(out)
    }

    /// Geodesic from the root to `u` as a point sequence.
    pub fn geodesic_to(&self, u: Node) -> Result<Vec<Point>, GeodesicError> {
        let mut path: Vec<Point> = self.path_to_root(u)?.into_iter().map(|w| self.point(w)).collect();
        path.reverse();
        Ok(path)
    }

    pub fn lca(&self, u: Node, v: Node) -> Result<Lca, GeodesicError> {
        let mut pu = self.path_to_root(u)?;
        let mut pv = self.path_to_root(v)?;
        pu.reverse();
        pv.reverse();
        let common = pu.iter().zip(&pv).take_while(|(a, b)| a == b).count();
        let node = pu[common - 1];
        Ok(Lca { node, chain_u: pu[common - 1..].to_vec(), chain_v: pv[common - 1..].to_vec() })
    }
}

/// The first vertex of every inflection segment: interior vertices whose
/// turn differs from the next interior vertex's turn. Endpoint segments
/// count as ordinary subchain members.
pub fn inflection_points(path: &GeodesicPath) -> Vec<Point> {
    let pts = &path.points;
    let turns: Vec<(Point, Orientation)> = (1..pts.len().saturating_sub(1))
        .map(|i| (pts[i], orientation(pts[i - 1], pts[i], pts[i + 1])))
        .filter(|(_, o)| *o != Orientation::Collinear)
        .collect();
    turns.windows(2).filter(|w| w[0].1 != w[1].1).map(|w| w[0].0).collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    pub(crate) fn ell() -> Polygon {
        Polygon::new(&[p(0., 0.), p(3., 0.), p(3., 1.), p(1., 1.), p(1., 3.), p(0., 3.)]).unwrap()
    }

    pub(crate) fn comb() -> Polygon {
        Polygon::new(&[
            p(0., 0.),
            p(7., 0.),
            p(7., 3.),
            p(6., 3.),
            p(6., 1.),
            p(5., 1.),
            p(5., 3.),
            p(4., 3.),
            p(4., 1.),
            p(3., 1.),
            p(3., 3.),
            p(2., 3.),
            p(2., 1.),
            p(1., 1.),
            p(1., 3.),
            p(0., 3.),
        ])
        .unwrap()
    }

    pub(crate) fn zigzag() -> Polygon {
        Polygon::new(&[
            p(0., 0.),
            p(4., 0.),
            p(4., 4.),
            p(3., 4.),
            p(3., 1.),
            p(2., 1.),
            p(2., 5.),
            p(6., 5.),
            p(6., 6.),
            p(1., 6.),
            p(1., 1.),
            p(0., 1.),
        ])
        .unwrap()
    }

    /// Star-shaped random polygon about the origin: sorted angles, random radii.
    pub(crate) fn star(angles: &[f64], radii: &[f64]) -> Option<Polygon> {
        let mut a: Vec<(f64, f64)> = angles.iter().copied().zip(radii.iter().copied()).collect();
        a.sort_by(|x, y| x.0.total_cmp(&y.0));
        a.dedup_by(|x, y| (x.0 - y.0).abs() < 1e-3);
        let pts: Vec<Point> = a.iter().map(|&(t, r)| Point::from_polar(r, t)).collect();
        Polygon::new(&pts).ok()
    }

    /// Visibility-graph Dijkstra: the independent oracle.
    pub(crate) fn dijkstra(poly: &Polygon, s: Point, t: Point) -> (f64, Vec<Point>) {
        let mut nodes = vec![s, t];
        nodes.extend_from_slice(poly.vertices());
        let m = nodes.len();
        let mut dist = vec![f64::INFINITY; m];
        let mut prev = vec![usize::MAX; m];
        let mut done = vec![false; m];
        dist[0] = 0.0;
        for _ in 0..m {
            let u = (0..m).filter(|&i| !done[i]).min_by(|&a, &b| dist[a].total_cmp(&dist[b])).unwrap();
            if !dist[u].is_finite() {
                break;
            }
            done[u] = true;
            for v in 0..m {
                if !done[v] && poly.segment_inside(nodes[u], nodes[v]) {
                    let d = dist[u] + nodes[u].dist(nodes[v]);
                    if d < dist[v] {
                        dist[v] = d;
                        prev[v] = u;
                    }
                }
            }
        }
        let mut path = vec![t];
        let mut cur = 1;
        while prev[cur] != usize::MAX {
            cur = prev[cur];
            path.push(nodes[cur]);
        }
        path.reverse();
        (dist[1], path)
    }

    pub(crate) fn sample_inside(poly: &Polygon, u: f64, v: f64) -> Option<Point> {
        let (lo, hi) = poly.bounds();
        let q = p(lo.x + u * (hi.x - lo.x), lo.y + v * (hi.y - lo.y));
        (poly.locate(q) == crate::geom::Location::Inside).then_some(q)
    }

    #[test]
    fn triangulation_covers_area() {
        for poly in [ell(), comb(), zigzag()] {
            let tri = triangulate(&poly);
            assert_eq!(tri.triangles.len(), poly.len() - 2);
            let pts = poly.vertices();
            let total: f64 =
                tri.triangles.iter().map(|t| crate::geom::signed_area(&[pts[t[0]], pts[t[1]], pts[t[2]]])).sum();
            assert!((total - poly.area()).abs() < 1e-9);
        }
    }

    #[test]
    fn geodesic_examples() {
        let sq = Polygon::new(&[p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]).unwrap();
        let g = geodesic(&sq, p(0.2, 0.2), p(0.8, 0.8)).unwrap();
        assert_eq!(g.points, vec![p(0.2, 0.2), p(0.8, 0.8)]);

        let g = geodesic(&ell(), p(0.5, 2.5), p(2.5, 0.5)).unwrap();
        assert_eq!(g.points, vec![p(0.5, 2.5), p(1., 1.), p(2.5, 0.5)]);
        assert_eq!(g.vertex_ids[1], Some(3));

        let g = geodesic(&ell(), p(0.5, 0.5), p(0.5, 0.5)).unwrap();
        assert_eq!(g.points.len(), 1);
        assert!(matches!(geodesic(&ell(), p(2., 2.), p(0.5, 0.5)), Err(GeodesicError::EndpointOutside(_))));
    }

    #[test]
    fn spt_examples() {
        let sq = Polygon::new(&[p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]).unwrap();
        let spt = build_spt(&sq, p(0.3, 0.4)).unwrap();
        assert!((0..4).all(|v| spt.parent(Node::Vertex(v)) == Some(Node::Root)));

        let l = ell();
        let spt = build_spt(&l, p(2.5, 0.5)).unwrap();
        assert_eq!(spt.parent(Node::Vertex(5)), Some(Node::Vertex(3)));
        assert_eq!(spt.parent(Node::Vertex(4)), Some(Node::Vertex(3)));
        assert_eq!(spt.parent(Node::Vertex(0)), Some(Node::Root));
        let (d, _) = dijkstra(&l, p(2.5, 0.5), p(0., 3.));
        assert!((spt.dist(Node::Vertex(5)) - d).abs() < 1e-12);

        let at_vertex = build_spt(&l, p(0., 0.)).unwrap();
        assert_eq!(at_vertex.dist(Node::Vertex(0)), 0.0);
        assert_eq!(at_vertex.parent(Node::Vertex(0)), None);
        assert!(matches!(build_spt(&l, p(2., 2.)), Err(GeodesicError::RootOutside(_))));
    }

    #[test]
    fn lca_examples() {
        let spt = build_spt(&ell(), p(2.5, 0.5)).unwrap();
        let u = Node::Vertex(5);
        assert_eq!(spt.lca(u, u).unwrap().node, u);
        assert_eq!(spt.lca(Node::Vertex(3), u).unwrap().node, Node::Vertex(3));
        // (0,0) is directly visible from the root, (0,3) routes through (1,1).
        let l = spt.lca(u, Node::Vertex(0)).unwrap();
        assert_eq!(l.node, Node::Root);
        assert_eq!(l.chain_u, vec![Node::Root, Node::Vertex(3), u]);
        assert_eq!(l.chain_v, vec![Node::Root, Node::Vertex(0)]);
        assert!(spt.lca(Node::Vertex(99), u).is_err());
    }

    #[test]
    fn inflection_examples() {
        let mk = |pts: Vec<Point>| GeodesicPath { vertex_ids: vec![None; pts.len()], points: pts };
        assert!(inflection_points(&mk(vec![p(0., 0.), p(1., 0.)])).is_empty());
        assert!(inflection_points(&mk(vec![p(0., 0.), p(1., 0.), p(1., 1.)])).is_empty());
        // Turns R, R, L, L.
        let z = mk(vec![p(0., 0.), p(1., 0.), p(1., -1.), p(0., -1.5), p(0., -3.), p(1., -4.), p(0., -5.)]);
        let turns: Vec<_> = (1..6).map(|i| orientation(z.points[i - 1], z.points[i], z.points[i + 1])).collect();
        assert_eq!(&turns[..4], &[Orientation::Right, Orientation::Right, Orientation::Left, Orientation::Left]);
        let inf = inflection_points(&z);
        assert_eq!(inf[0], p(1., -1.));
        let g = geodesic(&zigzag(), p(0.5, 0.5), p(5.5, 5.5)).unwrap();
        assert_eq!(inflection_points(&g), vec![p(1., 1.)]);
    }

    #[test]
    fn comb_geodesic_matches_oracle() {
        let c = comb();
        let s = p(0.5, 2.5);
        let t = p(6.5, 2.5);
        let g = geodesic(&c, s, t).unwrap();
        let (d, path) = dijkstra(&c, s, t);
        assert!((g.length() - d).abs() < 1e-9);
        assert_eq!(g.points, path);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn geodesic_matches_dijkstra(
            angles in prop::collection::vec(0.0f64..std::f64::consts::TAU, 5..14),
            radii in prop::collection::vec(0.3f64..3.0, 14),
            u in prop::collection::vec(0.0f64..1.0, 4),
        ) {
            let Some(poly) = star(&angles, &radii) else { return Ok(()) };
            let (Some(s), Some(t)) = (sample_inside(&poly, u[0], u[1]), sample_inside(&poly, u[2], u[3])) else {
                return Ok(());
            };
            let g = geodesic(&poly, s, t).unwrap();
            let (d, _) = dijkstra(&poly, s, t);
            prop_assert!((g.length() - d).abs() <= 1e-9 * (1.0 + d), "{} vs {}", g.length(), d);
            for w in g.points.windows(2) {
                prop_assert!(poly.segment_inside(w[0], w[1]));
            }
            for (i, id) in g.vertex_ids.iter().enumerate().skip(1).take(g.points.len().saturating_sub(2)) {
                prop_assert!(id.is_some());
                prop_assert!(poly.is_reflex(id.unwrap()), "interior vertex {} not reflex", i);
            }
            let spt = build_spt(&poly, s).unwrap();
            for v in 0..poly.len() {
                let (d, _) = dijkstra(&poly, s, poly.vertex(v));
                prop_assert!((spt.dist(Node::Vertex(v)) - d).abs() <= 1e-9 * (1.0 + d));
                let chain = spt.geodesic_to(Node::Vertex(v)).unwrap();
                let len: f64 = chain.windows(2).map(|w| w[0].dist(w[1])).sum();
                prop_assert!((len - d).abs() <= 1e-9 * (1.0 + d));
            }
            // LCA against naive root-path comparison.
            for a in 0..poly.len() {
                for b in 0..poly.len() {
                    let l = spt.lca(Node::Vertex(a), Node::Vertex(b)).unwrap();
                    let pa = spt.path_to_root(Node::Vertex(a)).unwrap();
                    let pb = spt.path_to_root(Node::Vertex(b)).unwrap();
                    let naive = *pa.iter().find(|x| pb.contains(x)).unwrap();
                    prop_assert_eq!(l.node, naive);
                }
            }
        }
    }
}
