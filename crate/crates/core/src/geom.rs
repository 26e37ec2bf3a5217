//! Planar primitives: points, directions, rays, simple polygons and the
//! predicates every other module is built on.
//!
//! All incidence and sign decisions use the absolute tolerance [`EPS_GEOM`]
//! (input units). Swapping in exact predicates would not change any
//! signature here.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance for sign and incidence predicates.
pub const EPS_GEOM: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from(a: [f64; 2]) -> Self {
        Point::new(a[0], a[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn from_polar(r: f64, angle: f64) -> Self {
        Point::new(r * angle.cos(), r * angle.sin())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn rotate(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }

    /// Unit vector, or `None` for a (near) zero vector.
    pub fn normalized(self) -> Option<Point> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(self * (1.0 / n))
        } else {
            None
        }
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// A non-zero direction vector; normalized on demand.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    dx: f64,
    dy: f64,
}

impl Direction {
    pub fn new(dx: f64, dy: f64) -> Option<Direction> {
        if (dx != 0.0 || dy != 0.0) && dx.is_finite() && dy.is_finite() {
            Some(Direction { dx, dy })
        } else {
            None
        }
    }

    pub fn from_angle(a: f64) -> Direction {
        Direction { dx: a.cos(), dy: a.sin() }
    }

    pub fn vector(self) -> Point {
        Point::new(self.dx, self.dy)
    }

    pub fn unit(self) -> Point {
        let n = self.dx.hypot(self.dy);
        Point::new(self.dx / n, self.dy / n)
    }

    pub fn angle(self) -> f64 {
        self.dy.atan2(self.dx)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ray {
    pub origin: Point,
    pub dir: Direction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Turn direction of `a -> b -> c`.
pub fn orientation(a: Point, b: Point, c: Point) -> Orientation {
    let v = (b - a).cross(c - a);
    if v > EPS_GEOM {
        Orientation::Left
    } else if v < -EPS_GEOM {
        Orientation::Right
    } else {
        Orientation::Collinear
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("polygon needs at least 3 distinct vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon has zero area")]
    ZeroArea,
    #[error("polygon edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(usize),
    #[error("ray origin {0} is outside the polygon")]
    OriginOutside(Point),
    #[error("ray from {0} does not hit the boundary")]
    NoHit(Point),
}

/// Distance from `p` to the closed segment `a b`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    p.dist(closest_on_segment(p, a, b))
}

pub fn closest_on_segment(p: Point, a: Point, b: Point) -> Point {
    let ab = b - a;
    let l2 = ab.norm2();
    if l2 == 0.0 {
        return a;
    }
    let t = ((p - a).dot(ab) / l2).clamp(0.0, 1.0);
    a + ab * t
}

/// Whether closed segments `a b` and `c d` share a point (within tolerance).
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 != o2
        && o3 != o4
        && o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
    {
        return true;
    }
    point_segment_distance(c, a, b) <= EPS_GEOM
        || point_segment_distance(d, a, b) <= EPS_GEOM
        || point_segment_distance(a, c, d) <= EPS_GEOM
        || point_segment_distance(b, c, d) <= EPS_GEOM
}

/// Parameters `(t, u)` of the crossing point of the lines through `a b` and
/// `c d`, as `a + t (b - a) = c + u (d - c)`. `None` for parallel lines.
pub fn line_params(a: Point, b: Point, c: Point, d: Point) -> Option<(f64, f64)> {
    let r = b - a;
    let s = d - c;
    let den = r.cross(s);
    if den.abs() <= 1e-300 {
        return None;
    }
    let w = c - a;
    Some((w.cross(s) / den, w.cross(r) / den))
}

/// Intersection point of the closed segments when they cross at a single
/// point; collinear overlaps return `None`.
pub fn segment_intersection_point(a: Point, b: Point, c: Point, d: Point) -> Option<Point> {
    let (t, u) = line_params(a, b, c, d)?;
    let la = (b - a).norm().max(1e-300);
    let lc = (d - c).norm().max(1e-300);
    let ta = EPS_GEOM / la;
    let tc = EPS_GEOM / lc;
    if t >= -ta && t <= 1.0 + ta && u >= -tc && u <= 1.0 + tc {
        Some(a + (b - a) * t.clamp(0.0, 1.0))
    } else {
        None
    }
}

pub fn signed_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    let mut s = 0.0;
    for i in 0..n {
        s += pts[i].cross(pts[(i + 1) % n]);
    }
    0.5 * s
}

/// A simple polygon with counter-clockwise vertex order, no repeated
/// consecutive vertices and no collinear vertex runs.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    /// Normalizes and validates a raw vertex cycle.
    pub fn new(raw: &[Point]) -> Result<Polygon, GeomError> {
        validate_polygon(raw)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (Point, Point) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).sum()
    }

    pub fn is_convex(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| orientation(self.vertex(i), self.vertex(i + 1), self.vertex(i + 2)) != Orientation::Right)
    }

    /// Whether vertex `i` is reflex (interior angle above 180 degrees).
    pub fn is_reflex(&self, i: usize) -> bool {
        let n = self.len();
        orientation(self.vertex(i + n - 1), self.vertex(i), self.vertex(i + 1)) == Orientation::Right
    }

    /// Axis-aligned bounds `(min, max)`.
    pub fn bounds(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.vertices {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }

    pub fn diameter_bound(&self) -> f64 {
        let (lo, hi) = self.bounds();
        lo.dist(hi)
    }

    /// Mirror image in the y axis, re-oriented counter-clockwise. Vertex `i`
    /// of the result is the mirror of vertex `n - 1 - i`.
    pub fn mirrored(&self) -> Polygon {
        let vertices = self.vertices.iter().rev().map(|p| Point::new(-p.x, p.y)).collect();
        Polygon { vertices }
    }

    /// Index of the vertex within `tol` of `p`.
    pub fn vertex_index(&self, p: Point, tol: f64) -> Option<usize> {
        self.vertices.iter().position(|v| v.dist(p) <= tol)
    }

    pub fn locate(&self, q: Point) -> Location {
        point_in_polygon(self, q)
    }

    pub fn contains(&self, q: Point) -> bool {
        point_in_polygon(self, q) != Location::Outside
    }

    /// Whether the closed segment `a b` lies inside the closed polygon.
    pub fn segment_inside(&self, a: Point, b: Point) -> bool {
        if !self.contains(a) || !self.contains(b) {
            return false;
        }
        let d = b - a;
        let len = d.norm();
        if len <= EPS_GEOM {
            return true;
        }
        let mut ts = vec![0.0, 1.0];
        for (c, e) in self.edges() {
            if let Some((t, u)) = line_params(a, b, c, e) {
                if (-1e-12..=1.0 + 1e-12).contains(&u) && t > 0.0 && t < 1.0 {
                    ts.push(t);
                }
            }
            for v in [c, e] {
                let t = (v - a).dot(d) / (len * len);
                if t > 0.0 && t < 1.0 && point_segment_distance(v, a, b) <= EPS_GEOM {
                    ts.push(t);
                }
            }
        }
        ts.sort_by(f64::total_cmp);
        ts.windows(2).all(|w| {
            if w[1] - w[0] <= 1e-15 {
                return true;
            }
            self.contains(a + d * (0.5 * (w[0] + w[1])))
        })
    }
}

/// Normalizes a raw vertex cycle into a [`Polygon`]: drops repeated and
/// collinear vertices, fixes the orientation to counter-clockwise and
/// rejects self-intersecting input.
pub fn validate_polygon(raw: &[Point]) -> Result<Polygon, GeomError> {
    for (i, p) in raw.iter().enumerate() {
        if !p.is_finite() {
            return Err(GeomError::NonFinite(i));
        }
    }
    let mut pts: Vec<Point> = Vec::with_capacity(raw.len());
    for &p in raw {
        if pts.last().is_none_or(|q: &Point| q.dist(p) > EPS_GEOM) {
            pts.push(p);
        }
    }
    while pts.len() > 1 && pts[0].dist(*pts.last().unwrap()) <= EPS_GEOM {
        pts.pop();
    }
    if pts.len() < 3 {
        return Err(GeomError::TooFewVertices(pts.len()));
    }
    // Merge collinear runs until stable.
    loop {
        let n = pts.len();
        if n < 3 {
            return Err(GeomError::ZeroArea);
        }
        let drop = (0..n).find(|&i| {
            let a = pts[(i + n - 1) % n];
            let b = pts[i];
            let c = pts[(i + 1) % n];
            let ab = b - a;
            let bc = c - b;
            // Only straight continuations are merged; a spike folding back
            // onto itself is left for the intersection check.
            ab.cross(bc).abs() <= EPS_GEOM * (ab.norm() + bc.norm()).max(1.0) && ab.dot(bc) > 0.0
        });
        match drop {
            Some(i) => {
                pts.remove(i);
            }
            None => break,
        }
    }
    let n = pts.len();
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        for j in (i + 1)..n {
            let (c, d) = (pts[j], pts[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // Adjacent edges share one vertex; they may not fold back.
                let (shared, p, q) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                let u = p - shared;
                let v = q - shared;
                if u.cross(v).abs() <= EPS_GEOM * u.norm().max(v.norm()) && u.dot(v) > 0.0 {
                    return Err(GeomError::SelfIntersecting(i, j));
                }
                continue;
            }
            if segments_intersect(a, b, c, d) {
                return Err(GeomError::SelfIntersecting(i, j));
            }
        }
    }
    let area = signed_area(&pts);
    if area.abs() <= EPS_GEOM {
        return Err(GeomError::ZeroArea);
    }
    if area < 0.0 {
        pts.reverse();
    }
    Ok(Polygon { vertices: pts })
}

/// Even-odd point classification with an [`EPS_GEOM`] boundary band.
pub fn point_in_polygon(poly: &Polygon, q: Point) -> Location {
    let mut inside = false;
    for (a, b) in poly.edges() {
        if point_segment_distance(q, a, b) <= EPS_GEOM {
            return Location::Boundary;
        }
        if (a.y > q.y) != (b.y > q.y) {
            let x = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if x > q.x {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// First boundary point hit by a ray from a point inside the polygon.
///
/// Returns the hit point and the index of the edge containing it. Hits at
/// the origin itself (origin on the boundary) are skipped. Equal-distance
/// hits, which happen at vertices, resolve to the lowest edge index.
pub fn ray_shoot(poly: &Polygon, ray: Ray) -> Result<(Point, usize), GeomError> {
    if !poly.contains(ray.origin) {
        return Err(GeomError::OriginOutside(ray.origin));
    }
    let o = ray.origin;
    let d = ray.dir.unit();
    let far = o + d;
    let mut best: Option<(f64, usize)> = None;
    for (i, (a, b)) in poly.edges().enumerate() {
        let mut cands = Vec::with_capacity(2);
        if let Some((t, u)) = line_params(o, far, a, b) {
            let tol = EPS_GEOM / a.dist(b).max(1e-300);
            if u >= -tol && u <= 1.0 + tol {
                cands.push(t);
            }
        } else if point_segment_distance(a, o, o + d * 1e18) <= EPS_GEOM {
            // Collinear edge: the nearer endpoint is the hit.
            cands.push((a - o).dot(d));
            cands.push((b - o).dot(d));
        }
        for t in cands {
            if t <= EPS_GEOM {
                continue;
            }
            match best {
                Some((bt, _)) if t >= bt - EPS_GEOM => {}
                _ => best = Some((t, i)),
            }
        }
    }
    let (t, i) = best.ok_or(GeomError::NoHit(o))?;
    Ok((o + d * t, i))
}
