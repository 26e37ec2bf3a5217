//! Deciding whether a simple polygon is self-approaching.
//!
//! A polygon is self-approaching iff every counter-clockwise edge has an
//! empty half-strip: the open region between the normals at its endpoints,
//! on its right (outer) side, must not meet the boundary. The sweep keeps
//! the forward side ρ of the union of half-strips seen so far and tests
//! each new edge against it; four passes (twice counter-clockwise, twice
//! clockwise) catch every kind of violation. A quadratic brute force is
//! kept as the cross-check.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{line_params, segments_intersect, Location, Point, Polygon, EPS_GEOM};

/// Open half-strip of edge `edge` (from `a` to `b`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfStrip {
    pub edge: usize,
    a: Point,
    u: Point,
    len: f64,
}

impl HalfStrip {
    pub fn of(poly: &Polygon, edge: usize) -> HalfStrip {
        let (a, b) = poly.edge(edge);
        let len = a.dist(b);
        HalfStrip { edge, a, u: (b - a) * (1.0 / len), len }
    }

    /// Strip coordinates of `q`: along the edge and outward (right) from it.
    fn coords(&self, q: Point) -> (f64, f64) {
        let d = q - self.a;
        (d.dot(self.u), -self.u.cross(d))
    }

    /// Whether `q` lies in the open strip, shrunk by the geometric band.
    pub fn contains(&self, q: Point) -> bool {
        let (x, y) = self.coords(q);
        x > EPS_GEOM && x < self.len - EPS_GEOM && y > EPS_GEOM
    }

    /// A point of segment `p q` strictly inside the strip, if any.
    pub fn clip(&self, p: Point, q: Point) -> Option<Point> {
        let (x0, y0) = self.coords(p);
        let (x1, y1) = self.coords(q);
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        // Each constraint c0 + t (c1 - c0) > bound.
        for (c0, c1) in [(x0, x1), (self.len - x0, self.len - x1), (y0, y1)] {
            let d = c1 - c0;
            if d.abs() < 1e-300 {
                if c0 <= EPS_GEOM {
                    return None;
                }
                continue;
            }
            let t = (EPS_GEOM - c0) / d;
            if d > 0.0 {
                lo = lo.max(t);
            } else {
                hi = hi.min(t);
            }
        }
        if hi - lo <= 1e-12 {
            return None;
        }
        let m = p.lerp(q, 0.5 * (lo + hi));
        self.contains(m).then_some(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
}

/// A boundary edge meeting the half-strip of another edge.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripWitness {
    pub strip_edge: usize,
    pub boundary_edge: usize,
    /// A point of the boundary edge inside the open half-strip.
    pub point: Point,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<StripWitness>,
    /// Intersection tests made in each of the four traversals.
    pub tests_per_pass: [usize; 4],
}

impl DecisionReport {
    pub fn total_tests(&self) -> usize {
        self.tests_per_pass.iter().sum()
    }
}

/// Re-checks a witness by clipping the boundary edge against the strip.
pub fn check_strip_witness(poly: &Polygon, w: &StripWitness) -> bool {
    let n = poly.len();
    if w.strip_edge >= n || w.boundary_edge >= n || w.strip_edge == w.boundary_edge {
        return false;
    }
    let strip = HalfStrip::of(poly, w.strip_edge);
    let (p, q) = poly.edge(w.boundary_edge);
    strip.contains(w.point)
        && crate::geom::point_segment_distance(w.point, p, q) <= 1e-9 * (1.0 + w.point.norm())
        && strip.clip(p, q).is_some()
}

/// Quadratic oracle: every edge against every other edge's half-strip.
pub fn half_strip_brute_force(poly: &Polygon) -> DecisionReport {
    let n = poly.len();
    let mut tests = 0;
    for i in 0..n {
        let strip = HalfStrip::of(poly, i);
        for j in (0..n).filter(|&j| j != i) {
            tests += 1;
            let (p, q) = poly.edge(j);
            if let Some(point) = strip.clip(p, q) {
                let witness = StripWitness { strip_edge: i, boundary_edge: j, point };
                return DecisionReport {
                    verdict: Verdict::No,
                    witness: Some(witness),
                    tests_per_pass: [tests, 0, 0, 0],
                };
            }
        }
    }
    DecisionReport { verdict: Verdict::Yes, witness: None, tests_per_pass: [tests, 0, 0, 0] }
}

/// Element of a ρ chain: a segment or the final ray, lying on the end
/// normal of edge `edge`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainElem {
    pub from: Point,
    /// End point, or the unit direction for a ray.
    pub to: Point,
    pub ray: bool,
    pub edge: usize,
}

impl ChainElem {
    /// Whether the closed segment `p q` touches this element; rays are
    /// cut at `reach`.
    fn touches(&self, p: Point, q: Point, reach: f64) -> bool {
        let end = if self.ray { self.from + self.to * reach } else { self.to };
        segments_intersect(p, q, self.from, end)
    }

    fn at(&self, u: f64) -> Point {
        if self.ray {
            self.from + self.to * u
        } else {
            self.from.lerp(self.to, u)
        }
    }
}

/// Forward (`rho_r`) and backward (`rho_l`) sides of the union of the
/// visited half-strips; each ends in a ray.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HourglassChains {
    pub rho_l: Vec<ChainElem>,
    pub rho_r: Vec<ChainElem>,
}

/// One counter-clockwise traversal. Returns the offending pair, in the
/// indices of `poly`.
fn traverse(poly: &Polygon, chain: &mut Vec<ChainElem>, tests: &mut usize) -> Option<StripWitness> {
    let n = poly.len();
    let reach = 4.0 * poly.diameter_bound() + 1.0;
    for k in 0..n {
        let (p, q) = poly.edge(k);
        let u = (q - p) * (1.0 / p.dist(q));
        let h = ChainElem { from: q, to: Point::new(u.y, -u.x), ray: true, edge: k };
        let hit_end = q + h.to;
        let mut replaced = None;
        for (j, e) in chain.iter().enumerate() {
            *tests += 2;
            // Touching the side of the union: test the strip behind it.
            if e.touches(p, q, reach) {
                if let Some(point) = HalfStrip::of(poly, e.edge).clip(p, q) {
                    return Some(StripWitness { strip_edge: e.edge, boundary_edge: k, point });
                }
            }
            let end = if e.ray { e.from + e.to } else { e.to };
            if let Some((s, v)) = line_params(q, hit_end, e.from, end) {
                let v_ok = v >= -1e-12 && (e.ray || v <= 1.0 + 1e-12);
                if s >= -1e-12 && v_ok {
                    replaced = Some((j, e.at(v.max(0.0))));
                    break;
                }
            }
        }
        let mut next = Vec::with_capacity(chain.len() + 2);
        match replaced {
            Some((j, c)) => {
                if c.dist(q) > 0.0 {
                    next.push(ChainElem { from: q, to: c, ray: false, edge: k });
                }
                let rest = chain[j];
                next.push(ChainElem { from: c, ..rest });
                next.extend_from_slice(&chain[j + 1..]);
            }
            None => next.push(h),
        }
        *chain = next;
    }
    None
}

/// Linear-time sweep: two counter-clockwise traversals with the chain kept
/// across them, then the same on the mirror image (the clockwise order).
pub fn hourglass_sweep(poly: &Polygon) -> (DecisionReport, HourglassChains) {
    let n = poly.len();
    let mut tests = [0usize; 4];
    let mut chains = HourglassChains::default();
    let mirror = poly.mirrored();
    // Mirrored edge i is original edge n - 2 - i reversed.
    let back = |i: usize| (2 * n - 2 - i) % n;
    for (group, pg) in [poly, &mirror].into_iter().enumerate() {
        let mut chain = Vec::new();
        for pass in 0..2 {
            let slot = 2 * group + pass;
            if let Some(mut w) = traverse(pg, &mut chain, &mut tests[slot]) {
                if group == 1 {
                    w = StripWitness {
                        strip_edge: back(w.strip_edge),
                        boundary_edge: back(w.boundary_edge),
                        point: Point::new(-w.point.x, w.point.y),
                    };
                }
                let report = DecisionReport { verdict: Verdict::No, witness: Some(w), tests_per_pass: tests };
                return (report, chains);
            }
        }
        if group == 0 {
            chains.rho_r = chain;
        } else {
            chains.rho_l = chain
                .into_iter()
                .map(|e| ChainElem {
                    from: Point::new(-e.from.x, e.from.y),
                    to: Point::new(-e.to.x, e.to.y),
                    edge: back(e.edge),
                    ..e
                })
                .collect();
        }
    }
    (DecisionReport { verdict: Verdict::Yes, witness: None, tests_per_pass: tests }, chains)
}

/// Whether `poly` is self-approaching, by the four-pass sweep.
pub fn is_self_approaching_polygon(poly: &Polygon) -> DecisionReport {
    hourglass_sweep(poly).0
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum DiskError {
    #[error("disk centre {0} lies outside the polygon")]
    CenterOutside(Point),
    #[error("radius must be positive and finite (got {0})")]
    BadRadius(f64),
}

/// Connected components of `D ∩ P` for the disk of `radius` about
/// `center`, rasterized with `resolution` cells across the larger side of
/// the window `bounds(P) ∩ bounds(D)`.
///
/// Cells whose centres lie in `D ∩ P` are joined to every such cell within
/// two steps when the segment between the centres stays in `P` (the disk
/// is convex, so it needs no check). Only components holding at least one
/// cell that lies wholly inside `D ∩ P` count: lone boundary cells in thin
/// corners are raster noise, not components.
pub fn disk_component_count(poly: &Polygon, center: Point, radius: f64, resolution: usize) -> Result<usize, DiskError> {
    if poly.locate(center) == Location::Outside {
        return Err(DiskError::CenterOutside(center));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(DiskError::BadRadius(radius));
    }
    let (lo, hi) = poly.bounds();
    let lo = Point::new(lo.x.max(center.x - radius), lo.y.max(center.y - radius));
    let hi = Point::new(hi.x.min(center.x + radius), hi.y.min(center.y + radius));
    let h = (hi.x - lo.x).max(hi.y - lo.y) / resolution.max(2) as f64;
    let (nx, ny) = (((hi.x - lo.x) / h).ceil().max(1.0) as usize, ((hi.y - lo.y) / h).ceil().max(1.0) as usize);
    let cell = |k: usize| Point::new(lo.x + ((k % nx) as f64 + 0.5) * h, lo.y + ((k / nx) as f64 + 0.5) * h);
    let half_diag = h * std::f64::consts::FRAC_1_SQRT_2;
    let r2 = radius * radius;
    let live: Vec<bool> = (0..nx * ny)
        .map(|k| {
            let c = cell(k);
            (c - center).norm2() <= r2 && poly.locate(c) == Location::Inside
        })
        .collect();
    let core = |k: usize| {
        let c = cell(k);
        c.dist(center) + half_diag <= radius
            && poly.edges().all(|(a, b)| crate::geom::point_segment_distance(c, a, b) >= half_diag)
    };
    let mut label = vec![usize::MAX; nx * ny];
    let mut count = 0;
    for start in 0..nx * ny {
        if !live[start] || label[start] != usize::MAX {
            continue;
        }
        label[start] = start;
        let mut stack = vec![start];
        let mut solid = false;
        while let Some(k) = stack.pop() {
            solid = solid || core(k);
            let (i, j) = ((k % nx) as isize, (k / nx) as isize);
            for dj in -2isize..=2 {
                for di in -2isize..=2 {
                    let (a, b) = (i + di, j + dj);
                    if (di, dj) == (0, 0) || a < 0 || b < 0 || a >= nx as isize || b >= ny as isize {
                        continue;
                    }
                    let m = b as usize * nx + a as usize;
                    if live[m] && label[m] == usize::MAX && poly.segment_inside(cell(k), cell(m)) {
                        label[m] = start;
                        stack.push(m);
                    }
                }
            }
        }
        count += solid as usize;
    }
    Ok(count)
}


#[cfg(test)]
mod agreement {
    use super::*;
    use crate::gen::{generate, GenKind};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[derive(Default)]
    struct Tally {
        total: usize,
        yes: usize,
        worst_ratio: f64,
    }

    impl Tally {
        fn compare(&mut self, pg: &Polygon, label: &str) {
            let fast = is_self_approaching_polygon(pg);
            let slow = half_strip_brute_force(pg);
            assert_eq!(fast.verdict, slow.verdict, "{label}: {:?}", pg.vertices());
            if let Some(w) = fast.witness {
                assert!(check_strip_witness(pg, &w), "{label}: {w:?}");
            }
            let ratio = fast.total_tests() as f64 / pg.len() as f64;
            assert!(ratio <= 16.0, "{label}: {} tests for n = {}", fast.total_tests(), pg.len());
            self.worst_ratio = self.worst_ratio.max(ratio);
            self.total += 1;
            self.yes += (fast.verdict == Verdict::Yes) as usize;
        }
    }

    #[test]
    fn sweep_matches_brute_force() {
        let mut random = Tally::default();
        for seed in 0..3000 {
            let n = 3 + (seed as usize % 10);
            let inst = generate(GenKind::Random, n, seed).unwrap();
            random.compare(&inst.polygon().unwrap(), &format!("random {n} {seed}"));
        }
        // Skylines: integer column heights, so many exact alignments.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut skyline = Tally::default();
        for case in 0..3000 {
            let k = rng.gen_range(2..6);
            let hs: Vec<f64> = (0..k).map(|_| rng.gen_range(1..5) as f64).collect();
            let mut v = vec![Point::new(0., 0.), Point::new(k as f64, 0.)];
            for i in (0..k).rev() {
                v.push(Point::new((i + 1) as f64, hs[i]));
                v.push(Point::new(i as f64, hs[i]));
            }
            if let Ok(pg) = crate::geom::validate_polygon(&v) {
                skyline.compare(&pg, &format!("skyline {case}"));
            }
        }
        // Wobbly stars: reflex turns in general position.
        let mut star = Tally::default();
        for case in 0..3000 {
            let n = rng.gen_range(5..13);
            let wob = rng.gen_range(0.05..0.95);
            let v: Vec<Point> = (0..n)
                .map(|i| {
                    let a = std::f64::consts::TAU * (i as f64 + rng.gen_range(-0.3..0.3)) / n as f64;
                    Point::from_polar(1.0 + rng.gen_range(-wob..wob), a)
                })
                .collect();
            if let Ok(pg) = crate::geom::validate_polygon(&v) {
                star.compare(&pg, &format!("star {case}"));
            }
        }
        for (name, t) in [("random", &random), ("skyline", &skyline), ("star", &star)] {
            eprintln!("{name}: {} of {} yes, worst tests/n {:.2}", t.yes, t.total, t.worst_ratio);
        }
    }
}
