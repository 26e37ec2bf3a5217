//! Deterministic instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::str::FromStr;
use thiserror::Error;

use crate::geom::{validate_polygon, Point, Polygon};
use crate::io::Instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Convex,
    Random,
    Comb,
    Spiral,
    Hook,
}

impl FromStr for GenKind {
    type Err = GenError;
    fn from_str(s: &str) -> Result<Self, GenError> {
        Ok(match s {
            "convex" => GenKind::Convex,
            "random" => GenKind::Random,
            "comb" => GenKind::Comb,
            "spiral" => GenKind::Spiral,
            "hook" => GenKind::Hook,
            other => return Err(GenError::UnsupportedKind(other.to_string())),
        })
    }
}

impl std::fmt::Display for GenKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GenKind::Convex => "convex",
            GenKind::Random => "random",
            GenKind::Comb => "comb",
            GenKind::Spiral => "spiral",
            GenKind::Hook => "hook",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("unsupported generator kind {0:?}")]
    UnsupportedKind(String),
    #[error("n must be at least {min} for this kind (got {n})")]
    TooSmall { n: usize, min: usize },
    #[error("generator could not produce a valid polygon")]
    Exhausted,
}

/// Generates an instance of `kind` with about `n` vertices.
pub fn generate(kind: GenKind, n: usize, seed: u64) -> Result<Instance, GenError> {
    if n < 3 {
        return Err(GenError::TooSmall { n, min: 3 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (poly, s, t) = match kind {
        GenKind::Convex => convex(n, &mut rng),
        GenKind::Random => random_simple(n, &mut rng)?,
        GenKind::Comb => comb(n)?,
        GenKind::Spiral => spiral(n)?,
        GenKind::Hook => hook(n)?,
    };
    Ok(Instance { name: format!("{kind}-{n}-{seed}"), vertices: poly.vertices().to_vec(), s, t, seed: Some(seed) })
}

/// Random convex polygon: sorted random angles on a circle.
fn convex(n: usize, rng: &mut ChaCha8Rng) -> (Polygon, Option<Point>, Option<Point>) {
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<Point> = angles.iter().map(|&a| Point::from_polar(10.0, a)).collect();
        if let Ok(p) = validate_polygon(&pts) {
            if p.len() == n {
                let s = interior_point(&p, rng);
                let t = interior_point(&p, rng);
                return (p, s, t);
            }
        }
    }
}

/// Random simple polygon by space partitioning: split the point set with
/// a line through two points, then recursively split each side with a
/// random line through a chosen point that separates the chain ends.
fn random_simple(n: usize, rng: &mut ChaCha8Rng) -> Result<(Polygon, Option<Point>, Option<Point>), GenError> {
    for _ in 0..200 {
        let pts: Vec<Point> = (0..n).map(|_| Point::new(rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0))).collect();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        let (a, b) = (pts[idx[0]], pts[idx[1]]);
        let (left, right): (Vec<Point>, Vec<Point>) =
            idx[2..].iter().map(|&i| pts[i]).partition(|p| (b - a).cross(*p - a) > 0.0);
        let mut ring = Vec::with_capacity(n);
        chain(a, b, right, rng, &mut ring);
        chain(b, a, left, rng, &mut ring);
        if let Ok(poly) = validate_polygon(&ring) {
            if poly.len() == n {
                let s = interior_point(&poly, rng);
                let t = interior_point(&poly, rng);
                return Ok((poly, s, t));
            }
        }
    }
    Err(GenError::Exhausted)
}

/// Appends the chain from `a` (inclusive) to `b` (exclusive) through `set`.
fn chain(a: Point, b: Point, set: Vec<Point>, rng: &mut ChaCha8Rng, out: &mut Vec<Point>) {
    if set.is_empty() {
        out.push(a);
        return;
    }
    let c = set[rng.gen_range(0..set.len())];
    let r = a.lerp(b, rng.gen_range(0.05..0.95));
    let dir = r - c;
    let side_a = dir.cross(a - c) > 0.0;
    let (sa, sb): (Vec<Point>, Vec<Point>) =
        set.into_iter().filter(|p| *p != c).partition(|p| (dir.cross(*p - c) > 0.0) == side_a);
    chain(a, c, sa, rng, out);
    chain(c, b, sb, rng, out);
}

fn interior_point(poly: &Polygon, rng: &mut ChaCha8Rng) -> Option<Point> {
    let (lo, hi) = poly.bounds();
    (0..1000).find_map(|_| {
        let q = Point::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        (poly.locate(q) == crate::geom::Location::Inside).then_some(q)
    })
}

/// U-polygon family: a base bar with `k = (n - 4) / 4` slots cut from the
/// top; `n = 8` is the single-slot U.
fn comb(n: usize) -> Result<(Polygon, Option<Point>, Option<Point>), GenError> {
    if n < 8 {
        return Err(GenError::TooSmall { n, min: 8 });
    }
    let k = (n - 4) / 4;
    let w = (2 * k + 1) as f64;
    let mut v = vec![Point::new(0.0, 0.0), Point::new(w, 0.0), Point::new(w, 3.0)];
    for j in (1..=k).rev() {
        let x = (2 * j) as f64;
        v.extend([Point::new(x, 3.0), Point::new(x, 1.0), Point::new(x - 1.0, 1.0), Point::new(x - 1.0, 3.0)]);
    }
    v.push(Point::new(0.0, 3.0));
    let poly = validate_polygon(&v).map_err(|_| GenError::Exhausted)?;
    Ok((poly, Some(Point::new(0.5, 2.5)), Some(Point::new(w - 0.5, 2.5))))
}

/// Spiral corridor parameters shared with the tests that place `s`.
pub const SPIRAL_INNER: f64 = 0.6;
pub const SPIRAL_WIDTH: f64 = 0.8;
pub const SPIRAL_PITCH: f64 = 1.5;
pub const SPIRAL_STEP: f64 = PI / 4.0;

/// Point on the corridor centre line at angle `phi`.
pub fn spiral_center(phi: f64) -> Point {
    Point::from_polar(SPIRAL_INNER + 0.5 * SPIRAL_WIDTH + SPIRAL_PITCH * phi / TAU, phi)
}

/// Archimedean spiral corridor: both walls are sampled at the same angles
/// (eight per turn), `n / 2` samples each, so consecutive turns never
/// touch. `t` sits at the inner end and `s` at the outer end.
fn spiral(n: usize) -> Result<(Polygon, Option<Point>, Option<Point>), GenError> {
    if n < 8 {
        return Err(GenError::TooSmall { n, min: 8 });
    }
    let k = n / 2;
    let phis: Vec<f64> = (0..k).map(|j| j as f64 * SPIRAL_STEP).collect();
    let r_in = |phi: f64| SPIRAL_INNER + SPIRAL_PITCH * phi / TAU;
    let mut v: Vec<Point> = phis.iter().map(|&f| Point::from_polar(r_in(f) + SPIRAL_WIDTH, f)).collect();
    v.extend(phis.iter().rev().map(|&f| Point::from_polar(r_in(f), f)));
    let poly = validate_polygon(&v).map_err(|_| GenError::Exhausted)?;
    let end = phis[k - 1];
    Ok((poly, Some(spiral_center(end - SPIRAL_STEP)), Some(spiral_center(SPIRAL_STEP))))
}

/// Wedge notches cut alternately from the right and left walls of a tall
/// room; each notch tip forces the path to swing around the suffix.
/// Uses `4 + 3 m` vertices for `m = (n - 4) / 3` notches.
fn hook(n: usize) -> Result<(Polygon, Option<Point>, Option<Point>), GenError> {
    if n < 7 {
        return Err(GenError::TooSmall { n, min: 7 });
    }
    let m = (n - 4) / 3;
    let (w, h) = (4.0, 2.0 * m as f64 + 2.0);
    // Right wall bottom-up with its notches, then left wall top-down.
    let mut right = Vec::new();
    let mut left = Vec::new();
    for j in 0..m {
        let y = 2.0 * j as f64 + 1.0;
        if j % 2 == 0 {
            right.extend([Point::new(w, y - 0.15), Point::new(1.0, y), Point::new(w, y + 0.15)]);
        } else {
            left.extend([Point::new(0.0, y + 0.15), Point::new(w - 1.0, y), Point::new(0.0, y - 0.15)]);
        }
    }
    let mut v = vec![Point::new(0.0, 0.0), Point::new(w, 0.0)];
    v.extend(right);
    v.extend([Point::new(w, h), Point::new(0.0, h)]);
    v.extend(left.chunks(3).rev().flatten().copied());
    let poly = validate_polygon(&v).map_err(|_| GenError::Exhausted)?;
    Ok((poly, Some(Point::new(0.5 * w, h - 0.5)), Some(Point::new(0.5 * w + 0.5, 0.4))))
}
