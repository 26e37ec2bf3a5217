//! Path model (segments and involute pieces) with self-approach
//! verification and metric queries.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Point, Polygon};
use crate::involute::InvolutePiece;

/// Default sample density for verification.
pub const DEFAULT_SAMPLES: usize = 64;
/// Default verification tolerance.
pub const DEFAULT_TOL: f64 = 1e-7;
/// Junction angle above which two one-sided tangents form a bend.
pub const BEND_ANGLE: f64 = 1e-6;
/// Allowed gap between consecutive pieces.
pub const G0_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PathError {
    #[error("piece {index} starts {gap:e} away from the previous end")]
    Discontinuous { index: usize, gap: f64 },
    #[error("arc-length parameter {0} outside [0, {1}]")]
    OutOfRange(f64, f64),
    #[error("source and target coincide")]
    DegenerateEndpoints,
    #[error("invalid piece {index}: {reason}")]
    InvalidPiece { index: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PieceJson", into = "PieceJson")]
pub enum PathPiece {
    Line { from: Point, to: Point },
    Curve(InvolutePiece),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum PieceJson {
    Line {
        from: Point,
        to: Point,
    },
    Involute {
        order: usize,
        r0: f64,
        center: Point,
        phase: f64,
        reflect: f64,
        coeffs: Vec<f64>,
        theta: [f64; 2],
        dir: f64,
    },
}

impl TryFrom<PieceJson> for PathPiece {
    type Error = String;

    fn try_from(j: PieceJson) -> Result<Self, String> {
        match j {
            PieceJson::Line { from, to } => Ok(PathPiece::Line { from, to }),
            PieceJson::Involute { order, r0, center, phase, reflect, coeffs, theta, dir } => {
                if order != coeffs.len() {
                    return Err(format!("order {order} does not match {} coefficients", coeffs.len()));
                }
                let piece = InvolutePiece { r0, center, phase, reflect, coeffs, theta, dir };
                piece.validate().map_err(|e| e.to_string())?;
                Ok(PathPiece::Curve(piece))
            }
        }
    }
}

impl From<PathPiece> for PieceJson {
    fn from(p: PathPiece) -> Self {
        match p {
            PathPiece::Line { from, to } => PieceJson::Line { from, to },
            PathPiece::Curve(c) => PieceJson::Involute {
                order: c.order(),
                r0: c.r0,
                center: c.center,
                phase: c.phase,
                reflect: c.reflect,
                coeffs: c.coeffs,
                theta: c.theta,
                dir: c.dir,
            },
        }
    }
}

impl PathPiece {
    pub fn start(&self) -> Point {
        match self {
            PathPiece::Line { from, .. } => *from,
            PathPiece::Curve(c) => c.start_point(),
        }
    }

    pub fn end(&self) -> Point {
        match self {
            PathPiece::Line { to, .. } => *to,
            PathPiece::Curve(c) => c.end_point(),
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            PathPiece::Line { from, to } => from.dist(*to),
            PathPiece::Curve(c) => c.length(),
        }
    }

    /// Point at fraction `u ∈ [0, 1]` of the parameter (not arc length).
    pub fn point_at_param(&self, u: f64) -> Point {
        match self {
            PathPiece::Line { from, to } => from.lerp(*to, u),
            PathPiece::Curve(c) => c.point(c.start_theta() + (c.end_theta() - c.start_theta()) * u),
        }
    }

    /// Unit tangent in traversal direction at parameter fraction `u`.
    pub fn tangent_at_param(&self, u: f64) -> Point {
        match self {
            PathPiece::Line { from, to } => (*to - *from).normalized().unwrap_or_default(),
            PathPiece::Curve(c) => c.tangent_at(c.start_theta() + (c.end_theta() - c.start_theta()) * u),
        }
    }

    pub fn start_tangent(&self) -> Point {
        self.tangent_at_param(0.0)
    }

    pub fn end_tangent(&self) -> Point {
        self.tangent_at_param(1.0)
    }

    /// Point at arc length `s` from the start of the piece.
    pub fn point_at_length(&self, s: f64) -> Point {
        match self {
            PathPiece::Line { from, to } => {
                let len = from.dist(*to);
                if len == 0.0 {
                    *from
                } else {
                    from.lerp(*to, (s / len).clamp(0.0, 1.0))
                }
            }
            PathPiece::Curve(c) => {
                let (t0, t1) = (c.start_theta(), c.end_theta());
                let (mut lo, mut hi) = (0.0f64, 1.0f64);
                // Arc length is monotone in the parameter; bisect on it.
                for _ in 0..100 {
                    let mid = 0.5 * (lo + hi);
                    if c.arc_length_unchecked(t0, t0 + (t1 - t0) * mid) < s {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if hi - lo < 1e-16 {
                        break;
                    }
                }
                c.point(t0 + (t1 - t0) * 0.5 * (lo + hi))
            }
        }
    }

    pub fn reversed(&self) -> PathPiece {
        match self {
            PathPiece::Line { from, to } => PathPiece::Line { from: *to, to: *from },
            PathPiece::Curve(c) => PathPiece::Curve(InvolutePiece { dir: -c.dir, ..c.clone() }),
        }
    }

    pub fn is_curve(&self) -> bool {
        matches!(self, PathPiece::Curve(_))
    }
}

/// An oriented piecewise path from `source` to `target`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SAPath {
    pub source: Point,
    pub target: Point,
    #[serde(rename = "segments")]
    pub pieces: Vec<PathPiece>,
}

impl SAPath {
    /// Builds a path, checking G0 continuity from `source` to `target`.
    pub fn new(source: Point, target: Point, pieces: Vec<PathPiece>) -> Result<SAPath, PathError> {
        let path = SAPath { source, target, pieces };
        path.validate()?;
        Ok(path)
    }

    pub fn validate(&self) -> Result<(), PathError> {
        let mut cur = self.source;
        for (index, piece) in self.pieces.iter().enumerate() {
            if let PathPiece::Curve(c) = piece {
                c.validate().map_err(|e| PathError::InvalidPiece { index, reason: e.to_string() })?;
            }
            let gap = cur.dist(piece.start());
            if gap > G0_TOL * (1.0 + cur.norm()) {
                return Err(PathError::Discontinuous { index, gap });
            }
            cur = piece.end();
        }
        let gap = cur.dist(self.target);
        if gap > G0_TOL * (1.0 + cur.norm()) {
            return Err(PathError::Discontinuous { index: self.pieces.len(), gap });
        }
        Ok(())
    }

    /// Straight polyline through `pts`.
    pub fn polyline(pts: &[Point]) -> SAPath {
        let pieces = pts.windows(2).map(|w| PathPiece::Line { from: w[0], to: w[1] }).collect();
        SAPath { source: pts[0], target: *pts.last().unwrap(), pieces }
    }

    /// Contiguous run of pieces as its own path.
    pub fn subpath(&self, range: std::ops::Range<usize>) -> SAPath {
        let pieces = self.pieces[range.clone()].to_vec();
        let source = if range.start == 0 { self.source } else { pieces.first().map_or(self.target, |p| p.start()) };
        let target =
            if range.end == self.pieces.len() { self.target } else { pieces.last().map_or(source, |p| p.end()) };
        SAPath { source, target, pieces }
    }

    pub fn reversed(&self) -> SAPath {
        SAPath {
            source: self.target,
            target: self.source,
            pieces: self.pieces.iter().rev().map(PathPiece::reversed).collect(),
        }
    }
}

pub fn path_length(path: &SAPath) -> f64 {
    path.pieces.iter().map(PathPiece::length).sum()
}

/// Point at arc length `s_arc` from the source.
pub fn eval_path(path: &SAPath, s_arc: f64) -> Result<Point, PathError> {
    let total = path_length(path);
    let slack = 1e-12 * (1.0 + total);
    if !(s_arc >= -slack && s_arc <= total + slack) {
        return Err(PathError::OutOfRange(s_arc, total));
    }
    let mut rest = s_arc.max(0.0);
    for piece in &path.pieces {
        let len = piece.length();
        if rest <= len {
            return Ok(piece.point_at_length(rest));
        }
        rest -= len;
    }
    Ok(path.target)
}

pub fn detour_ratio(path: &SAPath) -> Result<f64, PathError> {
    let d = path.source.dist(path.target);
    if d <= crate::geom::EPS_GEOM {
        return Err(PathError::DegenerateEndpoints);
    }
    Ok(path_length(path) / d)
}

/// Junctions whose one-sided tangents differ by more than [`BEND_ANGLE`].
pub fn bend_points(path: &SAPath) -> Vec<Point> {
    let pieces: Vec<&PathPiece> = path.pieces.iter().filter(|p| p.length() > 0.0).collect();
    pieces
        .windows(2)
        .filter(|w| {
            let (a, b) = (w[0].end_tangent(), w[1].start_tangent());
            a.cross(b).atan2(a.dot(b)).abs() > BEND_ANGLE
        })
        .map(|w| w[0].end())
        .collect()
}

/// Evidence for a failed check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// A later point `q` lies behind the normal at `a` with tangent `dir`.
    Normal { a: Point, dir: Point, q: Point, margin: f64 },
    /// `|ac| < |bc|` for the ordered triple.
    Triple { a: Point, b: Point, c: Point, margin: f64 },
    /// A sample leaves the polygon.
    Containment { point: Point },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    /// Smallest margin seen (negative means a violation beyond zero).
    pub worst_margin: f64,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

/// Samples with their one-sided tangents; junction points appear once
/// and carry both tangents.
fn sample_with_tangents(path: &SAPath, per_piece: usize) -> Vec<(Point, Vec<Point>)> {
    let per_piece = per_piece.max(2);
    let mut out: Vec<(Point, Vec<Point>)> = Vec::new();
    for piece in path.pieces.iter().filter(|p| p.length() > 0.0) {
        for i in 0..per_piece {
            let u = i as f64 / (per_piece - 1) as f64;
            let (q, d) = (piece.point_at_param(u), piece.tangent_at_param(u));
            if i == 0 {
                if let Some(last) = out.last_mut() {
                    last.1.push(d);
                    continue;
                }
            }
            out.push((q, vec![d]));
        }
    }
    if out.is_empty() {
        out.push((path.source, Vec::new()));
    }
    out
}

fn sample_points(path: &SAPath, per_piece: usize) -> Vec<Point> {
    sample_with_tangents(path, per_piece).into_iter().map(|(q, _)| q).collect()
}

/// Normal (half-plane) property: every later sample lies ahead of the
/// normal at every earlier sample; both one-sided tangents are used at
/// junctions. Optionally checks containment in `poly`.
pub fn verify_normal_property(
    path: &SAPath,
    poly: Option<&Polygon>,
    samples_per_piece: usize,
    tol: f64,
) -> VerificationReport {
    let samples = sample_with_tangents(path, samples_per_piece);
    let n = samples.len();
    if let Some(poly) = poly {
        if let Some((q, _)) = samples.iter().find(|(q, _)| !poly.contains(*q)) {
            return VerificationReport {
                passed: false,
                worst_margin: f64::NEG_INFINITY,
                samples: n,
                violation: Some(Violation::Containment { point: *q }),
            };
        }
    }
    // Bounding boxes of blocks of later samples let whole blocks be skipped
    // when they cannot lower the running minimum.
    const BLOCK: usize = 32;
    let boxes: Vec<(Point, Point)> = samples
        .chunks(BLOCK)
        .map(|c| {
            c.iter().fold(
                (Point::new(f64::INFINITY, f64::INFINITY), Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY)),
                |(lo, hi), (q, _)| (Point::new(lo.x.min(q.x), lo.y.min(q.y)), Point::new(hi.x.max(q.x), hi.y.max(q.y))),
            )
        })
        .collect();
    let mut worst = f64::INFINITY;
    let mut first: Option<Violation> = None;
    for i in 0..n {
        let (a, dirs) = &samples[i];
        for &d in dirs {
            let ad = a.dot(d);
            let mut j = i + 1;
            while j < n {
                let block = j / BLOCK;
                if j % BLOCK == 0 {
                    let (lo, hi) = boxes[block];
                    let lb = (if d.x >= 0.0 { lo.x } else { hi.x }) * d.x
                        + (if d.y >= 0.0 { lo.y } else { hi.y }) * d.y
                        - ad;
                    if lb >= worst {
                        j += BLOCK;
                        continue;
                    }
                }
                let q = samples[j].0;
                let m = (q - *a).dot(d);
                if m < worst {
                    worst = m;
                }
                if m < -tol && first.is_none() {
                    first = Some(Violation::Normal { a: *a, dir: d, q, margin: m });
                }
                j += 1;
            }
        }
    }
    if n < 2 {
        worst = 0.0;
    }
    VerificationReport { passed: first.is_none(), worst_margin: worst.min(f64::MAX), samples: n, violation: first }
}

/// Definition check `|ac| >= |bc| - tol` over all ordered sampled triples.
///
/// Junction triples are examined first so that polyline failures report
/// their corner points. The sampled pass is exhaustive over triples,
/// organized as a running minimum of `|ac|` per `c`.
pub fn verify_triples(path: &SAPath, samples_per_piece: usize, tol: f64) -> VerificationReport {
    let mut junctions = vec![path.source];
    junctions.extend(path.pieces.iter().map(PathPiece::end));
    if let Some(v) = worst_triple(&junctions, tol, true) {
        let n = junctions.len();
        let margin = match v {
            Violation::Triple { margin, .. } => margin,
            _ => unreachable!(),
        };
        return VerificationReport { passed: false, worst_margin: margin, samples: n, violation: Some(v) };
    }
    let pts = sample_points(path, samples_per_piece.max(3));
    let n = pts.len();
    let (worst, violation) = match worst_triple(&pts, tol, false) {
        Some(v) => {
            let m = if let Violation::Triple { margin, .. } = v { margin } else { 0.0 };
            (m, Some(v))
        }
        None => (triple_min_margin(&pts), None),
    };
    VerificationReport { passed: violation.is_none(), worst_margin: worst, samples: n, violation }
}

/// First violating triple (by `c`, then `b`) or, with `worst`, the worst one.
fn worst_triple(pts: &[Point], tol: f64, worst: bool) -> Option<Violation> {
    let n = pts.len();
    let mut found: Option<Violation> = None;
    let mut best = -tol;
    for k in 2..n {
        let c = pts[k];
        let mut min_a = (f64::INFINITY, 0usize);
        for j in 1..k {
            let da = pts[j - 1].dist(c);
            if da < min_a.0 {
                min_a = (da, j - 1);
            }
            let m = min_a.0 - pts[j].dist(c);
            if m < best {
                found = Some(Violation::Triple { a: pts[min_a.1], b: pts[j], c, margin: m });
                if !worst {
                    return found;
                }
                best = m;
            }
        }
    }
    found
}

fn triple_min_margin(pts: &[Point]) -> f64 {
    let n = pts.len();
    let mut worst = f64::INFINITY;
    for k in 2..n {
        let c = pts[k];
        let mut min_a = f64::INFINITY;
        for j in 1..k {
            min_a = min_a.min(pts[j - 1].dist(c));
            worst = worst.min(min_a - pts[j].dist(c));
        }
    }
    if worst.is_finite() {
        worst
    } else {
        0.0
    }
}
