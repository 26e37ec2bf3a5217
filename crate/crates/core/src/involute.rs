//! Circle involutes of arbitrary order.
//!
//! In its local frame an order-`k` piece is
//!
//! ```text
//! I_k(θ) = Σ (-1)^i a_2i(θ) e(θ)  -  Σ (-1)^(i-1) a_(2i-1)(θ) n(θ)
//! a_i(θ) = r0 θ^i / i! + c_1 θ^(i-1) / (i-1)! + ... + c_i
//! ```
//!
//! with `e = (cos θ, sin θ)` and `n = (-sin θ, cos θ)`. Two facts drive
//! everything below: `I_k' = a_k u_k` where `u_k` is `n` turned clockwise
//! by `k` quarter turns, and `I_k = I_(k-1) - a_k u_(k-1)`, so `|a_k|` is
//! both the speed of the curve and the length of the taut string back to
//! the parent curve. Order 0 is a circular arc of radius `r0`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Direction, Point};
use crate::solve::{find_roots, refine};

/// Residual tolerance of the anchor equations.
pub const EPS_SOLVE: f64 = 1e-12;
/// Bracketing scan granularity in radians.
pub const SCAN_STEP: f64 = 1e-2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvoluteError {
    #[error("parameter {theta} outside [{lo}, {hi}]")]
    ThetaOutOfRange { theta: f64, lo: f64, hi: f64 },
    #[error("anchor {0} admits no tangent to the parent curve")]
    NoTangent(Point),
    #[error("no root in bracket [{lo}, {hi}]: residual {residual:e}")]
    NoConvergence { lo: f64, hi: f64, residual: f64 },
    #[error("tangent parameter(s) {found:?} fall outside the parent range [{lo}, {hi}]")]
    BranchOutOfRange { found: Vec<f64>, lo: f64, hi: f64 },
    #[error("invalid piece: {0}")]
    Invalid(String),
}

/// Which of the two tangents from an anchor is meant: `Plus` puts the
/// anchor behind the parent's direction of growing θ (string length
/// `a_k > 0` when the parent moves forward), `Minus` ahead of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

/// One curve piece: a circle involute of order `coeffs.len()` in a local
/// frame mapped to the world by `center + R(phase) · diag(1, reflect)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvolutePiece {
    pub r0: f64,
    pub center: Point,
    pub phase: f64,
    pub reflect: f64,
    pub coeffs: Vec<f64>,
    /// Closed parameter interval `[lo, hi]`.
    pub theta: [f64; 2],
    /// `+1` traverses the piece with growing θ, `-1` with decreasing θ.
    pub dir: f64,
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// `n(θ)` turned clockwise by `k` quarter turns.
fn unit_dir(k: usize, theta: f64) -> Point {
    let (s, c) = theta.sin_cos();
    match k % 4 {
        0 => Point::new(-s, c),
        1 => Point::new(c, s),
        2 => Point::new(s, -c),
        _ => Point::new(-c, -s),
    }
}

/// Evaluates `a_i(θ)` for coefficients `c_1..c_m`, treating missing
/// coefficients (`j > m`) as zero.
fn poly_a(r0: f64, coeffs: &[f64], i: usize, theta: f64) -> f64 {
    let mut s = r0 * theta.powi(i as i32) / factorial(i);
    for j in 1..=i.min(coeffs.len()) {
        s += coeffs[j - 1] * theta.powi((i - j) as i32) / factorial(i - j);
    }
    s
}

fn local_point(r0: f64, coeffs: &[f64], theta: f64) -> Point {
    let k = coeffs.len();
    let mut ec = 0.0;
    let mut nc = 0.0;
    for i in 0..=k {
        let a = poly_a(r0, coeffs, i, theta);
        match i % 4 {
            0 => ec += a,
            1 => nc -= a,
            2 => ec -= a,
            _ => nc += a,
        }
    }
    let (s, c) = theta.sin_cos();
    Point::new(ec * c - nc * s, ec * s + nc * c)
}

impl InvolutePiece {
    /// Circular arc about `center` with angles measured from the x axis.
    pub fn arc(center: Point, radius: f64, from: f64, to: f64) -> InvolutePiece {
        InvolutePiece {
            r0: radius,
            center,
            phase: 0.0,
            reflect: 1.0,
            coeffs: Vec::new(),
            theta: [from.min(to), from.max(to)],
            dir: if to >= from { 1.0 } else { -1.0 },
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn validate(&self) -> Result<(), InvoluteError> {
        let bad = |m: &str| Err(InvoluteError::Invalid(m.to_string()));
        if !self.r0.is_finite() || self.r0 <= 0.0 {
            return bad("r0 must be positive");
        }
        if self.reflect != 1.0 && self.reflect != -1.0 {
            return bad("reflect must be +1 or -1");
        }
        if self.dir != 1.0 && self.dir != -1.0 {
            return bad("dir must be +1 or -1");
        }
        if self.theta.iter().any(|t| t.is_nan()) || self.theta[0] > self.theta[1] {
            return bad("theta range must be ordered");
        }
        if !self.center.is_finite() || !self.phase.is_finite() || self.coeffs.iter().any(|c| !c.is_finite()) {
            return bad("non-finite field");
        }
        Ok(())
    }

    /// Parameter at which traversal starts.
    pub fn start_theta(&self) -> f64 {
        if self.dir >= 0.0 {
            self.theta[0]
        } else {
            self.theta[1]
        }
    }

    pub fn end_theta(&self) -> f64 {
        if self.dir >= 0.0 {
            self.theta[1]
        } else {
            self.theta[0]
        }
    }

    pub fn start_point(&self) -> Point {
        self.point(self.start_theta())
    }

    pub fn end_point(&self) -> Point {
        self.point(self.end_theta())
    }

    fn check(&self, theta: f64) -> Result<(), InvoluteError> {
        let slack = 1e-12 * (1.0 + theta.abs());
        if theta < self.theta[0] - slack || theta > self.theta[1] + slack || !theta.is_finite() {
            return Err(InvoluteError::ThetaOutOfRange { theta, lo: self.theta[0], hi: self.theta[1] });
        }
        Ok(())
    }

    /// `a_i(θ)` of this piece's coefficient family.
    pub fn a(&self, i: usize, theta: f64) -> f64 {
        poly_a(self.r0, &self.coeffs, i, theta)
    }

    pub fn to_world(&self, local: Point) -> Point {
        self.center + self.to_world_vec(local)
    }

    pub fn to_world_vec(&self, v: Point) -> Point {
        Point::new(v.x, self.reflect * v.y).rotate(self.phase)
    }

    pub fn to_local_vec(&self, v: Point) -> Point {
        let r = v.rotate(-self.phase);
        Point::new(r.x, self.reflect * r.y)
    }

    pub fn to_local(&self, p: Point) -> Point {
        self.to_local_vec(p - self.center)
    }

    pub fn local_point(&self, theta: f64) -> Point {
        local_point(self.r0, &self.coeffs, theta)
    }

    /// World point at `θ` without a range check.
    pub fn point(&self, theta: f64) -> Point {
        self.to_world(self.local_point(theta))
    }

    /// World point at `θ`.
    pub fn eval(&self, theta: f64) -> Result<Point, InvoluteError> {
        self.check(theta)?;
        Ok(self.point(theta))
    }

    /// `dI/dθ` in world coordinates.
    pub fn velocity(&self, theta: f64) -> Point {
        let k = self.order();
        self.to_world_vec(unit_dir(k, theta) * self.a(k, theta))
    }

    /// Unit world vector `u_k(θ)` (the tangent line, unsigned).
    pub fn frame_dir(&self, theta: f64) -> Point {
        self.to_world_vec(unit_dir(self.order(), theta))
    }

    /// Sign of `a_k` over the piece, taken at the midpoint so that the
    /// zero-length string at an unwinding start does not matter.
    fn speed_sign(&self) -> f64 {
        let k = self.order();
        let mid = 0.5 * (self.theta[0] + self.theta[1]);
        let s = self.a(k, mid);
        if s != 0.0 {
            return s.signum();
        }
        let s = self.a(k, self.theta[1]);
        if s != 0.0 {
            s.signum()
        } else {
            1.0
        }
    }

    /// Unit tangent in the direction of traversal, without a range check.
    pub fn tangent_at(&self, theta: f64) -> Point {
        let k = self.order();
        let a = self.a(k, theta);
        let s = if a.abs() > 1e-14 * self.r0.max(1.0) { a.signum() } else { self.speed_sign() };
        self.frame_dir(theta) * (s * self.dir)
    }

    /// Unit tangent in the direction of traversal.
    pub fn eval_tangent_direction(&self, theta: f64) -> Result<Direction, InvoluteError> {
        self.check(theta)?;
        let t = self.tangent_at(theta);
        Ok(Direction::new(t.x, t.y).expect("unit tangent"))
    }

    /// Length of the taut string `|a_k(θ)|`; zero for arcs.
    pub fn tangent_length(&self, theta: f64) -> Result<f64, InvoluteError> {
        self.check(theta)?;
        if self.order() == 0 {
            return Ok(0.0);
        }
        Ok(self.a(self.order(), theta).abs())
    }

    /// The evolute this piece unwinds from (same frame, one order lower).
    pub fn parent(&self) -> Option<InvolutePiece> {
        if self.coeffs.is_empty() {
            return None;
        }
        let mut p = self.clone();
        p.coeffs.pop();
        Some(p)
    }

    /// Point of the parent curve at `θ`: the center of curvature of this
    /// piece. For an arc, the circle center.
    pub fn evolute_point(&self, theta: f64) -> Point {
        match self.parent() {
            Some(p) => p.point(theta),
            None => self.center,
        }
    }

    /// Order `k+1` involute of this piece through `p`, which must lie on
    /// the tangent line at `θ0`. Range and direction are left to the caller.
    pub fn child_through(&self, theta0: f64, p: Point) -> InvolutePiece {
        let k = self.order();
        let local = self.to_local(p);
        let base = self.local_point(theta0);
        let u = unit_dir(k, theta0);
        let a_next = -(local - base).dot(u);
        let partial = poly_a(self.r0, &self.coeffs, k + 1, theta0);
        let mut child = self.clone();
        child.coeffs.push(a_next - partial);
        child
    }

    fn antiderivative(&self, theta: f64) -> f64 {
        // a_(k+1) with c_(k+1) = 0.
        poly_a(self.r0, &self.coeffs, self.order() + 1, theta)
    }

    /// Roots of `a_k` strictly inside `(lo, hi)`.
    fn speed_roots(&self, lo: f64, hi: f64) -> Vec<f64> {
        let k = self.order();
        if k == 0 || hi <= lo {
            return Vec::new();
        }
        let step = ((hi - lo) / 64.0).clamp(1e-9, SCAN_STEP);
        find_roots(|t| self.a(k, t), |t| self.a(k - 1, t), lo, hi, step, 0.0)
            .into_iter()
            .map(|r| r.x)
            .filter(|&x| x > lo && x < hi)
            .collect()
    }

    /// `∫ |a_k|` over `[min, max]` of the two bounds; exact through the
    /// polynomial antiderivative, split where `a_k` changes sign.
    pub fn arc_length(&self, theta_a: f64, theta_b: f64) -> Result<f64, InvoluteError> {
        self.check(theta_a)?;
        self.check(theta_b)?;
        Ok(self.arc_length_unchecked(theta_a, theta_b))
    }

    pub fn arc_length_unchecked(&self, theta_a: f64, theta_b: f64) -> f64 {
        let (lo, hi) = (theta_a.min(theta_b), theta_a.max(theta_b));
        if self.order() == 0 {
            return self.r0 * (hi - lo);
        }
        let mut cuts = vec![lo];
        cuts.extend(self.speed_roots(lo, hi));
        cuts.push(hi);
        cuts.windows(2).map(|w| (self.antiderivative(w[1]) - self.antiderivative(w[0])).abs()).sum()
    }

    pub fn length(&self) -> f64 {
        self.arc_length_unchecked(self.theta[0], self.theta[1])
    }

    /// Total absolute turning of the tangent over the range.
    pub fn turning(&self) -> f64 {
        self.theta[1] - self.theta[0]
    }

    /// Parameter in range whose tangent line is parallel to `d`. The tangent
    /// angle is `θ + π/2 - kπ/2` modulo π, so the answer is closed form.
    pub fn theta_for_tangent_direction(&self, d: Direction) -> Option<f64> {
        let local = self.to_local_vec(d.unit());
        let k = self.order() as f64;
        let base = local.angle() - std::f64::consts::FRAC_PI_2 + k * std::f64::consts::FRAC_PI_2;
        let pi = std::f64::consts::PI;
        let m = ((self.theta[0] - base) / pi).ceil();
        let theta = base + m * pi;
        let slack = 1e-12 * (1.0 + theta.abs());
        if theta <= self.theta[1] + slack {
            Some(theta.clamp(self.theta[0], self.theta[1]))
        } else if (self.theta[0] - (theta - pi)).abs() <= slack {
            Some(self.theta[0])
        } else {
            None
        }
    }

    /// Parameters in `[lo, hi]` at which the tangent line of this piece
    /// passes through `q`, with the signed string length `a_(k+1)` of the
    /// order-`k+1` involute through `q`.
    pub fn tangents_from(&self, q: Point, lo: f64, hi: f64) -> Vec<(f64, f64)> {
        let k = self.order();
        let local = self.to_local(q);
        let f = |t: f64| (local - self.local_point(t)).cross(unit_dir(k, t));
        let df = |t: f64| (local - self.local_point(t)).dot(unit_dir(k, t));
        let tol = 1e-15 * (1.0 + local.norm());
        let mut out: Vec<(f64, f64)> = Vec::new();
        for r in find_roots(f, df, lo, hi, SCAN_STEP.min((hi - lo).max(1e-12) / 8.0), tol) {
            let a = -(local - self.local_point(r.x)).dot(unit_dir(k, r.x));
            if out.last().is_none_or(|&(x, _)| (x - r.x).abs() > 1e-12) {
                out.push((r.x, a));
            }
        }
        // Tangency at a range end can sit exactly on a scan point of the
        // opposite sign pattern; pick up near-zero ends explicitly.
        for end in [lo, hi] {
            if f(end).abs() <= tol * 1e3 && out.iter().all(|&(x, _)| (x - end).abs() > 1e-9) {
                let a = -(local - self.local_point(end)).dot(unit_dir(k, end));
                out.push((end, a));
            }
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out
    }
}

/// Solution of the anchor equations for one order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnchorSolution {
    pub theta_k: f64,
    pub c_k: f64,
    pub residual: f64,
}

impl AnchorSolution {
    /// The order-`k` piece through the anchor, over the parent's range.
    pub fn child_of(&self, parent: &InvolutePiece) -> InvolutePiece {
        let mut c = parent.clone();
        c.coeffs.push(self.c_k);
        c
    }
}

/// Residual of the anchor equations, i.e. the larger of the radial and the
/// tangential defect of `I_k(θ_k)` against the anchor in local polar form.
pub fn anchor_residual(child: &InvolutePiece, theta: f64, anchor: Point) -> f64 {
    let local = child.to_local(anchor);
    let (r, phi) = (local.norm(), local.angle());
    let k = child.order();
    let mut even = 0.0;
    let mut odd = 0.0;
    for i in 0..=k {
        let a = child.a(i, theta);
        match i % 4 {
            0 => even += a,
            1 => odd += a,
            2 => even -= a,
            _ => odd -= a,
        }
    }
    let e1 = r * (theta - phi).cos() - even;
    let e2 = r * (theta - phi).sin() - odd;
    e1.abs().max(e2.abs())
}

fn branch_matches(parent: &InvolutePiece, theta: f64, a_child: f64, branch: Branch) -> bool {
    let k = parent.order();
    let mut s = parent.a(k, theta);
    if s == 0.0 {
        s = parent.speed_sign();
    }
    let forward = a_child * s.signum() > 0.0;
    forward == (branch == Branch::Plus)
}

/// Finds `(θ_k, c_k)` so that the order-`k` involute of `parent` passes
/// through `anchor`.
///
/// Order 1 uses the closed form `θ_1 = φ_1 ± arccos(r0 / r1)`; higher
/// orders bracket the tangency condition by a sign scan over the parent's
/// range and refine it with the Newton/bisection hybrid.
pub fn solve_anchor(parent: &InvolutePiece, anchor: Point, branch: Branch) -> Result<AnchorSolution, InvoluteError> {
    let [lo, hi] = parent.theta;
    let local = parent.to_local(anchor);
    if parent.order() == 0 {
        let (r1, phi) = (local.norm(), local.angle());
        let r0 = parent.r0;
        if r1 < r0 * (1.0 - 1e-15) {
            return Err(InvoluteError::NoTangent(anchor));
        }
        let alpha = (r0 / r1).min(1.0).acos();
        let base = match branch {
            Branch::Plus => phi + alpha,
            Branch::Minus => phi - alpha,
        };
        let two_pi = std::f64::consts::TAU;
        let m = ((lo - base) / two_pi).ceil();
        let theta = base + m * two_pi;
        let slack = 1e-12 * (1.0 + theta.abs());
        if theta > hi + slack {
            return Err(InvoluteError::BranchOutOfRange { found: vec![base], lo, hi });
        }
        let theta = theta.clamp(lo, hi);
        let a1 = (r1 * r1 - r0 * r0).max(0.0).sqrt() * if branch == Branch::Plus { 1.0 } else { -1.0 };
        let c1 = a1 - r0 * theta;
        let child = AnchorSolution { theta_k: theta, c_k: c1, residual: 0.0 };
        let residual = anchor_residual(&child.child_of(parent), theta, anchor);
        return Ok(AnchorSolution { residual, ..child });
    }
    solve_anchor_numeric(parent, anchor, branch)
}

/// The bracketed numeric route for any order, including order 1 (used to
/// cross-check the closed form).
pub fn solve_anchor_numeric(
    parent: &InvolutePiece,
    anchor: Point,
    branch: Branch,
) -> Result<AnchorSolution, InvoluteError> {
    let [lo, hi] = parent.theta;
    let local = parent.to_local(anchor);
    let cands = parent.tangents_from(anchor, lo, hi);
    let chosen = cands.iter().copied().find(|&(t, a)| branch_matches(parent, t, a, branch));
    let Some((theta, _)) = chosen else {
        // Distinguish "no tangent at all" from "tangent outside the range".
        let wide = parent.tangents_from(anchor, lo - std::f64::consts::TAU, hi + std::f64::consts::TAU);
        let found: Vec<f64> =
            wide.iter().filter(|&&(t, a)| branch_matches(parent, t, a, branch)).map(|&(t, _)| t).collect();
        if found.is_empty() && cands.is_empty() {
            return Err(InvoluteError::NoTangent(anchor));
        }
        return Err(InvoluteError::BranchOutOfRange { found, lo, hi });
    };
    let child = parent.child_through(theta, anchor);
    let c_k = *child.coeffs.last().unwrap();
    let residual = anchor_residual(&child, theta, anchor);
    let scale = 1.0 + local.norm();
    if residual > EPS_SOLVE * scale {
        // One more polish from the located parameter before giving up.
        let k = parent.order();
        let f = |t: f64| (local - parent.local_point(t)).cross(unit_dir(k, t));
        let df = |t: f64| (local - parent.local_point(t)).dot(unit_dir(k, t));
        let r = refine(f, df, (theta - 1e-6).max(lo), (theta + 1e-6).min(hi), 0.0);
        let child = parent.child_through(r.x, anchor);
        let residual = anchor_residual(&child, r.x, anchor);
        if residual > EPS_SOLVE * scale {
            return Err(InvoluteError::NoConvergence { lo: r.bracket.0, hi: r.bracket.1, residual });
        }
        return Ok(AnchorSolution { theta_k: r.x, c_k: *child.coeffs.last().unwrap(), residual });
    }
    Ok(AnchorSolution { theta_k: theta, c_k, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    fn circle(r0: f64, lo: f64, hi: f64) -> InvolutePiece {
        InvolutePiece::arc(Point::new(0.0, 0.0), r0, lo, hi)
    }

    fn with_coeffs(r0: f64, coeffs: &[f64], lo: f64, hi: f64) -> InvolutePiece {
        InvolutePiece { coeffs: coeffs.to_vec(), ..circle(r0, lo, hi) }
    }

    /// Adaptive Simpson quadrature, independent of the antiderivative path.
    fn quad(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
        fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
            (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
        }
        fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let (l, r) = (simpson(f, a, m), simpson(f, m, b));
            if depth == 0 || (l + r - whole).abs() <= 15.0 * tol {
                return l + r + (l + r - whole) / 15.0;
            }
            rec(f, a, m, l, tol / 2.0, depth - 1) + rec(f, m, b, r, tol / 2.0, depth - 1)
        }
        rec(f, a, b, simpson(f, a, b), tol, 40)
    }

    #[test]
    fn eval_examples() {
        let c = circle(1.0, -PI, PI);
        assert!(c.eval(0.0).unwrap().dist(Point::new(1.0, 0.0)) < 1e-15);
        let i1 = with_coeffs(1.0, &[0.0], -PI, PI);
        assert!(i1.eval(0.0).unwrap().dist(Point::new(1.0, 0.0)) < 1e-15);
        // Order-1 piece through (2, 0) at θ = π/3: a_1 = +√3.
        let c1 = 3f64.sqrt() - FRAC_PI_3;
        let i1 = with_coeffs(1.0, &[c1], -PI, PI);
        assert!(i1.eval(FRAC_PI_3).unwrap().dist(Point::new(2.0, 0.0)) < 1e-12);
        assert!(matches!(c.eval(4.0), Err(InvoluteError::ThetaOutOfRange { .. })));
    }

    #[test]
    fn tangent_direction_frames() {
        let i1 = with_coeffs(1.0, &[0.0], 0.0, 2.0);
        for t in [0.3, 1.0, 1.7] {
            let d = i1.eval_tangent_direction(t).unwrap().unit();
            assert!(d.dist(Point::new(t.cos(), t.sin())) < 1e-15);
        }
        let c = circle(1.0, 0.0, PI);
        let d = c.eval_tangent_direction(1.0).unwrap().unit();
        assert!(d.dist(Point::new(-(1f64).sin(), 1f64.cos())) < 1e-15);
        // Order 2: compare against central differences of eval.
        let i2 = with_coeffs(1.0, &[-0.5, 0.3], 0.5, 2.5);
        for t in [0.7, 1.3, 2.2] {
            let h = 1e-6;
            let fd = (i2.point(t + h) - i2.point(t - h)).normalized().unwrap() * i2.dir;
            let sign = i2.a(2, t).signum();
            let d = i2.eval_tangent_direction(t).unwrap().unit();
            assert!(d.dist(fd) < 1e-6, "{t}");
            let frame = Point::new(-t.sin(), t.cos()) * -sign;
            assert!(d.dist(frame) < 1e-12);
        }
    }

    #[test]
    fn anchor_order_one_closed_form() {
        let parent = circle(1.0, -PI, PI);
        let sol = solve_anchor(&parent, Point::new(2.0, 0.0), Branch::Plus).unwrap();
        assert!((sol.theta_k - FRAC_PI_3).abs() < 1e-12);
        assert!((sol.c_k - (3f64.sqrt() - FRAC_PI_3)).abs() < 1e-12);
        assert!(sol.residual < 1e-14);
        let child = sol.child_of(&parent);
        assert!((child.tangent_length(sol.theta_k).unwrap() - 1.732051).abs() < 1e-6);
        assert!(child.point(sol.theta_k).dist(Point::new(2.0, 0.0)) < 1e-12);

        let minus = solve_anchor(&parent, Point::new(2.0, 0.0), Branch::Minus).unwrap();
        assert!((minus.theta_k + FRAC_PI_3).abs() < 1e-12);
    }

    #[test]
    fn anchor_on_circle_has_zero_string() {
        let parent = circle(1.0, -PI, PI);
        let phi = 0.7;
        let sol = solve_anchor(&parent, Point::from_polar(1.0, phi), Branch::Plus).unwrap();
        assert!((sol.theta_k - phi).abs() < 1e-7);
        assert!((sol.c_k + phi).abs() < 1e-7);
        assert!(sol.child_of(&parent).tangent_length(sol.theta_k).unwrap() < 1e-7);
    }

    #[test]
    fn anchor_errors() {
        let parent = circle(1.0, -PI, PI);
        assert!(matches!(solve_anchor(&parent, Point::new(0.5, 0.0), Branch::Plus), Err(InvoluteError::NoTangent(_))));
        let narrow = circle(1.0, 2.0, 2.5);
        assert!(matches!(
            solve_anchor(&narrow, Point::new(2.0, 0.0), Branch::Plus),
            Err(InvoluteError::BranchOutOfRange { .. })
        ));
    }

    #[test]
    fn anchor_order_two_back_substitution() {
        let c1 = 3f64.sqrt() - FRAC_PI_3;
        let parent = with_coeffs(1.0, &[c1], FRAC_PI_3, FRAC_PI_3 + 6.0);
        let target = Point::new(3.0, 0.0);
        let sols: Vec<_> =
            [Branch::Plus, Branch::Minus].iter().filter_map(|&b| solve_anchor(&parent, target, b).ok()).collect();
        assert!(!sols.is_empty());
        for sol in sols {
            assert!(sol.residual < 1e-12, "{}", sol.residual);
            let child = sol.child_of(&parent);
            assert!(child.point(sol.theta_k).dist(target) < 1e-6);
        }
    }

    #[test]
    fn tangent_length_examples() {
        let c = circle(1.0, -PI, PI);
        assert_eq!(c.tangent_length(0.3).unwrap(), 0.0);
        let i1 = with_coeffs(1.0, &[-0.4], 0.4, 2.0);
        assert!(i1.tangent_length(0.4).unwrap() < 1e-15);
    }

    #[test]
    fn arc_length_examples() {
        let c = circle(1.0, 0.0, PI);
        assert!((c.arc_length(0.0, FRAC_PI_2).unwrap() - FRAC_PI_2).abs() < 1e-15);
        let i1 = with_coeffs(1.0, &[0.0], 0.0, 2.0);
        assert!((i1.arc_length(0.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        // Sign change of a_1 inside the range.
        assert!((i1.arc_length_unchecked(-1.0, 1.0) - 1.0).abs() < 1e-12);
        let parent = with_coeffs(1.0, &[3f64.sqrt() - FRAC_PI_3], FRAC_PI_3, FRAC_PI_3 + 6.0);
        let sol = solve_anchor(&parent, Point::new(3.0, 0.0), Branch::Plus)
            .or_else(|_| solve_anchor(&parent, Point::new(3.0, 0.0), Branch::Minus))
            .unwrap();
        let i2 = sol.child_of(&parent);
        let (a, b) = (sol.theta_k, sol.theta_k + 1.5);
        let exact = i2.arc_length_unchecked(a, b);
        let numeric = quad(&|t| i2.velocity(t).norm(), a, b, 1e-13);
        assert!((exact - numeric).abs() < 1e-8, "{exact} vs {numeric}");
    }

    #[test]
    fn tangent_direction_inverse() {
        let c = circle(1.0, 0.0, PI);
        let t = c.theta_for_tangent_direction(Direction::new(1.0, 0.0).unwrap()).unwrap();
        assert!((t - FRAC_PI_2).abs() < 1e-15);
        let i1 = with_coeffs(1.0, &[0.0], 0.0, 1.0);
        let t = i1.theta_for_tangent_direction(Direction::from_angle(0.3)).unwrap();
        assert!((t - 0.3).abs() < 1e-15);
        assert_eq!(i1.theta_for_tangent_direction(Direction::from_angle(2.0)), None);
        let _ = FRAC_PI_4;
    }

    /// A random anchor chain: circle, then each order passes through a point
    /// placed on a tangent line of the previous order.
    fn chain(r0: f64, phase: f64, reflect: f64, lens: &[f64], thetas: &[f64]) -> Vec<InvolutePiece> {
        let mut out = vec![InvolutePiece { phase, reflect, center: Point::new(0.3, -0.2), ..circle(r0, -10.0, 10.0) }];
        for (&len, &t) in lens.iter().zip(thetas) {
            let last = out.last().unwrap();
            let anchor = last.point(t) - last.frame_dir(t) * len;
            out.push(last.child_through(t, anchor));
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn numeric_order_one_matches_closed_form(
            r0 in 0.1f64..5.0, ratio in 1.05f64..8.0, phi in -3.0f64..3.0, plus in any::<bool>()
        ) {
            let parent = circle(r0, -2.0 * PI, 2.0 * PI);
            let anchor = Point::from_polar(r0 * ratio, phi);
            let branch = if plus { Branch::Plus } else { Branch::Minus };
            let exact = solve_anchor(&parent, anchor, branch).unwrap();
            let numeric = solve_anchor_numeric(&parent, anchor, branch).unwrap();
            prop_assert!((exact.theta_k - numeric.theta_k).abs() <= 1e-9,
                "{} vs {}", exact.theta_k, numeric.theta_k);
        }

        #[test]
        fn back_substitution_and_tangency(
            r0 in 0.2f64..3.0, phase in -3.0f64..3.0, flip in any::<bool>(),
            lens in prop::collection::vec(0.1f64..3.0, 1..5),
            t0 in -1.0f64..1.0, step in 0.05f64..0.5,
        ) {
            let reflect = if flip { -1.0 } else { 1.0 };
            let thetas: Vec<f64> = (0..lens.len()).map(|i| t0 + step * i as f64).collect();
            let pieces = chain(r0, phase, reflect, &lens, &thetas);
            for k in 1..pieces.len() {
                let parent = &pieces[k - 1];
                let target = pieces[k].point(thetas[k - 1]);
                let mut p = parent.clone();
                p.theta = [thetas[k - 1] - 0.3, thetas[k - 1] + 0.3];
                let found = [Branch::Plus, Branch::Minus].iter().filter_map(|&b| {
                    solve_anchor(&p, target, b).ok()
                }).find(|s| (s.theta_k - thetas[k - 1]).abs() < 1e-6);
                let sol = found.expect("the generating parameter is recovered");
                prop_assert!(sol.residual <= 1e-12 * (1.0 + target.norm()));
                let child = sol.child_of(&p);
                let hit = child.point(sol.theta_k);
                prop_assert!(hit.dist(target) <= 1e-6 * target.norm().max(1.0));
                // Tangency and string length.
                let foot = p.point(sol.theta_k);
                let seg = target - foot;
                let tan = p.frame_dir(sol.theta_k);
                if seg.norm() > 1e-9 {
                    prop_assert!(seg.normalized().unwrap().cross(tan).abs() <= 1e-8);
                }
                let tl = child.tangent_length(sol.theta_k).unwrap();
                prop_assert!((seg.norm() - tl).abs() <= 1e-8 * (1.0 + tl));
            }
        }

        #[test]
        fn normal_passes_through_parent(
            r0 in 0.2f64..3.0, coeffs in prop::collection::vec(-3.0f64..3.0, 0..6), t in -2.0f64..2.0,
        ) {
            let piece = with_coeffs(r0, &coeffs, -3.0, 3.0);
            let centre = piece.evolute_point(t);
            let p = piece.point(t);
            let tan = piece.frame_dir(t);
            prop_assert!((centre - p).dot(tan).abs() <= 1e-8 * (1.0 + (centre - p).norm()));
        }

        #[test]
        fn arc_length_is_additive(
            coeffs in prop::collection::vec(-2.0f64..2.0, 0..5), a in -2.0f64..0.0, m in 0.0f64..1.0, b in 0.0f64..2.0,
        ) {
            let piece = with_coeffs(1.0, &coeffs, -2.0, 2.0);
            let mid = a + (b - a) * m;
            let whole = piece.arc_length(a, b).unwrap();
            let parts = piece.arc_length(a, mid).unwrap() + piece.arc_length(mid, b).unwrap();
            prop_assert!((whole - parts).abs() <= 1e-12 * (1.0 + whole));
        }
    }
}
