//! Scalar root finding: sign-scan bracketing followed by a damped
//! Newton iteration that falls back to bisection whenever a step leaves
//! the bracket or fails to shrink the residual.

/// A located root together with its diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub x: f64,
    pub residual: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
}

const MAX_ITER: usize = 200;

/// Refines a root of `f` inside the sign-changing bracket `[lo, hi]`.
///
/// `df` is the derivative of `f`. Returns the best iterate even when the
/// residual tolerance is not met; callers inspect `residual`.
pub fn refine<F, D>(f: F, df: D, lo: f64, hi: f64, tol: f64) -> Root
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Root { x: a, residual: 0.0, bracket: (a, a), iterations: 0 };
    }
    if fb == 0.0 {
        return Root { x: b, residual: 0.0, bracket: (b, b), iterations: 0 };
    }
    let mut x = if (fa - fb).abs() > 0.0 { a - fa * (b - a) / (fb - fa) } else { 0.5 * (a + b) };
    if !(x > a && x < b) {
        x = 0.5 * (a + b);
    }
    let mut fx = f(x);
    let mut best = (x, fx.abs());
    let mut it = 0;
    while it < MAX_ITER {
        it += 1;
        if fx.abs() < best.1 {
            best = (x, fx.abs());
        }
        if fx == 0.0 || best.1 <= tol || (b - a) <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
            break;
        }
        // Shrink the bracket around the sign change.
        if (fx < 0.0) == (fa < 0.0) {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        let d = df(x);
        let mut next = if d != 0.0 && d.is_finite() { x - fx / d } else { f64::NAN };
        if !(next > a && next < b) {
            next = 0.5 * (a + b);
        }
        let fnext = f(next);
        if fnext.abs() > 0.5 * fx.abs() && next != 0.5 * (a + b) {
            // Damping: a Newton step that does not halve the residual is
            // replaced by a bisection step.
            let mid = 0.5 * (a + b);
            x = mid;
            fx = f(mid);
        } else {
            x = next;
            fx = fnext;
        }
    }
    if fx.abs() < best.1 {
        best = (x, fx.abs());
    }
    Root { x: best.0, residual: best.1, bracket: (a, b), iterations: it }
}

/// All sign changes of `f` on `[lo, hi]` found by scanning with `step`,
/// each refined with [`refine`]. Exact zeros on grid points are reported
/// once.
pub fn find_roots<F, D>(f: F, df: D, lo: f64, hi: f64, step: f64, tol: f64) -> Vec<Root>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let mut out: Vec<Root> = Vec::new();
    if lo.is_nan() || hi.is_nan() || hi < lo {
        return out;
    }
    let n = (((hi - lo) / step).ceil() as usize).clamp(1, 1_000_000);
    let mut x0 = lo;
    let mut f0 = f(x0);
    if f0 == 0.0 {
        out.push(Root { x: x0, residual: 0.0, bracket: (x0, x0), iterations: 0 });
    }
    for i in 1..=n {
        let x1 = if i == n { hi } else { lo + (hi - lo) * (i as f64) / (n as f64) };
        let f1 = f(x1);
        if f1 == 0.0 {
            out.push(Root { x: x1, residual: 0.0, bracket: (x1, x1), iterations: 0 });
        } else if f0 != 0.0 && (f0 < 0.0) != (f1 < 0.0) {
            out.push(refine(&f, &df, x0, x1, tol));
        }
        x0 = x1;
        f0 = f1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cosine_roots() {
        let roots = find_roots(f64::cos, |x| -x.sin(), 0.0, 10.0, 1e-2, 1e-15);
        let expect =
            [std::f64::consts::FRAC_PI_2, 3.0 * std::f64::consts::FRAC_PI_2, 5.0 * std::f64::consts::FRAC_PI_2];
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip(expect) {
            assert!((r.x - e).abs() < 1e-13, "{} vs {}", r.x, e);
        }
    }

    #[test]
    fn bad_derivative_still_converges() {
        // A wrong derivative forces the bisection fallback.
        let r = refine(|x| x * x * x - 2.0, |_| 1e-9, 0.0, 2.0, 1e-14);
        assert!((r.x - 2f64.cbrt()).abs() < 1e-12);
    }
}
