//! Bracketing scan plus bisection-then-secant root refinement.

use crate::error::{Error, Result};

/// Scan [a, b] on `n` uniform points and return the first sign-change bracket.
pub fn bracket_scan<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> Option<(f64, f64)> {
    let mut x_prev = a;
    let mut f_prev = f(a);
    for i in 1..=n {
        let x = a + (b - a) * i as f64 / n as f64;
        let fx = f(x);
        if f_prev == 0.0 {
            return Some((x_prev, x_prev));
        }
        if f_prev * fx <= 0.0 {
            return Some((x_prev, x));
        }
        x_prev = x;
        f_prev = fx;
    }
    None
}

/// Refine a bracketed root: bisection until the interval shrinks to
/// `1e-4 * (b - a)`, then secant iterations with a bisection fallback
/// whenever the secant step leaves the bracket.
pub fn bisect_secant<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, x_tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let (mut flo, mut fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo * fhi > 0.0 {
        return Err(Error::RootNonConvergence(format!(
            "no sign change on [{lo}, {hi}]"
        )));
    }

    let coarse = 1e-4 * (hi - lo);
    while hi - lo > coarse {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if flo * fm < 0.0 {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }

    // Secant polish, constrained to the remaining bracket.
    let (mut x0, mut x1) = (lo, hi);
    let (mut f0, mut f1) = (flo, fhi);
    for _ in 0..100 {
        if (x1 - x0).abs() <= x_tol {
            return Ok(x1);
        }
        let denom = f1 - f0;
        let mut x2 = if denom != 0.0 { x1 - f1 * (x1 - x0) / denom } else { 0.5 * (lo + hi) };
        if !(x2 > lo && x2 < hi) {
            x2 = 0.5 * (lo + hi);
        }
        let f2 = f(x2);
        if f2 == 0.0 {
            return Ok(x2);
        }
        if flo * f2 < 0.0 {
            hi = x2;
            fhi = f2;
        } else {
            lo = x2;
            flo = f2;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        let _ = (f0, fhi);
        if hi - lo <= x_tol {
            return Ok(0.5 * (lo + hi));
        }
    }
    Err(Error::RootNonConvergence(format!(
        "secant stalled at [{lo}, {hi}]"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn finds_cosine_root() {
        let f = |x: f64| x.cos();
        let (a, b) = bracket_scan(&f, 0.0, 3.0, 64).unwrap();
        let r = bisect_secant(&f, a, b, 1e-14).unwrap();
        assert_relative_eq!(r, std::f64::consts::FRAC_PI_2, max_relative = 1e-13);
    }

    #[test]
    fn rejects_bracket_without_sign_change() {
        let f = |x: f64| x * x + 1.0;
        assert!(bracket_scan(&f, -1.0, 1.0, 32).is_none());
        assert!(bisect_secant(&f, -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn polishes_flat_function() {
        // nearly-flat transcendental with a steep pole nearby
        let f = |x: f64| (x - 0.123456789).tanh();
        let r = bisect_secant(&f, 0.0, 1.0, 1e-15).unwrap();
        assert_relative_eq!(r, 0.123456789, max_relative = 1e-12);
    }
}
