//! Bessel functions J0, J1 and modified Bessel functions K0, K1 for real
//! positive arguments, as needed by the step-index characteristic equation.
//!
//! J0/J1 use the ascending power series, which is accurate to better than
//! 1e-12 relative for `x <= 9` (the guided-mode bracket only ever needs
//! `x < 2.405`). K0/K1 are evaluated from the integral representation
//! `K_nu(x) = ∫_0^∞ exp(-x cosh t) cosh(nu t) dt` by adaptive quadrature,
//! which stays accurate for any argument large enough to matter here.

use crate::numerics::quad;

/// Bessel function of the first kind, order zero.
pub fn j0(x: f64) -> f64 {
    j_series(0, x)
}

/// Bessel function of the first kind, order one.
pub fn j1(x: f64) -> f64 {
    j_series(1, x)
}

/// Ascending series J_n(x) = sum_m (-1)^m (x/2)^{2m+n} / (m! (m+n)!).
fn j_series(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = match n {
        0 => 1.0,
        1 => half,
        _ => unreachable!("only orders 0 and 1 are used"),
    };
    let mut sum = term;
    let x2 = half * half;
    for m in 1..200 {
        let m = f64::from(m);
        term *= -x2 / (m * (m + f64::from(n)));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// Modified Bessel function of the second kind, order zero. Requires `x > 0`.
pub fn k0(x: f64) -> f64 {
    k_integral(0, x)
}

/// Modified Bessel function of the second kind, order one. Requires `x > 0`.
pub fn k1(x: f64) -> f64 {
    k_integral(1, x)
}

fn k_integral(nu: u32, x: f64) -> f64 {
    assert!(x > 0.0, "K_nu is only defined for x > 0");
    // exp(-x cosh t) underflows once x cosh t > 745; clip the domain there.
    let t_max = (745.0 / x).max(2.0).acosh() + 1.0;
    // Factor out exp(-x) so the integrand is O(1) near t = 0 for large x.
    // The 1e-13 relative request sits above the quadrature's roundoff floor.
    let f = |t: f64| (-x * (t.cosh() - 1.0)).exp() * (f64::from(nu) * t).cosh();
    let scaled = quad::adaptive(&f, 0.0, t_max, 1e-13, 1e-300, 4096)
        .expect("K integrand is smooth; quadrature must converge")
        .value;
    scaled * (-x).exp()
}
