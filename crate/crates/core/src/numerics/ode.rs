//! Fixed-step classical RK4 over small state arrays (real and complex).

use num_complex::Complex64;

/// One RK4 step for dy/dt = f(t, y), y ∈ R^N.
pub fn rk4_step<const N: usize>(
    y: [f64; N],
    t: f64,
    h: f64,
    f: &impl Fn(f64, [f64; N]) -> [f64; N],
) -> [f64; N] {
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    let k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    let k4 = f(t + h, axpy(y, h, k3));
    let mut out = y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn axpy<const N: usize>(y: [f64; N], c: f64, d: [f64; N]) -> [f64; N] {
    let mut out = y;
    for i in 0..N {
        out[i] += c * d[i];
    }
    out
}

/// One RK4 step for dy/dt = f(t, y), y ∈ C^N.
pub fn rk4_step_c<const N: usize>(
    y: [Complex64; N],
    t: f64,
    h: f64,
    f: &impl Fn(f64, [Complex64; N]) -> [Complex64; N],
) -> [Complex64; N] {
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, axpy_c(y, 0.5 * h, k1));
    let k3 = f(t + 0.5 * h, axpy_c(y, 0.5 * h, k2));
    let k4 = f(t + h, axpy_c(y, h, k3));
    let mut out = y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn axpy_c<const N: usize>(y: [Complex64; N], c: f64, d: [Complex64; N]) -> [Complex64; N] {
    let mut out = y;
    for i in 0..N {
        out[i] += c * d[i];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exponential_decay() {
        let f = |_t: f64, y: [f64; 1]| [-2.0 * y[0]];
        let mut y = [1.0];
        let h = 0.01;
        for i in 0..100 {
            y = rk4_step(y, i as f64 * h, h, &f);
        }
        assert_relative_eq!(y[0], (-2.0_f64).exp(), max_relative = 1e-7);
    }

    /// Halving the step shrinks the global error by ~16x (4th order).
    #[test]
    fn order_four_convergence() {
        let f = |t: f64, y: [f64; 1]| [y[0] * t.sin()];
        let exact = |t: f64| (1.0 - t.cos()).exp();
        let run = |steps: usize| {
            let h = 2.0 / steps as f64;
            let mut y = [1.0];
            for i in 0..steps {
                y = rk4_step(y, i as f64 * h, h, &f);
            }
            (y[0] - exact(2.0)).abs()
        };
        let e1 = run(100);
        let e2 = run(200);
        let ratio = e1 / e2;
        assert!(
            (10.0..24.0).contains(&ratio),
            "expected ~16x error reduction, got {ratio}"
        );
    }

    #[test]
    fn complex_rotation_preserves_modulus() {
        use num_complex::Complex64;
        let i = Complex64::new(0.0, 1.0);
        let f = move |_t: f64, y: [Complex64; 1]| [i * y[0]];
        let mut y = [Complex64::new(1.0, 0.0)];
        let h = 0.01;
        for k in 0..628 {
            y = rk4_step_c(y, k as f64 * h, h, &f);
        }
        assert_relative_eq!(y[0].norm(), 1.0, max_relative = 1e-9);
    }
}
