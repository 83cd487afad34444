//! Uniform 2D sample lattices and complex 3-vector fields on them.
//!
//! Samples are cell-centered on a square grid of `n × n` cells covering
//! `[-half_width, half_width]²`, so plain Riemann sums are midpoint-rule
//! integrals and refining `n -> 2n` keeps cells nested.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Square cell-centered lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2 {
    /// Half-extent of the covered square (m).
    pub half_width: f64,
    /// Number of cells per axis.
    pub n: usize,
}

impl Grid2 {
    pub fn new(half_width: f64, n: usize) -> Result<Self> {
        if !(half_width > 0.0) || n < 2 {
            return Err(Error::Validation(format!(
                "grid requires half_width > 0 and n >= 2, got {half_width} and {n}"
            )));
        }
        Ok(Self { half_width, n })
    }

    /// Cell edge length (m).
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    /// Cell area (m²).
    pub fn cell_area(&self) -> f64 {
        let h = self.spacing();
        h * h
    }

    /// Coordinate of the center of cell `i` along one axis.
    pub fn coord(&self, i: usize) -> f64 {
        -self.half_width + (i as f64 + 0.5) * self.spacing()
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, ix: usize, iy: usize) -> usize {
        iy * self.n + ix
    }
}

/// Complex 3-vector field sampled on a [`Grid2`] (row-major, components x/y/z).
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField2 {
    pub grid: Grid2,
    pub data: Vec<[Complex64; 3]>,
}

impl VectorField2 {
    pub fn zeros(grid: Grid2) -> Self {
        Self {
            grid,
            data: vec![[Complex64::new(0.0, 0.0); 3]; grid.len()],
        }
    }

    /// Build a field by evaluating `f(x, y)` at every cell center.
    pub fn from_fn(grid: Grid2, f: impl Fn(f64, f64) -> [Complex64; 3]) -> Self {
        let mut data = Vec::with_capacity(grid.len());
        for iy in 0..grid.n {
            let y = grid.coord(iy);
            for ix in 0..grid.n {
                data.push(f(grid.coord(ix), y));
            }
        }
        Self { grid, data }
    }

    pub fn at(&self, ix: usize, iy: usize) -> [Complex64; 3] {
        self.data[self.grid.index(ix, iy)]
    }

    pub fn same_grid(&self, other: &VectorField2) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "{:?} vs {:?}",
                self.grid, other.grid
            )))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|v| v.iter().all(|c| c.re.is_finite() && c.im.is_finite()))
    }

    /// Midpoint-rule integral of `conj(self) · other` over the plane.
    pub fn overlap(&self, other: &VectorField2) -> Result<Complex64> {
        self.same_grid(other)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in self.data.iter().zip(other.data.iter()) {
            for c in 0..3 {
                acc += a[c].conj() * b[c];
            }
        }
        Ok(acc * self.grid.cell_area())
    }

    /// Integral of |field|² over the plane.
    pub fn norm_sq_integral(&self) -> f64 {
        let s: f64 = self
            .data
            .iter()
            .map(|v| v.iter().map(|c| c.norm_sqr()).sum::<f64>())
            .sum();
        s * self.grid.cell_area()
    }

    /// Central-difference partial derivative of component `comp` along `axis`
    /// (0 = x, 1 = y); one-sided at the boundary.
    pub fn partial(&self, comp: usize, axis: usize) -> Vec<Complex64> {
        let n = self.grid.n;
        let h = self.grid.spacing();
        let mut out = vec![Complex64::new(0.0, 0.0); self.grid.len()];
        for iy in 0..n {
            for ix in 0..n {
                let (lo, hi, denom) = if axis == 0 {
                    let lo = if ix > 0 { self.at(ix - 1, iy)[comp] } else { self.at(ix, iy)[comp] };
                    let hi = if ix + 1 < n { self.at(ix + 1, iy)[comp] } else { self.at(ix, iy)[comp] };
                    let d = if ix == 0 || ix + 1 == n { h } else { 2.0 * h };
                    (lo, hi, d)
                } else {
                    let lo = if iy > 0 { self.at(ix, iy - 1)[comp] } else { self.at(ix, iy)[comp] };
                    let hi = if iy + 1 < n { self.at(ix, iy + 1)[comp] } else { self.at(ix, iy)[comp] };
                    let d = if iy == 0 || iy + 1 == n { h } else { 2.0 * h };
                    (lo, hi, d)
                };
                out[self.grid.index(ix, iy)] = (hi - lo) / denom;
            }
        }
        out
    }

    /// Scale every sample by a complex factor.
    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            grid: self.grid,
            data: self.data.iter().map(|v| [v[0] * s, v[1] * s, v[2] * s]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn cell_centers_tile_the_square() {
        let g = Grid2::new(1.0, 4).unwrap();
        assert_relative_eq!(g.spacing(), 0.5);
        assert_relative_eq!(g.coord(0), -0.75);
        assert_relative_eq!(g.coord(3), 0.75);
        assert_relative_eq!(g.cell_area() * g.len() as f64, 4.0);
    }

    #[test]
    fn gaussian_norm_integral() {
        let w = 0.3;
        let g = Grid2::new(2.0, 256).unwrap();
        let f = VectorField2::from_fn(g, |x, y| {
            [
                Complex64::new((-(x * x + y * y) / (w * w)).exp(), 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ]
        });
        // ∫ e^{-2 r²/w²} dA = pi w²/2
        assert_relative_eq!(f.norm_sq_integral(), PI * w * w / 2.0, max_relative = 1e-6);
    }

    #[test]
    fn partial_of_linear_field_is_exact_in_interior() {
        let g = Grid2::new(1.0, 16).unwrap();
        let f = VectorField2::from_fn(g, |x, y| {
            [Complex64::new(3.0 * x - 2.0 * y, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]
        });
        let dx = f.partial(0, 0);
        let dy = f.partial(0, 1);
        for iy in 1..15 {
            for ix in 1..15 {
                let k = g.index(ix, iy);
                assert_relative_eq!(dx[k].re, 3.0, max_relative = 1e-12);
                assert_relative_eq!(dy[k].re, -2.0, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn mismatched_grids_error() {
        let a = VectorField2::zeros(Grid2::new(1.0, 8).unwrap());
        let b = VectorField2::zeros(Grid2::new(1.0, 16).unwrap());
        assert!(a.overlap(&b).is_err());
    }
}
