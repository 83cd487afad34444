//! Analytic step-index circular-waveguide mode solver.
//!
//! The fundamental guided mode is solved in the weakly-guiding LP01
//! approximation: with `u = k0 a sqrt(n_co² - n_eff²)` and
//! `w = k0 a sqrt(n_eff² - n_cl²)` the characteristic equation is
//!
//! ```text
//! u J1(u)/J0(u) = w K1(w)/K0(w),   u² + w² = V²
//! ```
//!
//! solved by a bracketing scan in `u` over `(0, min(V, j01))` followed by
//! bisection-then-secant refinement. The LP01 branch always has exactly one
//! root in that bracket. The approximation is used even at high index
//! contrast (air-clad microwires); the full-vector HE11 correction is out of
//! scope and the convention is part of the module contract.

use crate::constants::{C_LIGHT, EPS_0};
use crate::error::{Error, Result};
use crate::numerics::bessel::{j0, j1, k0, k1};
use crate::numerics::grid::{Grid2, VectorField2};
use crate::numerics::roots;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::Write;

/// First zero of J0; upper end of the LP01 `u` bracket.
const J0_FIRST_ZERO: f64 = 2.404825557695773;

/// Step-index circular microwire geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveguideGeometry {
    /// Core radius (m).
    pub core_radius: f64,
    /// Core refractive index.
    pub core_index: f64,
    /// Cladding index (1.0 for an air-clad microwire).
    pub clad_index: f64,
    /// Waveguide length (m).
    pub length: f64,
}

impl WaveguideGeometry {
    pub fn validate(&self) -> Result<()> {
        if !(self.core_radius > 0.0) {
            return Err(Error::Validation(format!(
                "core_radius must be > 0, got {}",
                self.core_radius
            )));
        }
        if !(self.clad_index >= 1.0) || !(self.core_index > self.clad_index) {
            return Err(Error::Validation(format!(
                "need core_index > clad_index >= 1, got {} and {}",
                self.core_index, self.clad_index
            )));
        }
        if !(self.length > 0.0) {
            return Err(Error::Validation(format!(
                "length must be > 0, got {}",
                self.length
            )));
        }
        Ok(())
    }

    /// Normalized frequency V = k0 a sqrt(n_co² - n_cl²).
    pub fn v_number(&self, wavelength: f64) -> f64 {
        let k0v = 2.0 * PI / wavelength;
        k0v * self.core_radius * (self.core_index.powi(2) - self.clad_index.powi(2)).sqrt()
    }
}

/// Whether a sampled profile is an optical or an acoustic mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModeKind {
    Optical,
    Acoustic,
}

/// A vector field sampled on a uniform 2D cross-section lattice, with its
/// propagation constant and carrier frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeProfile {
    pub field: VectorField2,
    /// Propagation constant (rad/m).
    pub beta: f64,
    /// Angular carrier frequency (rad/s).
    pub omega: f64,
    pub kind: ModeKind,
}

impl ModeProfile {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0) {
            return Err(Error::Validation(format!(
                "mode beta must be > 0, got {}",
                self.beta
            )));
        }
        if !self.field.is_finite() {
            return Err(Error::Validation("mode field contains non-finite values".into()));
        }
        Ok(())
    }
}

/// LP01 characteristic function G(u) = u J1(u)/J0(u) - w K1(w)/K0(w) with
/// w = sqrt(V² - u²). Positive slope through the fundamental root.
fn characteristic_u(u: f64, v: f64) -> f64 {
    let w2 = v * v - u * u;
    let lhs = u * j1(u) / j0(u);
    if w2 <= 0.0 {
        return lhs;
    }
    let w = w2.sqrt();
    lhs - w * k1(w) / k0(w)
}

/// Characteristic-equation residual at a candidate effective index.
pub fn characteristic_residual(geom: &WaveguideGeometry, wavelength: f64, n_eff: f64) -> f64 {
    let k0v = 2.0 * PI / wavelength;
    let v = geom.v_number(wavelength);
    let u = k0v * geom.core_radius * (geom.core_index.powi(2) - n_eff.powi(2)).max(0.0).sqrt();
    characteristic_u(u, v)
}

/// Effective index of the fundamental LP01 mode.
///
/// Fails with [`Error::NoGuidedMode`] when the characteristic equation has no
/// root in `(clad_index, core_index)` — in particular for zero index
/// contrast.
pub fn solve_neff(geom: &WaveguideGeometry, wavelength: f64) -> Result<f64> {
    geom.validate()?;
    if !(wavelength > 0.0) {
        return Err(Error::Validation(format!(
            "wavelength must be > 0, got {wavelength}"
        )));
    }
    let v = geom.v_number(wavelength);
    if !(v > 0.0) {
        return Err(Error::NoGuidedMode(format!("V-number {v} is not positive")));
    }
    let u_hi = v.min(J0_FIRST_ZERO);
    let eps = 1e-9 * u_hi;
    let f = |u: f64| characteristic_u(u, v);
    let (a, b) = roots::bracket_scan(&f, eps, u_hi - eps, 512).ok_or_else(|| {
        Error::NoGuidedMode(format!(
            "no sign change of the characteristic function for V = {v}"
        ))
    })?;
    let u = roots::bisect_secant(&f, a, b, 1e-14 * u_hi)?;
    let k0v = 2.0 * PI / wavelength;
    let n_eff = (geom.core_index.powi(2) - (u / (k0v * geom.core_radius)).powi(2)).sqrt();

    let residual = f(u).abs();
    if residual > 1e-10 {
        return Err(Error::RootNonConvergence(format!(
            "characteristic residual {residual:e} exceeds 1e-10"
        )));
    }
    debug_assert!(n_eff > geom.clad_index && n_eff < geom.core_index);
    Ok(n_eff)
}

/// Which effective-area convention to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AreaConvention {
    /// π a² — the plain core cross-section.
    Geometric,
    /// (∫|E|² dA)² / ∫|E|⁴ dA on the sampled profile.
    Integral,
}

/// Effective area of a mode profile under the chosen convention (m²).
pub fn effective_area(
    geom: &WaveguideGeometry,
    profile: &ModeProfile,
    convention: AreaConvention,
) -> Result<f64> {
    match convention {
        AreaConvention::Geometric => Ok(PI * geom.core_radius * geom.core_radius),
        AreaConvention::Integral => {
            let mut i2 = 0.0;
            let mut i4 = 0.0;
            for v in &profile.field.data {
                let e2: f64 = v.iter().map(|c| c.norm_sqr()).sum();
                i2 += e2;
                i4 += e2 * e2;
            }
            let da = profile.field.grid.cell_area();
            i2 *= da;
            i4 *= da;
            if i4 <= 0.0 || i2 <= 0.0 {
                return Err(Error::ZeroField("effective area of a zero field".into()));
            }
            Ok(i2 * i2 / i4)
        }
    }
}

/// Sample the fundamental LP01 mode on `grid`, x-polarized, normalized to
/// unit power flux: `(1/2) eps0 c n_eff ∫|E|² dA = 1 W`.
pub fn sample_profile(
    geom: &WaveguideGeometry,
    wavelength: f64,
    grid: Grid2,
) -> Result<ModeProfile> {
    let n_eff = solve_neff(geom, wavelength)?;
    let k0v = 2.0 * PI / wavelength;
    let a = geom.core_radius;
    let u = k0v * a * (geom.core_index.powi(2) - n_eff.powi(2)).sqrt();
    let w = k0v * a * (n_eff.powi(2) - geom.clad_index.powi(2)).sqrt();
    let j0u = j0(u);
    let k0w = k0(w);

    let mut field = VectorField2::from_fn(grid, |x, y| {
        let r = (x * x + y * y).sqrt();
        let amp = if r <= a {
            j0(u * r / a) / j0u
        } else {
            k0(w * r / a) / k0w
        };
        [
            Complex64::new(amp, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]
    });

    let power = 0.5 * EPS_0 * C_LIGHT * n_eff * field.norm_sq_integral();
    if !(power > 0.0) {
        return Err(Error::ZeroField("sampled mode has zero power".into()));
    }
    field = field.scaled(Complex64::new((1.0 / power).sqrt(), 0.0));

    let profile = ModeProfile {
        field,
        beta: n_eff * k0v,
        omega: 2.0 * PI * C_LIGHT / wavelength,
        kind: ModeKind::Optical,
    };
    profile.validate()?;
    Ok(profile)
}

/// Surface-localized acoustic ansatz for the SAW mode: radial displacement
/// `exp(-|a - r|/delta)`, peaked at the core surface with unit amplitude and
/// continuous across it. This is a prescribed profile, not an elastodynamic
/// eigensolve; `decay_length` is a model parameter.
pub fn saw_profile(
    base_radius: f64,
    decay_length: f64,
    omega_ac: f64,
    v_s: f64,
    grid: Grid2,
) -> Result<ModeProfile> {
    if !(base_radius > 0.0) || !(decay_length > 0.0) || !(omega_ac > 0.0) || !(v_s > 0.0) {
        return Err(Error::Validation(
            "saw_profile requires positive radius, decay length, frequency and velocity".into(),
        ));
    }
    let field = VectorField2::from_fn(grid, |x, y| {
        let r = (x * x + y * y).sqrt();
        if r > 0.0 {
            let amp = (-(base_radius - r).abs() / decay_length).exp();
            [
                Complex64::new(amp * x / r, 0.0),
                Complex64::new(amp * y / r, 0.0),
                Complex64::new(0.0, 0.0),
            ]
        } else {
            [Complex64::new(0.0, 0.0); 3]
        }
    });
    Ok(ModeProfile {
        field,
        beta: omega_ac / v_s,
        omega: omega_ac,
        kind: ModeKind::Acoustic,
    })
}

/// Write a profile as CSV: `x,y` then Re/Im of each component.
pub fn export_profile_csv<W: Write>(profile: &ModeProfile, out: &mut W) -> Result<()> {
    writeln!(out, "x,y,re_fx,im_fx,re_fy,im_fy,re_fz,im_fz")?;
    let g = profile.field.grid;
    for iy in 0..g.n {
        for ix in 0..g.n {
            let v = profile.field.at(ix, iy);
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                g.coord(ix),
                g.coord(iy),
                v[0].re,
                v[0].im,
                v[1].re,
                v[1].im,
                v[2].re,
                v[2].im
            )?;
        }
    }
    Ok(())
}
