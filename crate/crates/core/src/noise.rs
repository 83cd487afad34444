//! Thermal phonon occupation and amplified spontaneous Brillouin scattering
//! spectra.
//!
//! The scattered power per unit frequency at offset δ from line center is
//!
//! ```text
//! P(ν,z) = (hν/A_e) · Γ²/(δ²+Γ²) · g_B (N+1) · G(ν,z) · ∫_z^L P_p(z')/G(ν,z') dz'
//! G(ν,z) = exp[ ∫_z^L ( (P_p/A_e) · Γ²/(δ²+Γ²) · g_B - α ) dz' ]
//! ```
//!
//! with N ≈ kT/(hν_B) thermal phonons. Γ is the Lorentzian half-width in Hz
//! of detuning (half the Brillouin FWHM linewidth), so δ = Γ sits at half
//! maximum of the line factor. The quantum hν uses the optical carrier
//! frequency. All integrals run by adaptive quadrature over the supplied
//! pump profile.

use crate::constants::{BOLTZMANN, PLANCK};
use crate::error::{Error, Result};
use crate::numerics::quad;
use std::io::Write;

/// Inputs for the spontaneous-scattering integrals. The pump profile is an
/// arbitrary function z → W.
pub struct NoiseSpec<F: Fn(f64) -> f64> {
    /// Bath temperature (K).
    pub temperature: f64,
    /// Brillouin shift ν_B (Hz) for the phonon occupation.
    pub nu_b: f64,
    /// Acoustic phonon decay rate Γ (1/s); Lorentzian half-width in Hz.
    pub gamma_ph: f64,
    /// Base detuning of the evaluated signal from line center (Hz); the
    /// per-call `nu_offset` is added to this.
    pub detuning_delta: f64,
    /// Effective core area (m²).
    pub a_eff: f64,
    /// Optical power attenuation (1/m).
    pub alpha_opt: f64,
    /// Waveguide length (m).
    pub length: f64,
    /// Optical carrier frequency (Hz) for the hν photon energy.
    pub nu_optical: f64,
    /// Pump power along the guide (z → W).
    pub pump_profile: F,
}

impl<F: Fn(f64) -> f64> NoiseSpec<F> {
    pub fn validate(&self) -> Result<()> {
        if self.temperature < 0.0 {
            return Err(Error::Validation(format!(
                "temperature must be >= 0, got {}",
                self.temperature
            )));
        }
        for (name, v) in [
            ("nu_b", self.nu_b),
            ("gamma_ph", self.gamma_ph),
            ("a_eff", self.a_eff),
            ("length", self.length),
            ("nu_optical", self.nu_optical),
        ] {
            if !(v > 0.0) {
                return Err(Error::Validation(format!("{name} must be > 0, got {v}")));
            }
        }
        if self.alpha_opt < 0.0 {
            return Err(Error::Validation("alpha_opt must be >= 0".into()));
        }
        Ok(())
    }
}

/// Thermal phonon occupation N ≈ kT/(hν_B). Zero at T = 0; linear in T and
/// inverse in ν_B.
pub fn thermal_phonons(temperature: f64, nu_b: f64) -> f64 {
    BOLTZMANN * temperature / (PLANCK * nu_b)
}

/// The kT/hν approximation degrades once hν_B/kT grows; returns a warning
/// string when hν_B/kT > 0.5 (including T = 0).
pub fn rayleigh_jeans_warning(temperature: f64, nu_b: f64) -> Option<String> {
    let ratio = PLANCK * nu_b / (BOLTZMANN * temperature);
    if !(ratio <= 0.5) {
        Some(format!(
            "thermal phonon estimate kT/h\u{3bd} is outside its validity range: h\u{3bd}_B/kT = {ratio:.3} > 0.5"
        ))
    } else {
        None
    }
}

fn line_factor(gamma: f64, delta: f64) -> f64 {
    gamma * gamma / (delta * delta + gamma * gamma)
}

/// Net gain exponent G(ν,z) between z and the output end L.
///
/// Equals 1 exactly at z = L. Errors propagate quadrature non-convergence
/// with the achieved tolerance.
pub fn gain_exponent<F: Fn(f64) -> f64>(
    spec: &NoiseSpec<F>,
    g_b: f64,
    nu_offset: f64,
    z: f64,
) -> Result<f64> {
    spec.validate()?;
    if !(0.0..=spec.length).contains(&z) {
        return Err(Error::Validation(format!(
            "z = {z} outside [0, {}]",
            spec.length
        )));
    }
    let delta = spec.detuning_delta + nu_offset;
    let lf = line_factor(spec.gamma_ph, delta);
    let integrand =
        |zp: f64| (spec.pump_profile)(zp) / spec.a_eff * lf * g_b - spec.alpha_opt;
    let integral = quad::adaptive(&integrand, z, spec.length, 1e-12, 1e-14, 4096)?.value;
    Ok(integral.exp())
}

/// Amplified spontaneous scattered power per unit frequency (W/Hz) at
/// detuning offset `nu_offset` observed at position z.
pub fn spontaneous_power_density<F: Fn(f64) -> f64>(
    spec: &NoiseSpec<F>,
    g_b: f64,
    nu_offset: f64,
    z: f64,
) -> Result<f64> {
    spec.validate()?;
    let delta = spec.detuning_delta + nu_offset;
    let lf = line_factor(spec.gamma_ph, delta);
    let n_ph = thermal_phonons(spec.temperature, spec.nu_b);
    let g_here = gain_exponent(spec, g_b, nu_offset, z)?;

    let integrand = |zp: f64| -> f64 {
        let g = gain_exponent(spec, g_b, nu_offset, zp)
            .expect("inner gain integral converges when the outer one does");
        (spec.pump_profile)(zp) / g
    };
    let source = quad::adaptive(&integrand, z, spec.length, 1e-10, 1e-20, 2048)?.value;

    Ok(PLANCK * spec.nu_optical / spec.a_eff * lf * g_b * (n_ph + 1.0) * g_here * source)
}

/// One sampled point of a noise spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    /// Detuning offset from line center (Hz).
    pub nu_offset: f64,
    /// Spontaneous power density (W/Hz).
    pub power_density: f64,
    /// Gain exponent G(ν,z).
    pub gain: f64,
}

/// Sample the spontaneous spectrum at `points` offsets spanning
/// ±`span_linewidths`·Γ around line center, observed at position z.
pub fn spectrum<F: Fn(f64) -> f64>(
    spec: &NoiseSpec<F>,
    g_b: f64,
    z: f64,
    points: usize,
    span_linewidths: f64,
) -> Result<Vec<SpectrumPoint>> {
    if points < 2 {
        return Err(Error::Validation("spectrum needs at least 2 points".into()));
    }
    let half = span_linewidths * spec.gamma_ph;
    let mut out = Vec::with_capacity(points);
    for i in 0..points {
        let nu = -half + 2.0 * half * i as f64 / (points - 1) as f64;
        out.push(SpectrumPoint {
            nu_offset: nu,
            power_density: spontaneous_power_density(spec, g_b, nu, z)?,
            gain: gain_exponent(spec, g_b, nu, z)?,
        });
    }
    Ok(out)
}

/// Write a spectrum as CSV: offset (Hz), power density (W/Hz), gain.
pub fn export_spectrum_csv<W: Write>(points: &[SpectrumPoint], out: &mut W) -> Result<()> {
    writeln!(out, "nu_offset_hz,power_w_per_hz,gain")?;
    for p in points {
        writeln!(out, "{},{},{}", p.nu_offset, p.power_density, p.gain)?;
    }
    Ok(())
}
