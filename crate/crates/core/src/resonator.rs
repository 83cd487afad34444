//! Series RLC microwave resonator: resonance frequency, quality factor, and
//! the driven response with a time-varying inductance.
//!
//! The circuit equation is integrated in the flux-conserving form
//!
//! ```text
//! d(L(t) I)/dt + R I + q/C = ε(t),    dq/dt = I
//! ```
//!
//! with state (q, p = L·I), which keeps the energy bookkeeping of parametric
//! inductance modulation consistent:
//! dE/dt = εI - RI² - (I²/2) dL/dt with E = q²/2C + p²/2L.

use crate::error::{Error, Result};
use crate::numerics::ode::rk4_step;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::Write;

/// Series RLC parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RlcSpec {
    /// Capacitance (F).
    pub capacitance: f64,
    /// Series resistance (Ω).
    pub resistance: f64,
    /// Static inductance (H); a time series may override it in
    /// [`driven_response`].
    pub inductance_static: f64,
}

impl RlcSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.capacitance > 0.0) || !(self.inductance_static > 0.0) || self.resistance < 0.0
        {
            return Err(Error::Validation(format!(
                "RLC requires C > 0, L > 0, R >= 0; got {self:?}"
            )));
        }
        Ok(())
    }

    /// Series quality factor Q = (1/R)·sqrt(L/C).
    pub fn quality_factor(&self) -> f64 {
        (self.inductance_static / self.capacitance).sqrt() / self.resistance
    }

    /// Resistance that yields the requested Q at the static L and C.
    pub fn resistance_for_q(l: f64, c: f64, q: f64) -> f64 {
        (l / c).sqrt() / q
    }
}

/// Resonance frequency f_r = 1/(2π sqrt(LC)) (Hz).
pub fn resonance_frequency(l: f64, c: f64) -> f64 {
    1.0 / (2.0 * PI * (l * c).sqrt())
}

/// Trajectory of the driven circuit, sampled at the input rate.
#[derive(Debug, Clone, PartialEq)]
pub struct DrivenResponse {
    pub dt: f64,
    pub charge: Vec<f64>,
    pub current: Vec<f64>,
}

/// Energy bookkeeping over a sample window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyAudit {
    /// ∫ ε I dt — work done by the source.
    pub source_work: f64,
    /// ∫ R I² dt — dissipated in the resistor.
    pub dissipated: f64,
    /// ∫ (I²/2) dL/dt dt — energy handed to the inductance modulator.
    pub parametric_work: f64,
    pub stored_initial: f64,
    pub stored_final: f64,
}

impl EnergyAudit {
    /// source work - dissipated - parametric - Δstored; zero for an exact
    /// trajectory.
    pub fn residual(&self) -> f64 {
        self.source_work - self.dissipated - self.parametric_work
            - (self.stored_final - self.stored_initial)
    }

    /// Normalization for the residual: the largest energy moved in the
    /// window.
    pub fn scale(&self) -> f64 {
        self.source_work
            .abs()
            .max(self.dissipated.abs())
            .max(self.stored_final.max(self.stored_initial))
            .max(1e-300)
    }
}

/// Integrate the driven series RLC with a time-varying inductance.
///
/// `emf` and `inductance` are uniform time series at spacing `dt`; the
/// response is sampled at the same instants (RK4 interior points use linear
/// interpolation). Starts from zero charge and current; see
/// [`driven_response_with_initial`].
pub fn driven_response(
    spec: &RlcSpec,
    emf: &[f64],
    inductance: &[f64],
    dt: f64,
) -> Result<DrivenResponse> {
    driven_response_with_initial(spec, emf, inductance, dt, 0.0, 0.0)
}

/// [`driven_response`] with initial charge (C) and current (A).
pub fn driven_response_with_initial(
    spec: &RlcSpec,
    emf: &[f64],
    inductance: &[f64],
    dt: f64,
    q0: f64,
    i0: f64,
) -> Result<DrivenResponse> {
    spec.validate()?;
    if emf.len() != inductance.len() || emf.len() < 2 {
        return Err(Error::Validation(
            "emf and inductance series must have equal length >= 2".into(),
        ));
    }
    if !(dt > 0.0) {
        return Err(Error::Validation(format!("dt must be > 0, got {dt}")));
    }
    let l_min = inductance.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(l_min > 0.0) {
        return Err(Error::Validation(
            "inductance series must stay positive".into(),
        ));
    }
    let f_max = resonance_frequency(l_min, spec.capacitance);
    let limit = 0.05 / f_max;
    if dt >= limit {
        return Err(Error::Cfl { dt, limit });
    }

    let steps = emf.len() - 1;
    let lerp = |series: &[f64], t: f64| -> f64 {
        let s = (t / dt).clamp(0.0, steps as f64);
        let k = (s.floor() as usize).min(steps - 1);
        let frac = s - k as f64;
        series[k] * (1.0 - frac) + series[k + 1] * frac
    };

    let r = spec.resistance;
    let inv_c = 1.0 / spec.capacitance;
    let mut charge = Vec::with_capacity(emf.len());
    let mut current = Vec::with_capacity(emf.len());
    let mut y = [q0, inductance[0] * i0];
    charge.push(y[0]);
    current.push(i0);

    let emf_owned = emf.to_vec();
    let l_owned = inductance.to_vec();
    let rhs = move |t: f64, y: [f64; 2]| -> [f64; 2] {
        let l = lerp(&l_owned, t);
        let i = y[1] / l;
        [i, lerp(&emf_owned, t) - r * i - y[0] * inv_c]
    };

    for k in 0..steps {
        y = rk4_step(y, k as f64 * dt, dt, &rhs);
        charge.push(y[0]);
        current.push(y[1] / inductance[k + 1]);
    }

    let resp = DrivenResponse {
        dt,
        charge,
        current,
    };

    // a passive circuit driven by nothing must not gain energy
    if r > 0.0 && emf.iter().all(|&e| e == 0.0) {
        let e0 = stored_energy(spec, &resp, inductance, 0);
        let mut prev = e0;
        for k in 1..resp.charge.len() {
            let e = stored_energy(spec, &resp, inductance, k);
            if e > prev * (1.0 + 1e-9) + 1e-300 {
                return Err(Error::Instability(format!(
                    "stored energy grew from {prev} to {e} with zero drive"
                )));
            }
            prev = e;
        }
    }
    Ok(resp)
}

fn stored_energy(spec: &RlcSpec, resp: &DrivenResponse, l: &[f64], k: usize) -> f64 {
    let q = resp.charge[k];
    let i = resp.current[k];
    q * q / (2.0 * spec.capacitance) + 0.5 * l[k] * i * i
}

/// Trapezoid energy audit over the sample window [k0, k1].
pub fn energy_audit(
    spec: &RlcSpec,
    resp: &DrivenResponse,
    emf: &[f64],
    inductance: &[f64],
    k0: usize,
    k1: usize,
) -> Result<EnergyAudit> {
    if k1 <= k0 || k1 >= resp.charge.len() {
        return Err(Error::Validation(format!(
            "bad audit window [{k0}, {k1}]"
        )));
    }
    let dt = resp.dt;
    let mut source = 0.0;
    let mut diss = 0.0;
    let mut par = 0.0;
    for k in k0..k1 {
        let i_a = resp.current[k];
        let i_b = resp.current[k + 1];
        source += 0.5 * (emf[k] * i_a + emf[k + 1] * i_b) * dt;
        diss += 0.5 * spec.resistance * (i_a * i_a + i_b * i_b) * dt;
        // (I²/2) dL across the step with midpoint I²; exactly zero for a
        // constant series
        let dl = inductance[k + 1] - inductance[k];
        par += 0.25 * (i_a * i_a + i_b * i_b) * dl;
    }
    Ok(EnergyAudit {
        source_work: source,
        dissipated: diss,
        parametric_work: par,
        stored_initial: stored_energy(spec, resp, inductance, k0),
        stored_final: stored_energy(spec, resp, inductance, k1),
    })
}

/// Magnitude of one frequency component (Goertzel-style single-bin DFT,
/// normalized to amplitude).
pub fn tone_magnitude(signal: &[f64], dt: f64, freq: f64) -> f64 {
    let n = signal.len();
    let mut re = 0.0;
    let mut im = 0.0;
    for (k, &v) in signal.iter().enumerate() {
        let phase = 2.0 * PI * freq * (k as f64) * dt;
        re += v * phase.cos();
        im += v * phase.sin();
    }
    2.0 * (re * re + im * im).sqrt() / n as f64
}

/// Write the response as CSV: t, charge, current.
pub fn export_response_csv<W: Write>(resp: &DrivenResponse, out: &mut W) -> Result<()> {
    writeln!(out, "t,charge_c,current_a")?;
    for k in 0..resp.charge.len() {
        writeln!(
            out,
            "{},{},{}",
            k as f64 * resp.dt,
            resp.charge[k],
            resp.current[k]
        )?;
    }
    Ok(())
}
