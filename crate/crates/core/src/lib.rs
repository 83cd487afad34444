//! Simulation of an optical-to-microwave transduction chain in a glass
//! microwire: guided-mode properties, stimulated Brillouin scattering,
//! surface-acoustic-wave modulation of a solenoid inductor, and the driven
//! response of an RLC microwave resonator.
//!
//! The crate is organized along the signal chain:
//!
//! - [`materials`] — typed material-parameter records and presets
//! - [`fibermode`] — analytic step-index mode solver (LP01), effective area,
//!   sampled mode profiles
//! - [`coupling`] — overlap and dissipation integrals on 2D cross-section grids
//! - [`brillouin`] — SBS gain, critical power, steady-state acoustic response,
//!   coupled-envelope solvers
//! - [`noise`] — thermal phonon occupation and amplified spontaneous
//!   scattering spectra
//! - [`inductor`] — solenoid magnetostatics with a SAW-modulated core
//! - [`resonator`] — RLC resonance and driven response with time-varying
//!   inductance
//! - [`pipeline`] — scenario engine, parameter sweeps, and report rendering
//!
//! All quantities are SI internally. Configuration files may declare units
//! per field from a fixed whitelist; see [`materials::unit_factor`].

pub mod constants;
pub mod error;
pub mod numerics;

pub mod brillouin;
pub mod coupling;
pub mod fibermode;
pub mod inductor;
pub mod materials;
pub mod noise;
pub mod pipeline;
pub mod resonator;

pub use error::{Error, Result};
