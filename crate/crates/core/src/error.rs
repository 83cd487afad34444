//! Crate-wide error type and CLI exit-code mapping.

use thiserror::Error;

/// All failure modes of the simulation chain.
#[derive(Debug, Error)]
pub enum Error {
    /// A physical or structural invariant was violated (bad input).
    #[error("validation error: {0}")]
    Validation(String),

    /// Configuration / scenario file could not be parsed.
    #[error("parse error in {path}: {detail}")]
    Parse { path: String, detail: String },

    /// The characteristic equation has no root in the guided-mode bracket.
    #[error("no guided mode: {0}")]
    NoGuidedMode(String),

    /// Two fields were combined that live on different sample lattices.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A field with zero norm was passed where a normalizable field is required.
    #[error("zero field: {0}")]
    ZeroField(String),

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature did not converge: requested {requested:e}, achieved {achieved:e}")]
    QuadratureNonConvergence { requested: f64, achieved: f64 },

    /// Root refinement failed to converge.
    #[error("root refinement did not converge: {0}")]
    RootNonConvergence(String),

    /// Step-halving check detected a step size too coarse for the requested accuracy.
    #[error("step size too coarse: halving changed result by {change:e} (limit {limit:e})")]
    StepSize { change: f64, limit: f64 },

    /// Explicit time stepping violated the CFL stability bound.
    #[error("CFL violation: dt = {dt:e} exceeds limit {limit:e}")]
    Cfl { dt: f64, limit: f64 },

    /// A driven system grew without a source; the integration is unstable.
    #[error("instability detected: {0}")]
    Instability(String),

    /// Requested output format is not supported.
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// CLI exit code: 1 validation, 2 numerical non-convergence, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_)
            | Error::Parse { .. }
            | Error::NoGuidedMode(_)
            | Error::GridMismatch(_)
            | Error::ZeroField(_)
            | Error::UnsupportedFormat(_) => 1,
            Error::QuadratureNonConvergence { .. }
            | Error::RootNonConvergence(_)
            | Error::StepSize { .. }
            | Error::Cfl { .. }
            | Error::Instability(_) => 2,
            Error::Io(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
