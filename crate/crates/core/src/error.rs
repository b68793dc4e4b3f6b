use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building models, diagonalizing,
/// assembling thermal states, or running sweeps.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian: max |A - A'| = {asymmetry:.3e} exceeds {tol:.0e}")]
    NotHermitian { asymmetry: f64, tol: f64 },

    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    #[error("exponent {exponent:.6e} exceeds the safe bound {limit}; rescale the input (e.g. raise the temperature)")]
    ExponentOverflow { exponent: f64, limit: f64 },

    #[error("temperature {temp:e} is below the supported floor {floor:e}")]
    TemperatureTooLow { temp: f64, floor: f64 },

    #[error("trace {trace} deviates from 1 by more than {tol:.0e}")]
    TraceNotOne { trace: f64, tol: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {eigenvalue:.3e}")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    #[error("divergence radicand {value:.3e} is negative beyond tolerance")]
    NegativeRadicand { value: f64 },

    #[error("singular linear system while evaluating the matrix exponential")]
    SingularSystem,

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("config is not a {expected} config: {detail}")]
    WrongModel {
        expected: &'static str,
        detail: String,
    },

    #[error("the generic tag has no axis layout; build the config directly")]
    GenericNotNamed,

    #[error("unknown parameter '{got}'; valid identifiers: T, D, B, b, Jx, Jy, Jz")]
    UnknownParam { got: String },

    #[error(
        "unknown figure preset '{got}'; valid ids: 1a..1d, 2a..2d, 3a..3d, 4a..4d, 5a..5d, 6a..6i"
    )]
    UnknownPreset { got: String },

    #[error("unknown model '{got}'; valid models: dxbx, dzbz, dzbx, dxbz, dxby, generic")]
    UnknownModel { got: String },

    #[error("invalid sweep: {reason}")]
    InvalidSweep { reason: String },

    #[error("cannot sweep {param} on a generic config whose base {param} vector is zero (direction undefined)")]
    ZeroDirection { param: &'static str },

    #[error("writing {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("config file {path}: {reason}")]
    ConfigFile { path: String, reason: String },
}
