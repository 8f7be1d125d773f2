use thiserror::Error;

use crate::spectra::SubsystemKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{field} must be positive")]
    NonPositiveParameter { field: &'static str },

    #[error("{field} must be finite")]
    NonFiniteParameter { field: &'static str },

    #[error("reduced electron rest energy {value} eV is outside (0, {electron} eV)")]
    ReducedMassOutOfRange { value: f64, electron: f64 },

    #[error("{what} must be >= 1 (got {value})")]
    QuantumNumber { what: &'static str, value: u32 },

    #[error("{what} must be non-negative (got {value})")]
    NegativeLength { what: &'static str, value: f64 },

    #[error("electron level n = {0} has no explicit radial function (supported: 1, 2, 3)")]
    UnsupportedLevel(u32),

    #[error("{0}")]
    OutOfRange(String),

    #[error("quadrature did not converge after {panels} panels (estimate {estimate:e}, rel tol {rel_tol:e})")]
    Convergence { panels: usize, estimate: f64, rel_tol: f64 },

    #[error("{0}")]
    Construction(String),

    #[error("{kind} level {level} not present")]
    MissingLevel { kind: SubsystemKind, level: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
