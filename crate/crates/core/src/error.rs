use thiserror::Error;

use crate::bounds::BoundsReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("dimension too large: {0}")]
    DimensionTooLarge(String),

    #[error("not a probability distribution: {0}")]
    NotADistribution(String),

    #[error("not a density matrix: {0}")]
    NotADensityMatrix(String),

    #[error("not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("sigma entries are not translation invariant (deviation {deviation:e} at t={t})")]
    TranslationInvarianceViolated { t: usize, deviation: f64 },

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("unsupported attack combination: {0}")]
    UnsupportedCombination(String),

    #[error("information-disturbance inequality violated (slack_main={:e}, slack_measured={:e}, spectrum_deviation={:e})", .0.slack_main, .0.slack_measured, .0.spectrum_deviation)]
    TheoremViolation(Box<BoundsReport>),
}
