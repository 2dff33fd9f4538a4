use thiserror::Error;

pub type Result<T> = std::result::Result<T, SplineError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SplineError {
    #[error("invalid grid: node count {0} must be odd and at least 3")]
    InvalidGrid(i64),

    #[error("invalid grid indicator {0}: expected 0 or 1")]
    InvalidIndicator(u8),

    #[error("frequency must be a positive integer, got {0}")]
    InvalidFrequency(u64),

    #[error("convergence factor parameter alpha must be positive and finite, got {0}")]
    InvalidAlpha(f64),

    #[error("harmonic index j={j} out of range 1..={max}")]
    IndexOutOfRange { j: usize, max: usize },

    #[error("node index k={k} out of range 1..={n}")]
    NodeOutOfRange { k: usize, n: usize },

    #[error("denominator h_{j} is numerically singular (|h|={value:e}, largest summand {scale:e})")]
    NearSingularDenominator { j: usize, value: f64, scale: f64 },

    #[error("m-series truncation did not reach tolerance {tol:e} within {terms} terms (achieved bound {achieved:e})")]
    TruncationNotConverged { tol: f64, achieved: f64, terms: usize },

    #[error("derivative order {q} not available for degree r={r} (need q <= r - 1)")]
    DerivativeOrderTooHigh { q: u32, r: u32 },

    #[error("closed-form zeta truncation is only available for the power sign-constant factor")]
    ZetaModeUnsupported,

    #[error("expected {expected} samples, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("quadrature resolution {0} too small")]
    InvalidResolution(usize),

    #[error("variation via the derivative needs r >= 2 (got r={0}); use the partition route")]
    UseDPartitionVariation(u32),

    #[error("arc length needs r >= 2 (got r={0})")]
    UnsupportedForDegree(u32),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl SplineError {
    /// Numeric failures as opposed to malformed input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            SplineError::NearSingularDenominator { .. } | SplineError::TruncationNotConverged { .. }
        )
    }
}
