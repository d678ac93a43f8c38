use alloc::string::String;

/// Errors reported by the estimators in this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A vector length does not match the operator dimension.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// An expansion order or probe count below the minimum of one.
    #[error("invalid order: {order} (must be >= 1)")]
    InvalidOrder { order: usize },

    /// Dense input is not symmetric within tolerance.
    #[error("input matrix is not symmetric at ({row}, {col})")]
    AsymmetricInput { row: usize, col: usize },

    /// Lanczos iteration started from an all-zero vector.
    #[error("Lanczos start vector is zero")]
    ZeroStartVector,

    /// Normalization scale (Gershgorin upper bound or user override) is not
    /// strictly positive, so the matrix cannot be PSD.
    #[error("normalization scale {scale} is not positive; matrix is not PSD")]
    NonPositiveScale { scale: f64 },

    /// The spectral summary statistics are outside (0, 1), so no Beta prior
    /// can be fitted.
    #[error("degenerate spectrum: normalized spectral mean {mean} outside (0, 1)")]
    DegenerateSpectrum { mean: f64 },

    /// Analytic log-determinant bounds need a strictly positive lower
    /// spectral bound.
    #[error("log-determinant bounds unavailable: spectral lower bound {lower} <= 0")]
    BoundsUnavailable { lower: f64 },

    /// The Gram matrix stayed singular through the whole jitter escalation.
    #[error("Gram matrix singular even with jitter {max_jitter}")]
    SingularGram { max_jitter: f64 },

    /// A Ritz value came out non-positive, so `log` cannot be applied; the
    /// operator is indefinite or severely ill-conditioned.
    #[error("non-positive Ritz value {value}; operator is indefinite or ill-conditioned")]
    NonPositiveRitzValue { value: f64 },

    /// A Chebyshev node mapped to a non-positive argument of `log`.
    #[error("diverging Chebyshev coefficient: log evaluated at {node}")]
    DivergingCoefficient { node: f64 },

    /// An iterative kernel failed to converge.
    #[error("no convergence in {what}")]
    NoConvergence { what: &'static str },

    /// Inconsistent numerical inputs (e.g. spectral interval that does not
    /// contain the spectrum).
    #[error("numerical failure: {0}")]
    Numeric(String),
}
