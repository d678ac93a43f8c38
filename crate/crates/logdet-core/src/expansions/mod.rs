//! Classical log-determinant estimators: truncated Taylor series, Chebyshev
//! interpolation, and stochastic Lanczos quadrature.

mod chebyshev;
mod lanczos;
mod slq;
mod taylor;

pub use chebyshev::{chebyshev_interpolation_coefficients, chebyshev_logdet};
pub use lanczos::{lanczos, Reorthogonalization, TridiagonalFactor};
pub use slq::{slq_logdet, slq_sample};
pub use taylor::{expected_taylor_error, taylor_logdet};

/// Which expansion produced an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionMethod {
    Taylor,
    Chebyshev,
    Slq,
}

impl ExpansionMethod {
    pub fn name(&self) -> &'static str {
        match self {
            ExpansionMethod::Taylor => "taylor",
            ExpansionMethod::Chebyshev => "chebyshev",
            ExpansionMethod::Slq => "slq",
        }
    }
}

/// A point estimate of a log-determinant from one of the classical
/// expansions.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionEstimate {
    pub method: ExpansionMethod,
    /// Expansion order / degree / Lanczos steps.
    pub order: usize,
    /// Probe vectors consumed (0 when driven by exact moments).
    pub probes_used: usize,
    /// Estimate of `logdet` of the normalized matrix.
    pub value: f64,
    /// `value` plus the normalization correction `n ln c`.
    pub denormalized_value: f64,
    /// Standard error across probes of the per-probe samples (propagated
    /// observation noise for the Taylor sum).
    pub stderr: f64,
}
