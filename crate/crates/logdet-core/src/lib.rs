//! Matrix-free estimation of `log det` for large symmetric positive
//! semi-definite matrices.
//!
//! The only access to the matrix this crate ever needs is matrix-vector
//! products, so every estimator works on a [`SymmetricOperator`] and its cost
//! is measured in matrix-vector products (MVPs). Three classical estimators
//! are provided as baselines, together with a Bayesian estimator that returns
//! a calibrated uncertainty alongside the point estimate:
//!
//! * truncated Taylor expansion of `tr log(I - A)` driven by stochastic
//!   trace estimates of `tr(A^k)` ([`taylor_logdet`]),
//! * Chebyshev interpolation of `log` evaluated through the three-term
//!   recurrence ([`chebyshev_logdet`]),
//! * stochastic Lanczos quadrature ([`slq_logdet`]),
//! * a Gaussian-process model over the eigenvalue distribution, conditioned
//!   on the same stochastic moment estimates and constrained by analytic
//!   bounds on the log-determinant ([`probabilistic_logdet`]).
//!
//! The typical flow mirrors [`probabilistic_logdet`]:
//!
//! 1. wrap or load the matrix as a [`LinearOperator`],
//! 2. [`normalize`] it so the spectrum lies in `[0, 1]` (Gershgorin scaling),
//! 3. draw a reproducible [`ProbeSet`] and estimate normalized moments with
//!    [`estimate_power_moments`],
//! 4. run an estimator and, if it was normalized, add back the
//!    recorded correction term.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the `std` feature is
//! on by default and the optional `rayon` feature parallelizes probe-level
//! work without changing any result bit-for-bit.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod error;
pub mod linalg;
pub mod special;

pub mod operator;
pub mod probes;
pub mod trace;

pub mod expansions;

pub mod bq;

pub use error::Error;

pub use operator::{
    gershgorin_interval, normalize, normalize_with_scale, IntervalSource, LinearOperator,
    NormalizedOperator, SpectralInterval, SymmetricOperator,
};
pub use probes::ProbeSet;
pub use trace::{estimate_power_moments, estimate_trace, MomentObservations};

pub use expansions::{
    chebyshev_logdet, expected_taylor_error, lanczos, slq_logdet, taylor_logdet,
    ExpansionEstimate, ExpansionMethod, Reorthogonalization, TridiagonalFactor,
};

pub use bq::{
    compute_bounds, fit_beta_prior, gp_posterior, probabilistic_logdet, truncate_posterior,
    tune_hyperparameters, BetaPrior, BoundsMode, BqConfig, EstimateFlags, KernelChoice,
    KernelFamily, LogDetBounds, LogDetEstimate, RawMomentKernel,
};

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
