//! Truncated Taylor estimator and its expected truncation-error curve.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::{ExpansionEstimate, ExpansionMethod};
use crate::special::digamma;
use crate::trace::MomentObservations;

/// Truncated Taylor estimate of `logdet K = tr log(I - A)` from moment
/// observations of `A`:
///
/// `value = -n sum_{k=1}^m y_k / k`
///
/// `correction` is the normalization correction added onto the de-normalized
/// value; pass 0 when the moments came from an already-normalized matrix.
pub fn taylor_logdet(
    obs: &MomentObservations,
    dim: usize,
    correction: f64,
) -> ExpansionEstimate {
    let n = dim as f64;
    let value = -n
        * obs
            .values
            .iter()
            .enumerate()
            .map(|(i, y)| y / (i + 1) as f64)
            .sum::<f64>();
    // Orders are correlated through shared probes; treating them as
    // independent gives a serviceable error scale.
    let stderr = n * obs
        .noise
        .iter()
        .enumerate()
        .map(|(i, s2)| s2 / (((i + 1) * (i + 1)) as f64))
        .sum::<f64>()
        .sqrt();
    ExpansionEstimate {
        method: ExpansionMethod::Taylor,
        order: obs.order,
        probes_used: obs.probes,
        value,
        denormalized_value: value + correction,
        stderr,
    }
}

/// Expected absolute truncation error of the order-`m` Taylor series on a
/// kernel matrix whose eigenvalue decay has smoothness exponent `nu`,
/// up to the order constant:
///
/// `(psi(m + nu + 1.5) - psi(m)) / (nu + 1.5)`
///
/// Decreasing in `m` and asymptotically `1/m`, so it halves when the order
/// doubles.
pub fn expected_taylor_error(order: usize, nu: f64) -> f64 {
    debug_assert!(order >= 1, "expected_taylor_error requires order >= 1");
    debug_assert!(nu >= 0.0, "smoothness must be non-negative");
    let m = order as f64;
    (digamma(m + nu + 1.5) - digamma(m)) / (nu + 1.5)
}
