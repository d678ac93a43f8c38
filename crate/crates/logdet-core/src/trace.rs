//! Stochastic trace estimation and recursive moment estimation.
//!
//! The Gaussian estimator averages quadratic forms `r^T A r` over probe
//! vectors with `E[r r^T] = I`. Powers of the operator reuse the same probes:
//! propagating `z_k = A z_{k-1}` gives every `r^T A^k r` for `k <= m` at a
//! total cost of `m` products per probe.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use alloc::vec::Vec;

use crate::operator::SymmetricOperator;
use crate::probes::ProbeSet;
use crate::{Error, Result};

/// Per-order estimates of `tr(A^k) / n` with their squared standard errors.
///
/// `values[k-1]` estimates the k-th raw moment of the eigenvalue distribution
/// of `A` (spectrum assumed in `[0, 1]`); `noise[k-1]` is the squared
/// standard error of that mean, heteroscedastic across orders.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentObservations {
    pub order: usize,
    pub values: Vec<f64>,
    pub noise: Vec<f64>,
    /// Number of probes averaged.
    pub probes: usize,
    /// Matrix-vector products consumed: `order * probes`.
    pub probe_budget: u64,
}

impl MomentObservations {
    /// Noise-free observations, e.g. moments computed from a known spectrum.
    pub fn exact(values: Vec<f64>) -> Self {
        let order = values.len();
        Self {
            order,
            noise: alloc::vec![0.0; order],
            values,
            probes: 0,
            probe_budget: 0,
        }
    }

    /// Same values with every squared standard error replaced by `noise`.
    pub fn with_uniform_noise(mut self, noise: f64) -> Self {
        for s in &mut self.noise {
            *s = noise;
        }
        self
    }
}

fn check_dims(op: &impl SymmetricOperator, probes: &ProbeSet) -> Result<()> {
    if probes.dim() != op.dim() {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            found: probes.dim(),
        });
    }
    Ok(())
}

/// Mean and standard error over a slice of per-probe samples. The reduction
/// runs in probe order so results do not depend on how samples were produced.
fn mean_and_stderr(samples: &[f64]) -> (f64, f64) {
    let n = samples.len();
    let mean = samples.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Unbiased stochastic estimate of `tr(A)`.
///
/// Returns the probe average of `r^T A r` and its standard error. Costs one
/// matrix-vector product per probe.
pub fn estimate_trace(
    op: &impl SymmetricOperator,
    probes: &ProbeSet,
) -> Result<(f64, f64)> {
    check_dims(op, probes)?;
    if probes.count() == 0 {
        return Err(Error::InvalidOrder { order: 0 });
    }
    let samples: Vec<f64> = map_probes(probes, |r| {
        let y = op.apply(r);
        dot(r, &y)
    });
    Ok(mean_and_stderr(&samples))
}

/// Stochastic estimates of the normalized moments `tr(A^k) / n` for
/// `k = 1..=order`, all orders sharing one probe set.
///
/// Consumes exactly `order * probes.count()` matrix-vector products. The
/// spectrum of `A` is expected to lie in `[0, 1]` (see
/// [`NormalizedOperator::complement`](crate::NormalizedOperator::complement)).
pub fn estimate_power_moments(
    op: &impl SymmetricOperator,
    order: usize,
    probes: &ProbeSet,
) -> Result<MomentObservations> {
    if order < 1 {
        return Err(Error::InvalidOrder { order });
    }
    check_dims(op, probes)?;
    if probes.count() == 0 {
        return Err(Error::InvalidOrder { order: 0 });
    }
    let n = op.dim();

    // One quadratic-form chain per probe; probe-major so the reduction below
    // is a fixed-order walk no matter how the chains were scheduled.
    let chains: Vec<Vec<f64>> = map_probes(probes, |r| {
        let mut z = r.to_vec();
        let mut buf = alloc::vec![0.0; n];
        let mut forms = Vec::with_capacity(order);
        for _ in 0..order {
            op.apply_into(&z, &mut buf);
            core::mem::swap(&mut z, &mut buf);
            forms.push(dot(r, &z));
        }
        forms
    });

    let nf = n as f64;
    let count = probes.count();
    let mut values = Vec::with_capacity(order);
    let mut noise = Vec::with_capacity(order);
    let mut samples = alloc::vec![0.0; count];
    for k in 0..order {
        for (s, chain) in samples.iter_mut().zip(&chains) {
            *s = chain[k];
        }
        let (mean, stderr) = mean_and_stderr(&samples);
        values.push(mean / nf);
        noise.push((stderr / nf) * (stderr / nf));
    }

    Ok(MomentObservations {
        order,
        values,
        noise,
        probes: count,
        probe_budget: (order * count) as u64,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(feature = "rayon")]
fn map_probes<T: Send>(probes: &ProbeSet, f: impl Fn(&[f64]) -> T + Sync) -> Vec<T> {
    use rayon::prelude::*;
    // Indexed parallel map: results come back in probe order.
    (0..probes.count())
        .into_par_iter()
        .map(|i| f(probes.probe(i)))
        .collect()
}

#[cfg(not(feature = "rayon"))]
fn map_probes<T>(probes: &ProbeSet, f: impl Fn(&[f64]) -> T) -> Vec<T> {
    probes.iter().map(f).collect()
}
