//! Chebyshev estimator for `tr log K` on a normalized operator.
//!
//! The spectrum `[0, 1]` is mapped to `[-1, 1]` through `B = 2K - I` and
//! `log((t + 1) / 2)` is interpolated at the Chebyshev nodes of the first
//! kind. Traces of the Chebyshev polynomials `T_k(B)` are estimated
//! stochastically through the three-term recurrence, one matrix-vector
//! product per degree per probe.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{ExpansionEstimate, ExpansionMethod};
use crate::operator::{NormalizedOperator, SymmetricOperator};
use crate::probes::ProbeSet;
use crate::{Error, Result};

/// Coefficients of the degree-`m` Chebyshev interpolant of `f` on `[-1, 1]`:
///
/// `c_k = (2 - [k = 0]) / (m + 1) * sum_i f(t_i) T_k(t_i)`
///
/// with nodes `t_i = cos(pi (i + 1/2) / (m + 1))`.
pub fn chebyshev_interpolation_coefficients(
    degree: usize,
    f: impl Fn(f64) -> f64,
) -> Vec<f64> {
    let points = degree + 1;
    let values: Vec<f64> = (0..points)
        .map(|i| {
            let t = (PI * (i as f64 + 0.5) / points as f64).cos();
            f(t)
        })
        .collect();
    (0..points)
        .map(|k| {
            let sum: f64 = values
                .iter()
                .enumerate()
                .map(|(i, v)| v * (PI * k as f64 * (i as f64 + 0.5) / points as f64).cos())
                .sum();
            let norm = if k == 0 { 1.0 } else { 2.0 };
            norm * sum / points as f64
        })
        .collect()
}

/// Stochastic Chebyshev estimate of `logdet` of a normalized operator.
///
/// Fails with [`Error::DivergingCoefficient`] if an interpolation node maps
/// to a non-positive argument of `log` (only possible at extreme degrees).
/// Consumes exactly `degree * probes.count()` matrix-vector products.
pub fn chebyshev_logdet(
    knorm: &NormalizedOperator,
    degree: usize,
    probes: &ProbeSet,
) -> Result<ExpansionEstimate> {
    if degree < 1 {
        return Err(Error::InvalidOrder { order: degree });
    }
    let n = knorm.dim();
    if probes.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: probes.dim(),
        });
    }
    if probes.count() == 0 {
        return Err(Error::InvalidOrder { order: 0 });
    }

    // Nodes sit strictly inside (-1, 1), so lambda = (t + 1) / 2 stays
    // positive until floating point gives out; guard anyway.
    let mut bad_node = None;
    let coeffs = chebyshev_interpolation_coefficients(degree, |t| {
        let lambda = 0.5 * (t + 1.0);
        if lambda <= 0.0 {
            bad_node = Some(lambda);
            return 0.0;
        }
        lambda.ln()
    });
    if let Some(node) = bad_node {
        return Err(Error::DivergingCoefficient { node });
    }

    let base = knorm.base();
    // One application of B = 2K' - I.
    let apply_mapped = |x: &[f64], y: &mut [f64]| {
        base.apply_into(x, y);
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = 2.0 * *yi - xi;
        }
    };

    let samples: Vec<f64> = (0..probes.count())
        .map(|p| {
            let r = probes.probe(p);
            // w0 = r, w1 = B r, w_{k} = 2 B w_{k-1} - w_{k-2}
            let mut sample = coeffs[0] * dot(r, r);
            let mut w_prev = r.to_vec();
            let mut w = alloc::vec![0.0; n];
            apply_mapped(r, &mut w);
            if degree >= 1 {
                sample += coeffs[1] * dot(r, &w);
            }
            let mut buf = alloc::vec![0.0; n];
            for c in &coeffs[2..] {
                apply_mapped(&w, &mut buf);
                for i in 0..n {
                    buf[i] = 2.0 * buf[i] - w_prev[i];
                }
                sample += c * dot(r, &buf);
                core::mem::swap(&mut w_prev, &mut w);
                core::mem::swap(&mut w, &mut buf);
            }
            sample
        })
        .collect();

    let count = samples.len();
    let value = samples.iter().sum::<f64>() / count as f64;
    let stderr = if count > 1 {
        let var = samples
            .iter()
            .map(|s| (s - value) * (s - value))
            .sum::<f64>()
            / (count - 1) as f64;
        (var / count as f64).sqrt()
    } else {
        0.0
    };

    Ok(ExpansionEstimate {
        method: ExpansionMethod::Chebyshev,
        order: degree,
        probes_used: count,
        value,
        denormalized_value: value + knorm.correction(),
        stderr,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{normalize_with_scale, LinearOperator};

    /// Evaluate the interpolant sum c_k T_k(t) by the forward recurrence.
    fn eval_interpolant(coeffs: &[f64], t: f64) -> f64 {
        let mut acc = coeffs[0];
        let (mut prev, mut cur) = (1.0, t);
        for c in &coeffs[1..] {
            acc += c * cur;
            let next = 2.0 * t * cur - prev;
            prev = cur;
            cur = next;
        }
        acc
    }

    #[test]
    fn coefficients_interpolate_at_the_nodes() {
        let degree = 9;
        let f = |t: f64| (0.5 * (t + 1.0)).max(1e-300).ln();
        let coeffs = chebyshev_interpolation_coefficients(degree, f);
        for i in 0..=degree {
            let t = (PI * (i as f64 + 0.5) / (degree + 1) as f64).cos();
            assert!(
                (eval_interpolant(&coeffs, t) - f(t)).abs() < 1e-11,
                "node {i}"
            );
        }
    }

    #[test]
    fn exact_for_polynomials_of_matching_degree() {
        // f cubic, degree 3 interpolation reproduces it everywhere.
        let f = |t: f64| 2.0 * t * t * t - t + 0.25;
        let coeffs = chebyshev_interpolation_coefficients(3, f);
        for &t in &[-0.9, -0.3, 0.0, 0.5, 1.0] {
            assert!((eval_interpolant(&coeffs, t) - f(t)).abs() < 1e-13);
        }
    }

    #[test]
    fn matches_interpolant_trace_on_materialized_matrix() {
        // With exact traces (complete basis probes would do the same), the
        // estimator is tr p(K'); compare against evaluating the interpolant
        // at the known eigenvalues of a diagonal matrix.
        let eigs = [0.15, 0.4, 0.85, 0.99];
        let op = LinearOperator::from_diagonal(&eigs, true);
        let knorm = normalize_with_scale(&op, 1.0).unwrap();
        let degree = 12;
        // Deterministic "exact trace" route: average over the full standard
        // basis, which sums the diagonal of p(K') exactly.
        let coeffs =
            chebyshev_interpolation_coefficients(degree, |t| (0.5 * (t + 1.0)).ln());
        let oracle: f64 = eigs
            .iter()
            .map(|&l| eval_interpolant(&coeffs, 2.0 * l - 1.0))
            .sum();

        // Drive the stochastic path with a probe set, then compare the
        // per-probe sample expectation on the same probes: for a diagonal
        // operator the sample is sum_i p(lambda_i) r_i^2.
        let probes = ProbeSet::generate(3, 64, eigs.len());
        let est = chebyshev_logdet(&knorm, degree, &probes).unwrap();
        let manual: f64 = (0..probes.count())
            .map(|p| {
                let r = probes.probe(p);
                eigs.iter()
                    .zip(r)
                    .map(|(&l, ri)| eval_interpolant(&coeffs, 2.0 * l - 1.0) * ri * ri)
                    .sum::<f64>()
            })
            .sum::<f64>()
            / probes.count() as f64;
        assert!((est.value - manual).abs() < 1e-10);
        // And the probe average is within sampling error of the exact trace.
        assert!((est.value - oracle).abs() < 4.0 * est.stderr + 1e-12);
    }

    #[test]
    fn identity_estimate_is_interpolation_endpoint_error() {
        // K' = I drives every T_k(B) to the identity, so the estimate is
        // p(1) * mean ||r||^2: small interpolation leakage, not zero,
        // shrinking as the degree grows.
        let op = LinearOperator::identity(8);
        let knorm = normalize_with_scale(&op, 1.0).unwrap();
        let probes = ProbeSet::generate(11, 40, 8);
        let msn: f64 = (0..40)
            .map(|p| dot(probes.probe(p), probes.probe(p)))
            .sum::<f64>()
            / 40.0;
        let mut prev = f64::INFINITY;
        for &degree in &[4usize, 16, 64] {
            let est = chebyshev_logdet(&knorm, degree, &probes).unwrap();
            let coeffs =
                chebyshev_interpolation_coefficients(degree, |t| (0.5 * (t + 1.0)).ln());
            let p_at_one: f64 = coeffs.iter().sum();
            assert!((est.value - p_at_one * msn).abs() < 1e-9);
            assert!(est.value.abs() < prev);
            prev = est.value.abs();
        }
        assert!(prev < 0.05 * 8.0, "leakage should be small by degree 64");
    }

    #[test]
    fn scaled_identity_within_sampling_error() {
        let n = 50;
        let op = LinearOperator::from_diagonal(&[0.5; 50], true);
        let knorm = normalize_with_scale(&op, 1.0).unwrap();
        let probes = ProbeSet::generate(21, 100, n);
        let est = chebyshev_logdet(&knorm, 14, &probes).unwrap();
        let exact = 50.0 * 0.5f64.ln();
        assert!(
            (est.value - exact).abs() < 4.0 * est.stderr + 1e-3,
            "value {} exact {exact} stderr {}",
            est.value,
            est.stderr
        );
    }

    #[test]
    fn consumes_declared_budget() {
        let op = LinearOperator::from_diagonal(&[0.2, 0.4, 0.9], true);
        let knorm = normalize_with_scale(&op, 1.0).unwrap();
        let probes = ProbeSet::generate(5, 6, 3);
        let _ = chebyshev_logdet(&knorm, 10, &probes).unwrap();
        assert_eq!(knorm.base().mvp_count(), 60);
    }
}
