//! Symmetric Lanczos tridiagonalization.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use alloc::vec::Vec;

use crate::linalg::sym_tridiag_eigen_first;
use crate::operator::SymmetricOperator;
use crate::{Error, Result};

/// Whether to re-orthogonalize each new Krylov vector against the full basis.
///
/// `Full` keeps the basis orthogonal to machine precision (two Gram-Schmidt
/// passes) at `O(n m^2)` cost and `O(n m)` memory; `None` is the plain
/// three-term recurrence that large-scale runs would use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reorthogonalization {
    Full,
    None,
}

/// Symmetric tridiagonal Lanczos factor `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalFactor {
    pub diagonal: Vec<f64>,
    pub offdiagonal: Vec<f64>,
}

impl TridiagonalFactor {
    /// Completed Lanczos steps (the order of `T`).
    pub fn steps(&self) -> usize {
        self.diagonal.len()
    }

    /// Eigenvalues of `T` (ascending) and the first component of each
    /// normalized eigenvector — the Gauss-quadrature nodes and (squared)
    /// weights of the spectral measure seen from the start vector.
    pub fn eigen_first_components(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        sym_tridiag_eigen_first(&self.diagonal, &self.offdiagonal)
    }
}

/// Run up to `max_steps` Lanczos steps from `start`, stopping early when the
/// next off-diagonal falls to `breakdown_tol` or below (an invariant subspace
/// has been found).
///
/// The returned factor satisfies the three-term recurrence
/// `A q_j = beta_{j-1} q_{j-1} + alpha_j q_j + beta_j q_{j+1}`.
pub fn lanczos(
    op: &impl SymmetricOperator,
    start: &[f64],
    max_steps: usize,
    reorth: Reorthogonalization,
    breakdown_tol: f64,
) -> Result<TridiagonalFactor> {
    let n = op.dim();
    if start.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: start.len(),
        });
    }
    if max_steps < 1 {
        return Err(Error::InvalidOrder { order: max_steps });
    }
    let norm = norm2(start);
    if norm == 0.0 {
        return Err(Error::ZeroStartVector);
    }

    let mut q: Vec<f64> = start.iter().map(|x| x / norm).collect();
    let mut q_prev = alloc::vec![0.0; n];
    let mut beta_prev = 0.0;
    let mut diagonal = Vec::with_capacity(max_steps);
    let mut offdiagonal = Vec::with_capacity(max_steps.saturating_sub(1));
    // Basis storage only when re-orthogonalizing.
    let mut basis: Vec<Vec<f64>> = Vec::new();
    if reorth == Reorthogonalization::Full {
        basis.push(q.clone());
    }

    let mut w = alloc::vec![0.0; n];
    for step in 0..max_steps {
        op.apply_into(&q, &mut w);
        let alpha = dot(&q, &w);
        diagonal.push(alpha);
        for i in 0..n {
            w[i] -= alpha * q[i] + beta_prev * q_prev[i];
        }
        if reorth == Reorthogonalization::Full {
            // Two passes of classical Gram-Schmidt against the whole basis.
            for _ in 0..2 {
                for b in &basis {
                    let proj = dot(b, &w);
                    for i in 0..n {
                        w[i] -= proj * b[i];
                    }
                }
            }
        }
        let beta = norm2(&w);
        if step + 1 == max_steps || beta <= breakdown_tol {
            break;
        }
        offdiagonal.push(beta);
        for i in 0..n {
            let next = w[i] / beta;
            q_prev[i] = q[i];
            q[i] = next;
        }
        beta_prev = beta;
        if reorth == Reorthogonalization::Full {
            basis.push(q.clone());
        }
    }

    Ok(TridiagonalFactor {
        diagonal,
        offdiagonal,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::LinearOperator;

    #[test]
    fn scalar_matrix_single_step() {
        let op = LinearOperator::from_diagonal(&[3.0], true);
        let t = lanczos(&op, &[1.0], 1, Reorthogonalization::Full, 0.0).unwrap();
        assert_eq!(t.diagonal, vec![3.0]);
        assert!(t.offdiagonal.is_empty());
    }

    #[test]
    fn identity_breaks_down_after_one_step() {
        let op = LinearOperator::identity(6);
        let start = [0.3, -1.0, 0.2, 0.9, 0.0, 2.0];
        let t = lanczos(&op, &start, 6, Reorthogonalization::Full, 1e-12).unwrap();
        assert_eq!(t.steps(), 1);
        assert!((t.diagonal[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zero_start_vector_rejected() {
        let op = LinearOperator::identity(3);
        assert!(matches!(
            lanczos(&op, &[0.0; 3], 2, Reorthogonalization::Full, 0.0),
            Err(Error::ZeroStartVector)
        ));
    }

    #[test]
    fn recurrence_holds_on_dense_matrix() {
        // Verify A Q = Q T + residual on the last column only, via
        // materialization at small size.
        let vals = vec![
            4.0, 1.0, 0.5, 0.0, //
            1.0, 3.0, 0.2, 0.1, //
            0.5, 0.2, 2.0, 0.3, //
            0.0, 0.1, 0.3, 1.0,
        ];
        let op = LinearOperator::from_dense(4, vals, true).unwrap();
        let start = [1.0, 0.5, -0.3, 0.8];
        let t = lanczos(&op, &start, 4, Reorthogonalization::Full, 1e-14).unwrap();
        assert_eq!(t.steps(), 4);
        // Full-length factorization is orthogonally similar to A: compare
        // eigenvalues against the dense oracle.
        let (tri_eigs, _) = t.eigen_first_components().unwrap();
        let dense = nalgebra::DMatrix::from_row_slice(4, 4, &op.materialize());
        let mut oracle: Vec<f64> = dense.symmetric_eigenvalues().iter().copied().collect();
        oracle.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in tri_eigs.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn full_reorthogonalization_recovers_spectrum_at_m_equal_n() {
        use rand::{Rng, SeedableRng};
        let n = 20;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        // Random PSD matrix: G^T G / n + small ridge.
        let g: Vec<f64> = (0..n * n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += g[k * n + i] * g[k * n + j];
                }
                a[i * n + j] = s / n as f64 + if i == j { 0.1 } else { 0.0 };
            }
        }
        let op = LinearOperator::from_dense(n, a.clone(), true).unwrap();
        let start: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let t = lanczos(&op, &start, n, Reorthogonalization::Full, 0.0).unwrap();
        assert_eq!(t.steps(), n);
        let (tri_eigs, _) = t.eigen_first_components().unwrap();
        let dense = nalgebra::DMatrix::from_row_slice(n, n, &a);
        let mut oracle: Vec<f64> = dense.symmetric_eigenvalues().iter().copied().collect();
        oracle.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (a, b) in tri_eigs.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
    }
}
