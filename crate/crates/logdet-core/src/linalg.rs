//! Small dense kernels: Cholesky factorization for Gram matrices and the
//! symmetric tridiagonal eigenproblem.
//!
//! These operate on the tiny systems that appear inside the estimators (a
//! handful of moment observations, a Lanczos factor of a few dozen steps),
//! never on the matrix whose log-determinant is being estimated.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;

use crate::Error;

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix,
/// stored row-major.
#[derive(Debug, Clone)]
pub struct Cholesky {
    l: Vec<f64>,
    n: usize,
}

impl Cholesky {
    /// Factor `a` (row-major, `n x n`, symmetric). Returns `None` when a
    /// pivot is not strictly positive.
    pub fn new(a: &[f64], n: usize) -> Option<Self> {
        assert_eq!(a.len(), n * n);
        let mut l = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut s = a[i * n + j];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if s <= 0.0 || !s.is_finite() {
                        return None;
                    }
                    l[i * n + i] = s.sqrt();
                } else {
                    l[i * n + j] = s / l[j * n + j];
                }
            }
        }
        Some(Self { l, n })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solve `L w = b` (forward substitution).
    pub fn solve_lower(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.n);
        let mut w = b.to_vec();
        for i in 0..self.n {
            for k in 0..i {
                w[i] -= self.l[i * self.n + k] * w[k];
            }
            w[i] /= self.l[i * self.n + i];
        }
        w
    }

    /// Solve `L L^T x = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = self.solve_lower(b);
        for i in (0..self.n).rev() {
            for k in i + 1..self.n {
                x[i] -= self.l[k * self.n + i] * x[k];
            }
            x[i] /= self.l[i * self.n + i];
        }
        x
    }

    /// `ln det` of the factored matrix, `2 sum ln L_ii`.
    pub fn ln_det(&self) -> f64 {
        (0..self.n)
            .map(|i| self.l[i * self.n + i].ln())
            .sum::<f64>()
            * 2.0
    }
}

/// Eigenvalues (ascending) of a symmetric tridiagonal matrix together with
/// the first component of each normalized eigenvector.
///
/// Implicit-shift QL iteration; the rotations are accumulated onto the first
/// row only, which is all Gauss-type quadrature weights need.
pub fn sym_tridiag_eigen_first(diag: &[f64], offdiag: &[f64]) -> Result<(Vec<f64>, Vec<f64>), Error> {
    let n = diag.len();
    assert!(
        offdiag.len() + 1 == n || (n == 0 && offdiag.is_empty()),
        "offdiagonal must be one shorter than the diagonal"
    );
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut d = diag.to_vec();
    // e[i] couples d[i] and d[i+1]; one trailing scratch slot.
    let mut e = offdiag.to_vec();
    e.push(0.0);
    let mut w = vec![0.0; n];
    w[0] = 1.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            // Locate a negligible off-diagonal element.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NoConvergence {
                    what: "tridiagonal QL iteration",
                });
            }
            // Wilkinson shift.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Deflate and restart this eigenvalue.
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                // Rotate the tracked first-row components.
                f = w[i + 1];
                w[i + 1] = s * w[i] + c * f;
                w[i] = c * w[i] - s * f;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // Sort ascending, carrying the weights along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("NaN eigenvalue"));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let first_components: Vec<f64> = order.iter().map(|&i| w[i]).collect();
    Ok((eigenvalues, first_components))
}
