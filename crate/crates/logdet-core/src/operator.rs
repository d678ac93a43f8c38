//! Symmetric linear operators: dense and sparse storage, matrix-vector
//! products, Gershgorin spectral intervals, and spectrum normalization.

#[cfg(not(feature = "std"))]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::{Error, Result};

/// Matrix-free interface every estimator in this crate works against: a
/// symmetric operator exposing its dimension and `y = A x`.
pub trait SymmetricOperator {
    fn dim(&self) -> usize;

    /// `y = A x`. Both slices must have length [`dim`](Self::dim).
    fn apply_into(&self, x: &[f64], y: &mut [f64]);

    /// Convenience allocating form of [`apply_into`](Self::apply_into).
    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim()];
        self.apply_into(x, &mut y);
        y
    }
}

impl<O: SymmetricOperator + ?Sized> SymmetricOperator for &O {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        (**self).apply_into(x, y)
    }
}

#[derive(Debug, Clone)]
enum Storage {
    /// Row-major full symmetric storage.
    Dense(Vec<f64>),
    /// Coordinate triplets restricted to the lower triangle (`row >= col`);
    /// the upper triangle is implied.
    SparseCoo {
        rows: Vec<u32>,
        cols: Vec<u32>,
        values: Vec<f64>,
    },
}

/// A symmetric matrix held in dense or sparse form, with cached summary
/// statistics (trace and squared Frobenius norm) and an atomic counter of the
/// matrix-vector products performed through it.
#[derive(Debug)]
pub struct LinearOperator {
    n: usize,
    storage: Storage,
    trace: f64,
    frobenius_sq: f64,
    psd_declared: bool,
    mvp_count: AtomicU64,
}

impl Clone for LinearOperator {
    fn clone(&self) -> Self {
        Self {
            n: self.n,
            storage: self.storage.clone(),
            trace: self.trace,
            frobenius_sq: self.frobenius_sq,
            psd_declared: self.psd_declared,
            // A clone is a fresh operator; its product counter starts at zero.
            mvp_count: AtomicU64::new(0),
        }
    }
}

const SYMMETRY_RTOL: f64 = 1e-12;

impl LinearOperator {
    /// Build from a row-major dense `n x n` array.
    ///
    /// The input must be symmetric to within `1e-12` of its largest entry;
    /// the lower triangle is then mirrored so the stored matrix is exactly
    /// symmetric.
    pub fn from_dense(n: usize, mut values: Vec<f64>, psd_declared: bool) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: values.len(),
            });
        }
        let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for i in 0..n {
            for j in 0..i {
                let a = values[i * n + j];
                let b = values[j * n + i];
                if (a - b).abs() > SYMMETRY_RTOL * scale {
                    return Err(Error::AsymmetricInput { row: i, col: j });
                }
                values[j * n + i] = a;
            }
        }
        let trace = (0..n).map(|i| values[i * n + i]).sum();
        let frobenius_sq = values.iter().map(|v| v * v).sum();
        Ok(Self {
            n,
            storage: Storage::Dense(values),
            trace,
            frobenius_sq,
            psd_declared,
        mvp_count: AtomicU64::new(0),
        })
    }

    /// Build from coordinate triplets of a symmetric matrix. Entries may be
    /// given in either triangle; mirrored duplicates must agree exactly and
    /// conflicting duplicates are rejected.
    pub fn from_sparse_coo(
        n: usize,
        triplets: impl IntoIterator<Item = (usize, usize, f64)>,
        psd_declared: bool,
    ) -> Result<Self> {
        let mut entries: Vec<(u32, u32, f64)> = Vec::new();
        for (i, j, v) in triplets {
            if i >= n || j >= n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: i.max(j) + 1,
                });
            }
            let (r, c) = if i >= j { (i, j) } else { (j, i) };
            entries.push((r as u32, c as u32, v));
        }
        entries.sort_by_key(|&(r, c, _)| (r, c));
        let mut dedup: Vec<(u32, u32, f64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match dedup.last() {
                Some(&(pr, pc, pv)) if pr == r && pc == c => {
                    if pv != v {
                        return Err(Error::Numeric(alloc::format!(
                            "conflicting duplicate entry at ({}, {})",
                            r + 1,
                            c + 1
                        )));
                    }
                }
                _ => dedup.push((r, c, v)),
            }
        }
        let mut trace = 0.0;
        let mut frobenius_sq = 0.0;
        for &(r, c, v) in &dedup {
            if r == c {
                trace += v;
                frobenius_sq += v * v;
            } else {
                frobenius_sq += 2.0 * v * v;
            }
        }
        let (rows, cols, values) = dedup.into_iter().fold(
            (Vec::new(), Vec::new(), Vec::new()),
            |(mut rs, mut cs, mut vs), (r, c, v)| {
                rs.push(r);
                cs.push(c);
                vs.push(v);
                (rs, cs, vs)
            },
        );
        Ok(Self {
            n,
            storage: Storage::SparseCoo { rows, cols, values },
            trace,
            frobenius_sq,
            psd_declared,
            mvp_count: AtomicU64::new(0),
        })
    }

    /// Diagonal matrix.
    pub fn from_diagonal(diag: &[f64], psd_declared: bool) -> Self {
        let n = diag.len();
        Self::from_sparse_coo(n, diag.iter().enumerate().map(|(i, &v)| (i, i, v)), psd_declared)
            .expect("diagonal triplets are always valid")
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n], true)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Cached trace of the stored matrix.
    pub fn trace(&self) -> f64 {
        self.trace
    }

    /// Cached squared Frobenius norm of the stored matrix.
    pub fn frobenius_sq(&self) -> f64 {
        self.frobenius_sq
    }

    pub fn psd_declared(&self) -> bool {
        self.psd_declared
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::SparseCoo { .. })
    }

    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Dense(v) => v.len(),
            Storage::SparseCoo { values, .. } => values.len(),
        }
    }

    /// Number of matrix-vector products performed through this operator.
    pub fn mvp_count(&self) -> u64 {
        self.mvp_count.load(Ordering::Relaxed)
    }

    pub fn reset_mvp_count(&self) {
        self.mvp_count.store(0, Ordering::Relaxed);
    }

    /// Materialize as a row-major dense array (test and oracle support).
    pub fn materialize(&self) -> Vec<f64> {
        match &self.storage {
            Storage::Dense(v) => v.clone(),
            Storage::SparseCoo { rows, cols, values } => {
                let mut out = vec![0.0; self.n * self.n];
                for ((&r, &c), &v) in rows.iter().zip(cols).zip(values) {
                    out[r as usize * self.n + c as usize] = v;
                    out[c as usize * self.n + r as usize] = v;
                }
                out
            }
        }
    }

    /// Return a copy of this operator scaled by `1 / scale`.
    fn scaled_by_inverse(&self, scale: f64) -> Self {
        let storage = match &self.storage {
            Storage::Dense(v) => Storage::Dense(v.iter().map(|x| x / scale).collect()),
            Storage::SparseCoo { rows, cols, values } => Storage::SparseCoo {
                rows: rows.clone(),
                cols: cols.clone(),
                values: values.iter().map(|x| x / scale).collect(),
            },
        };
        Self {
            n: self.n,
            storage,
            trace: self.trace / scale,
            frobenius_sq: self.frobenius_sq / (scale * scale),
            psd_declared: self.psd_declared,
            mvp_count: AtomicU64::new(0),
        }
    }
}

impl SymmetricOperator for LinearOperator {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.n, "input length must match dimension");
        assert_eq!(y.len(), self.n, "output length must match dimension");
        match &self.storage {
            Storage::Dense(a) => {
                for (i, yi) in y.iter_mut().enumerate() {
                    let row = &a[i * self.n..(i + 1) * self.n];
                    *yi = row.iter().zip(x).map(|(aij, xj)| aij * xj).sum();
                }
            }
            Storage::SparseCoo { rows, cols, values } => {
                y.fill(0.0);
                for ((&r, &c), &v) in rows.iter().zip(cols).zip(values) {
                    let (r, c) = (r as usize, c as usize);
                    y[r] += v * x[c];
                    if r != c {
                        y[c] += v * x[r];
                    }
                }
            }
        }
        self.mvp_count.fetch_add(1, Ordering::Relaxed);
    }
}

/// Where a spectral interval came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalSource {
    Gershgorin,
    UserSupplied,
}

/// An interval `[lower, upper]` guaranteed to contain every eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralInterval {
    pub lower: f64,
    pub upper: f64,
    pub source: IntervalSource,
}

impl SpectralInterval {
    pub fn user(lower: f64, upper: f64) -> Self {
        assert!(lower <= upper, "interval bounds out of order");
        Self {
            lower,
            upper,
            source: IntervalSource::UserSupplied,
        }
    }
}

/// Gershgorin disc enclosure of the spectrum: every eigenvalue lies within
/// `[min_i (a_ii - r_i), max_i (a_ii + r_i)]` with `r_i` the off-diagonal
/// absolute row sum. For operators declared PSD the lower end is clamped at
/// zero.
pub fn gershgorin_interval(op: &LinearOperator) -> SpectralInterval {
    let n = op.n;
    let (centers, radii) = match &op.storage {
        Storage::Dense(a) => {
            let mut centers = vec![0.0; n];
            let mut radii = vec![0.0; n];
            for i in 0..n {
                centers[i] = a[i * n + i];
                radii[i] = a[i * n..(i + 1) * n]
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, v)| v.abs())
                    .sum();
            }
            (centers, radii)
        }
        Storage::SparseCoo { rows, cols, values } => {
            let mut centers = vec![0.0; n];
            let mut radii = vec![0.0; n];
            for ((&r, &c), &v) in rows.iter().zip(cols).zip(values) {
                if r == c {
                    centers[r as usize] = v;
                } else {
                    radii[r as usize] += v.abs();
                    radii[c as usize] += v.abs();
                }
            }
            (centers, radii)
        }
    };
    let mut lower = f64::INFINITY;
    let mut upper = f64::NEG_INFINITY;
    for i in 0..n {
        lower = lower.min(centers[i] - radii[i]);
        upper = upper.max(centers[i] + radii[i]);
    }
    if n == 0 {
        lower = 0.0;
        upper = 0.0;
    }
    if op.psd_declared {
        lower = lower.max(0.0);
    }
    SpectralInterval {
        lower,
        upper,
        source: IntervalSource::Gershgorin,
    }
}

/// An operator rescaled so its spectrum lies in `[0, 1]`, carrying the
/// correction term that restores the original log-determinant:
/// `logdet(K) = logdet(K / c) + n ln c`.
#[derive(Debug, Clone)]
pub struct NormalizedOperator {
    base: LinearOperator,
    scale: f64,
    correction: f64,
    interval: SpectralInterval,
}

impl NormalizedOperator {
    /// The rescaled operator `K / c`.
    pub fn base(&self) -> &LinearOperator {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.n
    }

    /// The scale `c` that was divided out.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `n ln c`, to be added to the normalized log-determinant.
    pub fn correction(&self) -> f64 {
        self.correction
    }

    /// Spectral interval of the rescaled operator (upper end is exactly 1
    /// when the Gershgorin bound set the scale).
    pub fn interval(&self) -> SpectralInterval {
        self.interval
    }

    /// View of `A = I - K/c`, the operand of the Taylor-moment recursion.
    /// Its spectrum lies in `[0, 1]` whenever `K` is PSD.
    pub fn complement(&self) -> ComplementOperator<'_> {
        ComplementOperator { inner: &self.base }
    }

    /// Replace the spectral lower bound with a user-supplied floor, given on
    /// the scale of the *original* matrix.
    pub fn with_lower_floor(mut self, original_scale_floor: f64) -> Self {
        self.interval = SpectralInterval {
            lower: original_scale_floor / self.scale,
            upper: self.interval.upper,
            source: IntervalSource::UserSupplied,
        };
        self
    }
}

impl SymmetricOperator for NormalizedOperator {
    fn dim(&self) -> usize {
        self.base.n
    }

    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        self.base.apply_into(x, y)
    }
}

/// `A = I - K'` for a normalized operator `K'`; one application costs one
/// product with `K'`.
#[derive(Debug, Clone, Copy)]
pub struct ComplementOperator<'a> {
    inner: &'a LinearOperator,
}

impl SymmetricOperator for ComplementOperator<'_> {
    fn dim(&self) -> usize {
        self.inner.n
    }

    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        self.inner.apply_into(x, y);
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = xi - *yi;
        }
    }
}

/// Rescale `op` by its Gershgorin upper bound so the spectrum lands in
/// `[0, 1]`.
pub fn normalize(op: &LinearOperator) -> Result<NormalizedOperator> {
    let interval = gershgorin_interval(op);
    normalize_impl(op, interval, interval.upper)
}

/// Rescale by a caller-chosen `scale` instead of the Gershgorin bound (a
/// tighter scale gives a better-conditioned expansion; the caller is
/// responsible for `lambda_max <= scale`).
pub fn normalize_with_scale(op: &LinearOperator, scale: f64) -> Result<NormalizedOperator> {
    let interval = gershgorin_interval(op);
    normalize_impl(op, interval, scale)
}

fn normalize_impl(
    op: &LinearOperator,
    interval: SpectralInterval,
    scale: f64,
) -> Result<NormalizedOperator> {
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::NonPositiveScale { scale });
    }
    let base = op.scaled_by_inverse(scale);
    let correction = op.n as f64 * scale.ln();
    Ok(NormalizedOperator {
        base,
        scale,
        correction,
        interval: SpectralInterval {
            lower: interval.lower / scale,
            upper: interval.upper / scale,
            source: interval.source,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(n: usize, vals: &[f64]) -> LinearOperator {
        LinearOperator::from_dense(n, vals.to_vec(), true).unwrap()
    }

    #[test]
    fn dense_apply_and_stats() {
        let op = dense(2, &[2.0, 1.0, 1.0, 2.0]);
        assert_eq!(op.trace(), 4.0);
        assert_eq!(op.frobenius_sq(), 10.0);
        assert_eq!(op.apply(&[1.0, 0.0]), vec![2.0, 1.0]);
        assert_eq!(op.mvp_count(), 1);
    }

    #[test]
    fn rejects_asymmetric_dense() {
        let err = LinearOperator::from_dense(2, vec![1.0, 0.5, 0.0, 1.0], true).unwrap_err();
        assert!(matches!(err, Error::AsymmetricInput { .. }));
    }

    #[test]
    fn sparse_matches_dense_apply() {
        // [[2, 1, 0], [1, 0, -3], [0, -3, 5]]
        let trip = [(0, 0, 2.0), (1, 0, 1.0), (1, 2, -3.0), (2, 2, 5.0)];
        let sp = LinearOperator::from_sparse_coo(3, trip, false).unwrap();
        let de = LinearOperator::from_dense(
            3,
            vec![2.0, 1.0, 0.0, 1.0, 0.0, -3.0, 0.0, -3.0, 5.0],
            false,
        )
        .unwrap();
        assert_eq!(sp.trace(), de.trace());
        assert_eq!(sp.frobenius_sq(), de.frobenius_sq());
        let x = [0.3, -1.2, 2.0];
        let ys = sp.apply(&x);
        let yd = de.apply(&x);
        for (a, b) in ys.iter().zip(&yd) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn sparse_rejects_conflicting_duplicates() {
        let trip = [(0, 1, 2.0), (1, 0, 3.0)];
        assert!(LinearOperator::from_sparse_coo(2, trip, false).is_err());
        // Agreeing mirror entries are accepted once.
        let trip = [(0, 1, 2.0), (1, 0, 2.0), (0, 0, 1.0), (1, 1, 1.0)];
        let op = LinearOperator::from_sparse_coo(2, trip, false).unwrap();
        assert_eq!(op.nnz(), 3);
        assert_eq!(op.frobenius_sq(), 1.0 + 1.0 + 2.0 * 4.0);
    }

    #[test]
    fn gershgorin_simple_cases() {
        let op = dense(2, &[2.0, 1.0, 1.0, 2.0]);
        let iv = gershgorin_interval(&op);
        assert_eq!((iv.lower, iv.upper), (1.0, 3.0));

        let op = LinearOperator::from_diagonal(&[0.5, 1.0], true);
        let iv = gershgorin_interval(&op);
        assert_eq!((iv.lower, iv.upper), (0.5, 1.0));
    }

    #[test]
    fn gershgorin_clamps_at_zero_for_psd() {
        // Discs reach below zero but the operator is declared PSD.
        let vals = vec![1.0, -1.0, -1.0, 1.0];
        let psd = LinearOperator::from_dense(2, vals.clone(), true).unwrap();
        assert_eq!(gershgorin_interval(&psd).lower, 0.0);
        let plain = LinearOperator::from_dense(2, vals, false).unwrap();
        assert_eq!(gershgorin_interval(&plain).lower, -1.0);
    }

    #[test]
    fn normalize_identity_and_diag() {
        let op = LinearOperator::identity(4);
        let norm = normalize(&op).unwrap();
        assert_eq!(norm.scale(), 1.0);
        assert_eq!(norm.correction(), 0.0);
        assert_eq!(norm.base().trace(), 4.0);

        let op = LinearOperator::from_diagonal(&[2.0, 4.0], true);
        let norm = normalize(&op).unwrap();
        assert_eq!(norm.scale(), 4.0);
        assert_eq!(norm.base().apply(&[1.0, 1.0]), vec![0.5, 1.0]);
        assert!((norm.correction() - 2.0 * 4.0f64.ln()).abs() < 1e-15);
        assert_eq!(norm.interval().upper, 1.0);
    }

    #[test]
    fn normalize_rejects_nonpositive_scale() {
        let op = LinearOperator::from_sparse_coo(3, core::iter::empty(), true).unwrap();
        assert_eq!(op.trace(), 0.0);
        assert!(matches!(
            normalize(&op),
            Err(Error::NonPositiveScale { .. })
        ));
    }

    #[test]
    fn complement_applies_i_minus_k() {
        let op = LinearOperator::from_diagonal(&[2.0, 4.0], true);
        let norm = normalize(&op).unwrap();
        let a = norm.complement();
        // A = I - diag(0.5, 1.0) = diag(0.5, 0.0)
        let y = a.apply(&[1.0, 1.0]);
        assert!((y[0] - 0.5).abs() < 1e-15);
        assert!(y[1].abs() < 1e-15);
        // One complement product consumed one base product.
        assert_eq!(norm.base().mvp_count(), 1);
    }

    #[test]
    fn materialization_is_symmetric() {
        let trip = [(0, 0, 2.0), (1, 0, 1.0), (2, 1, -0.5), (2, 2, 3.0)];
        let op = LinearOperator::from_sparse_coo(3, trip, false).unwrap();
        let m = op.materialize();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m[i * 3 + j], m[j * 3 + i]);
            }
        }
    }
}
