//! Small dense complex linear algebra: matrix newtypes and the rank /
//! nullspace helpers the rest of the crate is built on.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// An element of gl(n, C), stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(Self(m))
    }

    pub fn zeros(n: usize) -> Self {
        Self(DMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self(DMatrix::from_fn(n, n, f))
    }

    /// Row-major real entries.
    pub fn from_real_rows(n: usize, rows: &[f64]) -> Self {
        assert_eq!(rows.len(), n * n, "expected {} entries", n * n);
        Self::from_fn(n, |i, j| C64::new(rows[i * n + j], 0.0))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, |i, j| if i == j { C64::new(diag[i], 0.0) } else { ZERO })
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn norm(&self) -> f64 {
        frobenius(&self.0)
    }

    pub fn scale(&self, t: C64) -> Self {
        Self(&self.0 * t)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    /// `[A, B] = AB - BA`
    pub fn commutator(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0 - &other.0 * &self.0)
    }

    /// `(A, B) = tr(A B*)`
    pub fn inner(&self, other: &Self) -> C64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn hermitian_part(&self) -> HermitianMatrix {
        HermitianMatrix::symmetrized(self.0.clone())
    }

    pub fn is_normal(&self, tol: f64) -> bool {
        let a = &self.0;
        let c = a * a.adjoint() - a.adjoint() * a;
        frobenius(&c) <= tol * frobenius(a).powi(2).max(f64::MIN_POSITIVE)
    }

    /// Nilpotency test: `A^n` vanishes relative to `||A||^n`.
    pub fn is_nilpotent(&self, tol: f64) -> bool {
        let n = self.dim();
        let scale = self.norm();
        if scale == 0.0 {
            return true;
        }
        let a = &self.0 / C64::new(scale, 0.0);
        let mut p = DMatrix::<C64>::identity(n, n);
        for _ in 0..n {
            p = &p * &a;
        }
        frobenius(&p) <= tol
    }

    /// Spectral condition number `sigma_max / sigma_min`.
    pub fn condition_number(&self) -> f64 {
        let sv = self.0.clone().singular_values();
        let max = sv.iter().cloned().fold(0.0, f64::max);
        let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        if min == 0.0 {
            f64::INFINITY
        } else {
            max / min
        }
    }

    pub fn try_inverse(&self) -> Option<Self> {
        self.0.clone().try_inverse().map(Self)
    }
}

/// An element of i·u(n): a hermitian matrix. Construction symmetrizes the
/// input, so the stored matrix is hermitian up to rounding of `(M + M*)/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(DMatrix<C64>);

impl HermitianMatrix {
    /// Checked constructor: rejects inputs whose anti-hermitian part exceeds
    /// `1e-12` relative to the norm.
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("hermitian matrix"));
        }
        let defect = frobenius(&(&m - m.adjoint()));
        let scale = frobenius(&m);
        if defect > 1e-12 * scale.max(f64::MIN_POSITIVE) && defect > 0.0 {
            return Err(Error::NotHermitian(defect / scale.max(f64::MIN_POSITIVE)));
        }
        Ok(Self::symmetrized(m))
    }

    pub fn symmetrized(m: DMatrix<C64>) -> Self {
        let h = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        Self(h)
    }

    pub fn zeros(n: usize) -> Self {
        Self(DMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(diag[i], 0.0)
            } else {
                ZERO
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix(self.0.clone())
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn norm(&self) -> f64 {
        frobenius(&self.0)
    }

    /// `tr(A B)` for hermitian A, B (real).
    pub fn trace_product(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a * b.conj()).re)
            .sum()
    }

    pub fn scale(&self, t: f64) -> Self {
        Self(&self.0 * C64::new(t, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    pub fn shift(&self, c: f64) -> Self {
        let n = self.dim();
        Self(&self.0 + DMatrix::<C64>::identity(n, n) * C64::new(c, 0.0))
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigen().0
    }

    /// Eigenvalues (ascending) with matching unit eigenvectors as columns.
    pub fn eigen(&self) -> (Vec<f64>, DMatrix<C64>) {
        let n = self.dim();
        if n == 0 {
            return (Vec::new(), DMatrix::zeros(0, 0));
        }
        let eig = self.0.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
        (values, vectors)
    }

    /// `f(H)` through the spectral decomposition.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Self {
        let (vals, vecs) = self.eigen();
        let d = DMatrix::from_fn(vals.len(), vals.len(), |i, j| {
            if i == j {
                C64::new(f(vals[i]), 0.0)
            } else {
                ZERO
            }
        });
        Self::symmetrized(&vecs * d * vecs.adjoint())
    }
}

pub(crate) fn frobenius(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Right nullspace of a complex matrix by singular-value thresholding:
/// singular values `<= rel_tol * sigma_max` count as zero. Returned vectors
/// are orthonormal. A zero matrix has the whole space as nullspace.
pub fn complex_nullspace(a: &DMatrix<C64>, rel_tol: f64) -> Vec<DVector<C64>> {
    let (rows, cols) = a.shape();
    if cols == 0 {
        return Vec::new();
    }
    // Pad to at least square so that the SVD exposes every right singular vector.
    let padded = if rows < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cut = rel_tol * smax;
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| smax == 0.0 || s <= cut)
        .map(|(i, _)| v_t.row(i).adjoint())
        .collect()
}

/// Real counterpart of [`complex_nullspace`].
pub fn real_nullspace(a: &DMatrix<f64>, rel_tol: f64) -> Vec<DVector<f64>> {
    let (rows, cols) = a.shape();
    if cols == 0 {
        return Vec::new();
    }
    let padded = if rows < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cut = rel_tol * smax;
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| smax == 0.0 || s <= cut)
        .map(|(i, _)| v_t.row(i).transpose())
        .collect()
}

/// Orthonormal basis of the span of `vectors` (all of length `n`), keeping
/// directions whose singular value exceeds `abs_tol`.
pub fn orthonormal_span(n: usize, vectors: &[DVector<C64>], abs_tol: f64) -> Vec<DVector<C64>> {
    if vectors.is_empty() || n == 0 {
        return Vec::new();
    }
    let m = DMatrix::from_fn(n, vectors.len(), |r, c| vectors[c][r]);
    let padded = if vectors.len() < n {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (n, vectors.len())).copy_from(&m);
        p
    } else {
        m
    };
    let svd = padded.svd(true, false);
    let u = svd.u.expect("u requested");
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > abs_tol)
        .map(|(i, _)| u.column(i).into_owned())
        .collect()
}

/// Numerical rank with a threshold relative to the largest singular value.
pub fn rank(a: &DMatrix<C64>, rel_tol: f64) -> usize {
    if a.is_empty() {
        return 0;
    }
    let sv = a.clone().singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * smax).count()
}

/// Least-squares coefficients of `target` in the span of `basis`, together
/// with the norm of the residual.
pub fn least_squares(basis: &[DVector<C64>], target: &DVector<C64>) -> (DVector<C64>, f64) {
    let len = target.len();
    if basis.is_empty() {
        return (DVector::zeros(0), target.norm());
    }
    let a = DMatrix::from_fn(len, basis.len(), |r, c| basis[c][r]);
    let svd = a.clone().svd(true, true);
    let coeffs = svd
        .solve(target, 1e-13)
        .unwrap_or_else(|_| DVector::zeros(basis.len()));
    let residual = (target - &a * &coeffs).norm();
    (coeffs, residual)
}
