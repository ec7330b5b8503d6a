//! Structure-constant tensors: points of the space of alternating bilinear
//! maps `C^n x C^n -> C^n`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{C64, ZERO};

/// Coefficients `c[i][j][k] = <mu(X_i, X_j), X_k>` in the fixed orthonormal
/// basis, stored densely. Antisymmetry in `(i, j)` holds exactly: every
/// mutation writes both `(i, j, k)` and `(j, i, k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureTensor {
    dim: usize,
    coeff: Vec<C64>,
}

impl StructureTensor {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            coeff: vec![ZERO; dim * dim * dim],
        }
    }

    /// Builds a tensor from `(i, j, k, value)` entries with 0-based indices,
    /// interpreted as `mu(X_i, X_j) += value X_k` (and the antisymmetric twin).
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, C64)]) -> Result<Self> {
        let mut t = Self::zeros(dim);
        for &(i, j, k, v) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: i.max(j).max(k) + 1,
                });
            }
            if i == j {
                if v != ZERO {
                    return Err(Error::Parse(format!(
                        "diagonal entry ({i},{i},{k}) must vanish"
                    )));
                }
                continue;
            }
            let cur = t.get(i, j, k);
            t.set(i, j, k, cur + v);
        }
        t.check_finite()?;
        Ok(t)
    }

    /// Real-coefficient convenience constructor (0-based indices).
    pub fn from_real_entries(dim: usize, entries: &[(usize, usize, usize, f64)]) -> Result<Self> {
        let e: Vec<_> = entries
            .iter()
            .map(|&(i, j, k, v)| (i, j, k, C64::new(v, 0.0)))
            .collect();
        Self::from_entries(dim, &e)
    }

    /// Builds from an arbitrary generator; only `i < j` is consulted.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> C64) -> Self {
        let mut t = Self::zeros(dim);
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in 0..dim {
                    t.set(i, j, k, f(i, j, k));
                }
            }
        }
        t
    }

    fn check_finite(&self) -> Result<()> {
        if self
            .coeff
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite("structure tensor"));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> C64 {
        self.coeff[self.idx(i, j, k)]
    }

    /// Sets `c[i][j][k] = v` and `c[j][i][k] = -v`. Setting a diagonal entry
    /// is ignored.
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: C64) {
        if i == j {
            return;
        }
        let a = self.idx(i, j, k);
        let b = self.idx(j, i, k);
        self.coeff[a] = v;
        self.coeff[b] = -v;
    }

    pub fn coefficients(&self) -> &[C64] {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.iter().all(|z| *z == ZERO)
    }

    /// `||mu||^2` summed over all ordered triples.
    pub fn norm_sqr(&self) -> f64 {
        self.coeff.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, t: C64) -> Self {
        Self {
            dim: self.dim,
            coeff: self.coeff.iter().map(|z| z * t).collect(),
        }
    }

    pub fn scale_real(&self, t: f64) -> Self {
        self.scale(C64::new(t, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            coeff: self
                .coeff
                .iter()
                .zip(&other.coeff)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            coeff: self
                .coeff
                .iter()
                .zip(&other.coeff)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// `self + t * other`
    pub fn axpy(&self, t: C64, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            coeff: self
                .coeff
                .iter()
                .zip(&other.coeff)
                .map(|(a, b)| a + t * b)
                .collect(),
        }
    }

    /// Unit-norm copy, or an error for the zero tensor.
    pub fn normalized(&self) -> Result<Self> {
        // Pre-scale by the largest entry so the sum of squares neither
        // overflows nor loses precision in the subnormal range.
        let m = self
            .coeff
            .iter()
            .fold(0.0f64, |m, z| m.max(z.re.abs()).max(z.im.abs()));
        if m == 0.0 {
            return Err(Error::ZeroTensor("normalization"));
        }
        if !m.is_finite() {
            return Err(Error::NonFinite("structure tensor"));
        }
        let pre = self.scale_real(1.0 / m);
        Ok(pre.scale_real(1.0 / pre.norm()))
    }

    /// `ad X_i` as a matrix: column `j` holds `mu(X_i, X_j)`.
    pub fn ad_basis(&self, i: usize) -> DMatrix<C64> {
        let n = self.dim;
        DMatrix::from_fn(n, n, |k, j| self.get(i, j, k))
    }

    /// `ad X` for an arbitrary vector.
    pub fn ad(&self, x: &DVector<C64>) -> DMatrix<C64> {
        let n = self.dim;
        DMatrix::from_fn(n, n, |k, j| (0..n).map(|i| x[i] * self.get(i, j, k)).sum())
    }

    /// Largest absolute deviation between two tensors.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeff
            .iter()
            .zip(&other.coeff)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Coefficient vector over the independent triples `i < j`, in
    /// lexicographic `(i, j, k)` order.
    #[cfg(test)]
    pub(crate) fn upper_entries(&self) -> Vec<C64> {
        let n = self.dim;
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2 * n);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    out.push(self.get(i, j, k));
                }
            }
        }
        out
    }
}
