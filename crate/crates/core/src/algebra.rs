//! Algebraic operations on structure tensors: evaluation, the GL(n) action,
//! the coboundary `delta_mu` and its adjoint, derivations and structural
//! invariants, direct sums and semidirect extensions.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    complex_nullspace, least_squares, orthonormal_span, rank, real_nullspace, ComplexMatrix,
    HermitianMatrix, C64, ONE, ZERO,
};
use crate::tensor::StructureTensor;

/// Relative singular-value threshold for nullspace rank decisions.
pub const DEFAULT_NULLSPACE_TOL: f64 = 1e-9;

/// Condition-number ceiling accepted by [`act`].
pub const DEFAULT_MAX_CONDITION: f64 = 1e12;

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `mu(X, Y)` by contraction.
pub fn bracket_eval(mu: &StructureTensor, x: &[C64], y: &[C64]) -> Result<Vec<C64>> {
    let n = mu.dim();
    check_dim(n, x.len())?;
    check_dim(n, y.len())?;
    let mut out = vec![ZERO; n];
    for (i, &xi) in x.iter().enumerate() {
        if xi == ZERO {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            let w = xi * yj;
            if w == ZERO {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                *o += w * mu.get(i, j, k);
            }
        }
    }
    Ok(out)
}

/// Frobenius norm of the Jacobiator `J(X_i, X_j, X_k)` over all basis
/// triples. Zero exactly when `mu` is a Lie bracket.
pub fn jacobi_residual(mu: &StructureTensor) -> f64 {
    let n = mu.dim();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for s in 0..n {
                    let mut acc = ZERO;
                    for p in 0..n {
                        acc += mu.get(i, j, p) * mu.get(p, k, s)
                            + mu.get(j, k, p) * mu.get(p, i, s)
                            + mu.get(k, i, p) * mu.get(p, j, s);
                    }
                    total += acc.norm_sqr();
                }
            }
        }
    }
    total.sqrt()
}

/// `g.mu(X, Y) = g mu(g^{-1} X, g^{-1} Y)`.
pub fn act(g: &ComplexMatrix, mu: &StructureTensor) -> Result<StructureTensor> {
    act_with_bound(g, mu, DEFAULT_MAX_CONDITION)
}

pub fn act_with_bound(
    g: &ComplexMatrix,
    mu: &StructureTensor,
    max_condition: f64,
) -> Result<StructureTensor> {
    let n = mu.dim();
    check_dim(n, g.dim())?;
    let cond = g.condition_number();
    if !cond.is_finite() || cond > max_condition {
        return Err(Error::Singular(cond));
    }
    let h = g.try_inverse().ok_or(Error::Singular(f64::INFINITY))?;
    Ok(act_with_inverse(g, &h, mu))
}

/// [`act`] with a precomputed inverse `h = g^{-1}`; no conditioning checks.
pub(crate) fn act_with_inverse(
    g: &ComplexMatrix,
    h: &ComplexMatrix,
    mu: &StructureTensor,
) -> StructureTensor {
    let n = mu.dim();
    let (g, h) = (g.matrix(), h.matrix());
    // t1[i][q][s] = sum_p h[p,i] c[p,q,s]
    let mut t1 = vec![ZERO; n * n * n];
    for i in 0..n {
        for p in 0..n {
            let w = h[(p, i)];
            if w == ZERO {
                continue;
            }
            for q in 0..n {
                for s in 0..n {
                    t1[(i * n + q) * n + s] += w * mu.get(p, q, s);
                }
            }
        }
    }
    // t2[i][j][s] = sum_q h[q,j] t1[i][q][s]
    let mut t2 = vec![ZERO; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for q in 0..n {
                let w = h[(q, j)];
                if w == ZERO {
                    continue;
                }
                for s in 0..n {
                    t2[(i * n + j) * n + s] += w * t1[(i * n + q) * n + s];
                }
            }
        }
    }
    StructureTensor::from_fn(n, |i, j, k| {
        (0..n).map(|s| g[(k, s)] * t2[(i * n + j) * n + s]).sum()
    })
}

/// Hermitian inner product summed over all ordered triples, linear in the
/// first argument.
pub fn inner_product(mu: &StructureTensor, lambda: &StructureTensor) -> Result<C64> {
    check_dim(mu.dim(), lambda.dim())?;
    Ok(mu
        .coefficients()
        .iter()
        .zip(lambda.coefficients())
        .map(|(a, b)| a * b.conj())
        .sum())
}

/// `delta_mu(A) = mu(A., .) + mu(., A.) - A mu(., .)`.
pub fn delta(mu: &StructureTensor, a: &ComplexMatrix) -> Result<StructureTensor> {
    let n = mu.dim();
    check_dim(n, a.dim())?;
    let a = a.matrix();
    Ok(StructureTensor::from_fn(n, |i, j, k| {
        let mut acc = ZERO;
        for p in 0..n {
            acc += a[(p, i)] * mu.get(p, j, k) + a[(p, j)] * mu.get(i, p, k)
                - a[(k, p)] * mu.get(i, j, p);
        }
        acc
    }))
}

/// Adjoint of [`delta`]: `<lambda, delta_mu(A)> = (delta_mu^*(lambda), A)`
/// with `(A, B) = tr(A B^*)`.
pub fn delta_star(mu: &StructureTensor, lambda: &StructureTensor) -> Result<ComplexMatrix> {
    let n = mu.dim();
    check_dim(n, lambda.dim())?;
    Ok(ComplexMatrix::from_fn(n, |a, b| {
        let mut acc = ZERO;
        for x in 0..n {
            for y in 0..n {
                acc += lambda.get(b, x, y) * mu.get(a, x, y).conj()
                    + lambda.get(x, b, y) * mu.get(x, a, y).conj()
                    - lambda.get(x, y, a) * mu.get(x, y, b).conj();
            }
        }
        acc
    }))
}

/// Matrix of `A -> delta_mu(A)` from column-major `vec(A)` to the independent
/// (`i < j`) coefficients.
fn delta_operator(mu: &StructureTensor) -> DMatrix<C64> {
    let n = mu.dim();
    let rows = n * n.saturating_sub(1) / 2 * n;
    let mut m = DMatrix::zeros(rows, n * n);
    let mut r = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                for a in 0..n {
                    // delta(E_ab)_{ij}^k = [b=i] c_{aj}^k + [b=j] c_{ia}^k - [k=a] c_{ij}^b
                    m[(r, a + i * n)] += mu.get(a, j, k);
                    m[(r, a + j * n)] += mu.get(i, a, k);
                    for b in 0..n {
                        if k == a {
                            m[(r, a + b * n)] -= mu.get(i, j, b);
                        }
                    }
                }
                r += 1;
            }
        }
    }
    m
}

/// Orthonormal basis of the real space of hermitian `n x n` matrices with
/// respect to `Re tr(A B^*)`.
pub(crate) fn hermitian_basis(n: usize) -> Vec<HermitianMatrix> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        let mut m = DMatrix::zeros(n, n);
        m[(i, i)] = ONE;
        out.push(HermitianMatrix::symmetrized(m));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut m = DMatrix::zeros(n, n);
            m[(i, j)] = C64::new(s, 0.0);
            m[(j, i)] = C64::new(s, 0.0);
            out.push(HermitianMatrix::symmetrized(m));
            let mut m = DMatrix::zeros(n, n);
            m[(i, j)] = C64::new(0.0, s);
            m[(j, i)] = C64::new(0.0, -s);
            out.push(HermitianMatrix::symmetrized(m));
        }
    }
    out
}

/// Spanning data for `Der(mu)`.
#[derive(Clone, Debug)]
pub struct DerivationBasis {
    /// Basis of `Der(mu)` over C.
    pub complex: Vec<ComplexMatrix>,
    /// Basis of `Der(mu) ∩ i·u(n)` over R, orthonormal for `Re tr(A B^*)`.
    pub hermitian: Vec<HermitianMatrix>,
    pub complex_dim: usize,
    pub hermitian_dim: usize,
}

/// Nullspace of `A -> delta_mu(A)`, over C and restricted to hermitian
/// matrices over R.
pub fn derivation_algebra(mu: &StructureTensor, tol: f64) -> DerivationBasis {
    let n = mu.dim();
    let op = delta_operator(mu);
    let complex: Vec<ComplexMatrix> = complex_nullspace(&op, tol)
        .into_iter()
        .map(|v| ComplexMatrix::from_fn(n, |a, b| v[a + b * n]))
        .collect();
    let hermitian = hermitian_derivations_with(mu, &op, tol);
    DerivationBasis {
        complex_dim: complex.len(),
        hermitian_dim: hermitian.len(),
        complex,
        hermitian,
    }
}

/// Only the hermitian part of [`derivation_algebra`]; this is what the
/// criticality test needs at every flow step.
pub fn hermitian_derivations(mu: &StructureTensor, tol: f64) -> Vec<HermitianMatrix> {
    hermitian_derivations_with(mu, &delta_operator(mu), tol)
}

fn hermitian_derivations_with(
    mu: &StructureTensor,
    op: &DMatrix<C64>,
    tol: f64,
) -> Vec<HermitianMatrix> {
    let n = mu.dim();
    let basis = hermitian_basis(n);
    let rows = op.nrows();
    // Real system: [Re; Im] of delta(B_a) for each real basis element B_a.
    let mut real = DMatrix::<f64>::zeros(2 * rows, basis.len());
    for (c, b) in basis.iter().enumerate() {
        let v = DVector::from_iterator(n * n, (0..n * n).map(|idx| b.get(idx % n, idx / n)));
        let img = op * v;
        for r in 0..rows {
            real[(r, c)] = img[r].re;
            real[(rows + r, c)] = img[r].im;
        }
    }
    real_nullspace(&real, tol)
        .into_iter()
        .map(|t| {
            let mut m = DMatrix::<C64>::zeros(n, n);
            for (coef, b) in t.iter().zip(&basis) {
                m += b.matrix() * C64::new(*coef, 0.0);
            }
            HermitianMatrix::symmetrized(m)
        })
        .collect()
}

/// Structural invariants. Lie-only fields are `None` for non-Lie input.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureInvariants {
    pub dim: usize,
    pub is_lie: bool,
    pub jacobi_residual: f64,
    pub dim_der: usize,
    pub dim_derived: usize,
    pub dim_center: Option<usize>,
    pub nilpotent: Option<bool>,
    pub solvable: Option<bool>,
    pub semisimple: Option<bool>,
}

const SPAN_TOL: f64 = 1e-9;
const KILLING_TOL: f64 = 1e-8;

fn basis_vectors(n: usize) -> Vec<DVector<C64>> {
    (0..n)
        .map(|i| DVector::from_fn(n, |r, _| if r == i { ONE } else { ZERO }))
        .collect()
}

fn bracket_vec(mu: &StructureTensor, x: &DVector<C64>, y: &DVector<C64>) -> DVector<C64> {
    DVector::from_vec(bracket_eval(mu, x.as_slice(), y.as_slice()).expect("dims agree"))
}

/// `span{mu(u, v) : u in a, v in b}` as an orthonormal basis.
fn bracket_span(mu: &StructureTensor, a: &[DVector<C64>], b: &[DVector<C64>]) -> Vec<DVector<C64>> {
    let mut vs = Vec::with_capacity(a.len() * b.len());
    for u in a {
        for v in b {
            vs.push(bracket_vec(mu, u, v));
        }
    }
    orthonormal_span(mu.dim(), &vs, SPAN_TOL)
}

pub fn structure_invariants(mu: &StructureTensor) -> StructureInvariants {
    let n = mu.dim();
    let unit = mu.normalized().unwrap_or_else(|_| mu.clone());
    let jac = jacobi_residual(&unit);
    let is_lie = jac <= 1e-8;
    let der = derivation_algebra(&unit, DEFAULT_NULLSPACE_TOL);
    let full = basis_vectors(n);
    let derived = bracket_span(&unit, &full, &full);
    let mut inv = StructureInvariants {
        dim: n,
        is_lie,
        jacobi_residual: jac,
        dim_der: der.complex_dim,
        dim_derived: derived.len(),
        dim_center: None,
        nilpotent: None,
        solvable: None,
        semisimple: None,
    };
    if !is_lie {
        return inv;
    }

    // Center: X with mu(X, X_j) = 0 for all j.
    let center_op = DMatrix::from_fn(n * n, n, |r, i| unit.get(i, r / n, r % n));
    inv.dim_center = Some(if n == 0 {
        0
    } else {
        n - rank(&center_op, SPAN_TOL).min(n)
    });

    // Lower central series C^{k+1} = [g, C^k].
    let mut lower = full.clone();
    loop {
        let next = bracket_span(&unit, &full, &lower);
        if next.is_empty() || next.len() == lower.len() {
            inv.nilpotent = Some(next.is_empty());
            break;
        }
        lower = next;
    }

    // Derived series D^{k+1} = [D^k, D^k].
    let mut series = full.clone();
    loop {
        let next = bracket_span(&unit, &series, &series);
        if next.is_empty() || next.len() == series.len() {
            inv.solvable = Some(next.is_empty());
            break;
        }
        series = next;
    }

    // Killing form B(X_i, X_j) = tr(ad X_i ad X_j).
    let ads: Vec<_> = (0..n).map(|i| unit.ad_basis(i)).collect();
    let killing = DMatrix::from_fn(n, n, |i, j| (&ads[i] * &ads[j]).trace());
    let sv = killing.singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    inv.semisimple = Some(n == 0 || (smax > 0.0 && smin > KILLING_TOL * smax));
    inv
}

/// Block sum `mu ⊕ c·lambda` on `C^{n+m}`; mixed brackets vanish.
pub fn direct_sum(mu: &StructureTensor, lambda: &StructureTensor, c: f64) -> StructureTensor {
    let (n, m) = (mu.dim(), lambda.dim());
    let cc = C64::new(c, 0.0);
    StructureTensor::from_fn(n + m, |i, j, k| {
        if i < n && j < n && k < n {
            mu.get(i, j, k)
        } else if i >= n && j >= n && k >= n {
            cc * lambda.get(i - n, j - n, k - n)
        } else {
            ZERO
        }
    })
}

/// Tolerance used for the derivation and closure preconditions of
/// [`semidirect_extension`], relative to the natural scale of each check.
pub const SEMIDIRECT_TOL: f64 = 1e-9;

fn vectorize(a: &ComplexMatrix) -> DVector<C64> {
    DVector::from_iterator(a.dim() * a.dim(), a.matrix().iter().cloned())
}

/// Bracket of `r ⋉ lambda` where `r = span(gens) ⊂ Der(lambda)`.
///
/// The basis of `r` is replaced by one orthonormal for
/// `<A, B> = -4/c_lambda (1/2 tr(ad A (ad B)^*) + tr(A B^*))`, with `ad` the
/// adjoint representation of `r` and `*` taken for `tr(A B^*)`; the result
/// lives on `C^{d + m}` with the `r` directions first.
pub fn semidirect_extension(
    lambda: &StructureTensor,
    gens: &[ComplexMatrix],
    c_lambda: f64,
) -> Result<StructureTensor> {
    let m = lambda.dim();
    if lambda.is_zero() {
        return Err(Error::Semidirect("lambda is the zero bracket".into()));
    }
    if gens.is_empty() {
        return Ok(lambda.clone());
    }
    if c_lambda >= 0.0 || !c_lambda.is_finite() {
        return Err(Error::Semidirect(format!(
            "c_lambda must be negative, got {c_lambda}"
        )));
    }
    let lnorm = lambda.norm();
    for (idx, a) in gens.iter().enumerate() {
        check_dim(m, a.dim())?;
        let scale = a.norm() * lnorm;
        if delta(lambda, a)?.norm() > SEMIDIRECT_TOL * scale {
            return Err(Error::Semidirect(format!(
                "generator {idx} is not a derivation"
            )));
        }
        if delta(lambda, &a.adjoint())?.norm() > SEMIDIRECT_TOL * scale {
            return Err(Error::Semidirect(format!(
                "adjoint of generator {idx} is not a derivation"
            )));
        }
    }

    // Orthonormalize for tr(A B^*) first so that the adjoint of ad on r is the
    // conjugate transpose of its coordinate matrix.
    let raw: Vec<DVector<C64>> = gens.iter().map(vectorize).collect();
    let d = gens.len();
    let gram1 = DMatrix::from_fn(d, d, |a, b| raw[a].dotc(&raw[b]).conj());
    let gram1 = HermitianMatrix::symmetrized(gram1);
    if gram1.eigenvalues()[0] <= 1e-12 * gram1.norm() {
        return Err(Error::Semidirect(
            "generators are linearly dependent".into(),
        ));
    }
    let basis1 = recombine(gens, &gram1.map_spectrum(|x| 1.0 / x.sqrt()));
    let vecs1: Vec<DVector<C64>> = basis1.iter().map(vectorize).collect();

    // Structure constants of r in basis1; also certifies closure.
    let mut ad = vec![DMatrix::<C64>::zeros(d, d); d];
    for a in 0..d {
        for b in 0..d {
            let br = basis1[a].commutator(&basis1[b]);
            let (coeffs, resid) = least_squares(&vecs1, &vectorize(&br));
            if resid > SEMIDIRECT_TOL * basis1[a].norm() * basis1[b].norm() {
                return Err(Error::Semidirect(format!(
                    "span of generators is not closed under the bracket (residual {resid:e})"
                )));
            }
            for e in 0..d {
                ad[a][(e, b)] = coeffs[e];
            }
        }
    }

    let factor = -4.0 / c_lambda;
    let gram = DMatrix::from_fn(d, d, |a, b| {
        let ad_term: C64 = (&ad[a] * ad[b].adjoint()).trace();
        let mat_term = basis1[a].inner(&basis1[b]);
        C64::new(factor, 0.0) * (ad_term * 0.5 + mat_term)
    });
    let gram = HermitianMatrix::symmetrized(gram);
    let basis = recombine(&basis1, &gram.map_spectrum(|x| 1.0 / x.sqrt()));
    let vecs: Vec<DVector<C64>> = basis.iter().map(vectorize).collect();

    let n = d + m;
    let mut mu = StructureTensor::zeros(n);
    for a in 0..d {
        for b in (a + 1)..d {
            let br = basis[a].commutator(&basis[b]);
            let (coeffs, _) = least_squares(&vecs, &vectorize(&br));
            for e in 0..d {
                mu.set(a, b, e, coeffs[e]);
            }
        }
        for j in 0..m {
            for k in 0..m {
                mu.set(a, d + j, d + k, basis[a].get(k, j));
            }
        }
    }
    for i in 0..m {
        for j in (i + 1)..m {
            for k in 0..m {
                mu.set(d + i, d + j, d + k, lambda.get(i, j, k));
            }
        }
    }
    Ok(mu)
}

/// New basis `B_b = sum_a A_a conj(S)_{ab}`; with `S = G^{-1/2}` for the Gram
/// matrix `G_{ab} = <A_a, A_b>` this is orthonormal.
fn recombine(gens: &[ComplexMatrix], s: &HermitianMatrix) -> Vec<ComplexMatrix> {
    let d = gens.len();
    (0..d)
        .map(|b| {
            let mut acc = ComplexMatrix::zeros(gens[0].dim());
            for (a, g) in gens.iter().enumerate() {
                acc = acc.add(&g.scale(s.get(a, b).conj()));
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn e(n: usize, i: usize) -> Vec<C64> {
        (0..n).map(|r| if r == i { ONE } else { ZERO }).collect()
    }

    #[test]
    fn bracket_of_heisenberg_and_sl2() {
        let n3 = catalog::table1("n3+C", &[]).unwrap().tensor;
        assert_eq!(bracket_eval(&n3, &e(4, 0), &e(4, 1)).unwrap(), e(4, 2));
        let sl2 = catalog::table1("sl2+C", &[]).unwrap().tensor;
        let v = bracket_eval(&sl2, &e(4, 0), &e(4, 2)).unwrap();
        assert_eq!(v, e(4, 0).iter().map(|z| z * -2.0).collect::<Vec<_>>());
        let zero = StructureTensor::zeros(3);
        assert_eq!(
            bracket_eval(&zero, &e(3, 0), &e(3, 2)).unwrap(),
            vec![ZERO; 3]
        );
    }

    #[test]
    fn bracket_dimension_mismatch() {
        let t = StructureTensor::zeros(3);
        assert!(matches!(
            bracket_eval(&t, &e(2, 0), &e(3, 0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn delta_identity_and_heisenberg_grading() {
        let he = catalog::mu_he(3).unwrap().tensor;
        let id = ComplexMatrix::identity(3);
        assert!(delta(&he, &id).unwrap().max_abs_diff(&he) < 1e-15);
        let d = ComplexMatrix::from_real_diagonal(&[1.0, 1.0, 2.0]);
        assert!(delta(&he, &d).unwrap().norm() < 1e-15);
    }

    #[test]
    fn delta_matches_operator_matrix() {
        let mu = catalog::random_tensor(4, 3);
        let a = crate::random::gaussian_matrix(4, 5);
        let direct = delta(&mu, &a).unwrap();
        let op = delta_operator(&mu);
        let v = op * vectorize(&a);
        for (x, y) in direct.upper_entries().iter().zip(v.iter()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn derivation_dimensions() {
        assert_eq!(
            derivation_algebra(&StructureTensor::zeros(3), 1e-9).complex_dim,
            9
        );
        let sl2 = catalog::sl2_compact().tensor;
        let der = derivation_algebra(&sl2, 1e-9);
        assert_eq!(der.complex_dim, 3);
        // ad X is skew-hermitian here, so i ad X spans the hermitian derivations.
        assert_eq!(der.hermitian_dim, 3);
        let mu_a = catalog::mu_a(&ComplexMatrix::identity(2)).tensor;
        assert_eq!(derivation_algebra(&mu_a, 1e-9).complex_dim, 6);
    }

    #[test]
    fn invariants_of_small_algebras() {
        let sl2 = structure_invariants(&catalog::sl2_compact().tensor);
        assert_eq!(sl2.semisimple, Some(true));
        assert_eq!(sl2.dim_center, Some(0));
        assert_eq!(sl2.dim_der, 3);
        let zero = structure_invariants(&StructureTensor::zeros(4));
        assert_eq!(zero.nilpotent, Some(true));
        assert_eq!(zero.dim_center, Some(4));
        let he = structure_invariants(&catalog::mu_he(3).unwrap().tensor);
        assert_eq!(he.nilpotent, Some(true));
        assert_eq!(he.dim_center, Some(1));
        assert_eq!(he.dim_derived, 1);
    }

    #[test]
    fn non_lie_is_flagged() {
        let inv = structure_invariants(&catalog::random_tensor(4, 1));
        assert!(!inv.is_lie);
        assert!(inv.nilpotent.is_none());
    }

    #[test]
    fn direct_sum_heisenberg_with_line() {
        let he3 = catalog::mu_he(3).unwrap().tensor;
        let sum = direct_sum(&he3, &StructureTensor::zeros(1), 1.0);
        assert_eq!(sum, catalog::mu_he(4).unwrap().tensor);
    }

    #[test]
    fn semidirect_rejects_bad_generators() {
        let he = catalog::mu_he(3).unwrap().tensor.normalized().unwrap();
        let not_der = ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 0.0]);
        assert!(semidirect_extension(&he, &[not_der], -6.0).is_err());
        let zero = StructureTensor::zeros(3);
        assert!(semidirect_extension(&zero, &[], -6.0).is_err());
        assert_eq!(semidirect_extension(&he, &[], -6.0).unwrap(), he);
        // Upper-triangular derivation whose adjoint is not a derivation.
        let nil = ComplexMatrix::from_real_rows(3, &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        assert!(delta(&he, &nil).unwrap().norm() < 1e-15);
        assert!(semidirect_extension(&he, &[nil], -6.0).is_err());
    }
}
