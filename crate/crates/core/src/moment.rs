//! The moment map `mu -> R_mu`, the functional `F = ||m||^2`, its gradient,
//! and the criticality test `R_mu = c I + D` with `D` a hermitian derivation.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::{delta, hermitian_derivations, DEFAULT_NULLSPACE_TOL};
use crate::classify::{extract_type, CriticalType};
use crate::error::{Error, Result};
use crate::linalg::{HermitianMatrix, C64};
use crate::tensor::StructureTensor;

/// Default criticality tolerance, relative to `||R_mu||`.
pub const DEFAULT_CRIT_TOL: f64 = 1e-8;

/// `R_mu = -4 sum (ad X_i)^* ad X_i + 2 sum ad X_i (ad X_i)^*`.
pub fn moment_map(mu: &StructureTensor) -> HermitianMatrix {
    let n = mu.dim();
    let mut r = DMatrix::<C64>::zeros(n, n);
    for i in 0..n {
        let ad = mu.ad_basis(i);
        let ad_h = ad.adjoint();
        r += (&ad_h * &ad) * C64::new(-4.0, 0.0) + (&ad * &ad_h) * C64::new(2.0, 0.0);
    }
    HermitianMatrix::symmetrized(r)
}

/// `R_nu - R_mu`, computed from `nu - mu` so that it stays accurate when the
/// two tensors are close.
pub fn moment_map_difference(mu: &StructureTensor, nu: &StructureTensor) -> HermitianMatrix {
    let n = mu.dim();
    let d = nu.sub(mu);
    let s = nu.add(mu);
    let mut r = DMatrix::<C64>::zeros(n, n);
    for i in 0..n {
        let (a, b) = (d.ad_basis(i), s.ad_basis(i));
        let (ah, bh) = (a.adjoint(), b.adjoint());
        r += (&ah * &b + &bh * &a) * C64::new(-2.0, 0.0)
            + (&a * &bh + &b * &ah) * C64::new(1.0, 0.0);
    }
    HermitianMatrix::symmetrized(r)
}

/// `F(nu) - F(mu)` for the scale-invariant functional, without cancellation.
pub fn scalar_f_difference(mu: &StructureTensor, nu: &StructureTensor) -> f64 {
    let (r0, r1) = (moment_map(mu), moment_map(nu));
    let dr = moment_map_difference(mu, nu);
    let (a0, b0) = (r0.trace_product(&r0), r0.trace());
    let b1 = r1.trace();
    let da = dr.trace_product(&r1.add(&r0));
    let db = dr.trace();
    4.0 * (da * b0 * b0 - a0 * db * (b1 + b0)) / (b0 * b0 * b1 * b1)
}

/// Scale-invariant `F([mu]) = 4 tr R^2 / (tr R)^2`.
pub fn scalar_f(mu: &StructureTensor) -> Result<f64> {
    if mu.is_zero() {
        return Err(Error::ZeroTensor("scalar_F"));
    }
    let r = moment_map(mu);
    let tr = r.trace();
    Ok(4.0 * r.trace_product(&r) / (tr * tr))
}

/// `tr R_mu^2` without normalization; equals `scalar_f` on the unit sphere.
pub fn trace_r_squared(mu: &StructureTensor) -> f64 {
    let r = moment_map(mu);
    r.trace_product(&r)
}

/// Ambient gradient `-8 delta_mu(R_mu)` of `mu -> tr R_mu^2` for the real
/// inner product `Re <., .>`.
pub fn gradient(mu: &StructureTensor) -> StructureTensor {
    ambient_gradient(mu, &moment_map(mu))
}

pub(crate) fn ambient_gradient(mu: &StructureTensor, r: &HermitianMatrix) -> StructureTensor {
    delta(mu, &r.to_complex())
        .expect("dimensions agree")
        .scale_real(-8.0)
}

/// Component of `v` tangent to the sphere through `mu`:
/// `v - Re<v, mu> mu / ||mu||^2`.
pub fn tangential(v: &StructureTensor, mu: &StructureTensor) -> StructureTensor {
    let nsq = mu.norm_sqr();
    if nsq == 0.0 {
        return v.clone();
    }
    let re: f64 = v
        .coefficients()
        .iter()
        .zip(mu.coefficients())
        .map(|(a, b)| (a * b.conj()).re)
        .sum();
    v.axpy(C64::new(-re / nsq, 0.0), mu)
}

/// Outcome of the criticality test at the unit-norm representative.
#[derive(Clone, Debug)]
pub struct CriticalReport {
    pub c_mu: f64,
    pub d_mu: HermitianMatrix,
    /// Frobenius distance from `R_mu` to `span_R{I} ⊕ (Der(mu) ∩ herm)`.
    pub residual: f64,
    pub f_value: f64,
    pub is_critical: bool,
    /// Number of independent hermitian derivations found.
    pub hermitian_derivations: usize,
}

impl CriticalReport {
    pub fn d_eigenvalues(&self) -> Vec<f64> {
        self.d_mu.eigenvalues()
    }

    /// The critical type of `D_mu`, when the point is critical.
    pub fn critical_type(&self, tol: f64) -> Option<CriticalType> {
        if !self.is_critical {
            return None;
        }
        extract_type(&self.d_mu, tol).ok()
    }

    pub fn to_json(&self, ty: Option<&CriticalType>) -> CriticalReportJson {
        CriticalReportJson {
            c_mu: self.c_mu,
            d_eigenvalues: self.d_eigenvalues(),
            residual: self.residual,
            f: self.f_value,
            is_critical: self.is_critical,
            ty: ty.map(CriticalType::to_json),
        }
    }
}

#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq)]
pub struct CriticalReportJson {
    pub c_mu: f64,
    #[serde(rename = "D_eigenvalues")]
    pub d_eigenvalues: Vec<f64>,
    pub residual: f64,
    #[serde(rename = "F")]
    pub f: f64,
    pub is_critical: bool,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none", default)]
    pub ty: Option<crate::classify::TypeJson>,
}

pub fn criticality(mu: &StructureTensor, tol: f64) -> Result<CriticalReport> {
    criticality_with(mu, tol, DEFAULT_NULLSPACE_TOL)
}

/// Criticality with an explicit nullspace threshold for the hermitian
/// derivation computation.
pub fn criticality_with(
    mu: &StructureTensor,
    tol: f64,
    nullspace_tol: f64,
) -> Result<CriticalReport> {
    let unit = mu
        .normalized()
        .map_err(|_| Error::ZeroTensor("criticality"))?;
    let r = moment_map(&unit);
    let ders = hermitian_derivations(&unit, nullspace_tol);
    Ok(report_from(&unit, &r, &ders, tol))
}

pub(crate) fn report_from(
    unit: &StructureTensor,
    r: &HermitianMatrix,
    ders: &[HermitianMatrix],
    tol: f64,
) -> CriticalReport {
    let n = unit.dim();
    let residual = projection_residual(r, ders);
    let tr = r.trace();
    let tr2 = r.trace_product(r);
    let c_mu = tr2 / tr;
    let d_mu = r.shift(-c_mu);
    CriticalReport {
        c_mu,
        d_mu,
        residual,
        f_value: tr2,
        is_critical: residual <= tol * r.norm(),
        hermitian_derivations: ders.len().min(n * n),
    }
}

/// Distance from `r` to `span_R{I} ⊕ span_R(ders)`; `ders` must be
/// orthonormal for `Re tr(A B^*)`.
fn projection_residual(r: &HermitianMatrix, ders: &[HermitianMatrix]) -> f64 {
    let n = r.dim();
    let mut rem = r.clone();
    for d in ders {
        rem = rem.sub(&d.scale(rem.trace_product(d)));
    }
    // Component of I orthogonal to the derivations.
    let mut id = HermitianMatrix::identity(n);
    for d in ders {
        id = id.sub(&d.scale(id.trace_product(d)));
    }
    let idn = id.norm();
    if idn > 1e-12 * (n as f64).sqrt() {
        let u = id.scale(1.0 / idn);
        rem = rem.sub(&u.scale(rem.trace_product(&u)));
    }
    rem.norm()
}
