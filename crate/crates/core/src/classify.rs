//! Critical types: extraction from the derivation part of a critical moment
//! map, exact critical values, abelian-factor composition, `h_alpha`,
//! `V_alpha` membership and the nilpotent normal-form type rule.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::algebra::delta;
use crate::catalog;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianMatrix};
use crate::moment::criticality;
use crate::tensor::StructureTensor;

/// Default clustering / relation tolerance for [`extract_type`].
pub const DEFAULT_TYPE_TOL: f64 = 1e-6;

/// Denominator bound for rational reconstruction.
pub const MAX_DENOMINATOR: i64 = 1_000_000;

/// `(k_1 < ... < k_r; d_1, ..., d_r)`: coprime nonnegative eigenvalues of the
/// rescaled derivation part with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CriticalType {
    ks: Vec<u64>,
    ds: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeJson {
    pub ks: Vec<u64>,
    pub ds: Vec<usize>,
}

fn gcd_all(ks: &[u64]) -> u64 {
    ks.iter().fold(0u64, |g, &k| g.gcd(&k))
}

impl CriticalType {
    pub fn new(ks: Vec<u64>, ds: Vec<usize>) -> Result<Self> {
        if ks.is_empty() || ks.len() != ds.len() {
            return Err(Error::InvalidType(format!(
                "{} eigenvalues but {} multiplicities",
                ks.len(),
                ds.len()
            )));
        }
        if ks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidType(
                "eigenvalues must be strictly increasing".into(),
            ));
        }
        if ds.contains(&0) {
            return Err(Error::InvalidType("multiplicities must be positive".into()));
        }
        let zero_type = ks == [0];
        if !zero_type && gcd_all(&ks) != 1 {
            return Err(Error::InvalidType(format!(
                "eigenvalues {ks:?} are not coprime"
            )));
        }
        Ok(Self { ks, ds })
    }

    /// The type `(0; n)` of critical points with `R_mu` scalar.
    pub fn zero(n: usize) -> Self {
        Self {
            ks: vec![0],
            ds: vec![n],
        }
    }

    pub fn ks(&self) -> &[u64] {
        &self.ks
    }

    pub fn ds(&self) -> &[usize] {
        &self.ds
    }

    pub fn dim(&self) -> usize {
        self.ds.iter().sum()
    }

    pub fn is_zero_type(&self) -> bool {
        self.ks == [0]
    }

    /// `k_1 > 0`, which singles out nilpotent critical points.
    pub fn is_nilpotent_type(&self) -> bool {
        self.ks[0] > 0
    }

    /// `(sum k_i d_i, sum k_i^2 d_i)`
    pub fn moments(&self) -> (i64, i64) {
        self.ks
            .iter()
            .zip(&self.ds)
            .fold((0, 0), |(s1, s2), (&k, &d)| {
                let (k, d) = (k as i64, d as i64);
                (s1 + k * d, s2 + k * k * d)
            })
    }

    pub fn to_json(&self) -> TypeJson {
        TypeJson {
            ks: self.ks.clone(),
            ds: self.ds.clone(),
        }
    }

    pub fn from_json(j: &TypeJson) -> Result<Self> {
        Self::new(j.ks.clone(), j.ds.clone())
    }

    /// The diagonal matrix `D_alpha = diag(k_1 I_{d_1}, ..., k_r I_{d_r})`.
    pub fn d_alpha(&self) -> HermitianMatrix {
        let diag: Vec<f64> = self
            .ks
            .iter()
            .zip(&self.ds)
            .flat_map(|(&k, &d)| std::iter::repeat_n(k as f64, d))
            .collect();
        HermitianMatrix::from_diagonal(&diag)
    }
}

impl fmt::Display for CriticalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ks: Vec<String> = self.ks.iter().map(|k| k.to_string()).collect();
        let ds: Vec<String> = self.ds.iter().map(|d| d.to_string()).collect();
        write!(f, "({};{})", ks.join("<"), ds.join(","))
    }
}

impl FromStr for CriticalType {
    type Err = Error;

    /// Parses the `(k1<k2<...;d1,d2,...)` notation.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("type `{s}` must be parenthesized")))?;
        let (ks, ds) = body
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("type `{s}` lacks `;`")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("{x}: {e}")))
        };
        let ks = ks.split('<').map(parse).collect::<Result<Vec<_>>>()?;
        let ds = ds
            .split(',')
            .map(|x| parse(x).map(|v| v as usize))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ks, ds)
    }
}

/// Best rational approximation of `x` by continued-fraction convergents with
/// denominator at most `max_den`.
pub fn rationalize(x: f64, max_den: i64) -> Ratio<i64> {
    let sign = if x < 0.0 { -1 } else { 1 };
    let mut y = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    for _ in 0..64 {
        let a = y.floor();
        if a > i64::MAX as f64 / 4.0 {
            break;
        }
        let a = a as i64;
        let (p2, q2) = (
            a.saturating_mul(p1).saturating_add(p0),
            a.saturating_mul(q1).saturating_add(q0),
        );
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = y - a as f64;
        if frac.abs() < 1e-12 || (x.abs() - p1 as f64 / q1 as f64).abs() <= 1e-12 * x.abs().max(1.0)
        {
            break;
        }
        y = 1.0 / frac;
    }
    if q1 == 0 {
        return Ratio::from_integer(0);
    }
    Ratio::new(sign * p1, q1)
}

/// Single-linkage clusters of ascending values: `(mean, multiplicity)`.
fn cluster(values: &[f64], gap: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize, f64)> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some((sum, count, last)) if v - *last <= gap => {
                *sum += v;
                *count += 1;
                *last = v;
            }
            _ => out.push((v, 1, v)),
        }
    }
    out.into_iter().map(|(s, c, _)| (s / c as f64, c)).collect()
}

/// Rows `e_i + e_j - e_k` for every relation `c_i + c_j = c_k` (with
/// `i <= j`), reduced to a maximal independent subset.
fn relation_basis(cs: &[f64], tol: f64) -> Vec<DVector<f64>> {
    let r = cs.len();
    let scale = cs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut basis: Vec<DVector<f64>> = Vec::new();
    // Gram-Schmidt copies used only for the independence test.
    let mut ortho: Vec<DVector<f64>> = Vec::new();
    for i in 0..r {
        for j in i..r {
            for k in 0..r {
                if (cs[i] + cs[j] - cs[k]).abs() > tol * scale {
                    continue;
                }
                let mut row = DVector::zeros(r);
                row[i] += 1.0;
                row[j] += 1.0;
                row[k] -= 1.0;
                let mut w = row.clone();
                for o in &ortho {
                    let proj = w.dot(o);
                    w -= o * proj;
                }
                if w.norm() > 1e-9 {
                    ortho.push(&w / w.norm());
                    basis.push(row);
                }
            }
        }
    }
    basis
}

/// Type of a critical point from the derivation part `D` of its moment map
/// (computed at the unit-norm representative).
///
/// Eigenvalues are clustered, the relation set among the clusters is turned
/// into the rational direction `1 - W^{-1} E^t (E W^{-1} E^t)^{-1} 1` with `W`
/// the diagonal of multiplicities, and that direction is
/// scaled to coprime integers after continued-fraction reconstruction.
pub fn extract_type(d: &HermitianMatrix, tol: f64) -> Result<CriticalType> {
    let n = d.dim();
    let eig = d.eigenvalues();
    let scale = eig.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if n == 0 {
        return Err(Error::TypeExtraction("empty matrix".into()));
    }
    if scale <= tol {
        return Ok(CriticalType::zero(n));
    }
    let clusters = cluster(&eig, tol * scale);
    let cs: Vec<f64> = clusters.iter().map(|c| c.0).collect();
    let ds: Vec<usize> = clusters.iter().map(|c| c.1).collect();
    let r = cs.len();

    let rows = relation_basis(&cs, tol);
    let ones = DVector::from_element(r, 1.0);
    let direction = if rows.is_empty() {
        ones.clone()
    } else {
        // Orthogonality holds for the trace form, which weights each
        // eigenvalue by its multiplicity.
        let e = DMatrix::from_fn(rows.len(), r, |p, c| rows[p][c]);
        let winv = DMatrix::from_diagonal(&DVector::from_iterator(
            r,
            ds.iter().map(|&d| 1.0 / d as f64),
        ));
        let wet = &winv * e.transpose();
        let sol = (&e * &wet)
            .lu()
            .solve(&DVector::from_element(rows.len(), 1.0))
            .ok_or_else(|| Error::TypeExtraction("singular relation system".into()))?;
        &ones - wet * sol
    };

    let rats: Vec<Ratio<i64>> = direction
        .iter()
        .map(|&x| rationalize(x, MAX_DENOMINATOR))
        .collect();
    let lcm = rats.iter().fold(1i64, |l, q| l.lcm(q.denom()));
    let ints: Vec<i64> = rats.iter().map(|q| (q * lcm).to_integer()).collect();
    if let Some(neg) = ints.iter().find(|&&k| k < 0) {
        return Err(Error::TypeExtraction(format!(
            "negative eigenvalue {neg} in rational direction (input is not critical)"
        )));
    }
    let g = ints.iter().fold(0i64, |g, &k| g.gcd(&k));
    if g == 0 {
        return Err(Error::TypeExtraction("rational direction vanishes".into()));
    }
    let ks: Vec<u64> = ints.iter().map(|&k| (k / g) as u64).collect();

    // Cross-check: the integer vector must be parallel to the eigenvalues.
    let kv = DVector::from_iterator(r, ks.iter().map(|&k| k as f64));
    let cv = DVector::from_vec(cs.clone());
    let mismatch = (&kv * cv.norm() - &cv * kv.norm()).norm() / (kv.norm() * cv.norm());
    if !(mismatch <= tol.max(1e-12) * 10.0) {
        return Err(Error::TypeExtraction(format!(
            "eigenvalues {cs:?} are not parallel to {ks:?} (mismatch {mismatch:e})"
        )));
    }
    CriticalType::new(ks, ds)
}

/// Exact critical value `4 (n - (sum k d)^2 / sum k^2 d)^{-1}`, or `4/n` for
/// the type `(0; n)`.
pub fn critical_value(t: &CriticalType) -> Ratio<i64> {
    let n = t.dim() as i64;
    if t.is_zero_type() {
        return Ratio::new(4, n);
    }
    let (s1, s2) = t.moments();
    Ratio::new(4 * s2, n * s2 - s1 * s1)
}

/// `p/q` rendering used in machine output.
pub fn fraction_string(q: &Ratio<i64>) -> String {
    if q.is_integer() {
        return q.numer().to_string();
    }
    format!("{}/{}", q.numer(), q.denom())
}

/// Type of `[mu ⊕ lambda]` for a critical `mu` of type `t` and abelian
/// `lambda` of dimension `m`.
pub fn abelian_sum_type(t: &CriticalType, m: usize) -> CriticalType {
    if m == 0 {
        return t.clone();
    }
    if t.is_zero_type() {
        return CriticalType {
            ks: vec![0, 1],
            ds: vec![t.dim(), m],
        };
    }
    let (s1, s2) = t.moments();
    let d = s1.gcd(&s2);
    let a = (s1 / d) as u64;
    let new_k = (s2 / d) as u64;
    let mut pairs: Vec<(u64, usize)> =
        t.ks.iter()
            .zip(&t.ds)
            .map(|(&k, &dd)| (a * k, dd))
            .collect();
    match pairs.iter_mut().find(|(k, _)| *k == new_k) {
        Some(p) => p.1 += m,
        None => pairs.push((new_k, m)),
    }
    pairs.sort_by_key(|p| p.0);
    let g = gcd_all(&pairs.iter().map(|p| p.0).collect::<Vec<_>>()).max(1);
    CriticalType {
        ks: pairs.iter().map(|p| p.0 / g).collect(),
        ds: pairs.iter().map(|p| p.1).collect(),
    }
}

/// `h_alpha = -(sum k^2 d)/(sum k d) I + D_alpha`; the zero matrix for `(0; n)`.
pub fn h_alpha(t: &CriticalType) -> HermitianMatrix {
    if t.is_zero_type() {
        return HermitianMatrix::zeros(t.dim());
    }
    let (s1, s2) = t.moments();
    t.d_alpha().shift(-(s2 as f64) / (s1 as f64))
}

/// Whether `D_alpha` is a derivation of `mu` (basis ordered as in the type).
pub fn v_alpha_membership(mu: &StructureTensor, t: &CriticalType, tol: f64) -> Result<bool> {
    if t.dim() != mu.dim() {
        return Err(Error::DimensionMismatch {
            expected: mu.dim(),
            found: t.dim(),
        });
    }
    let residual = delta(mu, &t.d_alpha().to_complex())?.norm();
    Ok(residual <= tol * mu.norm())
}

/// `theta = 1 + sum n_i (n_i + 1)(n_i + 2) / 12`
fn theta(partition: &[usize]) -> Ratio<i64> {
    let s: i64 = partition
        .iter()
        .map(|&p| (p * (p + 1) * (p + 2)) as i64)
        .sum();
    Ratio::from_integer(1) + Ratio::new(s, 12)
}

/// Predicted eigenvalue sequence `k_1 < ... < k_r` for the critical point
/// `mu_{A_(n_1, ..., n_r)}`, following the three-case rule.
pub fn predicted_partition_ks(partition: &[usize]) -> Result<Vec<u64>> {
    validate_partition(partition)?;
    let th = theta(partition);
    let n1 = partition[0] as i64;
    let half = Ratio::new(1, 2);
    let mut values: Vec<Ratio<i64>> = Vec::new();
    let same_parity = partition.iter().all(|&p| p % 2 == partition[0] % 2);
    if same_parity {
        // (1 < theta - n1/2 < theta - n1/2 + 1 < ... < theta + n1/2)
        values.push(Ratio::from_integer(1));
        for j in 0..=n1 {
            values.push(th - half * n1 + j);
        }
    } else if n1 == 1 && partition[1..].iter().all(|&p| p == 0) {
        values.extend([2, 3, 4].map(Ratio::from_integer));
    } else {
        // (2 < ... < 2 theta + ...): every block contributes the string
        // 2 theta - n_i, 2 theta - n_i + 2, ..., 2 theta + n_i.
        values.push(Ratio::from_integer(2));
        let two_theta = th * 2;
        for &p in partition {
            let p = p as i64;
            for j in 0..=p {
                values.push(two_theta - p + 2 * j);
            }
        }
    }
    values.sort();
    values.dedup();
    let lcm = values.iter().fold(1i64, |l, q| l.lcm(q.denom()));
    let ints: Vec<i64> = values.iter().map(|q| (q * lcm).to_integer()).collect();
    let g = ints.iter().fold(0i64, |g, &k| g.gcd(&k)).max(1);
    Ok(ints.iter().map(|&k| (k / g) as u64).collect())
}

fn validate_partition(partition: &[usize]) -> Result<()> {
    if partition.is_empty() {
        return Err(Error::InvalidPartition("empty partition".into()));
    }
    if partition.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidPartition(format!(
            "{partition:?} is not non-increasing"
        )));
    }
    if partition[0] == 0 {
        return Err(Error::InvalidPartition("all blocks trivial (A = 0)".into()));
    }
    Ok(())
}

/// Tolerance used when certifying the numerically extracted partition type.
pub const PARTITION_CRIT_TOL: f64 = 1e-8;

/// Verified type of `mu_{A_(n_1, ..., n_r)}`: the predicted eigenvalue
/// sequence is checked against the type extracted from the critical point,
/// whose multiplicities are returned.
pub fn nilpotent_partition_type(partition: &[usize]) -> Result<CriticalType> {
    let predicted = predicted_partition_ks(partition)?;
    let a = catalog::nilpotent_normal_form(partition)?;
    let mu = catalog::mu_a(&a).tensor;
    let rep = criticality(&mu, PARTITION_CRIT_TOL)?;
    if !rep.is_critical {
        return Err(Error::TypeExtraction(format!(
            "mu_A for {partition:?} is not critical (residual {:e})",
            rep.residual
        )));
    }
    let t = extract_type(&rep.d_mu, DEFAULT_TYPE_TOL)?;
    if t.ks() != predicted.as_slice() {
        return Err(Error::TypeExtraction(format!(
            "partition {partition:?}: predicted {predicted:?}, extracted {t}"
        )));
    }
    Ok(t)
}

/// Builds `D_alpha` for a type as a complex matrix; used for gradings.
pub fn d_alpha_matrix(t: &CriticalType) -> ComplexMatrix {
    t.d_alpha().to_complex()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> CriticalType {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let t = ty("(0<1<2;1,2,1)");
        assert_eq!(t.ks(), &[0, 1, 2]);
        assert_eq!(t.to_string(), "(0<1<2;1,2,1)");
        assert!("(2<4;1,1)".parse::<CriticalType>().is_err());
        assert!("(2<1;1,1)".parse::<CriticalType>().is_err());
        assert_eq!(ty("(0;4)"), CriticalType::zero(4));
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(rationalize(0.75, MAX_DENOMINATOR), Ratio::new(3, 4));
        assert_eq!(
            rationalize(1.0 / 3.0 + 1e-13, MAX_DENOMINATOR),
            Ratio::new(1, 3)
        );
        assert_eq!(rationalize(-2.5, MAX_DENOMINATOR), Ratio::new(-5, 2));
        assert_eq!(rationalize(0.0, MAX_DENOMINATOR), Ratio::from_integer(0));
        assert_eq!(
            rationalize(std::f64::consts::PI, 1000),
            Ratio::new(355, 113)
        );
    }

    #[test]
    fn extract_heisenberg_and_zero() {
        let d = HermitianMatrix::from_diagonal(&[4.0, 4.0, 8.0]);
        assert_eq!(extract_type(&d, 1e-6).unwrap(), ty("(1<2;2,1)"));
        assert_eq!(
            extract_type(&HermitianMatrix::zeros(3), 1e-6).unwrap(),
            CriticalType::zero(3)
        );
    }

    #[test]
    fn extract_rejects_inconsistent_spectrum() {
        // 1 and sqrt(2) admit no relation, so the direction is (1, 1),
        // which is not parallel to the eigenvalues.
        let d = HermitianMatrix::from_diagonal(&[1.0, 2f64.sqrt()]);
        assert!(extract_type(&d, 1e-6).is_err());
    }

    #[test]
    fn critical_values() {
        assert_eq!(
            critical_value(&ty("(2<3<4;2,1,1)")),
            Ratio::from_integer(12)
        );
        assert_eq!(critical_value(&ty("(0<1;1,3)")), Ratio::from_integer(4));
        assert_eq!(
            critical_value(&ty("(1<2<3<4;1,1,1,1)")),
            Ratio::from_integer(6)
        );
        assert_eq!(critical_value(&CriticalType::zero(3)), Ratio::new(4, 3));
        assert_eq!(critical_value(&ty("(0<1;3,1)")), Ratio::new(4, 3));
        assert_eq!(critical_value(&ty("(0<1;2,2)")), Ratio::from_integer(2));
        assert_eq!(critical_value(&ty("(0<1<2;1,2,1)")), Ratio::from_integer(3));
    }

    #[test]
    fn abelian_sums() {
        assert_eq!(abelian_sum_type(&ty("(1<2;2,1)"), 1), ty("(2<3<4;2,1,1)"));
        assert_eq!(abelian_sum_type(&ty("(0<1;1,3)"), 2), ty("(0<1;1,5)"));
        assert_eq!(abelian_sum_type(&CriticalType::zero(3), 1), ty("(0<1;3,1)"));
    }

    #[test]
    fn h_alpha_entries() {
        let h = h_alpha(&ty("(0<1;1,3)"));
        assert_eq!(h.eigenvalues(), vec![-1.0, 0.0, 0.0, 0.0]);
        let h = h_alpha(&ty("(1<2;2,1)"));
        let ev = h.eigenvalues();
        for (a, b) in ev.iter().zip([-0.5, -0.5, 0.5]) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(h_alpha(&CriticalType::zero(3)).norm(), 0.0);
        // tr h_alpha = sum k d - n (sum k^2 d)/(sum k d)
        let t = ty("(1<2<3<4;1,1,1,1)");
        assert!((h_alpha(&t).trace() - (10.0 - 4.0 * 30.0 / 10.0)).abs() < 1e-12);
    }

    #[test]
    fn v_alpha_tests() {
        let he = catalog::mu_he(3).unwrap().tensor;
        assert!(v_alpha_membership(&he, &ty("(1<2;2,1)"), 1e-9).unwrap());
        let sl2 = catalog::sl2_compact().tensor;
        assert!(!v_alpha_membership(&sl2, &ty("(1<2;2,1)"), 1e-9).unwrap());
        assert!(v_alpha_membership(&StructureTensor::zeros(3), &ty("(1<2;2,1)"), 1e-9).unwrap());
        assert!(v_alpha_membership(&he, &ty("(0<1;1,3)"), 1e-9).is_err());
    }

    #[test]
    fn partition_rule_cases() {
        assert_eq!(predicted_partition_ks(&[2]).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(predicted_partition_ks(&[1, 0, 0]).unwrap(), vec![2, 3, 4]);
        assert!(predicted_partition_ks(&[0, 0]).is_err());
        assert!(predicted_partition_ks(&[0, 1]).is_err());
        assert_eq!(
            nilpotent_partition_type(&[2]).unwrap(),
            ty("(1<2<3<4;1,1,1,1)")
        );
        assert_eq!(
            nilpotent_partition_type(&[1, 0]).unwrap(),
            ty("(2<3<4;2,1,1)")
        );
        assert_eq!(
            nilpotent_partition_type(&[1, 0, 0]).unwrap(),
            ty("(2<3<4;2,2,1)")
        );
    }
}
