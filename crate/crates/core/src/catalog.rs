//! Named algebras: the dimension-4 classification, the Heisenberg and
//! hyperbolic brackets, the `mu_A` family with its nilpotent normal forms,
//! the compact form of sl2, and random tensors.

use num_rational::Ratio;
use serde::Serialize;

use crate::algebra::structure_invariants;
use crate::classify::CriticalType;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64, ZERO};
use crate::random;
use crate::tensor::StructureTensor;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<C64>,
    pub tensor: StructureTensor,
    /// Type of the stratum the entry lies in (the type of its flow limit).
    pub expected_type: Option<CriticalType>,
    pub expected_f: Option<Ratio<i64>>,
    pub is_nilpotent: bool,
    pub is_solvable: bool,
    pub is_semisimple: bool,
    /// Set for orbits without a critical point; describes where the flow goes.
    pub note: Option<String>,
}

/// Names accepted by [`table1`], in table order.
pub const TABLE1_NAMES: [&str; 16] = [
    "C4", "n3+C", "r2+C2", "r3+C", "r3l+C", "r2+r2", "sl2+C", "n4", "g1", "g2", "g3", "g4", "g5",
    "g6", "g7", "g8",
];

pub fn table1_names() -> &'static [&'static str] {
    &TABLE1_NAMES
}

/// Parameter arity of a dimension-4 family.
pub fn table1_arity(name: &str) -> Option<usize> {
    Some(match name {
        "C4" | "n3+C" | "r2+C2" | "r3+C" | "r2+r2" | "sl2+C" | "n4" | "g4" | "g5" | "g6" | "g7" => {
            0
        }
        "r3l+C" | "g1" | "g3" | "g8" => 1,
        "g2" => 2,
        _ => return None,
    })
}

/// Representative parameters used when a family is sampled.
pub fn table1_sample_params(name: &str) -> Vec<C64> {
    let r = |x: f64| C64::new(x, 0.0);
    match name {
        "r3l+C" => vec![r(0.5)],
        "g1" => vec![r(2.0)],
        "g2" => vec![r(2.0), r(1.0)],
        "g3" => vec![r(2.0)],
        "g8" => vec![r(1.0)],
        _ => Vec::new(),
    }
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

const ONE: C64 = C64::new(1.0, 0.0);

/// Brackets of the dimension-4 classification in the basis `x_1, ..., x_4`.
pub fn table1(name: &str, params: &[C64]) -> Result<CatalogEntry> {
    let arity = table1_arity(name).ok_or_else(|| Error::UnknownCatalog(name.to_string()))?;
    if params.len() != arity {
        return Err(Error::Arity {
            name: name.into(),
            expected: arity,
            found: params.len(),
        });
    }
    let p = |i: usize| params[i];
    // Entries are (i, j, k, value) with 1-based indices: [x_i, x_j] += value x_k.
    let mut br: Vec<(usize, usize, usize, C64)> = Vec::new();
    let mut push = |i: usize, j: usize, k: usize, v: C64| br.push((i - 1, j - 1, k - 1, v));
    let third = c(1.0 / 3.0);
    match name {
        "C4" => {}
        "n3+C" => push(1, 2, 3, ONE),
        "r2+C2" => push(1, 2, 1, ONE),
        "r3+C" => {
            push(1, 2, 2, ONE);
            push(1, 3, 2, ONE);
            push(1, 3, 3, ONE);
        }
        "r3l+C" => {
            let l = p(0);
            if !(l.norm() > 0.0 && l.norm() <= 1.0) {
                return Err(Error::Domain(format!(
                    "r3l+C requires 0 < |lambda| <= 1, got {l}"
                )));
            }
            push(1, 2, 2, ONE);
            push(1, 3, 3, l);
        }
        "r2+r2" => {
            push(1, 2, 1, ONE);
            push(3, 4, 3, ONE);
        }
        "sl2+C" => {
            push(1, 2, 3, ONE);
            push(1, 3, 1, c(-2.0));
            push(2, 3, 2, c(2.0));
        }
        "n4" => {
            push(1, 2, 3, ONE);
            push(1, 3, 4, ONE);
        }
        "g1" => {
            let a = p(0);
            if a == ZERO {
                return Err(Error::Domain("g1 requires alpha != 0".into()));
            }
            push(1, 2, 2, ONE);
            push(1, 3, 3, ONE);
            push(1, 4, 4, a);
        }
        "g2" => {
            let (a, b) = (p(0), p(1));
            if a == ZERO && b != ZERO {
                return Err(Error::Domain(
                    "g2 requires alpha != 0, or alpha = beta = 0".into(),
                ));
            }
            push(1, 2, 3, ONE);
            push(1, 3, 4, ONE);
            push(1, 4, 2, a);
            push(1, 4, 3, -b);
            push(1, 4, 4, ONE);
        }
        "g3" => {
            let a = p(0);
            if a == ZERO {
                return Err(Error::Domain("g3 requires alpha != 0".into()));
            }
            push(1, 2, 3, ONE);
            push(1, 3, 4, ONE);
            push(1, 4, 2, a);
            push(1, 4, 3, a);
        }
        "g4" => {
            push(1, 2, 3, ONE);
            push(1, 3, 4, ONE);
            push(1, 4, 2, ONE);
        }
        "g5" => {
            push(1, 2, 2, third);
            push(1, 2, 3, ONE);
            push(1, 3, 3, third);
            push(1, 4, 4, third);
        }
        "g6" => {
            push(1, 2, 2, ONE);
            push(1, 3, 3, ONE);
            push(1, 4, 4, c(2.0));
            push(2, 3, 4, ONE);
        }
        "g7" => {
            push(1, 2, 3, ONE);
            push(1, 3, 2, ONE);
            push(2, 3, 4, ONE);
        }
        "g8" => {
            let a = p(0);
            push(1, 2, 3, ONE);
            push(1, 3, 2, -a);
            push(1, 3, 3, ONE);
            push(1, 4, 4, ONE);
            push(2, 3, 4, ONE);
        }
        _ => unreachable!("arity lookup covers every name"),
    }
    let tensor = StructureTensor::from_entries(4, &br)?;

    let ty = |s: &str| Some(s.parse::<CriticalType>().expect("static type"));
    let (expected_type, expected_f) = match name {
        "C4" => (None, None),
        "n3+C" => (ty("(2<3<4;2,1,1)"), Some(Ratio::from_integer(12))),
        "n4" => (ty("(1<2<3<4;1,1,1,1)"), Some(Ratio::from_integer(6))),
        "sl2+C" => (ty("(0<1;3,1)"), Some(Ratio::new(4, 3))),
        "r2+r2" => (ty("(0<1;2,2)"), Some(Ratio::from_integer(2))),
        "g6" | "g7" | "g8" => (ty("(0<1<2;1,2,1)"), Some(Ratio::from_integer(3))),
        _ => (ty("(0<1;1,3)"), Some(Ratio::from_integer(4))),
    };
    let note = excluded_orbit_note(name, params);
    let nilpotent = matches!(name, "C4" | "n3+C" | "n4");
    Ok(CatalogEntry {
        name: name.to_string(),
        params: params.to_vec(),
        tensor,
        expected_type,
        expected_f,
        is_nilpotent: nilpotent,
        is_solvable: name != "sl2+C",
        is_semisimple: false,
        note,
    })
}

fn close(a: C64, b: f64) -> bool {
    (a - c(b)).norm() <= 1e-12 * b.abs().max(1.0)
}

fn excluded(target: &str) -> String {
    format!("orbit has no critical point; flow limit is the critical point of {target}")
}

/// Orbits of the dimension-4 classification that contain no critical point,
/// with the orbit their flow converges to.
fn excluded_orbit_note(name: &str, params: &[C64]) -> Option<String> {
    match name {
        "g8" if close(params[0], 0.25) => Some(excluded("g6")),
        "g3" if close(params[0], 27.0 / 4.0) => Some(excluded("g1(-2)")),
        "g5" => Some(excluded("g1(1)")),
        "g2" if close(params[0], 1.0 / 27.0) && close(params[1], 1.0 / 3.0) => {
            Some(excluded("g1(1)"))
        }
        "g2" => {
            // Curve alpha = gamma/(gamma+2)^3, beta = (2 gamma + 1)/(gamma+2)^2.
            let (a, b) = (params[0], params[1]);
            if b == ZERO {
                return None;
            }
            curve_gammas(a, b)
                .into_iter()
                .next()
                .map(|g| excluded(&format!("g1({g})")))
        }
        _ => None,
    }
}

/// Values of `gamma != -2, 2` with `(alpha, beta)` on the exceptional g2 curve.
fn curve_gammas(a: C64, b: C64) -> Vec<C64> {
    // beta (g+2)^2 = 2g + 1  ->  beta g^2 + (4 beta - 2) g + (4 beta - 1) = 0
    let qa = b;
    let qb = b * 4.0 - 2.0;
    let qc = b * 4.0 - 1.0;
    let disc = (qb * qb - qa * qc * 4.0).sqrt();
    [(-qb + disc) / (qa * 2.0), (-qb - disc) / (qa * 2.0)]
        .into_iter()
        .filter(|g| (g - c(2.0)).norm() > 1e-9 && (g + c(2.0)).norm() > 1e-9)
        .filter(|g| {
            let expect = g / (g + 2.0).powi(3);
            (expect - a).norm() <= 1e-9 * a.norm().max(1.0)
        })
        .collect()
}

/// `mu_he(X_1, X_2) = X_3` on `C^n`.
pub fn mu_he(n: usize) -> Result<CatalogEntry> {
    if n < 3 {
        return Err(Error::Domain(format!("mu_he needs n >= 3, got {n}")));
    }
    let tensor = StructureTensor::from_real_entries(n, &[(0, 1, 2, 1.0)])?;
    let ty = if n == 3 {
        CriticalType::new(vec![1, 2], vec![2, 1])?
    } else {
        CriticalType::new(vec![2, 3, 4], vec![2, n - 3, 1])?
    };
    Ok(CatalogEntry {
        name: "mu_he".into(),
        params: Vec::new(),
        tensor,
        expected_type: Some(ty),
        expected_f: Some(Ratio::from_integer(12)),
        is_nilpotent: true,
        is_solvable: true,
        is_semisimple: false,
        note: None,
    })
}

/// `mu_hy(X_1, X_i) = X_i` for `i >= 2` on `C^n`.
pub fn mu_hy(n: usize) -> Result<CatalogEntry> {
    if n < 2 {
        return Err(Error::Domain(format!("mu_hy needs n >= 2, got {n}")));
    }
    let entries: Vec<_> = (1..n).map(|i| (0, i, i, 1.0)).collect();
    let tensor = StructureTensor::from_real_entries(n, &entries)?;
    Ok(CatalogEntry {
        name: "mu_hy".into(),
        params: Vec::new(),
        tensor,
        expected_type: Some(CriticalType::new(vec![0, 1], vec![1, n - 1])?),
        expected_f: Some(Ratio::from_integer(4)),
        is_nilpotent: false,
        is_solvable: true,
        is_semisimple: false,
        note: None,
    })
}

/// The bracket on `C H ⊕ C^n` with `ad H|_{C^n} = A` and `C^n` abelian; `H`
/// is the first basis vector.
pub fn mu_a(a: &ComplexMatrix) -> CatalogEntry {
    let n = a.dim();
    let mut t = StructureTensor::zeros(n + 1);
    for j in 0..n {
        for k in 0..n {
            t.set(0, j + 1, k + 1, a.get(k, j));
        }
    }
    let nilpotent = a.is_nilpotent(1e-10);
    let normal = a.is_normal(1e-10);
    let zero = a.norm() == 0.0;
    let (expected_type, expected_f, note) = if zero {
        (None, None, Some("A = 0 gives the zero bracket".to_string()))
    } else if !nilpotent && normal {
        (
            CriticalType::new(vec![0, 1], vec![1, n]).ok(),
            Some(Ratio::from_integer(4)),
            None,
        )
    } else {
        (None, None, None)
    };
    let inv = structure_invariants(&t);
    CatalogEntry {
        name: "mu_A".into(),
        params: a.matrix().iter().cloned().collect(),
        tensor: t,
        expected_type,
        expected_f,
        is_nilpotent: inv.nilpotent.unwrap_or(nilpotent),
        is_solvable: true,
        is_semisimple: false,
        note,
    }
}

/// Direct sum of the blocks with subdiagonal `sqrt(j n_i - j(j - 1))`,
/// `j = 1..n_i`, block `i` of size `n_i + 1`.
pub fn nilpotent_normal_form(partition: &[usize]) -> Result<ComplexMatrix> {
    if partition.is_empty() {
        return Err(Error::InvalidPartition("empty partition".into()));
    }
    if partition.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidPartition(format!(
            "{partition:?} is not non-increasing"
        )));
    }
    let n: usize = partition.iter().map(|p| p + 1).sum();
    let mut m = ComplexMatrix::zeros(n).into_matrix();
    let mut offset = 0;
    for &ni in partition {
        for j in 1..=ni {
            let v = ((j * ni) as f64 - (j * (j - 1)) as f64).sqrt();
            m[(offset + j, offset + j - 1)] = c(v);
        }
        offset += ni + 1;
    }
    ComplexMatrix::new(m)
}

/// The cyclic bracket `[X1, X2] = X3, [X2, X3] = X1, [X3, X1] = X2`.
pub fn sl2_compact() -> CatalogEntry {
    let tensor =
        StructureTensor::from_real_entries(3, &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 1.0)])
            .expect("static entries");
    CatalogEntry {
        name: "sl2_compact".into(),
        params: Vec::new(),
        tensor,
        expected_type: Some(CriticalType::zero(3)),
        expected_f: Some(Ratio::new(4, 3)),
        is_nilpotent: false,
        is_solvable: false,
        is_semisimple: true,
        note: None,
    }
}

/// Change of basis carrying the table form of sl2 (`[x1,x2]=x3,
/// [x1,x3]=-2x1, [x2,x3]=2x2`, restricted to C^3) onto [`sl2_compact`]:
/// `x1 -> X1 + iX2`, `x2 -> -X1 + iX2`, `x3 -> 2i X3`.
pub fn sl2_table_to_compact() -> ComplexMatrix {
    let i = C64::new(0.0, 1.0);
    let cols = [[ONE, i, ZERO], [-ONE, i, ZERO], [ZERO, ZERO, i * 2.0]];
    ComplexMatrix::from_fn(3, |r, col| cols[col][r])
}

pub fn random_tensor(n: usize, seed: u64) -> StructureTensor {
    random::random_tensor(n, seed)
}

/// Looks up any catalog name. `dim` applies to `mu_he`, `mu_hy` and
/// `random`; `seed` only to `random`; the parameters of
/// `nilpotent_normal_form` are the partition.
pub fn resolve(name: &str, params: &[C64], dim: Option<usize>, seed: u64) -> Result<CatalogEntry> {
    let no_params = |expected: usize| -> Result<()> {
        if params.len() != expected {
            return Err(Error::Arity {
                name: name.into(),
                expected,
                found: params.len(),
            });
        }
        Ok(())
    };
    match name {
        "mu_he" => {
            no_params(0)?;
            mu_he(dim.unwrap_or(3))
        }
        "mu_hy" => {
            no_params(0)?;
            mu_hy(dim.unwrap_or(3))
        }
        "sl2_compact" => {
            no_params(0)?;
            Ok(sl2_compact())
        }
        "random" => {
            no_params(0)?;
            let n = dim.unwrap_or(4);
            if n == 0 {
                return Err(Error::Domain("random needs dim >= 1".into()));
            }
            Ok(CatalogEntry {
                name: "random".into(),
                params: Vec::new(),
                tensor: random_tensor(n, seed),
                expected_type: None,
                expected_f: None,
                is_nilpotent: false,
                is_solvable: false,
                is_semisimple: false,
                note: None,
            })
        }
        "nilpotent_normal_form" => {
            let partition = params
                .iter()
                .map(|z| {
                    let ok = z.im == 0.0 && z.re >= 0.0 && z.re.fract() == 0.0;
                    ok.then_some(z.re as usize)
                        .ok_or_else(|| Error::InvalidPartition(format!("{z} is not a part size")))
                })
                .collect::<Result<Vec<_>>>()?;
            if partition.iter().all(|&p| p == 0) {
                return Err(Error::InvalidPartition(
                    "all parts zero give the zero bracket".into(),
                ));
            }
            let mut e = mu_a(&nilpotent_normal_form(&partition)?);
            e.name = "nilpotent_normal_form".into();
            e.params = params.to_vec();
            Ok(e)
        }
        _ => table1(name, params),
    }
}

/// Machine-readable listing entry.
#[derive(Clone, Debug, Serialize)]
pub struct ListingEntry {
    pub name: String,
    /// `None` for a variable number of parameters.
    pub param_arity: Option<usize>,
    /// `None` when the dimension is chosen with `--dim`.
    pub dim: Option<usize>,
    pub flags: ListingFlags,
}

#[derive(Clone, Debug, Serialize)]
pub struct ListingFlags {
    pub nilpotent: Option<bool>,
    pub solvable: Option<bool>,
    pub semisimple: Option<bool>,
}

pub fn listing() -> Vec<ListingEntry> {
    let mut out: Vec<ListingEntry> = table1_names()
        .iter()
        .map(|&name| {
            let e = table1(name, &table1_sample_params(name)).expect("sample parameters are valid");
            ListingEntry {
                name: name.to_string(),
                param_arity: table1_arity(name),
                dim: Some(4),
                flags: ListingFlags {
                    nilpotent: Some(e.is_nilpotent),
                    solvable: Some(e.is_solvable),
                    semisimple: Some(e.is_semisimple),
                },
            }
        })
        .collect();
    let flags = |n, s, ss| ListingFlags {
        nilpotent: n,
        solvable: s,
        semisimple: ss,
    };
    out.push(ListingEntry {
        name: "mu_he".into(),
        param_arity: Some(0),
        dim: None,
        flags: flags(Some(true), Some(true), Some(false)),
    });
    out.push(ListingEntry {
        name: "mu_hy".into(),
        param_arity: Some(0),
        dim: None,
        flags: flags(Some(false), Some(true), Some(false)),
    });
    out.push(ListingEntry {
        name: "sl2_compact".into(),
        param_arity: Some(0),
        dim: Some(3),
        flags: flags(Some(false), Some(false), Some(true)),
    });
    out.push(ListingEntry {
        name: "nilpotent_normal_form".into(),
        param_arity: None,
        dim: None,
        flags: flags(Some(true), Some(true), Some(false)),
    });
    out.push(ListingEntry {
        name: "random".into(),
        param_arity: Some(0),
        dim: None,
        flags: flags(None, None, None),
    });
    out
}
