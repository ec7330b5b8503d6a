//! File formats: the tensor JSON shared by every command, trace CSV, and
//! parsing of complex parameters given on the command line.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::tensor::StructureTensor;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorJson {
    pub dim: usize,
    pub entries: Vec<EntryJson>,
}

/// One coefficient `c_ij^k` with 1-based indices and `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryJson {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub re: f64,
    pub im: f64,
}

impl From<&StructureTensor> for TensorJson {
    fn from(t: &StructureTensor) -> Self {
        let n = t.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    let z = t.get(i, j, k);
                    if z.re != 0.0 || z.im != 0.0 {
                        entries.push(EntryJson {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            re: z.re,
                            im: z.im,
                        });
                    }
                }
            }
        }
        TensorJson { dim: n, entries }
    }
}

impl TryFrom<TensorJson> for StructureTensor {
    type Error = Error;

    fn try_from(doc: TensorJson) -> Result<Self> {
        let n = doc.dim;
        if n == 0 {
            return Err(Error::Parse("dim must be positive".into()));
        }
        let mut t = StructureTensor::zeros(n);
        let mut seen = std::collections::HashSet::new();
        for e in &doc.entries {
            let in_range = |x: usize| (1..=n).contains(&x);
            if !(in_range(e.i) && in_range(e.j) && in_range(e.k)) {
                return Err(Error::Parse(format!(
                    "entry ({}, {}, {}) out of range for dim {n}",
                    e.i, e.j, e.k
                )));
            }
            if e.i >= e.j {
                return Err(Error::Parse(format!(
                    "entry ({}, {}, {}) must have i < j",
                    e.i, e.j, e.k
                )));
            }
            if !e.re.is_finite() || !e.im.is_finite() {
                return Err(Error::NonFinite("tensor entry"));
            }
            if !seen.insert((e.i, e.j, e.k)) {
                return Err(Error::Parse(format!(
                    "duplicate entry ({}, {}, {})",
                    e.i, e.j, e.k
                )));
            }
            t.set(e.i - 1, e.j - 1, e.k - 1, C64::new(e.re, e.im));
        }
        Ok(t)
    }
}

pub fn tensor_to_string(t: &StructureTensor) -> String {
    serde_json::to_string_pretty(&TensorJson::from(t)).expect("tensor JSON is always serializable")
}

pub fn tensor_from_str(s: &str) -> Result<StructureTensor> {
    let doc: TensorJson = serde_json::from_str(s)?;
    doc.try_into()
}

pub fn read_tensor(path: &Path) -> Result<StructureTensor> {
    tensor_from_str(&fs::read_to_string(path)?)
}

pub fn write_tensor(path: &Path, t: &StructureTensor) -> Result<()> {
    fs::write(path, tensor_to_string(t) + "\n")?;
    Ok(())
}

/// Parses `2`, `-0.5`, `1e-3`, `i`, `-2i`, `1+2i`, `0.25-0.5i`.
pub fn parse_complex(s: &str) -> Result<C64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("cannot parse complex number {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s
            .parse::<f64>()
            .map(|x| C64::new(x, 0.0))
            .map_err(|_| bad());
    };
    // Split at the last sign that is not the leading sign or part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(p) => (&body[..p], &body[p..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(C64::new(re, im))
}

/// Comma-separated list of complex numbers; an empty string gives no values.
pub fn parse_params(s: &str) -> Result<Vec<C64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_complex).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::random::random_tensor;

    #[test]
    fn round_trip_is_exact() {
        for seed in 0..5 {
            let t = random_tensor(4, seed).scale_real(1.0 / 3.0);
            let back = tensor_from_str(&tensor_to_string(&t)).unwrap();
            assert_eq!(t, back);
        }
    }

    #[test]
    fn writer_sorts_and_skips_zeros() {
        let he = catalog::mu_he(3).unwrap().tensor;
        let doc = TensorJson::from(&he);
        assert_eq!(
            doc.entries,
            vec![EntryJson {
                i: 1,
                j: 2,
                k: 3,
                re: 1.0,
                im: 0.0
            }]
        );
        let t = catalog::table1("g6", &[]).unwrap().tensor;
        let doc = TensorJson::from(&t);
        let keys: Vec<_> = doc.entries.iter().map(|e| (e.i, e.j, e.k)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn strict_parsing() {
        let bad = [
            r#"{"dim": 3, "entries": [{"i": 2, "j": 1, "k": 3, "re": 1, "im": 0}]}"#,
            r#"{"dim": 3, "entries": [{"i": 1, "j": 2, "k": 4, "re": 1, "im": 0}]}"#,
            r#"{"dim": 3, "entries": [{"i": 0, "j": 2, "k": 3, "re": 1, "im": 0}]}"#,
            r#"{"dim": 3, "entries": [{"i": 1, "j": 2, "k": 3, "re": 1, "im": 0},
                                      {"i": 1, "j": 2, "k": 3, "re": 2, "im": 0}]}"#,
            r#"{"dim": 3, "entries": [{"i": 1, "j": 2, "k": 3, "re": 1}]}"#,
            r#"{"dim": 3, "entries": [], "extra": 1}"#,
            r#"{"dim": 0, "entries": []}"#,
        ];
        for s in bad {
            assert!(tensor_from_str(s).is_err(), "{s}");
        }
        let ok = tensor_from_str(r#"{"dim": 3, "entries": []}"#).unwrap();
        assert!(ok.is_zero());
    }

    #[test]
    fn complex_parameters() {
        assert_eq!(parse_complex("0.25").unwrap(), C64::new(0.25, 0.0));
        assert_eq!(parse_complex("i").unwrap(), C64::new(0.0, 1.0));
        assert_eq!(parse_complex("-2i").unwrap(), C64::new(0.0, -2.0));
        assert_eq!(parse_complex("1+2i").unwrap(), C64::new(1.0, 2.0));
        assert_eq!(parse_complex("1e-3-1e+2i").unwrap(), C64::new(1e-3, -100.0));
        assert_eq!(parse_complex("-1-i").unwrap(), C64::new(-1.0, -1.0));
        assert!(parse_complex("x").is_err());
        assert!(parse_complex("").is_err());
        assert_eq!(parse_params("1,2").unwrap().len(), 2);
        assert!(parse_params("").unwrap().is_empty());
    }
}
