//! Numerical verification suite: twelve criteria covering the dimension-4
//! stratification, closed-form values, the `mu_A` family, the semisimple
//! minimum, gradient and trace identities, abelian factors, monotonicity,
//! excluded orbits and semidirect extensions.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    act, delta, derivation_algebra, direct_sum, hermitian_derivations, semidirect_extension,
};
use crate::catalog::{self, table1, table1_names, table1_sample_params};
use crate::classify::{
    abelian_sum_type, critical_value, extract_type, fraction_string, nilpotent_partition_type,
    CriticalType, DEFAULT_TYPE_TOL,
};
use crate::error::{Error, Result};
use crate::flow::{flow, FlowParams, FlowTrace};
use crate::linalg::{ComplexMatrix, HermitianMatrix, C64};
use crate::moment::{
    criticality, gradient, moment_map, scalar_f, trace_r_squared, DEFAULT_CRIT_TOL,
};
use crate::random::{self, rng};
use crate::tensor::StructureTensor;

/// Suite names accepted by `--only`, with the criteria each one runs.
pub const SUITES: [(&str, &[usize]); 10] = [
    ("table2", &[1]),
    ("closed-forms", &[2]),
    ("abelian-ideal", &[3, 4, 5]),
    ("semisimple", &[6]),
    ("gradient", &[7]),
    ("trace", &[8]),
    ("abelian-factor", &[9]),
    ("ordering", &[10]),
    ("excluded-orbits", &[11]),
    ("semidirect", &[12]),
];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub suite: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub measured: String,
    pub expected: String,
    /// Individual failing cases, if any.
    pub failures: Vec<String>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {:<16} {}: measured {}; expected {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.suite,
            self.title,
            self.measured,
            self.expected
        )
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub flow: FlowParams,
    pub seed: u64,
}

fn suite_of(id: usize) -> &'static str {
    SUITES
        .iter()
        .find(|(_, ids)| ids.contains(&id))
        .map(|(s, _)| *s)
        .expect("every id has a suite")
}

/// Runs all criteria, or the ones of suite `only`, in criterion order.
pub fn run(only: Option<&str>, opts: &VerifyOptions) -> Result<Vec<CriterionResult>> {
    let ids: Vec<usize> = match only {
        None => (1..=12).collect(),
        Some(name) => SUITES
            .iter()
            .find(|(s, _)| *s == name)
            .map(|(_, ids)| ids.to_vec())
            .ok_or_else(|| {
                let names: Vec<_> = SUITES.iter().map(|(s, _)| *s).collect();
                Error::Parse(format!(
                    "unknown suite {name:?}; expected one of {}",
                    names.join(", ")
                ))
            })?,
    };
    Ok(ids.par_iter().map(|&id| criterion(id, opts)).collect())
}

pub fn criterion(id: usize, opts: &VerifyOptions) -> CriterionResult {
    let seed = opts.seed.wrapping_mul(1000).wrapping_add(id as u64);
    let (title, check) = match id {
        1 => ("dimension-4 strata", table2(&opts.flow)),
        2 => ("closed-form F values", closed_forms()),
        3 => ("moment map of mu_A", mu_a_block_form(seed)),
        4 => ("mu_A critical iff A normal", mu_a_normality(seed)),
        5 => ("nilpotent normal forms", normal_forms()),
        6 => ("semisimple minimum", semisimple_minimum(seed)),
        7 => ("gradient vs finite differences", gradient_check(seed)),
        8 => ("trace identities", trace_identities(seed)),
        9 => ("abelian factors", abelian_factors(&opts.flow)),
        10 => ("monotone flows and ordering", monotonicity(&opts.flow)),
        11 => ("excluded orbits", excluded_orbits(&opts.flow)),
        12 => ("semidirect extensions", semidirect()),
        _ => panic!("criterion ids run from 1 to 12"),
    };
    CriterionResult {
        id,
        suite: suite_of(id),
        title,
        passed: check.failures.is_empty(),
        measured: check.measured,
        expected: check.expected,
        failures: check.failures,
    }
}

struct Check {
    measured: String,
    expected: String,
    failures: Vec<String>,
}

impl Check {
    fn new(expected: impl Into<String>) -> Self {
        Self {
            measured: String::new(),
            expected: expected.into(),
            failures: Vec::new(),
        }
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    fn measured(mut self, m: impl Into<String>) -> Self {
        self.measured = m.into();
        self
    }
}

/// Catalog name, parameters, stratum type and critical value.
pub type Table2Row = (&'static str, Vec<C64>, &'static str, Ratio<i64>);

/// The six strata of dimension 4 with a representative, in increasing order.
pub fn table2_rows() -> Vec<Table2Row> {
    vec![
        ("sl2+C", vec![], "(0<1;3,1)", Ratio::new(4, 3)),
        ("r2+r2", vec![], "(0<1;2,2)", Ratio::from_integer(2)),
        ("g6", vec![], "(0<1<2;1,2,1)", Ratio::from_integer(3)),
        (
            "r3l+C",
            vec![C64::new(0.5, 0.0)],
            "(0<1;1,3)",
            Ratio::from_integer(4),
        ),
        ("n4", vec![], "(1<2<3<4;1,1,1,1)", Ratio::from_integer(6)),
        ("n3+C", vec![], "(2<3<4;2,1,1)", Ratio::from_integer(12)),
    ]
}

fn flow_summary(name: &str, t: &FlowTrace) -> String {
    format!(
        "{name}: converged={} F={:.12} type={}",
        t.converged,
        t.final_f(),
        t.stratum
            .as_ref()
            .map_or("-".to_string(), |s| s.to_string())
    )
}

fn check_flow_target(
    c: &mut Check,
    label: &str,
    tensor: &StructureTensor,
    params: &FlowParams,
    f: f64,
    ty: Option<&str>,
) -> Option<FlowTrace> {
    let t = match flow(tensor, params) {
        Ok(t) => t,
        Err(e) => {
            c.fail(format!("{label}: {e}"));
            return None;
        }
    };
    let type_ok = match (ty, &t.stratum) {
        (Some(want), Some(got)) => got.to_string() == want,
        (None, Some(_)) => true,
        (_, None) => false,
    };
    if !t.converged || (t.final_f() - f).abs() > 1e-6 || !type_ok {
        c.fail(flow_summary(label, &t));
    }
    Some(t)
}

fn table2(params: &FlowParams) -> Check {
    let mut c = Check::new("F = 4/3, 2, 3, 4, 6, 12 within 1e-6 and matching types");
    let rows = table2_rows();
    let traces: Vec<_> = rows
        .par_iter()
        .map(|(name, p, _, _)| flow(&table1(name, p).expect("static entry").tensor, params))
        .collect();
    let mut measured = Vec::new();
    for ((name, _, ty, f), t) in rows.iter().zip(traces) {
        let f = *f.numer() as f64 / *f.denom() as f64;
        match t {
            Ok(t) => {
                let got = t.stratum.as_ref().map_or("-".into(), |s| s.to_string());
                measured.push(format!("{name} {:.9} {got}", t.final_f()));
                if !t.converged || (t.final_f() - f).abs() > 1e-6 || got != *ty {
                    c.fail(flow_summary(name, &t));
                }
                if let Some(s) = &t.stratum {
                    let exact = critical_value(s);
                    if (*exact.numer() as f64 / *exact.denom() as f64 - f).abs() > 1e-12 {
                        c.fail(format!(
                            "{name}: critical value of {s} is {}",
                            fraction_string(&exact)
                        ));
                    }
                }
            }
            Err(e) => c.fail(format!("{name}: {e}")),
        }
    }
    c.measured(measured.join(", "))
}

fn closed_forms() -> Check {
    let mut c = Check::new("12 and 4 within 1e-10 for n = 3..8");
    let mut worst = 0.0f64;
    for n in 3..=8 {
        let he = scalar_f(&catalog::mu_he(n).expect("n >= 3").tensor).unwrap_or(f64::NAN);
        let hy = scalar_f(&catalog::mu_hy(n).expect("n >= 2").tensor).unwrap_or(f64::NAN);
        for (label, got, want) in [("mu_he", he, 12.0), ("mu_hy", hy, 4.0)] {
            let err = (got - want).abs();
            worst = worst.max(err);
            if !(err <= 1e-10) {
                c.fail(format!("{label}({n}) F = {got}"));
            }
        }
    }
    c.measured(format!("max error {worst:.2e}"))
}

fn block_form(a: &ComplexMatrix) -> HermitianMatrix {
    let n = a.dim();
    let comm = a.commutator(&a.adjoint());
    let top = -4.0 * a.inner(a).re;
    let m = nalgebra::DMatrix::from_fn(n + 1, n + 1, |i, j| match (i, j) {
        (0, 0) => C64::new(top, 0.0),
        (0, _) | (_, 0) => C64::new(0.0, 0.0),
        _ => comm.get(i - 1, j - 1) * 4.0,
    });
    HermitianMatrix::symmetrized(m)
}

fn mu_a_block_form(seed: u64) -> Check {
    let mut c =
        Check::new("||R - blockdiag|| <= 1e-10 ||mu||^2 and | ||mu||^2 - 2 tr AA^* | <= 1e-12");
    let mut r = rng(seed);
    let (mut worst_r, mut worst_n) = (0.0f64, 0.0f64);
    for case in 0..100 {
        let n = 2 + case % 4;
        let a = random::gaussian_matrix_from(n, &mut r);
        let mu = catalog::mu_a(&a).tensor;
        let nsq = mu.norm_sqr();
        let err_r = moment_map(&mu).sub(&block_form(&a)).norm() / nsq;
        let err_n = (nsq - 2.0 * a.inner(&a).re).abs();
        worst_r = worst_r.max(err_r);
        worst_n = worst_n.max(err_n);
        if !(err_r <= 1e-10) || !(err_n <= 1e-12) {
            c.fail(format!(
                "case {case} (n = {n}): relative R error {err_r:.2e}, norm error {err_n:.2e}"
            ));
        }
    }
    c.measured(format!(
        "max relative R error {worst_r:.2e}, max norm error {worst_n:.2e}"
    ))
}

fn mu_a_normality(seed: u64) -> Check {
    let mut c =
        Check::new("normal: residual <= 1e-9 and type (0<1;1,n); non-normal: residual > 1e-4");
    let mut r = rng(seed);
    let (mut worst_normal, mut best_non_normal) = (0.0f64, f64::INFINITY);
    for case in 0..50 {
        let n = 2 + case % 4;
        let a = random::normal_matrix_from(n, &mut r);
        let want = CriticalType::new(vec![0, 1], vec![1, n]).expect("valid type");
        match criticality(&catalog::mu_a(&a).tensor, DEFAULT_CRIT_TOL) {
            Ok(rep) => {
                worst_normal = worst_normal.max(rep.residual);
                let ty = extract_type(&rep.d_mu, DEFAULT_TYPE_TOL).ok();
                if !(rep.residual <= 1e-9) || ty.as_ref() != Some(&want) {
                    c.fail(format!(
                        "normal case {case}: residual {:.2e}, type {}",
                        rep.residual,
                        ty.map_or("-".into(), |t| t.to_string())
                    ));
                }
            }
            Err(e) => c.fail(format!("normal case {case}: {e}")),
        }
        let b = random::gaussian_matrix_from(n, &mut r);
        if b.is_normal(1e-8) || b.is_nilpotent(1e-8) {
            c.fail(format!(
                "non-normal case {case}: sample is normal or nilpotent"
            ));
            continue;
        }
        match criticality(&catalog::mu_a(&b).tensor, DEFAULT_CRIT_TOL) {
            Ok(rep) => {
                best_non_normal = best_non_normal.min(rep.residual);
                if !(rep.residual > 1e-4) {
                    c.fail(format!(
                        "non-normal case {case}: residual {:.2e}",
                        rep.residual
                    ));
                }
            }
            Err(e) => c.fail(format!("non-normal case {case}: {e}")),
        }
    }
    c.measured(format!(
        "max normal residual {worst_normal:.2e}, min non-normal residual {best_non_normal:.2e}"
    ))
}

/// Non-increasing sequences `n_1 >= ... >= n_r >= 0` with
/// `sum (n_i + 1) <= max_size`, excluding the all-zero ones.
pub fn partitions_up_to(max_size: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() && cur[0] > 0 {
            out.push(cur.clone());
        }
        for part in (0..=cap.min(remaining.saturating_sub(1))).rev() {
            if part + 1 > remaining {
                continue;
            }
            cur.push(part);
            rec(remaining - part - 1, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_size, max_size, &mut Vec::new(), &mut out);
    out
}

fn normal_forms() -> Check {
    let mut c =
        Check::new("residual <= 1e-8 and predicted k-sequence for every partition of size <= 6");
    let parts = partitions_up_to(6);
    let results: Vec<_> = parts
        .par_iter()
        .map(|p| {
            let residual = catalog::nilpotent_normal_form(p)
                .and_then(|a| criticality(&catalog::mu_a(&a).tensor, DEFAULT_CRIT_TOL))
                .map(|r| r.residual);
            (p.clone(), residual, nilpotent_partition_type(p))
        })
        .collect();
    let mut worst = 0.0f64;
    for (p, residual, ty) in results {
        match (residual, ty) {
            (Ok(res), Ok(_)) => {
                worst = worst.max(res);
                if !(res <= 1e-8) {
                    c.fail(format!("{p:?}: residual {res:.2e}"));
                }
            }
            (Err(e), _) | (_, Err(e)) => c.fail(format!("{p:?}: {e}")),
        }
    }
    c.measured(format!(
        "{} partitions, max residual {worst:.2e}",
        parts.len()
    ))
}

fn semisimple_minimum(seed: u64) -> Check {
    let mut c = Check::new("F(sl2) = 4/3 within 1e-12; F(g.sl2) >= 4/3 - 1e-9 for 100 random g");
    let sl2 = catalog::sl2_compact().tensor;
    let f0 = scalar_f(&sl2).unwrap_or(f64::NAN);
    if !((f0 - 4.0 / 3.0).abs() <= 1e-12) {
        c.fail(format!("F(sl2) = {f0}"));
    }
    let mut r = rng(seed);
    let mut lowest = f64::INFINITY;
    for case in 0..100 {
        let g = random::bounded_condition_from(3, 1.5, &mut r);
        match act(&g, &sl2).and_then(|m| scalar_f(&m)) {
            Ok(f) => {
                lowest = lowest.min(f);
                if !(f >= 4.0 / 3.0 - 1e-9) {
                    c.fail(format!("case {case}: F = {f}"));
                }
            }
            Err(e) => c.fail(format!("case {case}: {e}")),
        }
    }
    c.measured(format!(
        "F(sl2) = {f0:.15}, min over orbit sample {lowest:.15}"
    ))
}

/// Central differences of `tr R^2` along every real coordinate direction.
pub fn finite_difference_gradient(mu: &StructureTensor, h: f64) -> Vec<f64> {
    let n = mu.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                for unit in [C64::new(1.0, 0.0), C64::new(0.0, 1.0)] {
                    let mut plus = mu.clone();
                    plus.set(i, j, k, mu.get(i, j, k) + unit * h);
                    let mut minus = mu.clone();
                    minus.set(i, j, k, mu.get(i, j, k) - unit * h);
                    out.push((trace_r_squared(&plus) - trace_r_squared(&minus)) / (2.0 * h));
                }
            }
        }
    }
    out
}

/// The same directional derivatives computed from the analytic gradient:
/// moving `c_ij^k` also moves its antisymmetric twin, hence the factor 2.
pub fn analytic_directional(mu: &StructureTensor) -> Vec<f64> {
    let g = gradient(mu);
    let n = mu.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let z = g.get(i, j, k);
                out.push(2.0 * z.re);
                out.push(2.0 * z.im);
            }
        }
    }
    out
}

fn gradient_check(seed: u64) -> Check {
    let mut c = Check::new("relative error <= 1e-6 on 20 random tensors (n = 3, 4)");
    let mut worst = 0.0f64;
    for case in 0..20u64 {
        let n = 3 + (case % 2) as usize;
        let mu = random::random_tensor(n, seed.wrapping_mul(97).wrapping_add(case));
        let fd = finite_difference_gradient(&mu, 1e-5 * mu.norm());
        let an = analytic_directional(&mu);
        let diff: f64 = fd
            .iter()
            .zip(&an)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let scale: f64 = an.iter().map(|a| a * a).sum::<f64>().sqrt();
        let rel = diff / scale;
        worst = worst.max(rel);
        if !(rel <= 1e-6) {
            c.fail(format!("case {case} (n = {n}): relative error {rel:.2e}"));
        }
    }
    c.measured(format!("max relative error {worst:.2e}"))
}

/// Catalog tensors used for identities that need known derivations.
fn identity_catalog() -> Vec<(String, StructureTensor)> {
    let mut out: Vec<(String, StructureTensor)> = table1_names()
        .iter()
        .filter(|&&n| n != "C4")
        .map(|&n| {
            (
                n.to_string(),
                table1(n, &table1_sample_params(n)).expect("sample").tensor,
            )
        })
        .collect();
    out.push(("mu_he(5)".into(), catalog::mu_he(5).expect("valid").tensor));
    out.push(("mu_hy(4)".into(), catalog::mu_hy(4).expect("valid").tensor));
    out.push(("sl2_compact".into(), catalog::sl2_compact().tensor));
    out
}

fn trace_identities(seed: u64) -> Check {
    let mut c = Check::new(
        "tr R = -2||mu||^2 (1e-12, unit tensors); |tr(R D)| <= 1e-10; tr(R[A,A^*]) = 2||delta(A^*)||^2 (1e-8)",
    );
    let mut w1 = 0.0f64;
    for case in 0..100u64 {
        let n = 2 + (case % 4) as usize;
        let mu = random::random_tensor(n, seed.wrapping_mul(131).wrapping_add(case))
            .normalized()
            .expect("nonzero sample");
        let err = (moment_map(&mu).trace() + 2.0 * mu.norm_sqr()).abs();
        w1 = w1.max(err);
        if !(err <= 1e-12) {
            c.fail(format!(
                "random case {case}: |tr R + 2||mu||^2| = {err:.2e}"
            ));
        }
    }
    let (mut w2, mut w3, mut count) = (0.0f64, 0.0f64, 0usize);
    for (name, t) in identity_catalog() {
        let mu = t.normalized().expect("nonzero entry");
        let r = moment_map(&mu);
        for d in hermitian_derivations(&mu, crate::algebra::DEFAULT_NULLSPACE_TOL) {
            let v = r.trace_product(&d).abs();
            w2 = w2.max(v);
            if !(v <= 1e-10) {
                c.fail(format!("{name}: |tr(R D)| = {v:.2e}"));
            }
        }
        let rc = r.to_complex();
        for a in derivation_algebra(&mu, crate::algebra::DEFAULT_NULLSPACE_TOL).complex {
            count += 1;
            let lhs = rc.mul(&a.commutator(&a.adjoint())).trace().re;
            let rhs = 2.0 * delta(&mu, &a.adjoint()).expect("same dim").norm_sqr();
            let err = (lhs - rhs).abs();
            w3 = w3.max(err);
            if !(err <= 1e-8) {
                c.fail(format!(
                    "{name}: tr(R[A,A^*]) = {lhs}, 2||delta(A^*)||^2 = {rhs}"
                ));
            }
        }
    }
    c.measured(format!(
        "max errors {w1:.2e}, {w2:.2e}, {w3:.2e} ({count} derivations)"
    ))
}

fn abelian_factors(params: &FlowParams) -> Check {
    let mut c = Check::new("type = abelian_sum_type prediction and |F - F(mu)| <= 1e-8");
    let cases = [
        (
            "mu_he(3)+C",
            catalog::mu_he(3).expect("valid").tensor,
            1usize,
        ),
        ("mu_hy(3)+C^2", catalog::mu_hy(3).expect("valid").tensor, 2),
    ];
    let mut measured = Vec::new();
    for (label, mu, m) in cases {
        let base = match criticality(&mu, DEFAULT_CRIT_TOL)
            .and_then(|r| extract_type(&r.d_mu, DEFAULT_TYPE_TOL).map(|t| (t, r.f_value)))
        {
            Ok(x) => x,
            Err(e) => {
                c.fail(format!("{label}: base {e}"));
                continue;
            }
        };
        let predicted = abelian_sum_type(&base.0, m);
        let sum = direct_sum(&mu, &StructureTensor::zeros(m), 1.0);
        match criticality(&sum, DEFAULT_CRIT_TOL) {
            Ok(rep) => {
                let ty = extract_type(&rep.d_mu, DEFAULT_TYPE_TOL).ok();
                measured.push(format!(
                    "{label} {} F={:.12}",
                    ty.as_ref().map_or("-".into(), |t| t.to_string()),
                    rep.f_value
                ));
                if !rep.is_critical
                    || ty.as_ref() != Some(&predicted)
                    || !((rep.f_value - base.1).abs() <= 1e-8)
                {
                    c.fail(format!("{label}: expected {predicted}, F {}", base.1));
                }
            }
            Err(e) => c.fail(format!("{label}: {e}")),
        }
        let want = predicted.to_string();
        check_flow_target(&mut c, label, &sum, params, base.1, Some(&want));
    }
    c.measured(measured.join(", "))
}

fn monotonicity(params: &FlowParams) -> Check {
    let mut c = Check::new("F non-increasing (slack 1e-12) and 4/3 < 2 < 3 < 4 < 6 < 12");
    let mut starts: Vec<(String, StructureTensor)> = identity_catalog();
    starts.push((
        "g8(1/4)".into(),
        table1("g8", &[C64::new(0.25, 0.0)]).expect("valid").tensor,
    ));
    starts.push(("random(4)".into(), random::random_tensor(4, 1)));
    let traces: Vec<_> = starts.par_iter().map(|(_, t)| flow(t, params)).collect();
    let mut worst = 0.0f64;
    for ((name, _), t) in starts.iter().zip(traces) {
        match t {
            Ok(t) => {
                let inc = t.max_increase();
                worst = worst.max(inc);
                if !(inc <= 1e-12) {
                    c.fail(format!("{name}: F increases by {inc:.2e}"));
                }
            }
            Err(e) => c.fail(format!("{name}: {e}")),
        }
    }
    let values: Vec<Ratio<i64>> = table2_rows()
        .iter()
        .map(|(_, _, ty, _)| critical_value(&ty.parse::<CriticalType>().expect("static type")))
        .collect();
    if !values.windows(2).all(|w| w[0] < w[1]) {
        c.fail("critical values are not strictly increasing");
    }
    let shown: Vec<String> = values.iter().map(fraction_string).collect();
    c.measured(format!(
        "max increase {worst:.2e}; values {}",
        shown.join(" < ")
    ))
}

fn excluded_orbits(params: &FlowParams) -> Check {
    let mut c = Check::new("g8(1/4) -> F = 3, (0<1<2;1,2,1); g5, g2(1/27,1/3) -> critical F = 4");
    let r = |x: f64| C64::new(x, 0.0);
    let cases = [
        ("g8(1/4)", "g8", vec![r(0.25)], 3.0, Some("(0<1<2;1,2,1)")),
        ("g5", "g5", vec![], 4.0, None),
        (
            "g2(1/27,1/3)",
            "g2",
            vec![r(1.0 / 27.0), r(1.0 / 3.0)],
            4.0,
            None,
        ),
    ];
    let mut measured = Vec::new();
    for (label, name, p, f, ty) in cases {
        let tensor = table1(name, &p).expect("valid").tensor;
        if let Some(t) = check_flow_target(&mut c, label, &tensor, params, f, ty) {
            measured.push(flow_summary(label, &t));
        }
    }
    c.measured(measured.join("; "))
}

fn semidirect() -> Check {
    let mut c =
        Check::new("residual <= 1e-8 and type (0<1<2;1,2,1) for diag(1,1,2) and diag(1,-1,0)");
    let he = catalog::mu_he(3)
        .expect("valid")
        .tensor
        .normalized()
        .expect("nonzero");
    let want: CriticalType = "(0<1<2;1,2,1)".parse().expect("static type");
    let mut measured = Vec::new();
    for diag in [[1.0, 1.0, 2.0], [1.0, -1.0, 0.0]] {
        let g = ComplexMatrix::from_real_diagonal(&diag);
        let result =
            semidirect_extension(&he, &[g], -6.0).and_then(|mu| criticality(&mu, DEFAULT_CRIT_TOL));
        match result {
            Ok(rep) => {
                let ty = extract_type(&rep.d_mu, DEFAULT_TYPE_TOL).ok();
                measured.push(format!(
                    "diag{diag:?}: residual {:.2e}, type {}",
                    rep.residual,
                    ty.as_ref().map_or("-".into(), |t| t.to_string())
                ));
                if !(rep.residual <= 1e-8) || ty.as_ref() != Some(&want) {
                    c.fail(format!("diag{diag:?}: residual {:.2e}", rep.residual));
                }
            }
            Err(e) => c.fail(format!("diag{diag:?}: {e}")),
        }
    }
    c.measured(measured.join("; "))
}
