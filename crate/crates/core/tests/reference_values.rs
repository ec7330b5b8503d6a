//! Worked values for the named objects, each checked against an oracle
//! computed independently of the code under test where one exists.

use momentflow::algebra::{act, bracket_eval, delta, jacobi_residual, semidirect_extension};
use momentflow::catalog::{self, table1, table1_names, table1_sample_params};
use momentflow::classify::{
    abelian_sum_type, critical_value, extract_type, h_alpha, nilpotent_partition_type,
    v_alpha_membership, CriticalType, DEFAULT_TYPE_TOL,
};
use momentflow::flow::{flow, flow_batch, stratum_label, FlowParams};
use momentflow::linalg::{ComplexMatrix, HermitianMatrix, C64};
use momentflow::moment::{
    criticality, gradient, moment_map, scalar_f, tangential, DEFAULT_CRIT_TOL,
};
use momentflow::random::random_tensor;
use momentflow::tensor::StructureTensor;
use num_rational::Ratio;

fn e(n: usize, i: usize) -> Vec<C64> {
    (0..n)
        .map(|k| C64::new(if k == i { 1.0 } else { 0.0 }, 0.0))
        .collect()
}

fn ty(s: &str) -> CriticalType {
    s.parse().unwrap()
}

#[test]
fn brackets_of_table_entries() {
    let n3 = table1("n3+C", &[]).unwrap().tensor;
    assert_eq!(bracket_eval(&n3, &e(4, 0), &e(4, 1)).unwrap(), e(4, 2));
    let sl2 = table1("sl2+C", &[]).unwrap().tensor;
    let v = bracket_eval(&sl2, &e(4, 0), &e(4, 2)).unwrap();
    assert_eq!(v, e(4, 0).iter().map(|z| z * -2.0).collect::<Vec<_>>());
    let zero = StructureTensor::zeros(3);
    assert!(bracket_eval(&zero, &e(3, 0), &e(3, 1))
        .unwrap()
        .iter()
        .all(|z| *z == C64::new(0.0, 0.0)));
}

#[test]
fn jacobi_values() {
    for &name in table1_names() {
        let t = table1(name, &table1_sample_params(name)).unwrap().tensor;
        assert!(jacobi_residual(&t) <= 1e-12, "{name}");
    }
    assert_eq!(jacobi_residual(&StructureTensor::zeros(4)), 0.0);
    assert!(jacobi_residual(&random_tensor(4, 0)) > 0.1);
}

#[test]
fn scalar_action() {
    let mu = random_tensor(3, 2);
    assert_eq!(
        act(&ComplexMatrix::identity(3), &mu)
            .unwrap()
            .max_abs_diff(&mu),
        0.0
    );
    let t = 2.5;
    let g = ComplexMatrix::identity(3).scale(C64::new(t, 0.0));
    let moved = act(&g, &mu).unwrap();
    assert!(moved.max_abs_diff(&mu.scale_real(1.0 / t)) <= 1e-14);
}

#[test]
fn heisenberg_derivation() {
    let he = catalog::mu_he(3).unwrap().tensor;
    let d = ComplexMatrix::from_real_diagonal(&[1.0, 1.0, 2.0]);
    assert!(delta(&he, &d).unwrap().is_zero());
}

#[test]
fn moment_map_values() {
    // With c_12^3 = 1, ad X_1 and ad X_2 have rank one and the only nonzero
    // bracket lands on X_3: R = diag(-4, -4, 4).
    let r = moment_map(&catalog::mu_he(3).unwrap().tensor);
    assert!(
        r.sub(&HermitianMatrix::from_diagonal(&[-4.0, -4.0, 4.0]))
            .norm()
            <= 1e-14
    );
    assert!(moment_map(&StructureTensor::zeros(3)).norm() == 0.0);
    // Compact sl2: every ad is a rotation and R = -4 I.
    let r = moment_map(&catalog::sl2_compact().tensor);
    assert!(r.sub(&HermitianMatrix::identity(3).scale(-4.0)).norm() <= 1e-14);
}

#[test]
fn closed_form_f() {
    for n in 3..=8 {
        assert!((scalar_f(&catalog::mu_he(n).unwrap().tensor).unwrap() - 12.0).abs() <= 1e-12);
        assert!((scalar_f(&catalog::mu_hy(n).unwrap().tensor).unwrap() - 4.0).abs() <= 1e-12);
    }
    assert!((scalar_f(&catalog::sl2_compact().tensor).unwrap() - 4.0 / 3.0).abs() <= 1e-14);
}

#[test]
fn gradient_at_critical_points_is_radial() {
    for mu in [
        catalog::mu_he(4).unwrap().tensor,
        catalog::sl2_compact().tensor,
    ] {
        let g = gradient(&mu);
        assert!(tangential(&g, &mu).norm() <= 1e-9);
        assert!(g.norm() > 0.0);
    }
    assert!(gradient(&StructureTensor::zeros(3)).is_zero());
}

#[test]
fn flow_labels() {
    let n4 = catalog::mu_a(&catalog::nilpotent_normal_form(&[2]).unwrap()).tensor;
    assert_eq!(
        stratum_label(&n4, &FlowParams::default()).unwrap(),
        ty("(1<2<3<4;1,1,1,1)")
    );
    let sl2c = table1("sl2+C", &[]).unwrap().tensor;
    assert_eq!(
        stratum_label(&sl2c, &FlowParams::default()).unwrap(),
        ty("(0<1;3,1)")
    );
    let he = catalog::mu_he(5).unwrap().tensor;
    assert_eq!(
        stratum_label(&he, &FlowParams::default()).unwrap(),
        ty("(2<3<4;2,2,1)")
    );
    assert!(flow_batch(&[], &FlowParams::default()).is_empty());
    let t = flow(&table1("n4", &[]).unwrap().tensor, &FlowParams::default()).unwrap();
    assert_eq!(
        extract_type(&t.limit_report.d_mu, DEFAULT_TYPE_TOL).unwrap(),
        ty("(1<2<3<4;1,1,1,1)")
    );
}

#[test]
fn type_extraction_values() {
    let d = HermitianMatrix::from_diagonal(&[4.0, 4.0, 8.0]);
    assert_eq!(extract_type(&d, DEFAULT_TYPE_TOL).unwrap(), ty("(1<2;2,1)"));
    assert_eq!(
        extract_type(&HermitianMatrix::zeros(5), DEFAULT_TYPE_TOL).unwrap(),
        CriticalType::zero(5)
    );
}

#[test]
fn critical_value_table() {
    let cases = [
        ("(2<3<4;2,1,1)", Ratio::from_integer(12)),
        ("(0<1;1,3)", Ratio::from_integer(4)),
        ("(1<2<3<4;1,1,1,1)", Ratio::from_integer(6)),
        ("(0<1<2;1,2,1)", Ratio::from_integer(3)),
        ("(0<1;2,2)", Ratio::from_integer(2)),
        ("(0<1;3,1)", Ratio::new(4, 3)),
    ];
    for (t, v) in cases {
        assert_eq!(critical_value(&ty(t)), v, "{t}");
    }
}

#[test]
fn abelian_sums() {
    assert_eq!(abelian_sum_type(&ty("(1<2;2,1)"), 1), ty("(2<3<4;2,1,1)"));
    for n in 2..6 {
        for m in 1..4 {
            let t = CriticalType::new(vec![0, 1], vec![1, n - 1]).unwrap();
            assert_eq!(
                abelian_sum_type(&t, m),
                CriticalType::new(vec![0, 1], vec![1, n - 1 + m]).unwrap()
            );
        }
    }
    assert_eq!(abelian_sum_type(&CriticalType::zero(3), 1), ty("(0<1;3,1)"));
}

#[test]
fn h_alpha_values() {
    let h = h_alpha(&ty("(0<1;1,3)"));
    assert!(
        h.sub(&HermitianMatrix::from_diagonal(&[-1.0, 0.0, 0.0, 0.0]))
            .norm()
            <= 1e-14
    );
}

#[test]
fn v_alpha_values() {
    let he = catalog::mu_he(3).unwrap().tensor;
    assert!(v_alpha_membership(&he, &ty("(1<2;2,1)"), 1e-10).unwrap());
    assert!(v_alpha_membership(&StructureTensor::zeros(3), &ty("(1<2;2,1)"), 1e-10).unwrap());
    assert!(!v_alpha_membership(&catalog::sl2_compact().tensor, &ty("(1<2;2,1)"), 1e-10).unwrap());
}

#[test]
fn partition_types() {
    assert_eq!(
        nilpotent_partition_type(&[2]).unwrap(),
        ty("(1<2<3<4;1,1,1,1)")
    );
    for zeros in 1..4 {
        let mut p = vec![1];
        p.extend(std::iter::repeat_n(0, zeros));
        let n = 2 + 1 + zeros;
        let want = CriticalType::new(vec![2, 3, 4], vec![2, n - 3, 1]).unwrap();
        assert_eq!(nilpotent_partition_type(&p).unwrap(), want, "{p:?}");
    }
}

#[test]
fn mu_a_values() {
    let a = ComplexMatrix::from_real_rows(2, &[1.0, 2.0, -2.0, 1.0]);
    let rep = criticality(&catalog::mu_a(&a).tensor, DEFAULT_CRIT_TOL).unwrap();
    assert!(rep.residual <= 1e-9);
    assert_eq!(
        extract_type(&rep.d_mu, DEFAULT_TYPE_TOL).unwrap(),
        ty("(0<1;1,2)")
    );
    assert!(catalog::mu_a(&ComplexMatrix::zeros(3)).tensor.is_zero());
}

#[test]
fn semidirect_values() {
    let he = catalog::mu_he(3).unwrap().tensor.normalized().unwrap();
    assert_eq!(semidirect_extension(&he, &[], -6.0).unwrap(), he);
    let mu = semidirect_extension(
        &he,
        &[ComplexMatrix::from_real_diagonal(&[1.0, 1.0, 2.0])],
        -6.0,
    )
    .unwrap();
    let inv = momentflow::algebra::structure_invariants(&mu);
    assert_eq!(inv.solvable, Some(true));
    assert_eq!(inv.nilpotent, Some(false));
}

#[test]
fn random_tensors_are_reproducible() {
    assert_eq!(random_tensor(5, 42), random_tensor(5, 42));
    assert_ne!(random_tensor(5, 42), random_tensor(5, 43));
}
