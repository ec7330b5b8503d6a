use momentflow::algebra::{act, jacobi_residual};
use momentflow::catalog::{self, table1, table1_names, table1_sample_params};
use momentflow::flow::{flow, flow_batch, FlowParams};
use momentflow::linalg::{ComplexMatrix, C64};
use momentflow::random::{gaussian_matrix, random_tensor};
use momentflow::tensor::StructureTensor;
use proptest::prelude::*;

const STRATA: [f64; 6] = [4.0 / 3.0, 2.0, 3.0, 4.0, 6.0, 12.0];

fn ratio(q: &num_rational::Ratio<i64>) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

fn nonzero_table1() -> Vec<(String, catalog::CatalogEntry)> {
    table1_names()
        .iter()
        .filter(|&&n| n != "C4")
        .map(|&n| (n.to_string(), table1(n, &table1_sample_params(n)).unwrap()))
        .collect()
}

#[test]
fn table1_limits_match_expected_values() {
    let entries = nonzero_table1();
    let tensors: Vec<StructureTensor> = entries.iter().map(|(_, e)| e.tensor.clone()).collect();
    let traces = flow_batch(&tensors, &FlowParams::default());
    for ((name, e), t) in entries.iter().zip(traces) {
        let t = t.unwrap();
        assert!(t.converged, "{name}");
        let f = t.final_f();
        assert!(
            STRATA.iter().any(|s| (s - f).abs() <= 1e-6),
            "{name}: F = {f}"
        );
        let want = ratio(e.expected_f.as_ref().unwrap());
        assert!((f - want).abs() <= 1e-6, "{name}: F = {f}, expected {want}");
        assert_eq!(t.stratum.as_ref(), e.expected_type.as_ref(), "{name}");
        assert!((t.limit.norm() - 1.0).abs() <= 1e-12, "{name}");
        assert!(t.max_increase() <= 1e-12, "{name}");
        assert!(t.der_dims.1 >= t.der_dims.0, "{name}: {:?}", t.der_dims);
        assert!(jacobi_residual(&t.limit) <= 1e-8, "{name}");
        if e.is_nilpotent {
            assert!(t.stratum.as_ref().unwrap().ks()[0] >= 1, "{name}");
        }
    }
}

#[test]
fn nilpotent_catalog_limits_have_positive_first_weight() {
    let mut starts = vec![catalog::mu_he(5).unwrap().tensor];
    for p in [vec![2, 1], vec![3], vec![1, 1, 0]] {
        starts.push(catalog::mu_a(&catalog::nilpotent_normal_form(&p).unwrap()).tensor);
    }
    for t in flow_batch(&starts, &FlowParams::default()) {
        let t = t.unwrap();
        assert!(t.converged);
        assert!(t.stratum.unwrap().ks()[0] >= 1);
    }
}

#[test]
fn perturbed_heisenberg_stays_in_its_stratum() {
    // Perturb along the orbit: g = I + 0.01 X with X of unit norm.
    let he = catalog::mu_he(4).unwrap().tensor.normalized().unwrap();
    let starts: Vec<StructureTensor> = (0..50)
        .map(|seed| {
            let x = gaussian_matrix(4, 1000 + seed);
            let g = ComplexMatrix::identity(4).add(&x.scale(C64::new(1e-2 / x.norm(), 0.0)));
            act(&g, &he).unwrap()
        })
        .collect();
    for (i, t) in flow_batch(&starts, &FlowParams::default())
        .into_iter()
        .enumerate()
    {
        let t = t.unwrap();
        assert!(
            (t.final_f() - 12.0).abs() <= 1e-6,
            "perturbation {i}: F = {}",
            t.final_f()
        );
    }
}

#[test]
fn excluded_orbit_targets() {
    let r = |x: f64| C64::new(x, 0.0);
    let g8 = flow(
        &table1("g8", &[r(0.25)]).unwrap().tensor,
        &FlowParams::default(),
    )
    .unwrap();
    assert!(g8.converged);
    assert!((g8.final_f() - 3.0).abs() <= 1e-6);
    assert_eq!(g8.stratum.unwrap().to_string(), "(0<1<2;1,2,1)");
    // Generic members of the family land in the catalog stratum.
    let e = table1("g8", &[r(1.0)]).unwrap();
    let g8 = flow(&e.tensor, &FlowParams::default()).unwrap();
    assert!((g8.final_f() - ratio(e.expected_f.as_ref().unwrap())).abs() <= 1e-6);
}

#[test]
fn batch_is_identical_to_sequential() {
    let starts: Vec<StructureTensor> = (0..6).map(|s| random_tensor(3, s)).collect();
    let params = FlowParams {
        max_steps: 300,
        ..FlowParams::default()
    };
    let batch = flow_batch(&starts, &params);
    for (s, b) in starts.iter().zip(batch) {
        let a = flow(s, &params).unwrap();
        let b = b.unwrap();
        assert_eq!(a.samples, b.samples);
        assert_eq!(a.limit, b.limit);
    }
}

#[test]
fn step_budget_is_respected() {
    let params = FlowParams {
        max_steps: 5,
        ..FlowParams::default()
    };
    let t = flow(&random_tensor(4, 3), &params).unwrap();
    assert!(!t.converged);
    assert!(t.stratum.is_none());
    assert!(t.samples.last().unwrap().step <= 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_flows_stay_on_the_sphere_and_descend(n in 2usize..=4, seed in any::<u64>()) {
        let params = FlowParams { max_steps: 400, ..FlowParams::default() };
        let mu = random_tensor(n, seed);
        let t = flow(&mu, &params).unwrap();
        prop_assert!((t.limit.norm() - 1.0).abs() <= 1e-12);
        prop_assert!(t.max_increase() <= 1e-12);
        prop_assert!(t.samples.windows(2).all(|w| w[0].step < w[1].step));
        prop_assert!(t.der_dims.1 >= t.der_dims.0);
        let f0 = momentflow::moment::scalar_f(&mu).unwrap();
        prop_assert!(t.final_f() <= f0 + 1e-12);
    }
}
