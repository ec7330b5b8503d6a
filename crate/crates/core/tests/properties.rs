use momentflow::algebra::{act, delta, delta_star, inner_product};
use momentflow::catalog;
use momentflow::classify::{
    abelian_sum_type, critical_value, extract_type, h_alpha, nilpotent_partition_type,
    CriticalType, DEFAULT_TYPE_TOL,
};
use momentflow::io::{tensor_from_str, tensor_to_string};
use momentflow::linalg::{HermitianMatrix, C64};
use momentflow::moment::{gradient, moment_map, scalar_f, tangential, trace_r_squared};
use momentflow::random::{bounded_condition_from, gaussian_matrix, rng, unitary};
use momentflow::tensor::StructureTensor;
use momentflow::verify;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = C64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| C64::new(a, b))
}

/// Random tensors of dimension 2..=4 with at least one sizeable entry.
fn tensor() -> impl Strategy<Value = StructureTensor> {
    (2usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(coeff(), n * n * (n - 1) / 2)))
        .prop_map(|(n, v)| {
            let mut it = v.into_iter();
            StructureTensor::from_fn(n, |_, _, _| it.next().unwrap())
        })
        .prop_filter("nonzero", |t| t.norm() > 1e-3)
}

fn antisymmetric(t: &StructureTensor) -> bool {
    let n = t.dim();
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| t.get(i, j, k) == -t.get(j, i, k))))
}

fn dist(a: &StructureTensor, b: &StructureTensor) -> f64 {
    a.sub(b).norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn operations_preserve_antisymmetry(mu in tensor(), seed in any::<u64>()) {
        let n = mu.dim();
        let g = bounded_condition_from(n, 1.0, &mut rng(seed));
        prop_assert!(antisymmetric(&act(&g, &mu).unwrap()));
        prop_assert!(antisymmetric(&delta(&mu, &gaussian_matrix(n, seed)).unwrap()));
        prop_assert!(antisymmetric(&gradient(&mu)));
        prop_assert!(antisymmetric(&mu.normalized().unwrap()));
    }

    #[test]
    fn action_law(mu in tensor(), seed in any::<u64>()) {
        let n = mu.dim();
        let mut r = rng(seed);
        let g = bounded_condition_from(n, 1.0, &mut r);
        let h = bounded_condition_from(n, 1.0, &mut r);
        let lhs = act(&g.mul(&h), &mu).unwrap();
        let rhs = act(&g, &act(&h, &mu).unwrap()).unwrap();
        prop_assert!(dist(&lhs, &rhs) <= 1e-10 * mu.norm());
    }

    #[test]
    fn delta_star_is_adjoint(mu in tensor(), seed in any::<u64>()) {
        let n = mu.dim();
        let a = gaussian_matrix(n, seed);
        let lambda = momentflow::random::random_tensor(n, seed ^ 0x5555);
        let lhs = inner_product(&lambda, &delta(&mu, &a).unwrap()).unwrap();
        let rhs = delta_star(&mu, &lambda).unwrap().inner(&a);
        let bound = 1e-10 * lambda.norm() * a.norm() * mu.norm();
        prop_assert!((lhs - rhs).norm() <= bound, "{lhs} vs {rhs}");
    }

    #[test]
    fn unitary_invariance_and_equivariance(mu in tensor(), seed in any::<u64>()) {
        let k = unitary(mu.dim(), seed);
        let moved = act(&k, &mu).unwrap();
        prop_assert!((moved.norm() - mu.norm()).abs() <= 1e-10 * mu.norm());
        let expected = k.mul(&moment_map(&mu).to_complex()).mul(&k.adjoint());
        let diff = moment_map(&moved).to_complex().sub(&expected).norm();
        prop_assert!(diff <= 1e-10 * mu.norm_sqr().max(1.0));
        prop_assert!((scalar_f(&moved).unwrap() - scalar_f(&mu).unwrap()).abs() <= 1e-9);
    }

    #[test]
    fn scaling(mu in tensor(), t in coeff().prop_filter("nonzero", |z| z.norm() > 0.1)) {
        let r = moment_map(&mu).scale(t.norm_sqr());
        let scaled = moment_map(&mu.scale(t));
        prop_assert!(scaled.sub(&r).norm() <= 1e-12 * r.norm().max(1.0));
        prop_assert!((scalar_f(&mu.scale(t)).unwrap() - scalar_f(&mu).unwrap()).abs() <= 1e-10);
    }

    #[test]
    fn trace_of_moment_map(mu in tensor()) {
        let tr = moment_map(&mu).trace();
        prop_assert!((tr + 2.0 * mu.norm_sqr()).abs() <= 1e-12 * mu.norm_sqr().max(1.0));
    }

    #[test]
    fn derivative_of_moment_map(mu in tensor(), seed in any::<u64>()) {
        // d/ds R(mu + s lambda) at s = 0 is -4 times the hermitian part of delta*(lambda).
        let lambda = momentflow::random::random_tensor(mu.dim(), seed);
        let h = 1e-5;
        let fd = moment_map(&mu.axpy(C64::new(h, 0.0), &lambda))
            .sub(&moment_map(&mu.axpy(C64::new(-h, 0.0), &lambda)))
            .scale(0.5 / h);
        let an = delta_star(&mu, &lambda).unwrap().hermitian_part().scale(-4.0);
        prop_assert!(fd.sub(&an).norm() <= 1e-6 * an.norm().max(1e-3));
    }

    #[test]
    fn gradient_matches_finite_differences(mu in tensor(), seed in any::<u64>()) {
        let lambda = momentflow::random::random_tensor(mu.dim(), seed);
        let h = 1e-5;
        let fd = (trace_r_squared(&mu.axpy(C64::new(h, 0.0), &lambda))
            - trace_r_squared(&mu.axpy(C64::new(-h, 0.0), &lambda))) / (2.0 * h);
        // Real directional derivative: Re<grad, lambda> over all ordered triples.
        let an = inner_product(&gradient(&mu), &lambda).unwrap().re;
        prop_assert!((fd - an).abs() <= 1e-6 * an.abs().max(1.0), "{fd} vs {an}");
    }

    #[test]
    fn tangential_field_is_tangent(mu in tensor(), seed in any::<u64>()) {
        let v = tangential(&momentflow::random::random_tensor(mu.dim(), seed), &mu);
        let re = inner_product(&v, &mu).unwrap().re;
        prop_assert!(re.abs() <= 1e-10 * v.norm().max(1e-300) * mu.norm());
    }

    #[test]
    fn tensor_json_round_trip(mu in tensor(), bits in prop::collection::vec(any::<u64>(), 4)) {
        // Mix in awkward values: subnormals, huge magnitudes, negative zero.
        let mut t = mu.clone();
        let odd = [f64::from_bits(bits[0] >> 12), -0.0, 1e300 * (bits[1] % 7) as f64, f64::from_bits(bits[2] >> 2)];
        for (idx, x) in odd.iter().enumerate() {
            if x.is_finite() && idx < t.dim() - 1 {
                t.set(idx, idx + 1, 0, C64::new(*x, f64::from_bits(bits[3] >> 13)));
            }
        }
        let back = tensor_from_str(&tensor_to_string(&t)).unwrap();
        for (a, b) in t.coefficients().iter().zip(back.coefficients()) {
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }
}

/// Types realized by catalog critical points, with abelian factors added.
fn realized_types() -> Vec<CriticalType> {
    let mut out: Vec<CriticalType> = verify::table2_rows()
        .iter()
        .map(|(_, _, ty, _)| ty.parse().unwrap())
        .collect();
    for n in 3..=8 {
        out.push(catalog::mu_he(n).unwrap().expected_type.unwrap());
        out.push(catalog::mu_hy(n).unwrap().expected_type.unwrap());
    }
    for p in verify::partitions_up_to(6) {
        out.push(nilpotent_partition_type(&p).unwrap());
    }
    let base = out.clone();
    for t in base {
        out.push(abelian_sum_type(&t, 1));
        out.push(abelian_sum_type(&t, 2));
    }
    out
}

fn critical_type() -> impl Strategy<Value = CriticalType> {
    prop::sample::select(realized_types())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn type_text_round_trip(t in critical_type()) {
        let back: CriticalType = t.to_string().parse().unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(CriticalType::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn type_extraction_recovers_types(t in critical_type(), scale in 0.1..10.0f64) {
        let d = t.d_alpha().scale(scale);
        let got = extract_type(&d, DEFAULT_TYPE_TOL).unwrap();
        prop_assert_eq!(&got, &t);
        // Undoing the shift inside h_alpha gives the type back; shifting by the
        // smallest eigenvalue only does so when k_1 = 0.
        let h = h_alpha(&t);
        if !t.is_zero_type() {
            let (s1, s2) = t.moments();
            let back = h.shift(s2 as f64 / s1 as f64);
            prop_assert_eq!(&extract_type(&back, DEFAULT_TYPE_TOL).unwrap(), &t);
        }
        if t.ks()[0] == 0 {
            let min = h.eigenvalues()[0];
            prop_assert_eq!(&extract_type(&h.shift(-min), DEFAULT_TYPE_TOL).unwrap(), &t);
        }
        let g = got.ks().iter().copied().filter(|&k| k > 0).fold(0u64, num_integer::gcd);
        prop_assert!(got.is_zero_type() || g == 1);
        let value = critical_value(&got);
        prop_assert!(*value.numer() > 0);
    }

    #[test]
    fn unitary_conjugation_keeps_type(t in critical_type(), seed in any::<u64>()) {
        let u = unitary(t.dim(), seed);
        let d = u.mul(&t.d_alpha().to_complex()).mul(&u.adjoint());
        let d = HermitianMatrix::symmetrized(d.into_matrix());
        prop_assert_eq!(extract_type(&d, DEFAULT_TYPE_TOL).unwrap(), t);
    }
}
