//! Critical types: extraction from D, exact critical values, abelian factors
//! and the nilpotent normal forms of the mu_A family.

use momentflow::catalog;
use momentflow::classify::{
    abelian_sum_type, critical_value, extract_type, fraction_string, nilpotent_partition_type,
    DEFAULT_TYPE_TOL,
};
use momentflow::moment::{criticality, DEFAULT_CRIT_TOL};

fn main() -> momentflow::Result<()> {
    for n in 3..=6 {
        let rep = criticality(&catalog::mu_he(n)?.tensor, DEFAULT_CRIT_TOL)?;
        let t = extract_type(&rep.d_mu, DEFAULT_TYPE_TOL)?;
        println!(
            "heisenberg n = {n}: type {t}  value {}  F {:.12}",
            fraction_string(&critical_value(&t)),
            rep.f_value
        );
    }

    let t = "(1<2;2,1)".parse()?;
    for m in 0..3 {
        println!("(1<2;2,1) + C^{m} -> {}", abelian_sum_type(&t, m));
    }

    for p in [
        vec![1],
        vec![2],
        vec![1, 1],
        vec![2, 1],
        vec![3],
        vec![1, 0, 0],
    ] {
        let t = nilpotent_partition_type(&p)?;
        println!(
            "partition {p:?}: {t}  value {}",
            fraction_string(&critical_value(&t))
        );
    }
    Ok(())
}
