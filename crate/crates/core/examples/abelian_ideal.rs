//! The family mu_A on C x C^n: critical exactly when A is normal, and the
//! nilpotent normal forms are critical with predicted types.

use momentflow::catalog::{mu_a, nilpotent_normal_form};
use momentflow::classify::{extract_type, nilpotent_partition_type, DEFAULT_TYPE_TOL};
use momentflow::moment::{criticality, DEFAULT_CRIT_TOL};
use momentflow::random::{gaussian_matrix_from, normal_matrix_from, rng};

fn main() -> momentflow::Result<()> {
    let mut r = rng(3);
    for n in 2..=4 {
        let normal = normal_matrix_from(n, &mut r);
        let generic = gaussian_matrix_from(n, &mut r);
        let a = criticality(&mu_a(&normal).tensor, DEFAULT_CRIT_TOL)?;
        let b = criticality(&mu_a(&generic).tensor, DEFAULT_CRIT_TOL)?;
        println!(
            "n = {n}: normal residual {:.2e} type {}   generic residual {:.2e}",
            a.residual,
            extract_type(&a.d_mu, DEFAULT_TYPE_TOL)?,
            b.residual
        );
    }
    for p in [vec![1], vec![2, 0], vec![2, 1], vec![3]] {
        let rep = criticality(&mu_a(&nilpotent_normal_form(&p)?).tensor, DEFAULT_CRIT_TOL)?;
        println!(
            "normal form {p:?}: residual {:.2e}  type {}  predicted {}",
            rep.residual,
            extract_type(&rep.d_mu, DEFAULT_TYPE_TOL)?,
            nilpotent_partition_type(&p)?
        );
    }
    Ok(())
}
