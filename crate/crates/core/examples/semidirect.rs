//! Solvable critical points built as semidirect extensions of the
//! three-dimensional Heisenberg algebra by diagonal derivations.

use momentflow::algebra::semidirect_extension;
use momentflow::catalog::mu_he;
use momentflow::classify::{extract_type, DEFAULT_TYPE_TOL};
use momentflow::linalg::ComplexMatrix;
use momentflow::moment::{criticality, DEFAULT_CRIT_TOL};

fn main() -> momentflow::Result<()> {
    let he = mu_he(3)?.tensor.normalized()?;
    for diag in [[1.0, 1.0, 2.0], [1.0, -1.0, 0.0], [2.0, 1.0, 3.0]] {
        let g = ComplexMatrix::from_real_diagonal(&diag);
        let mu = semidirect_extension(&he, &[g], -6.0)?;
        let rep = criticality(&mu, DEFAULT_CRIT_TOL)?;
        let ty = extract_type(&rep.d_mu, DEFAULT_TYPE_TOL).map(|t| t.to_string());
        println!(
            "diag{diag:?}: F = {:.9}  residual {:.2e}  type {}",
            rep.f_value,
            rep.residual,
            ty.unwrap_or_else(|e| e.to_string())
        );
    }
    // A non-derivation is rejected.
    let bad = ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 0.0]);
    println!(
        "diag[1, 0, 0]: {}",
        semidirect_extension(&he, &[bad], -6.0).unwrap_err()
    );
    Ok(())
}
