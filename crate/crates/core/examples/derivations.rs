//! Derivation algebras and structural invariants of the dimension-4 table.

use momentflow::algebra::{derivation_algebra, structure_invariants, DEFAULT_NULLSPACE_TOL};
use momentflow::catalog::{table1, table1_names, table1_sample_params};

fn main() -> momentflow::Result<()> {
    println!(
        "{:<8} {:>6} {:>9} {:>6} {:>6}  nil sol ss",
        "name", "dimDer", "herm Der", "[g,g]", "z"
    );
    for &name in table1_names() {
        let mu = table1(name, &table1_sample_params(name))?.tensor;
        let der = derivation_algebra(&mu, DEFAULT_NULLSPACE_TOL);
        let inv = structure_invariants(&mu);
        let b = |x: Option<bool>| match x {
            Some(true) => "y",
            Some(false) => "n",
            None => "?",
        };
        println!(
            "{:<8} {:>6} {:>9} {:>6} {:>6}  {:>3} {:>3} {:>2}",
            name,
            der.complex_dim,
            der.hermitian_dim,
            inv.dim_derived,
            inv.dim_center.map_or("-".into(), |d| d.to_string()),
            b(inv.nilpotent),
            b(inv.solvable),
            b(inv.semisimple),
        );
    }
    Ok(())
}
