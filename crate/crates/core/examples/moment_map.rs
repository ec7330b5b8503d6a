//! Moment map and F for a few named brackets and a random tensor.

use momentflow::catalog;
use momentflow::moment::{moment_map, scalar_f};
use momentflow::random::random_tensor;

fn main() -> momentflow::Result<()> {
    let cases = [
        ("heisenberg, n = 3", catalog::mu_he(3)?.tensor),
        ("hyperbolic, n = 4", catalog::mu_hy(4)?.tensor),
        ("compact sl2", catalog::sl2_compact().tensor),
        ("random, n = 4", random_tensor(4, 7)),
    ];
    for (label, mu) in cases {
        let r = moment_map(&mu);
        println!("{label}");
        println!("  F = {:.12}", scalar_f(&mu)?);
        println!(
            "  tr R = {:.12}  (-2 |mu|^2 = {:.12})",
            r.trace(),
            -2.0 * mu.norm_sqr()
        );
        let eig: Vec<String> = r.eigenvalues().iter().map(|x| format!("{x:.6}")).collect();
        println!("  eig R = [{}]", eig.join(", "));
    }
    Ok(())
}
