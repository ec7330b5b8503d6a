//! Runs the numerical verification suite, or one suite given on the
//! command line (e.g. `cargo run --release --example verify_suite -- trace`).

use momentflow::verify::{run, VerifyOptions, SUITES};

fn main() -> momentflow::Result<()> {
    let only = std::env::args().nth(1);
    if only.as_deref() == Some("--list") {
        for (name, ids) in SUITES {
            println!("{name:<16} {ids:?}");
        }
        return Ok(());
    }
    for r in run(only.as_deref(), &VerifyOptions::default())? {
        println!("{}", r.line());
    }
    Ok(())
}
