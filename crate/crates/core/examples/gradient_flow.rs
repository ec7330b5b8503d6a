//! Negative gradient flow of F from a non-critical start, with the trace
//! written as CSV and the limit as tensor JSON.
//!
//! Usage: `cargo run --example gradient_flow -- [OUT_DIR]`

use momentflow::catalog::table1;
use momentflow::flow::{flow, FlowParams};
use momentflow::io::write_tensor;
use momentflow::linalg::C64;

fn main() -> momentflow::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(std::path::PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    // g8 at 1/4 lies outside the generic family and flows to the g6 stratum.
    let start = table1("g8", &[C64::new(0.25, 0.0)])?.tensor;
    let trace = flow(&start, &FlowParams::default())?;

    for s in trace
        .samples
        .iter()
        .step_by((trace.samples.len() / 10).max(1))
    {
        println!(
            "step {:>6}  F = {:.12}  |grad| = {:.3e}",
            s.step, s.f, s.grad_norm
        );
    }
    println!("limit F  {:.12}", trace.final_f());
    println!(
        "type     {}",
        trace.stratum.as_ref().map_or("-".into(), |t| t.to_string())
    );
    println!(
        "stop     {:?} (converged = {})",
        trace.stop, trace.converged
    );
    println!("dim Der  {} -> {}", trace.der_dims.0, trace.der_dims.1);

    std::fs::write(out.join("g8.trace.csv"), trace.to_csv())?;
    write_tensor(&out.join("g8.limit.json"), &trace.limit)?;
    println!("wrote {}", out.join("g8.trace.csv").display());
    Ok(())
}
