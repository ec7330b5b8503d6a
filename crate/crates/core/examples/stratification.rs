//! Flows every dimension-4 family to its limit and groups the results by
//! stratum, in increasing order of F.

use std::collections::BTreeMap;

use momentflow::catalog::{table1, table1_names, table1_sample_params};
use momentflow::classify::{critical_value, fraction_string};
use momentflow::flow::{flow_batch, FlowParams};
use momentflow::tensor::StructureTensor;

fn main() -> momentflow::Result<()> {
    let names: Vec<&str> = table1_names()
        .iter()
        .copied()
        .filter(|&n| n != "C4")
        .collect();
    let starts = names
        .iter()
        .map(|&n| table1(n, &table1_sample_params(n)).map(|e| e.tensor))
        .collect::<momentflow::Result<Vec<StructureTensor>>>()?;
    let mut strata: BTreeMap<_, (String, Vec<&str>)> = BTreeMap::new();
    for (name, trace) in names
        .iter()
        .zip(flow_batch(&starts, &FlowParams::default()))
    {
        let trace = trace?;
        let Some(t) = trace.stratum else {
            println!(
                "{name}: no limit type after {} samples",
                trace.samples.len()
            );
            continue;
        };
        strata
            .entry(critical_value(&t))
            .or_insert_with(|| (t.to_string(), Vec::new()))
            .1
            .push(name);
    }
    println!("C4: zero bracket, not in the projective space");
    for (value, (ty, members)) in strata {
        println!(
            "F = {:<4} {:<20} {}",
            fraction_string(&value),
            ty,
            members.join(", ")
        );
    }
    Ok(())
}
