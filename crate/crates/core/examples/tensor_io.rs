//! Tensor JSON round trip and complex parameter parsing.

use momentflow::catalog::resolve;
use momentflow::io::{parse_params, tensor_from_str, tensor_to_string};

fn main() -> momentflow::Result<()> {
    let params = parse_params("0.5")?;
    let g3 = resolve("g3", &params, None, 0)?.tensor;
    let text = tensor_to_string(&g3);
    println!("{text}");
    let back = tensor_from_str(&text)?;
    println!("round trip exact: {}", back == g3);
    println!("parsed: {:?}", parse_params("2,-0.5i,1+2i")?);
    Ok(())
}
