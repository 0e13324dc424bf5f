//! Concatenation, and the split of its weight between the two halves.
//!
//!     cargo run --example concatenated_ensemble

use acwd::cli::tensor_markdown;
use acwd::combinators::{concat_acwd, split_concat_acwd};
use acwd::{EnsembleExpr, SyndromeVector};

fn main() -> acwd::Result<()> {
    let a = EnsembleExpr::bipartite(2, 4, 6)?;
    let b = EnsembleExpr::bipartite(1, 2, 6)?;
    let e = EnsembleExpr::concat(vec![a.clone(), b.clone()])?;
    println!("{e}\n");
    println!("{}", tensor_markdown(e.acwd()?.tensor(), false));

    let (xa, xb) = (a.acwd()?, b.acwd()?);
    let s: SyndromeVector = "010".parse()?;
    let w = 6;
    println!("s={s}, w={w}: {}", concat_acwd(&xa, &xb, &s, w)?);
    for w1 in 0..=w {
        let part = split_concat_acwd(&xa, &xb, &s, w1, w - w1)?;
        println!("  w1={w1} w2={}: {part}", w - w1);
    }
    Ok(())
}
