//! The two combined shapes: concatenated row-shuffled stacks (type I) and
//! concatenated stacks sharing a row partition (type II).
//!
//!     cargo run --example split_syndrome

use acwd::cli::tensor_markdown;
use acwd::combinators::{type1_table, type2_acwd, type2_tensor};
use acwd::{EnsembleExpr, SplitAcwdTensor};

fn main() -> acwd::Result<()> {
    let b = || EnsembleExpr::bipartite(1, 2, 2);
    let column = || -> acwd::Result<EnsembleExpr> { EnsembleExpr::stack(vec![b()?, b()?]) };

    let t1 = EnsembleExpr::concat(vec![column()?.row_shuffle(), column()?.row_shuffle(), EnsembleExpr::bipartite(2, 2, 2)?])?;
    println!("type I: {t1}\n");
    println!("{}", tensor_markdown(&SplitAcwdTensor::from_table(&type1_table(&t1)?), false));

    let t2 = EnsembleExpr::concat(vec![column()?, column()?, column()?])?;
    let t = type2_tensor(&t2)?;
    println!("type II: {t2}, row partition {:?}\n", t.parts());
    println!("{}", tensor_markdown(&t, false));
    println!("C_2(1, 0) = {}", type2_acwd(&t2, &[1, 0], 2)?);

    // a plain stack is not row symmetric, so it is not a type I component
    let bad = EnsembleExpr::concat(vec![column()?, EnsembleExpr::bipartite(2, 2, 2)?])?;
    if let Err(e) = type1_table(&bad) {
        println!("\n{e}");
    }
    Ok(())
}
