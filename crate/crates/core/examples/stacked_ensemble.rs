//! Stacking two ensembles and shuffling the rows of the result.
//!
//!     cargo run --example stacked_ensemble

use acwd::cli::tensor_markdown;
use acwd::combinators::stack_acwd;
use acwd::{EnsembleExpr, SyndromeVector};

fn main() -> acwd::Result<()> {
    let a = EnsembleExpr::bipartite(2, 4, 6)?;
    let b = EnsembleExpr::bipartite(1, 2, 6)?;
    let st = EnsembleExpr::stack(vec![a.clone(), b.clone()])?;

    // cell of the plain stack: syndrome split into the parts seen by each child
    let (sa, sb): (SyndromeVector, SyndromeVector) = ("100".parse()?, "011".parse()?);
    let v = stack_acwd(&a.acwd()?, &b.acwd()?, &sa, &sb, 3)?;
    println!("{st} at s=({sa},{sb}), w=3: {v}\n");

    let shuffled = st.row_shuffle();
    println!("{shuffled}\n");
    println!("{}", tensor_markdown(shuffled.acwd()?.tensor(), false));
    Ok(())
}
