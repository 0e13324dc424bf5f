//! Closed forms against exhaustive enumeration of every ensemble member.
//!
//!     cargo run --release --example oracle_check

use acwd::cli::oracle_comparison;
use acwd::{BitMatrix, EnsembleExpr};

fn main() -> acwd::Result<()> {
    let h = |rows: &[&str]| EnsembleExpr::single_matrix(BitMatrix::from_bitstrings(rows)?);
    let a = h(&["1101", "0110"])?;
    let c = h(&["101", "011"])?;
    let cases = vec![
        EnsembleExpr::bipartite(1, 2, 4)?,
        EnsembleExpr::constant_row(2, 4, 2)?,
        EnsembleExpr::gallager(2, 2, 4)?,
        EnsembleExpr::stack(vec![a.clone(), h(&["1011"])?.col_shuffle()])?.row_shuffle(),
        EnsembleExpr::concat(vec![a.row_shuffle(), c.col_shuffle()])?,
    ];
    for e in &cases {
        let cmp = oracle_comparison(e)?;
        println!("{:<70} members={:<6} match={}", e.to_string(), cmp.members, cmp.exact_match());
    }

    match oracle_comparison(&EnsembleExpr::bipartite(2, 4, 6)?) {
        Err(err) => println!("\nlarger ensemble: {err}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
