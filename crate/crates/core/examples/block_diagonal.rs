//! A column-shuffled block-diagonal matrix, evaluated from its diagonal block.
//!
//!     cargo run --example block_diagonal

use acwd::base::block_diagonal_cwd;
use acwd::{BitMatrix, EnsembleExpr, SyndromeVector};

fn main() -> acwd::Result<()> {
    let block = BitMatrix::from_bitstrings(&["1101", "0111"])?;
    let nu = 3;
    let h = block.block_diagonal(nu)?;
    println!("{h}\n");
    let e = EnsembleExpr::single_matrix(h)?.col_shuffle();
    let acwd = e.acwd()?;
    for s in ["000000", "100000", "110000", "101010", "111111"] {
        let s: SyndromeVector = s.parse()?;
        let direct = block_diagonal_cwd(&block, nu, &s)?;
        let row: Vec<String> = (0..=e.n()).map(|w| acwd.at(w, &s).map(|v| v.to_string())).collect::<acwd::Result<_>>()?;
        println!("s={s}: {}", row.join(" "));
        assert!(direct.iter().enumerate().all(|(w, a)| acwd.at(w, &s).unwrap() == a.clone().into()));
    }
    Ok(())
}
