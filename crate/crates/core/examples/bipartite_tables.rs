//! ACWD tables of two small regular bipartite ensembles.
//!
//!     cargo run --example bipartite_tables

use acwd::cli::tensor_markdown;
use acwd::EnsembleExpr;

fn main() -> acwd::Result<()> {
    for (j, k) in [(2, 4), (1, 2)] {
        let e = EnsembleExpr::bipartite(j, k, 6)?;
        let acwd = e.acwd()?;
        println!("{e}  (n={}, m={})\n", e.n(), e.m());
        println!("{}", tensor_markdown(acwd.tensor(), false));
        assert!(acwd.tensor().total_mass_defects().is_empty());
    }
    Ok(())
}
