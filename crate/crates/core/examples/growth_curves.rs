//! Growth-rate curves of the (3,6) bipartite ensemble, one per syndrome weight,
//! and the finite-length values they approximate.
//!
//!     cargo run --release --example growth_curves > curves.csv

use acwd::asymptotic::{agr_finite_n_check, bipartite_agr};
use acwd::cli::{agr_curves, cmd_agr, OutputFormat};

fn main() -> acwd::Result<()> {
    let etas = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0];
    print!("{}", cmd_agr(3, 6, &etas, 100, OutputFormat::Csv)?);

    for c in agr_curves(3, 6, &etas, 1000)? {
        eprintln!("eta={:.1}: first zero crossing at l={:?}", c.eta, c.first_crossing(0.0));
    }
    let asym = bipartite_agr(3, 6, 0.3, 0.0)?;
    eprintln!("\nl=0.3, eta=0: asymptotic {asym}");
    for n in [48, 96, 120, 240] {
        let g = agr_finite_n_check(3, 6, n, 0.3, 0.0)?;
        eprintln!("  n={n:<4} w={:<3} {:.5}", g.w, g.growth);
    }
    Ok(())
}
