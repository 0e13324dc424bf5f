//! Typical coset weight and a certified tail bound below it.
//!
//!     cargo run --release --example typical_weight

use acwd::asymptotic::{bipartite_typical_coset_weight, coset_weight_tail_bound, BipartiteAgr};

fn main() -> acwd::Result<()> {
    for eta in [0.0, 0.2, 0.4, 0.6, 0.8] {
        let theta = bipartite_typical_coset_weight(3, 6, eta)?;
        let agr = BipartiteAgr::new(3, 6, eta);
        let upper = 0.9 * theta;
        match coset_weight_tail_bound(|l| agr.at(l), upper) {
            Ok(cert) => println!("eta={eta:.1}  theta={theta:.5}  sup on [0, {upper:.4}] = {} at l={:.4}", cert.sup, cert.argmax),
            // at eta = 0 the empty vector keeps the growth rate at 0 near l = 0
            Err(e) => println!("eta={eta:.1}  theta={theta:.5}  {e}"),
        }
    }
    Ok(())
}
