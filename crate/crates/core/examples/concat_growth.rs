//! Growth rate of a concatenation of two (3,6) halves, against exact tables.
//!
//!     cargo run --release --example concat_growth

use acwd::asymptotic::{concat_agr, BipartiteAgr, ConcatShape};
use acwd::combinators::concat_row_symmetric;
use acwd::poly::log2_rational;
use acwd::EnsembleExpr;
use num_traits::Zero;

fn main() -> acwd::Result<()> {
    let f = |l: f64, e: f64| BipartiteAgr::new(3, 6, e).at(l);
    let shape = ConcatShape::new(0.5, 0.5, 0.75)?;
    let n = 96;
    let half = EnsembleExpr::bipartite(3, 6, n / 2)?.acwd()?;
    let table = concat_row_symmetric(&half, &half)?.table().expect("row symmetric");

    for ell in [0.1, 0.2, 0.3, 0.4, 0.5] {
        let res = concat_agr(&f, &f, shape, ell, 0.0, 41)?;
        let w = (0..=n)
            .filter(|&w| !table.get(w, 0).is_zero())
            .min_by(|a, b| (*a as f64 - ell * n as f64).abs().total_cmp(&(*b as f64 - ell * n as f64).abs()))
            .unwrap();
        let finite = log2_rational(&table.get(w, 0)) / n as f64;
        let [l1, l2, k1, k2] = res.argmax.unwrap_or([f64::NAN; 4]);
        println!(
            "l={ell:.1}  agr={:.4}  n={n},w={w}: {finite:.4}  argmax l1={l1:.3} l2={l2:.3} k1={k1:.3} k2={k2:.3}",
            res.value.to_f64()
        );
    }
    Ok(())
}
