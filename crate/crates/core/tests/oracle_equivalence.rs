use acwd::base::{block_diagonal_cwd, single_matrix_cwd};
use acwd::combinators::{gallager_row_shuffled, row_shuffle_by_enumeration, type1_table, type2_tensor};
use acwd::oracle::{acwd_bruteforce, acwd_bruteforce_tensor, enumerate_expr};
use acwd::{BitMatrix, EnsembleExpr, Error, SyndromeVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn matrix(rows: &[&str]) -> EnsembleExpr {
    EnsembleExpr::single_matrix(BitMatrix::from_bitstrings(rows).unwrap()).unwrap()
}

fn bip(j: usize, k: usize, n: usize) -> EnsembleExpr {
    EnsembleExpr::bipartite(j, k, n).unwrap()
}

/// Closed form and exhaustive enumeration agree at every `(w, s)`.
fn assert_oracle(e: &EnsembleExpr) {
    let members = enumerate_expr(e).unwrap();
    let brute = acwd_bruteforce_tensor(&members).unwrap();
    let closed = e.acwd().unwrap();
    let full = closed.tensor().refine(&vec![1; e.m()]).unwrap();
    assert_eq!(full, brute, "mismatch for {e}");
    assert!(closed.tensor().total_mass_defects().is_empty(), "mass defect for {e}");
}

#[test]
fn base_ensembles_match_enumeration() {
    for (j, k, n) in [(1, 1, 1), (1, 2, 4), (1, 2, 6), (2, 2, 4), (2, 2, 3), (3, 3, 3), (1, 3, 6), (2, 4, 4)] {
        assert_oracle(&bip(j, k, n));
    }
    for (k, n, m) in [(2, 4, 1), (2, 4, 2), (1, 3, 2), (3, 4, 2), (3, 3, 2), (2, 5, 2)] {
        assert_oracle(&EnsembleExpr::constant_row(k, n, m).unwrap());
    }
    for (j, k, n) in [(1, 2, 4), (2, 2, 4), (2, 3, 6), (3, 2, 4), (2, 2, 6)] {
        assert_oracle(&EnsembleExpr::gallager(j, k, n).unwrap());
    }
}

#[test]
fn single_member_oracle_cells() {
    let e = enumerate_expr(&bip(1, 2, 6)).unwrap();
    assert_eq!(e.len(), 720);
    let s: SyndromeVector = "000".parse().unwrap();
    assert_eq!(acwd_bruteforce(&e, &s, 2).unwrap(), BigRational::from_integer(3.into()));
    let g = enumerate_expr(&EnsembleExpr::gallager(1, 2, 4).unwrap()).unwrap();
    let closed = EnsembleExpr::gallager(1, 2, 4).unwrap().acwd().unwrap();
    assert_eq!(acwd_bruteforce(&g, &"00".parse().unwrap(), 2).unwrap(), closed.at(2, &"00".parse().unwrap()).unwrap());
}

#[test]
fn shuffles_stacks_and_concats_of_explicit_matrices() {
    let a = matrix(&["1101", "0110"]);
    let b = matrix(&["1011"]);
    let c = matrix(&["101", "011"]);
    let cases = vec![
        a.row_shuffle(),
        a.col_shuffle(),
        a.col_shuffle().row_shuffle(),
        EnsembleExpr::stack(vec![a.clone(), b.col_shuffle()]).unwrap(),
        EnsembleExpr::stack(vec![a.clone(), b.col_shuffle()]).unwrap().row_shuffle(),
        EnsembleExpr::stack(vec![b.col_shuffle(), a.col_shuffle(), b.col_shuffle()]).unwrap(),
        EnsembleExpr::concat(vec![a.clone(), c.clone()]).unwrap(),
        EnsembleExpr::concat(vec![a.row_shuffle(), c.row_shuffle()]).unwrap(),
        EnsembleExpr::concat(vec![a.clone(), bip(1, 2, 4)]).unwrap(),
        EnsembleExpr::concat(vec![EnsembleExpr::stack(vec![b.clone(), b.col_shuffle()]).unwrap(), c.col_shuffle()]).unwrap(),
        EnsembleExpr::stack(vec![EnsembleExpr::concat(vec![a.clone(), c.clone()]).unwrap(), EnsembleExpr::constant_row(2, 7, 1).unwrap()]).unwrap(),
    ];
    for e in &cases {
        assert!(e.n() <= 8 && e.m() <= 4, "{e}");
        assert_oracle(e);
    }
}

#[test]
fn block_diagonal_column_shuffle() {
    let h_star = BitMatrix::from_bitstrings(&["110"]).unwrap();
    let diag = h_star.block_diagonal(2).unwrap();
    let shuffled = EnsembleExpr::single_matrix(diag.clone()).unwrap().col_shuffle();
    let acwd = shuffled.acwd().unwrap();
    for mask in 0..4 {
        let s = SyndromeVector::from_mask(mask, 2);
        let cwd = block_diagonal_cwd(&h_star, 2, &s).unwrap();
        for (w, a) in cwd.into_iter().enumerate() {
            assert_eq!(acwd.at(w, &s).unwrap(), BigRational::from_integer(a));
        }
    }
    assert_oracle(&shuffled);
}

#[test]
fn row_shuffled_gallager_shortcut_equals_direct_average() {
    for (j, k, n) in [(2, 2, 4), (2, 3, 6), (3, 2, 4)] {
        let g = EnsembleExpr::gallager(j, k, n).unwrap();
        let direct = row_shuffle_by_enumeration(g.acwd().unwrap().tensor()).unwrap();
        assert_eq!(gallager_row_shuffled(j, k, n).unwrap(), direct);
        assert_eq!(g.row_shuffle().acwd().unwrap().table().unwrap(), direct);
    }
}

#[test]
fn type1_fold_against_full_syndrome_and_enumeration() {
    let b = || bip(1, 2, 2);
    let col = || EnsembleExpr::stack(vec![b(), b()]).unwrap().row_shuffle();
    let e = EnsembleExpr::concat(vec![col(), col(), bip(2, 2, 2)]).unwrap();
    let table = type1_table(&e).unwrap();
    let full = e.acwd().unwrap().tensor().refine(&[1, 1]).unwrap();
    for mask in 0..4 {
        let s = SyndromeVector::from_mask(mask, 2);
        for w in 0..=e.n() {
            assert_eq!(full.at_syndrome(w, &s).unwrap(), table.get(w, s.weight()));
        }
    }
    assert_oracle(&e);
}

#[test]
fn type2_against_enumeration() {
    let b = || bip(1, 2, 2);
    let st = || EnsembleExpr::stack(vec![b(), b()]).unwrap();
    let e = EnsembleExpr::concat(vec![st(), st(), st()]).unwrap();
    let t = type2_tensor(&e).unwrap();
    let brute = acwd_bruteforce_tensor(&enumerate_expr(&e).unwrap()).unwrap();
    assert_eq!(t.refine(&[1, 1]).unwrap(), brute);
    let three = EnsembleExpr::stack(vec![bip(1, 2, 2), bip(2, 2, 2)]).unwrap();
    let e3 = EnsembleExpr::concat(vec![three.clone(), three]).unwrap();
    let t3 = type2_tensor(&e3).unwrap();
    assert_eq!(t3.parts(), &[1, 2]);
    assert_eq!(t3.refine(&[1, 1, 1]).unwrap(), acwd_bruteforce_tensor(&enumerate_expr(&e3).unwrap()).unwrap());
    assert!(t3.total_mass_defects().is_empty());
}

#[test]
fn budgets_are_explicit() {
    assert!(matches!(enumerate_expr(&bip(2, 4, 6)), Err(Error::Budget { .. })));
    let wide = matrix(&["110110110"]);
    assert!(matches!(enumerate_expr(&wide.col_shuffle()), Err(Error::Budget { .. })));
    let h = BitMatrix::zeros(1, 25).unwrap();
    assert!(matches!(single_matrix_cwd(&h, &SyndromeVector::zero(1)), Err(Error::Budget { .. })));
}

fn small_matrix(m: usize, n: usize) -> impl Strategy<Value = EnsembleExpr> {
    prop::collection::vec(0u64..(1 << n), m).prop_map(move |rows| {
        EnsembleExpr::single_matrix(BitMatrix::from_row_masks(n, rows).unwrap()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_concat_of_shuffles(a in small_matrix(2, 3), b in small_matrix(2, 3), ra in any::<bool>(), cb in any::<bool>()) {
        let a = if ra { a.row_shuffle() } else { a };
        let b = if cb { b.col_shuffle() } else { b };
        assert_oracle(&EnsembleExpr::concat(vec![a, b]).unwrap());
    }

    #[test]
    fn random_stack_then_shuffle(a in small_matrix(1, 4), b in small_matrix(2, 4), shuffle in any::<bool>()) {
        let st = EnsembleExpr::stack(vec![a, b.col_shuffle()]).unwrap();
        assert_oracle(&if shuffle { st.row_shuffle() } else { st });
    }

    #[test]
    fn accumulated_counts_cover_the_space(rows in prop::collection::vec(0u64..64, 1..4)) {
        let h = BitMatrix::from_row_masks(6, rows).unwrap();
        let mut total = BigInt::from(0);
        for mask in 0..(1u64 << h.m()) {
            let s = SyndromeVector::from_mask(mask, h.m());
            let cwd = single_matrix_cwd(&h, &s).unwrap();
            let f: Vec<u64> = cwd.iter().scan(0, |acc, &a| { *acc += a; Some(*acc) }).collect();
            prop_assert!(f.windows(2).all(|p| p[0] <= p[1]));
            let d = acwd::oracle::coset_weight(&h, &s).unwrap();
            for (tau, &ft) in f.iter().enumerate() {
                prop_assert_eq!(ft >= 1, d.is_some_and(|d| d <= tau));
            }
            total += f[6];
        }
        prop_assert_eq!(total, BigInt::from(64));
    }
}
