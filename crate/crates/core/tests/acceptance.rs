//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 8 cannot hold (see `KNOWN_UNATTAINABLE`); it is evaluated as stated and
//! reported as FAIL. The process exits nonzero on any other failure, or on any
//! failure at all when `ACWD_ACCEPTANCE_STRICT=1`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use acwd::asymptotic::{agr_finite_n_check, bipartite_agr, bipartite_typical_coset_weight, AgrValue};
use acwd::cli::agr_curves;
use acwd::combinators::{concat_acwd, split_concat_acwd, type2_tensor};
use acwd::oracle::{acwd_bruteforce_tensor, enumerate_expr};
use acwd::{AcwdTable, BitMatrix, EnsembleExpr, SplitAcwdTensor, SyndromeVector};
use num_bigint::BigInt;
use num_rational::BigRational;

const KNOWN_UNATTAINABLE: &[usize] = &[8];

const BIPARTITE_2_4: &str = "
1 18/11 37/11 60/11 37/11 18/11 1
0 0 0 0 0 0 0
0 16/11 128/33 160/33 128/33 16/11 0
0 0 0 0 0 0 0";

const BIPARTITE_1_2: &str = "
1 0 3 0 3 0 1
0 2 0 4 0 2 0
0 0 4 0 4 0 0
0 0 0 8 0 0 0";

const STACKED_SHUFFLED: &str = "
1 0 37/55 0 37/55 0 1
0 3/11 0 6/11 0 3/11 0
0 0 92/275 0 92/275 0 0
0 12/55 0 6/11 0 12/55 0
0 0 512/825 0 512/825 0 0
0 0 0 32/33 0 0 0
0 0 0 0 0 0 0";

const CONCATENATED: &str = "
1 18/11 70/11 306/11 63 1084/11 1268/11 1084/11 63 306/11 70/11 18/11 1
0 2 100/11 866/33 1984/33 3292/33 3880/33 3292/33 1984/33 866/33 100/11 2 0
0 16/11 260/33 904/33 64 3272/33 3704/33 3272/33 64 904/33 260/33 16/11 0
0 0 96/11 344/11 656/11 1064/11 1312/11 1064/11 656/11 344/11 96/11 0 0";

type Outcome = Result<String, String>;

fn parse_table(text: &str) -> Vec<Vec<BigRational>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(|c| c.parse().unwrap()).collect())
        .collect()
}

fn bip(j: usize, k: usize, n: usize) -> EnsembleExpr {
    EnsembleExpr::bipartite(j, k, n).unwrap()
}

fn ca() -> EnsembleExpr {
    bip(2, 4, 6)
}

fn cb() -> EnsembleExpr {
    bip(1, 2, 6)
}

fn compare(e: &EnsembleExpr, expected: &str) -> Result<(AcwdTable, usize), String> {
    let table = e.acwd().map_err(|x| x.to_string())?.table().ok_or("result is not row symmetric")?;
    let rows = parse_table(expected);
    let mut cells = 0;
    for (sigma, row) in rows.iter().enumerate() {
        for (w, want) in row.iter().enumerate() {
            let got = table.get(w, sigma);
            if &got != want {
                return Err(format!("cell sigma={sigma} w={w}: got {got}, expected {want}"));
            }
            cells += 1;
        }
    }
    if rows.len() != table.m() + 1 || rows[0].len() != table.n() + 1 {
        return Err("table shape differs".into());
    }
    Ok((table, cells))
}

fn table_criterion(e: EnsembleExpr, expected: &str, limit: Option<Duration>) -> Outcome {
    let start = Instant::now();
    let (_, cells) = compare(&e, expected)?;
    let took = start.elapsed();
    match limit {
        Some(l) if took >= l => Err(format!("{cells} cells exact but took {took:?} (limit {l:?})")),
        _ => Ok(format!("{cells} cells exact in {took:?}")),
    }
}

fn oracle_cases() -> Vec<(String, EnsembleExpr, Option<u128>)> {
    let m = |rows: &[&str]| EnsembleExpr::single_matrix(BitMatrix::from_bitstrings(rows).unwrap()).unwrap();
    let a = m(&["1101", "0110"]);
    let b = m(&["1011"]);
    let c = m(&["101", "011"]);
    let mut cases = vec![
        ("(1,2)-bipartite n=4".to_string(), bip(1, 2, 4), Some(24)),
        ("constant-row k=2 n=4 m=2".to_string(), EnsembleExpr::constant_row(2, 4, 2).unwrap(), Some(36)),
        ("Gallager j=2 k=2 n=4".to_string(), EnsembleExpr::gallager(2, 2, 4).unwrap(), None),
    ];
    let comps = vec![
        a.row_shuffle(),
        a.col_shuffle(),
        EnsembleExpr::stack(vec![a.clone(), b.col_shuffle()]).unwrap(),
        EnsembleExpr::stack(vec![a.clone(), b.col_shuffle()]).unwrap().row_shuffle(),
        EnsembleExpr::concat(vec![a.clone(), c.clone()]).unwrap(),
        EnsembleExpr::concat(vec![a.row_shuffle(), c.col_shuffle()]).unwrap(),
        EnsembleExpr::concat(vec![EnsembleExpr::stack(vec![b.clone(), b.col_shuffle()]).unwrap(), c.col_shuffle()]).unwrap(),
        EnsembleExpr::single_matrix(BitMatrix::from_bitstrings(&["110"]).unwrap().block_diagonal(2).unwrap()).unwrap().col_shuffle(),
    ];
    cases.extend(comps.into_iter().map(|e| (e.to_string(), e, None)));
    cases
}

fn criterion5() -> Outcome {
    let start = Instant::now();
    let cases = oracle_cases();
    for (name, e, members) in &cases {
        if e.n() > 8 {
            return Err(format!("{name}: n={} exceeds 8", e.n()));
        }
        let en = enumerate_expr(e).map_err(|x| format!("{name}: {x}"))?;
        if let Some(want) = members {
            if en.len() != *want {
                return Err(format!("{name}: {} members, expected {want}", en.len()));
            }
        }
        let brute = acwd_bruteforce_tensor(&en).map_err(|x| x.to_string())?;
        let closed = e.acwd().and_then(|a| a.tensor().refine(&vec![1; e.m()])).map_err(|x| x.to_string())?;
        if closed != brute {
            return Err(format!("{name}: closed form differs from enumeration"));
        }
    }
    let took = start.elapsed();
    if took >= Duration::from_secs(60) {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("{} ensembles exact at every (w, s) in {took:?}", cases.len()))
}

fn criterion6() -> Outcome {
    let mut tensors: Vec<(String, SplitAcwdTensor)> = Vec::new();
    let tables = [
        ca(),
        cb(),
        EnsembleExpr::stack(vec![ca(), cb()]).unwrap().row_shuffle(),
        EnsembleExpr::concat(vec![ca(), cb()]).unwrap(),
    ];
    for e in tables.iter().chain(oracle_cases().iter().map(|c| &c.1)) {
        tensors.push((e.to_string(), e.acwd().map_err(|x| x.to_string())?.into_tensor()));
    }
    let st = || EnsembleExpr::stack(vec![bip(1, 2, 4), bip(2, 2, 4)]).unwrap();
    let t2 = EnsembleExpr::concat(vec![st(), st(), bip(3, 2, 4)]).unwrap();
    let split = type2_tensor(&t2).map_err(|x| x.to_string())?;
    if split.parts().len() < 2 {
        return Err("type II tensor did not split".into());
    }
    tensors.push((format!("type II {t2}"), split));
    for (name, t) in &tensors {
        let bad = t.total_mass_defects();
        if !bad.is_empty() {
            return Err(format!("{name}: mass defect at w={bad:?}"));
        }
    }
    Ok(format!("{} tensors exact, including split {:?}", tensors.len(), tensors.last().unwrap().1.parts()))
}

fn criterion7() -> Outcome {
    let mut msg = Vec::new();
    for (eta, want) in [(0.2, 0.0788), (0.8, 0.146)] {
        let theta = bipartite_typical_coset_weight(3, 6, eta).map_err(|x| x.to_string())?;
        if (theta - want).abs() > 1e-3 {
            return Err(format!("theta at eta={eta} is {theta:.6}, expected {want} +- 1e-3"));
        }
        msg.push(format!("theta({eta})={theta:.5}"));
    }
    Ok(msg.join(", "))
}

fn criterion8() -> Outcome {
    let below = (0..1000).map(|i| i as f64 / 1000.0 / 6.0);
    for ell in below {
        let v = bipartite_agr(3, 6, ell, 1.0).map_err(|x| x.to_string())?;
        if v != AgrValue::NegInfinity {
            return Err(format!("finite value {v} at l={ell:.5} < 1/6"));
        }
    }
    let lo = 1.0 / 6.0 + 1e-3;
    let grid: Vec<f64> = (0..=1000).map(|i| lo + (1.0 - lo) * i as f64 / 1000.0).collect();
    let bad: Vec<f64> = grid
        .iter()
        .copied()
        .filter(|&ell| !bipartite_agr(3, 6, ell, 1.0).is_ok_and(AgrValue::is_finite))
        .collect();
    if bad.is_empty() {
        return Ok("-inf below 1/6, finite on the whole grid".into());
    }
    Err(format!(
        "-inf below 1/6 holds; {} of {} grid points are -inf, from l={:.4} to l={:.4} (no weight-w vector has all n/2 checks odd once w > 5n/6)",
        bad.len(),
        grid.len(),
        bad[0],
        bad[bad.len() - 1]
    ))
}

fn criterion9() -> Outcome {
    let etas = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0];
    let curves = agr_curves(3, 6, &etas, 1000).map_err(|x| x.to_string())?;
    let mut crossings = Vec::new();
    for c in &curves {
        crossings.push(c.first_crossing(0.0).ok_or(format!("no crossing at eta={}", c.eta))?);
    }
    if crossings.windows(2).all(|p| p[0] < p[1]) {
        Ok(format!("crossings {crossings:?}"))
    } else {
        Err(format!("crossings not increasing: {crossings:?}"))
    }
}

fn criterion10() -> Outcome {
    let start = Instant::now();
    let target = bipartite_agr(3, 6, 0.3, 0.0).map_err(|x| x.to_string())?.to_f64();
    let mut errs = Vec::new();
    for n in [48, 96, 120] {
        let g = agr_finite_n_check(3, 6, n, 0.3, 0.0).map_err(|x| x.to_string())?;
        errs.push((n, (g.growth - target).abs()));
    }
    let took = start.elapsed();
    let desc = format!("agr={target:.5}, |diff| {errs:.4?}, {took:?}");
    let decreasing = errs.windows(2).all(|p| p[1].1 < p[0].1);
    if errs[2].1 <= 0.05 && decreasing && took < Duration::from_secs(120) {
        Ok(desc)
    } else {
        Err(desc)
    }
}

fn criterion11() -> Outcome {
    let (a, b) = (ca().acwd().unwrap(), cb().acwd().unwrap());
    let mut cells = 0;
    for mask in 0..8 {
        let s = SyndromeVector::from_mask(mask, 3);
        for w in 0..=12 {
            let whole = concat_acwd(&a, &b, &s, w).map_err(|x| x.to_string())?;
            let mut sum = BigRational::from_integer(BigInt::from(0));
            for w1 in w.saturating_sub(6)..=w.min(6) {
                sum += split_concat_acwd(&a, &b, &s, w1, w - w1).map_err(|x| x.to_string())?;
            }
            if sum != whole {
                return Err(format!("s={s} w={w}: split sum {sum}, concat {whole}"));
            }
            cells += 1;
        }
    }
    Ok(format!("{cells} (s, w) cells exact"))
}

fn main() -> ExitCode {
    let strict = std::env::var("ACWD_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let criteria: Vec<(usize, Box<dyn Fn() -> Outcome>)> = vec![
        (1, Box::new(|| table_criterion(ca(), BIPARTITE_2_4, Some(Duration::from_secs(1))))),
        (2, Box::new(|| table_criterion(cb(), BIPARTITE_1_2, None))),
        (3, Box::new(|| table_criterion(EnsembleExpr::stack(vec![ca(), cb()]).unwrap().row_shuffle(), STACKED_SHUFFLED, None))),
        (4, Box::new(|| table_criterion(EnsembleExpr::concat(vec![ca(), cb()]).unwrap(), CONCATENATED, None))),
        (5, Box::new(criterion5)),
        (6, Box::new(criterion6)),
        (7, Box::new(criterion7)),
        (8, Box::new(criterion8)),
        (9, Box::new(criterion9)),
        (10, Box::new(criterion10)),
        (11, Box::new(criterion11)),
    ];
    let mut unexpected = 0;
    let mut failed = 0;
    for (id, run) in &criteria {
        match run() {
            Ok(msg) => println!("criterion {id}: PASS {msg}"),
            Err(msg) => {
                failed += 1;
                let known = KNOWN_UNATTAINABLE.contains(id);
                if !known {
                    unexpected += 1;
                }
                println!("criterion {id}: FAIL {msg}{}", if known { " [known unattainable]" } else { "" });
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed ({unexpected} unexpected)", criteria.len() - failed);
    if unexpected > 0 || (strict && failed > 0) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
