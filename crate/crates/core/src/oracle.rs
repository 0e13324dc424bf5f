//! Definitional ACWDs by enumerating every member of a small ensemble.
//!
//! Nothing here uses the closed forms; each value is
//! `sum_H #{x : |x| = w, H x^t = s} / #G` computed matrix by matrix.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::base::{single_matrix_all_cosets, single_matrix_cwd, Family};
use crate::bits::{BitMatrix, SyndromeVector};
use crate::combinators::{EnsembleExpr, ExprKind};
use crate::error::{Error, Result};
use crate::poly::binom;
use crate::tensor::SplitAcwdTensor;

/// Largest socket count `jn` for the socket-model enumeration.
pub const MAX_SOCKETS: usize = 9;
/// Cap on distinct matrices held by an enumerator.
pub const MAX_MEMBERS: usize = 1_000_000;
/// Cap on `distinct members * 2^n` for [`acwd_bruteforce`].
pub const MAX_WORK: u128 = 1 << 28;
/// Largest row or column count permuted exhaustively by a shuffle.
pub const MAX_SHUFFLE: usize = 8;

/// Uniform ensemble as distinct matrices with multiplicities.
///
/// `len()` is `#G`, counting repeated matrices once per member (one per socket
/// permutation, one per tier permutation, ...).
#[derive(Clone, Debug)]
pub struct EnsembleEnumerator {
    n: usize,
    m: usize,
    members: Vec<(BitMatrix, u128)>,
    total: u128,
}

impl EnsembleEnumerator {
    fn from_counts(n: usize, m: usize, counts: HashMap<BitMatrix, u128>) -> Result<Self> {
        if counts.len() > MAX_MEMBERS {
            return Err(Error::budget("distinct ensemble members", counts.len(), MAX_MEMBERS));
        }
        let total = counts.values().sum();
        let mut members: Vec<(BitMatrix, u128)> = counts.into_iter().collect();
        members.sort_by(|a, b| a.0.row_masks().cmp(b.0.row_masks()));
        Ok(EnsembleEnumerator { n, m, members, total })
    }

    pub fn single(h: BitMatrix) -> Self {
        EnsembleEnumerator { n: h.n(), m: h.m(), members: vec![(h, 1)], total: 1 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Ensemble size `#G`.
    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn distinct(&self) -> usize {
        self.members.len()
    }

    /// Distinct members with their multiplicities.
    pub fn iter(&self) -> impl Iterator<Item = (&BitMatrix, u128)> {
        self.members.iter().map(|(h, c)| (h, *c))
    }

    /// Apply `f` to every member with every one of `ways` variants, keeping multiplicities.
    fn expand(&self, ways: u128, n: usize, m: usize, f: impl Fn(&BitMatrix, &mut dyn FnMut(BitMatrix))) -> Result<Self> {
        let mut counts: HashMap<BitMatrix, u128> = HashMap::new();
        for (h, c) in &self.members {
            f(h, &mut |x| *counts.entry(x).or_default() += c);
            if counts.len() > MAX_MEMBERS {
                return Err(Error::budget("distinct ensemble members", counts.len(), MAX_MEMBERS));
            }
        }
        let mut e = Self::from_counts(n, m, counts)?;
        e.total = self.total.checked_mul(ways).ok_or_else(|| Error::budget("ensemble size", "over 2^128", "2^128"))?;
        Ok(e)
    }

    fn product(parts: &[EnsembleEnumerator], n: usize, m: usize, join: impl Fn(&BitMatrix, &BitMatrix) -> Result<BitMatrix>) -> Result<Self> {
        let mut acc = parts[0].clone();
        for p in &parts[1..] {
            let work = acc.distinct().saturating_mul(p.distinct());
            if work > MAX_MEMBERS {
                return Err(Error::budget("member combinations", work, MAX_MEMBERS));
            }
            let mut counts: HashMap<BitMatrix, u128> = HashMap::new();
            for (a, ca) in &acc.members {
                for (b, cb) in &p.members {
                    *counts.entry(join(a, b)?).or_default() += ca * cb;
                }
            }
            let total = acc.total * p.total;
            acc = Self::from_counts(n, m, counts)?;
            acc.total = total;
        }
        acc.n = n;
        acc.m = m;
        Ok(acc)
    }
}

/// Heap's algorithm over `0..len`.
fn for_each_permutation(len: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..len).collect();
    let mut c = vec![0; len];
    f(&p);
    let mut i = 0;
    while i < len {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Socket model: each of the `(jn)!` permutations wires variable socket `i`
/// (node `i / j`) to check socket `pi(i)` (node `pi(i) / k`). Repeated edges cancel mod 2.
pub fn enumerate_bipartite(j: usize, k: usize, n: usize) -> Result<EnsembleEnumerator> {
    if j == 0 || k == 0 || n == 0 || !(j * n).is_multiple_of(k) {
        return Err(Error::InvalidParameters(format!("bipartite({j},{k}) with n={n} needs jn = km")));
    }
    let m = j * n / k;
    if j * n > MAX_SOCKETS {
        return Err(Error::budget("socket permutations (jn)", j * n, MAX_SOCKETS));
    }
    let mut counts: HashMap<BitMatrix, u128> = HashMap::new();
    for_each_permutation(j * n, |pi| {
        let mut h = BitMatrix::zeros(m, n).expect("n <= 9");
        for (socket, &target) in pi.iter().enumerate() {
            h.toggle(target / k, socket / j);
        }
        *counts.entry(h).or_default() += 1;
    });
    EnsembleEnumerator::from_counts(n, m, counts)
}

fn weight_k_masks(n: usize, k: usize) -> Vec<u64> {
    (0u64..1 << n).filter(|x| x.count_ones() as usize == k).collect()
}

/// Every `m x n` matrix whose rows all have weight `k`.
pub fn enumerate_constant_row(k: usize, n: usize, m: usize) -> Result<EnsembleEnumerator> {
    if k == 0 || k > n || m == 0 || n > 24 {
        return Err(Error::InvalidParameters(format!("constant_row needs 1 <= k <= n <= 24, m >= 1 (k={k}, n={n}, m={m})")));
    }
    let rows = weight_k_masks(n, k);
    let size = (rows.len() as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if size > MAX_MEMBERS as u128 {
        return Err(Error::budget("constant-row members C(n,k)^m", size, MAX_MEMBERS));
    }
    let mut counts = HashMap::new();
    let mut idx = vec![0usize; m];
    loop {
        let h = BitMatrix::from_row_masks(n, idx.iter().map(|&i| rows[i]).collect())?;
        counts.insert(h, 1);
        let Some(pos) = (0..m).rev().find(|&p| idx[p] + 1 < rows.len()) else { break };
        idx[pos] += 1;
        idx[pos + 1..].iter_mut().for_each(|i| *i = 0);
    }
    EnsembleEnumerator::from_counts(n, m, counts)
}

/// Distinct column permutations of the canonical tier (row `r` covers columns `rk..(r+1)k`).
fn gallager_tiers(k: usize, n: usize) -> Vec<Vec<u64>> {
    fn rec(k: usize, left: u64, rows: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if left == 0 {
            out.push(rows.clone());
            return;
        }
        let bits: Vec<u64> = (0..64).filter(|b| left >> b & 1 == 1).collect();
        for mask in 0u64..1 << bits.len() {
            if mask.count_ones() as usize != k {
                continue;
            }
            let row = bits.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0, |acc, (_, b)| acc | 1 << b);
            rows.push(row);
            rec(k, left & !row, rows, out);
            rows.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, (1u64 << n) - 1, &mut Vec::new(), &mut out);
    out
}

/// `j` stacked tiers, each an independent column permutation of the canonical tier.
///
/// Every distinct tier arises from the same number `(k!)^(m/j)` of permutations, so
/// enumerating distinct tiers with equal weight is the uniform ensemble; `len()`
/// reports the permutation count `(n!)^j`.
pub fn enumerate_gallager(j: usize, k: usize, n: usize) -> Result<EnsembleEnumerator> {
    if j == 0 || k == 0 || !n.is_multiple_of(k) || n > 16 {
        return Err(Error::InvalidParameters(format!("gallager({j},{k}) with n={n} needs k | n, n <= 16")));
    }
    let tiers = gallager_tiers(k, n);
    let size = (tiers.len() as u128).checked_pow(j as u32).unwrap_or(u128::MAX);
    if size > MAX_MEMBERS as u128 {
        return Err(Error::budget("gallager tier combinations", size, MAX_MEMBERS));
    }
    let rows = n / k;
    let per_tier = factorial(k).pow(rows as u32);
    let tier_enum = EnsembleEnumerator {
        n,
        m: rows,
        members: tiers.into_iter().map(|t| (BitMatrix::from_row_masks(n, t).expect("n <= 16"), per_tier)).collect(),
        total: factorial(n),
    };
    EnsembleEnumerator::product(&vec![tier_enum; j], n, rows * j, |a, b| a.stack(b))
}

/// Enumerate the members of any expression tree at desk scale.
pub fn enumerate_expr(e: &EnsembleExpr) -> Result<EnsembleEnumerator> {
    match e.kind() {
        ExprKind::Base(p) => match p.family() {
            Family::Gallager { j, k } => enumerate_gallager(*j, *k, p.n()),
            Family::ConstantRow { k } => enumerate_constant_row(*k, p.n(), p.m()),
            Family::Bipartite { j, k } => enumerate_bipartite(*j, *k, p.n()),
            Family::SingleMatrix(h) => Ok(EnsembleEnumerator::single(h.clone())),
        },
        ExprKind::RowShuffle(c) => {
            let child = enumerate_expr(c)?;
            let m = child.m();
            if m > MAX_SHUFFLE {
                return Err(Error::budget("row permutations (m)", m, MAX_SHUFFLE));
            }
            child.expand(factorial(m), child.n(), m, |h, emit| for_each_permutation(m, |p| emit(h.permute_rows(p))))
        }
        ExprKind::ColShuffle(c) => {
            let child = enumerate_expr(c)?;
            let n = child.n();
            if n > MAX_SHUFFLE {
                return Err(Error::budget("column permutations (n)", n, MAX_SHUFFLE));
            }
            child.expand(factorial(n), n, child.m(), |h, emit| for_each_permutation(n, |p| emit(h.permute_columns(p))))
        }
        ExprKind::Stack(cs) => {
            let parts = cs.iter().map(enumerate_expr).collect::<Result<Vec<_>>>()?;
            EnsembleEnumerator::product(&parts, e.n(), e.m(), |a, b| a.stack(b))
        }
        ExprKind::Concat(cs) => {
            let parts = cs.iter().map(enumerate_expr).collect::<Result<Vec<_>>>()?;
            EnsembleEnumerator::product(&parts, e.n(), e.m(), |a, b| a.concat(b))
        }
    }
}

fn check_work(e: &EnsembleEnumerator) -> Result<()> {
    if e.n() > 24 {
        return Err(Error::budget("exhaustive coset scan (columns)", e.n(), 24));
    }
    let work = (e.distinct() as u128) << e.n();
    if work > MAX_WORK {
        return Err(Error::budget("oracle work (#G * 2^n)", work, MAX_WORK));
    }
    Ok(())
}

/// `sum_H A_w(H, s) / #G`.
pub fn acwd_bruteforce(e: &EnsembleEnumerator, s: &SyndromeVector, w: usize) -> Result<BigRational> {
    check_work(e)?;
    if s.len() != e.m() {
        return Err(Error::InvalidParameters(format!("syndrome has length {}, ensemble has {} rows", s.len(), e.m())));
    }
    if w > e.n() {
        return Ok(BigRational::zero());
    }
    let mut total = BigInt::zero();
    for (h, c) in e.iter() {
        total += BigInt::from(single_matrix_cwd(h, s)?[w]) * BigInt::from(c);
    }
    Ok(BigRational::new(total, BigInt::from(e.len())))
}

/// Full-syndrome ACWD of the whole ensemble, on the partition `[1; m]`.
pub fn acwd_bruteforce_tensor(e: &EnsembleEnumerator) -> Result<SplitAcwdTensor> {
    check_work(e)?;
    let (n, m) = (e.n(), e.m());
    let mut sums = vec![vec![BigInt::zero(); n + 1]; 1 << m];
    for (h, c) in e.iter() {
        let c = BigInt::from(c);
        for (mask, row) in single_matrix_all_cosets(h)?.into_iter().enumerate() {
            for (w, a) in row.into_iter().enumerate() {
                if a > 0 {
                    sums[mask][w] += &c * a;
                }
            }
        }
    }
    let mut t = SplitAcwdTensor::zeros(n, vec![1; m])?;
    let size = BigInt::from(e.len());
    for (mask, row) in sums.into_iter().enumerate() {
        let sig: Vec<usize> = (0..m).map(|r| mask >> r & 1).collect();
        let idx = t.index_of(&sig);
        for (w, v) in row.into_iter().enumerate() {
            t.set_idx(w, idx, BigRational::new(v, size.clone()));
        }
    }
    Ok(t)
}

/// Minimum weight in the coset `{x : H x^t = s}`; `None` when the coset is empty.
pub fn coset_weight(h: &BitMatrix, s: &SyndromeVector) -> Result<Option<usize>> {
    Ok(single_matrix_cwd(h, s)?.iter().position(|&a| a > 0))
}

/// `F_tau(H, s) = sum_{w <= tau} A_w(H, s)`.
pub fn accumulated_cwd(h: &BitMatrix, s: &SyndromeVector, tau: usize) -> Result<u64> {
    Ok(single_matrix_cwd(h, s)?.iter().take(tau + 1).sum())
}

/// Expected closed-form size of a base enumerator.
pub fn expected_size(family: &Family, n: usize, m: usize) -> BigInt {
    match family {
        Family::Bipartite { j, .. } => (1..=(j * n) as u64).map(BigInt::from).product(),
        Family::ConstantRow { k } => binom(n as u64, *k as i64).pow(m as u32),
        Family::Gallager { j, .. } => (1..=n as u64).map(BigInt::from).product::<BigInt>().pow(*j as u32),
        Family::SingleMatrix(_) => BigInt::from(1),
    }
}
