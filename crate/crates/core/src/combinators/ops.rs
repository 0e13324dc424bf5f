//! Tensor-level combinator formulas.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;

use super::Acwd;
use crate::base::{parity_products, EnsembleParams, MAX_FULL_SYNDROME_ROWS};
use crate::bits::SyndromeVector;
use crate::error::{Error, Result};
use crate::poly::{binom, BinomialTable, IntPoly};
use crate::tensor::{common_refinement, AcwdTable, ScaledRows, SplitAcwdTensor};

/// Cap on `(n + 2) * 2^m` big integers held by the Walsh-Hadamard concat path.
const MAX_XOR_CELLS: usize = 1 << 24;

fn check_full_syndrome_rows(m: usize) -> Result<()> {
    if m > MAX_FULL_SYNDROME_ROWS {
        return Err(Error::budget("syndrome enumeration (rows)", m, MAX_FULL_SYNDROME_ROWS));
    }
    Ok(())
}

fn binom_int(n: usize, k: usize) -> BigInt {
    binom(n as u64, k as i64)
}

/// Row shuffle: `B_w(sigma) = (1 / C(m, sigma)) * sum_{|s| = sigma} A_w(s)`, summed by signature.
pub fn row_shuffle(child: &SplitAcwdTensor) -> AcwdTable {
    let m = child.m();
    let binoms = BinomialTable::new(m);
    let scaled = ScaledRows::new(child);
    let groups: Vec<(usize, BigInt)> = (0..child.signature_count())
        .map(|idx| {
            let sig = child.signature(idx);
            (sig.iter().sum(), child.multiplicity(&sig, &binoms))
        })
        .collect();
    let mut out = AcwdTable::zeros(child.n(), m);
    for w in 0..=child.n() {
        let mut acc = vec![BigInt::zero(); m + 1];
        for (idx, (sigma, mult)) in groups.iter().enumerate() {
            let v = &scaled.num[w][idx];
            if !v.is_zero() {
                acc[*sigma] += mult * v;
            }
        }
        for (sigma, a) in acc.into_iter().enumerate() {
            out.set(w, sigma, BigRational::new(a, &scaled.den[w] * binoms.get(m, sigma)));
        }
    }
    out
}

pub fn row_shuffle_acwd(child: &SplitAcwdTensor, sigma: usize, w: usize) -> BigRational {
    if sigma > child.m() || w > child.n() {
        return BigRational::zero();
    }
    let binoms = BinomialTable::new(child.m());
    let total: BigRational = (0..child.signature_count())
        .filter_map(|idx| {
            let sig = child.signature(idx);
            (sig.iter().sum::<usize>() == sigma).then(|| {
                child.get_idx(w, idx) * BigRational::from_integer(child.multiplicity(&sig, &binoms))
            })
        })
        .sum();
    total / BigRational::from_integer(binoms.get(child.m(), sigma))
}

/// Row shuffle by averaging the child over every syndrome of each weight.
pub fn row_shuffle_by_enumeration(child: &SplitAcwdTensor) -> Result<AcwdTable> {
    let m = child.m();
    check_full_syndrome_rows(m)?;
    let mut sums = AcwdTable::zeros(child.n(), m);
    for mask in 0u64..(1 << m) {
        let s = SyndromeVector::from_mask(mask, m);
        let sigma = s.weight();
        for w in 0..=child.n() {
            let v = sums.get(w, sigma) + child.at_syndrome(w, &s)?;
            sums.set(w, sigma, v);
        }
    }
    Ok(AcwdTable::from_fn(child.n(), m, |w, sigma| {
        sums.get(w, sigma) / BigRational::from_integer(binom_int(m, sigma))
    }))
}

/// Column shuffle leaves every value unchanged and makes the ensemble column symmetric.
pub fn col_shuffle_acwd(child: &Acwd) -> Acwd {
    let mut out = child.clone();
    out.column_symmetric = true;
    out
}

fn check_stack(children: &[&Acwd]) -> Result<usize> {
    let first = children
        .first()
        .ok_or_else(|| Error::InvalidParameters("stack needs at least one child".into()))?;
    let n = first.n();
    for (i, c) in children.iter().enumerate() {
        if c.n() != n {
            return Err(Error::InvalidParameters(format!(
                "stack child {i} has {} columns, expected {n}",
                c.n()
            )));
        }
        if i > 0 && !c.column_symmetric() {
            return Err(Error::Shape(format!("stack child {i} is not column symmetric")));
        }
    }
    Ok(n)
}

/// `A_1 / A_2 / ...`: `prod_i A^(i)_w(s_i) / C(n, w)^(u-1)` on the concatenated row partition.
pub fn stack(children: &[&Acwd]) -> Result<Acwd> {
    let n = check_stack(children)?;
    if children.len() == 1 {
        return Ok(children[0].clone());
    }
    let parts: Vec<usize> = children.iter().flat_map(|c| c.tensor.parts().to_vec()).collect();
    let mut out = SplitAcwdTensor::zeros(n, parts)?;
    let scaled: Vec<ScaledRows> = children.iter().map(|c| ScaledRows::new(&c.tensor)).collect();
    let blocks: Vec<usize> = children.iter().map(|c| c.tensor.parts().len()).collect();
    let child_idx: Vec<Vec<usize>> = (0..out.signature_count())
        .map(|idx| {
            let sig = out.signature(idx);
            let mut start = 0;
            children
                .iter()
                .zip(&blocks)
                .map(|(c, &b)| {
                    let i = c.tensor.index_of(&sig[start..start + b]);
                    start += b;
                    i
                })
                .collect()
        })
        .collect();
    let u = children.len() as u32;
    for w in 0..=n {
        let den: BigInt = scaled.iter().map(|s| &s.den[w]).product::<BigInt>()
            * binom_int(n, w).pow(u - 1);
        for (idx, ci) in child_idx.iter().enumerate() {
            let num: BigInt = scaled.iter().zip(ci).map(|(s, &i)| &s.num[w][i]).product();
            if !num.is_zero() {
                out.set_idx(w, idx, BigRational::new(num, den.clone()));
            }
        }
    }
    let col = children.iter().all(|c| c.column_symmetric());
    Acwd::new(out, col, false)
}

/// One cell of `A / B`: `A_w(s_a) B_w(s_b) / C(n, w)`.
pub fn stack_acwd(a: &Acwd, b: &Acwd, s_a: &SyndromeVector, s_b: &SyndromeVector, w: usize) -> Result<BigRational> {
    let n = check_stack(&[a, b])?;
    if w > n {
        return Ok(BigRational::zero());
    }
    Ok(a.at(w, s_a)? * b.at(w, s_b)? / BigRational::from_integer(binom_int(n, w)))
}

/// Row-shuffled stack from the row-shuffled children:
/// `(1 / (C(m, sigma) C(n, w)^(u-1))) sum_{sigma_1 + ... = sigma} prod C(m_i, sigma_i) B^(i)_w(sigma_i)`.
fn stack_row_shuffled_tables(n: usize, tables: &[AcwdTable]) -> AcwdTable {
    let m: usize = tables.iter().map(AcwdTable::m).sum();
    let u = tables.len() as u32;
    let binoms = BinomialTable::new(m);
    let mut out = AcwdTable::zeros(n, m);
    for w in 0..=n {
        let mut acc = vec![BigRational::one()];
        for t in tables {
            let mut next = vec![BigRational::zero(); acc.len() + t.m()];
            for (i, a) in acc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for sigma in 0..=t.m() {
                    let v = t.get_ref(w, sigma);
                    if !v.is_zero() {
                        next[i + sigma] += a * v * BigRational::from_integer(binoms.get(t.m(), sigma));
                    }
                }
            }
            acc = next;
        }
        let scale = binom_int(n, w).pow(u - 1);
        for (sigma, v) in acc.into_iter().enumerate() {
            out.set(w, sigma, v / BigRational::from_integer(binoms.get(m, sigma) * &scale));
        }
    }
    out
}

/// `row_shuffle(A_1 / A_2 / ...)` without materializing the stacked tensor.
pub fn stacked_row_shuffled(children: &[&Acwd]) -> Result<Acwd> {
    let n = check_stack(children)?;
    let tables: Vec<AcwdTable> = children
        .iter()
        .map(|c| c.table().unwrap_or_else(|| row_shuffle(&c.tensor)))
        .collect();
    let col = children.iter().all(|c| c.column_symmetric());
    Ok(Acwd::from_table(&stack_row_shuffled_tables(n, &tables), col))
}

pub fn stacked_row_shuffled_acwd(children: &[&Acwd], sigma: usize, w: usize) -> Result<BigRational> {
    Ok(stacked_row_shuffled(children)?.tensor.get(w, &[sigma]))
}

/// One choice of `(p_j, q_j)` in a block: flip `p_j` of the `sigma_j` ones and `q_j` of the zeros.
struct Choice {
    coef: BigInt,
    da: usize,
    db: usize,
}

fn walk(choices: &[Vec<Choice>], coef: &BigInt, ia: usize, ib: usize, na: &[BigInt], nb: &[BigInt], acc: &mut BigInt) {
    let Some((head, rest)) = choices.split_first() else {
        if !na[ia].is_zero() && !nb[ib].is_zero() {
            *acc += coef * &na[ia] * &nb[ib];
        }
        return;
    };
    for c in head {
        if c.coef.is_one() {
            walk(rest, coef, ia + c.da, ib + c.db, na, nb, acc);
        } else {
            walk(rest, &(coef * &c.coef), ia + c.da, ib + c.db, na, nb, acc);
        }
    }
}

/// `lcm_{w_a} den_a[w_a] den_b[w - w_a]` and the per-`w_a` multipliers onto it.
fn pair_scales(w: usize, da: &[BigInt], db: &[BigInt]) -> (BigInt, Vec<(usize, BigInt)>) {
    let (na, nb) = (da.len() - 1, db.len() - 1);
    let range = w.saturating_sub(nb)..=w.min(na);
    let dens: Vec<(usize, BigInt)> = range.map(|wa| (wa, &da[wa] * &db[w - wa])).collect();
    let l = dens.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
    let scales = dens.into_iter().map(|(wa, d)| (wa, &l / d)).collect();
    (l, scales)
}

/// Concat on a shared partition by the split-syndrome sum
/// `sum_{w_a} sum_{p, q} prod_j C(sigma_j, p_j) C(m_j - sigma_j, q_j) A_{w_a}(p + q) B_{w - w_a}(sigma - p + q)`.
fn concat_split(a: &SplitAcwdTensor, b: &SplitAcwdTensor) -> Result<SplitAcwdTensor> {
    let parts = a.parts().to_vec();
    let n = a.n() + b.n();
    let mut out = SplitAcwdTensor::zeros(n, parts.clone())?;
    let binoms = BinomialTable::new(parts.iter().copied().max().unwrap_or(0));
    let strides: Vec<usize> = (0..parts.len())
        .map(|j| {
            let mut e = vec![0; parts.len()];
            e[j] = 1;
            out.index_of(&e)
        })
        .collect();
    let choices: Vec<Vec<Vec<Choice>>> = (0..out.signature_count())
        .map(|idx| {
            out.signature(idx)
                .iter()
                .zip(&parts)
                .zip(&strides)
                .map(|((&sigma, &mj), &st)| {
                    let mut v = Vec::new();
                    for p in 0..=sigma {
                        for q in 0..=mj - sigma {
                            v.push(Choice {
                                coef: binoms.get(sigma, p) * binoms.get(mj - sigma, q),
                                da: (p + q) * st,
                                db: (sigma - p + q) * st,
                            });
                        }
                    }
                    v
                })
                .collect()
        })
        .collect();
    let (sa, sb) = (ScaledRows::new(a), ScaledRows::new(b));
    let rows: Vec<Vec<BigRational>> = (0..=n)
        .into_par_iter()
        .map(|w| {
            let (l, scales) = pair_scales(w, &sa.den, &sb.den);
            choices
                .iter()
                .map(|ch| {
                    let mut total = BigInt::zero();
                    for (wa, scale) in &scales {
                        let mut inner = BigInt::zero();
                        walk(ch, &BigInt::one(), 0, 0, &sa.num[*wa], &sb.num[w - wa], &mut inner);
                        if !inner.is_zero() {
                            total += inner * scale;
                        }
                    }
                    BigRational::new(total, l.clone())
                })
                .collect()
        })
        .collect();
    for (w, row) in rows.into_iter().enumerate() {
        for (idx, v) in row.into_iter().enumerate() {
            out.set_idx(w, idx, v);
        }
    }
    Ok(out)
}

fn walsh_hadamard(v: &mut [BigInt]) {
    let mut h = 1;
    while h < v.len() {
        for i in (0..v.len()).step_by(2 * h) {
            for j in i..i + h {
                let y = std::mem::take(&mut v[j + h]);
                let x = std::mem::take(&mut v[j]);
                v[j + h] = &x - &y;
                v[j] = x + y;
            }
        }
        h *= 2;
    }
}

/// Concat of full-syndrome tensors: the sum over `s_a` is an XOR convolution.
fn concat_xor(a: &SplitAcwdTensor, b: &SplitAcwdTensor) -> Result<SplitAcwdTensor> {
    let n = a.n() + b.n();
    let size = a.signature_count();
    if (n + 2).saturating_mul(size) > MAX_XOR_CELLS {
        return Err(Error::budget("full-syndrome concat cells", (n + 2) * size, MAX_XOR_CELLS));
    }
    let (sa, sb) = (ScaledRows::new(a), ScaledRows::new(b));
    let transform = |rows: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
        rows.par_iter()
            .map(|r| {
                let mut r = r.clone();
                walsh_hadamard(&mut r);
                r
            })
            .collect()
    };
    let (ta, tb) = (transform(&sa.num), transform(&sb.num));
    let rows: Vec<Vec<BigRational>> = (0..=n)
        .into_par_iter()
        .map(|w| {
            let (l, scales) = pair_scales(w, &sa.den, &sb.den);
            let mut acc = vec![BigInt::zero(); size];
            for (wa, scale) in &scales {
                let (xa, xb) = (&ta[*wa], &tb[w - wa]);
                for i in 0..size {
                    if !xa[i].is_zero() && !xb[i].is_zero() {
                        acc[i] += &xa[i] * &xb[i] * scale;
                    }
                }
            }
            walsh_hadamard(&mut acc);
            let den = l * BigInt::from(size);
            acc.into_iter().map(|v| BigRational::new(v, den.clone())).collect()
        })
        .collect();
    let mut out = SplitAcwdTensor::zeros(n, a.parts().to_vec())?;
    for (w, row) in rows.into_iter().enumerate() {
        for (idx, v) in row.into_iter().enumerate() {
            out.set_idx(w, idx, v);
        }
    }
    Ok(out)
}

pub(crate) fn concat_tensors(a: &SplitAcwdTensor, b: &SplitAcwdTensor) -> Result<SplitAcwdTensor> {
    if a.m() != b.m() {
        return Err(Error::InvalidParameters(format!(
            "cannot concatenate ensembles with {} and {} rows",
            a.m(),
            b.m()
        )));
    }
    let parts = common_refinement(a.parts(), b.parts())?;
    let (a, b) = (a.refine(&parts)?, b.refine(&parts)?);
    if a.is_full_syndrome() && parts.len() > 1 {
        concat_xor(&a, &b)
    } else {
        concat_split(&a, &b)
    }
}

/// `A B` for arbitrary operands, on the common refinement of their row partitions.
pub fn concat(a: &Acwd, b: &Acwd) -> Result<Acwd> {
    let t = concat_tensors(&a.tensor, &b.tensor)?;
    Acwd::new(t, false, a.row_symmetric() && b.row_symmetric())
}

/// One cell of `A B` by the literal sum `sum_{w_a} sum_{s_a in F2^m} A_{w_a}(s_a) B_{w-w_a}(s + s_a)`.
pub fn concat_acwd(a: &Acwd, b: &Acwd, s: &SyndromeVector, w: usize) -> Result<BigRational> {
    if a.m() != b.m() || s.len() != a.m() {
        return Err(Error::InvalidParameters(format!(
            "row sizes {} and {} with a syndrome of length {}",
            a.m(),
            b.m(),
            s.len()
        )));
    }
    check_full_syndrome_rows(a.m())?;
    let mut total = BigRational::zero();
    for wa in w.saturating_sub(b.n())..=w.min(a.n()) {
        total += split_literal(a, b, s, wa, w - wa)?;
    }
    Ok(total)
}

fn split_literal(a: &Acwd, b: &Acwd, s: &SyndromeVector, w1: usize, w2: usize) -> Result<BigRational> {
    let m = a.m();
    let mut total = BigRational::zero();
    for mask in 0u64..(1 << m) {
        let s_a = SyndromeVector::from_mask(mask, m);
        let x = a.at(w1, &s_a)?;
        if !x.is_zero() {
            total += x * b.at(w2, &s.xor(&s_a))?;
        }
    }
    Ok(total)
}

fn require_row_symmetric(a: &Acwd, b: &Acwd) -> Result<()> {
    if !a.row_symmetric() || !b.row_symmetric() {
        return Err(Error::Shape("both concatenated components must be row symmetric".into()));
    }
    if a.m() != b.m() {
        return Err(Error::InvalidParameters(format!("row sizes {} and {} differ", a.m(), b.m())));
    }
    Ok(())
}

/// `sum_{mu_1, mu_2} C(sigma, mu_1) C(m - sigma, mu_2) A_{w1}(mu_1 + mu_2) B_{w2}(sigma - mu_1 + mu_2)`.
fn split_row_symmetric(a: &Acwd, b: &Acwd, sigma: usize, w1: usize, w2: usize) -> BigRational {
    let m = a.m();
    let (ta, tb) = (&a.tensor, &b.tensor);
    let mut total = BigRational::zero();
    for mu1 in 0..=sigma {
        for mu2 in 0..=m - sigma {
            let x = ta.get(w1, &[mu1 + mu2]);
            if x.is_zero() {
                continue;
            }
            let c = binom_int(sigma, mu1) * binom_int(m - sigma, mu2);
            total += x * tb.get(w2, &[sigma - mu1 + mu2]) * BigRational::from_integer(c);
        }
    }
    total
}

/// Concat of two row-symmetric components; the result is row symmetric.
pub fn concat_row_symmetric(a: &Acwd, b: &Acwd) -> Result<Acwd> {
    require_row_symmetric(a, b)?;
    concat(a, b)
}

pub fn concat_row_symmetric_acwd(a: &Acwd, b: &Acwd, sigma: usize, w: usize) -> Result<BigRational> {
    require_row_symmetric(a, b)?;
    if sigma > a.m() {
        return Ok(BigRational::zero());
    }
    Ok((w.saturating_sub(b.n())..=w.min(a.n()))
        .map(|wa| split_row_symmetric(a, b, sigma, wa, w - wa))
        .sum())
}

/// Split-weight ACWD `sum_{s_a} A_{w1}(s_a) B_{w2}(s + s_a)`: `w1` columns of weight in `A`, `w2` in `B`.
pub fn split_concat_acwd(a: &Acwd, b: &Acwd, s: &SyndromeVector, w1: usize, w2: usize) -> Result<BigRational> {
    if a.m() != b.m() || s.len() != a.m() {
        return Err(Error::InvalidParameters(format!(
            "row sizes {} and {} with a syndrome of length {}",
            a.m(),
            b.m(),
            s.len()
        )));
    }
    if w1 > a.n() || w2 > b.n() {
        return Ok(BigRational::zero());
    }
    if a.row_symmetric() && b.row_symmetric() {
        return Ok(split_row_symmetric(a, b, s.weight(), w1, w2));
    }
    check_full_syndrome_rows(a.m())?;
    split_literal(a, b, s, w1, w2)
}

/// Row-shuffled Gallager ensemble by its tier-weight shortcut:
/// `B_w(sigma) = (1 / C(m, sigma)) sum_{b_1 + ... + b_j = sigma} prod_i C(m/j, b_i) [alpha^(m/j - b_i) beta^(b_i)]_w / C(n, w)^(j-1)`.
pub fn gallager_row_shuffled(j: usize, k: usize, n: usize) -> Result<AcwdTable> {
    let p = EnsembleParams::gallager(j, k, n)?;
    let (m, rows) = (p.m(), p.m() / j);
    let tier = parity_products(k, rows);
    Ok(AcwdTable::from_fn(n, m, |w, sigma| {
        let per_tier = IntPoly::new((0..=rows).map(|b| binom_int(rows, b) * tier[b].coeff(w)).collect());
        let count = per_tier.pow(j as u32).coeff(sigma);
        BigRational::new(count, binom_int(m, sigma) * binom_int(n, w).pow((j - 1) as u32))
    }))
}
