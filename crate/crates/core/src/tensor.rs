//! Exact ACWD containers.
//!
//! [`AcwdTable`] holds `B_w(sigma)` for a row-symmetric ensemble. [`SplitAcwdTensor`]
//! holds `C_w(sigma_1, ..., sigma_u)`: the ACWD as a function of the syndrome weights
//! inside a fixed partition of the rows into consecutive blocks. The two extremes of a
//! split tensor are the row-symmetric table (one block) and the full-syndrome ACWD
//! (`m` blocks of size one).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bits::SyndromeVector;
use crate::error::{Error, Result};
use crate::poly::{binom, BinomialTable};

/// Cap on the number of syndrome-weight signatures a tensor may hold.
pub const MAX_SIGNATURES: usize = 1 << 20;

/// `B_w(sigma)` for `w in 0..=n`, `sigma in 0..=m`.
#[derive(Clone, PartialEq, Debug)]
pub struct AcwdTable {
    n: usize,
    m: usize,
    entries: Vec<BigRational>,
}

impl AcwdTable {
    pub fn zeros(n: usize, m: usize) -> Self {
        AcwdTable {
            n,
            m,
            entries: vec![BigRational::zero(); (n + 1) * (m + 1)],
        }
    }

    pub fn from_fn(n: usize, m: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut t = Self::zeros(n, m);
        for w in 0..=n {
            for s in 0..=m {
                t.entries[w * (m + 1) + s] = f(w, s);
            }
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `B_w(sigma)`; zero outside the table.
    pub fn get(&self, w: usize, sigma: usize) -> BigRational {
        if w > self.n || sigma > self.m {
            return BigRational::zero();
        }
        self.entries[w * (self.m + 1) + sigma].clone()
    }

    pub fn get_ref(&self, w: usize, sigma: usize) -> &BigRational {
        &self.entries[w * (self.m + 1) + sigma]
    }

    pub fn set(&mut self, w: usize, sigma: usize, v: BigRational) {
        self.entries[w * (self.m + 1) + sigma] = v;
    }

    /// Row for a fixed syndrome weight, indexed by `w`.
    pub fn sigma_row(&self, sigma: usize) -> Vec<BigRational> {
        (0..=self.n).map(|w| self.get(w, sigma)).collect()
    }

    /// Weights `w` at which `sum_sigma C(m, sigma) B_w(sigma) != C(n, w)`.
    pub fn total_mass_defects(&self) -> Vec<usize> {
        SplitAcwdTensor::from_table(self).total_mass_defects()
    }
}

/// `C_w(sigma_1, ..., sigma_u)` over a partition of the `m` rows into blocks of sizes `parts`.
#[derive(Clone, PartialEq, Debug)]
pub struct SplitAcwdTensor {
    n: usize,
    parts: Vec<usize>,
    strides: Vec<usize>,
    signatures: usize,
    entries: Vec<BigRational>,
}

fn strides_for(parts: &[usize]) -> (Vec<usize>, usize) {
    let mut strides = vec![0; parts.len()];
    let mut acc = 1usize;
    for (i, &p) in parts.iter().enumerate().rev() {
        strides[i] = acc;
        acc = acc.saturating_mul(p + 1);
    }
    (strides, acc)
}

/// Block sizes whose cut points are the union of both partitions' cut points.
pub fn common_refinement(a: &[usize], b: &[usize]) -> Result<Vec<usize>> {
    let (ma, mb): (usize, usize) = (a.iter().sum(), b.iter().sum());
    if ma != mb {
        return Err(Error::InvalidParameters(format!(
            "row partitions cover {ma} and {mb} rows"
        )));
    }
    let cuts = |p: &[usize]| {
        p.iter()
            .scan(0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect::<Vec<_>>()
    };
    let mut all = cuts(a);
    all.extend(cuts(b));
    all.sort_unstable();
    all.dedup();
    let mut prev = 0;
    Ok(all
        .into_iter()
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c - prev;
            prev = c;
            p
        })
        .collect())
}

impl SplitAcwdTensor {
    pub fn zeros(n: usize, parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidParameters(format!(
                "row partition {parts:?} must be nonempty with positive block sizes"
            )));
        }
        let (strides, signatures) = strides_for(&parts);
        if signatures > MAX_SIGNATURES {
            return Err(Error::budget(
                "syndrome-weight signatures",
                signatures,
                MAX_SIGNATURES,
            ));
        }
        Ok(SplitAcwdTensor {
            n,
            parts,
            strides,
            signatures,
            entries: vec![BigRational::zero(); (n + 1) * signatures],
        })
    }

    pub fn from_table(t: &AcwdTable) -> Self {
        let (strides, signatures) = strides_for(&[t.m]);
        SplitAcwdTensor {
            n: t.n,
            parts: vec![t.m],
            strides,
            signatures,
            entries: t.entries.clone(),
        }
    }

    /// The row-symmetric table, when the partition has a single block.
    pub fn to_table(&self) -> Option<AcwdTable> {
        (self.parts.len() == 1).then(|| AcwdTable {
            n: self.n,
            m: self.parts[0],
            entries: self.entries.clone(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of distinct signatures `(sigma_1, ..., sigma_u)`.
    pub fn signature_count(&self) -> usize {
        self.signatures
    }

    pub fn is_full_syndrome(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    pub fn index_of(&self, sig: &[usize]) -> usize {
        debug_assert_eq!(sig.len(), self.parts.len());
        sig.iter().zip(&self.strides).map(|(s, st)| s * st).sum()
    }

    pub fn signature(&self, mut idx: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|&st| {
                let s = idx / st;
                idx %= st;
                s
            })
            .collect()
    }

    pub fn get(&self, w: usize, sig: &[usize]) -> BigRational {
        if w > self.n || sig.iter().zip(&self.parts).any(|(s, p)| s > p) {
            return BigRational::zero();
        }
        self.entries[w * self.signatures + self.index_of(sig)].clone()
    }

    pub fn get_idx(&self, w: usize, idx: usize) -> &BigRational {
        &self.entries[w * self.signatures + idx]
    }

    pub fn set_idx(&mut self, w: usize, idx: usize, v: BigRational) {
        self.entries[w * self.signatures + idx] = v;
    }

    pub fn set(&mut self, w: usize, sig: &[usize], v: BigRational) {
        let idx = self.index_of(sig);
        self.set_idx(w, idx, v);
    }

    /// `A_w(s)` for a full syndrome.
    pub fn at_syndrome(&self, w: usize, s: &SyndromeVector) -> Result<BigRational> {
        let sig = s.block_weights(&self.parts)?;
        Ok(self.get(w, &sig))
    }

    /// Re-express on a finer partition: each new block must lie inside one old block.
    pub fn refine(&self, parts: &[usize]) -> Result<Self> {
        if common_refinement(&self.parts, parts)? != parts {
            return Err(Error::InvalidParameters(format!(
                "{parts:?} does not refine {:?}",
                self.parts
            )));
        }
        if parts == self.parts.as_slice() {
            return Ok(self.clone());
        }
        // group[i] = old block containing new block i
        let mut group = Vec::with_capacity(parts.len());
        let (mut old, mut filled) = (0usize, 0usize);
        for &p in parts {
            group.push(old);
            filled += p;
            if filled == self.parts[old] {
                old += 1;
                filled = 0;
            }
        }
        let mut out = Self::zeros(self.n, parts.to_vec())?;
        let mut old_sig = vec![0; self.parts.len()];
        for idx in 0..out.signatures {
            let sig = out.signature(idx);
            old_sig.iter_mut().for_each(|s| *s = 0);
            for (s, &g) in sig.iter().zip(&group) {
                old_sig[g] += s;
            }
            let old_idx = self.index_of(&old_sig);
            for w in 0..=self.n {
                out.set_idx(w, idx, self.get_idx(w, old_idx).clone());
            }
        }
        Ok(out)
    }

    /// Number of syndromes sharing signature `sig`: `prod_j C(m_j, sigma_j)`.
    pub fn multiplicity(&self, sig: &[usize], binoms: &BinomialTable) -> BigInt {
        sig.iter()
            .zip(&self.parts)
            .map(|(&s, &p)| binoms.get(p, s))
            .product()
    }

    /// Weights `w` at which `sum_s A_w(s) != C(n, w)`.
    pub fn total_mass_defects(&self) -> Vec<usize> {
        let binoms = BinomialTable::new(self.parts.iter().copied().max().unwrap_or(0));
        let mults: Vec<BigInt> = (0..self.signatures)
            .map(|idx| self.multiplicity(&self.signature(idx), &binoms))
            .collect();
        (0..=self.n)
            .filter(|&w| {
                let total: BigRational = mults
                    .iter()
                    .enumerate()
                    .map(|(idx, c)| self.get_idx(w, idx) * BigRational::from_integer(c.clone()))
                    .sum();
                total != BigRational::from_integer(binom(self.n as u64, w as i64))
            })
            .collect()
    }
}

/// Per-weight common-denominator form of a tensor: `entry(w, idx) = num[w][idx] / den[w]`.
///
/// Inner sums of the combinator formulas run over integers in this form.
pub(crate) struct ScaledRows {
    pub den: Vec<BigInt>,
    pub num: Vec<Vec<BigInt>>,
}

impl ScaledRows {
    pub fn new(t: &SplitAcwdTensor) -> Self {
        let mut den = Vec::with_capacity(t.n + 1);
        let mut num = Vec::with_capacity(t.n + 1);
        for w in 0..=t.n {
            let row = &t.entries[w * t.signatures..(w + 1) * t.signatures];
            let d = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            num.push(row.iter().map(|q| q.numer() * (&d / q.denom())).collect());
            den.push(d);
        }
        ScaledRows { den, num }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn refinements() {
        assert_eq!(common_refinement(&[3], &[1, 2]).unwrap(), vec![1, 2]);
        assert_eq!(common_refinement(&[2, 2], &[1, 3]).unwrap(), vec![1, 1, 2]);
        assert!(common_refinement(&[2], &[3]).is_err());
    }

    #[test]
    fn refine_preserves_values() {
        let t = AcwdTable::from_fn(2, 3, |w, s| rat((w * 10 + s) as i64, 1));
        let split = SplitAcwdTensor::from_table(&t);
        let fine = split.refine(&[1, 2]).unwrap();
        assert_eq!(fine.get(1, &[1, 1]), rat(12, 1));
        assert_eq!(fine.get(2, &[0, 2]), rat(22, 1));
        let full = split.refine(&[1, 1, 1]).unwrap();
        assert!(full.is_full_syndrome());
        let s: SyndromeVector = "101".parse().unwrap();
        assert_eq!(full.at_syndrome(1, &s).unwrap(), rat(12, 1));
        assert!(fine.refine(&[3]).is_err());
    }

    #[test]
    fn signature_indexing() {
        let t = SplitAcwdTensor::zeros(1, vec![2, 1, 3]).unwrap();
        assert_eq!(t.signature_count(), 3 * 2 * 4);
        for idx in 0..t.signature_count() {
            assert_eq!(t.index_of(&t.signature(idx)), idx);
        }
        assert!(SplitAcwdTensor::zeros(1, vec![]).is_err());
        assert!(matches!(
            SplitAcwdTensor::zeros(1, vec![1; 21]),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn scaled_rows_reconstruct() {
        let t = AcwdTable::from_fn(1, 2, |w, s| rat((w + s + 1) as i64, (s + 2) as i64));
        let split = SplitAcwdTensor::from_table(&t);
        let scaled = ScaledRows::new(&split);
        for w in 0..=1 {
            for s in 0..=2 {
                let q = BigRational::new(scaled.num[w][s].clone(), scaled.den[w].clone());
                assert_eq!(q, t.get(w, s));
            }
        }
    }
}
