//! Small binary matrices and syndrome vectors over F2.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Column cap for explicit matrices: rows are stored as `u64` masks.
pub const MAX_COLUMNS: usize = 64;

/// Dense `m x n` binary matrix, one `u64` mask per row (bit `i` = column `i`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitMatrix {
    n: usize,
    rows: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(m: usize, n: usize) -> Result<Self> {
        if n > MAX_COLUMNS {
            return Err(Error::InvalidParameters(format!(
                "explicit matrices support at most {MAX_COLUMNS} columns, got {n}"
            )));
        }
        Ok(BitMatrix { n, rows: vec![0; m] })
    }

    pub fn from_row_masks(n: usize, rows: Vec<u64>) -> Result<Self> {
        let mut h = Self::zeros(0, n)?;
        let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        if let Some(r) = rows.iter().find(|&&r| r & !limit != 0) {
            return Err(Error::InvalidParameters(format!("row mask {r:#b} wider than {n} columns")));
        }
        h.rows = rows;
        Ok(h)
    }

    /// Parse rows written as bitstrings such as `["1100", "0011"]`.
    pub fn from_bitstrings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let mut masks = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::InvalidParameters(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            let mut mask = 0u64;
            for (c, ch) in row.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => mask |= 1 << c,
                    other => {
                        return Err(Error::InvalidParameters(format!(
                            "row {i} contains '{other}', expected 0 or 1"
                        )))
                    }
                }
            }
            masks.push(mask);
        }
        Self::from_row_masks(n, masks)
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row_masks(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r] >> c & 1 == 1
    }

    /// Flip entry `(r, c)`; used to build incidence matrices mod 2.
    pub fn toggle(&mut self, r: usize, c: usize) {
        self.rows[r] ^= 1 << c;
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        if v {
            self.rows[r] |= 1 << c;
        } else {
            self.rows[r] &= !(1 << c);
        }
    }

    /// Column `c` as a mask over rows (bit `r` = row `r`). Requires `m <= 64`.
    pub fn column_mask(&self, c: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (r, &row)| acc | ((row >> c & 1) << r))
    }

    pub fn column_masks(&self) -> Result<Vec<u64>> {
        if self.m() > 64 {
            return Err(Error::InvalidParameters(format!(
                "syndromes of more than 64 rows are not supported (got {})",
                self.m()
            )));
        }
        Ok((0..self.n).map(|c| self.column_mask(c)).collect())
    }

    /// `H x^t` for `x` given as a column mask.
    pub fn syndrome_mask(&self, x: u64) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (r, &row)| acc | (((row & x).count_ones() as u64) & 1) << r)
    }

    /// `[self / other]`.
    pub fn stack(&self, other: &BitMatrix) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::InvalidParameters(format!(
                "cannot stack {} and {} columns",
                self.n, other.n
            )));
        }
        let mut rows = self.rows.clone();
        rows.extend_from_slice(&other.rows);
        Ok(BitMatrix { n: self.n, rows })
    }

    /// `[self other]`.
    pub fn concat(&self, other: &BitMatrix) -> Result<Self> {
        if self.m() != other.m() {
            return Err(Error::InvalidParameters(format!(
                "cannot concatenate {} and {} rows",
                self.m(),
                other.m()
            )));
        }
        let n = self.n + other.n;
        let mut h = Self::zeros(self.m(), n)?;
        for (r, (a, b)) in self.rows.iter().zip(&other.rows).enumerate() {
            h.rows[r] = a | (b << self.n);
        }
        Ok(h)
    }

    /// Column `c` of the result is column `perm[c]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|&row| {
                perm.iter()
                    .enumerate()
                    .fold(0u64, |acc, (c, &src)| acc | ((row >> src & 1) << c))
            })
            .collect();
        BitMatrix { n: self.n, rows }
    }

    /// Row `r` of the result is row `perm[r]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        BitMatrix {
            n: self.n,
            rows: perm.iter().map(|&src| self.rows[src]).collect(),
        }
    }

    /// Block-diagonal matrix with `nu` copies of `self`.
    pub fn block_diagonal(&self, nu: usize) -> Result<Self> {
        let mut h = Self::zeros(self.m() * nu, self.n * nu)?;
        for b in 0..nu {
            for (r, &row) in self.rows.iter().enumerate() {
                h.rows[b * self.m() + r] = row << (b * self.n);
            }
        }
        Ok(h)
    }

    /// Rank over F2.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for c in 0..self.n {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> c & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row >> c & 1 == 1 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, &row) in self.rows.iter().enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            for c in 0..self.n {
                write!(f, "{}", row >> c & 1)?;
            }
        }
        Ok(())
    }
}

/// Syndrome `s` in F2^m, `bits[i]` is the parity of row `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SyndromeVector {
    bits: Vec<bool>,
}

impl SyndromeVector {
    pub fn new(bits: Vec<bool>) -> Self {
        SyndromeVector { bits }
    }

    pub fn zero(m: usize) -> Self {
        SyndromeVector { bits: vec![false; m] }
    }

    pub fn from_mask(mask: u64, m: usize) -> Self {
        SyndromeVector {
            bits: (0..m).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Requires `len() <= 64`.
    pub fn to_mask(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | (b as u64) << i)
    }

    /// Weights of consecutive blocks of the given sizes; sizes must sum to `len()`.
    pub fn block_weights(&self, parts: &[usize]) -> Result<Vec<usize>> {
        let total: usize = parts.iter().sum();
        if total != self.len() {
            return Err(Error::InvalidParameters(format!(
                "syndrome has length {}, row partition covers {total}",
                self.len()
            )));
        }
        let mut start = 0;
        Ok(parts
            .iter()
            .map(|&p| {
                let w = self.bits[start..start + p].iter().filter(|&&b| b).count();
                start += p;
                w
            })
            .collect())
    }

    pub fn split_at(&self, at: usize) -> (SyndromeVector, SyndromeVector) {
        let (a, b) = self.bits.split_at(at);
        (SyndromeVector::new(a.to_vec()), SyndromeVector::new(b.to_vec()))
    }

    pub fn xor(&self, other: &SyndromeVector) -> SyndromeVector {
        SyndromeVector::new(self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect())
    }
}

impl FromStr for SyndromeVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidParameters(format!(
                    "syndrome contains '{other}', expected 0 or 1"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SyndromeVector::new)
    }
}

impl fmt::Display for SyndromeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", b as u8)?;
        }
        Ok(())
    }
}
