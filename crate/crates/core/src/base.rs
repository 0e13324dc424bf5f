//! Closed-form ACWDs of the base ensembles: Gallager, constant row weight, regular
//! bipartite (socket model), and explicit single matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::bits::{BitMatrix, SyndromeVector};
use crate::error::{Error, Result};
use crate::poly::{alpha_poly, beta_poly, binom, IntPoly};
use crate::tensor::{AcwdTable, SplitAcwdTensor};

/// Largest column count scanned exhaustively (2^24 vectors).
pub const MAX_ENUM_COLUMNS: usize = 24;
/// Largest row count for which full-syndrome ACWDs are materialized.
pub const MAX_FULL_SYNDROME_ROWS: usize = 20;

#[derive(Clone, PartialEq, Debug)]
pub enum Family {
    /// `j` stacked column-permuted tiers, each with `m/j` disjoint rows of weight `k`.
    Gallager { j: usize, k: usize },
    /// Every `m x n` matrix whose rows all have weight `k`.
    ConstantRow { k: usize },
    /// Socket-model `(j, k)`-regular bipartite graphs.
    Bipartite { j: usize, k: usize },
    SingleMatrix(BitMatrix),
}

#[derive(Clone, PartialEq, Debug)]
pub struct EnsembleParams {
    n: usize,
    m: usize,
    family: Family,
}

fn invalid<T>(msg: String) -> Result<T> {
    Err(Error::InvalidParameters(msg))
}

fn check_gallager(j: usize, k: usize, n: usize, m: usize) -> Result<()> {
    if j == 0 || k == 0 || n == 0 {
        return invalid(format!("gallager needs positive j, k, n (got j={j}, k={k}, n={n})"));
    }
    if !m.is_multiple_of(j) || (m / j) * k != n {
        return invalid(format!(
            "gallager({j},{k}) needs j | m and (m/j)k = n, got n={n}, m={m}"
        ));
    }
    Ok(())
}

fn check_bipartite(j: usize, k: usize, n: usize, m: usize) -> Result<()> {
    if j == 0 || k == 0 || n == 0 || m == 0 {
        return invalid(format!("bipartite needs positive j, k, n, m (got {j}, {k}, {n}, {m})"));
    }
    if j * n != k * m {
        return invalid(format!("bipartite({j},{k}) needs jn = km, got n={n}, m={m}"));
    }
    Ok(())
}

fn check_constant_row(k: usize, n: usize, m: usize) -> Result<()> {
    if k == 0 || k > n || m == 0 {
        return invalid(format!("constant_row needs 1 <= k <= n and m >= 1 (got k={k}, n={n}, m={m})"));
    }
    Ok(())
}

impl EnsembleParams {
    /// Gallager ensemble; `m = jn/k`.
    pub fn gallager(j: usize, k: usize, n: usize) -> Result<Self> {
        if k == 0 || !(j * n).is_multiple_of(k) {
            return invalid(format!("gallager({j},{k}) with n={n}: jn/k is not an integer"));
        }
        let m = j * n / k;
        check_gallager(j, k, n, m)?;
        Ok(EnsembleParams { n, m, family: Family::Gallager { j, k } })
    }

    pub fn constant_row(k: usize, n: usize, m: usize) -> Result<Self> {
        check_constant_row(k, n, m)?;
        Ok(EnsembleParams { n, m, family: Family::ConstantRow { k } })
    }

    /// Regular bipartite ensemble; `m = jn/k`.
    pub fn bipartite(j: usize, k: usize, n: usize) -> Result<Self> {
        if k == 0 || !(j * n).is_multiple_of(k) {
            return invalid(format!("bipartite({j},{k}) with n={n}: jn/k is not an integer"));
        }
        let m = j * n / k;
        check_bipartite(j, k, n, m)?;
        Ok(EnsembleParams { n, m, family: Family::Bipartite { j, k } })
    }

    pub fn single_matrix(h: BitMatrix) -> Result<Self> {
        if h.m() == 0 || h.n() == 0 {
            return invalid("single matrix must have at least one row and one column".into());
        }
        Ok(EnsembleParams { n: h.n(), m: h.m(), family: Family::SingleMatrix(h) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn column_symmetric(&self) -> bool {
        !matches!(self.family, Family::SingleMatrix(_))
    }

    /// Gallager ensembles are row symmetric only with a single tier.
    pub fn row_symmetric(&self) -> bool {
        match self.family {
            Family::Gallager { j, .. } => j == 1,
            Family::ConstantRow { .. } | Family::Bipartite { .. } => true,
            Family::SingleMatrix(_) => false,
        }
    }

    /// Row blocks within which the ACWD depends only on syndrome weight.
    pub fn row_partition(&self) -> Vec<usize> {
        match &self.family {
            Family::Gallager { j, .. } => vec![self.m / j; *j],
            Family::ConstantRow { .. } | Family::Bipartite { .. } => vec![self.m],
            Family::SingleMatrix(h) => vec![1; h.m()],
        }
    }

    /// Closed-form ACWD over [`Self::row_partition`].
    pub fn acwd(&self) -> Result<SplitAcwdTensor> {
        match &self.family {
            Family::Gallager { j, k } => gallager_tensor(*j, *k, self.n, self.m),
            Family::ConstantRow { k } => Ok(SplitAcwdTensor::from_table(&constant_row_table(*k, self.n, self.m)?)),
            Family::Bipartite { j, k } => Ok(SplitAcwdTensor::from_table(&bipartite_table(*j, *k, self.n, self.m)?)),
            Family::SingleMatrix(h) => single_matrix_tensor(h),
        }
    }
}

fn binom_rat(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(binom(n as u64, k as i64))
}

fn check_syndrome(s: &SyndromeVector, m: usize) -> Result<()> {
    if s.len() != m {
        return invalid(format!("syndrome has length {}, ensemble has {m} rows", s.len()));
    }
    Ok(())
}

/// `[alpha_k^a beta_k^b]_d` for every `a + b = rows`, `d` up to the product degree.
///
/// Row `b` of the result is the coefficient vector of `alpha^(rows-b) beta^b`.
pub(crate) fn parity_products(k: usize, rows: usize) -> Vec<IntPoly> {
    let (alpha, beta) = (alpha_poly(k), beta_poly(k));
    let mut apow = Vec::with_capacity(rows + 1);
    let mut bpow = Vec::with_capacity(rows + 1);
    apow.push(IntPoly::one());
    bpow.push(IntPoly::one());
    for i in 1..=rows {
        apow.push(apow[i - 1].mul(&alpha));
        bpow.push(bpow[i - 1].mul(&beta));
    }
    (0..=rows).map(|b| apow[rows - b].mul(&bpow[b])).collect()
}

/// ACWD of the Gallager ensemble at a full syndrome.
pub fn gallager_acwd(j: usize, k: usize, n: usize, m: usize, s: &SyndromeVector, w: usize) -> Result<BigRational> {
    check_gallager(j, k, n, m)?;
    check_syndrome(s, m)?;
    let tiers = s.block_weights(&vec![m / j; j])?;
    gallager_acwd_tiers(j, k, n, m, &tiers, w)
}

/// Gallager ACWD from the sub-syndrome weights `(|s_1|, ..., |s_j|)`.
///
/// Uses the telescoped prefactor `C(n,w)^(1-j)`.
pub fn gallager_acwd_tiers(j: usize, k: usize, n: usize, m: usize, tiers: &[usize], w: usize) -> Result<BigRational> {
    check_gallager(j, k, n, m)?;
    let rows = m / j;
    if tiers.len() != j || tiers.iter().any(|&b| b > rows) {
        return invalid(format!("need {j} tier weights in 0..={rows}, got {tiers:?}"));
    }
    if w > n {
        return Ok(BigRational::zero());
    }
    let (alpha, beta) = (alpha_poly(k), beta_poly(k));
    let prod: BigInt = tiers
        .iter()
        .map(|&b| alpha.pow((rows - b) as u32).product_coeff(&beta.pow(b as u32), w))
        .product();
    let scale = binom(n as u64, w as i64).pow((j - 1) as u32);
    Ok(BigRational::new(prod, scale))
}

fn gallager_tensor(j: usize, k: usize, n: usize, m: usize) -> Result<SplitAcwdTensor> {
    check_gallager(j, k, n, m)?;
    let rows = m / j;
    let tier = parity_products(k, rows);
    let mut t = SplitAcwdTensor::zeros(n, vec![rows; j])?;
    for w in 0..=n {
        let scale = binom(n as u64, w as i64).pow((j - 1) as u32);
        for idx in 0..t.signature_count() {
            let sig = t.signature(idx);
            let prod: BigInt = sig.iter().map(|&b| tier[b].coeff(w)).product();
            t.set_idx(w, idx, BigRational::new(prod, scale.clone()));
        }
    }
    Ok(t)
}

/// Probability that a uniform weight-`k` row has even overlap with a weight-`w` vector.
pub fn gamma(n: usize, k: usize, w: usize) -> BigRational {
    let even: BigInt = (0..=k / 2)
        .map(|i| binom(w as u64, 2 * i as i64) * binom((n - w) as u64, (k - 2 * i) as i64))
        .sum();
    BigRational::new(even, binom(n as u64, k as i64))
}

/// ACWD of the constant-row-weight ensemble.
pub fn constant_row_acwd(k: usize, n: usize, m: usize, s: &SyndromeVector, w: usize) -> Result<BigRational> {
    check_constant_row(k, n, m)?;
    check_syndrome(s, m)?;
    if w > n {
        return Ok(BigRational::zero());
    }
    Ok(constant_row_cell(k, n, m, s.weight(), w))
}

fn constant_row_cell(k: usize, n: usize, m: usize, sigma: usize, w: usize) -> BigRational {
    let g = gamma(n, k, w);
    let odd = BigRational::one() - &g;
    g.pow((m - sigma) as i32) * odd.pow(sigma as i32) * binom_rat(n, w)
}

pub fn constant_row_table(k: usize, n: usize, m: usize) -> Result<AcwdTable> {
    check_constant_row(k, n, m)?;
    Ok(AcwdTable::from_fn(n, m, |w, s| constant_row_cell(k, n, m, s, w)))
}

/// `B_w(sigma)` of the `(j, k)`-regular bipartite ensemble:
/// `[alpha_k^(m-sigma) beta_k^sigma]_(wj) / C(nj, wj) * C(n, w)`.
pub fn bipartite_acwd(j: usize, k: usize, n: usize, m: usize, sigma: usize, w: usize) -> Result<BigRational> {
    check_bipartite(j, k, n, m)?;
    if sigma > m || w > n {
        return Ok(BigRational::zero());
    }
    let coeff = alpha_poly(k)
        .pow((m - sigma) as u32)
        .product_coeff(&beta_poly(k).pow(sigma as u32), w * j);
    Ok(bipartite_scale(coeff, j, n, w))
}

fn bipartite_scale(coeff: BigInt, j: usize, n: usize, w: usize) -> BigRational {
    BigRational::new(coeff * binom(n as u64, w as i64), binom((n * j) as u64, (w * j) as i64))
}

pub fn bipartite_table(j: usize, k: usize, n: usize, m: usize) -> Result<AcwdTable> {
    check_bipartite(j, k, n, m)?;
    let products = parity_products(k, m);
    Ok(AcwdTable::from_fn(n, m, |w, s| {
        bipartite_scale(products[s].coeff(w * j), j, n, w)
    }))
}

fn check_enumerable(h: &BitMatrix) -> Result<()> {
    if h.n() > MAX_ENUM_COLUMNS {
        return Err(Error::budget("exhaustive coset scan (columns)", h.n(), MAX_ENUM_COLUMNS));
    }
    Ok(())
}

/// Visit every `x` in F2^n with its weight and syndrome mask, in Gray-code order.
pub(crate) fn for_each_syndrome(h: &BitMatrix, mut f: impl FnMut(usize, u64)) -> Result<()> {
    check_enumerable(h)?;
    let cols = h.column_masks()?;
    let (mut syn, mut weight, mut x) = (0u64, 0usize, 0u64);
    f(0, 0);
    for i in 1u64..(1u64 << h.n()) {
        let bit = i.trailing_zeros() as usize;
        x ^= 1 << bit;
        syn ^= cols[bit];
        if x >> bit & 1 == 1 {
            weight += 1;
        } else {
            weight -= 1;
        }
        f(weight, syn);
    }
    Ok(())
}

/// Coset weight distribution `A_w(H, s)` for `w in 0..=n`.
pub fn single_matrix_cwd(h: &BitMatrix, s: &SyndromeVector) -> Result<Vec<u64>> {
    check_syndrome(s, h.m())?;
    if h.m() > 64 {
        return invalid(format!("syndromes longer than 64 bits are not supported (m={})", h.m()));
    }
    let target = s.to_mask();
    let mut counts = vec![0u64; h.n() + 1];
    for_each_syndrome(h, |w, syn| {
        if syn == target {
            counts[w] += 1;
        }
    })?;
    Ok(counts)
}

/// `counts[s][w]` for every syndrome mask `s`.
pub fn single_matrix_all_cosets(h: &BitMatrix) -> Result<Vec<Vec<u64>>> {
    if h.m() > MAX_FULL_SYNDROME_ROWS {
        return Err(Error::budget("full-syndrome table (rows)", h.m(), MAX_FULL_SYNDROME_ROWS));
    }
    let mut counts = vec![vec![0u64; h.n() + 1]; 1 << h.m()];
    for_each_syndrome(h, |w, syn| counts[syn as usize][w] += 1)?;
    Ok(counts)
}

fn single_matrix_tensor(h: &BitMatrix) -> Result<SplitAcwdTensor> {
    let counts = single_matrix_all_cosets(h)?;
    let mut t = SplitAcwdTensor::zeros(h.n(), vec![1; h.m()])?;
    for (mask, row) in counts.iter().enumerate() {
        let sig: Vec<usize> = (0..h.m()).map(|r| mask >> r & 1).collect();
        let idx = t.index_of(&sig);
        for (w, &c) in row.iter().enumerate() {
            t.set_idx(w, idx, BigRational::from_integer(BigInt::from(c)));
        }
    }
    Ok(t)
}

/// Coset weight distribution of the block-diagonal matrix with `nu` copies of `h_star`,
/// as the coefficient list of the product of per-block coset enumerators.
pub fn block_diagonal_cwd(h_star: &BitMatrix, nu: usize, s: &SyndromeVector) -> Result<Vec<BigInt>> {
    if nu == 0 {
        return invalid("block count must be positive".into());
    }
    let m_star = h_star.m();
    if s.len() != nu * m_star {
        return invalid(format!(
            "syndrome has length {}, expected {nu} blocks of {m_star}",
            s.len()
        ));
    }
    let mut product = IntPoly::one();
    for b in 0..nu {
        let sub = SyndromeVector::new(s.bits()[b * m_star..(b + 1) * m_star].to_vec());
        let cwd = single_matrix_cwd(h_star, &sub)?;
        product = product.mul(&IntPoly::new(cwd.into_iter().map(BigInt::from).collect()));
    }
    Ok((0..=nu * h_star.n()).map(|w| product.coeff(w)).collect())
}
