//! Exact integer/rational combinatorics and dense univariate polynomials.
//!
//! Every finite-length quantity in this crate is computed here without rounding:
//! binomials and multinomials are big integers, polynomial coefficients live in
//! either [`BigInt`] or [`BigRational`].

use std::fmt;
use std::ops::{AddAssign, Mul};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient ring for [`DensePoly`].
pub trait Coefficient: Clone + Zero + One + PartialEq + fmt::Debug + for<'a> AddAssign<&'a Self> {
    fn mul_ref(&self, rhs: &Self) -> Self;
}

impl Coefficient for BigInt {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl Coefficient for BigRational {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binom(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `total! / prod(parts_i!)`.
pub fn multinom(total: u64, parts: &[u64]) -> Result<BigInt> {
    let sum: u64 = parts.iter().sum();
    if sum != total {
        return Err(Error::InvalidParameters(format!(
            "multinomial parts sum to {sum}, expected {total}"
        )));
    }
    let mut acc = BigInt::one();
    let mut remaining = total;
    for &p in parts {
        acc *= binom(remaining, p as i64);
        remaining -= p;
    }
    Ok(acc)
}

/// Pascal triangle up to a fixed row, for hot loops that need many small binomials.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row = vec![BigInt::one(); n + 1];
            for k in 1..n {
                row[k] = &rows[n - 1][k - 1] + &rows[n - 1][k];
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    /// `C(n, k)`; `n` must not exceed the table size.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            BigInt::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    pub fn get_ref(&self, n: usize, k: usize) -> Option<&BigInt> {
        self.rows.get(n).and_then(|r| r.get(k))
    }
}

/// Dense univariate polynomial, `coeffs[d]` is the coefficient of `x^d`.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct DensePoly<T: Coefficient> {
    coeffs: Vec<T>,
}

pub type IntPoly = DensePoly<BigInt>;
pub type RatPoly = DensePoly<BigRational>;

impl<T: Coefficient> DensePoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DensePoly { coeffs: vec![T::one()] }
    }

    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `[p(x)]_w`.
    pub fn coeff(&self, w: usize) -> T {
        self.coeffs.get(w).cloned().unwrap_or_else(T::zero)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &a.mul_ref(b);
                }
            }
        }
        Self::new(out)
    }

    /// Repeated squaring.
    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `[self * rhs]_w` without forming the full product.
    pub fn product_coeff(&self, rhs: &Self, w: usize) -> T {
        let mut acc = T::zero();
        let (Some(da), Some(db)) = (self.degree(), rhs.degree()) else {
            return acc;
        };
        if w > da + db {
            return acc;
        }
        let lo = w.saturating_sub(db);
        let hi = w.min(da);
        for i in lo..=hi {
            let a = &self.coeffs[i];
            let b = &rhs.coeffs[w - i];
            if !a.is_zero() && !b.is_zero() {
                acc += &a.mul_ref(b);
            }
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![T::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }
}

impl IntPoly {
    pub fn to_rational(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Nonzero coefficients as `(degree, value)` in `f64`, for real-valued evaluation.
    pub fn support_f64(&self) -> Vec<(usize, f64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| (d, c.to_f64().unwrap_or(f64::INFINITY)))
            .collect()
    }
}

impl<T: Coefficient> Mul for &DensePoly<T> {
    type Output = DensePoly<T>;
    fn mul(self, rhs: Self) -> DensePoly<T> {
        DensePoly::mul(self, rhs)
    }
}

impl<T: Coefficient + fmt::Display> fmt::Display for DensePoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (d, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{c}x")?,
                (_, true) => write!(f, "x^{d}")?,
                (_, false) => write!(f, "{c}x^{d}")?,
            }
        }
        Ok(())
    }
}

/// `[p(x)]_w`.
pub fn coeff_at<T: Coefficient>(p: &DensePoly<T>, w: usize) -> T {
    p.coeff(w)
}

pub fn poly_mul<T: Coefficient>(p: &DensePoly<T>, q: &DensePoly<T>) -> DensePoly<T> {
    p.mul(q)
}

pub fn poly_pow<T: Coefficient>(p: &DensePoly<T>, exp: u32) -> DensePoly<T> {
    p.pow(exp)
}

fn parity_part(k: usize, odd: bool) -> IntPoly {
    let coeffs = (0..=k)
        .map(|i| {
            if (i % 2 == 1) == odd {
                binom(k as u64, i as i64)
            } else {
                BigInt::zero()
            }
        })
        .collect();
    IntPoly::new(coeffs)
}

/// Weight enumerator of the even-weight code of length `k`: `((1+x)^k + (1-x)^k) / 2`.
pub fn alpha_poly(k: usize) -> IntPoly {
    parity_part(k, false)
}

/// Weight enumerator of the odd-weight vectors of length `k`: `((1+x)^k - (1-x)^k) / 2`.
pub fn beta_poly(k: usize) -> IntPoly {
    parity_part(k, true)
}

fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map_or(f64::INFINITY, f64::log2);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.log2() + shift as f64
}

/// `log2(q)` for a positive rational, `-inf` for zero. Safe for values far beyond `f64` range.
pub fn log2_rational(q: &BigRational) -> f64 {
    if q.is_zero() {
        return f64::NEG_INFINITY;
    }
    debug_assert!(q.is_positive());
    log2_biguint(q.numer().magnitude()) - log2_biguint(q.denom().magnitude())
}

/// Nearest `f64` to `q`, through logs when the parts overflow.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let sign = if q.numer().sign() == Sign::Minus { -1.0 } else { 1.0 };
    sign * log2_rational(&q.abs()).exp2()
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(6, 2), BigInt::from(15));
        assert_eq!(binom(6, 0), BigInt::from(1));
        assert_eq!(binom(3, 5), BigInt::zero());
        assert_eq!(binom(3, -1), BigInt::zero());
        for n in 1..=30u64 {
            for k in 1..=n as i64 {
                assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
            }
        }
        let t = BinomialTable::new(30);
        for n in 0..=30usize {
            for k in 0..=n + 1 {
                assert_eq!(t.get(n, k), binom(n as u64, k as i64));
            }
        }
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinom(3, &[1, 1, 1]).unwrap(), BigInt::from(6));
        assert_eq!(multinom(2, &[2, 0]).unwrap(), BigInt::from(1));
        assert_eq!(multinom(4, &[2, 2]).unwrap(), BigInt::from(6));
        assert!(matches!(multinom(4, &[2, 1]), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn enumerator_polynomials() {
        assert_eq!(alpha_poly(2), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(alpha_poly(4), IntPoly::from_i64(&[1, 0, 6, 0, 1]));
        assert_eq!(alpha_poly(1), IntPoly::from_i64(&[1]));
        assert_eq!(beta_poly(2), IntPoly::from_i64(&[0, 2]));
        assert_eq!(beta_poly(4), IntPoly::from_i64(&[0, 4, 0, 4]));
        assert_eq!(beta_poly(1), IntPoly::from_i64(&[0, 1]));
        assert_eq!(alpha_poly(4).to_string(), "1 + 6x^2 + x^4");
    }

    #[test]
    fn enumerator_identities() {
        let one_plus = IntPoly::from_i64(&[1, 1]);
        let one_minus = IntPoly::from_i64(&[1, -1]);
        for k in 1..=12 {
            let (a, b) = (alpha_poly(k), beta_poly(k));
            assert_eq!(a.add(&b), one_plus.pow(k as u32));
            let neg_b = IntPoly::new(b.coeffs().iter().map(|c| -c).collect());
            assert_eq!(a.add(&neg_b), one_minus.pow(k as u32));
            assert!(a.coeffs().iter().enumerate().all(|(d, c)| d % 2 == 0 || c.is_zero()));
            assert!(b.coeffs().iter().enumerate().all(|(d, c)| d % 2 == 1 || c.is_zero()));
        }
    }

    #[test]
    fn coefficient_extraction() {
        let p = IntPoly::from_i64(&[1, 1]).pow(4);
        assert_eq!(coeff_at(&p, 2), BigInt::from(6));
        assert_eq!(coeff_at(&alpha_poly(2).pow(3), 2), BigInt::from(3));
        assert_eq!(coeff_at(&IntPoly::zero(), 5), BigInt::zero());
        assert_eq!(IntPoly::zero().degree(), None);
        let a = alpha_poly(4).pow(3);
        let b = beta_poly(4).pow(2);
        let full = a.mul(&b);
        for w in 0..=20 {
            assert_eq!(a.product_coeff(&b, w), full.coeff(w));
        }
    }

    #[test]
    fn rational_polys() {
        let p = RatPoly::new(vec![rat(1, 2), rat(1, 3)]);
        let sq = p.pow(2);
        assert_eq!(sq.coeffs(), &[rat(1, 4), rat(1, 3), rat(1, 9)]);
        assert_eq!(alpha_poly(2).to_rational().coeff(2), rat(1, 1));
    }

    #[test]
    fn logs_of_huge_rationals() {
        let big = BigRational::from_integer(BigInt::from(2).pow(5000u32));
        assert!((log2_rational(&big) - 5000.0).abs() < 1e-9);
        let q = rat(60, 11);
        assert!((log2_rational(&q) - (60.0f64 / 11.0).log2()).abs() < 1e-12);
        assert!((rational_to_f64(&rat(37, 11)) - 37.0 / 11.0).abs() < 1e-15);
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-20i64..20, 0..8).prop_map(|c| IntPoly::from_i64(&c))
    }

    proptest! {
        #[test]
        fn product_is_convolution(p in small_poly(), q in small_poly(), w in 0usize..16) {
            let expected: BigInt = (0..=w).map(|i| p.coeff(i) * q.coeff(w - i)).sum();
            prop_assert_eq!(coeff_at(&poly_mul(&p, &q), w), expected);
        }

        #[test]
        fn pow_matches_repeated_mul(p in small_poly(), e in 0u32..5) {
            let mut acc = IntPoly::one();
            for _ in 0..e { acc = acc.mul(&p); }
            prop_assert_eq!(poly_pow(&p, e), acc);
        }
    }
}
