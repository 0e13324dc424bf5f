//! Asymptotic growth rates (AGRs) of ACWDs, in `f64`.
//!
//! For the `(j, k)`-regular bipartite ensemble the growth rate at normalized weight
//! `l = w/n` and normalized syndrome weight `eta = sigma/m` comes from the saddle point
//! of `f(x) = alpha_k(x)^(1-eta) beta_k(x)^eta`. Everything is evaluated in `u = ln x`
//! with log-sum-exp, so saddle points near `0` or far above `1` stay representable.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::base::{bipartite_acwd, EnsembleParams};
use crate::error::{Error, Result};
use crate::poly::{alpha_poly, beta_poly, log2_rational, IntPoly};

const LN2: f64 = std::f64::consts::LN_2;
/// Relative residual demanded of [`saddle_root`].
pub const ROOT_TOLERANCE: f64 = 1e-12;
/// Distance from a support boundary below which the boundary limit is used.
const BOUNDARY_EPS: f64 = 1e-12;

/// Growth rate: finite, or `-inf` where the ACWD is structurally zero.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum AgrValue {
    Finite(f64),
    NegInfinity,
}

impl AgrValue {
    pub fn to_f64(self) -> f64 {
        match self {
            AgrValue::Finite(v) => v,
            AgrValue::NegInfinity => f64::NEG_INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, AgrValue::Finite(_))
    }

    fn from_f64(v: f64) -> Self {
        if v == f64::NEG_INFINITY {
            AgrValue::NegInfinity
        } else {
            AgrValue::Finite(v)
        }
    }
}

impl fmt::Display for AgrValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AgrValue::Finite(v) => write!(f, "{v}"),
            AgrValue::NegInfinity => write!(f, "-inf"),
        }
    }
}

/// A point `(l, eta)` of the growth-rate domain.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct AgrQuery {
    pub ell: f64,
    pub eta: f64,
}

impl AgrQuery {
    pub fn new(ell: f64, eta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&ell) || !(0.0..=1.0).contains(&eta) {
            return Err(Error::InvalidParameters(format!("need 0 <= l, eta <= 1, got l={ell}, eta={eta}")));
        }
        Ok(AgrQuery { ell, eta })
    }
}

/// Samples `(l, b_l(eta))` at fixed `eta`, strictly increasing in `l`.
#[derive(Clone, PartialEq, Debug)]
pub struct AgrCurve {
    pub eta: f64,
    pub samples: Vec<(f64, AgrValue)>,
}

impl AgrCurve {
    /// First grid point at which the curve moves from below `level` to at or above it.
    pub fn first_crossing(&self, level: f64) -> Option<f64> {
        self.samples
            .windows(2)
            .find(|p| p[0].1.to_f64() < level && p[1].1.to_f64() >= level)
            .map(|p| p[1].0)
    }
}

/// `points + 1` equally spaced values covering `[0, 1]`.
pub fn uniform_grid(points: usize) -> Vec<f64> {
    let points = points.max(1);
    (0..=points).map(|i| i as f64 / points as f64).collect()
}

/// Binary entropy in bits, with `H(0) = H(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameters(format!("binary entropy needs 0 <= x <= 1, got {x}")));
    }
    Ok(h2(x))
}

fn h2(x: f64) -> f64 {
    let t = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    t(x) + t(1.0 - x)
}

/// A polynomial with positive coefficients, evaluated at `x = e^u` in log space.
#[derive(Clone, Debug)]
struct LogPoly {
    terms: Vec<(f64, f64)>,
}

impl LogPoly {
    fn new(p: &IntPoly) -> Self {
        LogPoly {
            terms: p.support_f64().into_iter().map(|(d, c)| (d as f64, c.ln())).collect(),
        }
    }

    fn low(&self) -> (f64, f64) {
        self.terms[0]
    }

    fn high(&self) -> (f64, f64) {
        *self.terms.last().expect("nonzero polynomial")
    }

    fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// `ln p(e^u)` with the mean and variance of the degree under weights `c_d e^(du)`.
    fn moments(&self, u: f64) -> (f64, f64, f64) {
        let top = self.terms.iter().map(|(d, lc)| lc + d * u).fold(f64::NEG_INFINITY, f64::max);
        let (mut z, mut m1, mut m2) = (0.0, 0.0, 0.0);
        for (d, lc) in &self.terms {
            let wt = (lc + d * u - top).exp();
            z += wt;
            m1 += wt * d;
            m2 += wt * d * d;
        }
        let mean = m1 / z;
        (top + z.ln(), mean, (m2 / z - mean * mean).max(0.0))
    }
}

/// `alpha_k^(1-eta) beta_k^eta` in log space.
#[derive(Clone, Debug)]
struct ParityMix {
    k: usize,
    eta: f64,
    alpha: LogPoly,
    beta: LogPoly,
}

impl ParityMix {
    fn new(k: usize, eta: f64) -> Self {
        ParityMix { k, eta, alpha: LogPoly::new(&alpha_poly(k)), beta: LogPoly::new(&beta_poly(k)) }
    }

    /// `(ln f, x f'/f, d(x f'/f)/du)` at `x = e^u`.
    fn eval(&self, u: f64) -> (f64, f64, f64) {
        let (la, ma, va) = self.alpha.moments(u);
        let (lb, mb, vb) = self.beta.moments(u);
        let e = self.eta;
        let ln_f = if e == 0.0 {
            la
        } else if e == 1.0 {
            lb
        } else {
            (1.0 - e) * la + e * lb
        };
        (ln_f, (1.0 - e) * ma + e * mb, (1.0 - e) * va + e * vb)
    }

    fn phi(&self, u: f64) -> f64 {
        self.eval(u).1
    }

    /// Limits of `x f'/f` as `x -> 0` and `x -> inf`.
    fn range(&self) -> (f64, f64) {
        let e = self.eta;
        (
            (1.0 - e) * self.alpha.low().0 + e * self.beta.low().0,
            (1.0 - e) * self.alpha.high().0 + e * self.beta.high().0,
        )
    }

    fn constant(&self) -> bool {
        let e = self.eta;
        (e == 1.0 || self.alpha.is_monomial()) && (e == 0.0 || self.beta.is_monomial())
    }
}

fn check_k_eta(k: usize, eta: f64) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be positive".into()));
    }
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::InvalidParameters(format!("need 0 <= eta <= 1, got {eta}")));
    }
    Ok(())
}

/// Root in `u = ln x` of `x f'/f = target`, with `f = alpha_k^(1-eta) beta_k^eta`.
fn saddle_u(mix: &ParityMix, target: f64) -> Result<f64> {
    if mix.constant() {
        let c = mix.phi(0.0);
        return if (c - target).abs() <= ROOT_TOLERANCE * target.abs().max(1.0) {
            Ok(0.0)
        } else {
            Err(Error::NoRoot(format!(
                "x f'/f is identically {c} for k={}, eta={}; target {target} is unreachable",
                mix.k, mix.eta
            )))
        };
    }
    let (lo, hi) = mix.range();
    if target <= lo || target >= hi {
        return Err(Error::NoRoot(format!(
            "target lk = {target} is outside ({lo}, {hi}) for k={}, eta={}: syndrome weight bound or support boundary",
            mix.k, mix.eta
        )));
    }
    let (mut a, mut b) = (-1.0f64, 1.0f64);
    while mix.phi(a) >= target {
        a *= 2.0;
        if a < -1e4 {
            return Err(Error::NoRoot(format!("no lower bracket for target {target}")));
        }
    }
    while mix.phi(b) <= target {
        b *= 2.0;
        if b > 1e4 {
            return Err(Error::NoRoot(format!("no upper bracket for target {target}")));
        }
    }
    let samples: Vec<f64> = (0..=64).map(|i| mix.phi(a + (b - a) * i as f64 / 64.0)).collect();
    if samples.windows(2).any(|p| p[1] < p[0] - 1e-12 * p[0].abs().max(1.0)) {
        return Err(Error::NoRoot(format!("x f'/f is not monotone on [{a}, {b}] in ln x")));
    }
    let tol = ROOT_TOLERANCE * target;
    let mut u = 0.5 * (a + b);
    for _ in 0..400 {
        let (_, p, dp) = mix.eval(u);
        let r = p - target;
        if r.abs() <= 0.25 * tol {
            return Ok(u);
        }
        if r < 0.0 {
            a = u;
        } else {
            b = u;
        }
        let newton = u - r / dp;
        u = if dp > 0.0 && newton > a && newton < b { newton } else { 0.5 * (a + b) };
        if b - a <= f64::EPSILON * u.abs().max(1.0) {
            break;
        }
    }
    let r = (mix.phi(u) - target).abs();
    if r <= tol {
        Ok(u)
    } else {
        Err(Error::NoRoot(format!("residual {r:e} above tolerance at target {target}")))
    }
}

/// Positive root `r` of `x f'(x)/f(x) = lk` for `f = alpha_k^(1-eta) beta_k^eta`.
pub fn saddle_root(k: usize, eta: f64, ell: f64) -> Result<f64> {
    check_k_eta(k, eta)?;
    if !(ell > 0.0 && ell < 1.0) {
        return Err(Error::InvalidParameters(format!("saddle root needs 0 < l < 1, got {ell}")));
    }
    saddle_u(&ParityMix::new(k, eta), ell * k as f64).map(f64::exp)
}

/// `x f'/f` at `x`, for residual checks.
pub fn saddle_ratio(k: usize, eta: f64, x: f64) -> f64 {
    ParityMix::new(k, eta).phi(x.ln())
}

/// Growth rate of the `(j, k)`-regular bipartite ensemble:
/// `(j/k)((1-eta) log2 alpha_k(r) + eta log2 beta_k(r) - lk log2 r) - (j-1) H(l)`.
///
/// `-inf` when `l` lies outside the support `[eta/k, ((1-eta) deg alpha + eta deg beta)/k]`;
/// on the boundary the limit keeps only the extreme coefficients.
pub fn bipartite_agr(j: usize, k: usize, ell: f64, eta: f64) -> Result<AgrValue> {
    if j == 0 || j >= k {
        return Err(Error::InvalidParameters(format!("need 0 < j < k for a rate in (0, 1), got j={j}, k={k}")));
    }
    AgrQuery::new(ell, eta)?;
    Ok(BipartiteAgr::new(j, k, eta).at(ell))
}

/// [`bipartite_agr`] at a fixed `eta`, reusing the log-space polynomials.
#[derive(Clone, Debug)]
pub struct BipartiteAgr {
    j: usize,
    mix: ParityMix,
}

impl BipartiteAgr {
    pub fn new(j: usize, k: usize, eta: f64) -> Self {
        BipartiteAgr { j, mix: ParityMix::new(k, eta) }
    }

    pub fn at(&self, ell: f64) -> AgrValue {
        let (j, k, e) = (self.j as f64, self.mix.k as f64, self.mix.eta);
        let target = ell * k;
        let (lo, hi) = self.mix.range();
        let scale = BOUNDARY_EPS * k;
        if target < lo - scale || target > hi + scale {
            return AgrValue::NegInfinity;
        }
        let entropy = (j - 1.0) * h2(ell);
        let extreme = |pick: fn(&LogPoly) -> (f64, f64)| {
            let (a, b) = (pick(&self.mix.alpha).1, pick(&self.mix.beta).1);
            ((1.0 - e) * a + e * b) / LN2
        };
        let log_f = if self.mix.constant() {
            self.mix.eval(0.0).0 / LN2
        } else if (target - lo).abs() <= scale {
            extreme(LogPoly::low)
        } else if (target - hi).abs() <= scale {
            extreme(LogPoly::high)
        } else {
            match saddle_u(&self.mix, target) {
                Ok(u) => (self.mix.eval(u).0 - target * u) / LN2,
                Err(_) => return AgrValue::NegInfinity,
            }
        };
        AgrValue::Finite(j / k * log_f - entropy)
    }

    pub fn curve(&self, grid: &[f64]) -> AgrCurve {
        AgrCurve {
            eta: self.mix.eta,
            samples: grid.par_iter().map(|&l| (l, self.at(l))).collect(),
        }
    }
}

/// `b_l(eta)` of the bipartite ensemble sampled on `grid`.
pub fn agr_curve(j: usize, k: usize, eta: f64, grid: &[f64]) -> Result<AgrCurve> {
    bipartite_agr(j, k, 0.0, eta)?;
    if grid.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::InvalidParameters("grid must be strictly increasing".into()));
    }
    if grid.iter().any(|l| !(0.0..=1.0).contains(l)) {
        return Err(Error::InvalidParameters("grid points must lie in [0, 1]".into()));
    }
    Ok(BipartiteAgr::new(j, k, eta).curve(grid))
}

/// Finite-length growth `(1/n) log2 B_w(sigma)` at the cell nearest `(l n, eta m)`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct FiniteGrowth {
    pub w: usize,
    pub sigma: usize,
    pub growth: f64,
}

/// Exact finite-`n` growth of the bipartite ACWD.
///
/// `sigma = round(eta m)`. `w` is the weight closest to `l n` whose ACWD entry is
/// nonzero, ties going to the lower weight; rounding alone can land on a weight that
/// the parity structure forbids.
pub fn agr_finite_n_check(j: usize, k: usize, n: usize, ell: f64, eta: f64) -> Result<FiniteGrowth> {
    AgrQuery::new(ell, eta)?;
    let m = EnsembleParams::bipartite(j, k, n)?.m();
    let sigma = (eta * m as f64).round() as usize;
    let centre = ell * n as f64;
    let mut order: Vec<usize> = (0..=n).collect();
    order.sort_by(|a, b| {
        let (da, db) = ((*a as f64 - centre).abs(), (*b as f64 - centre).abs());
        da.total_cmp(&db).then(a.cmp(b))
    });
    for w in order {
        let v = bipartite_acwd(j, k, n, m, sigma, w)?;
        if !v.is_zero() {
            return Ok(FiniteGrowth { w, sigma, growth: log2_rational(&v) / n as f64 });
        }
    }
    Ok(FiniteGrowth { w: 0, sigma, growth: f64::NEG_INFINITY })
}

/// Split of a concatenation `X Y`: column shares `nu_1 + nu_2 = 1`, design rate `R`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ConcatShape {
    pub nu1: f64,
    pub nu2: f64,
    pub rate: f64,
}

impl ConcatShape {
    pub fn new(nu1: f64, nu2: f64, rate: f64) -> Result<Self> {
        if !(nu1 > 0.0 && nu2 > 0.0 && (nu1 + nu2 - 1.0).abs() <= 1e-12) {
            return Err(Error::InvalidParameters(format!("need nu1, nu2 > 0 with nu1 + nu2 = 1, got {nu1}, {nu2}")));
        }
        if !(rate > 0.0 && rate < 1.0) {
            return Err(Error::InvalidParameters(format!("design rate must lie in (0, 1), got {rate}")));
        }
        Ok(ConcatShape { nu1, nu2, rate })
    }
}

/// Maximizer of the concatenation objective.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ConcatAgr {
    pub value: AgrValue,
    /// `(l_1, l_2, kappa_1, kappa_2)` at the maximum, when one is finite.
    pub argmax: Option<[f64; 4]>,
}

/// Objective of the concatenation maximization at `(l_1, kappa_1, kappa_2)`, `l_2` eliminated:
///
/// `(1-R)(eta H(kappa_1/eta) + (1-eta) H(kappa_2/(1-eta))) + nu_1 X(l_1, kappa_1 + kappa_2)
///  + nu_2 Y(l_2, eta - kappa_1 + kappa_2)`.
///
/// `X` and `Y` are growth rates normalized to their own column counts, so they enter
/// weighted by their column shares. `-inf` outside the feasible set.
#[allow(clippy::too_many_arguments)]
pub fn concat_objective<X, Y>(x: &X, y: &Y, shape: ConcatShape, ell: f64, eta: f64, ell1: f64, k1: f64, k2: f64) -> f64
where
    X: Fn(f64, f64) -> AgrValue + ?Sized,
    Y: Fn(f64, f64) -> AgrValue + ?Sized,
{
    let ell2 = (ell - shape.nu1 * ell1) / shape.nu2;
    let eps = 1e-12;
    if !(-eps..=1.0 + eps).contains(&ell1)
        || !(-eps..=1.0 + eps).contains(&ell2)
        || k1 < -eps
        || k1 > eta + eps
        || k2 < -eps
        || k2 > 1.0 - eta + eps
    {
        return f64::NEG_INFINITY;
    }
    let (ell1, ell2) = (ell1.clamp(0.0, 1.0), ell2.clamp(0.0, 1.0));
    let (k1, k2) = (k1.clamp(0.0, eta), k2.clamp(0.0, 1.0 - eta));
    let bx = x(ell1, (k1 + k2).min(1.0)).to_f64();
    if bx == f64::NEG_INFINITY {
        return bx;
    }
    let by = y(ell2, (eta - k1 + k2).clamp(0.0, 1.0)).to_f64();
    if by == f64::NEG_INFINITY {
        return by;
    }
    let ratio = |a: f64, b: f64| if b <= 0.0 { 0.0 } else { (a / b).clamp(0.0, 1.0) };
    let mix = eta * h2(ratio(k1, eta)) + (1.0 - eta) * h2(ratio(k2, 1.0 - eta));
    (1.0 - shape.rate) * mix + shape.nu1 * bx + shape.nu2 * by
}

fn axis(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if hi - lo <= 1e-15 || points <= 1 {
        return vec![lo];
    }
    (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect()
}

/// Growth rate of a concatenation by grid search over `(l_1, kappa_1, kappa_2)` followed by
/// coordinate-descent refinement (10 rounds, step halving).
pub fn concat_agr<X, Y>(x: &X, y: &Y, shape: ConcatShape, ell: f64, eta: f64, grid: usize) -> Result<ConcatAgr>
where
    X: Fn(f64, f64) -> AgrValue + Sync + ?Sized,
    Y: Fn(f64, f64) -> AgrValue + Sync + ?Sized,
{
    AgrQuery::new(ell, eta)?;
    let ConcatShape { nu1, nu2, .. } = shape;
    let l1_lo = ((ell - nu2) / nu1).max(0.0);
    let l1_hi = (ell / nu1).min(1.0);
    if l1_lo > l1_hi + 1e-15 {
        return Ok(ConcatAgr { value: AgrValue::NegInfinity, argmax: None });
    }
    let (ax, a1, a2) = (axis(l1_lo, l1_hi, grid), axis(0.0, eta, grid), axis(0.0, 1.0 - eta, grid));
    let g = |p: [f64; 3]| concat_objective(x, y, shape, ell, eta, p[0], p[1], p[2]);
    let best = ax
        .par_iter()
        .map(|&l1| {
            let mut best = (f64::NEG_INFINITY, [l1, 0.0, 0.0]);
            for &k1 in &a1 {
                for &k2 in &a2 {
                    let v = g([l1, k1, k2]);
                    if v > best.0 {
                        best = (v, [l1, k1, k2]);
                    }
                }
            }
            best
        })
        .reduce(|| (f64::NEG_INFINITY, [0.0; 3]), |a, b| if b.0 > a.0 { b } else { a });
    if best.0 == f64::NEG_INFINITY {
        return Ok(ConcatAgr { value: AgrValue::NegInfinity, argmax: None });
    }
    let spacing = |lo: f64, hi: f64| (hi - lo) / (grid.max(2) - 1) as f64;
    let mut step = [spacing(l1_lo, l1_hi), spacing(0.0, eta), spacing(0.0, 1.0 - eta)];
    let (mut value, mut point) = best;
    for _ in 0..10 {
        let mut improved = true;
        while improved {
            improved = false;
            for d in 0..3 {
                for dir in [-1.0, 1.0] {
                    let mut cand = point;
                    cand[d] += dir * step[d];
                    let v = g(cand);
                    if v > value {
                        (value, point, improved) = (v, cand, true);
                    }
                }
            }
        }
        step.iter_mut().for_each(|s| *s *= 0.5);
    }
    let ell2 = (ell - nu1 * point[0]) / nu2;
    Ok(ConcatAgr {
        value: AgrValue::from_f64(value),
        argmax: Some([point[0], ell2, point[1], point[2]]),
    })
}

/// Number of scan intervals used to locate the first crossing.
const CROSSING_SCAN: usize = 2000;

/// Smallest `l` in `(0, 1]` with `agr(l) >= 0` reached from below, bisected to `1e-6`.
///
/// `-inf` counts as negative. The scan starts at `l = 0`; a curve that starts at zero
/// (as at `eta = 0`) must first go negative.
pub fn typical_coset_weight<F: Fn(f64) -> AgrValue + Sync>(agr: F) -> Result<f64> {
    let grid = uniform_grid(CROSSING_SCAN);
    let values: Vec<f64> = grid.par_iter().map(|&l| agr(l).to_f64()).collect();
    let i = (1..values.len())
        .find(|&i| values[i - 1] < 0.0 && values[i] >= 0.0)
        .ok_or_else(|| Error::NoCrossing("growth rate never rises from negative to nonnegative on [0, 1]".into()))?;
    let (mut a, mut b) = (grid[i - 1], grid[i]);
    while b - a > 1e-7 {
        let mid = 0.5 * (a + b);
        if agr(mid).to_f64() >= 0.0 {
            b = mid;
        } else {
            a = mid;
        }
    }
    Ok(b)
}

/// Typical coset weight of the `(j, k)` bipartite ensemble at normalized syndrome weight `eta`.
pub fn bipartite_typical_coset_weight(j: usize, k: usize, eta: f64) -> Result<f64> {
    bipartite_agr(j, k, 0.0, eta)?;
    let agr = BipartiteAgr::new(j, k, eta);
    typical_coset_weight(|l| agr.at(l))
}

/// Largest growth rate on `[0, upper]`; negative certifies that the probability of a coset
/// with weight at most `upper * n` vanishes.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct TailCertificate {
    pub upper: f64,
    pub sup: AgrValue,
    pub argmax: f64,
}

pub fn coset_weight_tail_bound<F: Fn(f64) -> AgrValue + Sync>(agr: F, upper: f64) -> Result<TailCertificate> {
    if !(0.0..=1.0).contains(&upper) {
        return Err(Error::InvalidParameters(format!("upper weight must lie in [0, 1], got {upper}")));
    }
    let points = 400;
    let grid = axis(0.0, upper, points + 1);
    let (mut sup, mut arg) = grid
        .par_iter()
        .map(|&l| (agr(l).to_f64(), l))
        .reduce(|| (f64::NEG_INFINITY, 0.0), |a, b| if b.0 > a.0 { b } else { a });
    if sup > f64::NEG_INFINITY {
        let mut step = upper / points as f64;
        for _ in 0..30 {
            for dir in [-1.0, 1.0] {
                let c = (arg + dir * step).clamp(0.0, upper);
                let v = agr(c).to_f64();
                if v > sup {
                    (sup, arg) = (v, c);
                }
            }
            step *= 0.5;
        }
    }
    if sup >= 0.0 {
        return Err(Error::NotCertified { sup, upper });
    }
    Ok(TailCertificate { upper, sup: AgrValue::from_f64(sup), argmax: arg })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn entropy() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!(binary_entropy(1.5).is_err());
    }

    #[test]
    fn roots() {
        for k in [2, 4, 6, 8] {
            assert!((saddle_root(k, 0.0, 0.5).unwrap() - 1.0).abs() < 1e-9);
        }
        assert!((saddle_root(2, 1.0, 0.5).unwrap() - 1.0).abs() < 1e-12);
        assert!(saddle_root(2, 1.0, 0.3).is_err());
        let r = saddle_root(6, 0.2, 0.1).unwrap();
        assert!((saddle_ratio(6, 0.2, r) - 0.6).abs() <= 1e-12 * 0.6);
        assert!(matches!(saddle_root(6, 1.0, 0.1), Err(Error::NoRoot(_))));
    }

    #[test]
    fn bipartite_values() {
        assert_eq!(bipartite_agr(3, 6, 0.1, 1.0).unwrap(), AgrValue::NegInfinity);
        let mid = bipartite_agr(3, 6, 0.5, 0.0).unwrap().to_f64();
        assert!((mid - 0.5).abs() < 1e-10);
        assert_eq!(bipartite_agr(3, 6, 0.0, 0.0).unwrap(), AgrValue::Finite(0.0));
        // lower boundary l = eta/k keeps only the lowest coefficients: eta log2 k
        let edge = bipartite_agr(3, 6, 1.0 / 6.0, 1.0).unwrap().to_f64();
        assert!((edge - (0.5 * 6f64.log2() - 2.0 * h2(1.0 / 6.0))).abs() < 1e-12);
        let near = bipartite_agr(3, 6, 1.0 / 6.0 + 1e-7, 1.0).unwrap().to_f64();
        assert!((near - edge).abs() < 1e-4);
        assert!(bipartite_agr(6, 6, 0.5, 0.0).is_err());
    }

    #[test]
    fn finite_n_small_cells() {
        let g = agr_finite_n_check(2, 4, 6, 1.0 / 3.0, 0.0).unwrap();
        assert_eq!((g.w, g.sigma), (2, 0));
        assert!((g.growth - (37.0f64 / 11.0).log2() / 6.0).abs() < 1e-12);
        let g = agr_finite_n_check(2, 4, 6, 0.5, 0.0).unwrap();
        assert!((g.growth - (60.0f64 / 11.0).log2() / 6.0).abs() < 1e-12);
        assert_eq!(agr_finite_n_check(3, 6, 12, 0.0, 0.0).unwrap().growth, 0.0);
    }

    #[test]
    fn typical_weights() {
        let t2 = bipartite_typical_coset_weight(3, 6, 0.2).unwrap();
        let t8 = bipartite_typical_coset_weight(3, 6, 0.8).unwrap();
        assert!((t2 - 0.0788).abs() < 1e-3, "{t2}");
        assert!((t8 - 0.146).abs() < 1e-3, "{t8}");
        let t0 = bipartite_typical_coset_weight(3, 6, 0.0).unwrap();
        assert!(t0 > 0.0 && t0 < t2);
        assert!(typical_coset_weight(|_| AgrValue::Finite(-1.0)).is_err());
    }

    #[test]
    fn tail_bounds() {
        let agr = BipartiteAgr::new(3, 6, 0.2);
        let cert = coset_weight_tail_bound(|l| agr.at(l), 0.07).unwrap();
        assert!(cert.sup.to_f64() < 0.0);
        assert_eq!(coset_weight_tail_bound(|l| agr.at(l), 0.0).unwrap().sup, AgrValue::NegInfinity);
        assert!(matches!(coset_weight_tail_bound(|l| agr.at(l), 0.09), Err(Error::NotCertified { .. })));
    }

    #[test]
    fn concat_symmetric_point() {
        let f = |l: f64, e: f64| BipartiteAgr::new(3, 6, e).at(l);
        let shape = ConcatShape::new(0.5, 0.5, 0.75).unwrap();
        let res = concat_agr(&f, &f, shape, 0.3, 0.0, 41).unwrap();
        // best syndrome split with the weight shared evenly between the halves
        let g = |k2: f64| concat_objective(&f, &f, shape, 0.3, 0.0, 0.3, 0.0, k2);
        let (mut a, mut b) = (0.0, 1.0);
        let start = (0..=200).map(|i| i as f64 / 200.0).max_by(|x, y| g(*x).total_cmp(&g(*y))).unwrap();
        (a, b) = ((start - 0.005f64).max(a), (start + 0.005f64).min(b));
        while b - a > 1e-10 {
            let (c, d) = (a + (b - a) / 3.0, b - (b - a) / 3.0);
            if g(c) < g(d) { a = c } else { b = d }
        }
        let sym = g(0.5 * (a + b));
        assert!((sym - res.value.to_f64()).abs() < 1e-6, "{sym} vs {:?}", res);
        let arg = res.argmax.unwrap();
        assert!((arg[0] - 0.3).abs() < 1e-3 && (arg[1] - 0.3).abs() < 1e-3);
        let edge = concat_objective(&f, &f, shape, 0.3, 0.0, 0.3, 0.0, 0.0);
        assert!(res.value.to_f64() >= edge);
        assert!(ConcatShape::new(0.4, 0.5, 0.5).is_err());
    }

    proptest! {
        #[test]
        fn neg_infinity_exactly_below_bound(ell in 0.0f64..1.0, eta in 0.0f64..=1.0, k in prop::sample::select(vec![2usize, 4, 6])) {
            let lower = eta / k as f64;
            let upper = if k % 2 == 0 { 1.0 - eta / k as f64 } else { 1.0 - (1.0 - eta) / k as f64 };
            prop_assume!((ell - lower).abs() > 1e-9 && ell < upper - 1e-9);
            let v = bipartite_agr(1, k, ell, eta).unwrap();
            prop_assert_eq!(v == AgrValue::NegInfinity, ell < lower);
        }

        #[test]
        fn root_residual(ell in 0.01f64..0.99, eta in 0.0f64..=1.0) {
            let k = 6;
            let lower = eta / k as f64;
            let upper = 1.0 - eta / k as f64;
            prop_assume!(ell > lower + 1e-6 && ell < upper - 1e-6);
            let r = saddle_root(k, eta, ell).unwrap();
            prop_assert!((saddle_ratio(k, eta, r) - ell * k as f64).abs() <= 1e-12 * ell * k as f64);
        }
    }
}
