//! Discovery-time distributions of the hidden object.
//!
//! With `N` objects, lists of length `M`, `r` exploration slots and
//! `K = M − r`, the hidden object is only reachable through exploration, so
//! every presentation draws from a pool of `N − K = N − M + r` candidates.
//!
//! * EGSE-A (`U`): each presentation includes the object independently with
//!   probability `α = C(N−M+r−1, r−1) / C(N−M+r, r) = r / (N−M+r)`, so `U`
//!   is geometric.
//! * EGSE-B (`V`): the pool shrinks by `r` per presentation. The first
//!   passage probability `f_k` is the same `r / (N−K)` at every full
//!   presentation, so `V` is uniform on `1..=⌈(N−K)/r⌉`. When `r ∤ N−K` the
//!   last presentation is partial and carries the leftover mass.
//!
//! Everything is computed in exact rationals and converted to `f64` only at
//! the edge. Closed forms are cross-checked against the literal binomial
//! expressions they simplify.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::exploration::{Algorithm, ExplorationConfig};
use crate::{Error, Rational, Result};

/// Largest exploration pool for which closed forms are cross-checked against
/// literal binomial coefficients.
pub const BINOMIAL_CHECK_LIMIT: u64 = 10_000;

/// `C(n, k)` by multiplicative accumulation; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // exact at every step: the running value is C(n, i + 1)
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn ratio(num: BigUint, den: BigUint) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn int(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn frac(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Mean, second moment and variance of a discovery time.
#[derive(Debug, Clone, PartialEq)]
pub struct Moments {
    pub mean: Rational,
    pub second_moment: Rational,
    pub variance: Rational,
}

/// The `(N, M, r)` triple all discovery-time quantities depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSpace {
    n: u64,
    m: u64,
    r: u64,
}

impl SearchSpace {
    /// Requires `n > m ≥ r ≥ 1`.
    pub fn new(n: u64, m: u64, r: u64) -> Result<Self> {
        if r == 0 || r > m || m >= n {
            return Err(Error::config(format!("need n > m ≥ r ≥ 1, got n={n} m={m} r={r}")));
        }
        Ok(Self { n, m, r })
    }

    pub fn from_config(config: &ExplorationConfig) -> Self {
        Self { n: config.n() as u64, m: config.m() as u64, r: config.r() as u64 }
    }

    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn k(&self) -> u64 {
        self.m - self.r
    }

    /// `N − K = N − M + r`: candidates for the exploration slots.
    pub fn pool(&self) -> u64 {
        self.n - self.k()
    }

    /// Number of EGSE-B presentations: `⌈(N − K) / r⌉`.
    pub fn support_max(&self) -> u64 {
        self.pool().div_ceil(self.r)
    }

    /// Whether `r` divides `N − K`, i.e. every EGSE-B presentation is full.
    pub fn divisible(&self) -> bool {
        self.pool() % self.r == 0
    }

    fn checkable(&self) -> bool {
        self.pool() <= BINOMIAL_CHECK_LIMIT
    }

    /// Probability that one EGSE-A presentation includes the hidden object:
    /// `r / (N − M + r)`.
    pub fn inclusion_prob_a(&self) -> Result<Rational> {
        let alpha = frac(self.r, self.pool());
        if self.checkable() {
            let literal = ratio(binomial(self.pool() - 1, self.r - 1), binomial(self.pool(), self.r));
            if literal != alpha {
                return Err(inconsistent(1, "inclusion probability vs binomial ratio"));
            }
        }
        Ok(alpha)
    }

    /// `P[U = k] = α β^(k−1)`.
    pub fn pmf_u(&self, k: u64) -> Result<Rational> {
        if k == 0 {
            return Err(Error::Domain("discovery time starts at 1".into()));
        }
        let alpha = self.inclusion_prob_a()?;
        let beta = Rational::one() - &alpha;
        let exp = i32::try_from(k - 1).map_err(|_| Error::Domain("k too large for exact pmf".into()))?;
        Ok(alpha * num_traits::pow::Pow::pow(&beta, exp))
    }

    /// `E[U] = C(N−M+r, r) / C(N−M+r−1, r−1) = (N − M + r) / r`.
    pub fn mean_u(&self) -> Result<Rational> {
        let mean = frac(self.pool(), self.r);
        if self.checkable() {
            let literal = ratio(binomial(self.pool(), self.r), binomial(self.pool() - 1, self.r - 1));
            if literal != mean {
                return Err(inconsistent(0, "E[U] vs binomial ratio"));
            }
        }
        Ok(mean)
    }

    /// `V[U] = E[U]² (N − M) / (N − M + r)`.
    pub fn var_u(&self) -> Result<Rational> {
        let mean = self.mean_u()?;
        let var = &mean * &mean * frac(self.n - self.m, self.pool());
        if self.checkable() {
            let big = binomial(self.pool(), self.r);
            let small = binomial(self.pool() - 1, self.r - 1);
            let literal = &mean * &mean * ratio(&big - &small, big);
            if literal != var {
                return Err(inconsistent(0, "V[U] vs binomial form"));
            }
        }
        Ok(var)
    }

    /// First passage probability of EGSE-B at presentation `k`.
    ///
    /// `r / (N − K)` on full presentations; the final presentation of a
    /// non-divisible pool carries `(N − K − r(s − 1)) / (N − K)`. Zero
    /// outside `1..=s`.
    pub fn pmf_v(&self, k: u64) -> Rational {
        let s = self.support_max();
        if k == 0 || k > s {
            return Rational::zero();
        }
        if k < s {
            frac(self.r, self.pool())
        } else {
            frac(self.pool() - self.r * (s - 1), self.pool())
        }
    }

    /// `P[V ≤ t]`, exact.
    pub fn cdf_v(&self, t: u64) -> Rational {
        if t >= self.support_max() {
            Rational::one()
        } else {
            frac(t * self.r, self.pool())
        }
    }

    /// Total EGSE-B mass on `1..=upto`.
    pub fn mass_v(&self, upto: u64) -> Rational {
        (1..=upto.min(self.support_max())).map(|k| self.pmf_v(k)).fold(Rational::zero(), |a, p| a + p)
    }

    /// Pool size before presentation `j` (1-based) of an EGSE-B session.
    fn pool_at(&self, j: u64) -> u64 {
        self.pool().saturating_sub((j - 1) * self.r)
    }

    /// `C(A−1, r−1) / C(A, r)`: the presentation drawing `r` out of a pool of
    /// `A` includes the hidden object. A partial final draw takes the whole
    /// pool and succeeds surely.
    fn success_factor(&self, pool: u64) -> Rational {
        if pool <= self.r {
            Rational::one()
        } else {
            ratio(binomial(pool - 1, self.r - 1), binomial(pool, self.r))
        }
    }

    /// `C(A−1, r) / C(A, r)`: the draw misses the hidden object.
    fn failure_factor(&self, pool: u64) -> Rational {
        ratio(binomial(pool - 1, self.r), binomial(pool, self.r))
    }

    /// Runs the first-passage recurrence in exact arithmetic.
    ///
    /// Starting from `f₁ = C(N−M+r−1, r−1) / C(N−M+r, r)`, each step divides
    /// out the success factor of presentation `j`, multiplies in its failure
    /// factor and then the success factor of presentation `j + 1`. Every
    /// value is checked against [`pmf_v`](Self::pmf_v), full presentations
    /// against the constant `r / (N − K)`, and `f₃` against the direct
    /// three-factor product. Returns `f₁..=f_{k_max}`.
    pub fn verify_recurrence(&self, k_max: u64) -> Result<Vec<Rational>> {
        let s = self.support_max();
        if k_max == 0 || k_max > s {
            return Err(Error::Domain(format!("k_max must lie in 1..={s}")));
        }
        let constant = frac(self.r, self.pool());
        let mut trace = Vec::with_capacity(k_max as usize);
        let mut f = self.success_factor(self.pool_at(1));
        for k in 1..=k_max {
            if k > 1 {
                let here = self.pool_at(k - 1);
                let next = self.pool_at(k);
                f = f / self.success_factor(here) * self.failure_factor(here) * self.success_factor(next);
            }
            let full = self.pool_at(k) >= self.r && (k < s || self.divisible());
            if full && f != constant {
                return Err(inconsistent(k, format!("f_k = {f}, expected {constant}")));
            }
            if f != self.pmf_v(k) {
                return Err(inconsistent(k, format!("recurrence {f} vs pmf {}", self.pmf_v(k))));
            }
            trace.push(f.clone());
        }
        if k_max >= 3 && self.pool_at(3) > self.r {
            let direct = self.f3_direct();
            if direct != trace[2] {
                return Err(inconsistent(3, format!("direct product {direct} vs {}", trace[2])));
            }
        }
        Ok(trace)
    }

    /// `f₃` as the product of miss, miss, hit binomial ratios over pools
    /// `N−M+r`, `N−M` and `N−M−r`.
    fn f3_direct(&self) -> Rational {
        let (n, m, r) = (self.n, self.m, self.r);
        ratio(binomial(n - m + r - 1, r), binomial(n - m + r, r))
            * ratio(binomial(n - m - 1, r), binomial(n - m, r))
            * ratio(binomial(n - m - r - 1, r - 1), binomial(n - m - r, r))
    }

    /// One step of the recurrence with the pool sizes indexed as
    /// `N − K − kr` (presentation `k + 1`) rather than by the pool the
    /// factor's presentation actually saw. `None` where a binomial in a
    /// denominator vanishes.
    pub fn shifted_step_ratio(&self, k: u64) -> Option<Rational> {
        let b = self.pool().checked_sub(k * self.r)?;
        let b_next = b.checked_sub(self.r)?;
        if b == 0 || b_next == 0 {
            return None;
        }
        let r = self.r;
        let dens = [binomial(b - 1, r - 1), binomial(b, r), binomial(b_next, r)];
        if dens.iter().any(Zero::is_zero) {
            return None;
        }
        let [d1, d2, d3] = dens;
        Some(
            ratio(binomial(b, r), d1)
                * ratio(binomial(b - 1, r), d2)
                * ratio(binomial(b_next - 1, r - 1), d3),
        )
    }

    /// `E[V] = (N − M + 2r) / (2r)`. Exact when `r | N − K`.
    pub fn mean_v(&self) -> Rational {
        frac(self.n - self.m + 2 * self.r, 2 * self.r)
    }

    /// `V[V] = ([(N − M + r) / r]² − 1) / 12`. Exact when `r | N − K`.
    pub fn var_v(&self) -> Rational {
        let s = frac(self.pool(), self.r);
        (&s * &s - Rational::one()) / int(12)
    }

    /// `E[V²] = (1 + s)(1 + 2s) / 6` with `s = (N − K) / r`. Exact when
    /// `r | N − K`.
    pub fn second_moment_v(&self) -> Rational {
        let s = frac(self.pool(), self.r);
        (Rational::one() + &s) * (Rational::one() + int(2) * &s) / int(6)
    }

    /// Closed-form moments with `var = E[V²] − E[V]²` checked.
    pub fn closed_form_moments_v(&self) -> Result<Moments> {
        let mean = self.mean_v();
        let second_moment = self.second_moment_v();
        let variance = self.var_v();
        if &second_moment - &mean * &mean != variance {
            return Err(inconsistent(0, "E[V²] − E[V]² ≠ V[V]"));
        }
        Ok(Moments { mean, second_moment, variance })
    }

    /// Moments of the exact (remainder-adjusted) EGSE-B pmf. Equal to the
    /// closed forms when `r | N − K`.
    pub fn exact_moments_v(&self) -> Moments {
        let s = self.support_max();
        let full = s - 1;
        // full presentations 1..=s-1 each carry r / pool
        let sum_k = BigInt::from(full) * BigInt::from(full + 1) / 2;
        let sum_k2 = BigInt::from(full) * BigInt::from(full + 1) * BigInt::from(2 * full + 1) / 6;
        let c = frac(self.r, self.pool());
        let last = self.pmf_v(s);
        let mean = &c * Rational::from_integer(sum_k) + &last * int(s);
        let second_moment = &c * Rational::from_integer(sum_k2) + &last * int(s * s);
        let variance = &second_moment - &mean * &mean;
        Moments { mean, second_moment, variance }
    }

    /// Moments of `U`.
    pub fn moments_u(&self) -> Result<Moments> {
        let mean = self.mean_u()?;
        let variance = self.var_u()?;
        let second_moment = &variance + &mean * &mean;
        Ok(Moments { mean, second_moment, variance })
    }

    /// Probability of discovery within `t` presentations: `1 − β^t` for
    /// EGSE-A, `min(1, t r / (N − K))` for EGSE-B.
    pub fn discovery_within(&self, algorithm: Algorithm, t: u64) -> f64 {
        match algorithm {
            Algorithm::A => {
                let beta = (self.n - self.m) as f64 / self.pool() as f64;
                1.0 - libm::pow(beta, t as f64)
            }
            Algorithm::B => to_f64(&self.cdf_v(t)),
        }
    }

    /// Probability that the hidden object is discovered at all.
    ///
    /// EGSE-A: the geometric series `α Σ β^k = α / (1 − β)`. EGSE-B: the
    /// pmf summed over its support.
    pub fn prob_finite_discovery(&self, algorithm: Algorithm) -> Result<Rational> {
        match algorithm {
            Algorithm::A => {
                let alpha = self.inclusion_prob_a()?;
                let beta = Rational::one() - &alpha;
                Ok(&alpha / (Rational::one() - beta))
            }
            Algorithm::B => Ok(self.mass_v(self.support_max())),
        }
    }

    pub fn distribution(&self, algorithm: Algorithm) -> Result<DiscoveryDistribution> {
        DiscoveryDistribution::new(*self, algorithm)
    }
}

fn inconsistent(k: u64, detail: impl Into<alloc::string::String>) -> Error {
    Error::AnalyticInconsistency { k, detail: detail.into() }
}

/// Law of the hidden object's discovery time under one algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscoveryDistribution {
    pub space: SearchSpace,
    pub algorithm: Algorithm,
    /// EGSE-A per-presentation success probability.
    pub alpha: Rational,
    /// `1 − alpha`.
    pub beta: Rational,
    /// Last support point, `None` for the unbounded EGSE-A law.
    pub support_max: Option<u64>,
    /// EGSE-B constant first-passage probability `r / (N − K)`.
    pub c: Rational,
}

impl DiscoveryDistribution {
    pub fn new(space: SearchSpace, algorithm: Algorithm) -> Result<Self> {
        let alpha = space.inclusion_prob_a()?;
        let beta = Rational::one() - &alpha;
        let support_max = match algorithm {
            Algorithm::A => None,
            Algorithm::B => Some(space.support_max()),
        };
        Ok(Self { space, algorithm, alpha, beta, support_max, c: frac(space.r, space.pool()) })
    }

    pub fn pmf(&self, k: u64) -> Result<Rational> {
        match self.algorithm {
            Algorithm::A => self.space.pmf_u(k),
            Algorithm::B => Ok(self.space.pmf_v(k)),
        }
    }

    /// Exact moments: geometric for A, remainder-adjusted uniform for B.
    pub fn moments(&self) -> Result<Moments> {
        match self.algorithm {
            Algorithm::A => self.space.moments_u(),
            Algorithm::B => Ok(self.space.exact_moments_v()),
        }
    }

    pub fn mean(&self) -> Result<Rational> {
        Ok(self.moments()?.mean)
    }

    pub fn within(&self, t: u64) -> f64 {
        self.space.discovery_within(self.algorithm, t)
    }

    /// Whether the textbook closed forms are exact for this law.
    pub fn closed_form_exact(&self) -> bool {
        self.algorithm == Algorithm::A || self.space.divisible()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::vec;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn space(n: u64, m: u64, r: u64) -> SearchSpace {
        SearchSpace::new(n, m, r).unwrap()
    }

    /// Factorial-based oracle for small binomials.
    fn binomial_by_factorials(n: u64, k: u64) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        let fact = |x: u64| (1..=x).fold(BigUint::one(), |a, i| a * i);
        fact(n) / (fact(k) * fact(n - k))
    }

    #[test]
    fn binomial_matches_factorials() {
        for n in 0..40 {
            for k in 0..=n + 1 {
                assert_eq!(binomial(n, k), binomial_by_factorials(n, k), "C({n},{k})");
            }
        }
        assert_eq!(binomial(7, 1), BigUint::from(7u32));
        assert_eq!(binomial(8, 2), BigUint::from(28u32));
    }

    #[test]
    fn rejects_bad_triples() {
        assert!(SearchSpace::new(10, 10, 2).is_err());
        assert!(SearchSpace::new(10, 4, 0).is_err());
        assert!(SearchSpace::new(10, 4, 5).is_err());
    }

    #[test]
    fn inclusion_probability() {
        assert_eq!(space(10000, 100, 10).inclusion_prob_a().unwrap(), q(1, 991));
        assert_eq!(space(10, 4, 2).inclusion_prob_a().unwrap(), q(1, 4));
        // whole list explores: m / n
        assert_eq!(space(20, 5, 5).inclusion_prob_a().unwrap(), q(5, 20));
    }

    #[test]
    fn geometric_pmf() {
        let s = space(10, 4, 2);
        assert_eq!(s.pmf_u(1).unwrap(), q(1, 4));
        assert_eq!(s.pmf_u(2).unwrap(), q(3, 16));
        assert!(matches!(s.pmf_u(0), Err(Error::Domain(_))));
        for t in 1..12u64 {
            let partial = (1..=t).fold(Rational::zero(), |a, k| a + s.pmf_u(k).unwrap());
            let expected = Rational::one() - num_traits::pow::Pow::pow(&q(3, 4), t as i32);
            assert_eq!(partial, expected);
        }
    }

    #[test]
    fn geometric_moments() {
        assert_eq!(space(10000, 100, 10).mean_u().unwrap(), int(991));
        let s = space(10, 4, 2);
        assert_eq!(s.mean_u().unwrap(), int(4));
        assert_eq!(s.var_u().unwrap(), int(12));
        assert_eq!(space(30, 6, 6).mean_u().unwrap(), int(5));
    }

    #[test]
    fn geometric_moments_by_series() {
        // Oracle: truncated Σ k p(k) and Σ k² p(k) in f64; the tail beyond
        // 2000 terms is below 1e-200 for α = 1/4.
        let s = space(10, 4, 2);
        let (a, b) = (0.25f64, 0.75f64);
        let (mut m1, mut m2) = (0.0, 0.0);
        for k in 1..2000 {
            let p = a * libm::pow(b, (k - 1) as f64);
            m1 += k as f64 * p;
            m2 += (k * k) as f64 * p;
        }
        assert!((m1 - to_f64(&s.mean_u().unwrap())).abs() < 1e-12);
        assert!((m2 - m1 * m1 - to_f64(&s.var_u().unwrap())).abs() < 1e-9);
    }

    #[test]
    fn uniform_pmf() {
        let s = space(10, 4, 2);
        for k in 1..=4 {
            assert_eq!(s.pmf_v(k), q(1, 4));
        }
        assert!(s.pmf_v(0).is_zero());
        assert!(s.pmf_v(5).is_zero());
        let big = space(10000, 100, 10);
        assert_eq!(big.pmf_v(5), q(10, 9910));
        assert_eq!(big.support_max(), 991);
        assert_eq!(big.mass_v(991), Rational::one());
    }

    #[test]
    fn remainder_pmf_sums_to_one() {
        let s = space(10000, 100, 13);
        assert!(!s.divisible());
        assert_eq!(s.support_max(), 763);
        assert_eq!(s.pmf_v(763), q(7, 9913));
        assert_eq!(s.mass_v(763), Rational::one());
        assert!(s.mass_v(762) < Rational::one());
    }

    #[test]
    fn recurrence_small() {
        let trace = space(10, 4, 2).verify_recurrence(4).unwrap();
        assert_eq!(trace, vec![q(1, 4); 4]);
        let trace = space(50, 10, 5).verify_recurrence(8).unwrap();
        assert_eq!(trace, vec![q(1, 9); 8]);
    }

    #[test]
    fn recurrence_base_is_inclusion_probability() {
        let s = space(50, 10, 5);
        assert_eq!(s.success_factor(s.pool()), s.inclusion_prob_a().unwrap());
        assert_eq!(s.verify_recurrence(1).unwrap()[0], q(5, 45));
    }

    #[test]
    fn recurrence_partial_final_batch() {
        let s = space(11, 4, 2); // pool 9, support 5, last point carries 1/9
        let trace = s.verify_recurrence(5).unwrap();
        assert_eq!(trace, vec![q(2, 9), q(2, 9), q(2, 9), q(2, 9), q(1, 9)]);
    }

    #[test]
    fn recurrence_rejects_out_of_support() {
        assert!(matches!(space(10, 4, 2).verify_recurrence(5), Err(Error::Domain(_))));
        assert!(matches!(space(10, 4, 2).verify_recurrence(0), Err(Error::Domain(_))));
    }

    #[test]
    fn f3_product_example() {
        // (7/8)·(5/6)·(... ) pools 8, 6, 4 with r = 2: 6/8 · 4/6 · 2/4 = 1/4
        assert_eq!(space(10, 4, 2).f3_direct(), q(1, 4));
    }

    #[test]
    fn shifted_indexing_telescopes_where_defined() {
        let s = space(50, 10, 5);
        for k in 0..s.support_max() {
            if let Some(step) = s.shifted_step_ratio(k) {
                assert_eq!(step, Rational::one(), "k = {k}");
            }
        }
        // last step of the shifted form reaches an empty pool
        assert!(s.shifted_step_ratio(s.support_max() - 1).is_none());
    }

    #[test]
    fn uniform_moments() {
        let s = space(10000, 100, 10);
        assert_eq!(s.mean_v(), int(496));
        assert_eq!(space(10000, 100, 12).mean_v(), q(827, 2));
        assert_eq!(space(10000, 100, 13).mean_v(), q(9926, 26));
        let small = space(10, 4, 2);
        assert_eq!(small.mean_v(), q(5, 2));
        assert_eq!(small.var_v(), q(5, 4));
        assert_eq!(small.closed_form_moments_v().unwrap().second_moment, q(15, 2));
        assert_eq!(small.exact_moments_v(), small.closed_form_moments_v().unwrap());
    }

    #[test]
    fn uniform_moments_by_enumeration() {
        // Oracle: moments straight from the pmf.
        for (n, m, r) in [(10, 4, 2), (11, 4, 2), (10000, 100, 13), (57, 9, 4)] {
            let s = space(n, m, r);
            let mut m1 = Rational::zero();
            let mut m2 = Rational::zero();
            for k in 1..=s.support_max() {
                m1 += int(k) * s.pmf_v(k);
                m2 += int(k * k) * s.pmf_v(k);
            }
            let exact = s.exact_moments_v();
            assert_eq!(exact.mean, m1);
            assert_eq!(exact.second_moment, m2);
        }
    }

    #[test]
    fn non_divisible_close_to_closed_form() {
        let s = space(10000, 100, 13);
        let exact = to_f64(&s.exact_moments_v().mean);
        let closed = to_f64(&s.mean_v());
        assert!((exact - closed).abs() < 0.01);
        assert_ne!(s.exact_moments_v().mean, s.mean_v());
    }

    #[test]
    fn discovery_within_examples() {
        let s = space(10000, 100, 10);
        assert!((s.discovery_within(Algorithm::B, 750) - 750.0 / 991.0).abs() < 1e-15);
        assert_eq!(s.discovery_within(Algorithm::B, 991), 1.0);
        assert_eq!(s.discovery_within(Algorithm::B, 5000), 1.0);
        assert_eq!(s.discovery_within(Algorithm::B, 0), 0.0);
        assert!((space(10, 4, 2).discovery_within(Algorithm::A, 1) - 0.25).abs() < 1e-15);
        assert!((space(10, 4, 2).discovery_within(Algorithm::A, 3) - (1.0 - 0.421875)).abs() < 1e-15);
    }

    #[test]
    fn finite_discovery_is_sure() {
        for (n, m, r) in [(10, 4, 2), (10000, 100, 13), (1000, 50, 5)] {
            let s = space(n, m, r);
            assert_eq!(s.prob_finite_discovery(Algorithm::A).unwrap(), Rational::one());
            assert_eq!(s.prob_finite_discovery(Algorithm::B).unwrap(), Rational::one());
            assert!(s.mass_v(s.support_max() - 1) < Rational::one());
        }
    }

    #[test]
    fn distribution_summary() {
        let d = space(10, 4, 2).distribution(Algorithm::B).unwrap();
        assert_eq!(&d.alpha + &d.beta, Rational::one());
        assert_eq!(d.support_max, Some(4));
        assert_eq!(d.c, q(1, 4));
        assert!(d.closed_form_exact());
        let a = space(10, 4, 2).distribution(Algorithm::A).unwrap();
        assert_eq!(a.support_max, None);
        assert_eq!(a.mean().unwrap(), int(4));
    }

    proptest! {
        #[test]
        fn closed_forms_match_binomials(n in 3u64..400, m_frac in 0.0f64..1.0, r_frac in 0.0f64..1.0) {
            let m = 1 + ((n - 2) as f64 * m_frac) as u64;
            let r = 1 + ((m - 1) as f64 * r_frac) as u64;
            let s = space(n, m, r);
            // each of these fails loudly on a binomial mismatch
            s.inclusion_prob_a().unwrap();
            s.mean_u().unwrap();
            s.var_u().unwrap();
            s.verify_recurrence(s.support_max()).unwrap();
            prop_assert_eq!(s.mass_v(s.support_max()), Rational::one());
            let cf = s.closed_form_moments_v().unwrap();
            prop_assert_eq!(&cf.second_moment - &cf.mean * &cf.mean, cf.variance.clone());
            if s.divisible() {
                prop_assert_eq!(s.exact_moments_v(), cf);
            }
        }
    }
}
