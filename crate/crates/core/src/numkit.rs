//! Exact and floating combinatorial primitives.
//!
//! Exact values are [`BigRat`]s (always in lowest terms). Floating values that
//! would overflow are evaluated in log space through [`log_gamma`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::fmt;

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms.
pub type BigRat = BigRational;

/// Builds `p/q` as a [`BigRat`].
///
/// # Panics
/// Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> BigRat {
    BigRat::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(p))
}

pub fn to_f64(x: &BigRat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Formats as `p/q`, or `p` for integers.
pub fn rat_string(x: &BigRat) -> String {
    x.to_string()
}

/// Parses `p/q` or `p`.
pub fn parse_rat(s: &str) -> Option<BigRat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRat::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRat::from_integer),
    }
}

/// Numbers the reference-value assembly can run on: exact rationals or `f64`.
pub trait Scalar:
    Clone
    + std::fmt::Debug
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
{
    fn from_rat(x: &BigRat) -> Self;
    fn scalar_zero() -> Self;
    fn as_f64(&self) -> f64;
}

impl Scalar for BigRat {
    fn from_rat(x: &BigRat) -> Self {
        x.clone()
    }
    fn scalar_zero() -> Self {
        <BigRat as Zero>::zero()
    }
    fn as_f64(&self) -> f64 {
        to_f64(self)
    }
}

impl Scalar for f64 {
    fn from_rat(x: &BigRat) -> Self {
        to_f64(x)
    }
    fn scalar_zero() -> Self {
        0.0
    }
    fn as_f64(&self) -> f64 {
        *self
    }
}

/// A half-integer `twice_value / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfInt {
    pub twice_value: i64,
}

impl HalfInt {
    pub const fn from_twice(twice_value: i64) -> Self {
        HalfInt { twice_value }
    }

    pub const fn from_int(v: i64) -> Self {
        HalfInt { twice_value: 2 * v }
    }

    pub fn to_rat(self) -> BigRat {
        rat(self.twice_value, 2)
    }

    pub fn to_f64(self) -> f64 {
        self.twice_value as f64 / 2.0
    }

    pub fn add_int(self, k: i64) -> Self {
        HalfInt {
            twice_value: self.twice_value + 2 * k,
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice_value % 2 == 0 {
            write!(f, "{}", self.twice_value / 2)
        } else {
            write!(f, "{}/2", self.twice_value)
        }
    }
}

/// Rising factorial `(a)_b = a (a+1) ... (a+b-1)`, `(a)_0 = 1`.
pub fn pochhammer(a: &BigRat, b: u32) -> BigRat {
    // Accumulate numerator and denominator separately and reduce once.
    let den = a.denom().clone();
    let mut top = a.numer().clone();
    let mut num = BigInt::one();
    for _ in 0..b {
        num *= &top;
        top += &den;
    }
    let den_pow = num_traits::pow(den, b as usize);
    BigRat::new(num, den_pow)
}

pub fn pochhammer_half(a: HalfInt, b: u32) -> BigRat {
    pochhammer(&a.to_rat(), b)
}

/// `n!` as an integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient for nonnegative arguments as an integer.
pub fn binomial_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial coefficient.
///
/// `C(n,k) = 0` for `k < 0` or `n >= 0, k > n`; for negative `n` it is
/// `(n-k+1)_k / k!`, so `C(-1, 0) = 1`.
pub fn binomial(n: i64, k: i64) -> BigRat {
    if k < 0 {
        return BigRat::zero();
    }
    if n >= 0 {
        return BigRat::from_integer(binomial_int(n as u64, k as u64));
    }
    let num = pochhammer(&int(n - k + 1), k as u32);
    num / BigRat::from_integer(factorial(k as u64))
}

/// Natural log of the Gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("log_gamma needs x > 0, got {x}")));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    Ok(libm::lgamma(x))
}

fn lg(x: f64) -> f64 {
    log_gamma(x).expect("positive argument")
}

/// `ln C(n, k)` for real `0 <= k <= n`.
pub fn ln_binomial(n: f64, k: f64) -> f64 {
    lg(n + 1.0) - lg(k + 1.0) - lg(n - k + 1.0)
}

/// `ln (a)_k` for `a > 0`.
pub fn ln_pochhammer(a: f64, k: u32) -> f64 {
    if k == 0 {
        return 0.0;
    }
    lg(a + k as f64) - lg(a)
}

pub fn ln_factorial(n: u64) -> f64 {
    lg(n as f64 + 1.0)
}

/// Binary entropy in nats.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.ln() };
    term(x) + term(1.0 - x)
}

/// Stirling bounds `(lower, upper)` on `Gamma(x+1)` for `x > 0`.
pub fn stirling_bounds(x: f64) -> (f64, f64) {
    let base = (2.0 * std::f64::consts::PI).sqrt() * x.powf(x + 0.5) * (-x).exp();
    (
        base * (1.0 / (12.0 * x + 1.0)).exp(),
        base * (1.0 / (12.0 * x)).exp(),
    )
}

/// Bounds `(lower, upper)` on `C(n, k)` in terms of the binary entropy, `0 < k < n`.
pub fn binomial_entropy_bounds(n: u64, k: u64) -> (f64, f64) {
    let (nf, kf) = (n as f64, k as f64);
    let core = (nf / (kf * (nf - kf))).sqrt() * (nf * binary_entropy(kf / nf)).exp();
    (
        core / (2.0 * 2f64.sqrt()),
        core / (2.0 * std::f64::consts::PI).sqrt(),
    )
}

/// Gautschi bounds `(lower, upper)` on `Gamma(x) / Gamma(x + 1/2)` for `x > 1/2`.
pub fn gautschi_bounds(x: f64) -> (f64, f64) {
    (1.0 / x.sqrt(), 1.0 / (x - 0.5).sqrt())
}

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
    pub instances: usize,
    pub skipped: usize,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Tally {
    name: &'static str,
    instances: usize,
    skipped: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            instances: 0,
            skipped: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn finish(self) -> IdentityCheck {
        IdentityCheck {
            name: self.name,
            passed: self.counterexample.is_none(),
            instances: self.instances,
            skipped: self.skipped,
            counterexample: self.counterexample,
        }
    }
}

fn random_rat(rng: &mut ChaCha20Rng) -> BigRat {
    let p: i64 = rng.random_range(-12..=24);
    let q: i64 = rng.random_range(1..=6);
    rat(p, q)
}

/// Chu-Vandermonde sum `sum_j (-N)_j (b)_j / ((a)_j j!)`; `None` if a denominator vanishes.
pub fn chu_vandermonde_lhs(a: &BigRat, b: &BigRat, n: u32) -> Option<BigRat> {
    let mut s = BigRat::zero();
    for j in 0..=n {
        let den = pochhammer(a, j);
        if den.is_zero() {
            return None;
        }
        let term = pochhammer(&int(-(n as i64)), j) * pochhammer(b, j)
            / (den * BigRat::from_integer(factorial(j as u64)));
        s += term;
    }
    Some(s)
}

pub fn chu_vandermonde_rhs(a: &BigRat, b: &BigRat, n: u32) -> Option<BigRat> {
    let den = pochhammer(a, n);
    if den.is_zero() {
        return None;
    }
    Some(pochhammer(&(a - b), n) / den)
}

/// Pfaff-Saalschutz sum; `None` if a denominator vanishes.
pub fn pfaff_saalschutz_lhs(a: &BigRat, b: &BigRat, c: &BigRat, n: u32) -> Option<BigRat> {
    let e = BigRat::one() + a + b - c - int(n as i64);
    let mut s = BigRat::zero();
    for j in 0..=n {
        let den = pochhammer(c, j) * pochhammer(&e, j);
        if den.is_zero() {
            return None;
        }
        s += pochhammer(&int(-(n as i64)), j) * pochhammer(a, j) * pochhammer(b, j)
            / (den * BigRat::from_integer(factorial(j as u64)));
    }
    Some(s)
}

pub fn pfaff_saalschutz_rhs(a: &BigRat, b: &BigRat, c: &BigRat, n: u32) -> Option<BigRat> {
    let den = pochhammer(c, n) * pochhammer(&(c - a - b), n);
    if den.is_zero() {
        return None;
    }
    Some(pochhammer(&(c - a), n) * pochhammer(&(c - b), n) / den)
}

/// Relative gap between the two sides of the Legendre duplication formula at `z > 0`.
pub fn duplication_gap(z: f64) -> f64 {
    let lhs = lg(z) + lg(z + 0.5);
    let rhs =
        (1.0 - 2.0 * z) * std::f64::consts::LN_2 + 0.5 * std::f64::consts::PI.ln() + lg(2.0 * z);
    (lhs - rhs).exp_m1().abs()
}

/// Checks the hypergeometric identities used by the closed forms.
///
/// Chu-Vandermonde and Pfaff-Saalschutz are verified exactly on random
/// rational parameters for every `N <= n_max`; instances with a vanishing
/// denominator Pochhammer are skipped and counted. The duplication formulas
/// are checked numerically (Gamma) and exactly (Pochhammer form).
pub fn identity_oracles(n_max: u32) -> IdentityReport {
    identity_oracles_seeded(n_max, 0x5eed_1de7)
}

pub fn identity_oracles_seeded(n_max: u32, seed: u64) -> IdentityReport {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let per_n = 6;

    let mut cv = Tally::new("chu_vandermonde");
    let mut ps = Tally::new("pfaff_saalschutz");
    for n in 0..=n_max {
        for _ in 0..per_n {
            let (a, b) = (random_rat(&mut rng), random_rat(&mut rng));
            match (
                chu_vandermonde_lhs(&a, &b, n),
                chu_vandermonde_rhs(&a, &b, n),
            ) {
                (Some(l), Some(r)) => {
                    cv.record(l == r, || format!("a={a}, b={b}, N={n}: {l} != {r}"))
                }
                _ => cv.skipped += 1,
            }
            let c = random_rat(&mut rng);
            match (
                pfaff_saalschutz_lhs(&a, &b, &c, n),
                pfaff_saalschutz_rhs(&a, &b, &c, n),
            ) {
                (Some(l), Some(r)) => {
                    ps.record(l == r, || format!("A={a}, B={b}, C={c}, N={n}: {l} != {r}"))
                }
                _ => ps.skipped += 1,
            }
        }
    }

    let mut dup = Tally::new("legendre_duplication");
    for i in 0..(4 * n_max.max(1)) {
        let z = 0.5 + rng.random::<f64>() * 40.0 + i as f64 * 1e-3;
        let gap = duplication_gap(z);
        dup.record(gap < 1e-12, || format!("z={z}: relative gap {gap:e}"));
    }

    let mut pdup = Tally::new("pochhammer_duplication");
    for m in 1..=(2 * n_max as i64 + 2) {
        for j in 0..=n_max {
            let lhs = pochhammer(&int(m), 2 * j);
            let rhs = BigRat::from_integer(num_traits::pow(BigInt::from(4), j as usize))
                * pochhammer(&rat(m, 2), j)
                * pochhammer(&rat(m + 1, 2), j);
            pdup.record(lhs == rhs, || format!("m={m}, j={j}"));
        }
    }

    IdentityReport {
        checks: vec![cv.finish(), ps.finish(), dup.finish(), pdup.finish()],
    }
}

/// Sign of `(-1)^k`.
pub fn parity_sign(k: i64) -> BigRat {
    if k.is_even() {
        BigRat::one()
    } else {
        -BigRat::one()
    }
}
