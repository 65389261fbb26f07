//! LXEB reference values, anticoncentration scores and related bounds.
//!
//! Every reference value is `|S_{m,n}| Σ_r Tr[P_{2r} ρ⊗2] Tr[P_{2r} D_{m,n}] / Tr P_{2r}`.
//! The closed forms for Boson Sampling, lossy BS, Scattershot BS and GBS are
//! specializations of that sum; each has an exact path (for `n <= 40`) and a
//! log-space float path.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkit::{
    binomial, factorial, int, ln_binomial, ln_factorial, ln_pochhammer, pochhammer, rat, to_f64,
    BigRat, Scalar,
};
use crate::schur::{
    dim_irrep, outcome_count, trace_p_collision_free, trace_p_uniform, IrrepCoeffs, OccPattern,
};
use crate::states::ProductState;
use crate::swapexp::{swap_table, swap_table_cross, SwapTable};

/// Largest photon number evaluated with exact rationals.
pub const EXACT_N_MAX: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Bs,
    BsLossy,
    Sbs,
    GbsUniform,
    Product,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Bs => "bs",
            Model::BsLossy => "bs-lossy",
            Model::Sbs => "sbs",
            Model::GbsUniform => "gbs-uniform",
            Model::Product => "product",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    GeneralPipeline,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::GeneralPipeline => "general-pipeline",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefReport {
    pub model: Model,
    pub m: u32,
    pub n: u32,
    pub ell: Option<u32>,
    pub d: Option<u32>,
    pub pairs: Option<u32>,
    pub value_exact: Option<BigRat>,
    pub value_float: f64,
    pub ac_score: f64,
    pub method: Method,
}

impl RefReport {
    fn new(model: Model, m: u32, n: u32, method: Method) -> Self {
        RefReport {
            model,
            m,
            n,
            ell: None,
            d: None,
            pairs: None,
            value_exact: None,
            value_float: f64::NAN,
            ac_score: f64::NAN,
            method,
        }
    }

    fn with_value(mut self, exact: Option<BigRat>, float: f64) -> Self {
        self.value_float = exact.as_ref().map_or(float, to_f64);
        self.value_exact = exact;
        self.ac_score = ac_score(&self);
        self
    }
}

/// `ln |S_{m,n}|`.
pub fn ln_outcome_count(m: u32, n: u32) -> f64 {
    ln_binomial((m + n - 1) as f64, n as f64)
}

/// `|S_{m,n}| · value`, and additionally `· |S_{d,n}|` for Scattershot.
///
/// Lossy reports are scored in the post-selected sector `ℓ`.
pub fn ac_score(report: &RefReport) -> f64 {
    let sector = report.ell.unwrap_or(report.n);
    let mut ln = ln_outcome_count(report.m, sector) + report.value_float.ln();
    if report.model == Model::Sbs {
        ln += ln_outcome_count(report.d.unwrap_or(report.m), sector);
    }
    if report.value_float == 0.0 {
        return 0.0;
    }
    ln.exp()
}

/// `|S_{m,n}| Σ_r Tr[P_{2r} ρ⊗2] Tr[P_{2r} D_{m,n}] / Tr P_{2r}` from a swap table.
pub fn lxe_ref_from_swaps<T: Scalar>(swaps: &SwapTable<T>, m: u32) -> T {
    let n = swaps.n();
    let coeffs = IrrepCoeffs::cached(n);
    let mut acc = T::scalar_zero();
    for r in 0..=n / 2 {
        let dim = dim_irrep(m, n, 2 * r);
        if dim.is_zero() {
            continue;
        }
        let weight = trace_p_uniform(m, n, r) / dim;
        if weight.is_zero() {
            continue;
        }
        acc = acc + coeffs.contract(2 * r, swaps.values()) * T::from_rat(&weight);
    }
    acc * T::from_rat(&BigRat::from_integer(outcome_count(m, n)))
}

/// Reference value of an arbitrary product state at sector `n`.
pub fn lxe_ref_general(rho: &ProductState, n: u32) -> Result<RefReport> {
    let m = rho.mode_count() as u32;
    let swaps = swap_table(rho, n)?;
    let value = lxe_ref_from_swaps(&swaps, m);
    Ok(RefReport::new(Model::Product, m, n, Method::GeneralPipeline).with_value(None, value))
}

/// Exact reference value of a Fock input.
pub fn lxe_ref_fock(pattern: &OccPattern) -> RefReport {
    let (m, n) = (pattern.modes() as u32, pattern.total());
    let value = lxe_ref_from_swaps(&crate::schur::fock_swap_table(pattern), m);
    RefReport::new(Model::Product, m, n, Method::GeneralPipeline).with_value(Some(value), f64::NAN)
}

/// Log-sum-exp over `(ln |t|)` of nonnegative terms.
fn log_sum(logs: &[f64]) -> f64 {
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    top + crate::numkit::compensated_sum(logs.iter().map(|l| (l - top).exp())).ln()
}

fn ln_ratio(a: f64, b: f64) -> f64 {
    (a / b).ln()
}

fn check_bs(m: u32, n: u32) -> Result<()> {
    if n < 1 || m < n {
        return Err(Error::range(format!(
            "Boson Sampling needs m >= n >= 1, got m={m}, n={n}"
        )));
    }
    Ok(())
}

fn check_exact(n: u32) -> Result<()> {
    if n > EXACT_N_MAX {
        return Err(Error::range(format!(
            "exact evaluation is limited to n <= {EXACT_N_MAX}, got n={n}"
        )));
    }
    Ok(())
}

/// Collision-free Boson Sampling closed form, exact.
pub fn bs_exact(m: u32, n: u32) -> BigRat {
    let (mi, ni) = (m as i64, n as i64);
    let mut sum = BigRat::zero();
    for r in 0..=ni / 2 {
        sum += rat(2 * ni - 4 * r + 1, 2 * ni - 2 * r + 1) * binomial(2 * r, r)
            / (BigRat::from_integer(num_traits::pow(num_bigint::BigInt::from(16), r as usize))
                * binomial(2 * ni - 2 * r, ni - r)
                * pochhammer(&rat(mi, 2), r as u32)
                * pochhammer(&rat(mi + 1, 2), (ni - r) as u32));
    }
    BigRat::from_integer(
        num_traits::pow(num_bigint::BigInt::from(2), n as usize) * factorial(n as u64),
    ) * sum
}

/// `ln` of the collision-free Boson Sampling closed form.
pub fn bs_ln(m: u32, n: u32) -> f64 {
    let (mf, nf) = (m as f64, n as f64);
    let logs: Vec<f64> = (0..=n / 2)
        .map(|r| {
            let rf = r as f64;
            ln_ratio(2.0 * nf - 4.0 * rf + 1.0, 2.0 * nf - 2.0 * rf + 1.0)
                - 4.0 * rf * std::f64::consts::LN_2
                + ln_binomial(2.0 * rf, rf)
                - ln_binomial(2.0 * nf - 2.0 * rf, nf - rf)
                - ln_pochhammer(mf / 2.0, r)
                - ln_pochhammer((mf + 1.0) / 2.0, n - r)
        })
        .collect();
    nf * std::f64::consts::LN_2 + ln_factorial(n as u64) + log_sum(&logs)
}

/// Collision-free Boson Sampling reference value.
pub fn lxe_ref_bs(m: u32, n: u32, exact: bool) -> Result<RefReport> {
    check_bs(m, n)?;
    let report = RefReport::new(Model::Bs, m, n, Method::ClosedForm);
    if exact {
        check_exact(n)?;
        return Ok(report.with_value(Some(bs_exact(m, n)), f64::NAN));
    }
    Ok(report.with_value(None, bs_ln(m, n).exp()))
}

/// `AC(m, n)` for collision-free Boson Sampling (float path).
pub fn ac_bs(m: u32, n: u32) -> Result<f64> {
    check_bs(m, n)?;
    Ok((ln_outcome_count(m, n) + bs_ln(m, n)).exp())
}

/// Swap table of the `ℓ`-photon sector of a lossy collision-free `n`-photon input.
pub fn lossy_fock_swaps(n: u32, ell: u32) -> SwapTable<BigRat> {
    SwapTable::new(
        ell,
        (0..=ell)
            .map(|q| binomial(n as i64, q as i64).recip())
            .collect(),
    )
}

/// Lossy collision-free Boson Sampling at post-selected sector `ℓ`.
pub fn lxe_ref_bs_lossy(m: u32, n: u32, ell: u32) -> Result<RefReport> {
    if ell > n || n > m {
        return Err(Error::range(format!(
            "lossy Boson Sampling needs 0 <= ell <= n <= m, got ell={ell}, n={n}, m={m}"
        )));
    }
    check_exact(n)?;
    let value = lxe_ref_from_swaps(&lossy_fock_swaps(n, ell), m);
    let method = if ell == n {
        Method::ClosedForm
    } else {
        Method::GeneralPipeline
    };
    let mut report = RefReport::new(Model::BsLossy, m, n, method);
    report.ell = Some(ell);
    Ok(report.with_value(Some(value), f64::NAN))
}

/// Closed-form lossy display, including the `|S_{m,ℓ}|` prefactor; reliable at `ℓ = n`.
pub fn lossy_bs_display(m: u32, n: u32, ell: u32) -> Option<BigRat> {
    if m < 2 || ell > n {
        return None;
    }
    let (mi, ni, li) = (m as i64, n as i64, ell as i64);
    let mut sum = BigRat::zero();
    for r in 0..=li / 2 {
        let den = binomial(2 * ni + mi - 2 * r - 1, mi - 1) * binomial(mi - 2 + 2 * r, mi - 2);
        sum += rat(2 * li - 4 * r + 1, 2 * li - 2 * r + 1) / den * binomial(ni, r)
            / (BigRat::from_integer(num_traits::pow(num_bigint::BigInt::from(4), r as usize))
                * binomial(2 * ni - 2 * r, ni - r))
            * binomial(li - r, r)
            / binomial(2 * li - 2 * r, li)
            * pochhammer(&int(mi + li), (li - 2 * r) as u32)
            * pochhammer(&rat(mi - 1, 2), r as u32)
            / pochhammer(&rat(mi + 1, 2), (li - r) as u32);
    }
    let pow2 = BigRat::from_integer(num_traits::pow(num_bigint::BigInt::from(2), n as usize));
    Some(BigRat::from_integer(outcome_count(m, ell)) * pow2 * sum)
}

fn check_d(m: u32, d: u32) -> Result<()> {
    if d < 1 || d > m {
        return Err(Error::range(format!("need 1 <= d <= m, got d={d}, m={m}")));
    }
    Ok(())
}

/// Scattershot closed form (`d` heralded pairs), exact.
pub fn sbs_exact(m: u32, n: u32, d: u32) -> BigRat {
    let (mi, ni, di) = (m as i64, n as i64, d as i64);
    let mut sum = BigRat::zero();
    for r in 0..=ni / 2 {
        let top = pochhammer(&rat(di, 2), (ni - r) as u32) * pochhammer(&rat(di - 1, 2), r as u32);
        if top.is_zero() {
            continue;
        }
        sum += rat(2 * ni - 4 * r + 1, 2 * ni - 2 * r + 1) * binomial(2 * r, r) * top
            / (BigRat::from_integer(num_traits::pow(num_bigint::BigInt::from(16), r as usize))
                * binomial(2 * ni - 2 * r, ni - r)
                * pochhammer(&rat(mi, 2), r as u32)
                * pochhammer(&rat(mi + 1, 2), (ni - r) as u32));
    }
    let sd = binomial(di + ni - 1, ni);
    BigRat::from_integer(num_traits::pow(num_bigint::BigInt::from(4), n as usize)) / (&sd * &sd)
        * sum
}

/// Scattershot value assembled from the uniform projector overlaps.
pub fn sbs_assembly(m: u32, n: u32, d: u32) -> BigRat {
    let mut sum = BigRat::zero();
    for r in 0..=n / 2 {
        let dim = dim_irrep(m, n, 2 * r);
        if dim.is_zero() {
            continue;
        }
        sum += trace_p_uniform(m, n, r) * trace_p_uniform(d, n, r) / dim;
    }
    BigRat::new(outcome_count(m, n), outcome_count(d, n)) * sum
}

/// `ln` of the Scattershot closed form.
pub fn sbs_ln(m: u32, n: u32, d: u32) -> f64 {
    let (mf, nf, df) = (m as f64, n as f64, d as f64);
    let logs: Vec<f64> = (0..=n / 2)
        .filter(|&r| !(d == 1 && r > 0))
        .map(|r| {
            let rf = r as f64;
            let dm1 = if r == 0 {
                0.0
            } else {
                ln_pochhammer((df - 1.0) / 2.0, r)
            };
            ln_ratio(2.0 * nf - 4.0 * rf + 1.0, 2.0 * nf - 2.0 * rf + 1.0)
                - 4.0 * rf * std::f64::consts::LN_2
                + ln_binomial(2.0 * rf, rf)
                - ln_binomial(2.0 * nf - 2.0 * rf, nf - rf)
                + ln_pochhammer(df / 2.0, n - r)
                + dm1
                - ln_pochhammer(mf / 2.0, r)
                - ln_pochhammer((mf + 1.0) / 2.0, n - r)
        })
        .collect();
    2.0 * nf * std::f64::consts::LN_2 - 2.0 * ln_outcome_count(d, n) + log_sum(&logs)
}

/// Scattershot Boson Sampling with `d` heralded two-mode squeezers.
pub fn lxe_ref_sbs(m: u32, n: u32, d: u32) -> Result<RefReport> {
    check_d(m, d)?;
    let mut report = RefReport::new(Model::Sbs, m, n, Method::ClosedForm);
    report.d = Some(d);
    if n <= EXACT_N_MAX {
        Ok(report.with_value(Some(sbs_exact(m, n, d)), f64::NAN))
    } else {
        Ok(report.with_value(None, sbs_ln(m, n, d).exp()))
    }
}

/// `AC_SBS(m, n, d) = |S_{m,n}| |S_{d,n}| LXE`.
pub fn ac_sbs(m: u32, n: u32, d: u32) -> Result<f64> {
    check_d(m, d)?;
    Ok((ln_outcome_count(m, n) + ln_outcome_count(d, n) + sbs_ln(m, n, d)).exp())
}

/// Uniform GBS closed form (`d` squeezed modes, `n = 2N`), exact.
pub fn gbs_exact(m: u32, pairs: u32, d: u32) -> BigRat {
    let (mi, ni, di) = (m as i64, pairs as i64, d as i64);
    let mut sum = BigRat::zero();
    for j in 0..=ni {
        let top = pochhammer(&rat(di - 1, 2), j as u32);
        if top.is_zero() {
            continue;
        }
        let c = binomial(2 * ni - 2 * j, ni - j);
        sum += rat(4 * ni - 4 * j + 1, 4 * ni - 2 * j + 1)
            * binomial(2 * j, j)
            * &c
            * &c
            * top
            * pochhammer(&(rat(di, 2) + int(ni)), (ni - j) as u32)
            / (binomial(4 * ni - 2 * j, 2 * ni - j)
                * pochhammer(&rat(di, 2), pairs)
                * pochhammer(&rat(mi, 2), j as u32)
                * pochhammer(&rat(mi + 1, 2), (2 * ni - j) as u32));
    }
    let f = BigRat::from_integer(factorial(pairs as u64));
    &f * &f * sum
}

/// `ln` of the uniform GBS closed form.
pub fn gbs_ln(m: u32, pairs: u32, d: u32) -> f64 {
    let (mf, nf, df) = (m as f64, pairs as f64, d as f64);
    let logs: Vec<f64> = (0..=pairs)
        .filter(|&j| !(d == 1 && j > 0))
        .map(|j| {
            let jf = j as f64;
            let dm1 = if j == 0 {
                0.0
            } else {
                ln_pochhammer((df - 1.0) / 2.0, j)
            };
            ln_ratio(4.0 * nf - 4.0 * jf + 1.0, 4.0 * nf - 2.0 * jf + 1.0)
                + ln_binomial(2.0 * jf, jf)
                + 2.0 * ln_binomial(2.0 * nf - 2.0 * jf, nf - jf)
                + dm1
                + ln_pochhammer(df / 2.0 + nf, pairs - j)
                - ln_binomial(4.0 * nf - 2.0 * jf, 2.0 * nf - jf)
                - ln_pochhammer(df / 2.0, pairs)
                - ln_pochhammer(mf / 2.0, j)
                - ln_pochhammer((mf + 1.0) / 2.0, 2 * pairs - j)
        })
        .collect();
    2.0 * ln_factorial(pairs as u64) + log_sum(&logs)
}

/// Gaussian Boson Sampling with `d` identical squeezers and `m - d` vacua, sector `n = 2 pairs`.
pub fn lxe_ref_gbs_uniform(m: u32, pairs: u32, d: u32) -> Result<RefReport> {
    check_d(m, d)?;
    let n = 2 * pairs;
    let mut report = RefReport::new(Model::GbsUniform, m, n, Method::ClosedForm);
    report.d = Some(d);
    report.pairs = Some(pairs);
    if n <= EXACT_N_MAX {
        Ok(report.with_value(Some(gbs_exact(m, pairs, d)), f64::NAN))
    } else {
        Ok(report.with_value(None, gbs_ln(m, pairs, d).exp()))
    }
}

/// `AC_GBS(m, n, d) = |S_{m,n}| LXE` for even `n`.
pub fn ac_gbs(m: u32, n: u32, d: u32) -> Result<f64> {
    check_d(m, d)?;
    if n % 2 == 1 {
        return Err(Error::range(format!(
            "GBS populates only even photon numbers, got n={n}"
        )));
    }
    Ok((ln_outcome_count(m, n) + gbs_ln(m, n / 2, d)).exp())
}

/// `n! C(n+m-1, n) / ((m+1)/2)_n`: the single-source AC value shared by SBS and GBS.
pub fn ac_single_source(m: u32, n: u32) -> BigRat {
    BigRat::from_integer(factorial(n as u64) * outcome_count(m, n))
        / pochhammer(&rat(m as i64 + 1, 2), n)
}

/// The printed single-squeezer GBS display read literally as `C(m, n) / (m/2)_n`.
pub fn ac_gbs_single_source_display(m: u32, n: u32) -> BigRat {
    binomial(m as i64, n as i64) / pochhammer(&rat(m as i64, 2), n)
}

/// `19.1 (m/n + 1)`.
pub fn ac_general_bound(m: u32, n: u32) -> f64 {
    19.1 * (m as f64 / n as f64 + 1.0)
}

/// Empirical saturated-regime envelope `1 + 1.285 m/n`.
pub fn ac_envelope(m: u32, n: u32) -> f64 {
    1.0 + 1.285 * m as f64 / n as f64
}

/// The constant `8√(3e)/√(2π) + e^{3/2}/√π (3/2 + √π) + e√3/(2√2)` behind the 19.1 bound.
pub fn bound_constant() -> f64 {
    use std::f64::consts::{E, PI};
    8.0 * (3.0 * E).sqrt() / (2.0 * PI).sqrt()
        + E.powf(1.5) / PI.sqrt() * (1.5 + PI.sqrt())
        + E * 3f64.sqrt() / (2.0 * 2f64.sqrt())
}

/// Limit `1 + α` of `AC(αn, n)`.
pub fn ac_asymptote(alpha: f64) -> f64 {
    1.0 + alpha
}

/// Bracket on `AC_SBS(m, n, m)`, defined for `m >= 3`, `n >= 12`.
pub fn sbs_ac_bracket(m: u32, n: u32) -> Option<(f64, f64)> {
    if m < 3 || n < 12 {
        return None;
    }
    let (mf, nf) = (m as f64, n as f64);
    let lo = 2f64.sqrt() * nf * (mf - 1.0)
        / (24.0 * ((3.0 * mf + 2.0 * nf) * (2.0 * mf + 3.0 * nf)).sqrt());
    let hi = 3.0 * (mf - 1.0) / 4.0 * (2.0 * std::f64::consts::PI / (mf - 2.0)).sqrt()
        + 3.0 * (mf - 1.0) * (nf / mf).sqrt();
    Some((lo, hi))
}

/// Bracket on `AC_GBS(m, n, m)`, defined for `m >= 2`.
pub fn gbs_ac_bracket(m: u32, n: u32) -> Option<(f64, f64)> {
    if m < 2 {
        return None;
    }
    let (mf, nf) = (m as f64, n as f64);
    let pi = std::f64::consts::PI;
    let lo = (pi * nf / 2.0).sqrt() * (mf - 1.0) / (mf * (mf + nf - 1.0)).sqrt();
    let hi = (pi * (nf + 2.0) * (mf + nf) / (2.0 * (mf - 1.0))).sqrt();
    Some((lo, hi))
}

/// `A_n = E|per U|⁴ / (E|per U|²)²` for `U` Haar on `U(n)`.
pub fn hunter_jones_ratio(n: u32) -> Result<BigRat> {
    if n < 1 {
        return Err(Error::range("Hunter-Jones ratio needs n >= 1"));
    }
    let mut sum = BigRat::zero();
    for r in 0..=n / 2 {
        let p = trace_p_collision_free(n, r);
        sum += &p * &p / dim_irrep(n, n, 2 * r);
    }
    let s = BigRat::from_integer(outcome_count(n, n));
    Ok(&s * &s * sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertBound {
    /// Lower bound on the sample count, in units of the constant `c₂`.
    pub value: f64,
    pub bracket: f64,
    pub bracket_nonpositive: bool,
}

/// Sample-count lower bound for certifying against an `ε`-far adversary.
pub fn certification_bound(
    outcome_count: f64,
    ac: f64,
    epsilon: f64,
    delta: f64,
) -> Result<CertBound> {
    if !(outcome_count > 0.0 && ac > 0.0 && epsilon > 0.0 && delta > 0.0) {
        return Err(Error::Domain(
            "certification bound needs positive arguments".into(),
        ));
    }
    if !(epsilon < 0.5 && delta < 1.0) {
        return Err(Error::Domain(format!(
            "need epsilon < 1/2 and delta < 1, got {epsilon}, {delta}"
        )));
    }
    let bracket = 1.0 - 2.0 * epsilon - ac / (delta.sqrt() * outcome_count.sqrt());
    if bracket <= 0.0 {
        return Ok(CertBound {
            value: 0.0,
            bracket,
            bracket_nonpositive: true,
        });
    }
    let lead = delta.powf(0.25) * outcome_count.powf(0.25) / (epsilon * epsilon * ac.sqrt());
    Ok(CertBound {
        value: lead * bracket.powf(1.5),
        bracket,
        bracket_nonpositive: false,
    })
}

/// One point of the lossy-GBS fidelity curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LossyGbsPoint {
    pub m: u32,
    pub n: u32,
    pub r: f64,
    pub eta: f64,
    pub ref_ideal: f64,
    pub ref_lossy: f64,
    pub cross: f64,
    pub fidelity: f64,
}

/// Haar-averaged LXEB fidelity of lossy samples scored against the ideal state.
///
/// All `m` modes carry squeezing `r`; the lossy state applies transmissivity
/// `eta` to every mode. Both are restricted to sector `n`.
pub fn lossy_gbs_point(m: u32, n: u32, r: f64, eta: f64) -> Result<LossyGbsPoint> {
    use crate::states::ModeSpec;
    let ideal = ProductState::new(vec![ModeSpec::Squeezed(r).build(n, None)?; m as usize])?;
    let lossy = ProductState::new(vec![ModeSpec::Squeezed(r).build(n, Some(eta))?; m as usize])?;
    let ref_ideal = lxe_ref_from_swaps(&swap_table(&ideal, n)?, m);
    let ref_lossy = lxe_ref_from_swaps(&swap_table(&lossy, n)?, m);
    let cross = lxe_ref_from_swaps(&swap_table_cross(&ideal, &lossy, n)?, m);
    let s = ln_outcome_count(m, n).exp();
    let fidelity = (s * cross - 1.0) / (s * ref_ideal - 1.0);
    Ok(LossyGbsPoint {
        m,
        n,
        r,
        eta,
        ref_ideal,
        ref_lossy,
        cross,
        fidelity,
    })
}

/// `Σ_{n ∈ S_{m,n}} E_U[p(n)²]` recomputed outcome by outcome; equals the reference value.
pub fn summed_second_moments(swaps: &SwapTable<BigRat>, m: u32) -> Result<BigRat> {
    let mut acc = BigRat::zero();
    for out in crate::schur::fock_basis(m as usize, swaps.n()) {
        acc += crate::schur::second_moment_outcome(swaps, m, &out)?;
    }
    Ok(acc)
}

/// `1` as a [`BigRat`]; convenience for vacuum-sector comparisons.
pub fn one() -> BigRat {
    BigRat::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bs_examples() {
        assert_eq!(
            lxe_ref_bs(2, 2, true).unwrap().value_exact.unwrap(),
            rat(7, 15)
        );
        for m in 1..=9 {
            assert_eq!(bs_exact(m, 1), rat(2, m as i64 + 1));
        }
        let r = lxe_ref_bs(12, 6, true).unwrap();
        let f = lxe_ref_bs(12, 6, false).unwrap();
        assert!(((r.value_float - f.value_float) / r.value_float).abs() < 1e-12);
        assert!(lxe_ref_bs(2, 3, false).is_err());
        assert!(lxe_ref_bs(60, 41, true).is_err());
    }

    #[test]
    fn ac_bs_examples() {
        assert!((ac_bs(2, 2).unwrap() - 1.4).abs() < 1e-13);
        for m in 1..=10 {
            let want = 2.0 * m as f64 / (m as f64 + 1.0);
            assert!((ac_bs(m, 1).unwrap() - want).abs() < 1e-13);
        }
        let big = ac_bs(200, 100).unwrap();
        assert!(big > 1.0 && big <= 19.1 * 3.0);
    }

    #[test]
    fn lossy_examples() {
        assert_eq!(
            lxe_ref_bs_lossy(6, 3, 3).unwrap().value_exact.unwrap(),
            bs_exact(6, 3)
        );
        for m in 3..=7 {
            assert_eq!(
                lxe_ref_bs_lossy(m, 3, 0).unwrap().value_exact.unwrap(),
                int(1)
            );
        }
        assert_eq!(
            lxe_ref_bs_lossy(6, 3, 2).unwrap().value_exact.unwrap(),
            rat(38, 567)
        );
        assert_eq!(lossy_bs_display(6, 3, 3).unwrap(), bs_exact(6, 3));
        assert!(lxe_ref_bs_lossy(6, 3, 4).is_err());
    }

    #[test]
    fn sbs_examples() {
        assert_eq!(sbs_exact(4, 2, 4), sbs_assembly(4, 2, 4));
        assert_eq!(sbs_exact(4, 2, 4), rat(71, 3500));
        let ac = BigRat::from_integer(outcome_count(4, 2)) * sbs_exact(4, 2, 1);
        assert_eq!(ac, ac_single_source(4, 2));
        assert_eq!(ac, rat(16, 7));
    }

    #[test]
    fn gbs_examples() {
        assert_eq!(gbs_exact(2, 1, 2), rat(7, 15));
        for m in 1..=5 {
            for d in 1..=m {
                assert_eq!(gbs_exact(m, 0, d), int(1));
            }
        }
        let ac = BigRat::from_integer(outcome_count(4, 4)) * gbs_exact(4, 2, 1);
        assert_eq!(ac, ac_single_source(4, 4));
        assert_eq!(ac, rat(128, 33));
    }

    #[test]
    fn float_paths_match_exact() {
        for (m, n, d) in [(4, 2, 4), (8, 6, 3), (5, 5, 1), (12, 10, 12)] {
            let e = to_f64(&sbs_exact(m, n, d));
            assert!((sbs_ln(m, n, d).exp() / e - 1.0).abs() < 1e-12);
        }
        for (m, p, d) in [(2, 1, 2), (6, 3, 1), (8, 4, 8), (12, 6, 5)] {
            let e = to_f64(&gbs_exact(m, p, d));
            assert!((gbs_ln(m, p, d).exp() / e - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn asymptote_and_constant() {
        assert_eq!(ac_asymptote(2.0), 3.0);
        assert_eq!(ac_asymptote(0.0), 1.0);
        assert!((bound_constant() - 19.053050).abs() < 1e-6);
        let far = (ac_bs(320, 160).unwrap() - 3.0).abs();
        let near = (ac_bs(40, 20).unwrap() - 3.0).abs();
        assert!(far < near);
    }

    #[test]
    fn hunter_jones_examples() {
        assert_eq!(hunter_jones_ratio(1).unwrap(), int(1));
        assert_eq!(hunter_jones_ratio(2).unwrap(), rat(9, 5));
        assert_eq!(hunter_jones_ratio(3).unwrap(), rat(40, 21));
        let gap = |n| (to_f64(&hunter_jones_ratio(n).unwrap()) - 2.0).abs();
        assert!(gap(40) < gap(20) && gap(20) < gap(10));
    }

    #[test]
    fn certification_examples() {
        let nonpos = certification_bound(10.0, 50.0, 0.1, 0.1).unwrap();
        assert!(nonpos.bracket_nonpositive && nonpos.value == 0.0);
        let e = to_f64(&BigRat::from_integer(outcome_count(15, 15)));
        let ac = ac_bs(30, 15).unwrap();
        let b = certification_bound(e, ac, 0.1, 0.1).unwrap();
        assert!(b.value.is_finite() && b.value > 0.0);
        let big = certification_bound(1e30, 2.0, 0.01, 0.5).unwrap();
        let bigger = certification_bound(2e30, 2.0, 0.01, 0.5).unwrap();
        assert!((bigger.value / big.value / 2f64.powf(0.25) - 1.0).abs() < 0.05);
    }
}
