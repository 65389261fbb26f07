//! Projectors onto the two-row irreps inside `Sym^n ⊗ Sym^n`.
//!
//! `P_k = Σ_q c_{k,q} S_q`, where `S_q` is the bosonic swap operator that
//! exchanges `q` particles between the two copies. Everything here is exact
//! except [`TwoCopyOperator`], which holds explicit floating matrices for
//! small Fock spaces and serves as a brute-force oracle.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkit::{
    binomial, binomial_int, factorial, int, parity_sign, pochhammer, rat, to_f64, BigRat, Scalar,
};
use crate::swapexp::SwapTable;

/// Largest two-copy dimension `|S_{m,n}|²` the matrix oracle will build.
pub const MATRIX_GUARD: usize = 10_000;

/// Occupation vector: photons per mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OccPattern {
    counts: Vec<u32>,
}

impl OccPattern {
    pub fn new(counts: Vec<u32>) -> Self {
        OccPattern { counts }
    }

    /// `(1, ..., 1, 0, ..., 0)` with `n` ones in `m` modes.
    pub fn collision_free(m: usize, n: usize) -> Result<Self> {
        if n > m {
            return Err(Error::range(format!(
                "collision-free input needs n <= m, got n={n}, m={m}"
            )));
        }
        let mut counts = vec![0; m];
        counts[..n].iter_mut().for_each(|c| *c = 1);
        Ok(OccPattern { counts })
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn modes(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// `Π n_i!`
    pub fn factorial_product(&self) -> BigInt {
        self.counts
            .iter()
            .fold(BigInt::one(), |acc, &c| acc * factorial(c as u64))
    }

    pub fn is_collision_free(&self) -> bool {
        self.counts.iter().all(|&c| c <= 1)
    }
}

impl std::fmt::Display for OccPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `|S_{m,n}| = C(m+n-1, n)`.
pub fn outcome_count(m: u32, n: u32) -> BigInt {
    if m == 0 {
        return if n == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    binomial_int((m + n - 1) as u64, n as u64)
}

pub fn outcome_count_f64(m: u32, n: u32) -> f64 {
    if m == 0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    crate::numkit::ln_binomial((m + n - 1) as f64, n as f64).exp()
}

/// All occupation vectors of `n` photons in `m` modes, colexicographic order.
pub fn fock_basis(m: usize, n: u32) -> Vec<OccPattern> {
    let mut out = Vec::new();
    if m == 0 {
        if n == 0 {
            out.push(OccPattern::new(Vec::new()));
        }
        return out;
    }
    let mut cur = vec![0u32; m];
    colex_fill(&mut cur, m, n, &mut out);
    out
}

fn colex_fill(cur: &mut [u32], len: usize, remaining: u32, out: &mut Vec<OccPattern>) {
    if len == 1 {
        cur[0] = remaining;
        out.push(OccPattern::new(cur.to_vec()));
        return;
    }
    for last in 0..=remaining {
        cur[len - 1] = last;
        colex_fill(cur, len - 1, remaining - last, out);
    }
    cur[len - 1] = 0;
}

/// Vectors `v <= bound` (componentwise) with `|v| = total`.
pub fn sub_patterns(bound: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn rec(bound: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == bound.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest: u32 = bound[i + 1..].iter().sum();
        let lo = left.saturating_sub(rest);
        for v in lo..=bound[i].min(left) {
            cur.push(v);
            rec(bound, i + 1, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(
        bound,
        0,
        total,
        &mut Vec::with_capacity(bound.len()),
        &mut out,
    );
    out
}

/// The coefficients `c_{k,q}` of `P_k = Σ_q c_{k,q} S_q` for one photon number.
#[derive(Debug, Clone, PartialEq)]
pub struct IrrepCoeffs {
    n: u32,
    table: Vec<BigRat>,
    floats: Vec<f64>,
}

fn irrep_cache() -> &'static RwLock<HashMap<u32, Arc<IrrepCoeffs>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<IrrepCoeffs>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

impl IrrepCoeffs {
    /// Computes the table from scratch.
    pub fn compute(n: u32) -> Self {
        let size = (n + 1) as usize;
        let mut table = Vec::with_capacity(size * size);
        for k in 0..=n {
            for q in 0..=n {
                table.push(c_coeff_direct(n, k, q));
            }
        }
        let floats = table.iter().map(to_f64).collect();
        IrrepCoeffs { n, table, floats }
    }

    /// Shared table for `n`, computed once.
    pub fn cached(n: u32) -> Arc<Self> {
        if let Some(hit) = irrep_cache()
            .read()
            .expect("coefficient cache poisoned")
            .get(&n)
        {
            return hit.clone();
        }
        let fresh = Arc::new(IrrepCoeffs::compute(n));
        irrep_cache()
            .write()
            .expect("coefficient cache poisoned")
            .entry(n)
            .or_insert(fresh)
            .clone()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn get(&self, k: u32, q: u32) -> &BigRat {
        &self.table[(k * (self.n + 1) + q) as usize]
    }

    pub fn get_f64(&self, k: u32, q: u32) -> f64 {
        self.floats[(k * (self.n + 1) + q) as usize]
    }

    /// Row `k` as a slice over `q`.
    pub fn row(&self, k: u32) -> &[BigRat] {
        let w = (self.n + 1) as usize;
        &self.table[k as usize * w..(k as usize + 1) * w]
    }

    /// Replaces one entry; used to check that the oracle suites detect corruption.
    pub fn perturbed(&self, k: u32, q: u32, delta: &BigRat) -> Self {
        let mut out = self.clone();
        let idx = (k * (self.n + 1) + q) as usize;
        out.table[idx] = &out.table[idx] + delta;
        out.floats[idx] = to_f64(&out.table[idx]);
        out
    }

    /// `Σ_q c_{k,q} x_q`.
    pub fn contract<T: Scalar>(&self, k: u32, values: &[T]) -> T {
        let mut acc = T::scalar_zero();
        for (q, v) in values.iter().enumerate() {
            let c = self.get(k, q as u32);
            if !c.is_zero() {
                acc = acc + T::from_rat(c) * v.clone();
            }
        }
        acc
    }
}

fn c_coeff_direct(n: u32, k: u32, q: u32) -> BigRat {
    let (n, k, q) = (n as i64, k as i64, q as i64);
    let lo = (k - q).max(0);
    let hi = k.min(n - q);
    let mut sum = BigRat::zero();
    for l in lo..=hi {
        sum += parity_sign(k - l) * binomial(k, l) * binomial(n - k, l + q - k)
            / binomial(2 * n - k, n - l);
    }
    rat(2 * n - 2 * k + 1, 2 * n - k + 1) * binomial(n, k) * binomial(n, q) * sum
}

/// `c_{k,q}` for `0 <= k, q <= n`.
pub fn c_coeff(n: u32, k: u32, q: u32) -> Result<BigRat> {
    if k > n || q > n {
        return Err(Error::range(format!(
            "c_coeff needs 0 <= k, q <= n; got n={n}, k={k}, q={q}"
        )));
    }
    Ok(IrrepCoeffs::cached(n).get(k, q).clone())
}

/// `Tr P_k`, the dimension of the irrep `(2n-k, k)` of `U(m)`.
///
/// For `m = 1` only `k = 0` survives.
pub fn dim_irrep(m: u32, n: u32, k: u32) -> BigRat {
    if m == 0 || k > n {
        return BigRat::zero();
    }
    if m == 1 {
        return if k == 0 {
            BigRat::one()
        } else {
            BigRat::zero()
        };
    }
    let (m, n, k) = (m as i64, n as i64, k as i64);
    rat(2 * n - 2 * k + 1, 2 * n - k + 1)
        * binomial(2 * n + m - k - 1, m - 1)
        * binomial(m - 2 + k, m - 2)
}

/// `Tr[S_q D_{m,n}]`: the swap expectation averaged over all outcomes.
pub fn trace_s_uniform(m: u32, n: u32, q: u32) -> BigRat {
    let a = rat(m as i64 + 1, 2);
    pochhammer(&a, n) / (binomial(n as i64, q as i64) * pochhammer(&a, q) * pochhammer(&a, n - q))
}

/// `Tr[P_{2r} D_{m,n}]` in closed form.
pub fn trace_p_uniform(m: u32, n: u32, r: u32) -> BigRat {
    if 2 * r > n || m == 0 {
        return BigRat::zero();
    }
    let (mi, ni, ri) = (m as i64, n as i64, r as i64);
    rat(2 * ni - 4 * ri + 1, 2 * ni - 2 * ri + 1)
        * binomial(ni - ri, ri)
        * pochhammer(&int(mi + ni), n - 2 * r)
        * pochhammer(&rat(mi - 1, 2), r)
        / (binomial(2 * ni - 2 * ri, ni) * pochhammer(&rat(mi + 1, 2), n - r))
}

/// `Tr[S_q |n⟩⟨n|⊗2] = Σ_{|q|=q} Π C(n_i, q_i)² / C(n, q)²`.
pub fn trace_s_fock(pattern: &OccPattern, q: u32) -> Result<BigRat> {
    let n = pattern.total();
    if q > n {
        return Err(Error::range(format!("q={q} exceeds pattern total {n}")));
    }
    // Coefficient of x^q in Π_i Σ_j C(n_i, j)² x^j.
    let mut poly = vec![BigInt::zero(); q as usize + 1];
    poly[0] = BigInt::one();
    for &ni in pattern.counts() {
        if ni == 0 {
            continue;
        }
        let factor: Vec<BigInt> = (0..=ni.min(q))
            .map(|j| num_traits::pow(binomial_int(ni as u64, j as u64), 2))
            .collect();
        let mut next = vec![BigInt::zero(); q as usize + 1];
        for (i, a) in poly.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in factor.iter().enumerate() {
                if i + j > q as usize {
                    break;
                }
                next[i + j] += a * b;
            }
        }
        poly = next;
    }
    let c = binomial_int(n as u64, q as u64);
    Ok(BigRat::new(poly[q as usize].clone(), &c * &c))
}

/// Exact swap table of a Fock state.
pub fn fock_swap_table(pattern: &OccPattern) -> SwapTable<BigRat> {
    let n = pattern.total();
    let values = (0..=n)
        .map(|q| trace_s_fock(pattern, q).expect("q <= n"))
        .collect();
    SwapTable::new(n, values)
}

/// `Tr[P_{2r} |n₀⟩⟨n₀|⊗2]` for a collision-free pattern.
pub fn trace_p_collision_free(n: u32, r: u32) -> BigRat {
    if 2 * r > n {
        return BigRat::zero();
    }
    let (ni, ri) = (n as i64, r as i64);
    let pow2 = BigRat::from_integer(BigInt::from(2).pow(n - 2 * r));
    pow2 * rat(2 * ni - 4 * ri + 1, 2 * ni - 2 * ri + 1) * binomial(ni, ri)
        / binomial(2 * ni - 2 * ri, ni - ri)
}

/// `Tr[P_k ρ⊗2] = Σ_q c_{k,q} Tr[S_q ρ⊗2]`.
pub fn trace_p_state<T: Scalar>(swaps: &SwapTable<T>, k: u32) -> T {
    IrrepCoeffs::cached(swaps.n()).contract(k, swaps.values())
}

/// Haar second moment `E_U[p_{ρ,U}(n)²]` of one outcome.
pub fn second_moment_outcome<T: Scalar>(
    swaps: &SwapTable<T>,
    m: u32,
    outcome: &OccPattern,
) -> Result<T> {
    let n = swaps.n();
    if outcome.total() != n {
        return Err(Error::Mismatch(format!(
            "swap table is for n={n}, outcome has {} photons",
            outcome.total()
        )));
    }
    if outcome.modes() != m as usize {
        return Err(Error::Mismatch(format!(
            "outcome has {} modes, expected {m}",
            outcome.modes()
        )));
    }
    let coeffs = IrrepCoeffs::cached(n);
    let fock = fock_swap_table(outcome);
    let mut acc = T::scalar_zero();
    for r in 0..=n / 2 {
        let dim = dim_irrep(m, n, 2 * r);
        if dim.is_zero() {
            continue;
        }
        let overlap = coeffs.contract(2 * r, fock.values());
        if overlap.is_zero() {
            continue;
        }
        let state = coeffs.contract(2 * r, swaps.values());
        acc = acc + state * T::from_rat(&(overlap / dim));
    }
    Ok(acc)
}

/// Dense operator on `Sym^n(C^m) ⊗ Sym^n(C^m)` in the Fock⊗Fock basis.
///
/// Row/column index of `|a⟩⊗|b⟩` is `index(a) * d + index(b)`, with the
/// single-copy basis in colexicographic order.
#[derive(Debug, Clone)]
pub struct TwoCopyOperator {
    pub m: u32,
    pub n: u32,
    pub basis: Vec<OccPattern>,
    pub matrix: DMatrix<Complex64>,
}

fn guarded_basis(m: u32, n: u32) -> Result<Vec<OccPattern>> {
    let d = outcome_count_f64(m, n);
    if d * d > MATRIX_GUARD as f64 {
        return Err(Error::guard(
            "|S_{m,n}|^2",
            (d * d).round(),
            MATRIX_GUARD as f64,
        ));
    }
    Ok(fock_basis(m as usize, n))
}

impl TwoCopyOperator {
    pub fn single_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// `Tr[M (ρ⊗σ)]` for single-copy matrices `ρ`, `σ` in the same basis.
    pub fn expectation(&self, rho: &DMatrix<Complex64>, sigma: &DMatrix<Complex64>) -> Complex64 {
        let d = self.single_dim();
        let mut acc = Complex64::zero();
        for a in 0..d {
            for b in 0..d {
                let row = a * d + b;
                for c in 0..d {
                    let r_ca = rho[(c, a)];
                    if r_ca == Complex64::zero() {
                        continue;
                    }
                    for e in 0..d {
                        acc += self.matrix[(row, c * d + e)] * r_ca * sigma[(e, b)];
                    }
                }
            }
        }
        acc
    }

    /// Largest `|M - M†|` entry.
    pub fn hermitian_defect(&self) -> f64 {
        let adj = self.matrix.adjoint();
        (&self.matrix - adj)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn compose(&self, other: &TwoCopyOperator) -> TwoCopyOperator {
        TwoCopyOperator {
            m: self.m,
            n: self.n,
            basis: self.basis.clone(),
            matrix: &self.matrix * &other.matrix,
        }
    }

    /// Largest entry of `|self - other|`.
    pub fn max_abs_diff(&self, other: &DMatrix<Complex64>) -> f64 {
        (&self.matrix - other)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn identity_like(&self) -> DMatrix<Complex64> {
        DMatrix::identity(self.dim(), self.dim())
    }
}

fn index_of(basis: &[OccPattern]) -> HashMap<Vec<u32>, usize> {
    basis
        .iter()
        .enumerate()
        .map(|(i, p)| (p.counts().to_vec(), i))
        .collect()
}

fn multi_binomial(top: &[u32], bottom: &[u32]) -> BigInt {
    top.iter().zip(bottom).fold(BigInt::one(), |acc, (&t, &b)| {
        acc * binomial_int(t as u64, b as u64)
    })
}

fn factorials(v: &[u32]) -> BigInt {
    v.iter()
        .fold(BigInt::one(), |acc, &c| acc * factorial(c as u64))
}

/// Explicit matrix of `S_q` on two copies of `Sym^n(C^m)`.
pub fn build_swap_matrix(m: u32, n: u32, q: u32) -> Result<TwoCopyOperator> {
    if q > n {
        return Err(Error::range(format!("q={q} exceeds n={n}")));
    }
    let basis = guarded_basis(m, n)?;
    let d = basis.len();
    let index = index_of(&basis);
    let cnq = binomial_int(n as u64, q as u64);
    let norm = BigRat::from_integer(&cnq * &cnq);
    let mut matrix = DMatrix::<Complex64>::zeros(d * d, d * d);

    for (i, a) in basis.iter().enumerate() {
        let (a, a_fact) = (a.counts(), factorials(a.counts()));
        let a_subs = sub_patterns(a, q);
        for (j, b) in basis.iter().enumerate() {
            let (b, b_fact) = (b.counts(), factorials(b.counts()));
            let b_subs = sub_patterns(b, q);
            let col = i * d + j;
            for qv in &a_subs {
                let cq = multi_binomial(a, qv);
                for rv in &b_subs {
                    let new_a: Vec<u32> = (0..a.len()).map(|t| a[t] - qv[t] + rv[t]).collect();
                    let new_b: Vec<u32> = (0..b.len()).map(|t| b[t] - rv[t] + qv[t]).collect();
                    let ratio =
                        BigRat::new(factorials(&new_a) * factorials(&new_b), &a_fact * &b_fact);
                    let weight = BigRat::from_integer(&cq * multi_binomial(b, rv)) / &norm;
                    let value = to_f64(&ratio).sqrt() * to_f64(&weight);
                    let row = index[&new_a] * d + index[&new_b];
                    matrix[(row, col)] += Complex64::new(value, 0.0);
                }
            }
        }
    }
    Ok(TwoCopyOperator {
        m,
        n,
        basis,
        matrix,
    })
}

/// All swap matrices `S_0..S_n`.
pub fn build_swap_matrices(m: u32, n: u32) -> Result<Vec<TwoCopyOperator>> {
    (0..=n).map(|q| build_swap_matrix(m, n, q)).collect()
}

/// `P_k = Σ_q c_{k,q} S_q` from prebuilt swap matrices and a coefficient table.
pub fn projector_from_swaps(
    swaps: &[TwoCopyOperator],
    coeffs: &IrrepCoeffs,
    k: u32,
) -> TwoCopyOperator {
    let first = &swaps[0];
    let mut matrix = DMatrix::<Complex64>::zeros(first.dim(), first.dim());
    for (q, s) in swaps.iter().enumerate() {
        let c = coeffs.get_f64(k, q as u32);
        if c != 0.0 {
            matrix += &s.matrix * Complex64::new(c, 0.0);
        }
    }
    TwoCopyOperator {
        m: first.m,
        n: first.n,
        basis: first.basis.clone(),
        matrix,
    }
}

/// Explicit matrix of `P_k`.
pub fn build_projector_matrix(m: u32, n: u32, k: u32) -> Result<TwoCopyOperator> {
    if k > n {
        return Err(Error::range(format!("k={k} exceeds n={n}")));
    }
    let swaps = build_swap_matrices(m, n)?;
    Ok(projector_from_swaps(&swaps, &IrrepCoeffs::cached(n), k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_coeff_examples() {
        assert_eq!(c_coeff(2, 0, 1).unwrap(), rat(2, 3));
        assert_eq!(c_coeff(2, 2, 1).unwrap(), rat(-2, 3));
        assert_eq!(c_coeff(2, 1, 1).unwrap(), int(0));
        assert!(c_coeff(2, 3, 0).is_err());
    }

    #[test]
    fn c_coeff_first_row_is_squared_binomial_over_central() {
        for n in 0..=12u32 {
            for q in 0..=n {
                let c = binomial(n as i64, q as i64);
                assert_eq!(
                    c_coeff(n, 0, q).unwrap(),
                    &c * &c / binomial(2 * n as i64, n as i64)
                );
            }
        }
    }

    #[test]
    fn dim_examples() {
        assert_eq!(dim_irrep(2, 2, 0), int(5));
        assert_eq!(dim_irrep(2, 2, 2), int(1));
        assert_eq!(dim_irrep(2, 2, 1), int(3));
        let total: BigRat = (0..=2).map(|k| dim_irrep(2, 2, k)).sum();
        assert_eq!(total, int(9));
        assert_eq!(dim_irrep(1, 5, 0), int(1));
        assert_eq!(dim_irrep(1, 5, 2), int(0));
    }

    #[test]
    fn trace_s_uniform_examples() {
        assert_eq!(trace_s_uniform(2, 2, 0), int(1));
        assert_eq!(trace_s_uniform(2, 2, 1), rat(5, 6));
        for m in 1..=6 {
            for n in 0..=6 {
                assert_eq!(trace_s_uniform(m, n, n), int(1));
            }
        }
    }

    #[test]
    fn trace_p_uniform_examples() {
        assert_eq!(trace_p_uniform(2, 2, 0), rat(8, 9));
        assert_eq!(trace_p_uniform(2, 2, 1), rat(1, 9));
        assert_eq!(trace_p_uniform(5, 1, 0), int(1));
    }

    #[test]
    fn trace_s_fock_examples() {
        assert_eq!(
            trace_s_fock(&OccPattern::new(vec![2, 0]), 1).unwrap(),
            int(1)
        );
        assert_eq!(
            trace_s_fock(&OccPattern::new(vec![1, 1]), 1).unwrap(),
            rat(1, 2)
        );
        let cf = OccPattern::collision_free(7, 5).unwrap();
        for q in 0..=5 {
            assert_eq!(trace_s_fock(&cf, q).unwrap(), binomial(5, q as i64).recip());
        }
        assert!(trace_s_fock(&cf, 6).is_err());
    }

    #[test]
    fn trace_p_collision_free_examples() {
        assert_eq!(trace_p_collision_free(2, 0), rat(2, 3));
        assert_eq!(trace_p_collision_free(2, 1), rat(1, 3));
        for n in 0..=20 {
            let s: BigRat = (0..=n / 2).map(|r| trace_p_collision_free(n, r)).sum();
            assert_eq!(s, int(1), "n={n}");
        }
    }

    #[test]
    fn basis_is_colex() {
        let b = fock_basis(2, 2);
        let got: Vec<Vec<u32>> = b.iter().map(|p| p.counts().to_vec()).collect();
        assert_eq!(got, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(fock_basis(4, 3).len(), 20);
        assert_eq!(fock_basis(3, 1).len(), 3);
    }

    #[test]
    fn swap_matrix_small_cases() {
        let s0 = build_swap_matrix(2, 1, 0).unwrap();
        assert!(s0.max_abs_diff(&s0.identity_like()) < 1e-15);
        let s1 = build_swap_matrix(2, 1, 1).unwrap();
        // Tensor swap |a⟩⊗|b⟩ -> |b⟩⊗|a⟩ with d = 2.
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for e in 0..2 {
                        let want = if a == e && b == c { 1.0 } else { 0.0 };
                        assert_eq!(s1.matrix[(a * 2 + b, c * 2 + e)].re, want);
                    }
                }
            }
        }
        let s = build_swap_matrix(2, 2, 1).unwrap();
        let idx = 3 + 1;
        assert!((s.matrix[(idx, idx)].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            build_swap_matrix(5, 5, 1),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn second_moment_examples() {
        let p = OccPattern::new(vec![1, 1]);
        let swaps = fock_swap_table(&p);
        assert_eq!(second_moment_outcome(&swaps, 2, &p).unwrap(), rat(1, 5));
        for m in 1..=7u32 {
            let input = OccPattern::collision_free(m as usize, 1).unwrap();
            let swaps = fock_swap_table(&input);
            let out = OccPattern::collision_free(m as usize, 1).unwrap();
            assert_eq!(
                second_moment_outcome(&swaps, m, &out).unwrap(),
                rat(2, (m * (m + 1)) as i64)
            );
        }
        let single = OccPattern::new(vec![4]);
        assert_eq!(
            second_moment_outcome(&fock_swap_table(&single), 1, &single).unwrap(),
            int(1)
        );
        let wrong = OccPattern::new(vec![1, 0]);
        assert!(second_moment_outcome(&swaps_for(2), 2, &wrong).is_err());
    }

    fn swaps_for(n: u32) -> SwapTable<BigRat> {
        fock_swap_table(&OccPattern::collision_free(n as usize, n as usize).unwrap())
    }
}
