//! Swap expectations `Tr[S_q ρ_(n)⊗2]` of product states by truncated
//! polynomial coefficient extraction.
//!
//! Each mode contributes a 4-variable polynomial whose coefficients are built
//! from its density-matrix elements; the swap expectation is one coefficient
//! of the product over modes. Cost is linear in the number of modes.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::numkit::{binary_entropy, Scalar};
use crate::states::{ModeState, ProductState};

/// Storage size above which 1-D products use FFT convolution.
pub const FFT_THRESHOLD: usize = 512;

/// Dense polynomial with per-variable degree caps; higher monomials are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncPoly {
    bounds: Vec<usize>,
    strides: Vec<usize>,
    coeffs: Vec<Complex64>,
}

fn strides_for(bounds: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; bounds.len()];
    for t in (0..bounds.len().saturating_sub(1)).rev() {
        strides[t] = strides[t + 1] * (bounds[t + 1] + 1);
    }
    strides
}

impl TruncPoly {
    pub fn zero(bounds: &[usize]) -> Self {
        let size = bounds.iter().map(|b| b + 1).product();
        TruncPoly {
            bounds: bounds.to_vec(),
            strides: strides_for(bounds),
            coeffs: vec![Complex64::new(0.0, 0.0); size],
        }
    }

    pub fn one(bounds: &[usize]) -> Self {
        let mut p = TruncPoly::zero(bounds);
        p.coeffs[0] = Complex64::new(1.0, 0.0);
        p
    }

    /// Builds a polynomial from its coefficient function.
    pub fn from_fn(bounds: &[usize], mut f: impl FnMut(&[usize]) -> Complex64) -> Self {
        let mut p = TruncPoly::zero(bounds);
        let mut idx = vec![0usize; bounds.len()];
        for flat in 0..p.coeffs.len() {
            p.coeffs[flat] = f(&idx);
            for t in (0..bounds.len()).rev() {
                if idx[t] < bounds[t] {
                    idx[t] += 1;
                    break;
                }
                idx[t] = 0;
            }
        }
        p
    }

    /// 1-D polynomial from its coefficients (bound `coeffs.len() - 1`).
    pub fn univariate(coeffs: Vec<Complex64>) -> Self {
        let bounds = vec![coeffs.len() - 1];
        TruncPoly {
            strides: strides_for(&bounds),
            bounds,
            coeffs,
        }
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    fn offset(&self, exps: &[usize]) -> Option<usize> {
        if exps.len() != self.bounds.len() || exps.iter().zip(&self.bounds).any(|(e, b)| e > b) {
            return None;
        }
        Some(exps.iter().zip(&self.strides).map(|(e, s)| e * s).sum())
    }

    /// Coefficient of `x^exps`, zero outside the bounds.
    pub fn coeff(&self, exps: &[usize]) -> Complex64 {
        self.offset(exps)
            .map_or(Complex64::new(0.0, 0.0), |o| self.coeffs[o])
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == Complex64::new(1.0, 0.0)
            && self.coeffs[1..]
                .iter()
                .all(|c| *c == Complex64::new(0.0, 0.0))
    }

    /// Drops every monomial above `bounds` (which must not exceed the current ones).
    pub fn truncate(&self, bounds: &[usize]) -> Result<Self> {
        if bounds.len() != self.bounds.len() || bounds.iter().zip(&self.bounds).any(|(a, b)| a > b)
        {
            return Err(Error::Mismatch(format!(
                "cannot truncate bounds {:?} to {:?}",
                self.bounds, bounds
            )));
        }
        if bounds == self.bounds.as_slice() {
            return Ok(self.clone());
        }
        Ok(TruncPoly::from_fn(bounds, |e| self.coeff(e)))
    }
}

fn check_bounds(a: &TruncPoly, b: &TruncPoly) -> Result<()> {
    if a.bounds != b.bounds {
        return Err(Error::Mismatch(format!(
            "bounds {:?} vs {:?}",
            a.bounds, b.bounds
        )));
    }
    Ok(())
}

/// Truncated product; 1-D inputs above [`FFT_THRESHOLD`] use FFT convolution.
pub fn poly_mul(a: &TruncPoly, b: &TruncPoly) -> Result<TruncPoly> {
    check_bounds(a, b)?;
    if a.bounds.len() == 1 && a.coeffs.len() > FFT_THRESHOLD {
        return Ok(mul_fft_1d(a, b));
    }
    Ok(mul_naive(a, b))
}

/// Truncated product by direct summation.
pub fn poly_mul_naive(a: &TruncPoly, b: &TruncPoly) -> Result<TruncPoly> {
    check_bounds(a, b)?;
    Ok(mul_naive(a, b))
}

fn mul_naive(a: &TruncPoly, b: &TruncPoly) -> TruncPoly {
    let k = a.bounds.len();
    let mut out = TruncPoly::zero(&a.bounds);
    if k == 0 {
        out.coeffs[0] = a.coeffs[0] * b.coeffs[0];
        return out;
    }
    let last = k - 1;
    let zero = Complex64::new(0.0, 0.0);
    let mut alpha = vec![0usize; k];
    let mut beta = vec![0usize; k];
    for (ia, &av) in a.coeffs.iter().enumerate() {
        if av != zero {
            // Walk the sub-box β <= bounds - α; the last axis is contiguous.
            let lim: Vec<usize> = (0..k).map(|t| a.bounds[t] - alpha[t]).collect();
            beta.iter_mut().for_each(|x| *x = 0);
            'sub: loop {
                let base_b: usize = (0..last).map(|t| beta[t] * a.strides[t]).sum();
                let base_o = ia + base_b;
                let row_b = &b.coeffs[base_b..=base_b + lim[last]];
                let row_o = &mut out.coeffs[base_o..=base_o + lim[last]];
                for (o, &bv) in row_o.iter_mut().zip(row_b) {
                    *o += av * bv;
                }
                let mut t = last;
                loop {
                    if t == 0 {
                        break 'sub;
                    }
                    t -= 1;
                    if beta[t] < lim[t] {
                        beta[t] += 1;
                        break;
                    }
                    beta[t] = 0;
                }
            }
        }
        for t in (0..k).rev() {
            if alpha[t] < a.bounds[t] {
                alpha[t] += 1;
                break;
            }
            alpha[t] = 0;
        }
    }
    out
}

fn mul_fft_1d(a: &TruncPoly, b: &TruncPoly) -> TruncPoly {
    let len = a.coeffs.len();
    let size = (2 * len).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);
    let mut fa = a.coeffs.clone();
    fa.resize(size, Complex64::new(0.0, 0.0));
    let mut fb = b.coeffs.clone();
    fb.resize(size, Complex64::new(0.0, 0.0));
    fwd.process(&mut fa);
    fwd.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    inv.process(&mut fa);
    let scale = 1.0 / size as f64;
    let coeffs = fa[..len].iter().map(|z| z * scale).collect();
    TruncPoly {
        bounds: a.bounds.clone(),
        strides: a.strides.clone(),
        coeffs,
    }
}

/// `p^e` by square-and-multiply.
pub fn poly_pow(p: &TruncPoly, mut e: u64) -> Result<TruncPoly> {
    let mut result = TruncPoly::one(&p.bounds);
    let mut base = p.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul(&result, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = poly_mul(&base, &base)?;
        }
    }
    Ok(result)
}

/// Coefficient of `x^target` in the truncated product of `polys`.
///
/// Factors are truncated to `target` first. Identical factors are grouped and
/// raised to their multiplicity by square-and-multiply.
pub fn product_coefficient(polys: &[TruncPoly], target: &[usize]) -> Result<Complex64> {
    let refs: Vec<&TruncPoly> = polys.iter().collect();
    product_coefficient_grouped(&group_identical(&refs), target)
}

/// Same as [`product_coefficient`] but multiplies factor by factor.
pub fn product_coefficient_sequential(polys: &[TruncPoly], target: &[usize]) -> Result<Complex64> {
    let mut acc = TruncPoly::one(target);
    for p in polys {
        acc = poly_mul(&acc, &p.truncate(target)?)?;
    }
    Ok(acc.coeff(target))
}

fn group_identical<'a>(polys: &[&'a TruncPoly]) -> Vec<(&'a TruncPoly, u64)> {
    let mut groups: Vec<(&TruncPoly, u64)> = Vec::new();
    for p in polys {
        match groups.iter_mut().find(|(g, _)| *g == *p) {
            Some(g) => g.1 += 1,
            None => groups.push((p, 1)),
        }
    }
    groups
}

fn product_coefficient_grouped(
    groups: &[(&TruncPoly, u64)],
    target: &[usize],
) -> Result<Complex64> {
    let mut acc = TruncPoly::one(target);
    for (p, mult) in groups {
        let p = p.truncate(target)?;
        if p.is_one() {
            continue;
        }
        acc = poly_mul(&acc, &poly_pow(&p, *mult)?)?;
    }
    Ok(acc.coeff(target))
}

/// `Tr[S_q ρ_(n)⊗2]` for `q = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SwapTable<T = f64> {
    n: u32,
    values: Vec<T>,
}

impl<T: Scalar> SwapTable<T> {
    /// # Panics
    /// Panics unless `values.len() == n + 1`.
    pub fn new(n: u32, values: Vec<T>) -> Self {
        assert_eq!(
            values.len(),
            n as usize + 1,
            "swap table needs n + 1 entries"
        );
        SwapTable { n, values }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, q: u32) -> &T {
        &self.values[q as usize]
    }

    pub fn to_f64(&self) -> SwapTable<f64> {
        SwapTable {
            n: self.n,
            values: self.values.iter().map(Scalar::as_f64).collect(),
        }
    }
}

fn check_sector(rho: &ProductState, n: u32) -> Result<()> {
    match rho.cutoff() {
        None => Err(Error::range("product state has no modes")),
        Some(c) if c < n => Err(Error::range(format!(
            "cutoff {c} is below the particle number {n}"
        ))),
        _ => Ok(()),
    }
}

/// Groups identical modes so each distinct single-mode polynomial is built once.
fn distinct_modes(rho: &ProductState) -> Vec<(&ModeState, u64)> {
    let mut groups: Vec<(&ModeState, u64)> = Vec::new();
    for s in rho.modes() {
        match groups.iter_mut().find(|(g, _)| *g == s) {
            Some(g) => g.1 += 1,
            None => groups.push((s, 1)),
        }
    }
    groups
}

/// `Tr[ρ|_n]`, the weight of the `n`-particle sector (unnormalized).
pub fn n_particle_norm(rho: &ProductState, n: u32) -> Result<f64> {
    check_sector(rho, n)?;
    let groups = distinct_modes(rho);
    let polys: Vec<TruncPoly> = groups
        .iter()
        .map(|(s, _)| TruncPoly::univariate((0..=n).map(|k| s.get(k, k)).collect()))
        .collect();
    let grouped: Vec<(&TruncPoly, u64)> = polys
        .iter()
        .zip(&groups)
        .map(|(p, (_, m))| (p, *m))
        .collect();
    Ok(product_coefficient_grouped(&grouped, &[n as usize])?.re)
}

fn populated_norm(rho: &ProductState, n: u32) -> Result<f64> {
    let norm = n_particle_norm(rho, n)?;
    if norm.is_nan() || norm < 1e-300 {
        return Err(Error::ZeroNorm { n, norm });
    }
    Ok(norm)
}

/// `√(C(x+y, x))` for `x + y <= n`.
struct SqrtBinomials {
    rows: Vec<Vec<f64>>,
}

impl SqrtBinomials {
    fn new(n: usize) -> Self {
        let mut pascal: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        for a in 0..=n {
            let mut row = vec![1.0; a + 1];
            for b in 1..a {
                row[b] = pascal[a - 1][b - 1] + pascal[a - 1][b];
            }
            pascal.push(row);
        }
        SqrtBinomials {
            rows: pascal
                .into_iter()
                .map(|r| r.into_iter().map(f64::sqrt).collect())
                .collect(),
        }
    }

    fn get(&self, top: usize, k: usize) -> f64 {
        self.rows[top][k]
    }
}

/// `L_{x,y,z} = σ_{x+y, x+z} √(C(x+y, x) C(x+z, x))`.
fn l_factor(s: &ModeState, sb: &SqrtBinomials, x: usize, y: usize, z: usize) -> Complex64 {
    s.get((x + y) as u32, (x + z) as u32) * (sb.get(x + y, x) * sb.get(x + z, x))
}

/// Per-mode polynomial `Σ L^σ_{k,q,r} L^τ_{l,r,q} t^k u^l v^q w^r` with bounds `(n-q, n-q, q, q)`.
fn k_poly(sigma: &ModeState, tau: &ModeState, n: u32, q: u32, sb: &SqrtBinomials) -> TruncPoly {
    let (a, b) = ((n - q) as usize, q as usize);
    TruncPoly::from_fn(&[a, a, b, b], |e| {
        let (k, l, qa, ra) = (e[0], e[1], e[2], e[3]);
        l_factor(sigma, sb, k, qa, ra) * l_factor(tau, sb, l, ra, qa)
    })
}

fn swap_core(groups: &[((&ModeState, &ModeState), u64)], n: u32, q: u32, norm: f64) -> Result<f64> {
    let sb = SqrtBinomials::new(n as usize);
    let polys: Vec<TruncPoly> = groups
        .par_iter()
        .map(|((s, t), _)| k_poly(s, t, n, q, &sb))
        .collect();
    let grouped: Vec<(&TruncPoly, u64)> = polys
        .iter()
        .zip(groups)
        .map(|(p, (_, m))| (p, *m))
        .collect();
    let (a, b) = ((n - q) as usize, q as usize);
    let coeff = product_coefficient_grouped(&grouped, &[a, a, b, b])?;
    let c = crate::numkit::ln_binomial(n as f64, q as f64).exp();
    Ok(coeff.re / (c * c * norm))
}

/// `Tr[S_q ρ_(n)⊗2]` on the normalized `n`-particle restriction.
pub fn swap_expectation(rho: &ProductState, n: u32, q: u32) -> Result<f64> {
    if q > n {
        return Err(Error::range(format!("q={q} exceeds n={n}")));
    }
    let norm = populated_norm(rho, n)?;
    swap_with_norm(rho, n, q, norm * norm)
}

fn swap_with_norm(rho: &ProductState, n: u32, q: u32, norm_sq: f64) -> Result<f64> {
    let groups: Vec<((&ModeState, &ModeState), u64)> = distinct_modes(rho)
        .into_iter()
        .map(|(s, m)| ((s, s), m))
        .collect();
    swap_core(&groups, n, q, norm_sq)
}

/// `Tr[S_q ρ_(n)⊗σ_(n)]` for two product states on the same modes.
pub fn swap_expectation_cross(
    rho: &ProductState,
    sigma: &ProductState,
    n: u32,
    q: u32,
) -> Result<f64> {
    if q > n {
        return Err(Error::range(format!("q={q} exceeds n={n}")));
    }
    if rho.mode_count() != sigma.mode_count() {
        return Err(Error::Mismatch(format!(
            "{} modes vs {} modes",
            rho.mode_count(),
            sigma.mode_count()
        )));
    }
    let norm = populated_norm(rho, n)? * populated_norm(sigma, n)?;
    let mut groups: Vec<((&ModeState, &ModeState), u64)> = Vec::new();
    for pair in rho.modes().iter().zip(sigma.modes()) {
        match groups.iter_mut().find(|(g, _)| *g == pair) {
            Some(g) => g.1 += 1,
            None => groups.push((pair, 1)),
        }
    }
    swap_core(&groups, n, q, norm)
}

/// All swap expectations for `q = 0..=n`.
pub fn swap_table(rho: &ProductState, n: u32) -> Result<SwapTable<f64>> {
    let norm = populated_norm(rho, n)?;
    let values = (0..=n)
        .into_par_iter()
        .map(|q| swap_with_norm(rho, n, q, norm * norm))
        .collect::<Result<Vec<_>>>()?;
    Ok(SwapTable::new(n, values))
}

/// Cross swap table `Tr[S_q ρ_(n)⊗σ_(n)]`, `q = 0..=n`.
pub fn swap_table_cross(
    rho: &ProductState,
    sigma: &ProductState,
    n: u32,
) -> Result<SwapTable<f64>> {
    let values = (0..=n)
        .into_par_iter()
        .map(|q| swap_expectation_cross(rho, sigma, n, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(SwapTable::new(n, values))
}

/// Rényi-2 entropy `-ln Tr[S_q ρ_(n)⊗2]` of the `q`-particle reduced state.
pub fn renyi2(rho: &ProductState, n: u32, q: u32) -> Result<f64> {
    Ok(-swap_expectation(rho, n, q)?.ln())
}

/// Volume-law exponent `Ψ(α, β)` of the average purity.
pub fn avg_purity_volume_exponent(alpha: f64, beta: f64) -> Result<f64> {
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::Domain(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::Domain(format!(
            "beta must lie in (0, 1), got {beta}"
        )));
    }
    let h = binary_entropy;
    Ok(h(beta)
        - (1.0 + alpha)
            * (h((beta + alpha / 2.0) / (1.0 + alpha)) - h(alpha / (2.0 * (1.0 + alpha)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::OccPattern;
    use crate::states::{fock_mode, squeezed_mode, vacuum_mode};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn poly_mul_examples() {
        let p = TruncPoly::univariate(vec![c(1.0), c(1.0)]);
        assert_eq!(poly_mul(&p, &p).unwrap().coeffs(), &[c(1.0), c(2.0)]);
        let one = TruncPoly::one(&[1]);
        assert_eq!(poly_mul(&one, &p).unwrap(), p);
        let x = TruncPoly::from_fn(&[1, 1], |e| if e[1] == 0 { c(1.0) } else { c(0.0) });
        let y = TruncPoly::from_fn(&[1, 1], |e| if e[0] == 0 { c(1.0) } else { c(0.0) });
        let xy = poly_mul(&x, &y).unwrap();
        assert_eq!(xy.coeffs(), &[c(1.0), c(1.0), c(1.0), c(1.0)]);
        assert!(poly_mul(&p, &x).is_err());
    }

    #[test]
    fn product_coefficient_examples() {
        let p = TruncPoly::univariate(vec![c(1.0), c(1.0), c(0.0)]);
        let four = vec![p.clone(); 4];
        assert_eq!(product_coefficient(&four, &[2]).unwrap(), c(6.0));
        let single = TruncPoly::from_fn(&[2, 3], |e| c((e[0] * 10 + e[1]) as f64));
        assert_eq!(
            product_coefficient(std::slice::from_ref(&single), &[2, 3]).unwrap(),
            c(23.0)
        );
    }

    #[test]
    fn fft_path_matches_naive() {
        let n = FFT_THRESHOLD + 40;
        let p = TruncPoly::univariate(
            (0..n)
                .map(|i| Complex64::new(1.0 / (1.0 + i as f64), 0.3))
                .collect(),
        );
        let q = TruncPoly::univariate(
            (0..n)
                .map(|i| Complex64::new((i % 7) as f64, -1.0))
                .collect(),
        );
        let fast = poly_mul(&p, &q).unwrap();
        let slow = poly_mul_naive(&p, &q).unwrap();
        let scale = slow.coeffs().iter().map(|z| z.norm()).fold(0.0, f64::max);
        for (a, b) in fast.coeffs().iter().zip(slow.coeffs()) {
            assert!((a - b).norm() < 1e-12 * scale);
        }
    }

    #[test]
    fn norm_examples() {
        let cut = 3;
        let ones = ProductState::fock(&OccPattern::new(vec![1, 1, 1]), cut).unwrap();
        assert_eq!(n_particle_norm(&ones, 3).unwrap(), 1.0);
        assert_eq!(n_particle_norm(&ones, 2).unwrap(), 0.0);
        assert!(matches!(
            swap_expectation(&ones, 2, 1),
            Err(Error::ZeroNorm { .. })
        ));

        let r: f64 = 0.6;
        let sq = ProductState::new(vec![
            squeezed_mode(r, 2).unwrap(),
            squeezed_mode(r, 2).unwrap(),
        ])
        .unwrap();
        // Sectors (2,0) and (0,2): 2 · sech²r · (t²/2)
        let (t, sech) = (r.tanh(), 1.0 / r.cosh());
        let want = 2.0 * sech * sech * t * t / 2.0;
        assert!((n_particle_norm(&sq, 2).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn collision_free_swaps() {
        for n in 1..=6u32 {
            let rho = ProductState::fock(
                &OccPattern::collision_free(n as usize + 1, n as usize).unwrap(),
                n,
            )
            .unwrap();
            for q in 0..=n {
                let want =
                    crate::numkit::to_f64(&crate::numkit::binomial(n as i64, q as i64).recip());
                assert!((swap_expectation(&rho, n, q).unwrap() - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn table_examples() {
        let rho = ProductState::fock(&OccPattern::new(vec![1, 1, 0]), 2).unwrap();
        let t = swap_table(&rho, 2).unwrap();
        let want = [1.0, 0.5, 1.0];
        for (a, b) in t.values().iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        let single =
            ProductState::new(vec![squeezed_mode(1.1, 2).unwrap(), vacuum_mode(2)]).unwrap();
        let t = swap_table(&single, 2).unwrap();
        for v in t.values() {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn renyi_examples() {
        let rho = ProductState::fock(&OccPattern::new(vec![1, 1]), 2).unwrap();
        assert!((renyi2(&rho, 2, 1).unwrap() - 2f64.ln()).abs() < 1e-15);
        let pure = ProductState::new(vec![fock_mode(3, 3).unwrap()]).unwrap();
        assert!(renyi2(&pure, 3, 2).unwrap().abs() < 1e-15);
    }

    #[test]
    fn volume_exponent_examples() {
        assert!(avg_purity_volume_exponent(1.0, 1e-6).unwrap().abs() < 1e-4);
        assert!(avg_purity_volume_exponent(1.0, 0.5).unwrap() > 0.0);
        assert!(avg_purity_volume_exponent(1.0, 0.0).is_err());
        assert!(avg_purity_volume_exponent(1.0, 1.0).is_err());
        let (m, n, q) = (40u32, 40u32, 20u32);
        let exact = -crate::numkit::to_f64(&crate::schur::trace_s_uniform(m, n, q)).ln();
        let approx = n as f64
            * avg_purity_volume_exponent(m as f64 / n as f64, q as f64 / n as f64).unwrap();
        assert!(((approx - exact) / exact).abs() < 0.15);
    }
}
