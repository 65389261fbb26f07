//! Monte Carlo harness for Boson Sampling: Haar interferometers, permanents,
//! exact output distributions and the empirical LXEB fidelity.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkit::compensated_sum;
use crate::refval::lxe_ref_bs;
use crate::schur::{fock_basis, outcome_count_f64, OccPattern};

/// Largest matrix handled by [`permanent`].
pub const PERMANENT_GUARD: usize = 24;
/// Largest photon number handled by [`bs_probability`].
pub const PHOTON_GUARD: u32 = 12;
/// Largest outcome set handled by [`enumerate_outcomes`].
pub const ENUMERATION_GUARD: f64 = 1e7;

/// A dense `m × m` unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    entries: DMatrix<Complex64>,
}

impl UnitaryMatrix {
    /// Wraps `entries`, checking `U†U = 1` to 1e-10 in Frobenius norm.
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::Mismatch(format!(
                "unitary must be square, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let defect = (entries.adjoint() * &entries
            - DMatrix::identity(entries.nrows(), entries.nrows()))
        .norm();
        if defect > 1e-10 {
            return Err(Error::Domain(format!(
                "matrix is not unitary (defect {defect:e})"
            )));
        }
        Ok(UnitaryMatrix { entries })
    }

    pub fn identity(m: usize) -> Self {
        UnitaryMatrix {
            entries: DMatrix::identity(m, m),
        }
    }

    pub fn m(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Relabels output modes: row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let m = self.m();
        UnitaryMatrix {
            entries: DMatrix::from_fn(m, m, |i, j| self.entries[(perm[i], j)]),
        }
    }
}

/// Haar-random unitary from QR of a complex Ginibre matrix with the phase fix.
pub fn haar_unitary<R: Rng + ?Sized>(m: usize, rng: &mut R) -> UnitaryMatrix {
    assert!(m >= 1, "haar_unitary needs m >= 1");
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let g = DMatrix::from_fn(m, m, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    });
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..m {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..m {
            q[(i, j)] *= phase;
        }
    }
    UnitaryMatrix { entries: q }
}

/// Permanent by Ryser's formula with Gray-code subset order.
pub fn permanent(a: &DMatrix<Complex64>) -> Result<Complex64> {
    let s = a.nrows();
    if a.ncols() != s {
        return Err(Error::Mismatch(format!(
            "permanent needs a square matrix, got {}x{}",
            s,
            a.ncols()
        )));
    }
    if s > PERMANENT_GUARD {
        return Err(Error::guard(
            "permanent size",
            s as f64,
            PERMANENT_GUARD as f64,
        ));
    }
    if s == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut row_sums = vec![Complex64::new(0.0, 0.0); s];
    let mut in_set = vec![false; s];
    let mut total = Complex64::new(0.0, 0.0);
    let mut gray: u64 = 0;
    for k in 1u64..(1u64 << s) {
        let j = k.trailing_zeros() as usize;
        gray ^= 1 << j;
        if in_set[j] {
            for (i, acc) in row_sums.iter_mut().enumerate() {
                *acc -= a[(i, j)];
            }
        } else {
            for (i, acc) in row_sums.iter_mut().enumerate() {
                *acc += a[(i, j)];
            }
        }
        in_set[j] = !in_set[j];
        let prod = row_sums.iter().fold(Complex64::new(1.0, 0.0), |p, x| p * x);
        if gray.count_ones() % 2 == 1 {
            total -= prod;
        } else {
            total += prod;
        }
    }
    Ok(if s % 2 == 1 { -total } else { total })
}

/// `|per(U_{outcome,input})|² / (outcome! input!)`.
pub fn bs_probability(u: &UnitaryMatrix, input: &OccPattern, outcome: &OccPattern) -> Result<f64> {
    if input.modes() != u.m() || outcome.modes() != u.m() {
        return Err(Error::Mismatch(format!(
            "patterns have {} and {} modes, unitary has {}",
            input.modes(),
            outcome.modes(),
            u.m()
        )));
    }
    let n = input.total();
    if outcome.total() != n {
        return Err(Error::Mismatch(format!(
            "input has {n} photons, outcome has {}",
            outcome.total()
        )));
    }
    if n > PHOTON_GUARD {
        return Err(Error::guard("photon number", n as f64, PHOTON_GUARD as f64));
    }
    let rows = repeated_indices(outcome);
    let cols = repeated_indices(input);
    let sub = DMatrix::from_fn(n as usize, n as usize, |i, j| u.entries[(rows[i], cols[j])]);
    let per = permanent(&sub)?;
    let norm = factorial_f64(outcome) * factorial_f64(input);
    Ok(per.norm_sqr() / norm)
}

fn repeated_indices(p: &OccPattern) -> Vec<usize> {
    p.counts()
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize))
        .collect()
}

fn factorial_f64(p: &OccPattern) -> f64 {
    p.counts()
        .iter()
        .map(|&c| (1..=c).map(f64::from).product::<f64>())
        .product()
}

/// All of `S_{m,n}` in colexicographic order.
pub fn enumerate_outcomes(m: usize, n: u32) -> Result<Vec<OccPattern>> {
    let size = outcome_count_f64(m as u32, n);
    if size > ENUMERATION_GUARD {
        return Err(Error::guard("outcome count", size, ENUMERATION_GUARD));
    }
    Ok(fock_basis(m, n))
}

/// Exact output distribution over [`enumerate_outcomes`].
pub fn output_distribution(u: &UnitaryMatrix, input: &OccPattern) -> Result<Vec<f64>> {
    let outcomes = enumerate_outcomes(u.m(), input.total())?;
    outcomes
        .par_iter()
        .map(|out| bs_probability(u, input, out))
        .collect()
}

/// `Σ_n p_U(n)²` over the full outcome set.
pub fn exact_lxe(u: &UnitaryMatrix, input: &OccPattern) -> Result<f64> {
    let probs = output_distribution(u, input)?;
    Ok(compensated_sum(probs.iter().map(|p| p * p)))
}

/// Where the scored samples come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleSource {
    /// The ideal distribution of each interferometer.
    Exact,
    /// Uniform over `S_{m,n}` (the noise-only null).
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub m: u32,
    pub n: u32,
    pub trials: u32,
    pub samples_per_trial: u32,
    pub seed: u64,
    pub source: SampleSource,
    pub fidelity_mean: f64,
    pub fidelity_stderr: f64,
    pub ref_value: f64,
    pub trial_fidelities: Vec<f64>,
}

/// Per-trial RNG: `ChaCha20` seeded from `seed` on stream `trial`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Empirical LXEB fidelity over `trials` Haar interferometers, collision-free input.
pub fn lxeb_experiment(
    m: u32,
    n: u32,
    trials: u32,
    samples: u32,
    seed: u64,
) -> Result<EstimateReport> {
    lxeb_experiment_with(m, n, trials, samples, seed, SampleSource::Exact)
}

pub fn lxeb_experiment_with(
    m: u32,
    n: u32,
    trials: u32,
    samples: u32,
    seed: u64,
    source: SampleSource,
) -> Result<EstimateReport> {
    if trials < 2 {
        return Err(Error::range(format!(
            "need at least 2 trials for a standard error, got {trials}"
        )));
    }
    if samples < 1 {
        return Err(Error::range("need at least 1 sample per trial"));
    }
    let reference = lxe_ref_bs(m, n, false)?.value_float;
    let input = OccPattern::collision_free(m as usize, n as usize)?;
    let size = enumerate_outcomes(m as usize, n)?.len() as f64;
    let denom = size * reference - 1.0;
    let estimates = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let u = haar_unitary(m as usize, &mut rng);
            let probs = output_distribution(&u, &input)?;
            Ok(trial_estimate(&probs, samples, source, &mut rng))
        })
        .collect::<Result<Vec<f64>>>()?;
    let fids: Vec<f64> = estimates.iter().map(|x| (size * x - 1.0) / denom).collect();
    let mean = compensated_sum(fids.iter().copied()) / trials as f64;
    let var = compensated_sum(fids.iter().map(|f| (f - mean).powi(2))) / (trials - 1) as f64;
    Ok(EstimateReport {
        m,
        n,
        trials,
        samples_per_trial: samples,
        seed,
        source,
        fidelity_mean: mean,
        fidelity_stderr: (var / trials as f64).sqrt(),
        ref_value: reference,
        trial_fidelities: fids,
    })
}

/// Mean ideal probability of `samples` outcomes drawn from `source`.
fn trial_estimate(probs: &[f64], samples: u32, source: SampleSource, rng: &mut ChaCha20Rng) -> f64 {
    let mut cdf = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for p in probs {
        acc += p;
        cdf.push(acc);
    }
    let total = acc;
    let draws = (0..samples).map(|_| {
        let idx = match source {
            SampleSource::Exact => {
                let x: f64 = rng.random::<f64>() * total;
                cdf.partition_point(|&c| c <= x).min(probs.len() - 1)
            }
            SampleSource::Uniform => rng.random_range(0..probs.len()),
        };
        probs[idx]
    });
    compensated_sum(draws) / samples as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn permanent_examples() {
        let id = DMatrix::<Complex64>::identity(3, 3);
        assert!((permanent(&id).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let ones = DMatrix::from_element(3, 3, c(1.0, 0.0));
        assert!((permanent(&ones).unwrap() - c(6.0, 0.0)).norm() < 1e-12);
        let (a, b, cc, d) = (c(1.0, 2.0), c(-0.5, 0.3), c(0.7, -1.1), c(2.0, 0.0));
        let m = DMatrix::from_row_slice(2, 2, &[a, b, cc, d]);
        assert!((permanent(&m).unwrap() - (a * d + b * cc)).norm() < 1e-14);
        assert!(permanent(&DMatrix::identity(25, 25)).is_err());
    }

    #[test]
    fn haar_is_unitary() {
        let mut rng = trial_rng(3, 0);
        for m in 1..6 {
            let u = haar_unitary(m, &mut rng);
            assert!(UnitaryMatrix::new(u.entries().clone()).is_ok());
            for j in 0..m {
                assert!((u.entries().column(j).norm() - 1.0).abs() < 1e-12);
            }
        }
        let u = haar_unitary(1, &mut rng);
        assert!((u.entries()[(0, 0)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn probability_examples() {
        let u = UnitaryMatrix::identity(2);
        let p = OccPattern::new(vec![1, 1]);
        assert!((bs_probability(&u, &p, &p).unwrap() - 1.0).abs() < 1e-15);
        let u1 = UnitaryMatrix::identity(1);
        let n = OccPattern::new(vec![4]);
        assert!((bs_probability(&u1, &n, &n).unwrap() - 1.0).abs() < 1e-12);
        let mut rng = trial_rng(11, 2);
        let u = haar_unitary(4, &mut rng);
        let input = OccPattern::new(vec![1, 2, 0, 0]);
        let total: f64 = output_distribution(&u, &input).unwrap().iter().sum();
        assert!((total - 1.0).abs() < 1e-10);
        assert!(bs_probability(&u, &input, &OccPattern::new(vec![1, 0, 0, 0])).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let e = enumerate_outcomes(2, 2).unwrap();
        assert_eq!(
            e,
            vec![
                OccPattern::new(vec![2, 0]),
                OccPattern::new(vec![1, 1]),
                OccPattern::new(vec![0, 2])
            ]
        );
        assert_eq!(enumerate_outcomes(4, 3).unwrap().len(), 20);
        assert_eq!(enumerate_outcomes(5, 1).unwrap().len(), 5);
        assert!(enumerate_outcomes(60, 30).is_err());
    }

    #[test]
    fn experiment_is_deterministic() {
        let a = lxeb_experiment(4, 2, 4, 50, 9).unwrap();
        let b = lxeb_experiment(4, 2, 4, 50, 9).unwrap();
        assert_eq!(a, b);
        assert!(a.fidelity_stderr >= 0.0);
    }
}
