//! Brute-force consistency suite behind `lxebkit oracle`.
//!
//! Compares the combinatorial machinery against explicit two-copy matrices
//! on small `(m, n)`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkit::{identity_oracles_seeded, parity_sign, rat, to_f64, BigRat};
use crate::sampler::trial_rng;
use crate::schur::{
    build_swap_matrices, dim_irrep, outcome_count_f64, projector_from_swaps, IrrepCoeffs,
    MATRIX_GUARD,
};
use crate::states::{random_mode, ProductState};
use crate::swapexp::swap_expectation;

pub const PROJECTOR_TOL: f64 = 1e-10;
pub const SWAP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleCheck {
    pub name: String,
    pub passed: bool,
    pub instances: u64,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct OracleConfig {
    pub m_max: u32,
    pub n_max: u32,
    pub states_per_point: u32,
    pub seed: u64,
    /// Perturb `c_{0,0}` at `n = n_max` to exercise the failure path.
    pub inject_fault: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            m_max: 3,
            n_max: 3,
            states_per_point: 5,
            seed: 0,
            inject_fault: false,
        }
    }
}

fn coeffs_for(cfg: &OracleConfig, n: u32) -> IrrepCoeffs {
    let base = IrrepCoeffs::compute(n);
    if cfg.inject_fault && n == cfg.n_max {
        base.perturbed(0, 0, &rat(1, 1000))
    } else {
        base
    }
}

struct Tally {
    name: &'static str,
    instances: u64,
    worst: f64,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            instances: 0,
            worst: 0.0,
            failure: None,
        }
    }

    fn record(&mut self, ok: bool, err: f64, what: impl FnOnce() -> String) {
        self.instances += 1;
        if err.is_finite() {
            self.worst = self.worst.max(err);
        }
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn finish(self) -> OracleCheck {
        let passed = self.failure.is_none();
        let detail = self
            .failure
            .unwrap_or_else(|| format!("max error {:.3e}", self.worst));
        OracleCheck {
            name: self.name.to_string(),
            passed,
            instances: self.instances,
            detail,
        }
    }
}

/// Runs every check; order is fixed.
///
/// Fails with a size-guard error when the largest two-copy matrix would be too big.
pub fn run_oracles(cfg: &OracleConfig) -> Result<Vec<OracleCheck>> {
    if cfg.m_max < 1 || cfg.n_max < 1 {
        return Err(Error::Range(format!(
            "oracle sizes need m >= 1 and n >= 1, got m={}, n={}",
            cfg.m_max, cfg.n_max
        )));
    }
    let d = outcome_count_f64(cfg.m_max, cfg.n_max);
    if d * d > MATRIX_GUARD as f64 {
        return Err(Error::SizeGuard {
            what: "|S_{m,n}|^2",
            size: d * d,
            limit: MATRIX_GUARD as f64,
        });
    }
    let mut idem = Tally::new("projector_idempotent");
    let mut orth = Tally::new("projector_orthogonal");
    let mut herm = Tally::new("projector_hermitian");
    let mut complete = Tally::new("projector_completeness");
    let mut traces = Tally::new("projector_trace");
    let mut swap = Tally::new("swap_oracle");
    let mut csum = Tally::new("coefficient_sum");
    let mut calt = Tally::new("coefficient_alternating_sum");

    for n in 1..=cfg.n_max {
        let coeffs = coeffs_for(cfg, n);
        for q in 0..=n {
            let s: BigRat = (0..=n).map(|k| coeffs.get(k, q).clone()).sum();
            let want = if q == 0 {
                BigRat::one()
            } else {
                BigRat::zero()
            };
            csum.record(s == want, to_f64(&(&s - &want)).abs(), || {
                format!("n={n} q={q}: sum {s}")
            });
            let a: BigRat = (0..=n)
                .map(|k| parity_sign(k as i64) * coeffs.get(k, q))
                .sum();
            let want = if q == n {
                BigRat::one()
            } else {
                BigRat::zero()
            };
            calt.record(a == want, to_f64(&(&a - &want)).abs(), || {
                format!("n={n} q={q}: alternating sum {a}")
            });
        }
        for m in 1..=cfg.m_max {
            let swaps = build_swap_matrices(m, n)?;
            let projectors: Vec<_> = (0..=n)
                .map(|k| projector_from_swaps(&swaps, &coeffs, k))
                .collect();
            let id = projectors[0].identity_like();
            let mut total = id.clone() * num_complex::Complex64::new(0.0, 0.0);
            for (k, p) in projectors.iter().enumerate() {
                total += &p.matrix;
                let sq = p.compose(p);
                let e = sq.max_abs_diff(&p.matrix);
                idem.record(e < PROJECTOR_TOL, e, || {
                    format!("m={m} n={n} k={k}: |P²-P| = {e:.3e}")
                });
                let h = p.hermitian_defect();
                herm.record(h < PROJECTOR_TOL, h, || {
                    format!("m={m} n={n} k={k}: |P-P†| = {h:.3e}")
                });
                let want = to_f64(&dim_irrep(m, n, k as u32));
                let t = p.trace();
                let te = (t.re - want).abs() + t.im.abs();
                // Traces are integers, so rounding must land exactly.
                let exact = t.re.round() == want && te < PROJECTOR_TOL;
                traces.record(exact, te, || {
                    format!("m={m} n={n} k={k}: trace {:.6} vs {want}", t.re)
                });
                for (l, p2) in projectors.iter().enumerate().skip(k + 1) {
                    let e = p
                        .compose(p2)
                        .matrix
                        .iter()
                        .map(|z| z.norm())
                        .fold(0.0, f64::max);
                    orth.record(e < PROJECTOR_TOL, e, || {
                        format!("m={m} n={n} k={k} l={l}: |PkPl| = {e:.3e}")
                    });
                }
            }
            let e = (&total - &id).iter().map(|z| z.norm()).fold(0.0, f64::max);
            complete.record(e < PROJECTOR_TOL, e, || {
                format!("m={m} n={n}: |ΣP - 1| = {e:.3e}")
            });

            for i in 0..cfg.states_per_point {
                let mut rng =
                    trial_rng(cfg.seed, ((m as u64) << 40) | ((n as u64) << 20) | i as u64);
                let modes = (0..m).map(|_| random_mode(n, &mut rng)).collect();
                let rho = ProductState::new(modes).expect("equal cutoffs");
                let (_, r) = rho
                    .normalized_restriction(n)
                    .expect("full-rank modes populate every sector");
                for (q, s) in swaps.iter().enumerate() {
                    let brute = s.expectation(&r, &r);
                    let fast = swap_expectation(&rho, n, q as u32).expect("populated");
                    let e = (brute.re - fast).abs() + brute.im.abs();
                    swap.record(e < SWAP_TOL, e, || {
                        format!("m={m} n={n} q={q} state {i}: {fast} vs {}", brute.re)
                    });
                }
            }
        }
    }

    let mut out = vec![
        idem.finish(),
        orth.finish(),
        herm.finish(),
        complete.finish(),
        traces.finish(),
        swap.finish(),
        csum.finish(),
        calt.finish(),
    ];
    let ids = identity_oracles_seeded(cfg.n_max.max(8), cfg.seed);
    for c in ids.checks {
        let detail = match &c.counterexample {
            Some(ce) => ce.clone(),
            None => format!("{} skipped", c.skipped),
        };
        out.push(OracleCheck {
            name: format!("identity_{}", c.name),
            passed: c.passed,
            instances: c.instances as u64,
            detail,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let checks = run_oracles(&OracleConfig {
            states_per_point: 2,
            ..OracleConfig::default()
        })
        .unwrap();
        for c in &checks {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn fault_is_caught() {
        let cfg = OracleConfig {
            m_max: 2,
            n_max: 2,
            states_per_point: 1,
            inject_fault: true,
            ..OracleConfig::default()
        };
        let checks = run_oracles(&cfg).unwrap();
        let failed: Vec<_> = checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        assert!(failed.contains(&"coefficient_sum"));
        assert!(failed.contains(&"projector_idempotent"));
    }

    #[test]
    fn oversized_suite_is_refused() {
        let cfg = OracleConfig {
            m_max: 5,
            n_max: 5,
            ..OracleConfig::default()
        };
        assert!(matches!(run_oracles(&cfg), Err(Error::SizeGuard { .. })));
    }
}
