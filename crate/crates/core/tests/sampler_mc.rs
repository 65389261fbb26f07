use lxebkit::refval::{ac_bs, lxe_ref_bs};
use lxebkit::sampler::{
    bs_probability, enumerate_outcomes, exact_lxe, haar_unitary, lxeb_experiment,
    lxeb_experiment_with, output_distribution, trial_rng, SampleSource, UnitaryMatrix,
};
use lxebkit::schur::OccPattern;

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[test]
fn haar_first_moment_of_an_entry() {
    let mut rng = trial_rng(5, 0);
    let m = 3;
    let xs: Vec<f64> = (0..100_000)
        .map(|_| haar_unitary(m, &mut rng).entries()[(0, 0)].norm_sqr())
        .collect();
    let (mean, se) = mean_and_se(&xs);
    assert!((mean - 1.0 / m as f64).abs() < 3.0 * se, "{mean} ± {se}");
}

#[test]
fn haar_first_moment_of_probabilities() {
    let (m, n) = (5usize, 2u32);
    let input = OccPattern::collision_free(m, n as usize).unwrap();
    let outcomes = enumerate_outcomes(m, n).unwrap();
    let target = 1.0 / outcomes.len() as f64;
    let mut rng = trial_rng(6, 0);
    let draws: Vec<Vec<f64>> = (0..2000)
        .map(|_| output_distribution(&haar_unitary(m, &mut rng), &input).unwrap())
        .collect();
    for (i, _) in outcomes.iter().enumerate() {
        let xs: Vec<f64> = draws.iter().map(|d| d[i]).collect();
        let (mean, se) = mean_and_se(&xs);
        assert!(
            (mean - target).abs() < 3.0 * se,
            "outcome {i}: {mean} ± {se}"
        );
    }
}

#[test]
fn uniform_cross_term_is_normalization() {
    let mut rng = trial_rng(8, 0);
    let u = haar_unitary(4, &mut rng);
    let input = OccPattern::new(vec![1, 0, 2, 0]);
    let p = output_distribution(&u, &input).unwrap();
    let cross: f64 = p.iter().map(|x| x / p.len() as f64).sum();
    assert!((cross - 1.0 / p.len() as f64).abs() < 1e-12);
    assert!(
        (exact_lxe(&UnitaryMatrix::identity(1), &OccPattern::new(vec![3])).unwrap() - 1.0).abs()
            < 1e-12
    );
}

#[test]
fn anticoncentration_event_frequency() {
    let (m, n) = (6usize, 3u32);
    let tau = 0.5;
    let input = OccPattern::collision_free(m, n as usize).unwrap();
    let size = enumerate_outcomes(m, n).unwrap().len() as f64;
    let mut rng = trial_rng(9, 0);
    let hits: Vec<f64> = (0..4000)
        .map(|_| {
            let p = output_distribution(&haar_unitary(m, &mut rng), &input).unwrap();
            let i = rand::Rng::random_range(&mut rng, 0..p.len());
            if p[i] >= tau / size {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    let (freq, se) = mean_and_se(&hits);
    let bound = (1.0 - tau) * (1.0 - tau) / ac_bs(m as u32, n).unwrap();
    assert!(freq >= bound - 3.0 * se, "{freq} vs {bound}");
}

#[test]
fn probabilities_match_single_photon_amplitudes() {
    let mut rng = trial_rng(10, 0);
    let u = haar_unitary(3, &mut rng);
    let input = OccPattern::new(vec![0, 1, 0]);
    for j in 0..3 {
        let mut out = vec![0; 3];
        out[j] = 1;
        let p = bs_probability(&u, &input, &OccPattern::new(out)).unwrap();
        assert!((p - u.entries()[(j, 1)].norm_sqr()).abs() < 1e-14);
    }
}

#[test]
fn experiment_independent_of_thread_count() {
    let a = lxeb_experiment(5, 2, 6, 200, 77).unwrap();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let b = pool.install(|| lxeb_experiment(5, 2, 6, 200, 77).unwrap());
    assert_eq!(a, b);
    let ref_value = lxe_ref_bs(5, 2, false).unwrap().value_float;
    assert_eq!(a.ref_value, ref_value);
}

#[test]
fn uniform_null_centers_on_zero() {
    let r = lxeb_experiment_with(5, 2, 40, 500, 3, SampleSource::Uniform).unwrap();
    assert!(
        r.fidelity_mean.abs() < 3.0 * r.fidelity_stderr + 1e-3,
        "{} ± {}",
        r.fidelity_mean,
        r.fidelity_stderr
    );
}

#[test]
fn experiment_rejects_infeasible_sizes() {
    assert!(lxeb_experiment(40, 20, 2, 10, 0).is_err());
    assert!(lxeb_experiment(4, 5, 2, 10, 0).is_err());
    assert!(lxeb_experiment(4, 2, 1, 10, 0).is_err());
}
