//! Randomized-measurement estimation of the degree of purity and the
//! second-order Rényi entropy `S2 = -log2(purity)` of the reduced i-qubit
//! state right after the entangling preparation (slice 2).
//!
//! Protocol: draw Haar-random single-qubit unitaries `U_r`, rotate the i
//! qubit by `U_r`, collect computational-basis shots, and combine
//! same-setting outcome correlations with `(-2)^{-Hamming}` weights. For a
//! single qubit the per-setting statistic reduces to
//! `2 (P(0)^2 + P(1)^2 - P(0) P(1))`, estimated without bias by replacing
//! `P(s) P(s')` with the n(n-1)-normalized pair frequencies.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Binomial, Distribution};

use crate::circuit::{build_slices, CircuitConfig, Configuration};
use crate::error::{Error, Result};
use crate::qcore::{haar_unitary, DensityMatrix, Wire};
use crate::sampling::derive_seed;

/// Parameters of one randomized-measurement run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandMeasPlan {
    /// Number of random measurement settings; at least 2.
    pub n_unitaries: usize,
    /// Shots per setting; at least 2 (the unbiased pair estimator divides
    /// by n(n-1)).
    pub n_shots_per_unitary: u64,
    pub seed: u64,
}

impl RandMeasPlan {
    pub fn new(n_unitaries: usize, n_shots_per_unitary: u64, seed: u64) -> Result<Self> {
        if n_unitaries < 2 {
            return Err(Error::InvalidPlan(format!(
                "need at least 2 unitaries, got {n_unitaries}"
            )));
        }
        if n_shots_per_unitary < 2 {
            return Err(Error::InvalidPlan(format!(
                "need at least 2 shots per unitary, got {n_shots_per_unitary}"
            )));
        }
        Ok(Self { n_unitaries, n_shots_per_unitary, seed })
    }
}

/// Estimated purity and Rényi-2 entropy.
///
/// Small samples can push `gamma_hat` below zero; it is reported as-is and
/// `s2_hat` is `None` in that case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PurityEstimate {
    pub gamma_hat: f64,
    pub s2_hat: Option<f64>,
    /// Bootstrap standard error over measurement settings.
    pub std_err: f64,
}

/// Per-setting purity statistic from exact outcome probabilities:
/// `2 (p0^2 + p1^2 - p0 p1)`. Its Haar average equals `Tr(rho^2)`.
pub fn setting_statistic_exact(p0: f64) -> f64 {
    let p1 = 1.0 - p0;
    2.0 * (p0 * p0 + p1 * p1 - p0 * p1)
}

/// Unbiased per-setting statistic from counts: pair frequencies
/// `n_s (n_s - 1) / (n (n - 1))` and `n_0 n_1 / (n (n - 1))` replace the
/// probability products.
pub fn setting_statistic_counts(n0: u64, n_shots: u64) -> f64 {
    let n1 = n_shots - n0;
    let pairs = (n_shots * (n_shots - 1)) as f64;
    let x00 = (n0 * n0.saturating_sub(1)) as f64 / pairs;
    let x11 = (n1 * n1.saturating_sub(1)) as f64 / pairs;
    let x01 = (n0 * n1) as f64 / pairs;
    2.0 * (x00 + x11 - x01)
}

/// Runs the protocol on the reduced i-qubit state of slice 2 for the given
/// preparation angle. Deterministic in `(phi, plan)`.
pub fn estimate_purity(phi: f64, plan: &RandMeasPlan) -> Result<PurityEstimate> {
    RandMeasPlan::new(plan.n_unitaries, plan.n_shots_per_unitary, plan.seed)?;
    let cfg = CircuitConfig::ideal(phi, 0.0, 0.0, Configuration::Closed)?;
    let rho = build_slices(&cfg)?.psi2.reduced(Wire::I);
    let per_setting = simulate_settings(&rho, plan);
    let gamma_hat = mean(&per_setting);
    let std_err = bootstrap_std_err(&per_setting, derive_seed(plan.seed, u64::MAX), 200);
    Ok(PurityEstimate {
        gamma_hat,
        s2_hat: (gamma_hat > 0.0).then(|| -gamma_hat.log2()),
        std_err,
    })
}

fn simulate_settings(rho: &DensityMatrix, plan: &RandMeasPlan) -> Vec<f64> {
    let n = plan.n_shots_per_unitary;
    (0..plan.n_unitaries)
        .map(|r| {
            let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(plan.seed, r as u64));
            let u = haar_unitary(&mut rng);
            let rotated = rho.apply_unitary(&u, Wire::I);
            let p0 = rotated.entry(0, 0).re.clamp(0.0, 1.0);
            let n0 = if p0 >= 1.0 {
                n
            } else if p0 <= 0.0 {
                0
            } else {
                Binomial::new(n, p0).expect("probability in (0, 1)").sample(&mut rng)
            };
            setting_statistic_counts(n0, n)
        })
        .collect()
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn bootstrap_std_err(xs: &[f64], seed: u64, resamples: usize) -> f64 {
    use rand::Rng;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let n = xs.len();
    let mut means = Vec::with_capacity(resamples);
    for _ in 0..resamples {
        let mut acc = 0.0;
        for _ in 0..n {
            acc += xs[rng.random_range(0..n)];
        }
        means.push(acc / n as f64);
    }
    let m = mean(&means);
    (means.iter().map(|x| (x - m).powi(2)).sum::<f64>() / resamples as f64).sqrt()
}
