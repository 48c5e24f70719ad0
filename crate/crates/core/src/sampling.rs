//! Seeded Monte-Carlo shot sampling of joint outcomes.
//!
//! Sampling is a pure function of `(config, n_shots, seed)`: the same
//! inputs always give bitwise-identical counts. Sweeps derive one seed per
//! grid point with a splittable scheme, so points can be sampled in any
//! order (or concurrently) without changing the result.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Binomial, Distribution};

use crate::circuit::{exact_joint, theta_grid, CircuitConfig, JointDistribution};
use crate::error::{Error, Result};

/// Joint outcome counts for one configuration point.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleCounts {
    pub n00: u64,
    pub n01: u64,
    pub n10: u64,
    pub n11: u64,
    pub n_shots: u64,
    /// Snapshot of the sampled configuration.
    pub cfg: CircuitConfig,
}

impl EnsembleCounts {
    /// Counts in basis order `(0,0), (0,1), (1,0), (1,1)`.
    pub fn counts(&self) -> [u64; 4] {
        [self.n00, self.n01, self.n10, self.n11]
    }

    /// Count of shots with the given joint outcome.
    pub fn count(&self, i: u8, d: u8) -> u64 {
        self.counts()[(2 * i + d) as usize]
    }

    /// Shots whose d readout equals `outcome`.
    pub fn d_subtotal(&self, outcome: u8) -> u64 {
        self.count(0, outcome) + self.count(1, outcome)
    }

    /// Shots whose i readout equals `outcome`.
    pub fn i_subtotal(&self, outcome: u8) -> u64 {
        self.count(outcome, 0) + self.count(outcome, 1)
    }
}

/// Counts for every point of a phase-shift sweep.
#[derive(Debug, Clone)]
pub struct SweepRecord {
    /// Strictly increasing grid over `[0, 2pi]`.
    pub theta_grid: Vec<f64>,
    /// One entry per grid point, in grid order.
    pub counts: Vec<EnsembleCounts>,
}

impl SweepRecord {
    /// Sums the counts of all grid points (used for the theta-independent
    /// open configuration). The config snapshot is taken from the first
    /// point.
    pub fn pooled(&self) -> Result<EnsembleCounts> {
        let first = self.counts.first().ok_or(Error::EmptySweep)?;
        let mut pooled = EnsembleCounts {
            n00: 0,
            n01: 0,
            n10: 0,
            n11: 0,
            n_shots: 0,
            cfg: first.cfg.clone(),
        };
        for c in &self.counts {
            pooled.n00 += c.n00;
            pooled.n01 += c.n01;
            pooled.n10 += c.n10;
            pooled.n11 += c.n11;
            pooled.n_shots += c.n_shots;
        }
        Ok(pooled)
    }
}

/// SplitMix64 finalizer; derives an independent stream seed from a master
/// seed and a point index.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Draws a multinomial sample over the four outcomes using chained
/// binomials, so the cost is independent of the shot count.
fn multinomial4(rng: &mut ChaCha12Rng, n: u64, p: &[f64; 4]) -> [u64; 4] {
    let mut out = [0u64; 4];
    let mut remaining = n;
    let mut mass_left = 1.0f64;
    for k in 0..3 {
        if remaining == 0 {
            break;
        }
        let cond = if mass_left > 0.0 {
            (p[k] / mass_left).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let draw = if cond >= 1.0 {
            remaining
        } else if cond <= 0.0 {
            0
        } else {
            Binomial::new(remaining, cond)
                .expect("probability in (0, 1)")
                .sample(rng)
        };
        out[k] = draw;
        remaining -= draw;
        mass_left = (mass_left - p[k]).max(0.0);
    }
    out[3] = remaining;
    out
}

/// Samples `n_shots` i.i.d. joint outcomes from the exact distribution of
/// `cfg` with a deterministic generator seeded by `seed`.
pub fn sample_shots(cfg: &CircuitConfig, n_shots: u64, seed: u64) -> Result<EnsembleCounts> {
    if n_shots == 0 {
        return Err(Error::TooFewShots { min: 1, got: 0 });
    }
    let jd = exact_joint(cfg);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let [n00, n01, n10, n11] = multinomial4(&mut rng, n_shots, jd.probs());
    Ok(EnsembleCounts { n00, n01, n10, n11, n_shots, cfg: cfg.clone() })
}

/// Runs one theta sweep: `cfg_base` is sampled at every grid point with a
/// per-point seed `derive_seed(seed, point index)`.
pub fn theta_sweep(
    cfg_base: &CircuitConfig,
    resolution: f64,
    n_shots: u64,
    seed: u64,
) -> Result<SweepRecord> {
    let grid = theta_grid(resolution)?;
    let mut counts = Vec::with_capacity(grid.len());
    for (idx, theta) in grid.iter().enumerate() {
        let cfg = cfg_base.with_theta(*theta)?;
        counts.push(sample_shots(&cfg, n_shots, derive_seed(seed, idx as u64))?);
    }
    Ok(SweepRecord { theta_grid: grid, counts })
}

/// Relative frequencies of the four outcomes.
pub fn empirical_joint(counts: &EnsembleCounts) -> JointDistribution {
    let n = counts.n_shots as f64;
    JointDistribution::new([
        counts.n00 as f64 / n,
        counts.n01 as f64 / n,
        counts.n10 as f64 / n,
        counts.n11 as f64 / n,
    ])
    .expect("integer counts normalize exactly")
}
