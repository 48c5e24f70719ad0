//! The quantum-eraser circuit: slice states, exact outcome distributions,
//! and noisy density-matrix evolution.
//!
//! Wire layout (basis order `|i d>`):
//!
//! ```text
//! i: |0> ----------o--- H --- P(theta) --- [H] --- measure D_i
//!                  |
//! d: |0> - Ry(phi)-+--------- Ry(phi') -- delay -- measure D_d
//! ```
//!
//! The CNOT (`o-+`) is controlled by the d qubit and targets the i qubit,
//! turning the `Ry(phi)` preparation into a pair with adjustable
//! entanglement. The bracketed Hadamard is present in the *closed*
//! configuration and absent in the *open* one.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::noise::{delay_dt_to_us, NoiseModel};
use crate::qcore::{DensityMatrix, SingleQubitGate, TwoQubitState, Wire};

/// Probabilities below this threshold are treated as an empty subensemble.
pub const ZERO_WEIGHT_EPS: f64 = 1e-12;

/// Whether the final Hadamard on the i wire is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Configuration {
    /// Interferometer closed: paths recombined, fringes visible.
    Closed,
    /// Interferometer open: which-way outcomes read out directly.
    Open,
}

impl Configuration {
    pub fn as_str(self) -> &'static str {
        match self {
            Configuration::Closed => "closed",
            Configuration::Open => "open",
        }
    }
}

impl std::str::FromStr for Configuration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Configuration::Closed),
            "open" => Ok(Configuration::Open),
            other => Err(Error::ConfigMismatch(format!(
                "unknown configuration '{other}'"
            ))),
        }
    }
}

/// One point of the experiment: angles, configuration, delay, and an
/// optional noise model.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitConfig {
    pub phi: f64,
    pub phi_prime: f64,
    pub theta: f64,
    pub configuration: Configuration,
    pub delay_dt: u64,
    pub noise: Option<NoiseModel>,
}

impl CircuitConfig {
    pub fn new(
        phi: f64,
        phi_prime: f64,
        theta: f64,
        configuration: Configuration,
        delay_dt: u64,
        noise: Option<NoiseModel>,
    ) -> Result<Self> {
        for angle in [phi, phi_prime, theta] {
            if !angle.is_finite() {
                return Err(Error::NonFiniteAngle(angle));
            }
        }
        Ok(Self { phi, phi_prime, theta, configuration, delay_dt, noise })
    }

    /// Noiseless, zero-delay configuration.
    pub fn ideal(
        phi: f64,
        phi_prime: f64,
        theta: f64,
        configuration: Configuration,
    ) -> Result<Self> {
        Self::new(phi, phi_prime, theta, configuration, 0, None)
    }

    /// Same settings with a different phase shift.
    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        Self::new(
            self.phi,
            self.phi_prime,
            theta,
            self.configuration,
            self.delay_dt,
            self.noise.clone(),
        )
    }

    /// Same settings with a different configuration.
    pub fn with_configuration(&self, configuration: Configuration) -> Self {
        Self { configuration, ..self.clone() }
    }

    /// True when two configs describe the same physical point apart from
    /// theta and configuration (used to pair closed and open runs).
    pub fn same_point(&self, other: &Self) -> bool {
        self.phi == other.phi
            && self.phi_prime == other.phi_prime
            && self.delay_dt == other.delay_dt
            && self.noise == other.noise
    }
}

/// The pure state after each gate of the circuit.
#[derive(Debug, Clone)]
pub struct SliceStates {
    pub psi1: TwoQubitState,
    pub psi2: TwoQubitState,
    pub psi3: TwoQubitState,
    pub psi4: TwoQubitState,
    pub psi5: TwoQubitState,
    pub psi6: TwoQubitState,
}

/// Joint distribution over the four (i, d) readout pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    p: [f64; 4],
}

impl JointDistribution {
    /// Checks nonnegativity and normalization to `1e-12`.
    pub fn new(p: [f64; 4]) -> Result<Self> {
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidDistribution("non-finite probability".into()));
        }
        if let Some(bad) = p.iter().find(|x| **x < 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "negative probability {bad:.3e}"
            )));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(Self { p })
    }

    /// Accepts `-1e-10`-scale negative dust from density-matrix diagonals,
    /// clipping it to zero.
    fn from_probs_clipped(p: [f64; 4]) -> Result<Self> {
        let mut clipped = p;
        for x in clipped.iter_mut() {
            if *x < 0.0 {
                if *x < -1e-10 {
                    return Err(Error::InvalidDistribution(format!(
                        "negative probability {x:.3e}"
                    )));
                }
                *x = 0.0;
            }
        }
        Self::new(clipped)
    }

    /// Probability of the joint outcome `(i, d)`.
    pub fn prob(&self, i: u8, d: u8) -> f64 {
        self.p[(2 * i + d) as usize]
    }

    pub fn probs(&self) -> &[f64; 4] {
        &self.p
    }

    /// Marginal probability of the i readout.
    pub fn p_i(&self, outcome: u8) -> f64 {
        self.prob(outcome, 0) + self.prob(outcome, 1)
    }

    /// Marginal probability of the d readout.
    pub fn p_d(&self, outcome: u8) -> f64 {
        self.prob(0, outcome) + self.prob(1, outcome)
    }

    /// Conditional `p(i | d)`; `None` when the conditioning probability
    /// vanishes.
    pub fn cond_i_given_d(&self, i: u8, d: u8) -> Option<f64> {
        let weight = self.p_d(d);
        if weight <= ZERO_WEIGHT_EPS {
            None
        } else {
            Some(self.prob(i, d) / weight)
        }
    }

    /// Probability of the guessing strategy succeeding: both readouts agree.
    pub fn p_succ(&self) -> f64 {
        self.prob(0, 0) + self.prob(1, 1)
    }
}

/// Exact pure states at the six circuit slices.
///
/// Only defined for the noiseless circuit; configs carrying a noise model
/// are rejected in favor of [`noisy_final_dm`].
pub fn build_slices(cfg: &CircuitConfig) -> Result<SliceStates> {
    if cfg.noise.is_some() {
        return Err(Error::NoisePresent);
    }
    let ry_phi = SingleQubitGate::ry(cfg.phi)?;
    let ry_phi_prime = SingleQubitGate::ry(cfg.phi_prime)?;
    let phase = SingleQubitGate::phase(cfg.theta)?;
    let h = SingleQubitGate::hadamard();

    let psi1 = TwoQubitState::ket00().apply(&ry_phi, Wire::D);
    let psi2 = psi1.apply_cnot(Wire::D);
    let psi3 = psi2.apply(&h, Wire::I);
    let psi4 = psi3.apply(&phase, Wire::I);
    let psi5 = psi4.apply(&ry_phi_prime, Wire::D);
    let psi6 = psi5.apply(&h, Wire::I);
    Ok(SliceStates { psi1, psi2, psi3, psi4, psi5, psi6 })
}

/// Exact joint outcome distribution for one configuration point.
///
/// Closed configurations measure the state after the final Hadamard, open
/// ones the state before it. With a noise model present, the distribution
/// is read off the noisy final density matrix instead.
pub fn exact_joint(cfg: &CircuitConfig) -> JointDistribution {
    let probs = if cfg.noise.is_some() {
        let dm = noisy_final_dm(cfg).expect("noise model present");
        let d = dm.diagonal_probs();
        [d[0], d[1], d[2], d[3]]
    } else {
        let slices = build_slices(cfg).expect("noiseless config");
        match cfg.configuration {
            Configuration::Closed => slices.psi6.probabilities(),
            Configuration::Open => slices.psi5.probabilities(),
        }
    };
    JointDistribution::from_probs_clipped(probs).expect("evolution preserves normalization")
}

/// Final 4x4 density matrix of the noisy circuit: a depolarizing channel
/// of the model's CNOT error rate follows the CNOT, and the d qubit
/// relaxes (T1 damping plus pure dephasing) for the configured delay right
/// before its measurement.
pub fn noisy_final_dm(cfg: &CircuitConfig) -> Result<DensityMatrix> {
    let noise = cfg.noise.as_ref().ok_or(Error::NoiseMissing)?;
    evolve_dm(cfg, noise, true, true)
}

/// Density matrix for the CNOT-error study: the `Ry(phi)` preparation is
/// removed and the CNOT (with its depolarizing error) is optional. A
/// missing noise model means an ideal circuit.
pub fn ablation_final_dm(cfg: &CircuitConfig, with_cnot: bool) -> Result<DensityMatrix> {
    let noiseless = NoiseModel::noiseless();
    let noise = cfg.noise.as_ref().unwrap_or(&noiseless);
    evolve_dm(cfg, noise, false, with_cnot)
}

/// Joint distribution read off [`ablation_final_dm`].
pub fn ablation_joint(cfg: &CircuitConfig, with_cnot: bool) -> Result<JointDistribution> {
    let d = ablation_final_dm(cfg, with_cnot)?.diagonal_probs();
    JointDistribution::from_probs_clipped([d[0], d[1], d[2], d[3]])
}

fn evolve_dm(
    cfg: &CircuitConfig,
    noise: &NoiseModel,
    with_ry_phi: bool,
    with_cnot: bool,
) -> Result<DensityMatrix> {
    let h = SingleQubitGate::hadamard();
    let mut rho = TwoQubitState::ket00().projector();
    if with_ry_phi {
        rho = rho.apply_unitary(&SingleQubitGate::ry(cfg.phi)?, Wire::D);
    }
    if with_cnot {
        rho = rho.apply_cnot(Wire::D)?;
        rho = rho.depolarize(noise.cnot_error)?;
    }
    rho = rho.apply_unitary(&h, Wire::I);
    rho = rho.apply_unitary(&SingleQubitGate::phase(cfg.theta)?, Wire::I);
    rho = rho.apply_unitary(&SingleQubitGate::ry(cfg.phi_prime)?, Wire::D);
    if cfg.delay_dt > 0 {
        let t_us = delay_dt_to_us(cfg.delay_dt);
        let (damp, deph) = noise.d_qubit.idle_channels(t_us)?;
        rho = rho.apply_channel(&damp, Wire::D);
        rho = rho.apply_channel(&deph, Wire::D);
    }
    if cfg.configuration == Configuration::Closed {
        rho = rho.apply_unitary(&h, Wire::I);
    }
    // One validation pass on the final matrix catches any drift.
    DensityMatrix::new(rho.matrix().clone())
}

/// Exact joint distributions along a phase-shift grid.
#[derive(Debug, Clone)]
pub struct ExactSweep {
    pub theta_grid: Vec<f64>,
    pub joints: Vec<JointDistribution>,
}

/// Evaluates [`exact_joint`] at every point of a theta grid.
pub fn exact_sweep(cfg_base: &CircuitConfig, resolution: f64) -> Result<ExactSweep> {
    let grid = theta_grid(resolution)?;
    let joints = grid
        .iter()
        .map(|theta| Ok(exact_joint(&cfg_base.with_theta(*theta)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExactSweep { theta_grid: grid, joints })
}

/// Evenly spaced phase-shift grid over `[0, 2pi]`, both endpoints included.
///
/// The requested resolution is snapped to the nearest integer number of
/// steps; it must split the period into at least two.
pub fn theta_grid(resolution: f64) -> Result<Vec<f64>> {
    if !resolution.is_finite() || resolution <= 0.0 {
        return Err(Error::BadResolution(resolution));
    }
    let n = (TAU / resolution).round();
    if !(n >= 2.0) || n > 1e7 {
        return Err(Error::BadResolution(resolution));
    }
    let n = n as u64;
    Ok((0..=n).map(|k| TAU * (k as f64 / n as f64)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::QubitRelaxation;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    type C64 = num_complex::Complex64;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn ideal(phi: f64, phi_prime: f64, theta: f64, conf: Configuration) -> CircuitConfig {
        CircuitConfig::ideal(phi, phi_prime, theta, conf).unwrap()
    }

    #[test]
    fn fully_entangling_preparation_gives_bell_state() {
        let cfg = ideal(FRAC_PI_2, 0.0, 0.0, Configuration::Closed);
        let slices = build_slices(&cfg).unwrap();
        let h = FRAC_1_SQRT_2;
        let bell = TwoQubitState::new([re(h), re(0.0), re(0.0), re(h)]).unwrap();
        assert!(slices.psi2.max_abs_diff(&bell) < 1e-12);
    }

    #[test]
    fn trivial_angles_leave_the_input_state() {
        let cfg = ideal(0.0, 0.0, 0.0, Configuration::Closed);
        let slices = build_slices(&cfg).unwrap();
        assert!(slices.psi6.max_abs_diff(&TwoQubitState::ket00()) < 1e-12);
    }

    #[test]
    fn analysis_slice_matches_closed_form() {
        // psi5 termwise for (phi, phi', theta) = (pi/2, pi/4, pi/3):
        // (1/sqrt2)[cos((phi+phi')/2)|0> + e^{i theta} cos((phi-phi')/2)|1>]|0>
        // + (1/sqrt2)[sin((phi+phi')/2)|0> - e^{i theta} sin((phi-phi')/2)|1>]|1>
        let (phi, phi_p, theta) = (FRAC_PI_2, FRAC_PI_4, FRAC_PI_3);
        let cfg = ideal(phi, phi_p, theta, Configuration::Closed);
        let slices = build_slices(&cfg).unwrap();
        let inv = FRAC_1_SQRT_2;
        let plus = (phi + phi_p) / 2.0;
        let minus = (phi - phi_p) / 2.0;
        let e = C64::from_polar(1.0, theta);
        let expect = TwoQubitState::new([
            re(inv * plus.cos()),
            re(inv * plus.sin()),
            e * re(inv * minus.cos()),
            -e * re(inv * minus.sin()),
        ])
        .unwrap();
        assert!(slices.psi5.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn slices_reject_noise() {
        let mut cfg = ideal(0.3, 0.2, 0.1, Configuration::Closed);
        cfg.noise = Some(NoiseModel::noiseless());
        assert!(matches!(build_slices(&cfg), Err(Error::NoisePresent)));
    }

    #[test]
    fn closed_marginal_follows_interference_formula() {
        let cfg = ideal(FRAC_PI_4, 0.0, 0.0, Configuration::Closed);
        let jd = exact_joint(&cfg);
        let expect = 0.5 * (1.0 + FRAC_PI_4.cos());
        assert!((jd.p_i(0) - expect).abs() < 1e-12);
        assert!((expect - 0.8535533905932737).abs() < 1e-12);
    }

    #[test]
    fn maximal_entanglement_flattens_the_fringe() {
        for theta in [0.0, 0.7, 2.4, 5.5] {
            let cfg = ideal(FRAC_PI_2, 0.3, theta, Configuration::Closed);
            let jd = exact_joint(&cfg);
            assert!((jd.p_i(0) - 0.5).abs() < 1e-12);
            assert!((jd.p_i(1) - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn open_config_at_crossed_analysis_angles_anticorrelates() {
        let cfg = ideal(FRAC_PI_2, FRAC_PI_2, 1.3, Configuration::Open);
        let jd = exact_joint(&cfg);
        assert!(jd.p_succ().abs() < 1e-12);
    }

    #[test]
    fn marginal_identities_hold_on_a_grid() {
        for i in 0..12 {
            for j in 0..12 {
                for k in 0..12 {
                    let phi = 2.0 * PI * i as f64 / 12.0;
                    let phi_p = 2.0 * PI * j as f64 / 12.0;
                    let theta = 2.0 * PI * k as f64 / 12.0;
                    let jd = exact_joint(&ideal(phi, phi_p, theta, Configuration::Closed));
                    assert!((jd.p_i(0) - jd.p_i(1) - phi.cos() * theta.cos()).abs() < 1e-12);
                    assert!((jd.p_d(0) - jd.p_d(1) - phi.cos() * phi_p.cos()).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn analysis_rotation_commutes_past_the_i_wire_gates() {
        let (phi, phi_p, theta) = (1.2, 0.7, 2.1);
        for conf in [Configuration::Closed, Configuration::Open] {
            let reference = exact_joint(&ideal(phi, phi_p, theta, conf));
            // Alternative order: Ry(phi') applied right after the CNOT.
            let h = SingleQubitGate::hadamard();
            let mut s = TwoQubitState::ket00()
                .apply(&SingleQubitGate::ry(phi).unwrap(), Wire::D)
                .apply_cnot(Wire::D)
                .apply(&SingleQubitGate::ry(phi_p).unwrap(), Wire::D)
                .apply(&h, Wire::I)
                .apply(&SingleQubitGate::phase(theta).unwrap(), Wire::I);
            if conf == Configuration::Closed {
                s = s.apply(&h, Wire::I);
            }
            let p = s.probabilities();
            for idx in 0..4 {
                assert!((p[idx] - reference.probs()[idx]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn noiseless_model_reproduces_pure_projector() {
        let mut cfg = ideal(0.9, 0.4, 1.7, Configuration::Closed);
        cfg.noise = Some(NoiseModel::noiseless());
        let dm = noisy_final_dm(&cfg).unwrap();
        let pure = build_slices(&ideal(0.9, 0.4, 1.7, Configuration::Closed))
            .unwrap()
            .psi6
            .projector();
        assert!(dm.max_abs_diff(&pure) < 1e-12);
    }

    #[test]
    fn dm_path_requires_noise() {
        let cfg = ideal(0.1, 0.2, 0.3, Configuration::Closed);
        assert!(matches!(noisy_final_dm(&cfg), Err(Error::NoiseMissing)));
    }

    #[test]
    fn long_delay_with_finite_relaxation_erases_conditional_contrast() {
        // At phi = pi/2, phi' = 0 the 0_d-conditional fringe has full
        // contrast; amplitude damping over many T1 washes it out.
        let noise = NoiseModel::new(
            QubitRelaxation::new(100.0, 100.0).unwrap(),
            QubitRelaxation::new(100.0, 100.0).unwrap(),
            0.0,
        )
        .unwrap();
        let v0d = |delay_dt: u64| -> f64 {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for theta in theta_grid(0.04 * PI).unwrap() {
                let cfg = CircuitConfig::new(
                    FRAC_PI_2,
                    0.0,
                    theta,
                    Configuration::Closed,
                    delay_dt,
                    Some(noise.clone()),
                )
                .unwrap();
                let p = exact_joint(&cfg).cond_i_given_d(0, 0).unwrap();
                lo = lo.min(p);
                hi = hi.max(p);
            }
            (hi - lo) / (hi + lo)
        };
        assert!((v0d(0) - 1.0).abs() < 1e-10);
        // 10^8 dt = 22 ms >> T1 = 100 us.
        assert!(v0d(100_000_000) < 1e-3);
        // Monotone in between.
        let mid = v0d(50_000_000);
        assert!(mid <= v0d(0) + 1e-12 && v0d(100_000_000) <= mid + 1e-12);
    }

    #[test]
    fn delay_presets_convert_via_dt() {
        let noise = NoiseModel::preset("auckland-pair-ii").unwrap();
        for (delay, t_us) in [(50_000u64, 11.0), (500_000, 110.0)] {
            let cfg = CircuitConfig::new(
                FRAC_PI_2,
                0.0,
                0.0,
                Configuration::Closed,
                delay,
                Some(noise.clone()),
            )
            .unwrap();
            let dm = noisy_final_dm(&cfg).unwrap();
            assert!((dm.trace() - 1.0).abs() < 1e-10);
            assert!((delay_dt_to_us(delay) - t_us).abs() < 1e-9);
        }
    }

    #[test]
    fn theta_grid_counts() {
        assert_eq!(theta_grid(0.04 * PI).unwrap().len(), 51);
        let coarse = theta_grid(PI).unwrap();
        assert_eq!(coarse.len(), 3);
        assert!(coarse[0] == 0.0 && (coarse[1] - PI).abs() < 1e-15 && coarse[2] == TAU);
        assert!(theta_grid(8.0).is_err());
        assert!(theta_grid(-0.1).is_err());
        let grid = theta_grid(0.04 * PI).unwrap();
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
    }
}
