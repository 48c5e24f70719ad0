//! Device noise models: per-qubit T1/T2 relaxation and a depolarizing
//! CNOT error, with presets taken from published calibration snapshots.

use crate::error::{Error, Result};
use crate::qcore::KrausChannel;

/// Sampling timestep of the qubit drive channel, in nanoseconds.
pub const DT_NS: f64 = 0.22;

/// Converts a delay expressed in `dt` units to microseconds.
pub fn delay_dt_to_us(delay_dt: u64) -> f64 {
    delay_dt as f64 * DT_NS * 1e-3
}

/// T1/T2 relaxation times of one physical qubit, in microseconds.
///
/// Infinite times are allowed and mean the corresponding process is absent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitRelaxation {
    pub t1_us: f64,
    pub t2_us: f64,
}

impl QubitRelaxation {
    /// Requires positive times and the physicality bound `T2 <= 2 T1`.
    pub fn new(t1_us: f64, t2_us: f64) -> Result<Self> {
        if t1_us.is_nan() || t2_us.is_nan() || t1_us <= 0.0 || t2_us <= 0.0 {
            return Err(Error::InvalidNoise(format!(
                "relaxation times must be positive, got T1={t1_us}, T2={t2_us}"
            )));
        }
        if t2_us > 2.0 * t1_us {
            return Err(Error::InvalidNoise(format!(
                "T2={t2_us} exceeds 2*T1={}",
                2.0 * t1_us
            )));
        }
        Ok(Self { t1_us, t2_us })
    }

    /// No relaxation at all.
    pub fn ideal() -> Self {
        Self { t1_us: f64::INFINITY, t2_us: f64::INFINITY }
    }

    /// Channels describing an idle period of `t_us` microseconds:
    /// amplitude damping with `p = 1 - exp(-t/T1)` composed with pure
    /// dephasing whose rate is the T2 excess over the damping-induced
    /// coherence decay, `max(0, 1/T2 - 1/(2 T1))`.
    ///
    /// The two maps commute, so the returned order is immaterial.
    pub fn idle_channels(&self, t_us: f64) -> Result<(KrausChannel, KrausChannel)> {
        if !(t_us >= 0.0) {
            return Err(Error::InvalidNoise(format!(
                "idle time must be nonnegative, got {t_us}"
            )));
        }
        let p_damp = if self.t1_us.is_finite() {
            1.0 - (-t_us / self.t1_us).exp()
        } else {
            0.0
        };
        let gamma_phi = (1.0 / self.t2_us - 0.5 / self.t1_us).max(0.0);
        let lambda = (-t_us * gamma_phi).exp();
        let q = 0.5 * (1.0 - lambda);
        Ok((
            KrausChannel::amplitude_damping(p_damp)?,
            KrausChannel::dephasing(q)?,
        ))
    }
}

/// Noise model for the i-d qubit pair: relaxation per qubit plus a
/// two-qubit depolarizing error attached to the CNOT.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseModel {
    pub i_qubit: QubitRelaxation,
    pub d_qubit: QubitRelaxation,
    pub cnot_error: f64,
}

impl NoiseModel {
    pub fn new(
        i_qubit: QubitRelaxation,
        d_qubit: QubitRelaxation,
        cnot_error: f64,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&cnot_error) || !cnot_error.is_finite() {
            return Err(Error::InvalidNoise(format!(
                "CNOT error rate must lie in [0, 1], got {cnot_error}"
            )));
        }
        Ok(Self { i_qubit, d_qubit, cnot_error })
    }

    /// No decoherence, no gate error.
    pub fn noiseless() -> Self {
        Self {
            i_qubit: QubitRelaxation::ideal(),
            d_qubit: QubitRelaxation::ideal(),
            cnot_error: 0.0,
        }
    }

    /// Calibration presets for the qubit pairs used in the experiments;
    /// (T1, T2) are listed as (i qubit, d qubit).
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "auckland-pair-i" => Self::new(
                QubitRelaxation::new(277.64, 359.54)?,
                QubitRelaxation::new(221.56, 202.29)?,
                3.653e-3,
            ),
            "auckland-pair-ii" => Self::new(
                QubitRelaxation::new(200.88, 203.58)?,
                QubitRelaxation::new(250.98, 246.0)?,
                6.071e-3,
            ),
            "toronto-pair-iii" => Self::new(
                QubitRelaxation::new(136.34, 113.5)?,
                QubitRelaxation::new(117.56, 151.47)?,
                1.17e-2,
            ),
            other => Err(Error::UnknownPreset(other.to_string())),
        }
    }

    /// Names accepted by [`NoiseModel::preset`].
    pub fn preset_names() -> [&'static str; 3] {
        ["auckland-pair-i", "auckland-pair-ii", "toronto-pair-iii"]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delay_unit_conversion() {
        assert!((delay_dt_to_us(50_000) - 11.0).abs() < 1e-9);
        assert!((delay_dt_to_us(500_000) - 110.0).abs() < 1e-9);
        assert_eq!(delay_dt_to_us(0), 0.0);
    }

    #[test]
    fn presets_load_with_reported_values() {
        let m = NoiseModel::preset("auckland-pair-ii").unwrap();
        assert!((m.d_qubit.t1_us - 250.98).abs() < 1e-9);
        assert!((m.d_qubit.t2_us - 246.0).abs() < 1e-9);
        assert!((m.cnot_error - 6.071e-3).abs() < 1e-12);
        for name in NoiseModel::preset_names() {
            assert!(NoiseModel::preset(name).is_ok());
        }
        assert!(matches!(
            NoiseModel::preset("nairobi"),
            Err(Error::UnknownPreset(_))
        ));
    }

    #[test]
    fn unphysical_parameters_rejected() {
        assert!(QubitRelaxation::new(-1.0, 10.0).is_err());
        assert!(QubitRelaxation::new(10.0, 0.0).is_err());
        // T2 > 2 T1 is unphysical for the damping + dephasing decomposition.
        assert!(QubitRelaxation::new(10.0, 21.0).is_err());
        // T2 > T1 (but <= 2 T1) is accepted, as reported by calibration.
        assert!(QubitRelaxation::new(277.64, 359.54).is_ok());
        assert!(NoiseModel::new(QubitRelaxation::ideal(), QubitRelaxation::ideal(), 1.2).is_err());
    }

    #[test]
    fn ideal_relaxation_yields_identity_channels() {
        let (damp, deph) = QubitRelaxation::ideal().idle_channels(1e6).unwrap();
        // p = 0 and q = 0: the first Kraus operator is the identity.
        assert!((damp.ops()[0] - nalgebra::Matrix2::identity())
            .iter()
            .all(|z| z.norm() < 1e-15));
        assert!((deph.ops()[0] - nalgebra::Matrix2::identity())
            .iter()
            .all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn idle_channel_strengths_match_exponentials() {
        let q = QubitRelaxation::new(100.0, 120.0).unwrap();
        let (damp, _) = q.idle_channels(50.0).unwrap();
        let p = 1.0 - (-0.5f64).exp();
        // K1[0][1] = sqrt(p)
        assert!((damp.ops()[1][(0, 1)].re - p.sqrt()).abs() < 1e-12);
    }
}
