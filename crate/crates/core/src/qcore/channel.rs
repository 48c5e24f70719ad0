//! Kraus channels on one qubit.

use nalgebra::Matrix2;

use super::gates::SingleQubitGate;
use super::{C64, TOL_EIGEN};
use crate::error::{Error, Result};

/// A completely positive trace-preserving map given by 2x2 Kraus operators
/// `K_j` with `sum_j K_j^dag K_j = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    ops: Vec<Matrix2<C64>>,
}

impl KrausChannel {
    /// Validates completeness to `1e-10`.
    pub fn new(ops: Vec<Matrix2<C64>>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::InvalidChannel("no Kraus operators".into()));
        }
        if ops
            .iter()
            .flat_map(|k| k.iter())
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidChannel("non-finite Kraus entry".into()));
        }
        let mut sum = Matrix2::<C64>::zeros();
        for k in &ops {
            sum += k.adjoint() * k;
        }
        let dev = (sum - Matrix2::<C64>::identity())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if dev > TOL_EIGEN {
            return Err(Error::IncompleteChannel(dev));
        }
        Ok(Self { ops })
    }

    /// The trivial channel.
    pub fn identity() -> Self {
        Self { ops: vec![Matrix2::identity()] }
    }

    /// Amplitude damping with decay probability `p`:
    /// `K0 = [[1, 0], [0, sqrt(1-p)]]`, `K1 = [[0, sqrt(p)], [0, 0]]`.
    pub fn amplitude_damping(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || !p.is_finite() {
            return Err(Error::InvalidChannel(format!(
                "damping probability must lie in [0, 1], got {p}"
            )));
        }
        let zero = C64::new(0.0, 0.0);
        let k0 = Matrix2::new(
            C64::new(1.0, 0.0),
            zero,
            zero,
            C64::new((1.0 - p).sqrt(), 0.0),
        );
        let k1 = Matrix2::new(zero, C64::new(p.sqrt(), 0.0), zero, zero);
        Ok(Self { ops: vec![k0, k1] })
    }

    /// Phase flip with probability `q`: `{sqrt(1-q) 1, sqrt(q) Z}`.
    ///
    /// Off-diagonal elements are multiplied by `1 - 2q`, so full dephasing
    /// corresponds to `q = 1/2`.
    pub fn dephasing(q: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&q) || !q.is_finite() {
            return Err(Error::InvalidChannel(format!(
                "dephasing probability must lie in [0, 1/2], got {q}"
            )));
        }
        let id = Matrix2::identity() * C64::new((1.0 - q).sqrt(), 0.0);
        let z = SingleQubitGate::pauli_z().matrix() * C64::new(q.sqrt(), 0.0);
        Ok(Self { ops: vec![id, z] })
    }

    pub fn ops(&self) -> &[Matrix2<C64>] {
        &self.ops
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{DensityMatrix, Wire};
    use nalgebra::DMatrix;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn identity_channel_leaves_state_unchanged() {
        let rho = DensityMatrix::new(DMatrix::from_row_slice(
            2,
            2,
            &[re(0.7), re(0.2), re(0.2), re(0.3)],
        ))
        .unwrap();
        let out = rho.apply_channel(&KrausChannel::identity(), Wire::I);
        assert!(out.max_abs_diff(&rho) < 1e-15);
    }

    #[test]
    fn full_dephasing_kills_coherence() {
        let plus = DensityMatrix::new(DMatrix::from_row_slice(
            2,
            2,
            &[re(0.5), re(0.5), re(0.5), re(0.5)],
        ))
        .unwrap();
        let out = plus.apply_channel(&KrausChannel::dephasing(0.5).unwrap(), Wire::I);
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(out.max_abs_diff(&mixed) < 1e-12);
    }

    #[test]
    fn complete_damping_resets_excited_state() {
        let excited = DensityMatrix::new(DMatrix::from_row_slice(
            2,
            2,
            &[re(0.0), re(0.0), re(0.0), re(1.0)],
        ))
        .unwrap();
        let out = excited.apply_channel(&KrausChannel::amplitude_damping(1.0).unwrap(), Wire::I);
        assert!((out.entry(0, 0) - re(1.0)).norm() < 1e-15);
        assert!(out.entry(1, 1).norm() < 1e-15);
    }

    #[test]
    fn incomplete_kraus_set_rejected() {
        let half = Matrix2::identity() * re(0.5);
        assert!(matches!(
            KrausChannel::new(vec![half]),
            Err(Error::IncompleteChannel(_))
        ));
        assert!(KrausChannel::amplitude_damping(1.3).is_err());
        assert!(KrausChannel::dephasing(0.8).is_err());
    }

    #[test]
    fn channels_preserve_trace() {
        let rho = DensityMatrix::new(DMatrix::from_row_slice(
            2,
            2,
            &[re(0.6), C64::new(0.1, 0.2), C64::new(0.1, -0.2), re(0.4)],
        ))
        .unwrap();
        for ch in [
            KrausChannel::identity(),
            KrausChannel::amplitude_damping(0.37).unwrap(),
            KrausChannel::dephasing(0.21).unwrap(),
        ] {
            let out = rho.apply_channel(&ch, Wire::I);
            assert!((out.trace() - 1.0).abs() < 1e-10);
        }
    }
}
