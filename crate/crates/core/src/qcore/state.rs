//! Pure two-qubit states in the `|i d>` basis.

use super::density::DensityMatrix;
use super::gates::SingleQubitGate;
use super::{C64, TOL_EXACT};
use crate::error::{Error, Result};

/// Selects one of the two circuit wires.
///
/// `I` is the interference qubit (leftmost ket index), `D` the
/// delayed-choice qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Wire {
    I,
    D,
}

impl Wire {
    pub fn other(self) -> Self {
        match self {
            Wire::I => Wire::D,
            Wire::D => Wire::I,
        }
    }
}

/// A normalized pure state of the (i, d) qubit pair.
///
/// Amplitudes are stored for `|00>, |01>, |10>, |11>` in that order, with
/// the i outcome as the leftmost bit: index `2*i + d`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState {
    amps: [C64; 4],
}

impl TwoQubitState {
    /// Builds a state from four amplitudes, checking finiteness and
    /// normalization to `1e-12`.
    pub fn new(amps: [C64; 4]) -> Result<Self> {
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteAmplitude);
        }
        let norm2: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > TOL_EXACT {
            return Err(Error::NotNormalized((norm2 - 1.0).abs()));
        }
        Ok(Self { amps })
    }

    /// Internal constructor for states produced by norm-preserving ops.
    pub(crate) fn from_amps_unchecked(amps: [C64; 4]) -> Self {
        debug_assert!({
            let n2: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
            (n2 - 1.0).abs() < 1e-9
        });
        Self { amps }
    }

    /// The computational basis state `|00>`.
    pub fn ket00() -> Self {
        let zero = C64::new(0.0, 0.0);
        Self { amps: [C64::new(1.0, 0.0), zero, zero, zero] }
    }

    pub fn amps(&self) -> &[C64; 4] {
        &self.amps
    }

    /// Amplitude of `|i d>`.
    pub fn amp(&self, i: u8, d: u8) -> C64 {
        self.amps[(2 * i + d) as usize]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Born probabilities of the four joint outcomes, in basis order.
    pub fn probabilities(&self) -> [f64; 4] {
        [
            self.amps[0].norm_sqr(),
            self.amps[1].norm_sqr(),
            self.amps[2].norm_sqr(),
            self.amps[3].norm_sqr(),
        ]
    }

    /// Applies a single-qubit gate to the chosen wire: `(g x 1)` on `I`,
    /// `(1 x g)` on `D`.
    pub fn apply(&self, g: &SingleQubitGate, wire: Wire) -> Self {
        let m = g.matrix();
        let a = &self.amps;
        let amps = match wire {
            // index 2*i + d; gate mixes the i bit for fixed d
            Wire::I => [
                m[(0, 0)] * a[0] + m[(0, 1)] * a[2],
                m[(0, 0)] * a[1] + m[(0, 1)] * a[3],
                m[(1, 0)] * a[0] + m[(1, 1)] * a[2],
                m[(1, 0)] * a[1] + m[(1, 1)] * a[3],
            ],
            // gate mixes the d bit for fixed i
            Wire::D => [
                m[(0, 0)] * a[0] + m[(0, 1)] * a[1],
                m[(1, 0)] * a[0] + m[(1, 1)] * a[1],
                m[(0, 0)] * a[2] + m[(0, 1)] * a[3],
                m[(1, 0)] * a[2] + m[(1, 1)] * a[3],
            ],
        };
        Self::from_amps_unchecked(amps)
    }

    /// CNOT as a basis permutation: the target bit is flipped wherever the
    /// control bit is 1.
    pub fn apply_cnot(&self, control: Wire) -> Self {
        let a = &self.amps;
        let amps = match control {
            // control i, target d: |1 d> -> |1 !d>
            Wire::I => [a[0], a[1], a[3], a[2]],
            // control d, target i: |i 1> -> |!i 1>
            Wire::D => [a[0], a[3], a[2], a[1]],
        };
        Self::from_amps_unchecked(amps)
    }

    /// Reduced density matrix of the kept wire (partial trace over the
    /// other wire).
    pub fn reduced(&self, keep: Wire) -> DensityMatrix {
        let a = &self.amps;
        let pick = |r: u8, c: u8, t: u8| -> (C64, C64) {
            match keep {
                Wire::I => (a[(2 * r + t) as usize], a[(2 * c + t) as usize]),
                Wire::D => (a[(2 * t + r) as usize], a[(2 * t + c) as usize]),
            }
        };
        let mut m = [[C64::new(0.0, 0.0); 2]; 2];
        for r in 0..2u8 {
            for c in 0..2u8 {
                let mut sum = C64::new(0.0, 0.0);
                for t in 0..2u8 {
                    let (x, y) = pick(r, c, t);
                    sum += x * y.conj();
                }
                m[r as usize][c as usize] = sum;
            }
        }
        DensityMatrix::from_qubit_entries_unchecked(m)
    }

    /// The rank-one projector `|psi><psi|` as a 4x4 density matrix.
    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }

    /// Largest amplitude-wise deviation from another state.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}
