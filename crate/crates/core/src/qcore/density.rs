//! Density matrices for one qubit (2x2) and the qubit pair (4x4).

use nalgebra::DMatrix;

use super::channel::KrausChannel;
use super::gates::SingleQubitGate;
use super::state::{TwoQubitState, Wire};
use super::{C64, TOL_EIGEN, TOL_EXACT};
use crate::error::{Error, Result};

/// A Hermitian, unit-trace, positive-semidefinite matrix of dimension
/// 2 (one qubit) or 4 (the i-d pair, basis order `|00>, |01>, |10>, |11>`).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validates Hermiticity (`1e-12`), unit trace (`1e-12`), and
    /// eigenvalues `>= -1e-10`.
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        let dim = m.nrows();
        if !(dim == 2 || dim == 4) || m.ncols() != dim {
            return Err(Error::InvalidDensityMatrix(format!(
                "dimension must be 2x2 or 4x4, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidDensityMatrix("non-finite entry".into()));
        }
        let herm_dev = (&m - m.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if herm_dev > TOL_EXACT {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (deviation {herm_dev:.3e})"
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TOL_EXACT || tr.im.abs() > TOL_EXACT {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace is {tr}, expected 1"
            )));
        }
        let dm = Self { m };
        if let Some(min) = dm.eigenvalues().first() {
            if *min < -TOL_EIGEN {
                return Err(Error::InvalidDensityMatrix(format!(
                    "negative eigenvalue {min:.3e}"
                )));
            }
        }
        Ok(dm)
    }

    pub(crate) fn from_matrix_unchecked(m: DMatrix<C64>) -> Self {
        Self { m }
    }

    pub(crate) fn from_qubit_entries_unchecked(e: [[C64; 2]; 2]) -> Self {
        Self {
            m: DMatrix::from_row_slice(2, 2, &[e[0][0], e[0][1], e[1][0], e[1][1]]),
        }
    }

    /// `|psi><psi|` of a pure two-qubit state.
    pub fn from_pure(state: &TwoQubitState) -> Self {
        let a = state.amps();
        let mut m = DMatrix::zeros(4, 4);
        for r in 0..4 {
            for c in 0..4 {
                m[(r, c)] = a[r] * a[c].conj();
            }
        }
        Self { m }
    }

    /// Maximally mixed state of the given dimension (2 or 4).
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if !(dim == 2 || dim == 4) {
            return Err(Error::InvalidDensityMatrix(format!(
                "dimension must be 2 or 4, got {dim}"
            )));
        }
        let scale = C64::new(1.0 / dim as f64, 0.0);
        Ok(Self { m: DMatrix::identity(dim, dim) * scale })
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn entry(&self, r: usize, c: usize) -> C64 {
        self.m[(r, c)]
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    /// Real eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut eigs: Vec<f64> = self.m.clone().symmetric_eigenvalues().iter().copied().collect();
        eigs.sort_by(|a, b| a.total_cmp(b));
        eigs
    }

    /// Conjugation by a single-qubit unitary on the chosen wire.
    ///
    /// On a 2x2 matrix the wire argument is irrelevant and ignored.
    pub fn apply_unitary(&self, g: &SingleQubitGate, wire: Wire) -> Self {
        let u = self.lift(g.matrix(), wire);
        Self { m: &u * &self.m * u.adjoint() }
    }

    /// CNOT conjugation on the 4x4 matrix; the target bit flips wherever
    /// the control bit is 1.
    pub fn apply_cnot(&self, control: Wire) -> Result<Self> {
        if self.dim() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: self.dim() });
        }
        let perm: [usize; 4] = match control {
            Wire::I => [0, 1, 3, 2],
            Wire::D => [0, 3, 2, 1],
        };
        let mut m = DMatrix::zeros(4, 4);
        for r in 0..4 {
            for c in 0..4 {
                m[(perm[r], perm[c])] = self.m[(r, c)];
            }
        }
        Ok(Self { m })
    }

    /// Applies a Kraus channel `rho -> sum_j K_j rho K_j^dag` to the chosen
    /// wire. On a 2x2 matrix the wire argument is ignored.
    pub fn apply_channel(&self, ch: &KrausChannel, wire: Wire) -> Self {
        let mut out = DMatrix::zeros(self.dim(), self.dim());
        for k in ch.ops() {
            let lifted = self.lift(k, wire);
            out += &lifted * &self.m * lifted.adjoint();
        }
        Self { m: out }
    }

    /// Uniform depolarizing: `rho -> (1 - strength) rho + strength I/dim`.
    pub fn depolarize(&self, strength: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&strength) || !strength.is_finite() {
            return Err(Error::InvalidChannel(format!(
                "depolarizing strength must lie in [0, 1], got {strength}"
            )));
        }
        let dim = self.dim();
        let mixed = DMatrix::identity(dim, dim) * C64::new(strength / dim as f64, 0.0);
        Ok(Self { m: &self.m * C64::new(1.0 - strength, 0.0) + mixed })
    }

    /// Partial trace of the 4x4 pair matrix down to the kept wire.
    pub fn partial_trace(&self, keep: Wire) -> Result<DensityMatrix> {
        if self.dim() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: self.dim() });
        }
        let idx = |i: usize, d: usize| 2 * i + d;
        let mut out = DMatrix::zeros(2, 2);
        for r in 0..2 {
            for c in 0..2 {
                let mut sum = C64::new(0.0, 0.0);
                for t in 0..2 {
                    sum += match keep {
                        Wire::I => self.m[(idx(r, t), idx(c, t))],
                        Wire::D => self.m[(idx(t, r), idx(t, c))],
                    };
                }
                out[(r, c)] = sum;
            }
        }
        Ok(Self { m: out })
    }

    /// Von Neumann entropy `-Tr(rho log2 rho)` in bits, for 2x2 matrices.
    ///
    /// Eigenvalues are clipped to [0, 1] before evaluation and `0 log 0`
    /// is taken as 0.
    pub fn entanglement_entropy(&self) -> Result<f64> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: self.dim() });
        }
        let mut s = 0.0;
        for lam in self.eigenvalues() {
            let lam = lam.clamp(0.0, 1.0);
            if lam > 0.0 {
                s -= lam * lam.log2();
            }
        }
        Ok(s)
    }

    /// Degree of purity `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        (&self.m * &self.m).trace().re
    }

    /// Diagonal entries as outcome probabilities, with `-1e-10`-scale
    /// negatives clipped to zero.
    pub fn diagonal_probs(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.m[(k, k)].re.max(0.0)).collect()
    }

    /// Largest entrywise deviation from another matrix.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.m - &other.m).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Embeds a one-qubit operator into the full space of this matrix:
    /// `k x 1` on wire i, `1 x k` on wire d; identity embedding for 2x2.
    fn lift(&self, k: &nalgebra::Matrix2<C64>, wire: Wire) -> DMatrix<C64> {
        if self.dim() == 2 {
            let mut m = DMatrix::zeros(2, 2);
            for r in 0..2 {
                for c in 0..2 {
                    m[(r, c)] = k[(r, c)];
                }
            }
            return m;
        }
        let idx = |i: usize, d: usize| 2 * i + d;
        let mut m = DMatrix::zeros(4, 4);
        for r in 0..2 {
            for c in 0..2 {
                for t in 0..2 {
                    match wire {
                        Wire::I => m[(idx(r, t), idx(c, t))] = k[(r, c)],
                        Wire::D => m[(idx(t, r), idx(t, c))] = k[(r, c)],
                    }
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::haar_unitary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;
    use std::f64::consts::FRAC_PI_2;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn prepared_pair(phi: f64) -> TwoQubitState {
        TwoQubitState::ket00()
            .apply(&SingleQubitGate::ry(phi).unwrap(), Wire::D)
            .apply_cnot(Wire::D)
    }

    #[test]
    fn product_state_reduces_to_projector() {
        let rho = TwoQubitState::ket00().reduced(Wire::I);
        assert!((rho.entry(0, 0) - re(1.0)).norm() < 1e-15);
        assert!(rho.entry(1, 1).norm() < 1e-15);
        assert!((rho.trace() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bell_state_reduces_to_maximally_mixed() {
        let rho = prepared_pair(FRAC_PI_2).reduced(Wire::I);
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(rho.max_abs_diff(&mixed) < 1e-12);
    }

    #[test]
    fn reduced_d_state_after_analysis_rotation_matches_closed_form() {
        // Ry(phi') rho_d Ry(phi')^dag =
        // (1/2) [[1 + cos(phi) cos(phi'), cos(phi) sin(phi')],
        //        [cos(phi) sin(phi'), 1 - cos(phi) cos(phi')]]
        let (phi, phi_p) = (0.8, 1.7);
        let state = prepared_pair(phi)
            .apply(&SingleQubitGate::hadamard(), Wire::I)
            .apply(&SingleQubitGate::phase(0.6).unwrap(), Wire::I)
            .apply(&SingleQubitGate::ry(phi_p).unwrap(), Wire::D);
        let rho = state.reduced(Wire::D);
        let (c, cp, sp) = (phi.cos(), phi_p.cos(), phi_p.sin());
        assert!((rho.entry(0, 0).re - 0.5 * (1.0 + c * cp)).abs() < 1e-12);
        assert!((rho.entry(1, 1).re - 0.5 * (1.0 - c * cp)).abs() < 1e-12);
        assert!((rho.entry(0, 1).re - 0.5 * c * sp).abs() < 1e-12);
        assert!(rho.entry(0, 1).im.abs() < 1e-12);
    }

    #[test]
    fn hermiticity_trace_and_positivity_enforced() {
        let bad_trace = DMatrix::from_row_slice(2, 2, &[re(0.9), re(0.0), re(0.0), re(0.0)]);
        assert!(DensityMatrix::new(bad_trace).is_err());

        let not_herm =
            DMatrix::from_row_slice(2, 2, &[re(0.5), re(0.3), re(-0.3), re(0.5)]);
        assert!(DensityMatrix::new(not_herm).is_err());

        let not_psd =
            DMatrix::from_row_slice(2, 2, &[re(0.5), re(0.9), re(0.9), re(0.5)]);
        assert!(DensityMatrix::new(not_psd).is_err());

        let ok = DMatrix::from_row_slice(2, 2, &[re(0.5), re(0.5), re(0.5), re(0.5)]);
        assert!(DensityMatrix::new(ok).is_ok());
    }

    #[test]
    fn entropy_of_pure_and_mixed_qubits() {
        let pure = TwoQubitState::ket00().reduced(Wire::I);
        assert!(pure.entanglement_entropy().unwrap().abs() < 1e-12);

        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!((mixed.entanglement_entropy().unwrap() - 1.0).abs() < 1e-12);

        // Reduced state of the partially entangled pair at phi = pi/3 has
        // eigenvalues cos^2(pi/6) = 3/4 and sin^2(pi/6) = 1/4.
        let rho = prepared_pair(std::f64::consts::FRAC_PI_3).reduced(Wire::I);
        let expect = -(0.75f64.log2() * 0.75 + 0.25f64.log2() * 0.25);
        assert!((rho.entanglement_entropy().unwrap() - expect).abs() < 1e-12);
        assert!((expect - 0.8112781244591328).abs() < 1e-12);
    }

    #[test]
    fn purity_follows_half_one_plus_cos_squared() {
        for (phi, expect) in [
            (0.0, 1.0),
            (FRAC_PI_2, 0.5),
            (std::f64::consts::FRAC_PI_4, 0.75),
        ] {
            let rho = prepared_pair(phi).reduced(Wire::I);
            assert!(
                (rho.purity() - expect).abs() < 1e-12,
                "phi={phi}: got {}",
                rho.purity()
            );
            assert!((rho.purity() - 0.5 * (1.0 + phi.cos().powi(2))).abs() < 1e-12);
        }
    }

    #[test]
    fn schmidt_spectra_of_both_reductions_agree() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        for _ in 0..100 {
            let s = TwoQubitState::ket00()
                .apply(&haar_unitary(&mut rng), Wire::I)
                .apply(&haar_unitary(&mut rng), Wire::D)
                .apply_cnot(Wire::D)
                .apply(&haar_unitary(&mut rng), Wire::I);
            let ei = s.reduced(Wire::I).eigenvalues();
            let ed = s.reduced(Wire::D).eigenvalues();
            for (a, b) in ei.iter().zip(ed.iter()) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn unitary_conjugation_preserves_trace_and_purity() {
        let rho = prepared_pair(0.6).projector();
        let rotated = rho
            .apply_unitary(&SingleQubitGate::hadamard(), Wire::I)
            .apply_unitary(&SingleQubitGate::ry(1.1).unwrap(), Wire::D);
        assert!((rotated.trace() - 1.0).abs() < 1e-12);
        assert!((rotated.purity() - rho.purity()).abs() < 1e-12);
    }

    #[test]
    fn density_cnot_matches_state_cnot() {
        let s = prepared_pair(0.9).apply(&SingleQubitGate::hadamard(), Wire::I);
        let via_state = s.apply_cnot(Wire::I).projector();
        let via_dm = s.projector().apply_cnot(Wire::I).unwrap();
        assert!(via_state.max_abs_diff(&via_dm) < 1e-12);
    }

    #[test]
    fn depolarize_interpolates_to_maximally_mixed() {
        let rho = prepared_pair(0.4).projector();
        let full = rho.depolarize(1.0).unwrap();
        assert!(full.max_abs_diff(&DensityMatrix::maximally_mixed(4).unwrap()) < 1e-12);
        let none = rho.depolarize(0.0).unwrap();
        assert!(none.max_abs_diff(&rho) < 1e-15);
        assert!(rho.depolarize(1.5).is_err());
    }
}
