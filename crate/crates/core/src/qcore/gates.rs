//! Single-qubit gates.

use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::Mul;

use nalgebra::Matrix2;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{C64, TOL_EXACT};
use crate::error::{Error, Result};

/// A 2x2 unitary acting on one qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleQubitGate {
    m: Matrix2<C64>,
}

impl SingleQubitGate {
    /// Wraps an arbitrary 2x2 matrix, verifying unitarity to `1e-12`.
    pub fn new(m: Matrix2<C64>) -> Result<Self> {
        let dev = unitarity_deviation(&m);
        if dev > TOL_EXACT {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self { m })
    }

    /// Identity gate.
    pub fn identity() -> Self {
        Self { m: Matrix2::identity() }
    }

    /// Phase gate `P(theta) = diag(1, e^{i theta})`.
    pub fn phase(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFiniteAngle(theta));
        }
        let zero = C64::new(0.0, 0.0);
        Ok(Self {
            m: Matrix2::new(
                C64::new(1.0, 0.0),
                zero,
                zero,
                C64::from_polar(1.0, theta),
            ),
        })
    }

    /// Rotation about the y axis:
    /// `[[cos(phi/2), -sin(phi/2)], [sin(phi/2), cos(phi/2)]]`.
    pub fn ry(phi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::NonFiniteAngle(phi));
        }
        let c = C64::new((phi / 2.0).cos(), 0.0);
        let s = C64::new((phi / 2.0).sin(), 0.0);
        Ok(Self { m: Matrix2::new(c, -s, s, c) })
    }

    /// Hadamard gate `(1/sqrt 2) [[1, 1], [1, -1]]`.
    pub fn hadamard() -> Self {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        Self { m: Matrix2::new(h, h, h, -h) }
    }

    /// Pauli Z, used as the dephasing Kraus operator.
    pub fn pauli_z() -> Self {
        let zero = C64::new(0.0, 0.0);
        Self {
            m: Matrix2::new(C64::new(1.0, 0.0), zero, zero, C64::new(-1.0, 0.0)),
        }
    }

    pub fn matrix(&self) -> &Matrix2<C64> {
        &self.m
    }

    pub fn adjoint(&self) -> Self {
        Self { m: self.m.adjoint() }
    }

    /// Largest elementwise deviation from another gate.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.m - other.m).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Gate composition: `a * b` applies `b` first, then `a`.
impl Mul for &SingleQubitGate {
    type Output = SingleQubitGate;

    fn mul(self, rhs: &SingleQubitGate) -> SingleQubitGate {
        SingleQubitGate { m: self.m * rhs.m }
    }
}

fn unitarity_deviation(m: &Matrix2<C64>) -> f64 {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return f64::INFINITY;
    }
    let prod = m * m.adjoint();
    (prod - Matrix2::<C64>::identity())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Draws a Haar-distributed element of U(2).
///
/// A complex Ginibre matrix is QR-decomposed and the phases of the
/// triangular factor's diagonal are absorbed into Q.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R) -> SingleQubitGate {
    let mut g = Matrix2::zeros();
    for entry in g.iter_mut() {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        *entry = C64::new(re, im);
    }
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for col in 0..2 {
        let d = r[(col, col)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for row in 0..2 {
            q[(row, col)] *= phase;
        }
    }
    SingleQubitGate { m: q }
}
