//! Exact complex linear algebra for one- and two-qubit pure states,
//! density matrices, unitary gates, Kraus channels, and partial traces.
//!
//! Conventions used throughout the crate:
//!
//! * Joint basis order is `|i d>` with the "i" (interference) qubit leftmost:
//!   amplitude index `2*i + d` runs over `|00>, |01>, |10>, |11>`.
//! * All entropies use log base 2.
//! * Tolerances: `1e-12` for exact algebra, `1e-10` for channel and
//!   eigenvalue checks.

mod channel;
mod density;
mod gates;
mod state;

pub use channel::KrausChannel;
pub use density::DensityMatrix;
pub use gates::{haar_unitary, SingleQubitGate};
pub use state::{TwoQubitState, Wire};

/// Tolerance for exact algebra (unitarity, normalization, Hermiticity).
pub const TOL_EXACT: f64 = 1e-12;
/// Tolerance for channel completeness and eigenvalue checks.
pub const TOL_EIGEN: f64 = 1e-10;

pub(crate) type C64 = num_complex::Complex64;
