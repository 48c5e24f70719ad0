//! Two-qubit simulator and analysis toolkit for a delayed-choice quantum
//! eraser implemented as a quantum circuit.
//!
//! The circuit prepares a pair of qubits with an adjustable degree of
//! entanglement (angle `phi`), sends the "i" (interference) qubit through a
//! Mach-Zehnder-style block (Hadamard, phase shift `theta`, optional second
//! Hadamard) and analyzes the "d" (delayed-choice) qubit in a rotated basis
//! (angle `phi_prime`). On top of the exact state-vector and density-matrix
//! simulation ([`qcore`], [`circuit`]) the crate provides:
//!
//! * seeded shot sampling of measurement outcomes ([`sampling`]),
//! * visibility/distinguishability quantifiers from the total-ensemble,
//!   subensemble, and average perspectives, plus concurrence/coherence/
//!   predictability triality quantities ([`analysis`]),
//! * T1/T2 relaxation and depolarizing-CNOT noise presets ([`noise`]),
//! * a randomized-measurement estimator for the second-order Rényi entropy
//!   of the reduced one-qubit state ([`randmeas`]).

pub mod analysis;
pub mod circuit;
pub mod error;
pub mod noise;
pub mod qcore;
pub mod randmeas;
pub mod sampling;

pub use error::{Error, Result};
