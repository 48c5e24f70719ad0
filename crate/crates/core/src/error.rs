//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by construction and simulation routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("angle must be finite, got {0}")]
    NonFiniteAngle(f64),

    #[error("state amplitudes must be finite")]
    NonFiniteAmplitude,

    #[error("state is not normalized (|norm^2 - 1| = {0:.3e})")]
    NotNormalized(f64),

    #[error("matrix is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("not a valid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("operation requires a {expected}x{expected} density matrix, got {found}x{found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Kraus operators do not sum to identity (max deviation {0:.3e})")]
    IncompleteChannel(f64),

    #[error("invalid channel parameter: {0}")]
    InvalidChannel(String),

    #[error("invalid noise parameter: {0}")]
    InvalidNoise(String),

    #[error("unknown noise preset '{0}'")]
    UnknownPreset(String),

    #[error("slice states are only defined for the noiseless circuit; use the density-matrix path")]
    NoisePresent,

    #[error("density-matrix evolution requires a noise model")]
    NoiseMissing,

    #[error("probabilities do not form a distribution: {0}")]
    InvalidDistribution(String),

    #[error("at least {min} shots required, got {got}")]
    TooFewShots { min: u64, got: u64 },

    #[error("theta resolution must split [0, 2pi] into at least two steps, got {0}")]
    BadResolution(f64),

    #[error("sweep record is empty")]
    EmptySweep,

    #[error("inputs come from mismatched configurations: {0}")]
    ConfigMismatch(String),

    #[error("undefined subensemble quantifier carries nonzero weight {0}")]
    UndefinedWithWeight(f64),

    #[error("invalid randomized-measurement plan: {0}")]
    InvalidPlan(String),
}

pub type Result<T> = std::result::Result<T, Error>;
