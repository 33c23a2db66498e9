//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors reported by the moment engine, circuit elements, and estimators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An expression spans a different number of modes than the spec list.
    #[error("dimension mismatch: expression spans {expr_modes} modes but {spec_modes} mode specs were given")]
    DimensionMismatch {
        expr_modes: usize,
        spec_modes: usize,
    },

    /// Two operators (or expressions) are defined over bases of different size.
    #[error("basis mismatch: operators span {0} and {1} modes")]
    BasisMismatch(usize, usize),

    /// A covariance matrix was requested for an empty operator list.
    #[error("cannot build a covariance matrix from an empty operator list")]
    EmptyOperators,

    /// Squeezing parameters must be finite and non-negative.
    #[error("squeezing parameter must be finite and non-negative, got {0}")]
    InvalidSqueezing(f64),

    /// A mode spec has the wrong squeezed axis for the requested circuit.
    #[error("mode {index} must be squeezed in {expected} for this circuit")]
    WrongSqueezeAxis { index: usize, expected: char },

    /// Phase-insensitive amplifier gain must be >= 1.
    #[error("amplifier gain must be finite and >= 1, got {0}")]
    InvalidGain(f64),

    /// Beam-splitter angles must be finite.
    #[error("beam splitter angle must be finite, got {0}")]
    InvalidAngle(f64),

    /// Feedforward gains must be finite.
    #[error("feedforward gain must be finite, got {0}")]
    InvalidFeedforwardGain(f64),

    /// A circuit element was given the wrong number of target modes.
    #[error("{element} takes {expected} target modes, got {got}")]
    WrongTargetCount {
        element: &'static str,
        expected: usize,
        got: usize,
    },

    /// A circuit element target index lies outside the mode list.
    #[error("target mode {index} out of range for {len} modes")]
    TargetOutOfRange { index: usize, len: usize },

    /// A matrix that must be symmetric positive definite is not.
    #[error("covariance matrix is not symmetric positive definite")]
    NotPositiveDefinite,

    /// A covariance matrix violates a structural invariant.
    #[error("invalid covariance matrix: {0}")]
    InvalidCovariance(String),

    /// Logarithmic negativity needs a strictly positive symplectic eigenvalue.
    #[error("symplectic eigenvalue must be positive, got {0}")]
    NonPositiveEigenvalue(f64),

    /// The verbatim clone-fidelity formula has a negative radicand away from r = 0.
    #[error("clone-fidelity formula undefined here: radicand {0} is negative (only r = 0 is in its domain)")]
    FidelityDomain(f64),

    /// Q-function variances must be positive.
    #[error("Q-function variance must be positive, got {0}")]
    NonPositiveVariance(f64),

    /// The teleportation fidelity formula assumes a coherent (unsqueezed) input mode.
    #[error("teleportation input mode must be unsqueezed, got squeezing {0}")]
    SqueezedInput(f64),

    /// A parameter grid is empty or ill-ordered.
    #[error("invalid grid: need min < max and step > 0")]
    InvalidGrid,

    /// A Monte-Carlo estimator was configured with too few shots.
    #[error("estimator needs at least {min} shots, got {got}")]
    TooFewShots { min: u64, got: u64 },

    /// Monte-Carlo shard count must be at least one.
    #[error("shard count must be at least 1")]
    NoShards,
}

pub type Result<T> = std::result::Result<T, Error>;
