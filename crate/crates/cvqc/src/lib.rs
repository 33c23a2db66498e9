//! `cvqc` — continuous-variable quantum optics in the Heisenberg picture.
//!
//! The crate models Gaussian modes as linear forms over their initial
//! quadratures and builds three things on top of that moment engine:
//!
//! - the 1-to-2 cloning network (phase-insensitive amplifier plus balanced
//!   beam splitter) and its clone covariance matrix,
//! - the entanglement analysis of the two clones (partial-transpose
//!   symplectic eigenvalue, logarithmic negativity) and the Gaussian clone
//!   fidelity,
//! - the clone-channel teleportation protocol with its gain optimisation
//!   and a closed-form baseline to compare against,
//!
//! all cross-checked by a deterministic Monte-Carlo phase-space oracle.
//!
//! Conventions: vacuum quadrature variance is 1/4 throughout, and every
//! operation is a pure function over immutable values.

pub mod analysis;
pub mod circuit;
pub mod error;
pub mod gaussian;
pub mod mc;
pub mod teleport;

pub use analysis::{
    clone_fidelity, clone_fidelity_paper_literal, entanglement_threshold, gaussian_fidelity,
    log_negativity, ppt_nu_minus, FidelityBreakdown, SymplecticResult, ThresholdConvention,
    TwoModeCM,
};
pub use circuit::{
    amplifier, beam_splitter, clone_1to2, tritter, CircuitElement, CloneOutput, ElementKind,
};
pub use error::{Error, Result};
pub use gaussian::{
    canonical_check, covariance, covariance_matrix, variance, CovMatrix, InitialModeSpec,
    ModeOperator, QuadExpr, SqueezeAxis,
};
pub use mc::{estimate_covariance, estimate_teleport_fidelity, McConfig, McEstimate};
pub use teleport::{
    comparison_curve, composed_teleported_mode, loock_fidelity, optimal_fidelity, optimal_gain,
    protocol_outcome, teleport_fidelity, teleported_mode, ComparisonRow, GainSpec, TeleportOutcome,
};
