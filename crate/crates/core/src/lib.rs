//! Dephasing-channel toolkit with Markov-correlated noise.
//!
//! Models a channel that applies identity or a phase flip to each qubit it
//! carries, with flip decisions correlated across consecutive uses by a
//! two-state Markov chain. On top of the error model sit a dense pure-state /
//! density-matrix simulator, two small phase-error codes plus the uncoded
//! baseline, closed-form fidelity and capacity formulas, and an engine that
//! cross-validates closed forms against exact enumeration and Monte Carlo
//! trajectory sampling.
//!
//! Conventions, fixed across the crate:
//!
//! - Qubit 0 is the most significant bit of a basis index: `|q0 q1 ... >`.
//! - Registers are laid out `[R, Q, ancillas]`, where `R` is the reference
//!   half of an entangled input and is never touched by noise.
//! - Channel uses are transmitted in register order: the code qubit `Q`
//!   first, then the ancillas in ascending index order.
//! - Validation tolerances live on the [`Real`] scalar trait so f32 and f64
//!   instantiations check at their own precision.

mod error;
mod real;

pub mod analysis;
pub mod codes;
pub mod engine;
pub mod error_model;
pub mod qsim;
pub mod verify;

pub use error::{Error, Result};
pub use real::Real;

pub use analysis::{
    binary_entropy, c2_beats_c1_crossover, c2_beats_uncoded_threshold, capacity,
    crossover_exact_mu, fe_closed, pe_small_eps, CapacityPoint, FidelityPoint,
};
pub use codes::{Circuit, CodeName, CodeSpec, Gate};
pub use engine::{
    fe_exact, fe_exact_density, fe_monte_carlo, fidelity_report, trajectory_fidelities,
    FidelityReport, McEstimate, TrajectoryRecord, MIN_MC_SAMPLES,
};
pub use error_model::{
    enumerate_sequences, sample_sequence, sequence_prob, ChannelParams, DerivedProbs,
    ErrorSequence, PauliLabel,
};
pub use qsim::{fidelity_with_pure, DensityMatrix, QubitOperator, StateVector};

/// Double-precision channel parameters.
pub type ChannelParams64 = ChannelParams<f64>;
/// Single-precision channel parameters.
pub type ChannelParams32 = ChannelParams<f32>;
/// Double-precision pure state.
pub type StateVector64 = StateVector<f64>;
/// Single-precision pure state.
pub type StateVector32 = StateVector<f32>;
/// Double-precision density matrix.
pub type DensityMatrix64 = DensityMatrix<f64>;
/// Single-precision density matrix.
pub type DensityMatrix32 = DensityMatrix<f32>;
/// Double-precision operator.
pub type QubitOperator64 = QubitOperator<f64>;
/// Single-precision operator.
pub type QubitOperator32 = QubitOperator<f32>;
