//! Dense simulator for few-qubit registers.
//!
//! Pure states are the primary representation: every noise realization in
//! this crate is a unitary (a tensor of identity and Z factors), so a
//! trajectory never leaves the pure-state manifold. Density matrices carry
//! mixtures and reduced states, and double as a cross-check path for the
//! pure-state pipeline.

mod eigen;
mod operator;
mod state;

pub use eigen::{hermitian_eigenvalues, min_eigenvalue};
pub use operator::QubitOperator;
pub use state::{fidelity_with_pure, DensityMatrix, StateVector};

pub(crate) use state::validate_targets;
