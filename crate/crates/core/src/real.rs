//! Scalar abstraction for the numeric core.
//!
//! Everything downstream (probabilities, amplitudes, fidelities) is generic
//! over a floating-point scalar so the same code runs in f32 and f64. The
//! trait also carries the validation tolerances, which must scale with the
//! precision of the type: a norm check that is meaningful at 1e-12 in f64
//! would reject every f32 state.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar used for probabilities, amplitudes and derived quantities.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Absolute tolerance for validation checks: state norms, unit traces,
    /// Hermiticity, unitarity and exactness assertions on derived values.
    const VALIDATION_TOL: Self;

    /// How far below zero an eigenvalue of a density matrix may fall before
    /// the state is rejected as non-positive. Looser than `VALIDATION_TOL`
    /// because eigenvalues accumulate error across the whole spectrum.
    const PSD_FLOOR: Self;

    /// Lossless-enough conversion from f64 literals; panics only if the
    /// target type cannot represent ordinary finite values, which no
    /// implementor of this trait does.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 must convert into a Real scalar")
    }
}

impl Real for f64 {
    const VALIDATION_TOL: f64 = 1e-12;
    const PSD_FLOOR: f64 = 1e-10;
}

impl Real for f32 {
    const VALIDATION_TOL: f32 = 1e-5;
    const PSD_FLOOR: f32 = 1e-4;
}
