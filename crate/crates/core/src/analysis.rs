//! Closed-form capacity and fidelity formulas, with their thresholds.
//!
//! Everything here is arithmetic on [`ChannelParams`] and the derived
//! conditional probabilities; no simulation. The trajectory engine exists to
//! check these expressions, so they are written in the most direct form and
//! the algebraically equivalent rearrangements live in the tests.

use crate::codes::CodeName;
use crate::error::{Error, Result};
use crate::error_model::ChannelParams;
use crate::real::Real;

/// Shannon entropy of a coin with bias `q`, in bits, with the convention
/// that a certain outcome contributes nothing.
pub fn binary_entropy<T: Real>(q: T) -> Result<T> {
    if !(q >= T::zero() && q <= T::one()) {
        return Err(Error::InvalidParameter {
            name: "q",
            value: q.to_f64().unwrap_or(f64::NAN),
            constraint: "0 <= q <= 1",
        });
    }
    if q == T::zero() || q == T::one() {
        return Ok(T::zero());
    }
    let r = T::one() - q;
    Ok(-q * q.log2() - r * r.log2())
}

/// Channel capacity at one parameter point, in qubits per use.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapacityPoint<T: Real> {
    pub params: ChannelParams<T>,
    pub q: T,
}

/// Transmissible qubits per channel use: one, minus the entropy produced by
/// the flip process conditioned on each of the two previous outcomes,
/// weighted by how often that outcome occurs.
pub fn capacity<T: Real>(params: &ChannelParams<T>) -> CapacityPoint<T> {
    let d = params.derived_probs();
    let h0 = binary_entropy(d.q0).expect("q0 is a probability");
    let hz = binary_entropy(d.qz).expect("qz is a probability");
    let raw = T::one() - params.p0() * h0 - params.pz() * hz;
    debug_assert!(raw >= -T::VALIDATION_TOL && raw <= T::one() + T::VALIDATION_TOL);
    let q = raw.max(T::zero()).min(T::one());
    CapacityPoint { params: *params, q }
}

/// Entanglement fidelity of one scheme at one parameter point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FidelityPoint<T: Real> {
    pub code: CodeName,
    pub params: ChannelParams<T>,
    /// Entanglement fidelity.
    pub fe: T,
    /// Transmission error probability, `1 - fe`.
    pub pe: T,
}

/// Closed-form entanglement fidelity for a Bell pair sent through the coded
/// channel.
///
/// Each term is (probability of an error pattern class) x (1 if the decoder
/// survives it). Uncoded transmission survives only `I`. The three-qubit
/// code survives single flips; its failing patterns are grouped by which
/// conditional probabilities generate them. The two-qubit scheme survives
/// `II` and `ZZ`.
pub fn fe_closed<T: Real>(code: CodeName, params: &ChannelParams<T>) -> FidelityPoint<T> {
    let p0 = params.p0();
    let pz = params.pz();
    let d = params.derived_probs();
    let fe = match code {
        CodeName::Uncoded => p0,
        CodeName::C1 => p0 * d.q0 * d.q0 + p0 * d.q0 * d.r0 + p0 * d.r0 * d.rz + pz * d.rz * d.q0,
        CodeName::C2 => p0 * d.q0 + pz * d.qz,
    };
    debug_assert!(fe >= T::zero() && fe <= T::one());
    FidelityPoint {
        code,
        params: *params,
        fe,
        pe: T::one() - fe,
    }
}

/// First-order transmission error probability at `p0 = 1 - eps`.
///
/// Valid for small `eps`; the expressions drop O(eps^2) terms. Exception:
/// the three-qubit code at `mu = 0` has no first-order term at all, and the
/// leading exact term `3 eps^2` is returned instead.
pub fn pe_small_eps<T: Real>(code: CodeName, eps: T, mu: T) -> Result<T> {
    for (name, value) in [("eps", eps), ("mu", mu)] {
        if !(value >= T::zero() && value <= T::one()) {
            return Err(Error::InvalidParameter {
                name,
                value: value.to_f64().unwrap_or(f64::NAN),
                constraint: "0 <= value <= 1",
            });
        }
    }
    let two = T::of(2.0);
    Ok(match code {
        CodeName::Uncoded => eps,
        CodeName::C1 => {
            if mu == T::zero() {
                T::of(3.0) * eps * eps
            } else {
                mu * (two - mu) * eps
            }
        }
        CodeName::C2 => two * (T::one() - mu) * eps,
    })
}

/// Memory needed before the two-qubit scheme beats sending the qubit bare:
/// `(2 p0 - 1) / (2 p0)`, clamped at zero since for `p0 < 1/2` the scheme
/// wins for every `mu`.
pub fn c2_beats_uncoded_threshold<T: Real>(p0: T) -> Result<T> {
    if !(p0 > T::zero() && p0 <= T::one()) {
        return Err(Error::InvalidParameter {
            name: "p0",
            value: p0.to_f64().unwrap_or(f64::NAN),
            constraint: "0 < p0 <= 1",
        });
    }
    let two = T::of(2.0);
    Ok(((two * p0 - T::one()) / (two * p0)).max(T::zero()))
}

/// Memory above which the two-qubit scheme also beats the three-qubit code,
/// to first order in `eps`: the root of `mu (2 - mu) = 2 (1 - mu)`.
pub fn c2_beats_c1_crossover<T: Real>() -> T {
    T::of(2.0) - T::SQRT_2()
}

/// Exact crossover between the two codes at finite `eps`, by bisection on
/// the closed-form fidelity difference over `mu` in [0, 1]. Differs from
/// [`c2_beats_c1_crossover`] by O(eps).
pub fn crossover_exact_mu<T: Real>(eps: T) -> Result<T> {
    if !(eps > T::zero() && eps < T::of(0.5)) {
        return Err(Error::InvalidParameter {
            name: "eps",
            value: eps.to_f64().unwrap_or(f64::NAN),
            constraint: "0 < eps < 0.5",
        });
    }
    let p0 = T::one() - eps;
    let gap = |mu: T| -> T {
        let params = ChannelParams::new(p0, mu).expect("validated above");
        fe_closed(CodeName::C2, &params).fe - fe_closed(CodeName::C1, &params).fe
    };
    let (mut lo, mut hi) = (T::zero(), T::one());
    let (glo, ghi) = (gap(lo), gap(hi));
    if !(glo < T::zero() && ghi > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "eps",
            value: eps.to_f64().unwrap_or(f64::NAN),
            constraint: "fidelity gap must change sign on [0, 1]",
        });
    }
    // 128 halvings push the bracket far below any tolerance used here.
    for _ in 0..128 {
        let mid = (lo + hi) / T::of(2.0);
        if mid == lo || mid == hi {
            break;
        }
        if gap(mid) < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / T::of(2.0))
}
