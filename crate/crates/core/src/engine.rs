//! Trajectory engine: checks the closed-form fidelities by simulation.
//!
//! Every noise realization of the channel is a unitary, so a Bell pair sent
//! through an encoder, the channel, and a decoder stays pure along each
//! trajectory. The engine walks trajectories three ways: exact enumeration
//! over all error sequences (the primary oracle), the same mixture pushed
//! through the density-matrix pipeline (a slower cross-check that also
//! exercises the validation layer), and seeded Monte Carlo sampling with a
//! standard error (a stochastic check with error bars).
//!
//! Enumeration always sums in the fixed lexicographic sequence order, and
//! each Monte Carlo sample draws from its own counter-indexed substream, so
//! results are bit-stable regardless of evaluation order or batching.

use crate::analysis::fe_closed;
use crate::codes::{CodeName, CodeSpec};
use crate::error::{Error, Result};
use crate::error_model::{enumerate_sequences, sample_sequence, ChannelParams, ErrorSequence};
use crate::qsim::{fidelity_with_pure, DensityMatrix, StateVector};
use crate::real::Real;
use ndarray::Array2;
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Fewest Monte Carlo samples for which a standard error is reported.
pub const MIN_MC_SAMPLES: usize = 100;

/// One enumerated noise realization: which flips hit, how likely, and the
/// fidelity the decoded Bell pair retains.
#[derive(Clone, Debug)]
pub struct TrajectoryRecord<T: Real> {
    pub sequence: ErrorSequence,
    pub probability: T,
    pub fidelity: T,
}

/// Monte Carlo estimate with its sampling metadata.
#[derive(Clone, Copy, Debug)]
pub struct McEstimate<T: Real> {
    pub fe: T,
    pub std_error: T,
    pub n_samples: usize,
    pub seed: u64,
}

/// Closed form, enumeration oracle, and optional Monte Carlo estimate for
/// one (code, parameter) point. The discrepancy is reported raw; deciding
/// whether it is acceptable is the caller's job.
#[derive(Clone, Debug)]
pub struct FidelityReport<T: Real> {
    pub code: CodeName,
    pub params: ChannelParams<T>,
    pub fe_closed: T,
    pub fe_exact: T,
    pub discrepancy: T,
    pub monte_carlo: Option<McEstimate<T>>,
}

/// The encoded `[R, Q, ancillas]` register for a Bell pair, before noise.
fn prepared_register<T: Real>(code: &CodeSpec) -> Result<StateVector<T>> {
    let bell = StateVector::bell_state();
    let input = if code.n_ancilla() > 0 {
        bell.tensor(&StateVector::computational(code.n_ancilla(), 0)?)
    } else {
        bell
    };
    code.encode(&input)
}

/// Overlap of the `[R, Q]` half of `psi` with the Bell pair, ancillas traced
/// out: sums the squared Bell component over every ancilla basis state.
fn bell_overlap<T: Real>(psi: &StateVector<T>, n_ancilla: usize) -> T {
    let bell = StateVector::<T>::bell_state();
    let amps = psi.amplitudes();
    let mut total = T::zero();
    for a in 0..(1usize << n_ancilla) {
        let mut z = Complex::new(T::zero(), T::zero());
        for (k, b) in bell.amplitudes().iter().enumerate() {
            z += b.conj() * amps[(k << n_ancilla) | a];
        }
        total += z.norm_sqr();
    }
    total.max(T::zero()).min(T::one())
}

fn run_trajectory<T: Real>(
    code: &CodeSpec,
    encoded: &StateVector<T>,
    seq: &ErrorSequence,
) -> Result<T> {
    let noisy = encoded.apply_error_sequence(seq, &code.noise_targets())?;
    let decoded = code.decode_pure(&noisy)?;
    Ok(bell_overlap(&decoded, code.n_ancilla()))
}

/// Every error sequence with its probability and decoded fidelity, in
/// lexicographic sequence order.
pub fn trajectory_fidelities<T: Real>(
    code: CodeName,
    params: &ChannelParams<T>,
) -> Result<Vec<TrajectoryRecord<T>>> {
    let spec = CodeSpec::get(code);
    let encoded = prepared_register::<T>(&spec)?;
    enumerate_sequences(spec.n_physical(), params)?
        .into_iter()
        .map(|(sequence, probability)| {
            let fidelity = run_trajectory(&spec, &encoded, &sequence)?;
            Ok(TrajectoryRecord {
                sequence,
                probability,
                fidelity,
            })
        })
        .collect()
}

/// Entanglement fidelity by exact enumeration: the probability-weighted sum
/// of every trajectory's fidelity, summed in enumeration order.
pub fn fe_exact<T: Real>(code: CodeName, params: &ChannelParams<T>) -> Result<T> {
    let mut total = T::zero();
    for record in trajectory_fidelities(code, params)? {
        total += record.probability * record.fidelity;
    }
    Ok(total.max(T::zero()).min(T::one()))
}

/// Entanglement fidelity through the density-matrix pipeline: build the full
/// mixed output state, validate it, decode, trace out ancillas, project on
/// the Bell pair. Slower than [`fe_exact`] and kept as a cross-check.
pub fn fe_exact_density<T: Real>(code: CodeName, params: &ChannelParams<T>) -> Result<T> {
    let spec = CodeSpec::get(code);
    let encoded = prepared_register::<T>(&spec)?;
    let rho = encoded.to_density();
    let dim = rho.dim();
    let mut acc = Array2::<Complex<T>>::zeros((dim, dim));
    for (seq, prob) in enumerate_sequences(spec.n_physical(), params)? {
        let hit = rho.apply_error_sequence(&seq, &spec.noise_targets())?;
        acc = acc + hit.entries().mapv(|z| z * Complex::new(prob, T::zero()));
    }
    let mixed = DensityMatrix::new(acc)?;
    let reduced = spec.decode(&mixed)?;
    fidelity_with_pure(&StateVector::bell_state(), &reduced)
}

/// Monte Carlo estimate of the entanglement fidelity.
///
/// Sample `i` draws its error sequence from stream `i` of a counter-based
/// generator seeded with `seed`, so the estimate is reproducible and
/// independent of sample ordering.
pub fn fe_monte_carlo<T: Real>(
    code: CodeName,
    params: &ChannelParams<T>,
    n_samples: usize,
    seed: u64,
) -> Result<McEstimate<T>> {
    if n_samples < MIN_MC_SAMPLES {
        return Err(Error::TooFewSamples {
            n: n_samples,
            min: MIN_MC_SAMPLES,
        });
    }
    let spec = CodeSpec::get(code);
    let encoded = prepared_register::<T>(&spec)?;
    let base = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = T::zero();
    let mut sum_sq = T::zero();
    for i in 0..n_samples {
        let mut rng = base.clone();
        rng.set_stream(i as u64);
        let seq = sample_sequence(spec.n_physical(), params, &mut rng)?;
        let f = run_trajectory(&spec, &encoded, &seq)?;
        sum += f;
        sum_sq += f * f;
    }
    let n = T::of(n_samples as f64);
    let mean = sum / n;
    let variance = ((sum_sq - sum * sum / n) / (n - T::one())).max(T::zero());
    Ok(McEstimate {
        fe: mean,
        std_error: (variance / n).sqrt(),
        n_samples,
        seed,
    })
}

/// Runs the closed form and the enumeration oracle side by side, plus Monte
/// Carlo when `(n_samples, seed)` is given.
pub fn fidelity_report<T: Real>(
    code: CodeName,
    params: &ChannelParams<T>,
    monte_carlo: Option<(usize, u64)>,
) -> Result<FidelityReport<T>> {
    let closed = fe_closed(code, params).fe;
    let exact = fe_exact(code, params)?;
    let mc = match monte_carlo {
        Some((n_samples, seed)) => Some(fe_monte_carlo(code, params, n_samples, seed)?),
        None => None,
    };
    Ok(FidelityReport {
        code,
        params: *params,
        fe_closed: closed,
        fe_exact: exact,
        discrepancy: (closed - exact).abs(),
        monte_carlo: mc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error_model::sequence_prob;
    use approx::assert_abs_diff_eq;

    fn params(p0: f64, mu: f64) -> ChannelParams<f64> {
        ChannelParams::new(p0, mu).unwrap()
    }

    #[test]
    fn enumeration_matches_closed_forms_at_reference_point() {
        let p = params(0.9, 0.2);
        assert_abs_diff_eq!(
            fe_exact(CodeName::Uncoded, &p).unwrap(),
            0.9,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            fe_exact(CodeName::C1, &p).unwrap(),
            0.94608,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(fe_exact(CodeName::C2, &p).unwrap(), 0.856, epsilon = 1e-13);
    }

    #[test]
    fn trajectory_table_is_the_survivor_sum() {
        // The three-qubit code survives exactly the patterns with at most
        // one flip; each record's probability must match the chain product.
        let p = params(0.9, 0.2);
        let records = trajectory_fidelities(CodeName::C1, &p).unwrap();
        assert_eq!(records.len(), 8);
        let survivors = [1.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0];
        let mut acc = 0.0;
        for (record, want) in records.iter().zip(survivors) {
            assert_abs_diff_eq!(record.fidelity, want, epsilon = 1e-12);
            assert_abs_diff_eq!(
                record.probability,
                sequence_prob(&record.sequence, &p),
                epsilon = 1e-16
            );
            acc += record.probability * record.fidelity;
        }
        assert_abs_diff_eq!(acc, fe_exact(CodeName::C1, &p).unwrap(), epsilon = 1e-15);
    }

    #[test]
    fn every_trajectory_fidelity_is_zero_or_one() {
        for code in CodeName::ALL {
            for (p0, mu) in [(0.6, 0.0), (0.9, 0.2), (0.7, 0.9), (0.5, 0.5)] {
                for record in trajectory_fidelities(code, &params(p0, mu)).unwrap() {
                    let dist = record.fidelity.min(1.0 - record.fidelity);
                    assert!(
                        dist.abs() <= 1e-12,
                        "{code} {:?} fidelity {} is not 0/1",
                        record.sequence,
                        record.fidelity
                    );
                }
            }
        }
    }

    #[test]
    fn density_pipeline_agrees_with_pure_enumeration() {
        for code in CodeName::ALL {
            for (p0, mu) in [(0.9, 0.2), (0.6, 0.7), (0.999, 0.0)] {
                let p = params(p0, mu);
                let pure = fe_exact(code, &p).unwrap();
                let dense = fe_exact_density(code, &p).unwrap();
                assert_abs_diff_eq!(pure, dense, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn perfect_memory_makes_c2_lossless() {
        let p = params(0.8, 1.0);
        assert_abs_diff_eq!(fe_exact(CodeName::C2, &p).unwrap(), 1.0, epsilon = 1e-15);
        let mc = fe_monte_carlo(CodeName::C2, &p, 500, 7).unwrap();
        assert_eq!(mc.fe, 1.0);
        assert_eq!(mc.std_error, 0.0);
    }

    #[test]
    fn monte_carlo_is_seed_deterministic() {
        let p = params(0.9, 0.3);
        let a = fe_monte_carlo::<f64>(CodeName::C1, &p, 2000, 42).unwrap();
        let b = fe_monte_carlo::<f64>(CodeName::C1, &p, 2000, 42).unwrap();
        assert_eq!(a.fe, b.fe);
        assert_eq!(a.std_error, b.std_error);
    }

    #[test]
    fn monte_carlo_tracks_the_exact_value() {
        let p = params(0.85, 0.4);
        for code in CodeName::ALL {
            let exact = fe_exact(code, &p).unwrap();
            let mc = fe_monte_carlo(code, &p, 20_000, 11).unwrap();
            assert!(
                (mc.fe - exact).abs() <= 4.0 * mc.std_error.max(1e-9),
                "{code}: mc {} vs exact {} (stderr {})",
                mc.fe,
                exact,
                mc.std_error
            );
        }
    }

    #[test]
    fn monte_carlo_rejects_tiny_sample_counts() {
        let p = params(0.9, 0.2);
        assert!(matches!(
            fe_monte_carlo::<f64>(CodeName::C1, &p, 99, 1),
            Err(Error::TooFewSamples { n: 99, min: 100 })
        ));
        assert!(fe_monte_carlo::<f64>(CodeName::C1, &p, 100, 1).is_ok());
    }

    #[test]
    fn report_bundles_all_routes() {
        let p = params(0.9, 0.2);
        let report = fidelity_report(CodeName::C1, &p, Some((1000, 3))).unwrap();
        assert!(report.discrepancy <= 1e-12);
        assert_abs_diff_eq!(report.fe_closed, 0.94608, epsilon = 1e-15);
        let mc = report.monte_carlo.unwrap();
        assert_eq!(mc.n_samples, 1000);
        assert_eq!(mc.seed, 3);
        let bare = fidelity_report(CodeName::C2, &p, None).unwrap();
        assert!(bare.monte_carlo.is_none());
    }
}
