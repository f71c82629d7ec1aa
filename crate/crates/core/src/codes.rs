//! Phase-error codes and the circuits that implement them.
//!
//! Three schemes share one interface. `Uncoded` sends the data qubit as is.
//! `C1` is the three-qubit phase-flip repetition code: it corrects any single
//! flip and fails on majorities. `C2` is a two-qubit scheme with no error
//! correction at all; it stores the data in the span of `|01>` and `|10>`,
//! where simultaneous flips on both qubits cancel, so it pays off only when
//! the channel is strongly correlated.
//!
//! Circuit qubit indices are code-local: 0 is the transmitted data qubit and
//! higher indices are the code's ancillas. Applying a circuit at `offset` 1
//! places it on the physical block of a `[R, Q, ancillas]` register, leaving
//! the reference qubit untouched.

use crate::error::{Error, Result};
use crate::qsim::{validate_targets, DensityMatrix, QubitOperator, StateVector};
use crate::real::Real;
use ndarray::Array2;
use num_complex::Complex;
use std::fmt;
use std::str::FromStr;

/// One gate, indexed by code-local qubit positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    X(usize),
    Z(usize),
    Cnot { control: usize, target: usize },
    Ccnot { controls: [usize; 2], target: usize },
}

impl Gate {
    /// Qubits the gate touches, controls first.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::X(q) | Gate::Z(q) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Ccnot { controls, target } => vec![controls[0], controls[1], target],
        }
    }

    /// In-place application to a state vector, shifted by `offset`.
    fn apply_mut<T: Real>(&self, sv: &mut StateVector<T>, offset: usize) -> Result<()> {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        match *self {
            Gate::H(q) => {
                let h = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
                sv.apply_single_qubit_mut(q + offset, &[[h, h], [h, -h]])
            }
            Gate::Z(q) => sv.apply_single_qubit_mut(q + offset, &[[one, zero], [zero, -one]]),
            Gate::X(q) => sv.apply_controlled_x_mut(&[], q + offset),
            Gate::Cnot { control, target } => {
                sv.apply_controlled_x_mut(&[control + offset], target + offset)
            }
            Gate::Ccnot { controls, target } => sv.apply_controlled_x_mut(
                &[controls[0] + offset, controls[1] + offset],
                target + offset,
            ),
        }
    }

    /// The gate as a matrix on its own qubits, shifted by `offset`.
    pub fn operator<T: Real>(&self, offset: usize) -> QubitOperator<T> {
        let one = Complex::new(T::one(), T::zero());
        let h = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        let targets: Vec<usize> = self.qubits().iter().map(|q| q + offset).collect();
        let mat = match *self {
            Gate::H(_) => {
                let mut m = Array2::zeros((2, 2));
                m[[0, 0]] = h;
                m[[0, 1]] = h;
                m[[1, 0]] = h;
                m[[1, 1]] = -h;
                m
            }
            Gate::X(_) => {
                let mut m = Array2::zeros((2, 2));
                m[[0, 1]] = one;
                m[[1, 0]] = one;
                m
            }
            Gate::Z(_) => {
                let mut m = Array2::zeros((2, 2));
                m[[0, 0]] = one;
                m[[1, 1]] = -one;
                m
            }
            Gate::Cnot { .. } => {
                // Local basis |control target>: swap the third and fourth
                // basis states.
                let mut m = Array2::zeros((4, 4));
                m[[0, 0]] = one;
                m[[1, 1]] = one;
                m[[2, 3]] = one;
                m[[3, 2]] = one;
                m
            }
            Gate::Ccnot { .. } => {
                let mut m = Array2::zeros((8, 8));
                for i in 0..6 {
                    m[[i, i]] = one;
                }
                m[[6, 7]] = one;
                m[[7, 6]] = one;
                m
            }
        };
        QubitOperator::new(mat, targets).expect("gate matrices match their qubit counts")
    }
}

/// Ordered gate list over a fixed-width code block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        for gate in &gates {
            validate_targets(&gate.qubits(), n_qubits)?;
        }
        Ok(Self { n_qubits, gates })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Runs the circuit on `sv`, with code-local qubit 0 sitting at
    /// register position `offset`.
    pub fn apply_mut<T: Real>(&self, sv: &mut StateVector<T>, offset: usize) -> Result<()> {
        for gate in &self.gates {
            gate.apply_mut(sv, offset)?;
        }
        Ok(())
    }

    /// The circuit as one dense operator on an `n_total`-qubit register.
    /// Later gates multiply on the left.
    pub fn to_operator<T: Real>(&self, n_total: usize, offset: usize) -> Result<QubitOperator<T>> {
        let dim = 1usize
            .checked_shl(n_total as u32)
            .ok_or(Error::InvalidDimension { dim: usize::MAX })?;
        let mut acc = Array2::<Complex<T>>::eye(dim);
        for gate in &self.gates {
            let full = gate.operator::<T>(offset).embed(n_total)?;
            acc = full.dot(&acc);
        }
        QubitOperator::new(acc, (0..n_total).collect())
    }
}

/// Identifier for the three supported schemes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeName {
    Uncoded,
    C1,
    C2,
}

impl CodeName {
    pub const ALL: [CodeName; 3] = [CodeName::Uncoded, CodeName::C1, CodeName::C2];
}

impl fmt::Display for CodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CodeName::Uncoded => "uncoded",
            CodeName::C1 => "c1",
            CodeName::C2 => "c2",
        };
        f.write_str(s)
    }
}

impl FromStr for CodeName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "uncoded" => Ok(CodeName::Uncoded),
            "c1" => Ok(CodeName::C1),
            "c2" => Ok(CodeName::C2),
            _ => Err(Error::UnknownCode(s.to_string())),
        }
    }
}

/// A code's shape plus its encoding and decoding circuits.
///
/// The register convention throughout is `[R, Q, ancillas]`: qubit 0 is a
/// reference that never passes through the channel, qubit 1 carries the data,
/// and the remaining `n_physical - 1` qubits are the code's ancillas. Both
/// circuits act on the physical block, qubits `1..=n_physical`.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    name: CodeName,
    n_physical: usize,
    encoder: Circuit,
    decoder: Circuit,
}

impl CodeSpec {
    pub fn get(name: CodeName) -> Self {
        let (n_physical, encoder_gates, decoder_gates): (usize, Vec<Gate>, Vec<Gate>) = match name {
            CodeName::Uncoded => (1, vec![], vec![]),
            // Repetition in the Hadamard basis. Encoding fans the data out
            // onto three qubits and rotates all of them; decoding rotates
            // back, computes the syndrome onto the ancillas, and applies the
            // majority-vote correction.
            CodeName::C1 => (
                3,
                vec![
                    Gate::Cnot {
                        control: 0,
                        target: 1,
                    },
                    Gate::Cnot {
                        control: 0,
                        target: 2,
                    },
                    Gate::H(0),
                    Gate::H(1),
                    Gate::H(2),
                ],
                vec![
                    Gate::H(0),
                    Gate::H(1),
                    Gate::H(2),
                    Gate::Cnot {
                        control: 0,
                        target: 1,
                    },
                    Gate::Cnot {
                        control: 0,
                        target: 2,
                    },
                    Gate::Ccnot {
                        controls: [1, 2],
                        target: 0,
                    },
                ],
            ),
            // Data lives in span{|01>, |10>}, where a flip on both qubits is
            // a global phase. Decoding maps the span back onto qubit 0.
            CodeName::C2 => (
                2,
                vec![
                    Gate::X(1),
                    Gate::Cnot {
                        control: 0,
                        target: 1,
                    },
                ],
                vec![Gate::Cnot {
                    control: 0,
                    target: 1,
                }],
            ),
        };
        let encoder = Circuit::new(n_physical, encoder_gates).expect("static circuit");
        let decoder = Circuit::new(n_physical, decoder_gates).expect("static circuit");
        Self {
            name,
            n_physical,
            encoder,
            decoder,
        }
    }

    pub fn by_name(s: &str) -> Result<Self> {
        Ok(Self::get(s.parse()?))
    }

    pub fn name(&self) -> CodeName {
        self.name
    }

    /// Channel uses per data qubit.
    pub fn n_physical(&self) -> usize {
        self.n_physical
    }

    pub fn n_ancilla(&self) -> usize {
        self.n_physical - 1
    }

    /// Width of the full `[R, Q, ancillas]` register.
    pub fn register_qubits(&self) -> usize {
        1 + self.n_physical
    }

    /// Register positions that pass through the channel, in transmission
    /// order: the data qubit first, then the ancillas.
    pub fn noise_targets(&self) -> Vec<usize> {
        (1..=self.n_physical).collect()
    }

    pub fn encoder(&self) -> &Circuit {
        &self.encoder
    }

    pub fn decoder(&self) -> &Circuit {
        &self.decoder
    }

    /// Encodes a full register whose ancillas are in the ground state.
    pub fn encode<T: Real>(&self, psi: &StateVector<T>) -> Result<StateVector<T>> {
        self.check_register(psi.n_qubits(), psi.dim())?;
        let anc_mask = (1usize << self.n_ancilla()) - 1;
        if anc_mask != 0 {
            for (i, amp) in psi.amplitudes().iter().enumerate() {
                if i & anc_mask != 0 && amp.norm() > T::VALIDATION_TOL {
                    return Err(Error::AncillaNotGround);
                }
            }
        }
        let mut out = psi.clone();
        self.encoder.apply_mut(&mut out, 1)?;
        Ok(out)
    }

    /// Runs the decoding circuit on a full register, keeping every qubit.
    pub fn decode_pure<T: Real>(&self, psi: &StateVector<T>) -> Result<StateVector<T>> {
        self.check_register(psi.n_qubits(), psi.dim())?;
        let mut out = psi.clone();
        self.decoder.apply_mut(&mut out, 1)?;
        Ok(out)
    }

    /// Decodes a full-register density matrix and traces out the ancillas,
    /// returning the reduced `[R, Q]` state.
    pub fn decode<T: Real>(&self, rho: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
        self.check_register(rho.n_qubits(), rho.dim())?;
        let decoded = if self.decoder.gates().is_empty() {
            rho.clone()
        } else {
            let op = self.decoder.to_operator(rho.n_qubits(), 1)?;
            rho.apply_unitary(&op)?
        };
        decoded.partial_trace(&[0, 1])
    }

    fn check_register(&self, n_qubits: usize, dim: usize) -> Result<()> {
        if n_qubits != self.register_qubits() {
            return Err(Error::DimensionMismatch {
                expected: 1 << self.register_qubits(),
                actual: dim,
            });
        }
        Ok(())
    }
}
