//! Dense operators on declared qubit subsets.

use ndarray::Array2;
use num_complex::Complex;

use super::state::{qubit_mask, validate_targets};
use crate::{Error, Real, Result};

/// Dense complex matrix acting on an explicit, ordered list of qubits.
///
/// `targets[0]` is the most significant bit of the operator's local index.
/// Target indices are checked against a concrete register only when the
/// operator is embedded or applied.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitOperator<T: Real> {
    mat: Array2<Complex<T>>,
    targets: Vec<usize>,
}

impl<T: Real> QubitOperator<T> {
    /// Wraps a matrix whose dimension must be `2^targets.len()`.
    pub fn new(mat: Array2<Complex<T>>, targets: Vec<usize>) -> Result<Self> {
        if targets.is_empty() {
            return Err(Error::InvalidParameter {
                name: "targets",
                value: 0.0,
                constraint: "operator must act on at least one qubit",
            });
        }
        let mut seen = std::collections::HashSet::new();
        for &t in &targets {
            if !seen.insert(t) {
                return Err(Error::DuplicateQubit { index: t });
            }
        }
        let dim = 1usize << targets.len();
        if mat.nrows() != dim || mat.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: mat.nrows().max(mat.ncols()),
            });
        }
        Ok(Self { mat, targets })
    }

    /// Identity on the given qubits.
    pub fn identity(targets: Vec<usize>) -> Result<Self> {
        let dim = 1usize << targets.len();
        let mut mat = Array2::zeros((dim, dim));
        for i in 0..dim {
            mat[[i, i]] = Complex::new(T::one(), T::zero());
        }
        Self::new(mat, targets)
    }

    pub fn matrix(&self) -> &Array2<Complex<T>> {
        &self.mat
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// Conjugate transpose on the same targets.
    pub fn adjoint(&self) -> Self {
        Self {
            mat: self.mat.t().mapv(|z| z.conj()),
            targets: self.targets.clone(),
        }
    }

    /// Largest entry of `U^dagger U - I`.
    pub fn unitarity_deviation(&self) -> T {
        let dim = self.dim();
        let gram = self.mat.t().mapv(|z| z.conj()).dot(&self.mat);
        let mut dev = T::zero();
        for i in 0..dim {
            for j in 0..dim {
                let expect = if i == j { T::one() } else { T::zero() };
                let d = (gram[[i, j]] - Complex::new(expect, T::zero())).norm();
                dev = dev.max(d);
            }
        }
        dev
    }

    /// True when `U^dagger U = I` within `tol`.
    pub fn is_unitary(&self, tol: T) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// Errors unless the operator is unitary at the scalar's validation
    /// tolerance. Gate application goes through this check.
    pub fn require_unitary(&self) -> Result<()> {
        let dev = self.unitarity_deviation();
        if dev > T::VALIDATION_TOL {
            return Err(Error::NotUnitary {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    /// Expands the operator to the full `2^n x 2^n` matrix on an `n`-qubit
    /// register, identity on every qubit not in `targets`.
    pub fn embed(&self, n_qubits: usize) -> Result<Array2<Complex<T>>> {
        validate_targets(&self.targets, n_qubits)?;
        let m = self.targets.len();
        let full_dim = 1usize << n_qubits;

        let target_mask: usize = self
            .targets
            .iter()
            .fold(0, |acc, &q| acc | qubit_mask(n_qubits, q));
        // Gather the target bits of a full index into a local index.
        let local_of = |full: usize| -> usize {
            self.targets.iter().enumerate().fold(0, |acc, (r, &q)| {
                acc | (((full & qubit_mask(n_qubits, q)) != 0) as usize) << (m - 1 - r)
            })
        };
        // Scatter a local index back into target bit positions.
        let scatter = |local: usize| -> usize {
            self.targets.iter().enumerate().fold(0, |acc, (r, &q)| {
                acc | (((local >> (m - 1 - r)) & 1) << (n_qubits - 1 - q))
            })
        };

        let mut out = Array2::zeros((full_dim, full_dim));
        for row in 0..full_dim {
            let rest = row & !target_mask;
            let local_row = local_of(row);
            for local_col in 0..1usize << m {
                let col = rest | scatter(local_col);
                out[[row, col]] = self.mat[[local_row, local_col]];
            }
        }
        Ok(out)
    }
}
