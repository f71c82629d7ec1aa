//! Dense pure states and density matrices.
//!
//! Registers are small (at most five qubits in this crate), so states are
//! stored densely. Qubit 0 is the most significant bit of a basis index.

use ndarray::{Array1, Array2};
use num_complex::Complex;

use super::eigen::min_eigenvalue;
use super::operator::QubitOperator;
use crate::error_model::ErrorSequence;
use crate::{Error, PauliLabel, Real, Result};

/// Mask selecting qubit `q` inside an `n`-qubit basis index.
#[inline]
pub(crate) fn qubit_mask(n_qubits: usize, q: usize) -> usize {
    1 << (n_qubits - 1 - q)
}

/// Checks that `targets` are distinct indices into an `n`-qubit register.
pub(crate) fn validate_targets(targets: &[usize], n_qubits: usize) -> Result<()> {
    let mut seen = 0usize;
    for &t in targets {
        if t >= n_qubits {
            return Err(Error::QubitOutOfRange { index: t, n_qubits });
        }
        let bit = 1usize << t;
        if seen & bit != 0 {
            return Err(Error::DuplicateQubit { index: t });
        }
        seen |= bit;
    }
    Ok(())
}

/// Combined Z-mask for an error sequence: one bit per flipped target qubit.
fn flip_mask(seq: &ErrorSequence, targets: &[usize], n_qubits: usize) -> Result<usize> {
    if seq.len() != targets.len() {
        return Err(Error::DimensionMismatch {
            expected: targets.len(),
            actual: seq.len(),
        });
    }
    validate_targets(targets, n_qubits)?;
    let mut mask = 0usize;
    for (&label, &t) in seq.labels().iter().zip(targets) {
        if label == PauliLabel::Z {
            mask |= qubit_mask(n_qubits, t);
        }
    }
    Ok(mask)
}

#[inline]
fn parity_odd(bits: usize) -> bool {
    bits.count_ones() % 2 == 1
}

/// Normalized pure state on `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    amps: Array1<Complex<T>>,
    n_qubits: usize,
}

impl<T: Real> StateVector<T> {
    /// Wraps amplitudes after checking the dimension is a power of two and
    /// the norm is 1 within the scalar's validation tolerance.
    pub fn new(amps: Vec<Complex<T>>) -> Result<Self> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidDimension { dim });
        }
        let state = Self {
            amps: Array1::from_vec(amps),
            n_qubits: dim.trailing_zeros() as usize,
        };
        let norm = state.norm();
        if (norm - T::one()).abs() > T::VALIDATION_TOL {
            return Err(Error::NotNormalized {
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(state)
    }

    /// Computational basis state `|basis_index>` on `n_qubits` qubits.
    pub fn computational(n_qubits: usize, basis_index: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidParameter {
                name: "n_qubits",
                value: 0.0,
                constraint: "register needs at least one qubit",
            });
        }
        let dim = 1usize << n_qubits;
        if basis_index >= dim {
            return Err(Error::InvalidParameter {
                name: "basis_index",
                value: basis_index as f64,
                constraint: "must be below 2^n_qubits",
            });
        }
        let mut amps = Array1::from_elem(dim, Complex::new(T::zero(), T::zero()));
        amps[basis_index] = Complex::new(T::one(), T::zero());
        Ok(Self { amps, n_qubits })
    }

    /// Maximally entangled two-qubit state `(|00> + |11>) / sqrt(2)`.
    pub fn bell_state() -> Self {
        let h = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        Self {
            amps: Array1::from_vec(vec![h, zero, zero, h]),
            n_qubits: 2,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        self.amps.as_slice().expect("amplitudes are contiguous")
    }

    pub fn norm(&self) -> T {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * *b
            }))
    }

    /// Tensor product `self (x) other`, `self` on the more significant qubits.
    pub fn tensor(&self, other: &Self) -> Self {
        let d2 = other.dim();
        let mut amps = Vec::with_capacity(self.dim() * d2);
        for a in self.amps.iter() {
            for b in other.amps.iter() {
                amps.push(*a * *b);
            }
        }
        Self {
            amps: Array1::from_vec(amps),
            n_qubits: self.n_qubits + other.n_qubits,
        }
    }

    /// Projector `|self><self|` as a density matrix.
    pub fn to_density(&self) -> DensityMatrix<T> {
        let dim = self.dim();
        let mut mat = Array2::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                mat[[i, j]] = self.amps[i] * self.amps[j].conj();
            }
        }
        DensityMatrix {
            mat,
            n_qubits: self.n_qubits,
        }
    }

    /// Applies the tensor of identity/Z factors described by `seq`, with
    /// `seq[k]` acting on register qubit `targets[k]`. Phase flips only touch
    /// signs, so this is exact.
    pub fn apply_error_sequence(&self, seq: &ErrorSequence, targets: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        out.apply_error_sequence_mut(seq, targets)?;
        Ok(out)
    }

    /// In-place variant of [`Self::apply_error_sequence`].
    pub fn apply_error_sequence_mut(
        &mut self,
        seq: &ErrorSequence,
        targets: &[usize],
    ) -> Result<()> {
        let mask = flip_mask(seq, targets, self.n_qubits)?;
        if mask == 0 {
            return Ok(());
        }
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if parity_odd(i & mask) {
                *amp = -*amp;
            }
        }
        Ok(())
    }

    /// Applies a declared-unitary operator; rejects operators that fail the
    /// unitarity check at the scalar's validation tolerance.
    pub fn apply_unitary(&self, op: &QubitOperator<T>) -> Result<Self> {
        op.require_unitary()?;
        let full = op.embed(self.n_qubits)?;
        Ok(Self {
            amps: full.dot(&self.amps),
            n_qubits: self.n_qubits,
        })
    }

    /// Applies a 2x2 matrix to qubit `q`. Internal gate primitive; operator
    /// unitarity is the caller's concern.
    pub(crate) fn apply_single_qubit_mut(
        &mut self,
        q: usize,
        m: &[[Complex<T>; 2]; 2],
    ) -> Result<()> {
        validate_targets(&[q], self.n_qubits)?;
        let mask = qubit_mask(self.n_qubits, q);
        for i in 0..self.dim() {
            if i & mask == 0 {
                let j = i | mask;
                let a = self.amps[i];
                let b = self.amps[j];
                self.amps[i] = m[0][0] * a + m[0][1] * b;
                self.amps[j] = m[1][0] * a + m[1][1] * b;
            }
        }
        Ok(())
    }

    /// Flips `target` on the amplitudes where every control qubit is 1.
    /// Covers X (no controls), CNOT and the doubly-controlled NOT.
    pub(crate) fn apply_controlled_x_mut(
        &mut self,
        controls: &[usize],
        target: usize,
    ) -> Result<()> {
        let mut all = controls.to_vec();
        all.push(target);
        validate_targets(&all, self.n_qubits)?;
        let tmask = qubit_mask(self.n_qubits, target);
        let cmask = controls
            .iter()
            .fold(0usize, |m, &c| m | qubit_mask(self.n_qubits, c));
        for i in 0..self.dim() {
            if i & cmask == cmask && i & tmask == 0 {
                self.amps.swap(i, i | tmask);
            }
        }
        Ok(())
    }
}

/// Dense density matrix on `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T: Real> {
    mat: Array2<Complex<T>>,
    n_qubits: usize,
}

impl<T: Real> DensityMatrix<T> {
    /// Wraps a matrix after checking shape, Hermiticity, unit trace and
    /// positivity (smallest eigenvalue above the PSD floor).
    pub fn new(mat: Array2<Complex<T>>) -> Result<Self> {
        let dim = mat.nrows();
        if dim != mat.ncols() || dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidDimension { dim });
        }
        let state = Self {
            mat,
            n_qubits: dim.trailing_zeros() as usize,
        };
        state.validate()?;
        Ok(state)
    }

    /// Builder bypassing validation, for internal results that are valid by
    /// construction (unitary conjugation, partial traces, mixtures).
    pub(crate) fn from_parts(mat: Array2<Complex<T>>, n_qubits: usize) -> Self {
        debug_assert_eq!(mat.nrows(), 1 << n_qubits);
        debug_assert_eq!(mat.ncols(), 1 << n_qubits);
        Self { mat, n_qubits }
    }

    /// Projector onto a pure state.
    pub fn from_pure(psi: &StateVector<T>) -> Self {
        psi.to_density()
    }

    /// `I / 2^n`: the state of total ignorance.
    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidParameter {
                name: "n_qubits",
                value: 0.0,
                constraint: "register needs at least one qubit",
            });
        }
        let dim = 1usize << n_qubits;
        let w = Complex::new(T::one() / T::of(dim as f64), T::zero());
        let mut mat = Array2::zeros((dim, dim));
        for i in 0..dim {
            mat[[i, i]] = w;
        }
        Ok(Self { mat, n_qubits })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn entries(&self) -> &Array2<Complex<T>> {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.mat[[i, j]]
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim()).fold(Complex::new(T::zero(), T::zero()), |acc, i| {
            acc + self.mat[[i, i]]
        })
    }

    /// Re-checks the density-matrix invariants: Hermitian within tolerance,
    /// trace 1 within tolerance, eigenvalues above the PSD floor.
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        let mut herm_dev = T::zero();
        for i in 0..dim {
            for j in i..dim {
                let dev = (self.mat[[i, j]] - self.mat[[j, i]].conj()).norm();
                herm_dev = herm_dev.max(dev);
            }
        }
        if herm_dev > T::VALIDATION_TOL {
            return Err(Error::NotHermitian {
                deviation: herm_dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        let tr = self.trace();
        if (tr.re - T::one()).abs() > T::VALIDATION_TOL || tr.im.abs() > T::VALIDATION_TOL {
            return Err(Error::NotUnitTrace {
                trace: tr.re.to_f64().unwrap_or(f64::NAN),
            });
        }
        let min_eig = min_eigenvalue(&self.mat);
        if min_eig < -T::PSD_FLOOR {
            return Err(Error::NotPositive {
                eigenvalue: min_eig.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    /// Conjugates by the identity/Z tensor of `seq`: entry `(i, j)` keeps its
    /// magnitude and flips sign when exactly one of the two indices has odd
    /// parity on the flipped qubits.
    pub fn apply_error_sequence(&self, seq: &ErrorSequence, targets: &[usize]) -> Result<Self> {
        let mask = flip_mask(seq, targets, self.n_qubits)?;
        let mut mat = self.mat.clone();
        if mask != 0 {
            for ((i, j), v) in mat.indexed_iter_mut() {
                if parity_odd(i & mask) != parity_odd(j & mask) {
                    *v = -*v;
                }
            }
        }
        Ok(Self::from_parts(mat, self.n_qubits))
    }

    /// Conjugates by a declared-unitary operator: `U rho U^dagger`.
    pub fn apply_unitary(&self, op: &QubitOperator<T>) -> Result<Self> {
        op.require_unitary()?;
        let u = op.embed(self.n_qubits)?;
        let u_dag = u.t().mapv(|z| z.conj());
        Ok(Self::from_parts(
            u.dot(&self.mat).dot(&u_dag),
            self.n_qubits,
        ))
    }

    /// Traces out every qubit not listed in `keep`. Kept qubits stay in
    /// register order regardless of the order they are listed in.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptyKeep);
        }
        validate_targets(keep, self.n_qubits)?;
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        let n = self.n_qubits;
        let traced: Vec<usize> = (0..n).filter(|q| !kept.contains(q)).collect();
        let nk = kept.len();
        let nt = traced.len();

        let compose = |sub: usize, tr: usize| -> usize {
            let mut full = 0usize;
            for (r, &q) in kept.iter().enumerate() {
                full |= ((sub >> (nk - 1 - r)) & 1) << (n - 1 - q);
            }
            for (r, &q) in traced.iter().enumerate() {
                full |= ((tr >> (nt - 1 - r)) & 1) << (n - 1 - q);
            }
            full
        };

        let out_dim = 1usize << nk;
        let mut out = Array2::zeros((out_dim, out_dim));
        for a in 0..out_dim {
            for b in 0..out_dim {
                let mut acc = Complex::new(T::zero(), T::zero());
                for t in 0..1usize << nt {
                    acc += self.mat[[compose(a, t), compose(b, t)]];
                }
                out[[a, b]] = acc;
            }
        }
        Ok(Self::from_parts(out, nk))
    }
}

/// Overlap `<psi| rho |psi>` of a density matrix with a pure state.
///
/// The result of a well-formed input is real up to rounding; the real part
/// is clamped into `[0, 1]` so downstream consumers never see `1 + epsilon`.
pub fn fidelity_with_pure<T: Real>(psi: &StateVector<T>, rho: &DensityMatrix<T>) -> Result<T> {
    if psi.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: psi.dim(),
            actual: rho.dim(),
        });
    }
    let dim = psi.dim();
    let amps = psi.amplitudes();
    let mut acc = Complex::new(T::zero(), T::zero());
    for i in 0..dim {
        let mut row = Complex::new(T::zero(), T::zero());
        for (j, &amp) in amps.iter().enumerate() {
            row += rho.entry(i, j) * amp;
        }
        acc += amps[i].conj() * row;
    }
    debug_assert!(
        acc.im.abs() <= T::PSD_FLOOR,
        "fidelity of a Hermitian state must be real, got imaginary part {:?}",
        acc.im
    );
    Ok(acc.re.max(T::zero()).min(T::one()))
}
