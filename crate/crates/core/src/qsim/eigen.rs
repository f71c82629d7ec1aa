//! Eigenvalues of Hermitian matrices by cyclic Jacobi rotations.
//!
//! Sized for this crate's states (at most 32 x 32), where Jacobi is simple,
//! dependency-free and accurate to a few ulps. The input is assumed
//! Hermitian; callers validate that separately.

use ndarray::Array2;
use num_complex::Complex;

use crate::Real;

/// Upper bound on full sweeps; Jacobi converges quadratically, so a handful
/// suffice and hitting the cap means the input was far from Hermitian.
const MAX_SWEEPS: usize = 64;

/// Eigenvalues of the Hermitian matrix `a`, sorted ascending.
///
/// Off-diagonal mass is annihilated pairwise with unitary plane rotations
/// until it falls below `n * epsilon` relative to the Frobenius norm.
pub fn hermitian_eigenvalues<T: Real>(a: &Array2<Complex<T>>) -> Vec<T> {
    let n = a.nrows();
    debug_assert_eq!(n, a.ncols(), "eigenvalue input must be square");
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![a[[0, 0]].re];
    }

    let mut m = a.clone();
    let scale = frobenius(&m).max(T::min_positive_value());
    let tol = T::epsilon() * T::of(n as f64) * scale;

    for _ in 0..MAX_SWEEPS {
        if off_diag_norm(&m) <= tol {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, p, q);
            }
        }
    }

    let mut eig: Vec<T> = (0..n).map(|i| m[[i, i]].re).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    eig
}

/// Smallest eigenvalue of the Hermitian matrix `a`.
pub fn min_eigenvalue<T: Real>(a: &Array2<Complex<T>>) -> T {
    hermitian_eigenvalues(a)
        .into_iter()
        .next()
        .expect("matrix has at least one eigenvalue")
}

fn frobenius<T: Real>(m: &Array2<Complex<T>>) -> T {
    m.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

fn off_diag_norm<T: Real>(m: &Array2<Complex<T>>) -> T {
    let n = m.nrows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[[i, j]].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation zeroing `m[p][q]` (and its mirror) via the unitary
///
/// ```text
/// U[p][p] = c          U[p][q] = s * phase
/// U[q][p] = -s * conj(phase)   U[q][q] = c
/// ```
///
/// with `phase = m[p][q] / |m[p][q]|` and the classic tangent choice that
/// picks the smaller rotation angle for stability.
fn rotate<T: Real>(m: &mut Array2<Complex<T>>, p: usize, q: usize) {
    let apq = m[[p, q]];
    let abs_apq = apq.norm();
    if abs_apq == T::zero() {
        return;
    }

    let app = m[[p, p]].re;
    let aqq = m[[q, q]].re;
    let phase = apq / Complex::new(abs_apq, T::zero());

    let two = T::of(2.0);
    let tau = (aqq - app) / (two * abs_apq);
    let t = if tau >= T::zero() {
        T::one() / (tau + (T::one() + tau * tau).sqrt())
    } else {
        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    let cs = Complex::new(c, T::zero());
    let s_phase = phase * s;
    let n = m.nrows();

    // Columns: right-multiply by U.
    for k in 0..n {
        let akp = m[[k, p]];
        let akq = m[[k, q]];
        m[[k, p]] = akp * cs - akq * s_phase.conj();
        m[[k, q]] = akp * s_phase + akq * cs;
    }
    // Rows: left-multiply by U^dagger.
    for k in 0..n {
        let apk = m[[p, k]];
        let aqk = m[[q, k]];
        m[[p, k]] = apk * cs - aqk * s_phase;
        m[[q, k]] = apk * s_phase.conj() + aqk * cs;
    }

    // The rotation is built to annihilate this pair; pin it and keep the
    // diagonal real so rounding cannot reintroduce phantom imaginary parts.
    m[[p, q]] = Complex::new(T::zero(), T::zero());
    m[[q, p]] = Complex::new(T::zero(), T::zero());
    m[[p, p]] = Complex::new(m[[p, p]].re, T::zero());
    m[[q, q]] = Complex::new(m[[q, q]].re, T::zero());
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_matrix_is_returned_sorted() {
        let a = array![[c(3.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)],];
        assert_eq!(hermitian_eigenvalues(&a), vec![-1.0, 3.0]);
        assert_eq!(min_eigenvalue(&a), -1.0);
    }

    #[test]
    fn pauli_x_eigenvalues() {
        let a = array![[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)],];
        let w = hermitian_eigenvalues(&a);
        assert_abs_diff_eq!(w[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(w[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn complex_hermitian_matches_reference_solver() {
        // Eigenvalues frozen from numpy.linalg.eigvalsh on the same matrix.
        let a = array![
            [c(2.0, 0.0), c(1.0, -2.0), c(0.5, 0.0), c(0.0, 1.0)],
            [c(1.0, 2.0), c(-1.0, 0.0), c(0.0, -0.5), c(1.5, 0.0)],
            [c(0.5, 0.0), c(0.0, 0.5), c(0.5, 0.0), c(-1.0, 1.0)],
            [c(0.0, -1.0), c(1.5, 0.0), c(-1.0, -1.0), c(3.0, 0.0)],
        ];
        let expected = [
            -2.7982230790477423,
            -0.06946086856925655,
            3.0618534644148157,
            4.305830483202184,
        ];
        let w = hermitian_eigenvalues(&a);
        for (got, want) in w.iter().zip(expected) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn eigenvalue_sum_equals_trace() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(5);
        for n in [2usize, 3, 5, 8] {
            let mut a = Array2::<Complex64>::zeros((n, n));
            for i in 0..n {
                for j in i..n {
                    let z = if i == j {
                        c(rng.random::<f64>() - 0.5, 0.0)
                    } else {
                        c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
                    };
                    a[[i, j]] = z;
                    a[[j, i]] = z.conj();
                }
            }
            let trace: f64 = (0..n).map(|i| a[[i, i]].re).sum();
            let sum: f64 = hermitian_eigenvalues(&a).iter().sum();
            assert_abs_diff_eq!(sum, trace, epsilon = 1e-12);
        }
    }
}
