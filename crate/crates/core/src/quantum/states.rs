//! The entangled states used throughout the examples.

use num_complex::Complex;

use super::DensityMatrix;
use crate::linalg::CMatrix;
use crate::scalar::Real;

/// `|ψ⟩⟨ψ|` for `ψ` the normalized sum of the listed basis vectors, built
/// entrywise so that the nonzero entries are exactly `1/k`.
fn basis_sum<T: Real>(dim: usize, terms: &[usize]) -> DensityMatrix<T> {
    let weight = T::one() / T::from(terms.len()).expect("small count");
    let m = CMatrix::from_fn(dim, dim, |r, c| {
        if terms.contains(&r) && terms.contains(&c) {
            Complex::new(weight, T::zero())
        } else {
            Complex::new(T::zero(), T::zero())
        }
    });
    DensityMatrix::new(m).expect("rank-one projector")
}

/// `(|↑↑⟩ + |↓↓⟩)/√2` on two qubits.
pub fn bell_state<T: Real>() -> DensityMatrix<T> {
    basis_sum(4, &[0, 3])
}

/// `(|+1/2, +1⟩ + |-1/2, -1⟩)/√2` on a qubit and a qutrit.
pub fn qubit_qutrit_state<T: Real>() -> DensityMatrix<T> {
    basis_sum(6, &[0, 5])
}

/// `(|+1,+1⟩ + |0,0⟩ + |-1,-1⟩)/√3` on two qutrits.
pub fn two_qutrit_state<T: Real>() -> DensityMatrix<T> {
    basis_sum(9, &[0, 4, 8])
}
