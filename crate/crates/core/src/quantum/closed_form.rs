//! Explicit tomogram formulas for the three example states. These are
//! independent cross-checks of the generic `diag(U† ρ U)` route.

use num_complex::Complex;

use super::{qubit_unitary, qutrit_unitary, Direction};
use crate::probcore::ProbVector;
use crate::scalar::Real;

/// Joint tomogram of `(|↑↑⟩ + |↓↓⟩)/√2`, outcomes `(+,+), (+,-), (-,+), (-,-)`.
pub fn bell_state_tomogram_closed_form<T: Real>(
    d1: &Direction<T>,
    d2: &Direction<T>,
) -> ProbVector<T> {
    let half = T::of(0.5);
    let quarter = T::of(0.25);
    let (s1, c1) = (d1.theta * half).sin_cos();
    let (s2, c2) = (d2.theta * half).sin_cos();
    let (s1, c1, s2, c2) = (s1 * s1, c1 * c1, s2 * s2, c2 * c2);
    let cross = quarter * d1.theta.sin() * d2.theta.sin() * (d1.phi + d2.phi).cos();
    let same = half * (c1 * c2 + s1 * s2) + cross;
    let opposite = half * (c1 * s2 + s1 * c2) - cross;
    ProbVector::new_unchecked(vec![same, opposite, opposite, same])
}

/// Joint tomogram of `(|+1/2, +1⟩ + |-1/2, -1⟩)/√2`:
/// `w(m1, m2) = ½ |U_{1 m1} V_{1 m2} + U_{2 m1} V_{3 m2}|²`.
pub fn qubit_qutrit_tomogram_closed_form<T: Real>(
    d1: &Direction<T>,
    d2: &Direction<T>,
) -> ProbVector<T> {
    let u = qubit_unitary(d1);
    let v = qutrit_unitary(d2);
    let half = T::of(0.5);
    let mut w = Vec::with_capacity(6);
    for m1 in 0..2 {
        for m2 in 0..3 {
            let amp = u.get(0, m1) * v.get(0, m2) + u.get(1, m1) * v.get(2, m2);
            w.push(half * amp.norm_sqr());
        }
    }
    ProbVector::new_unchecked(w)
}

/// Joint tomogram of `(|+1,+1⟩ + |0,0⟩ + |-1,-1⟩)/√3`:
/// `w(m1, m2) = ⅓ |Σ_j U_{j m1} V_{j m2}|²`.
pub fn two_qutrit_tomogram_closed_form<T: Real>(
    d1: &Direction<T>,
    d2: &Direction<T>,
) -> ProbVector<T> {
    let u = qutrit_unitary(d1);
    let v = qutrit_unitary(d2);
    let third = T::one() / T::of(3.0);
    let mut w = Vec::with_capacity(9);
    for m1 in 0..3 {
        for m2 in 0..3 {
            let amp = (0..3).fold(Complex::new(T::zero(), T::zero()), |acc, j| {
                acc + u.get(j, m1) * v.get(j, m2)
            });
            w.push(third * amp.norm_sqr());
        }
    }
    ProbVector::new_unchecked(w)
}
