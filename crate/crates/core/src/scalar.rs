//! Scalar abstractions.
//!
//! [`Scalar`] covers everything the stochastic-matrix algebra needs: ring
//! arithmetic, ordering and a per-type tolerance. It is implemented for
//! `f32`, `f64` and [`Rational64`], so compositions, star products and the
//! CHSH functional can be evaluated exactly.
//!
//! [`Real`] adds transcendental functions and the remaining tolerances used by
//! the quantum side (unitarity, positivity, witness margin).

use std::fmt;
use std::ops::Neg;

use num_rational::Rational64;
use num_traits::{Float, FloatConst, Num, Signed};

pub trait Scalar:
    Copy + Num + Neg<Output = Self> + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Absolute tolerance for simplex membership and stochastic column/row sums.
    fn simplex_tol() -> Self;

    fn magnitude(self) -> Self;

    /// Lossy conversion used for diagnostics and error messages.
    fn approx_f64(self) -> f64;

    fn from_count(n: usize) -> Self {
        let mut acc = Self::zero();
        for _ in 0..n {
            acc = acc + Self::one();
        }
        acc
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

pub trait Real: Scalar + Float + FloatConst {
    /// Tolerance for spectral assertions (eigenvalue moduli, reconstructions).
    fn spectral_tol() -> Self;
    /// Maximum entrywise defect of `U U^dag - I` accepted as unitary.
    fn unitary_tol() -> Self;
    /// Eigenvalue floor for positive semidefiniteness (stored as a positive number).
    fn psd_floor() -> Self;
    /// Hermiticity correction above which a warning is logged.
    fn hermitian_warn() -> Self;
    /// Hermiticity defect above which a matrix is rejected.
    fn hermitian_reject() -> Self;
    /// Margin above the classical bound required to claim a witness.
    fn witness_margin() -> Self;

    fn of(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("f64 literal representable")
    }
}

impl Scalar for f64 {
    fn simplex_tol() -> Self {
        1e-12
    }
    fn magnitude(self) -> Self {
        self.abs()
    }
    fn approx_f64(self) -> f64 {
        self
    }
}

impl Real for f64 {
    fn spectral_tol() -> Self {
        1e-10
    }
    fn unitary_tol() -> Self {
        1e-10
    }
    fn psd_floor() -> Self {
        1e-10
    }
    fn hermitian_warn() -> Self {
        1e-9
    }
    fn hermitian_reject() -> Self {
        1e-6
    }
    fn witness_margin() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn simplex_tol() -> Self {
        1e-5
    }
    fn magnitude(self) -> Self {
        self.abs()
    }
    fn approx_f64(self) -> f64 {
        self as f64
    }
}

impl Real for f32 {
    fn spectral_tol() -> Self {
        1e-4
    }
    fn unitary_tol() -> Self {
        1e-5
    }
    fn psd_floor() -> Self {
        1e-5
    }
    fn hermitian_warn() -> Self {
        1e-5
    }
    fn hermitian_reject() -> Self {
        1e-3
    }
    fn witness_margin() -> Self {
        1e-4
    }
}

impl Scalar for Rational64 {
    fn simplex_tol() -> Self {
        Rational64::from_integer(0)
    }
    fn magnitude(self) -> Self {
        Signed::abs(&self)
    }
    fn approx_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// `|a - b| <= tol`
pub(crate) fn close<T: Scalar>(a: T, b: T, tol: T) -> bool {
    (a - b).magnitude() <= tol
}
