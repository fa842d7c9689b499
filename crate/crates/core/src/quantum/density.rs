use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::probcore::ProbVector;
use crate::scalar::Real;

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    matrix: CMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates a candidate state.
    ///
    /// Small anti-Hermitian noise is removed by symmetrizing; a defect above
    /// [`Real::hermitian_warn`] is logged and one above
    /// [`Real::hermitian_reject`] is an error. Eigenvalues below
    /// `-`[`Real::psd_floor`] are rejected.
    pub fn new(matrix: CMatrix<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        let defect = matrix.hermitian_defect();
        if !(defect <= T::hermitian_reject()) {
            return Err(Error::NotHermitian(defect.approx_f64()));
        }
        if defect > T::hermitian_warn() {
            log::warn!(
                "density matrix is not Hermitian to {:e}; symmetrizing",
                defect.approx_f64()
            );
        }
        let matrix = matrix.hermitian_part();
        let trace = matrix.trace().re;
        if !((trace - T::one()).abs() <= T::simplex_tol()) {
            return Err(Error::InvalidTrace(trace.approx_f64()));
        }
        let min = matrix
            .hermitian_eigenvalues()
            .first()
            .copied()
            .unwrap_or_else(T::zero);
        if min < -T::psd_floor() {
            return Err(Error::NotPositive(min.approx_f64()));
        }
        Ok(Self { matrix })
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        Self::new(CMatrix::from_rows(rows)?)
    }

    pub fn from_real_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| Complex::new(x, T::zero())).collect())
            .collect();
        Self::from_rows(rows)
    }

    /// `|ψ⟩⟨ψ|`; the amplitudes must already be normalized.
    pub fn from_pure(amplitudes: &[Complex<T>]) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidInput("empty state vector".into()));
        }
        let norm = amplitudes
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr());
        if !((norm - T::one()).abs() <= T::simplex_tol()) {
            return Err(Error::InvalidTrace(norm.approx_f64()));
        }
        Ok(Self {
            matrix: CMatrix::outer(amplitudes),
        })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: CMatrix::identity(dim).scale(T::one() / T::from_count(dim)),
        }
    }

    /// Convex combination `Σ p_k ρ_k`.
    pub fn mixture(weights: &ProbVector<T>, states: &[Self]) -> Result<Self> {
        if weights.len() != states.len() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                found: states.len(),
            });
        }
        let dim = states[0].dim();
        let mut acc = CMatrix::zeros(dim, dim);
        for (&p, s) in weights.iter().zip(states) {
            acc = acc.add(&s.matrix.scale(p))?;
        }
        Self::new(acc)
    }

    /// `ρ ⊗ σ`
    pub fn product(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<T> {
        self.matrix.hermitian_eigenvalues()
    }
}
