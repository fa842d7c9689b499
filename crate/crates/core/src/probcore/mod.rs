//! Probability vectors, stochastic matrices and their semigroup algebra.
//!
//! Types validate on construction and are immutable afterwards. All
//! operations are pure, so values can be shared freely across threads.

mod stochastic;
mod vector;

pub use stochastic::{BistochasticMatrix, StochasticMatrix};
pub use vector::ProbVector;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Matrix};
use crate::scalar::{Real, Scalar};

/// Matrix product of two stochastic matrices.
pub fn compose<T: Scalar>(a: &StochasticMatrix<T>, b: &StochasticMatrix<T>) -> Result<StochasticMatrix<T>> {
    a.compose(b)
}

/// Associative star product of two distributions of equal length.
///
/// Component `m` is `Σ_k w[(m - k) mod N] · v[k]`, i.e. the first column of the
/// product of the circulant bistochastic embeddings of `w` and `v`. For two
/// outcomes this is `(w₁v₁ + w₂v₂, w₂v₁ + w₁v₂)`.
pub fn star_product<T: Scalar>(w: &ProbVector<T>, v: &ProbVector<T>) -> Result<ProbVector<T>> {
    let n = w.len();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    let entries = (0..n)
        .map(|m| (0..n).fold(T::zero(), |acc, k| acc + w[(m + n - k) % n] * v[k]))
        .collect();
    Ok(ProbVector::new_unchecked(entries))
}

/// Star product with the reflected index rule `Σ_k w[(k + m) mod N] · v[k]`.
///
/// Coincides with [`star_product`] for `N = 2`. For `N >= 3` it is still a
/// probability vector but the operation is not associative.
pub fn reflected_star_product<T: Scalar>(w: &ProbVector<T>, v: &ProbVector<T>) -> Result<ProbVector<T>> {
    let n = w.len();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    let entries = (0..n)
        .map(|m| (0..n).fold(T::zero(), |acc, k| acc + w[(k + m) % n] * v[k]))
        .collect();
    Ok(ProbVector::new_unchecked(entries))
}

/// Entrywise squared moduli of a unitary matrix.
pub fn unistochastic<T: Real>(u: &CMatrix<T>) -> Result<BistochasticMatrix<T>> {
    let defect = u.unitarity_defect();
    if !(defect <= T::unitary_tol()) {
        return Err(Error::NotUnitary(defect.approx_f64()));
    }
    let n = u.rows();
    let m = Matrix::from_fn(n, n, |r, c| u.get(r, c).norm_sqr());
    BistochasticMatrix::new(StochasticMatrix::new(m)?)
}

/// Spectral data of a 2×2 stochastic matrix `[[p, q], [1-p, 1-q]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigensystem2<T> {
    /// `(1, p - q)`
    pub values: [T; 2],
    /// Eigenvectors as columns: `(q, 1 - p)` for eigenvalue 1 and `(-1, 1)` for `p - q`.
    pub vectors: Matrix<T>,
    /// Fixed point `(q, 1 - p) / (1 - p + q)`.
    pub stationary: ProbVector<T>,
}

impl<T: Scalar> Eigensystem2<T> {
    /// `U · diag(λ) · U⁻¹`
    pub fn reconstruct(&self) -> Matrix<T> {
        let u = &self.vectors;
        let det = u.get(0, 0) * u.get(1, 1) - u.get(0, 1) * u.get(1, 0);
        let inv = Matrix::from_rows(vec![
            vec![u.get(1, 1) / det, -u.get(0, 1) / det],
            vec![-u.get(1, 0) / det, u.get(0, 0) / det],
        ])
        .expect("2x2");
        let diag = Matrix::from_rows(vec![
            vec![self.values[0], T::zero()],
            vec![T::zero(), self.values[1]],
        ])
        .expect("2x2");
        u.mul(&diag).and_then(|ud| ud.mul(&inv)).expect("2x2")
    }

    /// `lim M^n` when `|p - q| < 1`: both columns equal the stationary vector.
    pub fn limit(&self) -> StochasticMatrix<T> {
        StochasticMatrix::from_columns(&[self.stationary.clone(), self.stationary.clone()])
            .expect("2x2")
    }
}

/// Closed-form eigensystem of a 2×2 stochastic matrix.
///
/// The eigenvectors are taken in the form `(q, 1-p)` / `(-1, 1)`, which stays
/// well defined for `p = q` (eigenvalue 0) and for `q = 0`.
pub fn eigensystem_2x2<T: Scalar>(m: &StochasticMatrix<T>) -> Result<Eigensystem2<T>> {
    if m.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: m.dim(),
        });
    }
    let p = m.get(0, 0);
    let q = m.get(0, 1);
    let one = T::one();
    let (v0, v1) = if q == T::zero() && p == one {
        // identity: every vector is fixed
        (one, T::zero())
    } else {
        (q, one - p)
    };
    let norm = v0 + v1;
    let stationary = ProbVector::new(vec![v0 / norm, v1 / norm])?;
    let vectors = Matrix::from_rows(vec![vec![v0, -one], vec![v1, one]])?;
    Ok(Eigensystem2 {
        values: [one, p - q],
        vectors,
        stationary,
    })
}

/// `M^n`; `n == 0` gives the identity.
pub fn power<T: Scalar>(m: &StochasticMatrix<T>, n: u32) -> StochasticMatrix<T> {
    m.power(n)
}

pub fn vectorize<T: Scalar>(m: &Matrix<T>) -> Vec<T> {
    m.vectorize()
}

/// `Tr(m1ᵗ m2)`, the Euclidean scalar product of the vectorized matrices.
pub fn dot<T: Scalar>(m1: &Matrix<T>, m2: &Matrix<T>) -> Result<T> {
    m1.dot(m2)
}

pub fn permute_columns<T: Scalar>(m: &StochasticMatrix<T>, sigma: &[usize]) -> Result<StochasticMatrix<T>> {
    m.permute_columns(sigma)
}

pub fn permute_rows<T: Scalar>(m: &StochasticMatrix<T>, sigma: &[usize]) -> Result<StochasticMatrix<T>> {
    m.permute_rows(sigma)
}
