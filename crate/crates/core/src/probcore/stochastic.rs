use std::ops::Deref;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{general_eigenvalues, Matrix};
use crate::probcore::ProbVector;
use crate::scalar::{close, Real, Scalar};

/// Square matrix whose columns are probability vectors.
///
/// Column-stochastic: it maps probability vectors to probability vectors by
/// left multiplication, and the set is closed under the matrix product.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct StochasticMatrix<T> {
    inner: Matrix<T>,
}

impl<T: Scalar> StochasticMatrix<T> {
    pub fn new(m: Matrix<T>) -> Result<Self> {
        if !m.is_square() || m.rows() == 0 {
            return Err(Error::NotStochastic(format!(
                "shape {}x{} is not square",
                m.rows(),
                m.cols()
            )));
        }
        for j in 0..m.cols() {
            ProbVector::validate(&m.column(j))
                .map_err(|e| Error::NotStochastic(format!("column {j}: {e}")))?;
        }
        Ok(Self { inner: m })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn from_columns(columns: &[ProbVector<T>]) -> Result<Self> {
        let n = columns.len();
        if let Some(bad) = columns.iter().find(|c| c.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(Self {
            inner: Matrix::from_fn(n, n, |r, c| columns[c][r]),
        })
    }

    pub(crate) fn new_unchecked(m: Matrix<T>) -> Self {
        Self { inner: m }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            inner: Matrix::identity(n),
        }
    }

    /// `[[p, q], [1 - p, 1 - q]]`
    pub fn two_state(p: T, q: T) -> Result<Self> {
        Self::from_rows(vec![vec![p, q], vec![T::one() - p, T::one() - q]])
    }

    pub fn dim(&self) -> usize {
        self.inner.rows()
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.inner.get(row, col)
    }

    pub fn column(&self, col: usize) -> ProbVector<T> {
        ProbVector::new_unchecked(self.inner.column(col))
    }

    pub fn columns(&self) -> Vec<ProbVector<T>> {
        (0..self.dim()).map(|j| self.column(j)).collect()
    }

    pub fn as_matrix(&self) -> &Matrix<T> {
        &self.inner
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.inner
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.inner.to_rows()
    }

    pub fn trace(&self) -> T {
        self.inner.trace()
    }

    /// Matrix product `self · other`; the result is again stochastic.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(Self {
            inner: self.inner.mul(&other.inner)?,
        })
    }

    pub fn apply(&self, v: &ProbVector<T>) -> Result<ProbVector<T>> {
        Ok(ProbVector::new_unchecked(self.inner.mul_vec(v.entries())?))
    }

    /// `self^n` by repeated squaring; `n == 0` gives the identity.
    pub fn power(&self, n: u32) -> Self {
        let mut result = Self::identity(self.dim());
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base).expect("equal dims");
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base).expect("equal dims");
            }
        }
        result
    }

    /// Kronecker product; the tensor product of stochastic matrices is stochastic.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            inner: self.inner.kron(&other.inner),
        }
    }

    /// Column `j` of the result is column `sigma[j]` of `self`.
    pub fn permute_columns(&self, sigma: &[usize]) -> Result<Self> {
        check_permutation(sigma, self.dim())?;
        Ok(Self {
            inner: Matrix::from_fn(self.dim(), self.dim(), |r, c| self.get(r, sigma[c])),
        })
    }

    /// Row `i` of the result is row `sigma[i]` of `self`.
    pub fn permute_rows(&self, sigma: &[usize]) -> Result<Self> {
        check_permutation(sigma, self.dim())?;
        Ok(Self {
            inner: Matrix::from_fn(self.dim(), self.dim(), |r, c| self.get(sigma[r], c)),
        })
    }

    pub fn is_bistochastic(&self) -> bool {
        let tol = T::simplex_tol();
        (0..self.dim()).all(|r| {
            let s = self.inner.row(r).iter().fold(T::zero(), |a, &x| a + x);
            close(s, T::one(), tol)
        })
    }

    /// Convex combination of stochastic matrices of equal dimension.
    pub fn mixture(weights: &ProbVector<T>, matrices: &[Self]) -> Result<Self> {
        if weights.len() != matrices.len() || matrices.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                found: matrices.len(),
            });
        }
        let n = matrices[0].dim();
        let mut acc = Matrix::zeros(n, n);
        for (&w, m) in weights.iter().zip(matrices) {
            if m.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.dim(),
                });
            }
            acc = acc.add(&m.inner.scale(w))?;
        }
        Self::new(acc)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.inner.max_abs_diff(&other.inner)
    }
}

impl<T: Real> StochasticMatrix<T> {
    pub fn eigenvalues(&self) -> Vec<Complex<T>> {
        general_eigenvalues(&self.inner).expect("square by construction")
    }

    pub fn spectral_radius(&self) -> T {
        self.eigenvalues()
            .iter()
            .fold(T::zero(), |acc, z| acc.max(z.norm()))
    }
}

fn check_permutation(sigma: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if sigma.len() != n {
        return Err(Error::InvalidPermutation(sigma.to_vec()));
    }
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(Error::InvalidPermutation(sigma.to_vec()));
        }
        seen[s] = true;
    }
    Ok(())
}

/// Stochastic matrix whose rows also sum to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct BistochasticMatrix<T> {
    inner: StochasticMatrix<T>,
}

impl<T: Scalar> BistochasticMatrix<T> {
    pub fn new(m: StochasticMatrix<T>) -> Result<Self> {
        let tol = T::simplex_tol();
        for r in 0..m.dim() {
            let s = m.as_matrix().row(r).iter().fold(T::zero(), |a, &x| a + x);
            if !close(s, T::one(), tol) {
                return Err(Error::NotBistochastic(format!("row {r} sums to {s}")));
            }
        }
        Ok(Self { inner: m })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        Self::new(StochasticMatrix::from_rows(rows)?)
    }

    /// `[[p, 1 - p], [1 - p, p]]`
    pub fn two_state(p: T) -> Result<Self> {
        Self::from_rows(vec![vec![p, T::one() - p], vec![T::one() - p, p]])
    }

    /// Circulant embedding: entry `(m, k)` is `w[(m - k) mod N]`, so column 0 is `w`.
    pub fn circulant(w: &ProbVector<T>) -> Self {
        let n = w.len();
        let inner = Matrix::from_fn(n, n, |m, k| w[(m + n - k) % n]);
        Self {
            inner: StochasticMatrix::new_unchecked(inner),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            inner: StochasticMatrix::identity(n),
        }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            inner: self.inner.compose(&other.inner)?,
        })
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            inner: self.inner.tensor(&other.inner),
        }
    }

    pub fn into_stochastic(self) -> StochasticMatrix<T> {
        self.inner
    }
}

impl<T> Deref for BistochasticMatrix<T> {
    type Target = StochasticMatrix<T>;

    fn deref(&self) -> &StochasticMatrix<T> {
        &self.inner
    }
}

impl<T: Scalar> TryFrom<StochasticMatrix<T>> for BistochasticMatrix<T> {
    type Error = Error;

    fn try_from(m: StochasticMatrix<T>) -> Result<Self> {
        Self::new(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn example() -> StochasticMatrix<f64> {
        StochasticMatrix::two_state(0.1, 0.4).unwrap()
    }

    #[test]
    fn rejects_bad_columns() {
        assert!(StochasticMatrix::from_rows(vec![vec![0.5, 0.5], vec![0.6, 0.5]]).is_err());
        assert!(StochasticMatrix::from_rows(vec![vec![1.2, 0.5], vec![-0.2, 0.5]]).is_err());
        assert!(StochasticMatrix::<f64>::from_rows(vec![vec![1.0, 0.0]]).is_err());
    }

    #[test]
    fn compose_with_identity() {
        let m = example();
        assert_eq!(m.compose(&StochasticMatrix::identity(2)).unwrap(), m);
    }

    #[test]
    fn compose_example_square_exact() {
        // p3 = p1 p2 + q1 (1 - p2), q3 = p1 q2 + q1 (1 - q2)
        let m = StochasticMatrix::two_state(r(1, 10), r(2, 5)).unwrap();
        let sq = m.compose(&m).unwrap();
        let expected = StochasticMatrix::from_rows(vec![
            vec![r(37, 100), r(28, 100)],
            vec![r(63, 100), r(72, 100)],
        ])
        .unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn compose_example_square_float() {
        let sq = example().compose(&example()).unwrap();
        let expected =
            StochasticMatrix::from_rows(vec![vec![0.37, 0.28], vec![0.63, 0.72]]).unwrap();
        assert!(sq.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn bistochastic_semigroup_formula() {
        let n1 = BistochasticMatrix::two_state(r(3, 10)).unwrap();
        let n2 = BistochasticMatrix::two_state(r(6, 10)).unwrap();
        let n3 = n1.compose(&n2).unwrap();
        // p3 = p1 p2 + (1 - p1)(1 - p2)
        assert_eq!(n3.get(0, 0), r(46, 100));
        assert_eq!(n3.get(1, 0), r(54, 100));
        assert!(n3.is_bistochastic());
    }

    #[test]
    fn compose_dimension_mismatch() {
        let a = StochasticMatrix::<f64>::identity(2);
        let b = StochasticMatrix::<f64>::identity(3);
        assert!(matches!(a.compose(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn permutations_of_example() {
        let m = example();
        let cols = m.permute_columns(&[1, 0]).unwrap();
        assert_eq!(cols.to_rows(), vec![vec![0.4, 0.1], vec![0.6, 0.9]]);
        let rows = m.permute_rows(&[1, 0]).unwrap();
        assert_eq!(rows.to_rows(), vec![vec![0.9, 0.6], vec![0.1, 0.4]]);
        assert_eq!(m.permute_rows(&[0, 1]).unwrap(), m);
    }

    #[test]
    fn invalid_permutations() {
        let m = example();
        assert!(matches!(
            m.permute_rows(&[0, 0]),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(m.permute_columns(&[0, 2]).is_err());
        assert!(m.permute_columns(&[0]).is_err());
    }

    #[test]
    fn power_zero_and_one() {
        let m = example();
        assert_eq!(m.power(0), StochasticMatrix::identity(2));
        assert_eq!(m.power(1), m);
        let by_hand = m.compose(&m).unwrap().compose(&m).unwrap();
        assert!(m.power(3).max_abs_diff(&by_hand) < 1e-15);
    }

    #[test]
    fn bistochastic_half_squared() {
        let n = BistochasticMatrix::two_state(r(1, 2)).unwrap();
        let sq = n.power(2);
        assert!(sq.to_rows().iter().flatten().all(|&x| x == r(1, 2)));
    }

    #[test]
    fn bistochastic_rejects_row_defect() {
        let m = example();
        assert!(BistochasticMatrix::new(m).is_err());
    }

    #[test]
    fn circulant_embedding_first_column() {
        let w = ProbVector::new(vec![r(1, 2), r(1, 3), r(1, 6)]).unwrap();
        let c = BistochasticMatrix::circulant(&w);
        assert_eq!(c.column(0), w);
        assert!(BistochasticMatrix::new(c.clone().into_stochastic()).is_ok());
    }

    #[test]
    fn example_eigenvalues_and_trace() {
        let m = example();
        let mut ev: Vec<f64> = m.eigenvalues().iter().map(|z| z.re).collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ev[0] + 0.3).abs() < 1e-12);
        assert!((ev[1] - 1.0).abs() < 1e-12);
        assert!(m.trace() <= 2.0);
    }
}
