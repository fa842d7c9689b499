use std::ops::Index;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{close, Scalar};

/// A point on the probability simplex.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProbVector<T> {
    entries: Vec<T>,
}

impl<T: Scalar> ProbVector<T> {
    /// Validates that every entry lies in `[0, 1]` and that the entries sum to one,
    /// both up to [`Scalar::simplex_tol`].
    pub fn new(entries: Vec<T>) -> Result<Self> {
        Self::validate(&entries)?;
        Ok(Self { entries })
    }

    pub(crate) fn validate(entries: &[T]) -> Result<()> {
        if entries.is_empty() {
            return Err(Error::NotProbVector("empty vector".into()));
        }
        let tol = T::simplex_tol();
        for (i, &x) in entries.iter().enumerate() {
            if x < -tol || x > T::one() + tol {
                return Err(Error::NotProbVector(format!(
                    "entry {i} = {x} outside [0, 1]"
                )));
            }
        }
        let sum = entries.iter().fold(T::zero(), |acc, &x| acc + x);
        if !close(sum, T::one(), tol) {
            return Err(Error::NotProbVector(format!("entries sum to {sum}, not 1")));
        }
        Ok(())
    }

    pub(crate) fn new_unchecked(entries: Vec<T>) -> Self {
        debug_assert!(Self::validate(&entries).is_ok(), "{entries:?}");
        Self { entries }
    }

    pub fn uniform(n: usize) -> Self {
        let p = T::one() / T::from_count(n);
        Self {
            entries: vec![p; n],
        }
    }

    /// Point mass on outcome `k`.
    pub fn delta(n: usize, k: usize) -> Self {
        let mut entries = vec![T::zero(); n];
        entries[k] = T::one();
        Self { entries }
    }

    /// `(p, 1 - p)`
    pub fn binary(p: T) -> Result<Self> {
        Self::new(vec![p, T::one() - p])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.iter()
    }

    /// Joint distribution of two independent outcomes, first index slowest.
    pub fn tensor(&self, other: &Self) -> Self {
        let entries = self
            .entries
            .iter()
            .flat_map(|&a| other.entries.iter().map(move |&b| a * b))
            .collect();
        Self { entries }
    }

    /// Convex combination `Σ weight_k · v_k`; weights must themselves be a probability vector.
    pub fn mixture(weights: &Self, vectors: &[Self]) -> Result<Self> {
        if weights.len() != vectors.len() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                found: vectors.len(),
            });
        }
        let n = vectors[0].len();
        let mut entries = vec![T::zero(); n];
        for (&w, v) in weights.iter().zip(vectors) {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            for (e, &x) in entries.iter_mut().zip(v.iter()) {
                *e = *e + w * x;
            }
        }
        Self::new(entries)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(T::zero(), |acc, (&a, &b)| acc.max_of((a - b).magnitude()))
    }
}

impl<T> Index<usize> for ProbVector<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.entries[i]
    }
}
