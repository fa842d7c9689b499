//! Qubit portraits: maps from qutrit and qudit-pair distributions down to
//! binary (or pairs-of-binary) distributions by summing outcomes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::probcore::ProbVector;
use crate::quantum::{Direction, Tomogram};
use crate::scalar::{Real, Scalar};

/// Three binary distributions obtained from one qutrit distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PortraitTriple<T> {
    /// `(p1, p2 + p3)`
    pub first: ProbVector<T>,
    /// `(p1 + p2, p3)`
    pub second: ProbVector<T>,
    /// `(p1 + p3, p2)`
    pub third: ProbVector<T>,
}

impl<T: Scalar> PortraitTriple<T> {
    pub fn pairs(&self) -> [&ProbVector<T>; 3] {
        [&self.first, &self.second, &self.third]
    }
}

fn expect_len<T: Scalar>(p: &ProbVector<T>, n: usize) -> Result<()> {
    if p.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.len(),
        });
    }
    Ok(())
}

pub fn qutrit_portraits<T: Scalar>(p: &ProbVector<T>) -> Result<PortraitTriple<T>> {
    expect_len(p, 3)?;
    let (p1, p2, p3) = (p[0], p[1], p[2]);
    Ok(PortraitTriple {
        first: ProbVector::new_unchecked(vec![p1, p2 + p3]),
        second: ProbVector::new_unchecked(vec![p1 + p2, p3]),
        third: ProbVector::new_unchecked(vec![p1 + p3, p2]),
    })
}

/// Recovers `(p1, p2, p3)` from the first two portraits.
pub fn portrait_invert<T: Scalar>(first: &ProbVector<T>, second: &ProbVector<T>) -> Result<ProbVector<T>> {
    expect_len(first, 2)?;
    expect_len(second, 2)?;
    let middle = second[0] - first[0];
    if middle < -T::simplex_tol() {
        return Err(Error::InconsistentPortrait {
            first: first[0].approx_f64(),
            second: second[0].approx_f64(),
        });
    }
    let middle = if middle < T::zero() { T::zero() } else { middle };
    ProbVector::new(vec![first[0], middle, second[1]])
}

/// Bins a joint `(d_a, d_b)` distribution into the 4-vector
/// `(w[0,0], Σ_{j>0} w[0,j], Σ_{i>0} w[i,0], Σ_{i,j>0} w[i,j])`.
pub fn reduce_distribution<T: Scalar>(p: &ProbVector<T>, dims: (usize, usize)) -> Result<ProbVector<T>> {
    let (da, db) = dims;
    if da < 2 || db < 2 {
        return Err(Error::UnsupportedDimension(da.min(db)));
    }
    if p.len() != da * db {
        return Err(Error::DimensionMismatch {
            expected: da * db,
            found: p.len(),
        });
    }
    let mut out = [T::zero(); 4];
    for i in 0..da {
        for j in 0..db {
            let bin = 2 * usize::from(i > 0) + usize::from(j > 0);
            out[bin] = out[bin] + p[i * db + j];
        }
    }
    Ok(ProbVector::new_unchecked(out.to_vec()))
}

/// A bipartite tomogram binned to two outcomes per party.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReducedTomogram<T> {
    pub probabilities: ProbVector<T>,
    pub directions: [Direction<T>; 2],
}

pub fn reduce_bipartite<T: Real>(t: &Tomogram<T>) -> Result<ReducedTomogram<T>> {
    let dims = t.outcome_dims();
    if dims.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: dims.len(),
        });
    }
    Ok(ReducedTomogram {
        probabilities: reduce_distribution(t.probabilities(), (dims[0], dims[1]))?,
        directions: [t.directions()[0], t.directions()[1]],
    })
}
