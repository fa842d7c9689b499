//! Density matrices and their spin tomograms.
//!
//! A tomogram is the outcome distribution `w(m) = (U† ρ U)_mm` of measuring
//! the state along the direction encoded by the unitary `U`. Outcome index 0
//! is the largest spin projection (`+1/2` for a qubit, `+1` for a qutrit) and
//! bipartite outcomes are laid out with the first party's index slowest.

mod closed_form;
mod density;
pub mod states;

pub use closed_form::{
    bell_state_tomogram_closed_form, qubit_qutrit_tomogram_closed_form,
    two_qutrit_tomogram_closed_form,
};
pub use density::DensityMatrix;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::probcore::ProbVector;
use crate::scalar::Real;

/// Measurement axis given by Euler angles.
///
/// Angles are stored in canonical form, `theta ∈ [0, π]` and `phi ∈ [0, 2π)`.
/// Other inputs are folded onto the same axis: `(θ, φ)` and `(2π - θ, φ + π)`
/// name the same unit vector. `psi` is carried along but never changes a tomogram.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Direction<T> {
    pub theta: T,
    pub phi: T,
    pub psi: T,
}

impl<T: Real> Direction<T> {
    pub fn new(theta: T, phi: T) -> Self {
        Self::with_psi(theta, phi, T::zero())
    }

    pub fn with_psi(theta: T, phi: T, psi: T) -> Self {
        let two_pi = T::PI() + T::PI();
        let mut theta = wrap(theta, two_pi);
        let mut phi = phi;
        if theta > T::PI() {
            theta = two_pi - theta;
            phi = phi + T::PI();
        }
        let mut phi = wrap(phi, two_pi);
        if phi >= two_pi {
            phi = T::zero();
        }
        Self { theta, phi, psi }
    }

    pub fn from_degrees(theta: T, phi: T) -> Self {
        Self::new(theta.to_radians(), phi.to_radians())
    }

    /// The z axis; both built-in unitaries reduce to the identity here.
    pub fn z() -> Self {
        Self::new(T::zero(), T::zero())
    }

    /// `(sin θ cos φ, sin θ sin φ, cos θ)`
    pub fn unit_vector(&self) -> [T; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

fn wrap<T: Real>(x: T, period: T) -> T {
    x - period * (x / period).floor()
}

fn cis<T: Real>(angle: T) -> Complex<T> {
    Complex::from_polar(T::one(), angle)
}

/// Two-level Euler rotation
/// `[[cos(θ/2) e^{i(φ+ψ)/2}, sin(θ/2) e^{i(φ-ψ)/2}], [-sin(θ/2) e^{-i(φ-ψ)/2}, cos(θ/2) e^{-i(φ+ψ)/2}]]`.
pub fn qubit_unitary<T: Real>(d: &Direction<T>) -> CMatrix<T> {
    let half = T::of(0.5);
    let (s, c) = (d.theta * half).sin_cos();
    let sum = (d.phi + d.psi) * half;
    let diff = (d.phi - d.psi) * half;
    CMatrix::new(
        2,
        2,
        vec![
            cis(sum) * c,
            cis(diff) * s,
            -cis(-diff) * s,
            cis(-sum) * c,
        ],
    )
    .expect("2x2")
}

/// Three-level (spin-1) rotation parameterized by `(θ, φ)`; `psi` is unused.
pub fn qutrit_unitary<T: Real>(d: &Direction<T>) -> CMatrix<T> {
    let half = T::of(0.5);
    let (s_half, c_half) = (d.theta * half).sin_cos();
    let (s, c) = d.theta.sin_cos();
    let c2 = c_half * c_half;
    let s2 = s_half * s_half;
    let r = s / T::SQRT_2();
    let i = Complex::new(T::zero(), T::one());
    let e = cis(d.phi);
    let ec = e.conj();
    let re = |x: T| Complex::new(x, T::zero());
    CMatrix::new(
        3,
        3,
        vec![
            e * c2,
            i * e * r,
            -e * s2,
            i * r,
            re(c),
            i * r,
            -ec * s2,
            i * ec * r,
            ec * c2,
        ],
    )
    .expect("3x3")
}

/// Built-in direction-parameterized unitary for `dim ∈ {2, 3}`.
pub fn builtin_unitary<T: Real>(dim: usize, d: &Direction<T>) -> Result<CMatrix<T>> {
    match dim {
        2 => Ok(qubit_unitary(d)),
        3 => Ok(qutrit_unitary(d)),
        other => Err(Error::UnsupportedDimension(other)),
    }
}

/// Diagonal of `U† ρ U` as a probability vector. `u` must be unitary.
pub fn tomogram<T: Real>(rho: &DensityMatrix<T>, u: &CMatrix<T>) -> Result<ProbVector<T>> {
    if u.rows() != rho.dim() || !u.is_square() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: u.rows(),
        });
    }
    let defect = u.unitarity_defect();
    if !(defect <= T::unitary_tol()) {
        return Err(Error::NotUnitary(defect.approx_f64()));
    }
    diagonal_distribution(rho, u)
}

pub(crate) fn diagonal_distribution<T: Real>(
    rho: &DensityMatrix<T>,
    u: &CMatrix<T>,
) -> Result<ProbVector<T>> {
    let diag = rho.matrix().sandwich_diagonal(u)?;
    let tol = T::simplex_tol();
    let mut entries = Vec::with_capacity(diag.len());
    for (m, z) in diag.into_iter().enumerate() {
        if z.im.abs() > tol {
            return Err(Error::NotHermitian(z.im.approx_f64())).map_err(|e| {
                Error::InvalidInput(format!("tomogram entry {m} is not real: {e}"))
            });
        }
        entries.push(z.re);
    }
    ProbVector::new(entries)
}

/// Outcome distribution of a (possibly composite) measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tomogram<T> {
    outcome_dims: Vec<usize>,
    directions: Vec<Direction<T>>,
    probabilities: ProbVector<T>,
}

impl<T: Real> Tomogram<T> {
    pub fn new(
        outcome_dims: Vec<usize>,
        directions: Vec<Direction<T>>,
        probabilities: ProbVector<T>,
    ) -> Result<Self> {
        let total: usize = outcome_dims.iter().product();
        if total != probabilities.len() {
            return Err(Error::DimensionMismatch {
                expected: total,
                found: probabilities.len(),
            });
        }
        if directions.len() != outcome_dims.len() {
            return Err(Error::DimensionMismatch {
                expected: outcome_dims.len(),
                found: directions.len(),
            });
        }
        let t = Self {
            outcome_dims,
            directions,
            probabilities,
        };
        for party in 0..t.outcome_dims.len() {
            ProbVector::validate(t.marginal_entries(party).as_slice())?;
        }
        Ok(t)
    }

    pub fn outcome_dims(&self) -> &[usize] {
        &self.outcome_dims
    }

    pub fn directions(&self) -> &[Direction<T>] {
        &self.directions
    }

    pub fn probabilities(&self) -> &ProbVector<T> {
        &self.probabilities
    }

    /// Joint probability of outcomes `(m1, m2)` of a bipartite tomogram.
    pub fn joint(&self, m1: usize, m2: usize) -> T {
        self.probabilities[m1 * self.outcome_dims[1] + m2]
    }

    fn marginal_entries(&self, party: usize) -> Vec<T> {
        let d = self.outcome_dims[party];
        let inner: usize = self.outcome_dims[party + 1..].iter().product();
        let mut out = vec![T::zero(); d];
        for (idx, &p) in self.probabilities.iter().enumerate() {
            let m = (idx / inner) % d;
            out[m] = out[m] + p;
        }
        out
    }

    /// Outcome distribution of a single party.
    pub fn marginal(&self, party: usize) -> ProbVector<T> {
        ProbVector::new_unchecked(self.marginal_entries(party))
    }
}

fn check_bipartite_dims<T: Real>(rho: &DensityMatrix<T>, dims: (usize, usize)) -> Result<()> {
    if dims.0 * dims.1 != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: dims.0 * dims.1,
        });
    }
    Ok(())
}

/// Joint tomogram of a bipartite state measured along `d1` (first party) and
/// `d2` (second party) with the built-in unitaries.
pub fn bipartite_tomogram<T: Real>(
    rho: &DensityMatrix<T>,
    d1: &Direction<T>,
    d2: &Direction<T>,
    dims: (usize, usize),
) -> Result<Tomogram<T>> {
    check_bipartite_dims(rho, dims)?;
    let u = builtin_unitary(dims.0, d1)?.kron(&builtin_unitary(dims.1, d2)?);
    let probabilities = diagonal_distribution(rho, &u)?;
    Tomogram::new(vec![dims.0, dims.1], vec![*d1, *d2], probabilities)
}

/// Joint tomogram with caller-supplied local unitaries, for subsystem
/// dimensions without a built-in parameterization. The recorded directions
/// are informational only.
pub fn bipartite_tomogram_with<T: Real>(
    rho: &DensityMatrix<T>,
    u1: &CMatrix<T>,
    u2: &CMatrix<T>,
    directions: [Direction<T>; 2],
) -> Result<Tomogram<T>> {
    let dims = (u1.rows(), u2.rows());
    check_bipartite_dims(rho, dims)?;
    let u = u1.kron(u2);
    let probabilities = tomogram(rho, &u)?;
    Tomogram::new(vec![dims.0, dims.1], directions.to_vec(), probabilities)
}
