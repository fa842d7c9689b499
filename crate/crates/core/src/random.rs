//! Random instances for property tests and demos.
//!
//! Every generator takes the caller's RNG, so a seeded generator gives
//! reproducible instances.

use num_complex::Complex;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::bell::Quadruple;
use crate::linalg::{CMatrix, Matrix};
use crate::probcore::{BistochasticMatrix, ProbVector, StochasticMatrix};
use crate::quantum::{DensityMatrix, Direction};
use crate::scalar::Real;

/// Uniform point on the simplex (normalized exponentials).
pub fn simplex<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> ProbVector<T> {
    let raw: Vec<f64> = (0..n).map(|_| rng.sample(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    ProbVector::new(raw.iter().map(|x| T::of(x / total)).collect()).expect("normalized")
}

pub fn stochastic<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> StochasticMatrix<T> {
    let cols: Vec<_> = (0..n).map(|_| simplex(rng, n)).collect();
    StochasticMatrix::from_columns(&cols).expect("columns are simplex points")
}

/// Random convex combination of `n + 1` random permutation matrices.
pub fn bistochastic<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> BistochasticMatrix<T> {
    let weights: ProbVector<T> = simplex(rng, n + 1);
    let mut acc = Matrix::zeros(n, n);
    for &w in weights.iter() {
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(rng);
        let p = Matrix::from_fn(n, n, |r, c| if sigma[c] == r { w } else { T::zero() });
        acc = acc.add(&p).expect("same shape");
    }
    BistochasticMatrix::new(StochasticMatrix::new(acc).expect("stochastic")).expect("bistochastic")
}

fn gaussian_complex<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::of(re), T::of(im))
}

fn normalize<T: Real>(v: &mut [Complex<T>]) {
    let norm = v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
    v.iter_mut().for_each(|z| *z = *z / norm);
}

/// Unit vector drawn uniformly from the complex sphere.
pub fn pure_amplitudes<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex<T>> {
    let mut v: Vec<Complex<T>> = (0..n).map(|_| gaussian_complex(rng)).collect();
    normalize(&mut v);
    v
}

/// Haar-random unitary via Gram–Schmidt on a complex Gaussian matrix.
pub fn unitary<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix<T> {
    let mut cols: Vec<Vec<Complex<T>>> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut v: Vec<Complex<T>> = (0..n).map(|_| gaussian_complex(rng)).collect();
        for _ in 0..2 {
            for q in &cols {
                let proj = q
                    .iter()
                    .zip(&v)
                    .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b);
                v.iter_mut().zip(q).for_each(|(x, &qi)| *x = *x - qi * proj);
            }
        }
        normalize(&mut v);
        cols.push(v);
    }
    CMatrix::from_fn(n, n, |r, c| cols[c][r])
}

pub fn pure_state<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> DensityMatrix<T> {
    DensityMatrix::from_pure(&pure_amplitudes(rng, n)).expect("normalized")
}

/// Full-rank mixture of `n` random pure states with random weights.
pub fn mixed_state<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> DensityMatrix<T> {
    let weights = simplex(rng, n);
    let pures: Vec<_> = (0..n).map(|_| pure_state(rng, n)).collect();
    DensityMatrix::mixture(&weights, &pures).expect("convex combination")
}

/// Pure or mixed with equal odds.
pub fn state<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> DensityMatrix<T> {
    if rng.random_bool(0.5) {
        pure_state(rng, n)
    } else {
        mixed_state(rng, n)
    }
}

pub fn product_state<T: Real, R: Rng + ?Sized>(rng: &mut R, dims: (usize, usize)) -> DensityMatrix<T> {
    let a: DensityMatrix<T> = state(rng, dims.0);
    a.product(&state(rng, dims.1))
}

/// Mixture of between one and `max_terms` random product states.
pub fn separable_state<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    dims: (usize, usize),
    max_terms: usize,
) -> DensityMatrix<T> {
    let k = rng.random_range(1..=max_terms.max(1));
    let weights = simplex(rng, k);
    let parts: Vec<_> = (0..k).map(|_| product_state(rng, dims)).collect();
    DensityMatrix::mixture(&weights, &parts).expect("convex combination")
}

/// Uniform on the sphere.
pub fn direction<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Direction<T> {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    Direction::new(T::of(z.acos()), T::of(phi))
}

pub fn quadruple<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Quadruple<T> {
    Quadruple::new(direction(rng), direction(rng), direction(rng), direction(rng))
}
