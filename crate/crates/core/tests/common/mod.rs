#![allow(dead_code)]

//! Independent reference formulas used as oracles by the integration tests.

use num_complex::Complex;
use qportrait::linalg::CMatrix;
use qportrait::quantum::DensityMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `w₀₀ − w₀₁ − w₁₀ + w₁₁` for `(|↑↑⟩ + |↓↓⟩)/√2`.
pub fn bell_correlator(tx: f64, px: f64, ty: f64, py: f64) -> f64 {
    tx.cos() * ty.cos() + tx.sin() * ty.sin() * (px + py).cos()
}

/// Binned correlator for `(|+½,+1⟩ + |−½,−1⟩)/√2`, qubit direction `x`,
/// qutrit direction `y`.
pub fn qubit_qutrit_correlator(tx: f64, px: f64, ty: f64, py: f64) -> f64 {
    tx.cos() * ty.cos() + 0.5 * tx.sin() * ty.sin().powi(2) * (px + 2.0 * py).cos()
}

/// Largest CHSH value of the binned qubit–qutrit functional. The correlator
/// is `m_y · n_x` with `m_y = (½ sin²θ cos 2φ, −½ sin²θ sin 2φ, cos θ)`, so
/// the maximum is `max |m_b + m_c| + |m_b − m_c|` over qutrit directions. That
/// is attained at `θ = π/2` for one and `θ = 0` for the other: `√(¼ + 1) · 2`.
pub fn qubit_qutrit_max() -> f64 {
    5f64.sqrt()
}

/// Entry `(row, col)` of the tomographic CHSH matrix of the Bell state, written
/// out per the explicit sixteen-entry table.
pub fn bell_matrix_entry(row: usize, col: usize, q: &[(f64, f64); 4]) -> f64 {
    let [a, b, c, d] = *q;
    let (x, y) = match col {
        0 => (a, b),
        1 => (a, c),
        2 => (d, b),
        _ => (d, c),
    };
    let (c1, s1) = ((x.0 / 2.0).cos().powi(2), (x.0 / 2.0).sin().powi(2));
    let (c2, s2) = ((y.0 / 2.0).cos().powi(2), (y.0 / 2.0).sin().powi(2));
    let cross = 0.25 * x.0.sin() * y.0.sin() * (x.1 + y.1).cos();
    match row {
        0 | 3 => 0.5 * (c1 * c2 + s1 * s2) + cross,
        _ => 0.5 * (c1 * s2 + s1 * c2) - cross,
    }
}

/// `diag(U† ρ U)` by forming the full product.
pub fn full_product_diagonal(rho: &DensityMatrix<f64>, u: &CMatrix<f64>) -> Vec<f64> {
    let m = u.adjoint().mul(rho.matrix()).unwrap().mul(u).unwrap();
    (0..m.rows()).map(|k| m.get(k, k).re).collect()
}

pub fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}
