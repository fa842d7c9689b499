//! Maximizing the CHSH value over measurement directions.
//!
//! Phase one evaluates every quadruple on a regular `(θ, φ)` grid. It first
//! tabulates the correlator `E(x, y)` for every pair of grid directions. Then
//! `Tr(M I) = E(a,b) + E(a,c) + E(d,b) − E(d,c)` splits into
//! `u_b + v_c` for fixed `(a, d)`, so the exhaustive search costs `O(D³)`
//! instead of `O(D⁴)`. Phase two runs Nelder–Mead from the best grid point.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bell::{build_chsh_matrix, chsh_value, Quadruple};
use crate::error::{Error, Result};
use crate::portrait::reduce_bipartite;
use crate::quantum::{bipartite_tomogram, DensityMatrix, Direction};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    /// Grid points per angle axis.
    pub grid_resolution: usize,
    /// Nelder–Mead iteration budget, shared across restarts.
    pub refine_iterations: usize,
    /// Seeds the orientation of the initial simplex.
    pub seed: u64,
    /// Stop once the simplex values agree to this.
    pub tolerance: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            grid_resolution: 8,
            refine_iterations: 200,
            seed: 0,
            tolerance: 1e-7,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_resolution < 2 {
            return Err(Error::InvalidConfig(format!(
                "grid resolution must be at least 2, got {}",
                self.grid_resolution
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint<T> {
    pub iteration: usize,
    pub value: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult<T> {
    pub best_value: T,
    pub best_angles: Quadruple<T>,
    /// Correlator evaluations on the grid plus objective calls during refinement.
    pub evaluations: usize,
    pub grid_best: T,
    /// Best value so far; iteration 0 is the grid optimum.
    pub trace: Vec<TracePoint<T>>,
}

/// Grid directions, `θ` slowest: `θ_i = iπ/(n−1)`, `φ_j = 2πj/n`.
pub fn grid_directions<T: Real>(resolution: usize) -> Vec<Direction<T>> {
    let n = T::from(resolution).expect("small count");
    let theta_step = T::PI() / (n - T::one());
    let phi_step = (T::PI() + T::PI()) / n;
    let mut out = Vec::with_capacity(resolution * resolution);
    for i in 0..resolution {
        for j in 0..resolution {
            let theta = theta_step * T::from(i).unwrap();
            let phi = phi_step * T::from(j).unwrap();
            out.push(Direction { theta, phi, psi: T::zero() });
        }
    }
    out
}

/// `w₀₀ − w₀₁ − w₁₀ + w₁₁` of the binned tomogram at `(x, y)`.
pub fn correlator<T: Real>(
    state: &DensityMatrix<T>,
    dims: (usize, usize),
    x: &Direction<T>,
    y: &Direction<T>,
) -> Result<T> {
    let t = bipartite_tomogram(state, x, y, dims)?;
    let w = reduce_bipartite(&t)?.probabilities;
    Ok(w[0] - w[1] - w[2] + w[3])
}

struct GridBest<T> {
    value: T,
    index: [usize; 4],
}

fn better<T: Real>(cand: &GridBest<T>, cur: &GridBest<T>) -> bool {
    cand.value > cur.value || (cand.value == cur.value && cand.index < cur.index)
}

fn first_argmax<T: Real>(xs: &[T]) -> usize {
    (1..xs.len()).fold(0, |best, k| if xs[k] > xs[best] { k } else { best })
}

fn first_argmin<T: Real>(xs: &[T]) -> usize {
    (1..xs.len()).fold(0, |best, k| if xs[k] < xs[best] { k } else { best })
}

fn grid_search<T: Real>(
    state: &DensityMatrix<T>,
    dims: (usize, usize),
    dirs: &[Direction<T>],
) -> Result<GridBest<T>> {
    let n = dirs.len();
    let table: Vec<Vec<T>> = dirs
        .par_iter()
        .map(|x| dirs.iter().map(|y| correlator(state, dims, x, y)).collect())
        .collect::<Result<_>>()?;
    let per_a: Vec<GridBest<T>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut best = GridBest { value: -T::one(), index: [a, 0, 0, 0] };
            let mut u = vec![T::zero(); n];
            let mut v = vec![T::zero(); n];
            for d in 0..n {
                for k in 0..n {
                    u[k] = table[a][k] + table[d][k];
                    v[k] = table[a][k] - table[d][k];
                }
                let (bu, cv) = (first_argmax(&u), first_argmax(&v));
                let (bl, cl) = (first_argmin(&u), first_argmin(&v));
                for (b, c) in [(bu, cv), (bl, cl)] {
                    let cand = GridBest {
                        value: (u[b] + v[c]).abs(),
                        index: [a, b, c, d],
                    };
                    if better(&cand, &best) {
                        best = cand;
                    }
                }
            }
            best
        })
        .collect();
    let mut iter = per_a.into_iter();
    let first = iter.next().expect("nonempty grid");
    Ok(iter.fold(first, |best, cand| if better(&cand, &best) { cand } else { best }))
}

fn quadruple_from<T: Real>(x: &[T]) -> Quadruple<T> {
    Quadruple::new(
        Direction::new(x[0], x[1]),
        Direction::new(x[2], x[3]),
        Direction::new(x[4], x[5]),
        Direction::new(x[6], x[7]),
    )
}

fn flatten<T: Real>(q: &Quadruple<T>) -> Vec<T> {
    [q.a, q.b, q.c, q.d]
        .iter()
        .flat_map(|d| [d.theta, d.phi])
        .collect()
}

/// Finds directions with a large CHSH value. The result is a lower bound on
/// the true maximum: every reported value is attained at the reported angles.
pub fn maximize_bell<T: Real>(
    state: &DensityMatrix<T>,
    dims: (usize, usize),
    config: &SearchConfig,
) -> Result<SearchResult<T>> {
    config.validate()?;
    let dirs = grid_directions::<T>(config.grid_resolution);
    let grid = grid_search(state, dims, &dirs)?;
    let [a, b, c, d] = grid.index;
    let start = Quadruple::new(dirs[a], dirs[b], dirs[c], dirs[d]);
    let mut evaluations = dirs.len() * dirs.len();

    let objective = |x: &[T]| -> Result<T> {
        chsh_value(&build_chsh_matrix(state, dims, &quadruple_from(x))?.matrix)
    };
    let grid_value = chsh_value(&build_chsh_matrix(state, dims, &start)?.matrix)?;
    evaluations += 1;

    let n = T::from(config.grid_resolution).unwrap();
    let steps = [
        T::PI() / (n - T::one()) * T::of(0.5),
        T::PI() / n,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let opts = NelderMead {
        budget: config.refine_iterations,
        tolerance: T::of(config.tolerance),
    };
    let refined = opts.maximize(
        &flatten(&start),
        grid_value,
        |k| steps[k % 2],
        &mut rng,
        objective,
    )?;
    evaluations += refined.evaluations;

    let best_angles = quadruple_from(&refined.point);
    let best_value = chsh_value(&build_chsh_matrix(state, dims, &best_angles)?.matrix)?;
    evaluations += 1;
    log::debug!(
        "grid {} -> refined {} after {} evaluations",
        grid_value,
        best_value,
        evaluations
    );
    Ok(SearchResult {
        best_value,
        best_angles,
        evaluations,
        grid_best: grid_value,
        trace: refined.trace,
    })
}

struct NelderMead<T> {
    budget: usize,
    tolerance: T,
}

struct Refined<T> {
    point: Vec<T>,
    evaluations: usize,
    trace: Vec<TracePoint<T>>,
}

impl<T: Real> NelderMead<T> {
    /// Maximizes `f` starting from `x0` (with known value `f0`), restarting
    /// from the incumbent with a halved simplex until a restart stops paying
    /// off or the iteration budget runs out.
    fn maximize(
        &self,
        x0: &[T],
        f0: T,
        step: impl Fn(usize) -> T,
        rng: &mut ChaCha8Rng,
        mut f: impl FnMut(&[T]) -> Result<T>,
    ) -> Result<Refined<T>> {
        let dim = x0.len();
        let half = T::of(0.5);
        let mut best = (x0.to_vec(), f0);
        let mut trace = vec![TracePoint { iteration: 0, value: f0 }];
        let mut evaluations = 0;
        let mut iteration = 0;
        let mut scale = T::one();

        while iteration < self.budget {
            let restart_from = best.1;
            let mut simplex = vec![best.clone()];
            for k in 0..dim {
                let mut x = best.0.clone();
                let sign = if rng.random_bool(0.5) { T::one() } else { -T::one() };
                x[k] = x[k] + sign * scale * step(k);
                let fx = f(&x)?;
                evaluations += 1;
                simplex.push((x, fx));
            }

            while iteration < self.budget {
                iteration += 1;
                // descending: simplex[0] is the best vertex
                simplex.sort_by(|p, q| q.1.partial_cmp(&p.1).unwrap_or(std::cmp::Ordering::Equal));
                if simplex[0].1 > best.1 {
                    best = simplex[0].clone();
                }
                trace.push(TracePoint { iteration, value: best.1 });
                if simplex[0].1 - simplex[dim].1 < self.tolerance {
                    break;
                }

                let mut centroid = vec![T::zero(); dim];
                for (x, _) in &simplex[..dim] {
                    for (c, &xi) in centroid.iter_mut().zip(x) {
                        *c = *c + xi;
                    }
                }
                let inv = T::one() / T::from(dim).unwrap();
                centroid.iter_mut().for_each(|c| *c = *c * inv);
                let worst = simplex[dim].clone();
                let along = |t: T| -> Vec<T> {
                    centroid
                        .iter()
                        .zip(&worst.0)
                        .map(|(&c, &w)| c + t * (c - w))
                        .collect()
                };

                let xr = along(T::one());
                let fr = f(&xr)?;
                evaluations += 1;
                if fr > simplex[0].1 {
                    let xe = along(T::of(2.0));
                    let fe = f(&xe)?;
                    evaluations += 1;
                    simplex[dim] = if fe > fr { (xe, fe) } else { (xr, fr) };
                } else if fr > simplex[dim - 1].1 {
                    simplex[dim] = (xr, fr);
                } else {
                    let (xc, fc) = if fr > worst.1 {
                        let xc = along(half);
                        let fc = f(&xc)?;
                        (xc, fc)
                    } else {
                        let xc = along(-half);
                        let fc = f(&xc)?;
                        (xc, fc)
                    };
                    evaluations += 1;
                    if fc > worst.1.max(fr) {
                        simplex[dim] = (xc, fc);
                    } else {
                        let top = simplex[0].0.clone();
                        for vertex in simplex.iter_mut().skip(1) {
                            let x: Vec<T> = top
                                .iter()
                                .zip(&vertex.0)
                                .map(|(&b, &v)| b + half * (v - b))
                                .collect();
                            let fx = f(&x)?;
                            evaluations += 1;
                            *vertex = (x, fx);
                        }
                    }
                }
            }
            for (x, fx) in &simplex {
                if *fx > best.1 {
                    best = (x.clone(), *fx);
                }
            }
            if best.1 - restart_from < self.tolerance {
                break;
            }
            scale = scale * half;
        }
        if let Some(last) = trace.last_mut() {
            if last.value < best.1 {
                trace.push(TracePoint { iteration, value: best.1 });
            }
        }
        Ok(Refined {
            point: best.0,
            evaluations,
            trace,
        })
    }
}
