mod common;

use proptest::prelude::*;
use qportrait::probcore::{
    compose, eigensystem_2x2, power, reflected_star_product, star_product, BistochasticMatrix,
    ProbVector, StochasticMatrix,
};
use qportrait::random;

fn simplex_strategy(n: usize) -> impl Strategy<Value = ProbVector<f64>> {
    prop::collection::vec(0.01f64..1.0, n).prop_map(|raw| {
        let total: f64 = raw.iter().sum();
        ProbVector::new(raw.iter().map(|x| x / total).collect()).unwrap()
    })
}

fn stochastic_strategy(n: usize) -> impl Strategy<Value = StochasticMatrix<f64>> {
    prop::collection::vec(simplex_strategy(n), n)
        .prop_map(|cols| StochasticMatrix::from_columns(&cols).unwrap())
}

fn sized_pair() -> impl Strategy<Value = (StochasticMatrix<f64>, StochasticMatrix<f64>)> {
    (2usize..=6).prop_flat_map(|n| (stochastic_strategy(n), stochastic_strategy(n)))
}

fn sized_triple() -> impl Strategy<Value = [ProbVector<f64>; 3]> {
    (2usize..=8).prop_flat_map(|n| {
        (simplex_strategy(n), simplex_strategy(n), simplex_strategy(n)).prop_map(|(a, b, c)| [a, b, c])
    })
}

proptest! {
    #[test]
    fn product_of_stochastic_is_stochastic((a, b) in sized_pair()) {
        let ab = compose(&a, &b).unwrap();
        let again = StochasticMatrix::new(ab.clone().into_matrix());
        prop_assert!(again.is_ok());
        prop_assert!(ab.spectral_radius() <= 1.0 + 1e-10);
        prop_assert!(ab.trace() <= ab.dim() as f64 + 1e-12);
    }

    #[test]
    fn star_product_is_associative([u, v, w] in sized_triple()) {
        let left = star_product(&star_product(&u, &v).unwrap(), &w).unwrap();
        let right = star_product(&u, &star_product(&v, &w).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right) < 1e-12);
    }

    #[test]
    fn two_outcome_star_matches_matrix_product(
        u in simplex_strategy(2),
        v in simplex_strategy(2),
    ) {
        let embed = |p: &ProbVector<f64>| BistochasticMatrix::two_state(p[0]).unwrap();
        let col = embed(&u).compose(&embed(&v)).unwrap().column(0);
        prop_assert!(star_product(&u, &v).unwrap().max_abs_diff(&col) < 1e-15);
        prop_assert!(reflected_star_product(&u, &v).unwrap().max_abs_diff(&col) < 1e-15);
    }

    #[test]
    fn permuting_keeps_stochastic(m in stochastic_strategy(4), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut sigma: Vec<usize> = (0..4).collect();
        sigma.shuffle(&mut common::rng(seed));
        prop_assert!(m.permute_columns(&sigma).is_ok());
        prop_assert!(m.permute_rows(&sigma).is_ok());
    }

    #[test]
    fn two_state_spectral_reconstruction(p in 0.0f64..1.0, q in 0.0f64..1.0) {
        prop_assume!((p - q).abs() > 1e-3);
        let m = StochasticMatrix::two_state(p, q).unwrap();
        let es = eigensystem_2x2(&m).unwrap();
        prop_assert!(es.reconstruct().max_abs_diff(m.as_matrix()) < 1e-10);
        prop_assert!((es.values[1] - (p - q)).abs() < 1e-15);
        // the stationary vector is the limit of the powers
        let st = es.stationary.clone();
        prop_assert!(m.apply(&st).unwrap().max_abs_diff(&st) < 1e-12);
    }
}

#[test]
fn seeded_semigroup_suite() {
    let mut rng = common::rng(11);
    for k in 0..1000 {
        let n = 2 + k % 5;
        let a: StochasticMatrix<f64> = random::stochastic(&mut rng, n);
        let b = random::stochastic(&mut rng, n);
        let ab = compose(&a, &b).unwrap();
        assert!(StochasticMatrix::new(ab.clone().into_matrix()).is_ok());
        assert!(ab.spectral_radius() <= 1.0 + 1e-10);

        let x: BistochasticMatrix<f64> = random::bistochastic(&mut rng, n);
        let y = random::bistochastic(&mut rng, n);
        let xy = x.compose(&y).unwrap();
        assert!(xy.is_bistochastic());
        let uniform = ProbVector::uniform(n);
        assert!(xy.apply(&uniform).unwrap().max_abs_diff(&uniform) < 1e-12);
    }
}

#[test]
fn power_converges_to_stationary_columns() {
    let m: StochasticMatrix<f64> = StochasticMatrix::two_state(0.1, 0.4).unwrap();
    let p = power(&m, 50);
    for j in 0..2 {
        assert!((p.get(0, j) - 4.0 / 13.0).abs() < 1e-10);
        assert!((p.get(1, j) - 9.0 / 13.0).abs() < 1e-10);
    }
}

#[test]
fn exact_rational_semigroup() {
    use num_rational::Rational64 as R;
    let r = |n, d| R::new(n, d);
    let a = StochasticMatrix::two_state(r(1, 3), r(3, 4)).unwrap();
    let b = StochasticMatrix::two_state(r(2, 5), r(1, 7)).unwrap();
    let ab = compose(&a, &b).unwrap();
    // first column: (1/3·2/5 + 3/4·3/5, 2/3·2/5 + 1/4·3/5)
    assert_eq!(ab.get(0, 0), r(2, 15) + r(9, 20));
    assert_eq!(ab.get(1, 0), r(4, 15) + r(3, 20));
    assert_eq!(ab.get(0, 0) + ab.get(1, 0), r(1, 1));
    let u = ProbVector::new(vec![r(1, 6), r(1, 3), r(1, 2)]).unwrap();
    let v = ProbVector::new(vec![r(1, 4), r(1, 4), r(1, 2)]).unwrap();
    let w = ProbVector::new(vec![r(2, 3), r(0, 1), r(1, 3)]).unwrap();
    let left = star_product(&star_product(&u, &v).unwrap(), &w).unwrap();
    let right = star_product(&u, &star_product(&v, &w).unwrap()).unwrap();
    assert_eq!(left, right);
}
