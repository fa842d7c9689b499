mod common;

use std::f64::consts::SQRT_2;

use qportrait::bell::{
    bell_report, build_chsh_matrix, chsh_value, semigroup_separability_check, Quadruple, Verdict,
};
use qportrait::probcore::{ProbVector, StochasticMatrix};
use qportrait::quantum::{states, DensityMatrix};
use qportrait::random;

fn raw(q: &Quadruple<f64>) -> [(f64, f64); 4] {
    [q.a, q.b, q.c, q.d].map(|d| (d.theta, d.phi))
}

#[test]
fn bell_matrix_matches_sixteen_entry_table() {
    let mut rng = common::rng(41);
    let rho = states::bell_state::<f64>();
    for _ in 0..50 {
        let q = random::quadruple(&mut rng);
        let m = build_chsh_matrix(&rho, (2, 2), &q).unwrap().matrix;
        for r in 0..4 {
            for c in 0..4 {
                assert!((m.get(r, c) - common::bell_matrix_entry(r, c, &raw(&q))).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn chsh_value_matches_correlator_oracles() {
    let mut rng = common::rng(42);
    let bell = states::bell_state::<f64>();
    let qq = states::qubit_qutrit_state::<f64>();
    for _ in 0..500 {
        let q = random::quadruple(&mut rng);
        let [a, b, c, d] = raw(&q);
        let chsh = |e: fn(f64, f64, f64, f64) -> f64| {
            let e = |x: (f64, f64), y: (f64, f64)| e(x.0, x.1, y.0, y.1);
            (e(a, b) + e(a, c) + e(d, b) - e(d, c)).abs()
        };
        let v = chsh_value(&build_chsh_matrix(&bell, (2, 2), &q).unwrap().matrix).unwrap();
        assert!((v - chsh(common::bell_correlator)).abs() < 1e-12);
        let v = chsh_value(&build_chsh_matrix(&qq, (2, 3), &q).unwrap().matrix).unwrap();
        assert!((v - chsh(common::qubit_qutrit_correlator)).abs() < 1e-12);
        assert!(v <= common::qubit_qutrit_max() + 1e-12);
    }
}

#[test]
fn separable_states_respect_the_bound() {
    let mut rng = common::rng(43);
    for k in 0..200 {
        let dims = [(2, 2), (2, 3), (3, 2), (3, 3)][k % 4];
        let rho: DensityMatrix<f64> = random::separable_state(&mut rng, dims, 5);
        let matrices: Vec<_> = (0..10)
            .map(|_| build_chsh_matrix(&rho, dims, &random::quadruple(&mut rng)).unwrap().matrix)
            .collect();
        for m in &matrices {
            assert!(chsh_value(m).unwrap() <= 2.0 + 1e-9);
            for n in &matrices {
                let mn = m.compose(n).unwrap();
                assert!(StochasticMatrix::new(mn.clone().into_matrix()).is_ok());
                assert!(chsh_value(&mn).unwrap() <= 2.0 + 1e-9);
            }
        }
    }
}

#[test]
fn convex_mixtures_of_matrices_stay_below_the_max() {
    let mut rng = common::rng(44);
    for _ in 0..200 {
        let rho: DensityMatrix<f64> = random::separable_state(&mut rng, (2, 2), 3);
        let ms: Vec<_> = (0..3)
            .map(|_| build_chsh_matrix(&rho, (2, 2), &random::quadruple(&mut rng)).unwrap().matrix)
            .collect();
        let w: ProbVector<f64> = random::simplex(&mut rng, 3);
        let mix = StochasticMatrix::mixture(&w, &ms).unwrap();
        let max = ms.iter().map(|m| chsh_value(m).unwrap()).fold(0.0, f64::max);
        assert!(chsh_value(&mix).unwrap() <= max + 1e-12);
    }
}

#[test]
fn two_qubit_states_never_exceed_tsirelson() {
    let mut rng = common::rng(45);
    let mut rho: DensityMatrix<f64> = random::state(&mut rng, 4);
    for k in 0..100_000 {
        if k % 1000 == 0 {
            rho = random::state(&mut rng, 4);
        }
        let m = build_chsh_matrix(&rho, (2, 2), &random::quadruple(&mut rng)).unwrap();
        assert!(chsh_value(&m.matrix).unwrap() <= 2.0 * SQRT_2 + 1e-9);
    }
}

#[test]
fn product_state_semigroup_check_passes() {
    let mut rng = common::rng(46);
    let rho: DensityMatrix<f64> = random::product_state(&mut rng, (2, 3));
    let qs: Vec<_> = (0..10).map(|_| random::quadruple(&mut rng)).collect();
    let rep = semigroup_separability_check(&rho, (2, 3), &qs).unwrap();
    assert_eq!(rep.products.len(), 100);
    assert!(rep.max_value <= 2.0 + 1e-9);
    assert_eq!(rep.verdict, Verdict::ConsistentWithSeparable);
    // parallel evaluation is order-independent and matches a sequential pass
    for p in &rep.products {
        let m = rep.singles[p.left].matrix.compose(&rep.singles[p.right].matrix).unwrap();
        assert_eq!(chsh_value(&m).unwrap(), p.value);
    }
}

#[test]
fn identity_quadruples_keep_products_stochastic() {
    let rho = states::two_qutrit_state::<f64>();
    let rep = semigroup_separability_check(&rho, (3, 3), &[Quadruple::z(), Quadruple::z()]).unwrap();
    for p in &rep.products {
        assert!(p.value <= 2.0 + 1e-12);
    }
}

#[test]
fn random_bell_quadruples_find_a_witness() {
    let mut rng = common::rng(47);
    let rho = states::bell_state::<f64>();
    let mut found = false;
    for _ in 0..2000 {
        let r = bell_report(&rho, (2, 2), &random::quadruple(&mut rng)).unwrap();
        found |= r.verdict == Verdict::EntanglementWitnessed;
    }
    assert!(found);
}
