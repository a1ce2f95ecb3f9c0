mod common;

use common::{random_pairs, rng, random_point, v};
use polysum::{
    minkowski_sum, oracle_sum, sum_dual_brute, sum_dual_optimized, sum_primal, sum_primal_with_seed, Error,
    Method, Polytope,
};

fn pairs() -> Vec<(Polytope, Polytope)> {
    random_pairs(0x51, &[(2, 12), (3, 8), (4, 3)])
}

#[test]
fn octagon_from_square_and_diamond() {
    let square = Polytope::cube(2);
    let diamond = Polytope::cross_polytope(2);
    let expected: Vec<_> =
        [[2, 1], [1, 2], [0, 2], [-1, 1], [-1, 0], [0, -1], [1, -1], [2, 0]].iter().map(|c| v(c)).collect();
    for method in Method::ALL {
        let d = minkowski_sum(&square, &diamond, method).unwrap();
        let mut got = d.sum().vertices().to_vec();
        got.sort();
        let mut want = expected.clone();
        want.sort();
        assert_eq!(got, want, "{method}");
        assert_eq!(d.sum().facets().len(), 8, "{method}");
        for (c, &(i, j)) in d.sum().vertices().iter().zip(d.witnesses()) {
            assert_eq!(c, &(&square.vertices()[i] + &diamond.vertices()[j]), "{method}");
        }
    }
}

#[test]
fn all_methods_agree_with_oracle() {
    for (k, (a, b)) in pairs().iter().enumerate() {
        let reference = oracle_sum(a, b).unwrap();
        assert!(reference.validate().is_clean());
        for method in Method::ALL {
            let d = minkowski_sum(a, b, method).unwrap();
            assert_eq!(d.sum(), &reference, "pair {k}, {method}");
            assert_eq!(d.method(), method);
        }
    }
}

#[test]
fn sum_is_symmetric() {
    for (a, b) in pairs().iter().take(10) {
        assert_eq!(sum_dual_optimized(a, b).unwrap().sum(), sum_dual_optimized(b, a).unwrap().sum());
        assert_eq!(sum_primal(a, b).unwrap().sum(), sum_primal(b, a).unwrap().sum());
    }
}

#[test]
fn sum_is_translation_equivariant() {
    let mut r = rng(7);
    for (a, b) in pairs().iter().take(10) {
        let t = random_point(&mut r, a.dim(), 9);
        let moved = sum_dual_brute(&a.translated(&t), b).unwrap();
        assert_eq!(moved.sum(), &sum_dual_brute(a, b).unwrap().sum().translated(&t));
        let moved = sum_primal(&a.translated(&t), b).unwrap();
        assert_eq!(moved.sum(), &sum_primal(a, b).unwrap().sum().translated(&t));
    }
}

#[test]
fn optimized_never_does_more_work_than_brute() {
    for (a, b) in pairs() {
        let brute = sum_dual_brute(&a, &b).unwrap();
        let opt = sum_dual_optimized(&a, &b).unwrap();
        assert_eq!(brute.cone_operations(), a.vertices().len() * b.vertices().len());
        assert!(opt.cone_operations() <= brute.cone_operations());
    }
}

#[test]
fn primal_visits_each_sum_vertex_once() {
    for (a, b) in pairs() {
        let d = sum_primal(&a, &b).unwrap();
        assert_eq!(d.cone_operations(), d.sum().vertices().len());
    }
}

#[test]
fn primal_result_does_not_depend_on_seed() {
    for (a, b) in pairs().iter().take(6) {
        let base = sum_primal(a, b).unwrap();
        for seed in [1, 2, 3] {
            assert_eq!(sum_primal_with_seed(a, b, seed).unwrap().sum(), base.sum());
        }
    }
}

#[test]
fn doubled_cube() {
    for n in 2..=4 {
        let cube = Polytope::cube(n);
        let doubled = sum_primal(&cube, &cube).unwrap();
        let scaled: Vec<_> = cube.vertices().iter().map(|x| x + x).collect();
        assert_eq!(doubled.sum(), &Polytope::from_vertices(n, &scaled).unwrap());
    }
}

#[test]
fn dimension_mismatch_is_rejected() {
    let a = Polytope::cube(2);
    let b = Polytope::cube(3);
    for method in Method::ALL {
        assert!(matches!(minkowski_sum(&a, &b, method), Err(Error::DimensionMismatch { .. })), "{method}");
    }
}
