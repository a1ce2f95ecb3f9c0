#![allow(dead_code)]

use polysum::{Error, Polytope, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn v(c: &[i64]) -> Vector {
    Vector::from_ints(c)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_point(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> Vector {
    Vector::from_ints(&(0..dim).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>())
}

/// Hull of `count` random integer points in `[-bound, bound]^dim`, redrawn
/// until full-dimensional.
pub fn random_hull(rng: &mut ChaCha8Rng, dim: usize, count: usize, bound: i64) -> Polytope {
    loop {
        let points: Vec<Vector> = (0..count).map(|_| random_point(rng, dim, bound)).collect();
        match Polytope::from_vertices(dim, &points) {
            Ok(p) => return p,
            Err(Error::NotFullDimensional) => continue,
            Err(e) => panic!("unexpected hull failure: {e}"),
        }
    }
}

/// Deterministic suite of random pairs over dimensions 2, 3 and 4.
pub fn random_pairs(seed: u64, per_dim: &[(usize, usize)]) -> Vec<(Polytope, Polytope)> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    for &(dim, count) in per_dim {
        for _ in 0..count {
            let na = rng.gen_range(6..=12);
            let nb = rng.gen_range(6..=12);
            let a = random_hull(&mut rng, dim, na, 5);
            let b = random_hull(&mut rng, dim, nb, 5);
            out.push((a, b));
        }
    }
    out
}

/// Primitive directions of every edge of `p`, both orientations.
pub fn edge_directions(p: &Polytope) -> std::collections::BTreeSet<Vector> {
    let mut out = std::collections::BTreeSet::new();
    for i in 0..p.vertices().len() {
        for &j in p.vertex_neighbours(i).unwrap() {
            out.insert((&p.vertices()[j] - &p.vertices()[i]).primitive());
        }
    }
    out
}
