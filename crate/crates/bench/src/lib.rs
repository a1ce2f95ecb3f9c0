//! Input fixtures for the benchmarks: standard shapes and reproducible
//! random hulls.

use polysum::{Polytope, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Hull of `count` random integer points in `[-bound, bound]^dim`, redrawn
/// until full-dimensional.
pub fn random_hull(dim: usize, count: usize, bound: i64, seed: u64) -> Polytope {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let pts: Vec<Vector> = (0..count)
            .map(|_| Vector::from_ints(&(0..dim).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>()))
            .collect();
        if let Ok(p) = Polytope::from_vertices(dim, &pts) {
            return p;
        }
    }
}

/// Named benchmark pairs.
pub fn cases() -> Vec<(&'static str, Polytope, Polytope)> {
    vec![
        ("square+diamond", Polytope::cube(2), Polytope::cross_polytope(2)),
        ("cube3+cross3", Polytope::cube(3), Polytope::cross_polytope(3)),
        ("cube4+simplex4", Polytope::cube(4), Polytope::simplex(4)),
        ("hull3x12", random_hull(3, 12, 8, 1), random_hull(3, 12, 8, 2)),
        ("hull4x12", random_hull(4, 12, 6, 3), random_hull(4, 12, 6, 4)),
    ]
}
