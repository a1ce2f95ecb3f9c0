//! Reference Minkowski sum by definition: hull of all pairwise vertex sums.
//!
//! This is the ground truth the normal-fan and primal-cone algorithms are
//! checked against. It shares the exact hull kernel with [`Polytope`] but none
//! of the summation logic.

use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::scalar::Vector;

/// Hull of `{a + b}` over raw point lists. The summands may be degenerate
/// (segments, single points); only the resulting hull must be full-dimensional.
pub fn oracle_sum_points(dim: usize, a: &[Vector], b: &[Vector]) -> Result<Polytope> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(p) = a.iter().chain(b).find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
    }
    let sums: Vec<Vector> = a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect();
    Polytope::from_vertices(dim, &sums)
}

pub fn oracle_sum(a: &Polytope, b: &Polytope) -> Result<Polytope> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    oracle_sum_points(a.dim(), a.vertices(), b.vertices())
}

/// Whether `x` lies in `A + B`, decided against the oracle hull's facets.
pub fn oracle_membership(a: &Polytope, b: &Polytope, x: &Vector) -> Result<bool> {
    let sum = oracle_sum(a, b)?;
    if x.dim() != sum.dim() {
        return Err(Error::DimensionMismatch { expected: sum.dim(), found: x.dim() });
    }
    Ok(sum.contains(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(list: &[&[i64]]) -> Vec<Vector> {
        list.iter().map(|c| Vector::from_ints(c)).collect()
    }

    fn square() -> Polytope {
        Polytope::cube(2)
    }

    fn diamond() -> Polytope {
        Polytope::cross_polytope(2)
    }

    #[test]
    fn orthogonal_segments_make_a_square() {
        let sum = oracle_sum_points(2, &vs(&[&[0, 0], &[1, 0]]), &vs(&[&[0, 0], &[0, 1]])).unwrap();
        assert_eq!(sum, square());
    }

    #[test]
    fn square_plus_diamond_is_octagon() {
        let sum = oracle_sum(&square(), &diamond()).unwrap();
        let expected = vs(&[
            &[-1, 0], &[-1, 1], &[0, -1], &[0, 2], &[1, -1], &[1, 2], &[2, 0], &[2, 1],
        ]);
        assert_eq!(sum.vertices(), &expected[..]);
        assert_eq!(sum.facets().len(), 8);
    }

    #[test]
    fn adding_a_point_translates() {
        let t = Vector::from_ints(&[3, -2]);
        let sum = oracle_sum_points(2, square().vertices(), std::slice::from_ref(&t)).unwrap();
        assert_eq!(sum, square().translated(&t));
        let sum = oracle_sum_points(2, square().vertices(), &[Vector::zeros(2)]).unwrap();
        assert_eq!(sum, square());
    }

    #[test]
    fn degenerate_hull_rejected() {
        let err = oracle_sum_points(2, &vs(&[&[0, 0], &[1, 0]]), &vs(&[&[0, 0], &[2, 0]])).unwrap_err();
        assert_eq!(err, Error::NotFullDimensional);
    }

    #[test]
    fn membership_examples() {
        let (a, b) = (square(), diamond());
        assert!(oracle_membership(&a, &b, &Vector::zeros(2)).unwrap());
        assert!(!oracle_membership(&a, &b, &Vector::from_ints(&[3, 0])).unwrap());
        assert!(oracle_membership(&a, &b, &Vector::from_ints(&[2, 1])).unwrap());
    }

    #[test]
    fn commutative() {
        let a = Polytope::simplex(3);
        let b = Polytope::cube(3);
        assert_eq!(oracle_sum(&a, &b).unwrap(), oracle_sum(&b, &a).unwrap());
    }
}
