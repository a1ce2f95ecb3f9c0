//! Exact Minkowski sums of full-dimensional convex polytopes in `R^n`.
//!
//! Three interchangeable algorithms compute `A + B` from the double
//! descriptions of the summands:
//!
//! * [`sum_dual_brute`] intersects the dual cone of every vertex pair and keeps
//!   the full-dimensional intersections (the common refinement of the normal
//!   fans);
//! * [`sum_dual_optimized`] does the same, but for each vertex of `A` walks only
//!   the connected cap of `B`'s normal fan that meets its dual cone;
//! * [`sum_primal`] stays in the primal space, walking the edges of the sum from
//!   one seed vertex and building each vertex cone as a convex hull of two
//!   translated primal cones.
//!
//! [`oracle_sum`] is the definitional reference (hull of all pairwise sums).
//! All arithmetic is exact.

mod dd;

pub mod cone;
pub mod dual;
pub mod error;
pub mod oracle;
pub mod polytope;
pub mod primal;
pub mod scalar;

pub use cone::{
    convex_hull_of_cones, cone_dim, dual_cone, intersect_cones, normal_fan, polar_dual, primal_cone,
    Cone, NormalFan,
};
pub use dual::{
    facets_from_refined_cone, is_minkowski_vertex_pair, polyhedral_cap, sum_dual_brute,
    sum_dual_optimized, Method, MinkowskiDecomposition, PolyhedralCap,
};
pub use error::{Error, Result};
pub use oracle::{oracle_membership, oracle_sum, oracle_sum_points};
pub use polytope::{HalfSpace, Polytope, ValidationReport, Violation};
pub use primal::{
    minkowski_vertex_cone, neighbour_candidates, seed_minkowski_vertex, seed_with_direction,
    sum_primal, sum_primal_with_seed, PrimalTraversalState, DEFAULT_SEED,
};
pub use scalar::{parse_rational, Matrix, Rational, Vector};

/// Computes `A + B` with the chosen method.
pub fn minkowski_sum(a: &Polytope, b: &Polytope, method: Method) -> Result<MinkowskiDecomposition> {
    match method {
        Method::DualBrute => sum_dual_brute(a, b),
        Method::DualOptimized => sum_dual_optimized(a, b),
        Method::Primal => sum_primal(a, b),
        Method::Oracle => dual::sum_oracle(a, b),
    }
}
