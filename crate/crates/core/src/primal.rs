//! Minkowski sums in the primal space.
//!
//! At a sum vertex `c = a + b` the vertex cone of `A + B` is the cone generated
//! by the edges of `A` at `a` together with the edges of `B` at `b`, translated
//! to `c`. Its supports are the facets of the sum at `c`; its extreme rays are
//! the edges of the sum leaving `c`. Each such edge is parallel to an edge of
//! `A` at `a`, an edge of `B` at `b`, or both, which identifies the
//! decomposition of the vertex at its far end. A breadth-first walk over those
//! edges from one seed vertex recovers the whole sum.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::{convex_hull_of_cones, primal_cone, Cone};
use crate::dual::{Method, MinkowskiDecomposition};
use crate::error::{Error, Result};
use crate::polytope::{HalfSpace, Polytope};
use crate::scalar::{rational, Rational, Vector};

pub const DEFAULT_SEED: u64 = 0x5eed_0f5a11;

fn unique_argmax(p: &Polytope, u: &Vector) -> Option<usize> {
    let values: Vec<Rational> = p.vertices().iter().map(|v| u.dot_unchecked(v)).collect();
    let best = values.iter().max()?;
    let mut hits = values.iter().enumerate().filter(|(_, v)| *v == best).map(|(i, _)| i);
    let first = hits.next();
    if hits.next().is_some() {
        None
    } else {
        first
    }
}

/// Vertex pair maximizing `<u, .>` on `A` and on `B`, or `None` when either
/// maximum is attained more than once.
pub fn seed_with_direction(a: &Polytope, b: &Polytope, u: &Vector) -> Option<(usize, usize)> {
    if u.dim() != a.dim() || u.dim() != b.dim() {
        return None;
    }
    Some((unique_argmax(a, u)?, unique_argmax(b, u)?))
}

pub fn seed_minkowski_vertex(a: &Polytope, b: &Polytope) -> (usize, usize) {
    seed_minkowski_vertex_with(a, b, DEFAULT_SEED)
}

/// Draws integer directions of slowly growing magnitude from a seeded stream
/// until one is generic for both polytopes.
pub fn seed_minkowski_vertex_with(a: &Polytope, b: &Polytope, seed: u64) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = a.dim();
    for attempt in 0u64.. {
        let bound = 2 + (attempt / 8) as i64;
        let u = Vector::new((0..n).map(|_| rational(rng.gen_range(-bound..=bound))).collect());
        if u.is_zero() {
            continue;
        }
        if let Some(pair) = seed_with_direction(a, b, &u) {
            return pair;
        }
    }
    unreachable!("a generic direction exists for any finite vertex sets")
}

/// Vertex cone of the sum at `a_i + b_j`: the hull of both primal cones
/// moved to the common apex.
pub fn minkowski_vertex_cone(a: &Polytope, b: &Polytope, ai: usize, bj: usize) -> Result<Cone> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    let c = a.vertex(ai)? + b.vertex(bj)?;
    let ca = primal_cone(a, ai)?.translated(c.clone());
    let cb = primal_cone(b, bj)?.translated(c.clone());
    let hull = convex_hull_of_cones(&ca, &cb, &c)?;
    if !hull.is_pointed() || !hull.is_full_dimensional() {
        return Err(Error::NotMinkowskiVertex { a: ai, b: bj });
    }
    Ok(hull)
}

fn parallel_neighbour(p: &Polytope, v: usize, dir: &Vector) -> Option<usize> {
    let origin = &p.vertices()[v];
    p.vertex_neighbours(v)
        .ok()?
        .iter()
        .copied()
        .find(|&w| (&p.vertices()[w] - origin).primitive() == *dir)
}

fn step_along(a: &Polytope, b: &Polytope, ai: usize, bj: usize, edge_dir: &Vector) -> Result<(usize, usize)> {
    let dir = edge_dir.primitive();
    match (parallel_neighbour(a, ai, &dir), parallel_neighbour(b, bj, &dir)) {
        (Some(na), Some(nb)) => Ok((na, nb)),
        (Some(na), None) => Ok((na, bj)),
        (None, Some(nb)) => Ok((ai, nb)),
        (None, None) => Err(Error::NoParallelEdge { a: ai, b: bj }),
    }
}

/// Decomposition of the sum vertex at the far end of edge `edge_dir` leaving
/// `a_i + b_j`. The candidate is confirmed to be a Minkowski vertex.
pub fn neighbour_candidates(
    a: &Polytope,
    b: &Polytope,
    ai: usize,
    bj: usize,
    edge_dir: &Vector,
) -> Result<(usize, usize)> {
    a.vertex(ai)?;
    b.vertex(bj)?;
    let (na, nb) = step_along(a, b, ai, bj, edge_dir)?;
    minkowski_vertex_cone(a, b, na, nb)?;
    Ok((na, nb))
}

/// Bookkeeping of the breadth-first walk over the edges of the sum.
#[derive(Debug, Default)]
pub struct PrimalTraversalState {
    pub processed: BTreeSet<Vector>,
    pub frontier: VecDeque<(usize, usize)>,
    pub vertices: BTreeMap<Vector, (usize, usize)>,
    pub facets: BTreeSet<HalfSpace>,
    pub pops: usize,
}

pub fn sum_primal(a: &Polytope, b: &Polytope) -> Result<MinkowskiDecomposition> {
    sum_primal_with_seed(a, b, DEFAULT_SEED)
}

/// Walks the edge graph of `A + B` from a seed vertex. Each vertex is queued
/// once; neighbours are queued in lexicographic order of their sum point.
pub fn sum_primal_with_seed(a: &Polytope, b: &Polytope, seed: u64) -> Result<MinkowskiDecomposition> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    let max_pops = a.vertices().len() * b.vertices().len();
    let start = seed_minkowski_vertex_with(a, b, seed);
    let mut state = PrimalTraversalState::default();
    state.processed.insert(&a.vertices()[start.0] + &b.vertices()[start.1]);
    state.frontier.push_back(start);

    while let Some((ai, bj)) = state.frontier.pop_front() {
        state.pops += 1;
        if state.pops > max_pops {
            return Err(Error::TraversalIncomplete("walk exceeded |V_A|*|V_B| vertices".into()));
        }
        let cone = minkowski_vertex_cone(a, b, ai, bj)?;
        let c = cone.apex().clone();
        state.facets.extend(cone.supports());

        let mut next: Vec<(Vector, (usize, usize))> = Vec::new();
        for d in cone.rays() {
            let pair = step_along(a, b, ai, bj, d)?;
            let target = &a.vertices()[pair.0] + &b.vertices()[pair.1];
            if !state.processed.contains(&target) {
                next.push((target, pair));
            }
        }
        next.sort();
        for (target, pair) in next {
            if state.processed.insert(target) {
                state.frontier.push_back(pair);
            }
        }
        state.vertices.insert(c, (ai, bj));
    }

    let pops = state.pops;
    MinkowskiDecomposition::assemble(a.dim(), state.vertices, state.facets, Method::Primal, pops).map_err(|e| match e {
        Error::InternalInconsistency(msg) => Error::TraversalIncomplete(msg),
        other => other,
    })
}
