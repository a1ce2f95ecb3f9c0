//! Minkowski sums in the dual space, by refining the two normal fans.
//!
//! `a + b` is a vertex of `A + B` exactly when the dual cones of `a` and `b`
//! meet in a full-dimensional cone. That refined cone is the dual cone of the
//! sum vertex, so its extreme rays are the outer normals of the sum facets
//! through it.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::cone::{Cone, NormalFan};
use crate::error::{Error, Result};
use crate::oracle::oracle_sum;
use crate::polytope::{HalfSpace, Polytope};
use crate::scalar::Vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    DualBrute,
    DualOptimized,
    Primal,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::DualBrute, Method::DualOptimized, Method::Primal, Method::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Method::DualBrute => "dual",
            Method::DualOptimized => "dual-opt",
            Method::Primal => "primal",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}` (expected dual, dual-opt, primal or oracle)"))
    }
}

/// The sum polytope together with the unique vertex pair behind each of its
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinkowskiDecomposition {
    sum: Polytope,
    witnesses: Vec<(usize, usize)>,
    method: Method,
    cone_operations: usize,
}

impl MinkowskiDecomposition {
    pub fn sum(&self) -> &Polytope {
        &self.sum
    }

    pub fn into_sum(self) -> Polytope {
        self.sum
    }

    /// `witnesses()[c] = (i, j)` with `sum.vertices()[c] = A[i] + B[j]`.
    pub fn witnesses(&self) -> &[(usize, usize)] {
        &self.witnesses
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Number of cone intersections (dual methods) or vertex-cone hulls
    /// (primal method) performed.
    pub fn cone_operations(&self) -> usize {
        self.cone_operations
    }

    pub(crate) fn assemble(
        dim: usize,
        found: BTreeMap<Vector, (usize, usize)>,
        facets: BTreeSet<HalfSpace>,
        method: Method,
        cone_operations: usize,
    ) -> Result<Self> {
        let vertices: Vec<Vector> = found.keys().cloned().collect();
        let sum = Polytope::from_double_description(dim, vertices, facets.into_iter().collect())?;
        let witnesses = sum.vertices().iter().map(|v| found[v]).collect();
        Ok(MinkowskiDecomposition { sum, witnesses, method, cone_operations })
    }
}

fn check_same_dim(a: &Polytope, b: &Polytope) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(())
}

/// Refined cone of the pair and whether it is full-dimensional.
pub fn is_minkowski_vertex_pair(a: &Polytope, b: &Polytope, ai: usize, bj: usize) -> Result<(bool, Cone)> {
    check_same_dim(a, b)?;
    let refined = crate::cone::dual_cone(a, ai)?.intersect(&crate::cone::dual_cone(b, bj)?)?;
    Ok((refined.cone_dim() == a.dim(), refined))
}

/// Facet half-spaces of the sum through `c`, one per extreme ray of the
/// full-dimensional refined cone.
pub fn facets_from_refined_cone(refined: &Cone, c: &Vector) -> Result<Vec<HalfSpace>> {
    if !refined.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    if c.dim() != refined.dim() {
        return Err(Error::DimensionMismatch { expected: refined.dim(), found: c.dim() });
    }
    refined
        .rays()
        .iter()
        .map(|r| HalfSpace::new(r.clone(), r.dot_unchecked(c)))
        .collect()
}

fn record(
    found: &mut BTreeMap<Vector, (usize, usize)>,
    facets: &mut BTreeSet<HalfSpace>,
    a: &Polytope,
    b: &Polytope,
    (ai, bj): (usize, usize),
    refined: &Cone,
) -> Result<()> {
    let c = &a.vertices()[ai] + &b.vertices()[bj];
    facets.extend(facets_from_refined_cone(refined, &c)?);
    if let Some(prev) = found.insert(c.clone(), (ai, bj)) {
        if prev != (ai, bj) {
            return Err(Error::InternalInconsistency(format!(
                "sum vertex {c} has two decompositions {prev:?} and {:?}",
                (ai, bj)
            )));
        }
    }
    Ok(())
}

/// Intersects the dual cones of all `|V_A| * |V_B|` vertex pairs.
pub fn sum_dual_brute(a: &Polytope, b: &Polytope) -> Result<MinkowskiDecomposition> {
    check_same_dim(a, b)?;
    let fan_a = NormalFan::new(a);
    let fan_b = NormalFan::new(b);
    let n = a.dim();
    let mut found = BTreeMap::new();
    let mut facets = BTreeSet::new();
    let mut count = 0;
    for (i, ca) in fan_a.cones().iter().enumerate() {
        for (j, cb) in fan_b.cones().iter().enumerate() {
            let refined = ca.intersect(cb)?;
            count += 1;
            if refined.cone_dim() == n {
                record(&mut found, &mut facets, a, b, (i, j), &refined)?;
            }
        }
    }
    MinkowskiDecomposition::assemble(n, found, facets, Method::DualBrute, count)
}

/// Vertices of `B` whose pairing with a fixed vertex of `A` gives a vertex of
/// the sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedralCap {
    pub anchor: usize,
    pub members: Vec<usize>,
}

impl PolyhedralCap {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Connectivity of the members in the vertex-adjacency graph of `b`.
    pub fn is_connected(&self, b: &Polytope) -> bool {
        let Some(&start) = self.members.first() else {
            return false;
        };
        let members: BTreeSet<usize> = self.members.iter().copied().collect();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in b.vertex_neighbours(v).expect("member index in range") {
                if members.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == members.len()
    }
}

/// The cap of vertex `ai` of `A` in `B`, by testing every vertex of `B`.
pub fn polyhedral_cap(a: &Polytope, b: &Polytope, ai: usize) -> Result<PolyhedralCap> {
    check_same_dim(a, b)?;
    let anchor = crate::cone::dual_cone(a, ai)?;
    let mut members = Vec::new();
    for j in 0..b.vertices().len() {
        let refined = anchor.intersect(&crate::cone::dual_cone(b, j)?)?;
        if refined.cone_dim() == a.dim() {
            members.push(j);
        }
    }
    Ok(PolyhedralCap { anchor: ai, members })
}

/// Maps each vertex of `b` to its neighbours keyed by primitive edge
/// direction. These directions are exactly the facet normals of the vertex's
/// dual cone, so a refined-cone facet shared with `C_D(b_j)` names the
/// neighbour across it.
fn neighbours_by_direction(b: &Polytope) -> Vec<HashMap<Vector, usize>> {
    (0..b.vertices().len())
        .map(|j| {
            let bj = &b.vertices()[j];
            b.vertex_neighbours(j)
                .expect("index in range")
                .iter()
                .map(|&k| ((&b.vertices()[k] - bj).primitive(), k))
                .collect()
        })
        .collect()
}

struct CapSearch<'a> {
    a: &'a Polytope,
    b: &'a Polytope,
    fan_b: &'a NormalFan,
    neighbours_b: &'a [HashMap<Vector, usize>],
}

struct CapResult {
    pairs: Vec<(usize, Cone)>,
    intersections: usize,
}

impl CapSearch<'_> {
    /// Scans `B` in vertex order until the first full-dimensional refinement,
    /// then explores the cap through shared refined-cone facets.
    fn run(&self, ai: usize, anchor: &Cone) -> Result<CapResult> {
        let n = self.a.dim();
        let mut intersections = 0;
        let mut start = None;
        for (j, cb) in self.fan_b.cones().iter().enumerate() {
            let refined = anchor.intersect(cb)?;
            intersections += 1;
            if refined.cone_dim() == n {
                start = Some((j, refined));
                break;
            }
        }
        let Some(start) = start else {
            return Err(Error::InternalInconsistency(format!("empty polyhedral cap for vertex {ai}")));
        };

        let mut processed = vec![false; self.b.vertices().len()];
        processed[start.0] = true;
        let mut worklist = vec![start];
        let mut pairs = Vec::new();
        while let Some((j, refined)) = worklist.pop() {
            let cb = self.fan_b.cone(j);
            for m in refined.facet_normals() {
                // Only facets of the refined cone inherited from C_D(b_j) lead to
                // another cone of B; crossing one that C_D(a_i) also owns leaves
                // the anchor cone altogether.
                if cb.facet_normals().binary_search(m).is_err()
                    || anchor.facet_normals().binary_search(m).is_ok()
                {
                    continue;
                }
                let k = *self.neighbours_b[j].get(m).ok_or_else(|| {
                    Error::InternalInconsistency(format!("no neighbour of vertex {j} across facet {m}"))
                })?;
                if processed[k] {
                    continue;
                }
                let next = anchor.intersect(self.fan_b.cone(k))?;
                intersections += 1;
                // The far side of this facet is interior to C_D(a_i), so the
                // neighbour has to belong to the cap.
                if next.cone_dim() != n {
                    return Err(Error::CapDisconnected { anchor: ai });
                }
                processed[k] = true;
                worklist.push((k, next));
            }
            pairs.push((j, refined));
        }
        Ok(CapResult { pairs, intersections })
    }
}

/// Neighbour-propagating refinement: for every vertex of `A`, only its
/// polyhedral cap in `B` (plus the cones bordering it) is intersected.
pub fn sum_dual_optimized(a: &Polytope, b: &Polytope) -> Result<MinkowskiDecomposition> {
    check_same_dim(a, b)?;
    let fan_a = NormalFan::new(a);
    let fan_b = NormalFan::new(b);
    let neighbours_b = neighbours_by_direction(b);
    let search = CapSearch { a, b, fan_b: &fan_b, neighbours_b: &neighbours_b };

    let mut found = BTreeMap::new();
    let mut facets = BTreeSet::new();
    let mut count = 0;
    for (i, anchor) in fan_a.cones().iter().enumerate() {
        let cap = search.run(i, anchor)?;
        count += cap.intersections;
        for (j, refined) in &cap.pairs {
            record(&mut found, &mut facets, a, b, (i, *j), refined)?;
        }
    }
    MinkowskiDecomposition::assemble(a.dim(), found, facets, Method::DualOptimized, count)
}

/// The oracle result dressed as a decomposition; witnesses are recovered by
/// matching pairwise sums.
pub(crate) fn sum_oracle(a: &Polytope, b: &Polytope) -> Result<MinkowskiDecomposition> {
    let sum = oracle_sum(a, b)?;
    let mut pairs: HashMap<Vector, Vec<(usize, usize)>> = HashMap::new();
    for (i, x) in a.vertices().iter().enumerate() {
        for (j, y) in b.vertices().iter().enumerate() {
            let c = x + y;
            if sum.vertex_index(&c).is_some() {
                pairs.entry(c).or_default().push((i, j));
            }
        }
    }
    let mut witnesses = Vec::with_capacity(sum.vertices().len());
    for v in sum.vertices() {
        match pairs.get(v).map(Vec::as_slice) {
            Some([w]) => witnesses.push(*w),
            other => {
                return Err(Error::InternalInconsistency(format!(
                    "sum vertex {v} has decompositions {other:?}"
                )))
            }
        }
    }
    Ok(MinkowskiDecomposition { sum, witnesses, method: Method::Oracle, cone_operations: 0 })
}
