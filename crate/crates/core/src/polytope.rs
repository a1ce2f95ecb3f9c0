//! Bounded full-dimensional polytopes held in double description: an
//! irredundant facet list, the vertex list, and the vertex-facet incidence.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use num::{BigInt, One, Signed, Zero};

use crate::dd;
use crate::error::{Error, Result};
use crate::scalar::{int_rank, primitive_ints, rank_of, rational, Rational, Vector};

/// Closed half-space `{x : <normal, x> <= offset}`.
///
/// Always stored with `(normal, offset)` scaled by a positive factor to coprime
/// integers, so two half-spaces describe the same set iff they compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    normal: Vector,
    offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: Vector, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::InternalInconsistency("half-space with zero normal".into()));
        }
        let mut coords = normal.into_coords();
        coords.push(offset);
        let ints = primitive_ints(&coords);
        let (offset, normal) = ints.split_last().expect("non-empty");
        Ok(HalfSpace {
            normal: Vector::from_bigints(normal),
            offset: Rational::from_integer(offset.clone()),
        })
    }

    pub fn from_ints(normal: &[i64], offset: i64) -> Result<Self> {
        HalfSpace::new(Vector::from_ints(normal), rational(offset))
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// `offset - <normal, x>`; non-negative exactly when `x` is inside.
    pub fn slack(&self, x: &Vector) -> Rational {
        &self.offset - self.normal.dot_unchecked(x)
    }

    pub fn contains(&self, x: &Vector) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn is_tight(&self, x: &Vector) -> bool {
        self.slack(x).is_zero()
    }

    pub fn translated(&self, t: &Vector) -> HalfSpace {
        HalfSpace { normal: self.normal.clone(), offset: &self.offset + self.normal.dot_unchecked(t) }
    }
}

impl fmt::Debug for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, x> <= {}", self.normal, crate::scalar::format_rational(&self.offset))
    }
}

/// A bounded, full-dimensional convex polytope in double description.
///
/// Vertices are sorted lexicographically and facets by their canonical form,
/// so two polytopes are equal iff they are the same point set.
pub struct Polytope {
    dim: usize,
    facets: Vec<HalfSpace>,
    vertices: Vec<Vector>,
    incidence: Vec<Vec<usize>>,
    adjacency: OnceLock<Vec<Vec<usize>>>,
}

impl Clone for Polytope {
    fn clone(&self) -> Self {
        Polytope {
            dim: self.dim,
            facets: self.facets.clone(),
            vertices: self.vertices.clone(),
            incidence: self.incidence.clone(),
            adjacency: self.adjacency.clone(),
        }
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices && self.facets == other.facets
    }
}

impl Eq for Polytope {}

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polytope")
            .field("dim", &self.dim)
            .field("vertices", &self.vertices)
            .field("facets", &self.facets)
            .finish()
    }
}

fn homogenize(v: &Vector) -> Vec<BigInt> {
    let mut coords = v.coords().to_vec();
    coords.push(Rational::one());
    primitive_ints(&coords)
}

fn check_dims<'a>(dim: usize, dims: impl Iterator<Item = usize> + 'a) -> Result<()> {
    for d in dims {
        if d != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: d });
        }
    }
    Ok(())
}

impl Polytope {
    /// Builds the polytope `{x : <n_i, x> <= b_i}` by enumerating the vertices
    /// of the homogenized cone and dropping redundant inequalities.
    pub fn from_halfspaces(dim: usize, halfspaces: &[HalfSpace]) -> Result<Self> {
        if halfspaces.is_empty() {
            return Err(Error::EmptyInput);
        }
        check_dims(dim, halfspaces.iter().map(HalfSpace::dim))?;

        let mut constraints: Vec<Vec<BigInt>> = halfspaces
            .iter()
            .map(|h| {
                let mut coords = h.normal.coords().to_vec();
                coords.push(-h.offset.clone());
                primitive_ints(&coords)
            })
            .collect();
        let mut t_nonneg = vec![BigInt::zero(); dim + 1];
        t_nonneg[dim] = BigInt::from(-1);
        constraints.push(t_nonneg);

        let gens = dd::enumerate(dim + 1, &constraints);
        let mut vertices = Vec::new();
        let mut recedes = !gens.lineality.is_empty();
        for ray in &gens.rays {
            let t = &ray[dim];
            if t.is_positive() {
                let t = Rational::from_integer(t.clone());
                vertices.push(Vector::new(
                    ray[..dim].iter().map(|c| Rational::from_integer(c.clone()) / &t).collect(),
                ));
            } else {
                recedes = true;
            }
        }
        if vertices.is_empty() {
            return Err(Error::Empty);
        }
        if recedes {
            return Err(Error::Unbounded);
        }
        let homogeneous: Vec<Vec<BigInt>> = vertices.iter().map(homogenize).collect();
        if int_rank(homogeneous) < dim + 1 {
            return Err(Error::NotFullDimensional);
        }

        let candidates: BTreeSet<HalfSpace> = halfspaces.iter().cloned().collect();
        let facets = candidates
            .into_iter()
            .filter(|h| {
                let tight: Vec<Vec<BigInt>> =
                    vertices.iter().filter(|v| h.is_tight(v)).map(homogenize).collect();
                int_rank(tight) == dim
            })
            .collect();
        Ok(Self::assemble(dim, vertices, facets))
    }

    /// Exact convex hull of a point set; interior and duplicate points are dropped.
    pub fn from_vertices(dim: usize, points: &[Vector]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        check_dims(dim, points.iter().map(Vector::dim))?;
        let unique: BTreeSet<&Vector> = points.iter().collect();
        let homogeneous: Vec<Vec<BigInt>> = unique.iter().map(|v| homogenize(v)).collect();
        if int_rank(homogeneous.clone()) < dim + 1 {
            return Err(Error::NotFullDimensional);
        }
        // Supports of cone{(v, 1)} are the rays of its polar.
        let polar = dd::enumerate(dim + 1, &homogeneous);
        debug_assert!(polar.lineality.is_empty());
        let facets: Vec<HalfSpace> = polar
            .rays
            .iter()
            .map(|r| {
                let normal = Vector::from_bigints(&r[..dim]);
                HalfSpace::new(normal, -Rational::from_integer(r[dim].clone()))
            })
            .collect::<Result<_>>()?;
        let vertices = unique
            .into_iter()
            .filter(|v| {
                let active: Vec<Vector> =
                    facets.iter().filter(|h| h.is_tight(v)).map(|h| h.normal.clone()).collect();
                rank_of(&active) == dim
            })
            .cloned()
            .collect();
        Ok(Self::assemble(dim, vertices, facets))
    }

    /// Assembles a polytope from both descriptions at once and rejects the
    /// pair unless it passes [`Polytope::validate`].
    pub fn from_double_description(
        dim: usize,
        vertices: Vec<Vector>,
        facets: Vec<HalfSpace>,
    ) -> Result<Self> {
        check_dims(dim, vertices.iter().map(Vector::dim))?;
        check_dims(dim, facets.iter().map(HalfSpace::dim))?;
        let mut vertices = vertices;
        vertices.sort();
        vertices.dedup();
        let mut facets = facets;
        facets.sort();
        facets.dedup();
        let p = Self::assemble(dim, vertices, facets);
        let report = p.validate();
        if !report.is_clean() {
            return Err(Error::InternalInconsistency(report.to_string()));
        }
        Ok(p)
    }

    /// Wraps vertex and facet lists as given, without sorting, deduplication or
    /// checks. Only useful to feed [`Polytope::validate`] with untrusted data.
    pub fn from_raw_parts(dim: usize, vertices: Vec<Vector>, facets: Vec<HalfSpace>) -> Self {
        let incidence = incidence_of(&vertices, &facets);
        Polytope { dim, facets, vertices, incidence, adjacency: OnceLock::new() }
    }

    fn assemble(dim: usize, mut vertices: Vec<Vector>, mut facets: Vec<HalfSpace>) -> Self {
        vertices.sort();
        vertices.dedup();
        facets.sort();
        facets.dedup();
        Self::from_raw_parts(dim, vertices, facets)
    }

    /// The unit cube `[0, 1]^n`.
    pub fn cube(n: usize) -> Self {
        let mut hs = Vec::with_capacity(2 * n);
        for i in 0..n {
            let e = Vector::unit(n, i);
            hs.push(HalfSpace::new(e.clone(), Rational::one()).expect("nonzero"));
            hs.push(HalfSpace::new(-&e, Rational::zero()).expect("nonzero"));
        }
        Self::from_halfspaces(n, &hs).expect("cube is a polytope")
    }

    /// The standard simplex `conv{0, e_1, ..., e_n}`.
    pub fn simplex(n: usize) -> Self {
        let mut pts = vec![Vector::zeros(n)];
        pts.extend((0..n).map(|i| Vector::unit(n, i)));
        Self::from_vertices(n, &pts).expect("simplex is a polytope")
    }

    /// The cross-polytope `conv{+-e_i}`; in the plane, the diamond `|x| + |y| <= 1`.
    pub fn cross_polytope(n: usize) -> Self {
        let pts: Vec<Vector> =
            (0..n).flat_map(|i| [Vector::unit(n, i), -&Vector::unit(n, i)]).collect();
        Self::from_vertices(n, &pts).expect("cross-polytope is a polytope")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    pub fn vertex(&self, v: usize) -> Result<&Vector> {
        self.vertices.get(v).ok_or(Error::IndexOutOfRange { index: v, len: self.vertices.len() })
    }

    /// Sorted indices of the facets active at vertex `v`.
    pub fn incidence(&self, v: usize) -> Result<&[usize]> {
        self.vertex(v)?;
        Ok(&self.incidence[v])
    }

    pub fn vertex_index(&self, point: &Vector) -> Option<usize> {
        self.vertices.binary_search(point).ok()
    }

    /// Outer normals of the facets active at vertex `v`.
    pub fn active_normals(&self, v: usize) -> Result<Vec<Vector>> {
        Ok(self.incidence(v)?.iter().map(|&f| self.facets[f].normal.clone()).collect())
    }

    /// Vertices joined to `v` by an edge. Two vertices are adjacent iff the
    /// normals of their common active facets have rank `n - 1`.
    pub fn vertex_neighbours(&self, v: usize) -> Result<&[usize]> {
        self.vertex(v)?;
        Ok(&self.adjacency()[v])
    }

    fn adjacency(&self) -> &Vec<Vec<usize>> {
        self.adjacency.get_or_init(|| {
            let nv = self.vertices.len();
            let mut adj = vec![Vec::new(); nv];
            let need = self.dim.saturating_sub(1);
            for u in 0..nv {
                for w in u + 1..nv {
                    let common: Vec<usize> = self.incidence[u]
                        .iter()
                        .filter(|f| self.incidence[w].binary_search(f).is_ok())
                        .copied()
                        .collect();
                    if common.len() < need {
                        continue;
                    }
                    let normals: Vec<Vector> =
                        common.iter().map(|&f| self.facets[f].normal.clone()).collect();
                    if rank_of(&normals) == need {
                        adj[u].push(w);
                        adj[w].push(u);
                    }
                }
            }
            adj
        })
    }

    /// Vertex barycenter; strictly interior for a full-dimensional polytope.
    pub fn interior_point(&self) -> Vector {
        let count = rational(self.vertices.len() as i64);
        let sum = self.vertices.iter().fold(Vector::zeros(self.dim), |acc, v| &acc + v);
        sum.scale(&count.recip())
    }

    /// Whether `x` satisfies every facet inequality.
    pub fn contains(&self, x: &Vector) -> bool {
        self.facets.iter().all(|h| h.contains(x))
    }

    pub fn translated(&self, t: &Vector) -> Polytope {
        let vertices = self.vertices.iter().map(|v| v + t).collect();
        let facets = self.facets.iter().map(|h| h.translated(t)).collect();
        Self::assemble(self.dim, vertices, facets)
    }

    /// Checks the double description: containment, incidence, irredundancy,
    /// extremality, boundedness and full dimension. Returns every violation.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.dim;

        for (vi, v) in self.vertices.iter().enumerate() {
            if v.dim() != n {
                violations.push(Violation::DimensionMismatch { vertex: vi });
                return ValidationReport { violations };
            }
        }

        let mut seen = BTreeSet::new();
        for (vi, v) in self.vertices.iter().enumerate() {
            if !seen.insert(v) {
                violations.push(Violation::DuplicateVertex { vertex: vi });
            }
        }

        for (vi, v) in self.vertices.iter().enumerate() {
            for (fi, h) in self.facets.iter().enumerate() {
                if !h.contains(v) {
                    violations.push(Violation::VertexOutsideFacet { vertex: vi, facet: fi });
                }
            }
        }

        let mut first_seen: Vec<&HalfSpace> = Vec::new();
        for (fi, h) in self.facets.iter().enumerate() {
            if let Some(j) = first_seen.iter().position(|g| *g == h) {
                violations.push(Violation::RedundantFacet { facet: fi, duplicate_of: Some(j) });
                first_seen.push(h);
                continue;
            }
            first_seen.push(h);
            let tight: Vec<Vec<BigInt>> =
                self.vertices.iter().filter(|v| h.is_tight(v)).map(homogenize).collect();
            if int_rank(tight) != n {
                violations.push(Violation::RedundantFacet { facet: fi, duplicate_of: None });
            }
        }

        let recomputed = incidence_of(&self.vertices, &self.facets);
        for (vi, active) in recomputed.iter().enumerate() {
            if self.incidence.get(vi) != Some(active) {
                violations.push(Violation::IncidenceMismatch { vertex: vi });
            }
            let normals: Vec<Vector> = active.iter().map(|&f| self.facets[f].normal.clone()).collect();
            if rank_of(&normals) != n {
                violations.push(Violation::NotExtreme { vertex: vi });
            }
        }

        let homogeneous: Vec<Vec<BigInt>> = self.vertices.iter().map(homogenize).collect();
        if int_rank(homogeneous) < n + 1 {
            violations.push(Violation::NotFullDimensional);
        }
        let normals: Vec<Vec<BigInt>> =
            self.facets.iter().map(|h| h.normal.primitive_ints()).collect();
        let recession = dd::enumerate(n, &normals);
        if !recession.rays.is_empty() || !recession.lineality.is_empty() {
            violations.push(Violation::Unbounded);
        }

        ValidationReport { violations }
    }
}

fn incidence_of(vertices: &[Vector], facets: &[HalfSpace]) -> Vec<Vec<usize>> {
    vertices
        .iter()
        .map(|v| (0..facets.len()).filter(|&f| facets[f].is_tight(v)).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DimensionMismatch { vertex: usize },
    DuplicateVertex { vertex: usize },
    VertexOutsideFacet { vertex: usize, facet: usize },
    RedundantFacet { facet: usize, duplicate_of: Option<usize> },
    IncidenceMismatch { vertex: usize },
    NotExtreme { vertex: usize },
    NotFullDimensional,
    Unbounded,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DimensionMismatch { vertex } => write!(f, "vertex {vertex} has the wrong dimension"),
            Violation::DuplicateVertex { vertex } => write!(f, "duplicate vertex {vertex}"),
            Violation::VertexOutsideFacet { vertex, facet } => {
                write!(f, "vertex {vertex} outside facet {facet}")
            }
            Violation::RedundantFacet { facet, duplicate_of: Some(j) } => {
                write!(f, "redundant facet {facet} (duplicates facet {j})")
            }
            Violation::RedundantFacet { facet, duplicate_of: None } => {
                write!(f, "redundant facet {facet}")
            }
            Violation::IncidenceMismatch { vertex } => write!(f, "incidence of vertex {vertex} is inconsistent"),
            Violation::NotExtreme { vertex } => write!(f, "vertex {vertex} is not extreme"),
            Violation::NotFullDimensional => write!(f, "not full-dimensional"),
            Violation::Unbounded => write!(f, "unbounded"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
