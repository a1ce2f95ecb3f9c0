//! Polyhedral cones in double description, primal and dual vertex cones, and
//! the cone operations the summation algorithms are built from.
//!
//! A [`Cone`] always carries both descriptions in canonical form:
//!
//! * generators: a lineality basis (reduced echelon, integer rows) and the
//!   extreme rays of the pointed part, projected orthogonally off the
//!   lineality space and scaled to coprime integers;
//! * constraints: an equality basis for the orthogonal complement of the
//!   cone's span and the facet normals, projected onto that span.
//!
//! With everything canonical, structural equality is set equality, and the
//! polar cone is obtained by swapping the two descriptions.

use num::{BigInt, Signed, Zero};

use crate::dd;
use crate::error::{Error, Result};
use crate::polytope::{HalfSpace, Polytope};
use crate::scalar::{canonical_row_basis, project_out, Vector};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cone {
    dim: usize,
    apex: Vector,
    rays: Vec<Vector>,
    lineality: Vec<Vector>,
    facets: Vec<Vector>,
    equalities: Vec<Vector>,
}

/// Canonical generators (rays, lineality basis) of `{y : <m, y> <= 0}`.
fn canonical_generators(dim: usize, constraints: &[Vector]) -> (Vec<Vector>, Vec<Vector>) {
    let ints: Vec<Vec<BigInt>> = constraints.iter().map(Vector::primitive_ints).collect();
    let gens = dd::enumerate(dim, &ints);
    let raw_lineality: Vec<Vector> = gens.lineality.iter().map(|l| Vector::from_bigints(l)).collect();
    let lineality = canonical_row_basis(&raw_lineality, dim);
    let mut rays: Vec<Vector> = gens
        .rays
        .iter()
        .map(|r| project_out(&Vector::from_bigints(r), &lineality).primitive())
        .filter(|r| !r.is_zero())
        .collect();
    rays.sort();
    rays.dedup();
    (rays, lineality)
}

fn with_opposites(vectors: &[Vector], basis: &[Vector]) -> Vec<Vector> {
    let mut out = vectors.to_vec();
    for b in basis {
        out.push(b.clone());
        out.push(-b);
    }
    out
}

impl Cone {
    /// The cone `{y : <m, y - apex> <= 0 for every m}`.
    pub fn from_constraints(apex: Vector, normals: &[Vector]) -> Result<Self> {
        let dim = apex.dim();
        check_dims(dim, normals)?;
        let (rays, lineality) = canonical_generators(dim, normals);
        let (facets, equalities) = canonical_generators(dim, &with_opposites(&rays, &lineality));
        Ok(Cone { dim, apex, rays, lineality, facets, equalities })
    }

    /// The cone `apex + cone(generators)`.
    pub fn from_generators(apex: Vector, generators: &[Vector]) -> Result<Self> {
        let dim = apex.dim();
        check_dims(dim, generators)?;
        let (facets, equalities) = canonical_generators(dim, generators);
        let (rays, lineality) = canonical_generators(dim, &with_opposites(&facets, &equalities));
        Ok(Cone { dim, apex, rays, lineality, facets, equalities })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apex(&self) -> &Vector {
        &self.apex
    }

    /// Extreme rays of the pointed part, apex-relative.
    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vector] {
        &self.lineality
    }

    /// Normals `m` of the irredundant inequalities `<m, y - apex> <= 0`.
    pub fn facet_normals(&self) -> &[Vector] {
        &self.facets
    }

    /// Basis of the normals `e` with `<e, y - apex> = 0` on the whole cone.
    pub fn equalities(&self) -> &[Vector] {
        &self.equalities
    }

    /// All generating directions: rays plus both orientations of each lineality vector.
    pub fn generators(&self) -> Vec<Vector> {
        with_opposites(&self.rays, &self.lineality)
    }

    /// All constraint normals: facets plus both orientations of each equality.
    pub fn constraint_normals(&self) -> Vec<Vector> {
        with_opposites(&self.facets, &self.equalities)
    }

    /// Supporting half-spaces through the apex; an equality appears as two
    /// opposite half-spaces.
    pub fn supports(&self) -> Vec<HalfSpace> {
        self.constraint_normals()
            .into_iter()
            .map(|m| {
                let offset = m.dot_unchecked(&self.apex);
                HalfSpace::new(m, offset).expect("canonical normals are nonzero")
            })
            .collect()
    }

    /// Dimension of the cone's linear span.
    pub fn cone_dim(&self) -> usize {
        self.dim - self.equalities.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equalities.is_empty()
    }

    /// False when the cone contains a line.
    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Whether the apex-relative direction `u` lies in the cone, or in its
    /// interior when `strict` is set.
    pub fn contains_direction(&self, u: &Vector, strict: bool) -> bool {
        if u.dim() != self.dim {
            return false;
        }
        if strict {
            self.equalities.is_empty() && self.facets.iter().all(|m| m.dot_unchecked(u).is_negative())
        } else {
            self.equalities.iter().all(|e| e.dot_unchecked(u).is_zero())
                && self.facets.iter().all(|m| !m.dot_unchecked(u).is_positive())
        }
    }

    pub fn contains_point(&self, x: &Vector) -> bool {
        x.dim() == self.dim && self.contains_direction(&(x - &self.apex), false)
    }

    /// Same cone moved to a new apex.
    pub fn translated(&self, apex: Vector) -> Cone {
        Cone { apex, ..self.clone() }
    }

    /// Intersection of two cones sharing an apex.
    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.apex != other.apex {
            return Err(Error::ApexMismatch);
        }
        let mut normals = self.constraint_normals();
        normals.extend(other.constraint_normals());
        Cone::from_constraints(self.apex.clone(), &normals)
    }

    /// Polar cone `{y : <y, x> <= 0 for all x in C - apex}`, apexed at the origin.
    ///
    /// With this convention the polar of the apex-relative primal cone of a
    /// vertex is its dual (outer normal) cone, and polar is an involution.
    pub fn polar(&self) -> Cone {
        Cone {
            dim: self.dim,
            apex: Vector::zeros(self.dim),
            rays: self.facets.clone(),
            lineality: self.equalities.clone(),
            facets: self.rays.clone(),
            equalities: self.lineality.clone(),
        }
    }
}

fn check_dims(dim: usize, vectors: &[Vector]) -> Result<()> {
    match vectors.iter().find(|v| v.dim() != dim) {
        Some(v) => Err(Error::DimensionMismatch { expected: dim, found: v.dim() }),
        None => Ok(()),
    }
}

/// Primal cone of vertex `v`: apex `v`, generated by the edges towards its
/// neighbours. Its supports are the facets active at `v`.
pub fn primal_cone(p: &Polytope, v: usize) -> Result<Cone> {
    let apex = p.vertex(v)?.clone();
    let edges: Vec<Vector> = p
        .vertex_neighbours(v)?
        .iter()
        .map(|&w| &p.vertices()[w] - &apex)
        .collect();
    Cone::from_generators(apex, &edges)
}

/// Dual (normal) cone of vertex `v`: apex at the origin, generated by the
/// outer normals of the facets active at `v`.
pub fn dual_cone(p: &Polytope, v: usize) -> Result<Cone> {
    Cone::from_generators(Vector::zeros(p.dim()), &p.active_normals(v)?)
}

pub fn intersect_cones(c1: &Cone, c2: &Cone) -> Result<Cone> {
    c1.intersect(c2)
}

pub fn cone_dim(c: &Cone) -> usize {
    c.cone_dim()
}

/// Cone generated by both ray sets at `common_apex`. For cones this is
/// both their convex hull and their Minkowski sum.
pub fn convex_hull_of_cones(c1: &Cone, c2: &Cone, common_apex: &Vector) -> Result<Cone> {
    if c1.dim != c2.dim {
        return Err(Error::DimensionMismatch { expected: c1.dim, found: c2.dim });
    }
    if &c1.apex != common_apex || &c2.apex != common_apex {
        return Err(Error::ApexMismatch);
    }
    let mut gens = c1.generators();
    gens.extend(c2.generators());
    Cone::from_generators(common_apex.clone(), &gens)
}

pub fn polar_dual(c: &Cone) -> Cone {
    c.polar()
}

/// The normal fan: one dual cone per vertex, indexed like the vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFan {
    cones: Vec<Cone>,
}

impl NormalFan {
    pub fn new(p: &Polytope) -> Self {
        let cones = (0..p.vertices().len())
            .map(|v| dual_cone(p, v).expect("vertex index in range"))
            .collect();
        NormalFan { cones }
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, v: usize) -> &Cone {
        &self.cones[v]
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Indices of every cone containing direction `u`.
    pub fn locate(&self, u: &Vector) -> Vec<usize> {
        (0..self.cones.len()).filter(|&i| self.cones[i].contains_direction(u, false)).collect()
    }
}

pub fn normal_fan(p: &Polytope) -> NormalFan {
    NormalFan::new(p)
}
