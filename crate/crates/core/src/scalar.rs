//! Exact rational scalars, vectors and the small dense linear algebra that
//! every geometric predicate in this crate rests on.
//!
//! Nothing here rounds. Rank and solve run fraction-free (Bareiss) elimination
//! over integers obtained by clearing each row's denominators, which keeps
//! intermediate growth polynomial.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, Integer, One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Error returned when a numeric literal cannot be read as an exact rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid number literal `{}`", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Reads an integer, a finite decimal (optionally with an exponent) or a
/// `p/q` literal into an exact rational.
pub fn parse_rational(text: &str) -> std::result::Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().map_err(|_| err())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(&all_digits).map_err(|_| err())?;
    let scale = exponent - frac_part.len() as i64;
    if scale.unsigned_abs() > 10_000 {
        return Err(err());
    }
    let pow = num::pow(BigInt::from(10), scale.unsigned_abs() as usize);
    let mut value = if scale >= 0 {
        Rational::from_integer(numer * pow)
    } else {
        Rational::new(numer, pow)
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A point or direction in `R^n` with exact rational coordinates.
///
/// Ordering is lexicographic on coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(Vec<Rational>);

impl Vector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| rational(c)).collect())
    }

    pub fn from_bigints(coords: &[BigInt]) -> Self {
        Vector(coords.iter().cloned().map(Rational::from_integer).collect())
    }

    /// The `i`-th standard basis vector of `R^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn check_dim(&self, other: &Vector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    pub fn dot(&self, other: &Vector) -> Result<Rational> {
        self.check_dim(other)?;
        Ok(self.dot_unchecked(other))
    }

    pub(crate) fn dot_unchecked(&self, other: &Vector) -> Rational {
        self.0.iter().zip(&other.0).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn checked_add(&self, other: &Vector) -> Result<Vector> {
        self.check_dim(other)?;
        Ok(Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn checked_sub(&self, other: &Vector) -> Result<Vector> {
        self.check_dim(other)?;
        Ok(Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, factor: &Rational) -> Vector {
        Vector(self.0.iter().map(|c| c * factor).collect())
    }

    /// Positive multiple of `self` with coprime integer coordinates.
    ///
    /// Direction is preserved (no sign flip). The zero vector maps to itself.
    pub fn primitive(&self) -> Vector {
        Vector::from_bigints(&self.primitive_ints())
    }

    pub(crate) fn primitive_ints(&self) -> Vec<BigInt> {
        primitive_ints(&self.0)
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

impl Add for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        self.checked_add(rhs).expect("vector dimensions differ")
    }
}

impl Sub for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        self.checked_sub(rhs).expect("vector dimensions differ")
    }
}

impl Neg for &Vector {
    type Output = Vector;

    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|c| -c).collect())
    }
}

/// Clears denominators and divides out the content: the coprime integer
/// vector that is a positive multiple of `coords`.
pub(crate) fn primitive_ints(coords: &[Rational]) -> Vec<BigInt> {
    let lcm = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coords.iter().map(|c| (c * &lcm).to_integer()).collect();
    make_primitive(ints)
}

pub(crate) fn make_primitive(mut ints: Vec<BigInt>) -> Vec<BigInt> {
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut ints {
            *c /= &g;
        }
    }
    ints
}

pub(crate) fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Dense rational matrix stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: Vec<Vector>,
    ncols: usize,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vector::dim);
        if let Some(bad) = rows.iter().find(|r| r.dim() != ncols) {
            return Err(Error::DimensionMismatch { expected: ncols, found: bad.dim() });
        }
        Ok(Matrix { rows, ncols })
    }

    /// Empty matrix with a known column count.
    pub fn empty(ncols: usize) -> Self {
        Matrix { rows: Vec::new(), ncols }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { rows: (0..n).map(|i| Vector::unit(n, i)).collect(), ncols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn mul_vec(&self, x: &Vector) -> Result<Vector> {
        if x.dim() != self.ncols {
            return Err(Error::DimensionMismatch { expected: self.ncols, found: x.dim() });
        }
        Ok(Vector::new(self.rows.iter().map(|r| r.dot_unchecked(x)).collect()))
    }

    pub fn rank(&self) -> usize {
        let ints: Vec<Vec<BigInt>> = self.rows.iter().map(Vector::primitive_ints).collect();
        int_rank(ints)
    }

    /// Exact solution of `self * x = rhs`.
    ///
    /// Inconsistent systems give [`Error::NoSolution`]; consistent systems whose
    /// solution is not unique give [`Error::Underdetermined`].
    pub fn solve(&self, rhs: &Vector) -> Result<Vector> {
        if rhs.dim() != self.nrows() {
            return Err(Error::DimensionMismatch { expected: self.nrows(), found: rhs.dim() });
        }
        let n = self.ncols;
        let augmented: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .zip(rhs.coords())
            .map(|(row, b)| {
                let mut coords = row.coords().to_vec();
                coords.push(b.clone());
                primitive_ints(&coords)
            })
            .collect();
        let (echelon, pivots) = bareiss_echelon(augmented, n + 1);
        if pivots.last() == Some(&n) {
            return Err(Error::NoSolution);
        }
        if pivots.len() < n {
            return Err(Error::Underdetermined);
        }
        let mut x = vec![Rational::zero(); n];
        for r in (0..n).rev() {
            let row = &echelon[r];
            let mut acc = Rational::from_integer(row[n].clone());
            for c in r + 1..n {
                acc -= Rational::from_integer(row[c].clone()) * &x[c];
            }
            x[r] = acc / Rational::from_integer(row[r].clone());
        }
        Ok(Vector::new(x))
    }

    /// Basis of `{x : self * x = 0}`, read off the reduced row echelon form.
    pub fn nullspace(&self) -> Vec<Vector> {
        let n = self.ncols;
        let (rref, pivots) = rational_rref(&self.rows, n);
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rref[r][free].clone();
            }
            basis.push(Vector::new(v));
        }
        basis
    }
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn solve_linear(m: &Matrix, rhs: &Vector) -> Result<Vector> {
    m.solve(rhs)
}

pub fn dot(u: &Vector, v: &Vector) -> Result<Rational> {
    u.dot(v)
}

/// Rank of a list of vectors.
pub fn rank_of(vectors: &[Vector]) -> usize {
    int_rank(vectors.iter().map(Vector::primitive_ints).collect())
}

pub(crate) fn int_rank(rows: Vec<Vec<BigInt>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    bareiss_echelon(rows, ncols).1.len()
}

/// Fraction-free row echelon form. Every entry stays an integer minor of the
/// input, so the division by the previous pivot is always exact.
fn bareiss_echelon(mut m: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (upper, lower) = m.split_at_mut(r + 1);
        let pivot_row = &upper[r];
        for row in lower.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..ncols {
                let v = &pivot_row[col] * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    (m, pivots)
}

fn rational_rref(rows: &[Vector], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for c in &mut m[r] {
            *c *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Canonical integer basis of the row space of `vectors`: reduced echelon
/// rows, each scaled to coprime integers with a positive pivot.
pub(crate) fn canonical_row_basis(vectors: &[Vector], ncols: usize) -> Vec<Vector> {
    let (rref, _) = rational_rref(vectors, ncols);
    rref.into_iter().map(|row| Vector::new(row).primitive()).collect()
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`.
pub(crate) fn project_out(v: &Vector, basis: &[Vector]) -> Vector {
    if basis.is_empty() {
        return v.clone();
    }
    // Solve the normal equations G c = B v, then subtract B^T c.
    let k = basis.len();
    let gram: Vec<Vector> = basis
        .iter()
        .map(|bi| Vector::new(basis.iter().map(|bj| bi.dot_unchecked(bj)).collect()))
        .collect();
    let rhs = Vector::new(basis.iter().map(|b| b.dot_unchecked(v)).collect());
    let coeffs = Matrix { rows: gram, ncols: k }
        .solve(&rhs)
        .expect("projection basis must be linearly independent");
    let mut out = v.clone();
    for (b, c) in basis.iter().zip(coeffs.coords()) {
        out = &out - &b.scale(c);
    }
    out
}
