//! Double description kernel over the integers.
//!
//! Given constraint normals `m_1..m_k`, [`enumerate`] returns generators of
//! the cone `{y : <m_i, y> <= 0 for all i}` as a lineality basis plus a
//! minimal set of rays. Constraints are inserted one at a time; while the
//! running cone still contains lines, a constraint that cuts a line pivots that
//! line into a ray. Afterwards new rays are formed only from adjacent
//! positive/negative pairs, decided by the combinatorial zero-set test.

use fixedbitset::FixedBitSet;
use num::{BigInt, Signed, Zero};

use crate::scalar::{int_dot, make_primitive};

pub(crate) struct Generators {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

struct Ray {
    coords: Vec<BigInt>,
    zeros: FixedBitSet,
}

/// Generators of `{y in R^dim : <m, y> <= 0 for every m in constraints}`.
pub(crate) fn enumerate(dim: usize, constraints: &[Vec<BigInt>]) -> Generators {
    let mut normals: Vec<Vec<BigInt>> = constraints
        .iter()
        .filter(|m| m.iter().any(|c| !c.is_zero()))
        .map(|m| make_primitive(m.clone()))
        .collect();
    normals.sort();
    normals.dedup();
    let k = normals.len();

    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (idx, m) in normals.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !int_dot(m, l).is_zero()) {
            let mut pivot = lineality.swap_remove(pos);
            let mut s0 = int_dot(m, &pivot);
            if s0.is_positive() {
                pivot.iter_mut().for_each(|c| *c = -&*c);
                s0 = -s0;
            }
            for l in &mut lineality {
                let t = int_dot(m, l);
                if !t.is_zero() {
                    let combined = combine(&s0, l, &-t, &pivot);
                    *l = make_primitive(combined);
                }
            }
            let neg_s0 = -&s0;
            for r in &mut rays {
                let t = int_dot(m, &r.coords);
                if !t.is_zero() {
                    r.coords = make_primitive(combine(&neg_s0, &r.coords, &t, &pivot));
                }
                r.zeros.insert(idx);
            }
            let mut zeros = FixedBitSet::with_capacity(k);
            zeros.insert_range(..idx);
            rays.push(Ray { coords: pivot, zeros });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| int_dot(m, &r.coords)).collect();
        let positive: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        if positive.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.insert(idx);
                }
            }
            continue;
        }
        let negative: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();

        let min_common = dim.saturating_sub(lineality.len()).saturating_sub(2);
        let mut created = Vec::new();
        for &p in &positive {
            for &q in &negative {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[q].zeros);
                if common.count_ones(..) < min_common {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(i, r)| i != p && i != q && common.is_subset(&r.zeros));
                if blocked {
                    continue;
                }
                // <m,p> * q - <m,q> * p has both coefficients positive.
                let coords = make_primitive(combine(&values[p], &rays[q].coords, &-&values[q], &rays[p].coords));
                common.insert(idx);
                created.push(Ray { coords, zeros: common });
            }
        }

        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() - positive.len() + created.len());
        for (r, v) in rays.into_iter().zip(&values) {
            if v.is_positive() {
                continue;
            }
            let mut r = r;
            if v.is_zero() {
                r.zeros.insert(idx);
            }
            kept.push(r);
        }
        kept.extend(created);
        rays = kept;
    }

    Generators { rays: rays.into_iter().map(|r| r.coords).collect(), lineality }
}

fn combine(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    x.iter().zip(y).map(|(xi, yi)| a * xi + b * yi).collect()
}
