//! Extreme rays of a polyhedral cone by double description.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{dot, primitive, IntMatrix, IntVec};
use crate::error::{Error, Result};

struct Ray {
    v: IntVec,
    /// Indices of processed inequalities that vanish on `v`.
    zeros: Vec<usize>,
}

/// Extreme rays of the pointed cone `{x : row . x >= 0 for every row}`.
///
/// The result is the unique minimal generating set, primitive and sorted
/// lexicographically. The zero cone has no rays. A cone containing a line is
/// rejected with [`Error::ContainsLine`].
pub fn extreme_rays(inequalities: &IntMatrix) -> Result<Vec<IntVec>> {
    let dim = inequalities.cols();
    // Lineality space, kept as a basis orthogonal to every processed row.
    let mut lineality: Vec<IntVec> = IntMatrix::identity(dim).to_rows();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in (0..inequalities.rows()).map(|k| (k, inequalities.row(k))) {
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let l = lineality.swap_remove(pos);
            let al = dot(a, &l);
            let s = BigInt::from(if al.is_positive() { 1 } else { -1 });
            let abs_al = al.abs();
            for other in lineality.iter_mut() {
                let ao = dot(a, other);
                *other = reduce(&abs_al, other, &(&s * &ao), &l);
            }
            for r in rays.iter_mut() {
                let ar = dot(a, &r.v);
                r.v = reduce(&abs_al, &r.v, &(&s * &ar), &l);
                r.zeros.push(k);
            }
            for x in lineality.iter_mut() {
                *x = primitive(x).expect("lineality vectors stay independent");
            }
            // every earlier row vanishes on the lineality space
            let new = Ray { v: l.iter().map(|x| x * &s).collect(), zeros: (0..k).collect() };
            rays.push(new);
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, val) in rays.iter_mut().zip(&values) {
                if val.is_zero() {
                    r.zeros.push(k);
                }
            }
            continue;
        }

        let mut created = Vec::new();
        for &p in &pos {
            for &n in &neg {
                if !adjacent(&rays, p, n) {
                    continue;
                }
                // values[p] > 0 > values[n]
                let v: IntVec = rays[p]
                    .v
                    .iter()
                    .zip(&rays[n].v)
                    .map(|(x, y)| x * -&values[n] + y * &values[p])
                    .collect();
                let mut zeros: Vec<usize> =
                    rays[p].zeros.iter().filter(|z| rays[n].zeros.contains(z)).copied().collect();
                zeros.push(k);
                created.push(Ray { v: primitive(&v).expect("nonzero combination"), zeros });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                r.zeros.push(k);
            }
            kept.push(r);
        }
        kept.extend(created);
        rays = kept;
    }

    if let Some(line) = lineality.first() {
        return Err(Error::ContainsLine { line: line.iter().map(ToString::to_string).collect() });
    }
    let mut out: Vec<IntVec> = rays.into_iter().map(|r| primitive(&r.v).expect("nonzero ray")).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `c * v - d * l`, which is orthogonal to the current row when `d/c` is the
/// projection coefficient.
fn reduce(c: &BigInt, v: &[BigInt], d: &BigInt, l: &[BigInt]) -> IntVec {
    v.iter().zip(l).map(|(x, y)| c * x - d * y).collect()
}

/// Combinatorial adjacency: no third ray is tight on every row tight on both.
fn adjacent(rays: &[Ray], p: usize, n: usize) -> bool {
    let common: Vec<usize> = rays[p].zeros.iter().filter(|z| rays[n].zeros.contains(z)).copied().collect();
    !rays
        .iter()
        .enumerate()
        .any(|(i, r)| i != p && i != n && common.iter().all(|z| r.zeros.contains(z)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ivec, orthogonal_complement_vector, rank};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn quadrant() {
        assert_eq!(extreme_rays(&m(&[&[1, 0], &[0, 1]])).unwrap(), vec![ivec(&[0, 1]), ivec(&[1, 0])]);
    }

    #[test]
    fn redundant_row_is_dropped() {
        assert_eq!(
            extreme_rays(&m(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap(),
            vec![ivec(&[0, 1]), ivec(&[1, 0])]
        );
    }

    #[test]
    fn line_is_rejected() {
        assert!(matches!(extreme_rays(&m(&[&[1, 0], &[-1, 0]])), Err(Error::ContainsLine { .. })));
    }

    #[test]
    fn lower_dimensional_and_zero_cones() {
        // the ray x = y = 0, z >= 0 inside R^3
        let rays = extreme_rays(&m(&[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(rays, vec![ivec(&[0, 0, 1])]);
        let none = extreme_rays(&m(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn square_pyramid_has_four_rays() {
        let rays = extreme_rays(&m(&[&[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]])).unwrap();
        assert_eq!(rays, vec![ivec(&[-1, -1, 1]), ivec(&[-1, 1, 1]), ivec(&[1, -1, 1]), ivec(&[1, 1, 1])]);
    }

    /// Brute-force oracle: every (d-1)-subset of rows defines a candidate direction.
    fn brute_force(a: &IntMatrix) -> Vec<IntVec> {
        let d = a.cols();
        let rows = a.to_rows();
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..d - 1).collect();
        if rows.len() < d - 1 {
            return out;
        }
        loop {
            let sub: Vec<IntVec> = idx.iter().map(|&i| rows[i].clone()).collect();
            if rank(&sub, d) == d - 1 {
                let w = orthogonal_complement_vector(&sub, d);
                for cand in [w.clone(), crate::linalg::neg(&w)] {
                    if rows.iter().all(|r| !dot(r, &cand).is_negative()) {
                        out.push(primitive(&cand).unwrap());
                    }
                }
            }
            // next combination
            let mut i = d - 1;
            loop {
                if i == 0 {
                    out.sort();
                    out.dedup();
                    return out;
                }
                i -= 1;
                if idx[i] < rows.len() - (d - 1 - i) {
                    idx[i] += 1;
                    for j in i + 1..d - 1 {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3..7)) {
            let rs: Vec<IntVec> = rows.iter().map(|r| ivec(r)).collect();
            let a = IntMatrix::from_rows(3, rs).unwrap();
            prop_assume!(rank(&a.to_rows(), 3) == 3);
            let rays = extreme_rays(&a).unwrap();
            // pointed full-rank system: brute force finds the same extreme rays
            prop_assert_eq!(&rays, &brute_force(&a));
            for r in &rays {
                for i in 0..a.rows() {
                    prop_assert!(!dot(a.row(i), r).is_negative());
                }
            }
        }
    }
}
