//! Hermite and Smith normal forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IntMatrix, IntVec};

/// Row-style Hermite normal form `h = u * m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
}

impl Hermite {
    /// The nonzero rows of `h`, i.e. the canonical basis of the row lattice.
    pub fn basis(&self) -> Vec<IntVec> {
        (0..self.rank).map(|i| self.h.row(i).to_vec()).collect()
    }
}

/// Computes the row Hermite normal form: echelon shape, positive pivots, entries
/// above each pivot reduced into `[0, pivot)`, zero rows last. Two matrices
/// with the same row lattice produce the same `h`.
pub fn hnf(m: &IntMatrix) -> Hermite {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut p = 0;
    for col in 0..cols {
        if p == rows {
            break;
        }
        loop {
            let pivot = (p..rows)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
            let Some(pivot) = pivot else { break };
            h.swap_rows(p, pivot);
            u.swap_rows(p, pivot);
            let mut done = true;
            for i in p + 1..rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = h[(i, col)].div_floor(&h[(p, col)]);
                h.sub_row_multiple(i, p, &q);
                u.sub_row_multiple(i, p, &q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(p, col)].is_zero() {
            continue;
        }
        if h[(p, col)].is_negative() {
            h.negate_row(p);
            u.negate_row(p);
        }
        for i in 0..p {
            let q = h[(i, col)].div_floor(&h[(p, col)]);
            h.sub_row_multiple(i, p, &q);
            u.sub_row_multiple(i, p, &q);
        }
        p += 1;
    }
    Hermite { h, u, rank: p }
}

/// Invariant factors `d_1 | d_2 | ...` of the Smith normal form (nonzero ones only).
pub fn snf(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let rows = a.rows();
    let cols = a.cols();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        swap_cols(&mut a, t, pj);
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[(i, t)].div_floor(&a[(t, t)]);
            a.sub_row_multiple(i, t, &q);
            clean &= a[(i, t)].is_zero();
        }
        for j in t + 1..cols {
            let q = a[(t, j)].div_floor(&a[(t, t)]);
            sub_col_multiple(&mut a, j, t, &q);
            clean &= a[(t, j)].is_zero();
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into row t and retry
        let pivot = a[(t, t)].clone();
        let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
        if let Some(i) = offender {
            let minus_one = BigInt::from(-1);
            a.sub_row_multiple(t, i, &minus_one);
            continue;
        }
        diag.push(pivot.abs());
        t += 1;
    }
    diag
}

fn swap_cols(a: &mut IntMatrix, x: usize, y: usize) {
    if x == y {
        return;
    }
    for i in 0..a.rows() {
        let tmp = a[(i, x)].clone();
        a[(i, x)] = a[(i, y)].clone();
        a[(i, y)] = tmp;
    }
}

fn sub_col_multiple(a: &mut IntMatrix, target: usize, source: usize, factor: &BigInt) {
    if factor.is_zero() {
        return;
    }
    for i in 0..a.rows() {
        let v = &a[(i, source)] * factor;
        a[(i, target)] -= v;
    }
}

/// Basis of the integer kernel `{x in Z^cols : m x = 0}`, in Hermite normal form.
pub fn integer_kernel(m: &IntMatrix) -> Vec<IntVec> {
    let cols = m.cols();
    let t = hnf(&m.transpose());
    let kernel: Vec<IntVec> = (t.rank..cols).map(|i| t.u.row(i).to_vec()).collect();
    if kernel.is_empty() {
        return kernel;
    }
    let k = IntMatrix::from_rows(cols, kernel).expect("kernel rows");
    hnf(&k).basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dot, ivec};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf(&m(&[&[2, 0], &[0, 2]])).h, m(&[&[2, 0], &[0, 2]]));
        assert_eq!(hnf(&m(&[&[0, 1], &[1, 0]])).h, m(&[&[1, 0], &[0, 1]]));
        assert_eq!(hnf(&m(&[&[2, 4]])).h, m(&[&[2, 4]]));
        let r = hnf(&m(&[&[3, 1], &[1, 2], &[4, 3]]));
        assert_eq!(r.rank, 2);
        assert_eq!(r.h, m(&[&[1, 2], &[0, 5], &[0, 0]]));
    }

    #[test]
    fn snf_examples() {
        let ones = vec![BigInt::from(1), BigInt::from(1)];
        assert_eq!(snf(&m(&[&[1, 0], &[0, 1]])), ones);
        assert_eq!(snf(&m(&[&[2, 0], &[0, 3]])), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(snf(&m(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])), ones);
        assert_eq!(snf(&m(&[&[2, 4], &[6, 8]])), vec![BigInt::from(2), BigInt::from(4)]);
        assert!(snf(&m(&[&[0, 0]])).is_empty());
    }

    #[test]
    fn kernel_example() {
        let k = integer_kernel(&m(&[&[1, 1, 0]]));
        assert_eq!(k, vec![ivec(&[1, -1, 0]), ivec(&[0, 0, 1])]);
        assert!(integer_kernel(&IntMatrix::identity(2)).is_empty());
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
        prop::collection::vec(-6i64..=6, rows * cols).prop_map(move |v| {
            let rs: Vec<IntVec> = v.chunks(cols).map(ivec).collect();
            IntMatrix::from_rows(cols, rs).unwrap()
        })
    }

    fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
        prop::collection::vec((0..n, 0..n, -3i64..=3), 0..8).prop_map(move |ops| {
            let mut u = IntMatrix::identity(n);
            for (a, b, f) in ops {
                if a != b {
                    u.sub_row_multiple(a, b, &BigInt::from(f));
                } else {
                    u.negate_row(a);
                }
            }
            u
        })
    }

    proptest! {
        #[test]
        fn hnf_is_canonical(a in small_matrix(3, 4), u in unimodular(3)) {
            let h = hnf(&a);
            prop_assert_eq!(h.u.mul(&a).unwrap(), h.h.clone());
            prop_assert_eq!(hnf(&h.h).h, h.h.clone());
            prop_assert_eq!(hnf(&u.mul(&a).unwrap()).h, h.h);
        }

        #[test]
        fn snf_divisibility_and_product(a in small_matrix(3, 3)) {
            let d = snf(&a);
            for w in d.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            let det = crate::linalg::det(&a).unwrap();
            if d.len() == 3 {
                prop_assert_eq!(d.iter().product::<BigInt>(), det.abs());
            } else {
                prop_assert!(det.is_zero());
            }
        }

        #[test]
        fn kernel_vectors_are_annihilated(a in small_matrix(2, 4)) {
            let k = integer_kernel(&a);
            prop_assert_eq!(k.len(), 4 - hnf(&a).rank);
            for v in &k {
                for i in 0..a.rows() {
                    prop_assert!(dot(a.row(i), v).is_zero());
                }
            }
        }
    }
}
