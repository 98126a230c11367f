//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigInt`/`BigRational`; there is no fixed-width
//! arithmetic and no floating point. Vectors are plain `Vec<BigInt>`, matrices
//! are dense row-major [`IntMatrix`] values.

mod cone;
mod matrix;
mod normal_form;

pub use cone::extreme_rays;
pub use matrix::IntMatrix;
pub use normal_form::{hnf, integer_kernel, snf, Hermite};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type IntVec = Vec<BigInt>;
pub type RationalVector = Vec<BigRational>;

/// Builds an integer vector from machine integers.
pub fn ivec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn neg(v: &[BigInt]) -> IntVec {
    v.iter().map(|x| -x).collect()
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(v: &[BigInt], c: &BigInt) -> IntVec {
    v.iter().map(|x| x * c).collect()
}

pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides by the gcd of the entries. Returns `None` for the zero vector.
pub fn primitive(v: &[BigInt]) -> Option<IntVec> {
    let g = content(v);
    if g.is_zero() {
        return None;
    }
    Some(v.iter().map(|x| x / &g).collect())
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    content(v).is_one()
}

/// Flips the sign so that the first nonzero entry is positive.
pub fn canonical_sign(v: IntVec) -> IntVec {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => neg(&v),
        _ => v,
    }
}

/// Sign of an integer as -1, 0 or 1.
pub fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn rank(rows: &[IntVec], cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = IntMatrix::from_rows(cols, rows.to_vec()).expect("rows have equal length");
    hnf(&m).rank
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if m.rows() != m.cols() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<IntVec> = m.to_rows();
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign_flip { -d } else { d })
}

/// Inverse of a square matrix over the rationals.
pub fn rational_inverse(m: &IntMatrix) -> Result<Vec<RationalVector>> {
    if m.rows() != m.cols() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut a: Vec<RationalVector> = (0..n)
        .map(|i| {
            let mut row: RationalVector = m.row(i).iter().map(|x| BigRational::from(x.clone())).collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !a[i][col].is_zero()).ok_or(Error::Singular)?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Dual basis: rows `v_i` with `<b_j, v_i> = delta_ij`.
///
/// When `|det b| = 1` every entry is an integer.
pub fn dual_basis(b: &IntMatrix) -> Result<Vec<RationalVector>> {
    let inv = rational_inverse(b)?;
    let n = b.rows();
    Ok((0..n).map(|i| (0..n).map(|j| inv[j][i].clone()).collect()).collect())
}

/// Integral dual basis; `None` if some entry is not an integer.
pub fn integral_dual_basis(b: &IntMatrix) -> Result<Option<Vec<IntVec>>> {
    let dual = dual_basis(b)?;
    Ok(dual
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.is_integer().then(|| x.to_integer())).collect())
        .collect())
}

/// Coordinates `c` with `sum_i c_i basis_i = v` for a square basis.
pub fn coordinates(basis: &IntMatrix, v: &[BigInt]) -> Result<RationalVector> {
    let inv = rational_inverse(basis)?;
    let n = basis.rows();
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    // c = v * B^{-1}
    Ok((0..n)
        .map(|j| (0..n).map(|i| BigRational::from(v[i].clone()) * &inv[i][j]).sum())
        .collect())
}

/// Generalised cross product of `n - 1` vectors in dimension `n`: the vector of
/// signed maximal minors, orthogonal to every input row.
pub fn orthogonal_complement_vector(rows: &[IntVec], n: usize) -> IntVec {
    debug_assert_eq!(rows.len() + 1, n);
    (0..n)
        .map(|skip| {
            let minor = IntMatrix::from_rows(
                n - 1,
                rows.iter()
                    .map(|r| r.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, x)| x.clone()).collect())
                    .collect(),
            )
            .expect("square minor");
            let d = det(&minor).expect("square minor");
            if skip % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

pub fn rational_to_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(det(&IntMatrix::identity(3)).unwrap(), BigInt::from(1));
        assert_eq!(det(&m(&[&[1, 0], &[1, -2]])).unwrap(), BigInt::from(-2));
        assert_eq!(det(&m(&[&[0, -1], &[1, 1]])).unwrap(), BigInt::from(1));
        assert_eq!(det(&m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])).unwrap(), BigInt::from(-1));
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])).unwrap(), BigInt::from(0));
    }

    #[test]
    fn determinant_rejects_non_square() {
        assert_eq!(det(&m(&[&[1, 0, 0], &[0, 1, 0]])), Err(Error::NonSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn determinant_does_not_overflow() {
        let big = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
        let a = IntMatrix::from_rows(2, vec![vec![big.clone(), BigInt::from(0)], vec![BigInt::from(0), big.clone()]])
            .unwrap();
        assert_eq!(det(&a).unwrap(), &big * &big);
    }

    #[test]
    fn dual_basis_examples() {
        let id = dual_basis(&IntMatrix::identity(2)).unwrap();
        assert_eq!(id[0], vec![BigRational::one(), BigRational::zero()]);
        let d = integral_dual_basis(&m(&[&[1, 0], &[1, 1]])).unwrap().unwrap();
        assert_eq!(d, vec![ivec(&[1, -1]), ivec(&[0, 1])]);
        assert_eq!(
            dual_basis(&m(&[&[1, 0], &[0, 1], &[1, 1]])),
            Err(Error::NonSquare { rows: 3, cols: 2 })
        );
        assert_eq!(dual_basis(&m(&[&[1, 2], &[2, 4]])), Err(Error::Singular));
    }

    #[test]
    fn coordinates_solve() {
        let b = m(&[&[0, -1], &[2, 1]]);
        let c = coordinates(&b, &ivec(&[1, 0])).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(c, vec![half.clone(), half]);
    }

    #[test]
    fn cross_product_is_orthogonal() {
        let rows = vec![ivec(&[1, 2, 3]), ivec(&[0, 1, 4])];
        let n = orthogonal_complement_vector(&rows, 3);
        assert!(rows.iter().all(|r| dot(r, &n).is_zero()));
        assert!(!is_zero(&n));
    }

    #[test]
    fn primitive_and_sign() {
        assert_eq!(primitive(&ivec(&[4, -6])), Some(ivec(&[2, -3])));
        assert_eq!(primitive(&ivec(&[0, 0])), None);
        assert_eq!(canonical_sign(ivec(&[0, -2, 1])), ivec(&[0, 2, -1]));
    }
}
