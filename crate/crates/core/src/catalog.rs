//! Built-in arrangements: the classical reflection arrangements and the rank-two
//! family indexed by polygon triangulations.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::fan::roots_from_fan;
use crate::linalg::{hnf, IntMatrix, IntVec};
use crate::poset::echelon_coordinates;
use crate::surface::{doubled, triangulation_to_weights, triangulations, weights_to_fan};

pub const MIN_RANK: usize = 2;
pub const MAX_RANK: usize = 8;

/// Looks up `A_r`, `B_r`, `C_r`, `D_r` (`2 ≤ r ≤ 8`) or `ngon:t:index`.
pub fn catalog(name: &str) -> Result<Arrangement> {
    if let Some(rest) = name.strip_prefix("ngon:") {
        let (t, index) = rest.split_once(':').ok_or_else(|| Error::UnknownCatalog(name.to_string()))?;
        let t: usize = t.parse().map_err(|_| Error::UnknownCatalog(name.to_string()))?;
        let index: usize = index.parse().map_err(|_| Error::UnknownCatalog(name.to_string()))?;
        return ngon(t, index);
    }
    let (family, r) = name.split_once('_').ok_or_else(|| Error::UnknownCatalog(name.to_string()))?;
    let r: usize = r.parse().map_err(|_| Error::UnknownCatalog(name.to_string()))?;
    if !(MIN_RANK..=MAX_RANK).contains(&r) {
        return Err(Error::UnknownCatalog(name.to_string()));
    }
    let (simple, positive) = match family {
        "A" => type_a(r),
        "B" => type_bcd(r, 'B'),
        "C" => type_bcd(r, 'C'),
        "D" => type_bcd(r, 'D'),
        _ => return Err(Error::UnknownCatalog(name.to_string())),
    };
    let h = hnf(&IntMatrix::from_rows(simple[0].len(), simple)?);
    let basis = h.h.to_rows()[..h.rank].to_vec();
    let covectors = positive
        .iter()
        .map(|root| {
            let x = echelon_coordinates(&basis, root).expect("root in the root lattice");
            // root = x · H = (x · U) · S
            (0..r).map(|j| (0..r).map(|i| &x[i] * &h.u[(i, j)]).sum()).collect()
        })
        .collect();
    Arrangement::new(r, covectors)
}

/// The names accepted by [`catalog`] for the classical families.
pub fn classical_names(max_rank: usize) -> Vec<String> {
    let mut out = Vec::new();
    for family in ["A", "B", "C", "D"] {
        for r in MIN_RANK..=max_rank.min(MAX_RANK) {
            out.push(format!("{family}_{r}"));
        }
    }
    out
}

fn ngon(t: usize, index: usize) -> Result<Arrangement> {
    let all = triangulations(t)?;
    let diagonals = all.get(index).ok_or(Error::IndexOutOfRange { what: "triangulation", index, limit: all.len() })?;
    let half = triangulation_to_weights(t, diagonals)?;
    roots_from_fan(&weights_to_fan(&doubled(&half))?)
}

fn unit(n: usize, i: usize, c: i64) -> IntVec {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::from(c);
    v
}

fn comb(n: usize, terms: &[(usize, i64)]) -> IntVec {
    let mut v = vec![BigInt::zero(); n];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

/// Simple and positive roots of `A_r` in `R^{r+1}`.
fn type_a(r: usize) -> (Vec<IntVec>, Vec<IntVec>) {
    let n = r + 1;
    let simple = (0..r).map(|i| comb(n, &[(i, 1), (i + 1, -1)])).collect();
    let mut positive = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            positive.push(comb(n, &[(i, 1), (j, -1)]));
        }
    }
    (simple, positive)
}

/// Simple and positive roots of `B_r`, `C_r`, `D_r` in `R^r`.
fn type_bcd(r: usize, family: char) -> (Vec<IntVec>, Vec<IntVec>) {
    let mut simple: Vec<IntVec> = (0..r - 1).map(|i| comb(r, &[(i, 1), (i + 1, -1)])).collect();
    simple.push(match family {
        'B' => unit(r, r - 1, 1),
        'C' => unit(r, r - 1, 2),
        _ => comb(r, &[(r - 2, 1), (r - 1, 1)]),
    });
    let mut positive = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            positive.push(comb(r, &[(i, 1), (j, -1)]));
            positive.push(comb(r, &[(i, 1), (j, 1)]));
        }
        match family {
            'B' => positive.push(unit(r, i, 1)),
            'C' => positive.push(unit(r, i, 2)),
            _ => {}
        }
    }
    (simple, positive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ivec;
    use std::collections::BTreeSet;

    /// Cartan matrix `a_ij = <α_i^∨, α_j>` in the Bourbaki convention.
    fn cartan(family: char, r: usize) -> Vec<Vec<i64>> {
        let mut c = vec![vec![0i64; r]; r];
        for i in 0..r {
            c[i][i] = 2;
            if i + 1 < r {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
        }
        match family {
            'B' => c[r - 1][r - 2] = -2,
            'C' => c[r - 2][r - 1] = -2,
            'D' => {
                c[r - 2][r - 1] = 0;
                c[r - 1][r - 2] = 0;
                c[r - 3][r - 1] = -1;
                c[r - 1][r - 3] = -1;
            }
            _ => {}
        }
        c
    }

    /// Positive roots by closing the simple roots under simple reflections
    /// `s_i(β) = β − <α_i^∨, β> α_i`.
    fn weyl_closure(family: char, r: usize) -> BTreeSet<Vec<i64>> {
        let c = cartan(family, r);
        let mut roots: BTreeSet<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        loop {
            let mut next = roots.clone();
            for beta in &roots {
                for i in 0..r {
                    let pairing: i64 = (0..r).map(|j| c[i][j] * beta[j]).sum();
                    let mut image = beta.clone();
                    image[i] -= pairing;
                    if image.iter().all(|&x| x >= 0) {
                        next.insert(image);
                    }
                }
            }
            if next.len() == roots.len() {
                return roots;
            }
            roots = next;
        }
    }

    #[test]
    fn small_examples() {
        let a2 = catalog("A_2").unwrap();
        assert_eq!(a2.covectors(), &[ivec(&[0, 1]), ivec(&[1, 0]), ivec(&[1, 1])]);
        let b2 = catalog("B_2").unwrap();
        assert_eq!(b2.covectors(), &[ivec(&[0, 1]), ivec(&[1, 0]), ivec(&[1, 1]), ivec(&[1, 2])]);
        assert_eq!(catalog("A_3").unwrap().len(), 6);
    }

    #[test]
    fn agrees_with_weyl_closure() {
        for family in ['A', 'B', 'C', 'D'] {
            let lowest = if family == 'D' { 3 } else { 2 };
            for r in lowest..=6 {
                let a = catalog(&format!("{family}_{r}")).unwrap();
                let got: BTreeSet<Vec<i64>> = a
                    .covectors()
                    .iter()
                    .map(|v| v.iter().map(|x| i64::try_from(x).unwrap()).collect())
                    .collect();
                assert_eq!(got, weyl_closure(family, r), "{family}_{r}");
            }
        }
    }

    #[test]
    fn root_counts() {
        assert_eq!(catalog("A_8").unwrap().len(), 36);
        assert_eq!(catalog("B_8").unwrap().len(), 64);
        assert_eq!(catalog("D_8").unwrap().len(), 56);
        assert_eq!(catalog("D_2").unwrap().len(), 2);
    }

    #[test]
    fn ngon_family() {
        assert_eq!(catalog("ngon:3:0").unwrap(), catalog("A_2").unwrap());
        assert_eq!(catalog("ngon:4:0").unwrap().len(), 4);
        assert!(matches!(catalog("ngon:4:2"), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(catalog("E_8"), Err(Error::UnknownCatalog(_))));
        assert!(matches!(catalog("A_9"), Err(Error::UnknownCatalog(_))));
    }
}
