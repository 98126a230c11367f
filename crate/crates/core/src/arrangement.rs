//! Central hyperplane arrangements given by covectors, their chambers and the
//! crystallographic condition.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    canonical_sign, dot, extreme_rays, is_primitive, rank, rational_to_string, sign, snf, IntMatrix, IntVec,
    RationalVector,
};

/// An arrangement `(A, R)` stored by one primitive covector per `±` pair.
///
/// Each stored covector has its first nonzero coordinate positive, and the
/// list is sorted lexicographically, so two arrangements with the same root
/// set compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrangement {
    rank: usize,
    covectors: Vec<IntVec>,
}

/// A root `sign * covectors[index]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRoot {
    pub index: usize,
    pub sign: i8,
}

impl SignedRoot {
    pub fn vector(&self, a: &Arrangement) -> IntVec {
        let v = &a.covectors[self.index];
        if self.sign < 0 {
            crate::linalg::neg(v)
        } else {
            v.clone()
        }
    }
}

/// A chamber with its closed-cone rays and wall basis `B^K`.
///
/// `basis[i]` is the inward normal of the wall opposite `rays[i]`, so
/// `<basis[i], rays[j]>` is zero for `i != j` and positive for `i == j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub rays: Vec<IntVec>,
    pub basis: Vec<SignedRoot>,
    /// Sign of each stored covector on the open chamber.
    pub signs: Vec<i8>,
}

impl Chamber {
    pub fn basis_vectors(&self, a: &Arrangement) -> Vec<IntVec> {
        self.basis.iter().map(|b| b.vector(a)).collect()
    }

    pub fn basis_matrix(&self, a: &Arrangement) -> IntMatrix {
        IntMatrix::from_rows(a.rank, self.basis_vectors(a)).expect("basis rows")
    }

    /// A point of the open chamber: the sum of its rays.
    pub fn interior_point(&self) -> IntVec {
        let n = self.rays[0].len();
        self.rays.iter().fold(vec![BigInt::zero(); n], |acc, r| crate::linalg::add(&acc, r))
    }

    /// Coordinates of a covector in the basis `B^K`.
    pub fn coordinates_of(&self, a: &Arrangement, alpha: &[BigInt]) -> RationalVector {
        self.basis
            .iter()
            .zip(&self.rays)
            .map(|(b, v)| BigRational::new(dot(alpha, v), dot(&b.vector(a), v)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrystallographicWitness {
    pub chamber: usize,
    pub root: usize,
    pub coordinates: RationalVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrystallographicReport {
    pub verdict: bool,
    pub witness: Option<CrystallographicWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub factors: Vec<Arrangement>,
    /// Indices of the seed chamber basis belonging to each factor.
    pub partition: Vec<Vec<usize>>,
}

impl Arrangement {
    /// Validates and canonicalises, additionally requiring that the covectors
    /// generate `Z^rank`.
    pub fn new(rank: usize, covectors: Vec<IntVec>) -> Result<Self> {
        let a = Self::from_normals(rank, covectors)?;
        let inv = a.lattice_invariants();
        if inv.len() != rank || inv.iter().any(|d| !d.is_one()) {
            return Err(Error::LatticeNotGenerated { invariants: inv.iter().map(ToString::to_string).collect() });
        }
        Ok(a)
    }

    /// Validates and canonicalises a set of hyperplane normals without the
    /// lattice condition. Used for hyperplane sets read off arbitrary fans.
    pub fn from_normals(rank: usize, covectors: Vec<IntVec>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        let mut tagged = Vec::with_capacity(covectors.len());
        for (index, v) in covectors.into_iter().enumerate() {
            if v.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: v.len() });
            }
            if crate::linalg::is_zero(&v) {
                return Err(Error::ZeroVector { index });
            }
            if !is_primitive(&v) {
                return Err(Error::NonPrimitive { index });
            }
            tagged.push((canonical_sign(v), index));
        }
        tagged.sort();
        for w in tagged.windows(2) {
            if w[0].0 == w[1].0 {
                let (first, second) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
                return Err(Error::Parallel { first, second });
            }
        }
        Ok(Arrangement { rank, covectors: tagged.into_iter().map(|(v, _)| v).collect() })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn covectors(&self) -> &[IntVec] {
        &self.covectors
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    /// Index of the stored covector parallel to `v`, if any.
    pub fn index_of(&self, v: &[BigInt]) -> Option<usize> {
        let c = canonical_sign(crate::linalg::primitive(v)?);
        self.covectors.binary_search(&c).ok()
    }

    pub fn lattice_invariants(&self) -> Vec<BigInt> {
        if self.covectors.is_empty() {
            return Vec::new();
        }
        snf(&IntMatrix::from_rows(self.rank, self.covectors.clone()).expect("covector rows"))
    }

    /// The product arrangement on the direct sum of the two spaces.
    pub fn product(&self, other: &Arrangement) -> Result<Arrangement> {
        let r = self.rank + other.rank;
        let mut cov = Vec::with_capacity(self.len() + other.len());
        for v in &self.covectors {
            let mut w = v.clone();
            w.resize(r, BigInt::zero());
            cov.push(w);
        }
        for v in &other.covectors {
            let mut w = vec![BigInt::zero(); self.rank];
            w.extend(v.iter().cloned());
            cov.push(w);
        }
        Arrangement::from_normals(r, cov)
    }

    fn signs_at(&self, p: &[BigInt]) -> Vec<i8> {
        self.covectors.iter().map(|a| sign(&dot(a, p))).collect()
    }
}

/// First point of the sequence `(1, t, t^2, ...)`, `t = 1, 2, ...`, on which
/// no covector vanishes.
pub fn generic_point(a: &Arrangement) -> IntVec {
    let mut t = BigInt::one();
    loop {
        let mut p = Vec::with_capacity(a.rank);
        let mut x = BigInt::one();
        for _ in 0..a.rank {
            p.push(x.clone());
            x *= &t;
        }
        if a.covectors.iter().all(|c| !dot(c, &p).is_zero()) {
            return p;
        }
        t += 1;
    }
}

fn chamber_from_signs(a: &Arrangement, signs: &[i8], id: usize) -> Result<Option<Chamber>> {
    let rows: Vec<IntVec> = a
        .covectors
        .iter()
        .zip(signs)
        .map(|(c, &s)| if s < 0 { crate::linalg::neg(c) } else { c.clone() })
        .collect();
    let ineq = IntMatrix::from_rows(a.rank, rows.clone())?;
    let rays = extreme_rays(&ineq)?;
    if rank(&rays, a.rank) < a.rank {
        return Ok(None);
    }
    if rays.len() != a.rank {
        return Err(Error::NotSimplicial { chamber: id, rays: rays.len(), rank: a.rank });
    }
    let mut basis = Vec::with_capacity(a.rank);
    for i in 0..rays.len() {
        let wall = (0..a.len()).find(|&j| {
            rays.iter().enumerate().all(|(l, v)| (l == i) != dot(&rows[j], v).is_zero())
        });
        let j = wall.ok_or_else(|| Error::VerificationFailed(format!("chamber {id}: no wall opposite ray {i}")))?;
        basis.push(SignedRoot { index: j, sign: signs[j] });
    }
    Ok(Some(Chamber { rays, basis, signs: signs.to_vec() }))
}

/// All chambers, in breadth-first wall-crossing order from the chamber of
/// [`generic_point`]. Walls are crossed in the order of the opposite ray.
pub fn enumerate_chambers(a: &Arrangement) -> Result<Vec<Chamber>> {
    let seed = a.signs_at(&generic_point(a));
    let mut seen: HashSet<Vec<i8>> = HashSet::new();
    let mut chambers = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(seed.clone());
    queue.push_back(seed);
    while let Some(signs) = queue.pop_front() {
        let id = chambers.len();
        let chamber = chamber_from_signs(a, &signs, id)?
            .ok_or_else(|| Error::VerificationFailed(format!("chamber {id} is empty")))?;
        for b in &chamber.basis {
            let mut next = signs.clone();
            next[b.index] = -next[b.index];
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        chambers.push(chamber);
    }
    Ok(chambers)
}

/// `R_+^K`: for each stored covector, the sign making it positive on `k`.
pub fn positive_roots(k: &Chamber) -> Vec<SignedRoot> {
    k.signs.iter().enumerate().map(|(index, &sign)| SignedRoot { index, sign }).collect()
}

/// Checks that every root has integral coordinates in every basis `B^K`.
pub fn is_crystallographic(a: &Arrangement) -> Result<CrystallographicReport> {
    let chambers = enumerate_chambers(a)?;
    Ok(crystallographic_report(a, &chambers))
}

pub fn crystallographic_report(a: &Arrangement, chambers: &[Chamber]) -> CrystallographicReport {
    for (ci, k) in chambers.iter().enumerate() {
        for (ri, alpha) in a.covectors.iter().enumerate() {
            let coords = k.coordinates_of(a, alpha);
            if coords.iter().any(|c| !c.is_integer()) {
                return CrystallographicReport {
                    verdict: false,
                    witness: Some(CrystallographicWitness { chamber: ci, root: ri, coordinates: coords }),
                };
            }
        }
    }
    CrystallographicReport { verdict: true, witness: None }
}

pub(crate) fn require_crystallographic(a: &Arrangement) -> Result<Vec<Chamber>> {
    let chambers = enumerate_chambers(a)?;
    let report = crystallographic_report(a, &chambers);
    if let Some(w) = report.witness {
        return Err(Error::NotCrystallographic {
            chamber: w.chamber,
            root: w.root,
            coordinates: w.coordinates.iter().map(rational_to_string).collect(),
        });
    }
    Ok(chambers)
}

/// Splits a crystallographic arrangement into irreducible factors.
///
/// Roots are written in the basis `B^K` of the seed chamber; two basis indices
/// are linked when a root has nonzero coordinates at both. The connected
/// components give the factors, expressed in the induced coordinates.
pub fn decompose(a: &Arrangement) -> Result<Decomposition> {
    let chambers = require_crystallographic(a)?;
    let seed = &chambers[0];
    let r = a.rank;
    let coords: Vec<IntVec> = a
        .covectors
        .iter()
        .map(|alpha| seed.coordinates_of(a, alpha).into_iter().map(|c| c.to_integer()).collect())
        .collect();

    let mut parent: Vec<usize> = (0..r).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for c in &coords {
        let support: Vec<usize> = (0..r).filter(|&i| !c[i].is_zero()).collect();
        for w in support.windows(2) {
            let (x, y) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[x.max(y)] = x.min(y);
        }
    }
    let mut partition: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for i in 0..r {
        let root = find(&mut parent, i);
        let s = *slot.entry(root).or_insert_with(|| {
            partition.push(Vec::new());
            partition.len() - 1
        });
        partition[s].push(i);
    }

    let mut factors = Vec::with_capacity(partition.len());
    for part in &partition {
        let cov: Vec<IntVec> = coords
            .iter()
            .filter(|c| part.iter().any(|&i| !c[i].is_zero()))
            .map(|c| part.iter().map(|&i| c[i].clone()).collect())
            .collect();
        factors.push(Arrangement::new(part.len(), cov)?);
    }
    Ok(Decomposition { factors, partition })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ivec;

    fn arr(rank: usize, cov: &[&[i64]]) -> Arrangement {
        Arrangement::new(rank, cov.iter().map(|c| ivec(c)).collect()).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            Arrangement::new(2, vec![ivec(&[2, 0]), ivec(&[0, 1])]),
            Err(Error::NonPrimitive { index: 0 })
        );
        assert_eq!(
            Arrangement::new(2, vec![ivec(&[1, 0]), ivec(&[-1, 0])]),
            Err(Error::Parallel { first: 0, second: 1 })
        );
        assert_eq!(Arrangement::new(2, vec![ivec(&[0, 0])]), Err(Error::ZeroVector { index: 0 }));
        assert!(matches!(
            Arrangement::new(2, vec![ivec(&[1, 1]), ivec(&[1, -1])]),
            Err(Error::LatticeNotGenerated { .. })
        ));
        assert_eq!(Arrangement::new(0, vec![]), Err(Error::ZeroRank));
    }

    #[test]
    fn canonical_form_sorts_and_flips() {
        let a = arr(2, &[&[1, 1], &[0, -1], &[1, 0]]);
        assert_eq!(a.covectors(), &[ivec(&[0, 1]), ivec(&[1, 0]), ivec(&[1, 1])]);
    }

    #[test]
    fn chamber_counts() {
        assert_eq!(enumerate_chambers(&arr(2, &[&[1, 0], &[0, 1]])).unwrap().len(), 4);
        assert_eq!(enumerate_chambers(&arr(2, &[&[1, 0], &[0, 1], &[1, 1]])).unwrap().len(), 6);
        assert_eq!(enumerate_chambers(&arr(1, &[&[1]])).unwrap().len(), 2);
    }

    #[test]
    fn chambers_are_dual_to_their_walls() {
        let a = arr(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, 2]]);
        for k in enumerate_chambers(&a).unwrap() {
            let b = k.basis_vectors(&a);
            for (i, bi) in b.iter().enumerate() {
                for (j, v) in k.rays.iter().enumerate() {
                    let d = dot(bi, v);
                    assert_eq!(i == j, d > BigInt::zero());
                    assert_eq!(i != j, d.is_zero());
                }
            }
        }
    }

    #[test]
    fn positive_roots_of_a2() {
        let a = arr(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        let chambers = enumerate_chambers(&a).unwrap();
        let fundamental = chambers.iter().find(|k| k.rays == vec![ivec(&[0, 1]), ivec(&[1, 0])]).unwrap();
        let mut pos: Vec<IntVec> = positive_roots(fundamental).iter().map(|r| r.vector(&a)).collect();
        pos.sort();
        assert_eq!(pos, vec![ivec(&[0, 1]), ivec(&[1, 0]), ivec(&[1, 1])]);

        let other = chambers.iter().find(|k| k.rays == vec![ivec(&[1, -1]), ivec(&[1, 0])]).unwrap();
        let mut pos: Vec<IntVec> = positive_roots(other).iter().map(|r| r.vector(&a)).collect();
        pos.sort();
        assert_eq!(pos, vec![ivec(&[0, -1]), ivec(&[1, 0]), ivec(&[1, 1])]);
    }

    #[test]
    fn non_crystallographic_witness() {
        let a = arr(2, &[&[1, 0], &[0, 1], &[2, 1]]);
        let report = is_crystallographic(&a).unwrap();
        assert!(!report.verdict);
        let w = report.witness.unwrap();
        let chambers = enumerate_chambers(&a).unwrap();
        let mut basis = chambers[w.chamber].basis_vectors(&a);
        basis.sort();
        assert_eq!(basis, vec![ivec(&[0, -1]), ivec(&[2, 1])]);
        assert_eq!(a.covectors()[w.root], ivec(&[1, 0]));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert!(w.coordinates.contains(&half));
    }

    #[test]
    fn rank_one_is_crystallographic() {
        assert!(is_crystallographic(&arr(1, &[&[1]])).unwrap().verdict);
    }

    #[test]
    fn decomposition() {
        let a1a1 = arr(2, &[&[1, 0], &[0, 1]]);
        let d = decompose(&a1a1).unwrap();
        assert_eq!(d.factors.len(), 2);
        assert!(d.factors.iter().all(|f| f.rank() == 1));

        let a2 = arr(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(decompose(&a2).unwrap().factors.len(), 1);

        let b2 = arr(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, 2]]);
        let a1 = arr(1, &[&[1]]);
        let prod = b2.product(&a1).unwrap();
        let d = decompose(&prod).unwrap();
        let mut ranks: Vec<usize> = d.factors.iter().map(|f| f.rank()).collect();
        ranks.sort();
        assert_eq!(ranks, vec![1, 2]);
        assert!(d.factors.iter().any(|f| f.len() == 4));
    }

    #[test]
    fn non_simplicial_is_rejected() {
        // four lines through the origin in a rank-3 arrangement whose chambers include a square cone
        let a = Arrangement::new(3, vec![ivec(&[1, 0, 1]), ivec(&[-1, 0, 1]), ivec(&[0, 1, 1]), ivec(&[0, -1, 1])]);
        // the covectors only generate an index-2 sublattice
        assert!(matches!(a, Err(Error::LatticeNotGenerated { .. })));
        let a = Arrangement::from_normals(
            3,
            vec![ivec(&[1, 0, 1]), ivec(&[-1, 0, 1]), ivec(&[0, 1, 1]), ivec(&[0, -1, 1])],
        )
        .unwrap();
        assert!(matches!(enumerate_chambers(&a), Err(Error::NotSimplicial { .. })));
    }
}
