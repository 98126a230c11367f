//! The vertex polytope `conv{ρ^K}` and the sign-vector embedding certificates.
//!
//! Vertices are stored doubled, `2ρ^K = Σ_{α ∈ R_+^K} α`, so that everything
//! stays in `M`. The normal fan is taken with maximizing functionals: `ρ^K` is
//! the unique maximizer of every functional in the interior of `K̄`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arrangement::{positive_roots, require_crystallographic, Arrangement, Chamber, SignedRoot};
use crate::error::{Error, Result};
use crate::fan::{fan_from_chambers, Cone, Fan};
use crate::linalg::{add, dot, extreme_rays, scale, sign, snf, sub, IntMatrix, IntVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfLatticePolytope {
    pub rank: usize,
    /// `2ρ^K`, one per chamber.
    pub vertices: Vec<IntVec>,
    /// Chamber index for each vertex; empty for polytopes read from files.
    pub chamber_of_vertex: Vec<usize>,
}

impl HalfLatticePolytope {
    pub fn from_vertices(rank: usize, vertices: Vec<IntVec>) -> Result<Self> {
        if let Some(v) = vertices.iter().find(|v| v.len() != rank) {
            return Err(Error::DimensionMismatch { expected: rank, found: v.len() });
        }
        Ok(HalfLatticePolytope { rank, vertices, chamber_of_vertex: Vec::new() })
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        let set: HashSet<&IntVec> = self.vertices.iter().collect();
        self.vertices.iter().all(|v| set.contains(&crate::linalg::neg(v)))
    }
}

/// `2ρ^K`.
pub fn rho(a: &Arrangement, k: &Chamber) -> IntVec {
    positive_roots(k).iter().fold(vec![BigInt::zero(); a.rank()], |acc, s| add(&acc, &s.vector(a)))
}

/// Builds the vertex set and checks the vertex condition `ρ^K ∈ S^{K'}` for
/// every ordered pair of chambers, together with
/// `ρ^K = ρ^{K'} − Σ_{α ∈ R_+^{K'} ∖ R_+^K} α`.
pub fn build_polytope(a: &Arrangement) -> Result<HalfLatticePolytope> {
    let chambers = require_crystallographic(a)?;
    build_polytope_from(a, &chambers)
}

pub fn build_polytope_from(a: &Arrangement, chambers: &[Chamber]) -> Result<HalfLatticePolytope> {
    let vertices: Vec<IntVec> = chambers.iter().map(|k| rho(a, k)).collect();
    for (i, ki) in chambers.iter().enumerate() {
        for (j, kj) in chambers.iter().enumerate() {
            if i == j {
                continue;
            }
            // 2ρ^{K_i} = 2ρ^{K_j} − 2 Σ over roots positive on K_j but not on K_i
            let mut expected = vertices[j].clone();
            for (idx, c) in a.covectors().iter().enumerate() {
                if kj.signs[idx] != ki.signs[idx] {
                    expected = sub(&expected, &scale(c, &BigInt::from(2 * kj.signs[idx])));
                }
            }
            if expected != vertices[i] {
                return Err(Error::VerificationFailed(format!("rho identity fails for chambers {j} and {i}")));
            }
            let diff = sub(&vertices[j], &vertices[i]);
            if kj.rays.iter().any(|v| dot(&diff, v).is_negative()) {
                return Err(Error::VerificationFailed(format!("vertex of chamber {i} outside S of chamber {j}")));
            }
        }
    }
    Ok(HalfLatticePolytope {
        rank: a.rank(),
        vertices,
        chamber_of_vertex: (0..chambers.len()).collect(),
    })
}

/// Whether `f` is the (maximizing) normal fan of `p`.
pub fn verify_normal_fan(p: &HalfLatticePolytope, f: &Fan) -> bool {
    if p.rank != f.rank() || p.vertices.len() != f.max_cones().len() {
        return false;
    }
    let mut used = vec![false; p.vertices.len()];
    for cone in f.max_cones() {
        let gens = f.generators(cone);
        let direction = gens.iter().fold(vec![BigInt::zero(); f.rank()], |acc, g| add(&acc, g));
        let values: Vec<BigInt> = p.vertices.iter().map(|x| dot(x, &direction)).collect();
        let best = values.iter().max().expect("nonempty vertex set");
        let winners: Vec<usize> = (0..values.len()).filter(|&i| &values[i] == best).collect();
        let [w] = winners[..] else { return false };
        if used[w] {
            return false;
        }
        used[w] = true;
        // the winner maximizes every functional of the closed cone
        let x = &p.vertices[w];
        let dominates = p.vertices.iter().all(|y| gens.iter().all(|g| !dot(&sub(x, y), g).is_negative()));
        if !dominates {
            return false;
        }
    }
    true
}

/// One entry per positive covector: the sign it takes on the cone.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub Vec<i8>);

pub fn sign_vector(f: &Fan, sigma: &[usize], a: &Arrangement) -> Result<SignVector> {
    let gens = f.generators(sigma);
    let mut out = Vec::with_capacity(a.len());
    for c in a.covectors() {
        let signs: Vec<i8> = gens.iter().map(|g| sign(&dot(c, g))).collect();
        let s = match (signs.contains(&1), signs.contains(&-1)) {
            (true, true) => {
                return Err(Error::VerificationFailed(format!("covector takes both signs on cone {sigma:?}")))
            }
            (true, false) => 1,
            (false, true) => -1,
            (false, false) => 0,
        };
        out.push(s);
    }
    Ok(SignVector(out))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiCertificate {
    /// Row labels of `matrix`, `B^K` of the seed chamber first.
    pub rows: Vec<SignedRoot>,
    /// `α(n_j)` for the rays `n_j` of the seed chamber.
    pub matrix: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
    pub sign_vectors: BTreeMap<Cone, SignVector>,
    pub fan: Fan,
}

impl PhiCertificate {
    pub fn is_split(&self) -> bool {
        self.invariant_factors.len() == self.matrix.cols() && self.invariant_factors.iter().all(One::is_one)
    }
}

/// The map `n ↦ (α(n))_α` over all signed roots, with its Smith form, the sign
/// vectors of every cone, and the preimage check for every chamber pattern.
pub fn phi_certificate(a: &Arrangement) -> Result<PhiCertificate> {
    let chambers = require_crystallographic(a)?;
    let seed = &chambers[0];
    let mut rows: Vec<SignedRoot> = seed.basis.clone();
    for index in 0..a.len() {
        for s in [1i8, -1] {
            let root = SignedRoot { index, sign: s };
            if !rows.contains(&root) {
                rows.push(root);
            }
        }
    }
    let matrix = IntMatrix::from_rows(
        a.rank(),
        rows.iter().map(|s| seed.rays.iter().map(|n| dot(&s.vector(a), n)).collect()).collect(),
    )?;
    let invariant_factors = snf(&matrix);
    let fan = fan_from_chambers(a.rank(), &chambers)?;

    let mut sign_vectors = BTreeMap::new();
    let mut seen = HashSet::new();
    for cone in fan.faces() {
        let s = sign_vector(&fan, &cone, a)?;
        if !seen.insert(s.clone()) {
            return Err(Error::VerificationFailed(format!("sign vector of cone {cone:?} repeats")));
        }
        sign_vectors.insert(cone, s);
    }

    for k in &chambers {
        let inequalities = IntMatrix::from_rows(
            a.rank(),
            a.covectors().iter().zip(&k.signs).map(|(c, &s)| scale(c, &BigInt::from(s))).collect(),
        )?;
        let mut expected = k.rays.clone();
        expected.sort();
        if extreme_rays(&inequalities)? != expected {
            return Err(Error::VerificationFailed("sign pattern does not cut out its chamber".into()));
        }
    }

    let cert = PhiCertificate { rows, matrix, invariant_factors, sign_vectors, fan };
    if !cert.is_split() {
        return Err(Error::VerificationFailed("phi is not a split monomorphism".into()));
    }
    Ok(cert)
}
