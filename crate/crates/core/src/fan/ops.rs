use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{is_subset, zero_vec, Cone, Fan};
use crate::arrangement::{enumerate_chambers, require_crystallographic, Arrangement, Chamber};
use crate::error::{Error, Result};
use crate::linalg::{
    add, canonical_sign, dot, integer_kernel, integral_dual_basis, is_primitive, primitive, rational_inverse,
    IntMatrix, IntVec,
};
use crate::poset::FlatSubspace;

/// The fan of closed chambers of a simplicial arrangement.
pub fn fan_from_arrangement(a: &Arrangement) -> Result<Fan> {
    let chambers = enumerate_chambers(a)?;
    fan_from_chambers(a.rank(), &chambers)
}

pub fn fan_from_chambers(rank: usize, chambers: &[Chamber]) -> Result<Fan> {
    let mut index: HashMap<IntVec, usize> = HashMap::new();
    let mut rays = Vec::new();
    let mut cones = Vec::with_capacity(chambers.len());
    for k in chambers {
        let cone = k
            .rays
            .iter()
            .map(|v| {
                *index.entry(v.clone()).or_insert_with(|| {
                    rays.push(v.clone());
                    rays.len() - 1
                })
            })
            .collect();
        cones.push(cone);
    }
    Fan::new(rank, rays, cones)
}

/// Recovers the arrangement from a smooth strongly symmetric fan as the union
/// of the dual bases of its maximal cones.
pub fn roots_from_fan(f: &Fan) -> Result<Arrangement> {
    f.require_smooth_strongly_symmetric()?;
    let mut roots: BTreeSet<IntVec> = BTreeSet::new();
    for cone in f.max_cones() {
        let g = IntMatrix::from_rows(f.rank(), f.generators(cone))?;
        let dual = integral_dual_basis(&g)?
            .ok_or_else(|| Error::VerificationFailed("smooth cone without integral dual basis".into()))?;
        roots.extend(dual.into_iter().map(canonical_sign));
    }
    Arrangement::new(f.rank(), roots.into_iter().collect())
}

/// Rows spanning `M ∩ ⟨gens⟩^⊥` in Hermite form; as a matrix it maps `N` onto
/// the quotient lattice `N / (N ∩ ⟨gens⟩)`.
pub fn quotient_projection(gens: &[IntVec], rank: usize) -> IntMatrix {
    let g = IntMatrix::from_rows(rank, gens.to_vec()).expect("generator rows");
    let rows = integer_kernel(&g);
    IntMatrix::from_rows(rank, rows).expect("kernel rows")
}

/// The fan `Star(δ)` in `N(δ)`.
pub fn star_fan(f: &Fan, delta: &[usize]) -> Result<Fan> {
    let mut delta = delta.to_vec();
    delta.sort_unstable();
    if !f.contains_cone(&delta) {
        return Err(Error::ConeNotInFan(format!("{delta:?}")));
    }
    let p = quotient_projection(&f.generators(&delta), f.rank());
    let mut index: HashMap<IntVec, usize> = HashMap::new();
    let mut rays = Vec::new();
    let mut cones = Vec::new();
    for m in f.max_cones().iter().filter(|m| is_subset(&delta, m)) {
        let mut cone = Vec::new();
        for &x in m.iter().filter(|x| !delta.contains(x)) {
            let image = primitive(&p.mul_vec(&f.rays()[x]))
                .ok_or_else(|| Error::VerificationFailed("cone collapses under projection".into()))?;
            let id = *index.entry(image.clone()).or_insert_with(|| {
                rays.push(image);
                rays.len() - 1
            });
            cone.push(id);
        }
        cones.push(cone);
    }
    Fan::new(p.rows(), rays, cones)
}

/// The fan `Σ^E` of cones contained in `E`, in coordinates of the canonical
/// basis of `N ∩ E`.
pub fn restrict_fan(f: &Fan, e: &FlatSubspace) -> Result<Fan> {
    if e.ambient() != f.rank() {
        return Err(Error::DimensionMismatch { expected: f.rank(), found: e.ambient() });
    }
    f.require_smooth_strongly_symmetric()?;
    let d = e.dim();
    let mut cones: BTreeSet<Cone> = BTreeSet::new();
    for m in f.max_cones() {
        let inside: Cone = m.iter().copied().filter(|&x| e.contains(&f.rays()[x])).collect();
        if inside.len() == d {
            cones.insert(inside);
        }
    }
    if cones.is_empty() {
        return Err(Error::NotSpannedByCone);
    }
    let used: BTreeSet<usize> = cones.iter().flatten().copied().collect();
    let position: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let rays = used
        .iter()
        .map(|&x| e.coordinates(&f.rays()[x]).ok_or_else(|| Error::VerificationFailed("ray outside flat".into())))
        .collect::<Result<Vec<_>>>()?;
    let cones = cones.into_iter().map(|c| c.iter().map(|x| position[x]).collect()).collect();
    let restricted = Fan::new(d, rays, cones)?;
    let report = restricted.check_properties();
    if !(report.smooth && report.complete && report.strongly_symmetric) {
        return Err(Error::VerificationFailed("restriction fan is not smooth strongly symmetric complete".into()));
    }
    Ok(restricted)
}

/// One maximal cone split by an inserted hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupEntry {
    pub cone: Vec<IntVec>,
    pub rho1: IntVec,
    pub rho2: IntVec,
    pub new_ray: IntVec,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BlowupCertificate {
    pub entries: Vec<BlowupEntry>,
}

impl BlowupCertificate {
    /// Distinct new rays, sorted.
    pub fn new_rays(&self) -> Vec<IntVec> {
        let set: BTreeSet<IntVec> = self.entries.iter().map(|e| e.new_ray.clone()).collect();
        set.into_iter().collect()
    }
}

/// Adds the hyperplane `h` to a crystallographic arrangement and certifies
/// that each split maximal cone is cut along the sum of two of its generators.
pub fn insert_hyperplane(a: &Arrangement, h: &[BigInt]) -> Result<(Fan, BlowupCertificate)> {
    let r = a.rank();
    if h.len() != r {
        return Err(Error::DimensionMismatch { expected: r, found: h.len() });
    }
    if h.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector { index: a.len() });
    }
    if !is_primitive(h) {
        return Err(Error::NonPrimitive { index: a.len() });
    }
    let h = canonical_sign(h.to_vec());
    if a.index_of(&h).is_some() {
        return Err(Error::AlreadyPresent(format!("{h:?}")));
    }
    let old_chambers = require_crystallographic(a)?;
    let mut covectors = a.covectors().to_vec();
    covectors.push(h.clone());
    let b = Arrangement::new(r, covectors)?;
    let new_chambers = require_crystallographic(&b)?;
    let old = fan_from_chambers(r, &old_chambers)?;
    let new = fan_from_chambers(r, &new_chambers)?;
    let new_max: HashSet<Vec<IntVec>> = new.max_cones().iter().map(|c| sorted(new.generators(c))).collect();

    let mut entries = Vec::new();
    for cone in old.max_cones() {
        let gens = old.generators(cone);
        let values: Vec<BigInt> = gens.iter().map(|g| dot(&h, g)).collect();
        let cut = values.iter().any(Signed::is_positive) && values.iter().any(Signed::is_negative);
        if !cut {
            if !new_max.contains(&sorted(gens)) {
                return Err(Error::VerificationFailed("uncut cone missing from the refined fan".into()));
            }
            continue;
        }
        let g = IntMatrix::from_rows(r, gens.clone())?;
        let inverse = rational_inverse(&g.transpose())?;
        let pieces: Vec<&Cone> = new
            .max_cones()
            .iter()
            .filter(|c| c.iter().all(|&x| inside(&inverse, &new.rays()[x])))
            .collect();
        let [p1, p2] = pieces[..] else {
            return Err(Error::VerificationFailed(format!("cone split into {} pieces", pieces.len())));
        };
        let g1 = new.generators(p1);
        let g2 = new.generators(p2);
        let fresh: Vec<IntVec> = g1.iter().filter(|v| !gens.contains(v)).cloned().collect();
        let [new_ray] = &fresh[..] else {
            return Err(Error::VerificationFailed("split does not add exactly one ray".into()));
        };
        let rho1 = g1.iter().find(|v| !g2.contains(v)).cloned();
        let rho2 = g2.iter().find(|v| !g1.contains(v)).cloned();
        let (Some(rho1), Some(rho2)) = (rho1, rho2) else {
            return Err(Error::VerificationFailed("split pieces coincide".into()));
        };
        if !gens.contains(&rho1) || !gens.contains(&rho2) || add(&rho1, &rho2) != *new_ray {
            return Err(Error::VerificationFailed("new ray is not the sum of the subdivided generators".into()));
        }
        entries.push(BlowupEntry { cone: gens, rho1, rho2, new_ray: new_ray.clone() });
    }
    Ok((new, BlowupCertificate { entries }))
}

fn sorted(mut v: Vec<IntVec>) -> Vec<IntVec> {
    v.sort();
    v
}

/// Whether `v` has nonnegative coordinates in the basis whose inverse
/// transpose is `inverse`.
fn inside(inverse: &[Vec<BigRational>], v: &[BigInt]) -> bool {
    inverse.iter().all(|row| {
        let c: BigRational =
            row.iter().zip(v).map(|(x, y)| x * BigRational::from_integer(y.clone())).sum();
        !c.is_negative()
    })
}

/// All `g ∈ GL_r(Z)` permuting the rays and the maximal cones.
///
/// Matrices act on column vectors of `N` and are returned sorted by entries.
pub fn fan_automorphisms(f: &Fan) -> Result<Vec<IntMatrix>> {
    if !f.is_complete() {
        return Err(Error::NotComplete);
    }
    let r = f.rank();
    if r == 0 {
        return Ok(vec![IntMatrix::identity(0)]);
    }
    let base = IntMatrix::from_rows(r, f.generators(&f.max_cones()[0]))?.transpose();
    let base_inverse = rational_inverse(&base)?;
    let lookup: HashMap<IntVec, usize> = f.rays().iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let cones: HashSet<&Cone> = f.max_cones().iter().collect();
    let mut found: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for cone in f.max_cones() {
        for perm in permutations(cone) {
            let target = IntMatrix::from_rows(r, f.generators(&perm))?.transpose();
            let Some(g) = integral_product(&target, &base_inverse) else { continue };
            let d = crate::linalg::det(&g)?;
            if !(d.is_one() || (-d).is_one()) {
                continue;
            }
            let Some(images) = f.ray_permutation(&g, &lookup) else { continue };
            let preserves = f.max_cones().iter().all(|c| {
                let mut m: Cone = c.iter().map(|&x| images[x]).collect();
                m.sort_unstable();
                cones.contains(&m)
            });
            if preserves {
                found.insert((0..r).flat_map(|i| g.row(i).to_vec()).collect());
            }
        }
    }
    found
        .into_iter()
        .map(|flat| IntMatrix::from_rows(r, flat.chunks(r).map(<[BigInt]>::to_vec).collect()))
        .collect()
}

fn integral_product(a: &IntMatrix, b: &[Vec<BigRational>]) -> Option<IntMatrix> {
    let n = a.rows();
    let mut out = IntMatrix::zeros(n, b[0].len());
    for i in 0..n {
        for j in 0..b[0].len() {
            let s: BigRational =
                (0..a.cols()).map(|k| BigRational::from_integer(a[(i, k)].clone()) * &b[k][j]).sum();
            if !s.is_integer() {
                return None;
            }
            out[(i, j)] = s.to_integer();
        }
    }
    Some(out)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Star subdivision of `f` at a cone: the ray through the sum of the cone's
/// generators is added and every maximal cone containing it is split.
pub fn star_subdivide(f: &Fan, cone: &[usize]) -> Result<Fan> {
    let mut cone = cone.to_vec();
    cone.sort_unstable();
    if cone.is_empty() || !f.contains_cone(&cone) {
        return Err(Error::ConeNotInFan(format!("{cone:?}")));
    }
    let sum = f.generators(&cone).iter().fold(zero_vec(f.rank()), |acc, g| add(&acc, g));
    let w = primitive(&sum).expect("nonzero sum of independent rays");
    if cone.len() == 1 {
        return Ok(f.clone());
    }
    let mut rays = f.rays().to_vec();
    rays.push(w);
    let w_id = rays.len() - 1;
    let mut cones = Vec::new();
    for m in f.max_cones() {
        if !is_subset(&cone, m) {
            cones.push(m.clone());
            continue;
        }
        for &g in &cone {
            let mut c: Cone = m.iter().copied().filter(|&x| x != g).collect();
            c.push(w_id);
            cones.push(c);
        }
    }
    Fan::new(f.rank(), rays, cones)
}

/// The generators of a smooth cone together with a basis of the kernel of the
/// projection form a lattice basis, so the pairing matrix is unimodular.
#[cfg(test)]
fn projection_is_complementary(gens: &[IntVec], rank: usize) -> bool {
    let p = quotient_projection(gens, rank);
    let h = crate::linalg::hnf(&p);
    h.rank == rank - gens.len() && crate::linalg::snf(&p).iter().all(One::is_one)
}
