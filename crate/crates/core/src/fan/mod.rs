//! Simplicial rational fans stored by their maximal cones.
//!
//! Rays are primitive and sorted lexicographically; cones are sorted lists of
//! ray indices. Faces are all subsets of maximal cones, which is valid because
//! every cone is required to be simplicial.

mod ops;

pub use ops::{
    fan_automorphisms, fan_from_arrangement, fan_from_chambers, insert_hyperplane, quotient_projection,
    restrict_fan, roots_from_fan, star_fan, star_subdivide, BlowupCertificate, BlowupEntry,
};

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    canonical_sign, dot, extreme_rays, integer_kernel, is_primitive, neg, orthogonal_complement_vector, primitive,
    rank, snf, IntMatrix, IntVec,
};

pub type Cone = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fan {
    rank: usize,
    rays: Vec<IntVec>,
    max_cones: Vec<Cone>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyWitness {
    pub property: &'static str,
    pub cones: Vec<Cone>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub smooth: bool,
    pub complete: bool,
    pub centrally_symmetric: bool,
    pub strongly_symmetric: bool,
    /// Primitive normals of the hyperplanes `A(Σ)`, sorted; empty unless
    /// strongly symmetric.
    pub hyperplanes: Vec<IntVec>,
    pub failure_witness: Vec<PropertyWitness>,
}

impl PropertyReport {
    pub fn all(&self) -> bool {
        self.smooth && self.complete && self.centrally_symmetric && self.strongly_symmetric
    }

    fn witness(&self, property: &str) -> Option<&PropertyWitness> {
        self.failure_witness.iter().find(|w| w.property == property)
    }
}

/// Half-space description of a simplicial cone: `equalities` span the
/// annihilator of the cone's span, `facets[i]` vanishes on every generator
/// except the `i`-th, where it is positive.
struct ConeShape {
    equalities: Vec<IntVec>,
    facets: Vec<IntVec>,
}

impl ConeShape {
    fn new(gens: &[IntVec], r: usize) -> Self {
        let g = IntMatrix::from_rows(r, gens.to_vec()).expect("generator rows");
        let equalities = integer_kernel(&g);
        let facets = (0..gens.len())
            .map(|i| {
                let others: Vec<IntVec> =
                    gens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
                let mut rows = others;
                rows.extend(equalities.iter().cloned());
                let h = if rows.is_empty() {
                    gens[i].clone()
                } else {
                    let m = IntMatrix::from_rows(r, rows).expect("rows");
                    let k = integer_kernel(&m);
                    debug_assert_eq!(k.len(), 1);
                    k.into_iter().next().expect("one-dimensional kernel")
                };
                if dot(&h, &gens[i]).is_negative() {
                    neg(&h)
                } else {
                    h
                }
            })
            .collect();
        ConeShape { equalities, facets }
    }

    fn inequalities(&self) -> Vec<IntVec> {
        let mut rows = self.facets.clone();
        for e in &self.equalities {
            rows.push(e.clone());
            rows.push(neg(e));
        }
        rows
    }

    /// Functionals that are nonnegative on the cone, each paired with the
    /// positions of the generators it vanishes on.
    fn supporting(&self) -> impl Iterator<Item = (IntVec, Vec<usize>)> + '_ {
        let n = self.facets.len();
        let facets = self.facets.iter().enumerate().map(move |(i, h)| (h.clone(), (0..n).filter(|&j| j != i).collect()));
        let eqs = self
            .equalities
            .iter()
            .flat_map(move |e| [(e.clone(), (0..n).collect()), (neg(e), (0..n).collect())]);
        facets.chain(eqs)
    }
}

impl Fan {
    /// Validates and canonicalises a fan.
    ///
    /// Rays must be nonzero, primitive and pairwise distinct; cones must be
    /// simplicial and pairwise meet in a common face. Listed cones that are
    /// faces of other listed cones are dropped.
    pub fn new(rank: usize, rays: Vec<IntVec>, cones: Vec<Cone>) -> Result<Fan> {
        for (index, v) in rays.iter().enumerate() {
            if v.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: v.len() });
            }
            if crate::linalg::is_zero(v) {
                return Err(Error::ZeroVector { index });
            }
            if !is_primitive(v) {
                return Err(Error::NonPrimitive { index });
            }
        }
        let mut order: Vec<usize> = (0..rays.len()).collect();
        order.sort_by(|&a, &b| rays[a].cmp(&rays[b]));
        for w in order.windows(2) {
            if rays[w[0]] == rays[w[1]] {
                return Err(Error::DuplicateRay { index: w[0].max(w[1]) });
            }
        }
        let mut new_index = vec![0; rays.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let sorted_rays: Vec<IntVec> = order.iter().map(|&i| rays[i].clone()).collect();

        let mut canon: Vec<Cone> = Vec::with_capacity(cones.len());
        for cone in cones {
            let mut c = Vec::with_capacity(cone.len());
            for i in cone {
                if i >= rays.len() {
                    return Err(Error::BadRayIndex { index: i, rays: rays.len() });
                }
                c.push(new_index[i]);
            }
            c.sort_unstable();
            let len = c.len();
            c.dedup();
            let gens: Vec<IntVec> = c.iter().map(|&i| sorted_rays[i].clone()).collect();
            if c.len() != len || rank_of(&gens, rank) != c.len() {
                return Err(Error::NonSimplicialCone { cone: c });
            }
            canon.push(c);
        }
        canon.sort();
        canon.dedup();
        let maximal: Vec<Cone> = canon
            .iter()
            .filter(|c| !canon.iter().any(|d| d.len() > c.len() && is_subset(c, d)))
            .cloned()
            .collect();
        let max_cones = if maximal.is_empty() { vec![Vec::new()] } else { maximal };

        let fan = Fan { rank, rays: sorted_rays, max_cones };
        fan.check_intersections()?;
        Ok(fan)
    }

    /// Builds a complete rank-2 fan from rays listed in counterclockwise order.
    pub fn from_ccw_rays(rays: Vec<IntVec>) -> Result<Fan> {
        let n = rays.len();
        let cones = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        Fan::new(2, rays, cones)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn ray_index(&self, v: &[BigInt]) -> Option<usize> {
        self.rays.binary_search_by(|r| r.as_slice().cmp(v)).ok()
    }

    pub fn generators(&self, cone: &[usize]) -> Vec<IntVec> {
        cone.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// Cone with the given generators, if they index rays of the fan.
    pub fn cone_of(&self, gens: &[IntVec]) -> Option<Cone> {
        let mut c: Cone = gens.iter().map(|g| self.ray_index(g)).collect::<Option<_>>()?;
        c.sort_unstable();
        Some(c)
    }

    /// Whether the sorted index set is a cone of the fan.
    pub fn contains_cone(&self, cone: &[usize]) -> bool {
        self.max_cones.iter().any(|m| is_subset(cone, m))
    }

    /// All cones of the fan, including `{0}` as the empty index set.
    pub fn faces(&self) -> BTreeSet<Cone> {
        let mut out = BTreeSet::new();
        for m in &self.max_cones {
            for mask in 0u64..(1u64 << m.len()) {
                out.insert(m.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect());
            }
        }
        out
    }

    pub fn cones_of_dim(&self, d: usize) -> BTreeSet<Cone> {
        self.faces().into_iter().filter(|c| c.len() == d).collect()
    }

    /// The fan `-Σ`.
    pub fn negated(&self) -> Fan {
        let rays: Vec<IntVec> = self.rays.iter().map(|r| neg(r)).collect();
        Fan::new(self.rank, rays, self.max_cones.clone()).expect("negation preserves validity")
    }

    fn check_intersections(&self) -> Result<()> {
        let shapes: Vec<ConeShape> =
            self.max_cones.iter().map(|c| ConeShape::new(&self.generators(c), self.rank)).collect();
        for i in 0..self.max_cones.len() {
            for j in i + 1..self.max_cones.len() {
                if !self.meet_in_face(i, j, &shapes) {
                    return Err(Error::Overlap { first: self.max_cones[i].clone(), second: self.max_cones[j].clone() });
                }
            }
        }
        Ok(())
    }

    fn meet_in_face(&self, i: usize, j: usize, shapes: &[ConeShape]) -> bool {
        let (ci, cj) = (&self.max_cones[i], &self.max_cones[j]);
        for (a, b, sa) in [(ci, cj, &shapes[i]), (cj, ci, &shapes[j])] {
            for (h, tight) in sa.supporting() {
                let values: Vec<BigInt> = b.iter().map(|&x| dot(&h, &self.rays[x])).collect();
                if values.iter().any(Signed::is_positive) {
                    continue;
                }
                let fa: Vec<usize> = tight.iter().map(|&p| a[p]).collect();
                let fb: Vec<usize> = b.iter().zip(&values).filter(|(_, v)| v.is_zero()).map(|(&x, _)| x).collect();
                if is_subset(&fb, &fa) || is_subset(&fa, &fb) {
                    return true;
                }
            }
        }
        // fall back to computing the intersection exactly
        let mut rows = shapes[i].inequalities();
        rows.extend(shapes[j].inequalities());
        let m = IntMatrix::from_rows(self.rank, rows).expect("rows");
        let Ok(rays) = extreme_rays(&m) else { return false };
        let mut common: Vec<IntVec> =
            ci.iter().filter(|x| cj.contains(x)).map(|&x| self.rays[x].clone()).collect();
        common.sort();
        rays == common
    }

    /// Facets of maximal cones, with the maximal cones containing each.
    fn codim_one_faces(&self) -> BTreeMap<Cone, Vec<usize>> {
        let mut out: BTreeMap<Cone, Vec<usize>> = BTreeMap::new();
        for (ci, m) in self.max_cones.iter().enumerate() {
            if m.len() != self.rank {
                continue;
            }
            for skip in 0..m.len() {
                let f: Cone = m.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &x)| x).collect();
                out.entry(f).or_default().push(ci);
            }
        }
        out
    }

    /// Primitive normal of the hyperplane spanned by an `(r-1)`-cone, with
    /// first nonzero entry positive.
    pub fn hyperplane_of(&self, face: &[usize]) -> IntVec {
        let n = orthogonal_complement_vector(&self.generators(face), self.rank);
        canonical_sign(primitive(&n).expect("face spans a hyperplane"))
    }

    pub fn is_smooth(&self) -> bool {
        self.non_smooth_cone().is_none()
    }

    fn non_smooth_cone(&self) -> Option<Cone> {
        self.max_cones
            .iter()
            .find(|c| {
                if c.is_empty() {
                    return false;
                }
                let g = IntMatrix::from_rows(self.rank, self.generators(c)).expect("rows");
                !snf(&g).iter().all(One::is_one)
            })
            .cloned()
    }

    fn completeness_witness(&self) -> Option<Vec<Cone>> {
        if self.rank == 0 {
            return None;
        }
        if let Some(c) = self.max_cones.iter().find(|c| c.len() != self.rank) {
            return Some(vec![c.clone()]);
        }
        let facets = self.codim_one_faces();
        if let Some((f, _)) = facets.iter().find(|(_, owners)| owners.len() != 2) {
            return Some(vec![f.clone()]);
        }
        // connectivity of the facet graph
        let n = self.max_cones.len();
        let mut adj = vec![Vec::new(); n];
        for owners in facets.values() {
            adj[owners[0]].push(owners[1]);
            adj[owners[1]].push(owners[0]);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        let unreached = seen.iter().position(|s| !s)?;
        Some(vec![self.max_cones[0].clone(), self.max_cones[unreached].clone()])
    }

    pub fn is_complete(&self) -> bool {
        self.completeness_witness().is_none()
    }

    fn central_symmetry_witness(&self) -> Option<Vec<Cone>> {
        let ray_ids: Option<Vec<usize>> = self.rays.iter().map(|r| self.ray_index(&neg(r))).collect();
        let Some(ids) = ray_ids else {
            let missing = self.rays.iter().position(|r| self.ray_index(&neg(r)).is_none()).expect("missing ray");
            return Some(vec![vec![missing]]);
        };
        let set: HashSet<&Cone> = self.max_cones.iter().collect();
        self.max_cones
            .iter()
            .find(|c| {
                let mut m: Cone = c.iter().map(|&x| ids[x]).collect();
                m.sort_unstable();
                !set.contains(&m)
            })
            .map(|c| vec![c.clone()])
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        self.central_symmetry_witness().is_none()
    }

    /// Checks smoothness, completeness, central and strong symmetry.
    ///
    /// Strong symmetry uses the cone criterion: for every codimension-one face
    /// `τ` and maximal cone `σ`, `σ ∩ span(τ)` must be a face of `σ`, i.e. the
    /// normal of `span(τ)` may not take both signs on the generators of `σ`.
    pub fn check_properties(&self) -> PropertyReport {
        let mut witnesses = Vec::new();
        let smooth_witness = self.non_smooth_cone();
        if let Some(c) = &smooth_witness {
            witnesses.push(PropertyWitness { property: "smooth", cones: vec![c.clone()] });
        }
        let complete_witness = self.completeness_witness();
        if let Some(c) = &complete_witness {
            witnesses.push(PropertyWitness { property: "complete", cones: c.clone() });
        }
        let central_witness = self.central_symmetry_witness();
        if let Some(c) = &central_witness {
            witnesses.push(PropertyWitness { property: "centrally_symmetric", cones: c.clone() });
        }

        let mut strongly = complete_witness.is_none();
        let mut hyperplanes = Vec::new();
        if strongly && self.rank > 0 {
            let mut normals: BTreeMap<IntVec, Cone> = BTreeMap::new();
            for f in self.codim_one_faces().into_keys() {
                let h = self.hyperplane_of(&f);
                normals.entry(h).or_insert(f);
            }
            'outer: for (h, face) in &normals {
                for m in &self.max_cones {
                    let signs: Vec<i8> = m.iter().map(|&x| crate::linalg::sign(&dot(h, &self.rays[x]))).collect();
                    if signs.contains(&1) && signs.contains(&-1) {
                        strongly = false;
                        witnesses.push(PropertyWitness {
                            property: "strongly_symmetric",
                            cones: vec![face.clone(), m.clone()],
                        });
                        break 'outer;
                    }
                }
            }
            if strongly {
                hyperplanes = normals.into_keys().collect();
            }
        }
        let centrally_symmetric = central_witness.is_none();
        debug_assert!(!strongly || centrally_symmetric, "strong symmetry forces central symmetry");
        PropertyReport {
            smooth: smooth_witness.is_none(),
            complete: complete_witness.is_none(),
            centrally_symmetric,
            strongly_symmetric: strongly,
            hyperplanes,
            failure_witness: witnesses,
        }
    }

    /// Returns the first failure among smoothness and strong symmetry as an error.
    pub fn require_smooth_strongly_symmetric(&self) -> Result<PropertyReport> {
        let report = self.check_properties();
        if let Some(w) = report.witness("smooth") {
            return Err(Error::NotSmooth { cone: w.cones[0].clone() });
        }
        if !report.complete {
            return Err(Error::NotComplete);
        }
        if let Some(w) = report.witness("strongly_symmetric") {
            return Err(Error::NotStronglySymmetric { face: w.cones[0].clone(), cone: w.cones[1].clone() });
        }
        Ok(report)
    }

    /// Maps every ray through `g` (acting on column vectors) and returns the
    /// permutation of ray indices, if the ray set is preserved.
    pub(crate) fn ray_permutation(&self, g: &IntMatrix, lookup: &HashMap<IntVec, usize>) -> Option<Vec<usize>> {
        self.rays.iter().map(|r| lookup.get(&g.mul_vec(r)).copied()).collect()
    }
}

pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.contains(x))
}

fn rank_of(gens: &[IntVec], r: usize) -> usize {
    if gens.is_empty() {
        0
    } else {
        rank(gens, r)
    }
}

pub(crate) fn zero_vec(n: usize) -> IntVec {
    vec![BigInt::zero(); n]
}
