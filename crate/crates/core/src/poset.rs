//! Flats of an arrangement, restricted and parabolic arrangements, and the
//! cone-level checks on the subfans `Σ^E`.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arrangement::{is_crystallographic, Arrangement};
use crate::error::{Error, Result};
use crate::fan::{fan_from_arrangement, quotient_projection, restrict_fan, roots_from_fan, star_fan, Cone, Fan};
use crate::linalg::{dot, integer_kernel, IntMatrix, IntVec};

/// A rational subspace of `N_R`, stored as the Hermite basis of `N ∩ E`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlatSubspace {
    ambient: usize,
    basis: Vec<IntVec>,
}

impl FlatSubspace {
    /// The saturation of the span of `vectors`.
    pub fn span(ambient: usize, vectors: &[IntVec]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
            }
        }
        let m = IntMatrix::from_rows(ambient, vectors.to_vec())?;
        Self::cut_out(ambient, &integer_kernel(&m))
    }

    /// The common zero set of the covectors `normals`.
    pub fn cut_out(ambient: usize, normals: &[IntVec]) -> Result<Self> {
        let m = IntMatrix::from_rows(ambient, normals.to_vec())?;
        Ok(FlatSubspace { ambient, basis: integer_kernel(&m) })
    }

    pub fn full(ambient: usize) -> Self {
        FlatSubspace { ambient, basis: IntMatrix::identity(ambient).to_rows() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[IntVec] {
        &self.basis
    }

    /// Basis of `E^⊥ ∩ M`.
    pub fn normals(&self) -> Vec<IntVec> {
        let m = IntMatrix::from_rows(self.ambient, self.basis.clone()).expect("basis rows");
        integer_kernel(&m)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.normals().iter().all(|n| dot(n, v).is_zero())
    }

    pub fn is_subspace_of(&self, other: &FlatSubspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn intersect(&self, other: &FlatSubspace) -> FlatSubspace {
        let mut normals = self.normals();
        normals.extend(other.normals());
        Self::cut_out(self.ambient, &normals).expect("same ambient rank")
    }

    /// Integer coordinates of `v` in the stored basis, if `v ∈ N ∩ E`.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<IntVec> {
        echelon_coordinates(&self.basis, v)
    }

    /// Maps coordinates back into `N`.
    pub fn embed(&self, x: &[BigInt]) -> IntVec {
        let mut out = vec![BigInt::zero(); self.ambient];
        for (c, row) in x.iter().zip(&self.basis) {
            for (o, b) in out.iter_mut().zip(row) {
                *o += c * b;
            }
        }
        out
    }
}

/// Solves `x · B = v` for rows `B` in echelon form, exactly over the integers.
pub(crate) fn echelon_coordinates(basis: &[IntVec], v: &[BigInt]) -> Option<IntVec> {
    let mut rest = v.to_vec();
    let mut x = Vec::with_capacity(basis.len());
    for row in basis {
        let p = row.iter().position(|c| !c.is_zero())?;
        let (q, r) = rest[p].div_rem(&row[p]);
        if !r.is_zero() {
            return None;
        }
        for (t, b) in rest.iter_mut().zip(row) {
            *t -= &q * b;
        }
        x.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(x)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionPoset {
    pub flats: Vec<FlatSubspace>,
    /// Cover relations `(upper, lower)`: `flats[lower] ⊂ flats[upper]` with
    /// dimension one less.
    pub covers: Vec<(usize, usize)>,
}

impl IntersectionPoset {
    pub fn index_of(&self, e: &FlatSubspace) -> Option<usize> {
        self.flats.iter().position(|f| f == e)
    }

    pub fn counts_by_dim(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for f in &self.flats {
            *out.entry(f.dim()).or_insert(0) += 1;
        }
        out
    }
}

/// All intersections of hyperplanes of `a`, including `V` itself.
pub fn intersection_poset(a: &Arrangement) -> IntersectionPoset {
    let r = a.rank();
    let hyperplanes: Vec<FlatSubspace> = a
        .covectors()
        .iter()
        .map(|c| FlatSubspace::cut_out(r, std::slice::from_ref(c)).expect("covector rank"))
        .collect();
    let mut seen: HashSet<FlatSubspace> = HashSet::new();
    let mut queue = VecDeque::new();
    let full = FlatSubspace::full(r);
    seen.insert(full.clone());
    queue.push_back(full);
    while let Some(e) = queue.pop_front() {
        for h in &hyperplanes {
            let f = e.intersect(h);
            if seen.insert(f.clone()) {
                queue.push_back(f);
            }
        }
    }
    let mut flats: Vec<FlatSubspace> = seen.into_iter().collect();
    flats.sort_by(|x, y| y.dim().cmp(&x.dim()).then_with(|| x.basis.cmp(&y.basis)));
    let mut covers = Vec::new();
    for (i, upper) in flats.iter().enumerate() {
        for (j, lower) in flats.iter().enumerate() {
            if lower.dim() + 1 == upper.dim() && lower.is_subspace_of(upper) {
                covers.push((i, j));
            }
        }
    }
    IntersectionPoset { flats, covers }
}

/// Whether `e` is an intersection of hyperplanes of `a`.
pub fn is_flat(a: &Arrangement, e: &FlatSubspace) -> bool {
    if e.ambient() != a.rank() {
        return false;
    }
    let vanishing: Vec<IntVec> = a.covectors().iter().filter(|c| e.basis().iter().all(|b| dot(c, b).is_zero())).cloned().collect();
    FlatSubspace::cut_out(a.rank(), &vanishing).map(|f| f == *e).unwrap_or(false)
}

/// The arrangement `A^E` in coordinates of the canonical basis of `N ∩ E`.
pub fn restricted_arrangement(a: &Arrangement, e: &FlatSubspace) -> Result<Arrangement> {
    if !is_flat(a, e) {
        return Err(Error::NotAFlat);
    }
    if e.dim() == 0 {
        return Err(Error::Degenerate("restriction to the zero flat has rank 0".into()));
    }
    let f = fan_from_arrangement(a)?;
    let restricted = roots_from_fan(&restrict_fan(&f, e)?)?;
    if !is_crystallographic(&restricted)?.verdict {
        return Err(Error::VerificationFailed("restricted arrangement is not crystallographic".into()));
    }
    Ok(restricted)
}

/// The arrangement `A_E` on `V/E` for `E` the span of the cone `delta` of the
/// chamber fan, in the coordinates of [`star_fan`].
pub fn parabolic_arrangement(a: &Arrangement, delta: &[usize]) -> Result<Arrangement> {
    let f = fan_from_arrangement(a)?;
    parabolic_arrangement_in(a, &f, delta)
}

pub fn parabolic_arrangement_in(a: &Arrangement, f: &Fan, delta: &[usize]) -> Result<Arrangement> {
    let mut delta = delta.to_vec();
    delta.sort_unstable();
    if !f.contains_cone(&delta) {
        return Err(Error::ConeNotInFan(format!("{delta:?}")));
    }
    let gens = f.generators(&delta);
    let p = quotient_projection(&gens, f.rank());
    if p.rows() == 0 {
        return Err(Error::Degenerate("quotient by a maximal cone has rank 0".into()));
    }
    let rows = p.to_rows();
    let roots = a
        .covectors()
        .iter()
        .filter(|c| gens.iter().all(|g| dot(c, g).is_zero()))
        .map(|c| echelon_coordinates(&rows, c).ok_or_else(|| Error::VerificationFailed("root outside quotient dual".into())))
        .collect::<Result<Vec<_>>>()?;
    let parabolic = Arrangement::new(p.rows(), roots.into_iter().map(crate::linalg::canonical_sign).collect())?;
    let from_star = roots_from_fan(&star_fan(f, &delta)?)?;
    if parabolic != from_star {
        return Err(Error::VerificationFailed("parabolic arrangement differs from the star fan's".into()));
    }
    Ok(parabolic)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatSummary {
    pub flat: FlatSubspace,
    pub subfan_dim: usize,
    pub subfan_cones: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricReport {
    pub flats: Vec<FlatSummary>,
    pub pairs_checked: usize,
    pub span_classes_checked: usize,
}

/// Verifies the cone-level statements about the subfans `Σ^E`:
/// intersections, membership, order isomorphism and span-invariance of stars.
pub fn toric_arrangement_report(a: &Arrangement) -> Result<ToricReport> {
    let f = fan_from_arrangement(a)?;
    f.require_smooth_strongly_symmetric()?;
    let poset = intersection_poset(a);
    let faces = f.faces();

    let mut subfans: Vec<BTreeSet<Cone>> = Vec::with_capacity(poset.flats.len());
    let mut summaries = Vec::with_capacity(poset.flats.len());
    for e in &poset.flats {
        let sub = subfan_via_restriction(&f, e)?;
        // (b) membership in Σ^E is containment in E
        for sigma in &faces {
            let inside = sigma.iter().all(|&x| e.contains(&f.rays()[x]));
            if inside != sub.contains(sigma) {
                return Err(Error::VerificationFailed(format!("membership of cone {sigma:?} in a subfan")));
            }
        }
        let dim = sub.iter().map(Vec::len).max().unwrap_or(0);
        if dim != e.dim() {
            return Err(Error::VerificationFailed("subfan dimension differs from flat dimension".into()));
        }
        summaries.push(FlatSummary { flat: e.clone(), subfan_dim: dim, subfan_cones: sub.len() });
        subfans.push(sub);
    }

    let mut pairs = 0;
    for (i, e) in poset.flats.iter().enumerate() {
        for (j, g) in poset.flats.iter().enumerate() {
            // (a) Σ^{E∩F} = Σ^E ∩ Σ^F
            let k = poset
                .index_of(&e.intersect(g))
                .ok_or_else(|| Error::VerificationFailed("poset not closed under intersection".into()))?;
            let meet: BTreeSet<Cone> = subfans[i].intersection(&subfans[j]).cloned().collect();
            if meet != subfans[k] {
                return Err(Error::VerificationFailed("subfan of an intersection".into()));
            }
            // (c) order isomorphism
            if e.is_subspace_of(g) != subfans[i].is_subset(&subfans[j]) {
                return Err(Error::VerificationFailed("subfan inclusion differs from flat inclusion".into()));
            }
            pairs += 1;
        }
    }

    // (d) cones with equal span have equal stars
    let mut by_span: BTreeMap<FlatSubspace, Vec<Cone>> = BTreeMap::new();
    for sigma in &faces {
        by_span.entry(FlatSubspace::span(f.rank(), &f.generators(sigma))?).or_default().push(sigma.clone());
    }
    let mut classes = 0;
    for cones in by_span.values().filter(|c| c.len() > 1) {
        let first = star_fan(&f, &cones[0])?;
        for other in &cones[1..] {
            if star_fan(&f, other)? != first {
                return Err(Error::VerificationFailed(format!("stars of {:?} and {other:?} differ", cones[0])));
            }
        }
        classes += 1;
    }
    Ok(ToricReport { flats: summaries, pairs_checked: pairs, span_classes_checked: classes })
}

/// `Σ^E` as cones of `f`, computed through the restriction fan and mapped back.
fn subfan_via_restriction(f: &Fan, e: &FlatSubspace) -> Result<BTreeSet<Cone>> {
    if e.dim() == 0 {
        return Ok(BTreeSet::from([Vec::new()]));
    }
    let restricted = restrict_fan(f, e)?;
    let back: Vec<usize> = restricted
        .rays()
        .iter()
        .map(|x| f.ray_index(&e.embed(x)).ok_or_else(|| Error::VerificationFailed("restricted ray not in fan".into())))
        .collect::<Result<_>>()?;
    Ok(restricted
        .faces()
        .into_iter()
        .map(|c| {
            let mut m: Cone = c.iter().map(|&x| back[x]).collect();
            m.sort_unstable();
            m
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::linalg::ivec;

    #[test]
    fn flat_basics() {
        let e = FlatSubspace::span(3, &[ivec(&[2, 2, 0])]).unwrap();
        assert_eq!(e.basis(), &[ivec(&[1, 1, 0])]);
        assert_eq!(e.coordinates(&ivec(&[3, 3, 0])), Some(ivec(&[3])));
        assert_eq!(e.coordinates(&ivec(&[1, 0, 0])), None);
        let h = FlatSubspace::cut_out(3, &[ivec(&[0, 0, 1])]).unwrap();
        assert!(e.is_subspace_of(&h));
        assert_eq!(h.intersect(&e), e);
    }

    #[test]
    fn poset_sizes() {
        assert_eq!(intersection_poset(&catalog("A_2").unwrap()).flats.len(), 5);
        let rank_one = Arrangement::new(1, vec![ivec(&[1])]).unwrap();
        assert_eq!(intersection_poset(&rank_one).flats.len(), 2);
        assert_eq!(intersection_poset(&catalog("A_3").unwrap()).flats.len(), 15);
    }

    #[test]
    fn covers_of_a2() {
        let p = intersection_poset(&catalog("A_2").unwrap());
        // V covers three lines, each line covers the origin
        assert_eq!(p.covers.len(), 6);
    }

    #[test]
    fn restriction_and_parabolic() {
        let b2 = catalog("B_2").unwrap();
        let e = FlatSubspace::cut_out(2, &[ivec(&[1, 0])]).unwrap();
        let r = restricted_arrangement(&b2, &e).unwrap();
        assert_eq!(r.rank(), 1);
        assert_eq!(r.covectors(), &[ivec(&[1])]);
        assert_eq!(restricted_arrangement(&b2, &FlatSubspace::full(2)).unwrap(), b2);
        let not_flat = FlatSubspace::cut_out(2, &[ivec(&[1, 3])]).unwrap();
        assert!(matches!(restricted_arrangement(&b2, &not_flat), Err(Error::NotAFlat)));

        let a3 = catalog("A_3").unwrap();
        let f = fan_from_arrangement(&a3).unwrap();
        // dual of the first simple root
        let ray = f.ray_index(&ivec(&[1, 0, 0])).unwrap();
        let par = parabolic_arrangement_in(&a3, &f, &[ray]).unwrap();
        assert_eq!(par, catalog("A_2").unwrap());
        assert_eq!(parabolic_arrangement_in(&a3, &f, &[]).unwrap(), a3);
    }

    #[test]
    fn toric_report_a2() {
        let report = toric_arrangement_report(&catalog("A_2").unwrap()).unwrap();
        let dims: Vec<usize> = report.flats.iter().map(|s| s.subfan_dim).collect();
        assert_eq!(dims, vec![2, 1, 1, 1, 0]);
    }
}
