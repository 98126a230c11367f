//! Complete rank-two fans as circular weighted graphs.
//!
//! Rays `n_1, …, n_s` are listed counterclockwise and satisfy
//! `n_{j-1} + n_{j+1} + a_j n_j = 0`; the weight `a_j` is the
//! self-intersection of the divisor `D_j`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{add, hnf, ivec, neg, primitive, rank, scale, snf, IntMatrix, IntVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularGraph {
    pub weights: Vec<BigInt>,
    pub rays: Vec<IntVec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub coefficients: Vec<BigInt>,
}

impl DivisorClass {
    /// Renders the class as `D2 + D3 + 2 D5`.
    pub fn render(&self) -> String {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if c.is_one() { format!("D{}", i + 1) } else { format!("{c} D{}", i + 1) })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    /// The whole cyclic sequence; the product must be `I`.
    Full,
    /// The first half `a_1, …, a_t` of a centrally symmetric sequence; the
    /// product must be `-I`.
    Half,
}

fn det2(u: &[BigInt], v: &[BigInt]) -> BigInt {
    &u[0] * &v[1] - &u[1] * &v[0]
}

/// `M(a) = (0 -1; 1 -a)`.
pub fn weight_matrix(a: &BigInt) -> IntMatrix {
    IntMatrix::from_rows(2, vec![ivec(&[0, -1]), vec![BigInt::one(), -a]]).expect("2x2")
}

pub fn weight_product(w: &[BigInt]) -> IntMatrix {
    w.iter().fold(IntMatrix::identity(2), |acc, a| acc.mul(&weight_matrix(a)).expect("2x2"))
}

pub fn verify_weight_identity(w: &[BigInt], mode: WeightMode) -> bool {
    let p = weight_product(w);
    match mode {
        WeightMode::Full => p == IntMatrix::identity(2),
        WeightMode::Half => p == IntMatrix::from_i64(&[&[-1, 0], &[0, -1]]),
    }
}

/// Rebuilds the fan from a weight sequence, starting at `n_1 = (1,0)`,
/// `n_2 = (0,1)`.
pub fn weights_to_fan(w: &[BigInt]) -> Result<Fan> {
    let rays = weights_to_rays(w)?;
    Fan::from_ccw_rays(rays)
}

/// The graph of `weights_to_fan(w)`, labelled so that `n_1 = (1,0)` carries
/// the weight `w[0]`.
pub fn graph_from_weights(w: &[BigInt]) -> Result<CircularGraph> {
    let rays = weights_to_rays(w)?;
    Ok(CircularGraph { weights: w.to_vec(), rays })
}

fn weights_to_rays(w: &[BigInt]) -> Result<Vec<IntVec>> {
    let s = w.len();
    if s < 3 {
        return Err(Error::Degenerate(format!("a circular graph needs at least 3 vertices, got {s}")));
    }
    let mut n: Vec<IntVec> = vec![ivec(&[1, 0]), ivec(&[0, 1])];
    for j in 1..=s {
        let next = add(&neg(&n[j - 1]), &scale(&n[j], &-&w[j % s]));
        n.push(next);
    }
    // n[j] carries weight w[j % s]; closing means n[s] = n[0] and n[s+1] = n[1]
    if n[s] != n[0] || n[s + 1] != n[1] {
        return Err(Error::DoesNotClose);
    }
    n.truncate(s);
    let e = ivec(&[1, 0]);
    let winding = (0..s)
        .filter(|&j| {
            let (u, v) = (&n[j], &n[(j + 1) % s]);
            !det2(u, &e).is_negative() && det2(&e, v).is_positive()
        })
        .count();
    if winding != 1 {
        return Err(Error::OrientationFailure);
    }
    Ok(n)
}

/// Sorts vectors by angle, counterclockwise from the lexicographically
/// smallest one.
pub fn ccw_sorted(mut rays: Vec<IntVec>) -> Vec<IntVec> {
    fn upper(v: &[BigInt]) -> bool {
        v[1].is_positive() || (v[1].is_zero() && v[0].is_positive())
    }
    rays.sort_by(|u, v| match (upper(u), upper(v)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => BigInt::zero().cmp(&det2(u, v)),
    });
    if let Some(start) = rays.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).map(|(i, _)| i) {
        rays.rotate_left(start);
    }
    rays
}

fn require_rank_two(f: &Fan) -> Result<()> {
    if f.rank() != 2 {
        return Err(Error::UnsupportedRank { rank: f.rank(), reason: "rank-two fans only" });
    }
    Ok(())
}

/// Rays of a complete rank-two fan in counterclockwise order, checking that
/// consecutive rays span maximal cones.
fn ccw_rays_of(f: &Fan) -> Result<Vec<IntVec>> {
    require_rank_two(f)?;
    if !f.is_complete() {
        return Err(Error::NotComplete);
    }
    let rays = ccw_sorted(f.rays().to_vec());
    let s = rays.len();
    for j in 0..s {
        let c = f.cone_of(&[rays[j].clone(), rays[(j + 1) % s].clone()]);
        if !c.is_some_and(|c| f.max_cones().contains(&c)) {
            return Err(Error::VerificationFailed("consecutive rays do not span a cone".into()));
        }
    }
    Ok(rays)
}

/// The circular weighted graph of a smooth complete rank-two fan.
pub fn circular_graph(f: &Fan) -> Result<CircularGraph> {
    let rays = ccw_rays_of(f)?;
    if let Some(w) = f.check_properties().failure_witness.iter().find(|w| w.property == "smooth") {
        return Err(Error::NotSmooth { cone: w.cones[0].clone() });
    }
    let s = rays.len();
    let mut weights = Vec::with_capacity(s);
    for j in 0..s {
        let sum = add(&rays[(j + s - 1) % s], &rays[(j + 1) % s]);
        let n = &rays[j];
        let p = if n[0].is_zero() { 1 } else { 0 };
        let (k, r) = sum[p].div_rem(&n[p]);
        if !r.is_zero() || scale(n, &k) != sum {
            return Err(Error::VerificationFailed(format!("neighbours of ray {j} are not collinear with it")));
        }
        weights.push(-k);
    }
    Ok(CircularGraph { weights, rays })
}

/// All triangulations of a convex `t`-gon with vertices `1..=t`, as sorted
/// lists of diagonals.
pub fn triangulations(t: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    if t < 3 {
        return Err(Error::Degenerate(format!("a polygon needs at least 3 vertices, got {t}")));
    }
    let mut memo = vec![vec![None; t + 1]; t + 1];
    let mut out = chain(1, t, &mut memo);
    for d in out.iter_mut() {
        d.sort_unstable();
    }
    Ok(out)
}

type Triangulations = Vec<Vec<(usize, usize)>>;

/// Triangulations of the sub-polygon `i, i+1, …, j` whose base is the edge `(i, j)`.
fn chain(i: usize, j: usize, memo: &mut Vec<Vec<Option<Triangulations>>>) -> Triangulations {
    if j <= i + 1 {
        return vec![Vec::new()];
    }
    if let Some(done) = &memo[i][j] {
        return done.clone();
    }
    let mut out = Vec::new();
    for m in i + 1..j {
        let left = chain(i, m, memo);
        let right = chain(m, j, memo);
        for l in &left {
            for r in &right {
                let mut d = Vec::with_capacity(l.len() + r.len() + 2);
                if m > i + 1 {
                    d.push((i, m));
                }
                if j > m + 1 {
                    d.push((m, j));
                }
                d.extend_from_slice(l);
                d.extend_from_slice(r);
                out.push(d);
            }
        }
    }
    memo[i][j] = Some(out.clone());
    out
}

/// Weights `a_i = −(number of triangles at vertex i)`.
pub fn triangulation_to_weights(t: usize, diagonals: &[(usize, usize)]) -> Result<Vec<BigInt>> {
    if t < 3 || diagonals.len() != t - 3 {
        return Err(Error::Degenerate("not a triangulation".into()));
    }
    for &(i, j) in diagonals {
        if !(1 <= i && i + 1 < j && j <= t && !(i == 1 && j == t)) {
            return Err(Error::Degenerate(format!("({i},{j}) is not a diagonal")));
        }
    }
    for (x, &(a, b)) in diagonals.iter().enumerate() {
        for &(c, d) in &diagonals[x + 1..] {
            if (a, b) == (c, d) || (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return Err(Error::Degenerate("diagonals cross".into()));
            }
        }
    }
    Ok((1..=t)
        .map(|v| {
            let degree = diagonals.iter().filter(|&&(i, j)| i == v || j == v).count();
            -BigInt::from(degree + 1)
        })
        .collect())
}

/// Adds `-ρ` for every ray `ρ` and re-derives the cones.
pub fn symmetrize(f: &Fan) -> Result<Fan> {
    let mut rays = ccw_rays_of(f)?;
    for r in f.rays() {
        let m = neg(r);
        if f.ray_index(&m).is_none() {
            rays.push(m);
        }
    }
    Fan::from_ccw_rays(ccw_sorted(rays))
}

/// Rays strictly between `u` and `v` completing the Hilbert basis of
/// `cone(u, v)`, in counterclockwise order.
pub fn hilbert_between(u: &[BigInt], v: &[BigInt]) -> Vec<IntVec> {
    let mut out = Vec::new();
    let mut u = u.to_vec();
    loop {
        let d = det2(&u, v);
        if d <= BigInt::one() {
            return out;
        }
        // u' with det(u, u') = 1
        let e = u[0].extended_gcd(&u[1]);
        let u_prime = vec![-e.y, e.x];
        // v = p u + d u'
        let rest = add(v, &scale(&u_prime, &-&d));
        let q = if u[0].is_zero() { 1 } else { 0 };
        let p = &rest[q] / &u[q];
        let c = Integer::div_ceil(&p, &d);
        let w = add(&scale(&u, &c), &u_prime);
        out.push(w.clone());
        u = w;
    }
}

/// Inserts the Hilbert basis of every singular cone of a complete centrally
/// symmetric rank-two fan.
pub fn desingularize(f: &Fan) -> Result<Fan> {
    let rays = ccw_rays_of(f)?;
    if !f.is_centrally_symmetric() {
        return Err(Error::NotCentrallySymmetric);
    }
    let s = rays.len();
    let mut out = Vec::new();
    for j in 0..s {
        out.push(rays[j].clone());
        out.extend(hilbert_between(&rays[j], &rays[(j + 1) % s]));
    }
    Fan::from_ccw_rays(ccw_sorted(out))
}

/// `D_i · D_j`: `a_j` on the diagonal, `1` for cyclic neighbours.
pub fn intersection_numbers(g: &CircularGraph) -> Vec<Vec<BigInt>> {
    let s = g.weights.len();
    (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    if i == j {
                        g.weights[i].clone()
                    } else if (i + 1) % s == j || (j + 1) % s == i {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn half_length(g: &CircularGraph) -> Result<usize> {
    let s = g.weights.len();
    if !s.is_multiple_of(2) || (0..s / 2).any(|j| g.weights[j] != g.weights[j + s / 2]) {
        return Err(Error::NotCentrallySymmetric);
    }
    let t = s / 2;
    if t < 3 {
        return Err(Error::Degenerate(format!("the divisor formula needs t >= 3, got t = {t}")));
    }
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YDivisor {
    pub class: DivisorClass,
    /// The same class written with the support shifted by `t`.
    pub shifted: DivisorClass,
    /// `Y_1 · D_ν` for every ν.
    pub products: Vec<BigInt>,
    pub self_intersection: BigInt,
}

/// `Y_1 ∼ D_2 + Σ y_ν D_ν + D_t` together with its intersection numbers.
pub fn y_divisor_class(g: &CircularGraph) -> Result<YDivisor> {
    let t = half_length(g)?;
    let s = 2 * t;
    let n = &g.rays;
    // y_j = det(n_1, n_j) / det(n_1, n_t), and det(n_1, n_t) = 1
    if !det2(&n[0], &n[t - 1]).is_one() {
        return Err(Error::VerificationFailed("n_1, n_t is not a basis".into()));
    }
    let y: Vec<BigInt> = (0..t).map(|j| det2(&n[0], &n[j])).collect();
    if !y[1].is_one() {
        return Err(Error::VerificationFailed("y_2 differs from 1".into()));
    }
    let mut c = vec![BigInt::zero(); s];
    c[1..t].clone_from_slice(&y[1..t]);
    let class = DivisorClass { coefficients: c };
    let shifted = DivisorClass { coefficients: (0..s).map(|j| class.coefficients[(j + t) % s].clone()).collect() };

    // the two representatives differ by the principal divisor of some m in M
    let diff: Vec<BigInt> = (0..s).map(|j| &class.coefficients[j] - &shifted.coefficients[j]).collect();
    if !is_principal(n, &diff) {
        return Err(Error::VerificationFailed("shifted representative is not linearly equivalent".into()));
    }

    let inter = intersection_numbers(g);
    let products: Vec<BigInt> =
        (0..s).map(|nu| (0..s).map(|j| &class.coefficients[j] * &inter[j][nu]).sum()).collect();
    let self_intersection: BigInt = (0..s).map(|nu| &class.coefficients[nu] * &products[nu]).sum();
    for (nu, p) in products.iter().enumerate() {
        let expected = if nu == 0 || nu == t { BigInt::one() } else { BigInt::zero() };
        if *p != expected {
            return Err(Error::VerificationFailed(format!("Y1 . D{} = {p}", nu + 1)));
        }
    }
    if !self_intersection.is_zero() {
        return Err(Error::VerificationFailed(format!("Y1^2 = {self_intersection}")));
    }
    Ok(YDivisor { class, shifted, products, self_intersection })
}

/// Whether `c_j = ⟨m, n_j⟩` for some `m ∈ M`.
fn is_principal(rays: &[IntVec], c: &[BigInt]) -> bool {
    // n_1, n_2 is a lattice basis, so m is determined by two entries
    let (a, b) = (&rays[0], &rays[1]);
    let d = det2(a, b);
    // solve m·a = c_1, m·b = c_2 by Cramer
    let m0 = &c[0] * &b[1] - &c[1] * &a[1];
    let m1 = &a[0] * &c[1] - &b[0] * &c[0];
    if !(m0.is_multiple_of(&d) && m1.is_multiple_of(&d)) {
        return false;
    }
    let m = [m0 / &d, m1 / &d];
    rays.iter().zip(c).all(|(n, x)| &m[0] * &n[0] + &m[1] * &n[1] == *x)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicardPresentation {
    /// Rows `n_j`, `j ≤ t`, in the basis `n_1, n_t`.
    pub q: IntMatrix,
    /// The `t × t` relation matrix with corners `-1`.
    pub a_dual: IntMatrix,
    /// `M → Z^{Σ(1)}` as the `2 × 2t` matrix `(Q^T, -Q^T)`.
    pub first: IntMatrix,
    /// `Z^{Σ(1)} → Pic` as the `2t × (2t−2)` matrix `(A I; 0 I)`.
    pub second: IntMatrix,
    pub pic_rank: usize,
}

/// Builds the presentation `0 → M → Z^{2t} → Pic → 0` and checks exactness
/// with row-vector maps.
pub fn verify_picard_presentation(g: &CircularGraph) -> Result<PicardPresentation> {
    let t = half_length(g)?;
    let n = &g.rays;
    let q = IntMatrix::from_rows(2, (0..t).map(|j| vec![det2(&n[j], &n[t - 1]), det2(&n[0], &n[j])]).collect())?;
    let mut a_dual = IntMatrix::zeros(t, t);
    for j in 0..t {
        a_dual[(j, j)] = g.weights[j].clone();
        if j > 0 {
            a_dual[(j, j - 1)] = BigInt::one();
        }
        if j + 1 < t {
            a_dual[(j, j + 1)] = BigInt::one();
        }
    }
    a_dual[(0, t - 1)] = BigInt::from(-1);
    a_dual[(t - 1, 0)] = BigInt::from(-1);

    let qt = q.transpose();
    let minus_qt = IntMatrix::from_rows(t, qt.to_rows().iter().map(|r| neg(r)).collect())?;
    let first = qt.hstack(&minus_qt)?;
    let inner = IntMatrix::from_rows(t, (1..t - 1).map(|j| a_dual.row(j).to_vec()).collect())?.transpose();
    let top = inner.hstack(&IntMatrix::identity(t))?;
    let bottom = IntMatrix::zeros(t, t - 2).hstack(&IntMatrix::identity(t))?;
    let second = top.vstack(&bottom)?;

    let fail = |what: &str| Err(Error::VerificationFailed(format!("picard presentation: {what}")));
    if !a_dual.mul(&q)?.is_zero() {
        return fail("A Q is not zero");
    }
    if hnf(&a_dual).rank != t - 2 {
        return fail("A has the wrong rank");
    }
    if !first.mul(&second)?.is_zero() {
        return fail("composition is not zero");
    }
    if rank(&first.to_rows(), 2 * t) != 2 || rank(&second.to_rows(), 2 * t - 2) != 2 * t - 2 {
        return fail("ranks");
    }
    if !snf(&first).iter().all(One::is_one) || !snf(&second).iter().all(One::is_one) {
        return fail("maps are not split");
    }
    Ok(PicardPresentation { q, a_dual, first, second, pic_rank: 2 * t - 2 })
}

/// Smallest representative of a cyclic sequence under rotation and reflection.
pub fn canonical_rotation(w: &[BigInt]) -> Vec<BigInt> {
    let s = w.len();
    let mut best: Option<Vec<BigInt>> = None;
    let mut rev = w.to_vec();
    rev.reverse();
    for seq in [w.to_vec(), rev] {
        for k in 0..s.max(1) {
            let mut r = seq.clone();
            r.rotate_left(k);
            if best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_default()
}

/// Whether two cyclic sequences agree up to rotation.
pub fn equal_up_to_rotation(a: &[BigInt], b: &[BigInt]) -> bool {
    a.len() == b.len() && (0..a.len().max(1)).any(|k| {
        let mut r = a.to_vec();
        r.rotate_left(k);
        r == b
    })
}

/// `w` followed by itself.
pub fn doubled(w: &[BigInt]) -> Vec<BigInt> {
    w.iter().chain(w).cloned().collect()
}

/// The primitive vector in the direction of `v`.
pub fn direction(v: &[BigInt]) -> Option<IntVec> {
    primitive(v)
}
