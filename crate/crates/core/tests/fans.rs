use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use cryfan::arrangement::{is_crystallographic, Arrangement};
use cryfan::catalog::catalog;
use cryfan::fan::{
    fan_automorphisms, fan_from_arrangement, insert_hyperplane, roots_from_fan, star_fan, star_subdivide, Fan,
};
use cryfan::linalg::{add, dot, ivec, IntMatrix, IntVec};

const LOW_RANK: [&str; 10] = ["A_2", "B_2", "C_2", "A_3", "B_3", "C_3", "D_3", "ngon:5:2", "ngon:6:0", "ngon:7:11"];

fn counterexample() -> Fan {
    let coord = Arrangement::new(3, vec![ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[0, 0, 1])]).unwrap();
    let f = fan_from_arrangement(&coord).unwrap();
    let pos = f.cone_of(&[ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[0, 0, 1])]).unwrap();
    let f = star_subdivide(&f, &pos).unwrap();
    let negative = f.cone_of(&[ivec(&[-1, 0, 0]), ivec(&[0, -1, 0]), ivec(&[0, 0, -1])]).unwrap();
    star_subdivide(&f, &negative).unwrap()
}

#[test]
fn bijection_in_both_directions() {
    for name in LOW_RANK.iter().chain(&["A_4", "B_4", "D_4"]) {
        let a = catalog(name).unwrap();
        let f = fan_from_arrangement(&a).unwrap();
        assert_eq!(roots_from_fan(&f).unwrap(), a, "{name}");
        assert_eq!(fan_from_arrangement(&roots_from_fan(&f).unwrap()).unwrap(), f, "{name}");
    }
}

#[test]
fn hyperplanes_rebuild_the_fan() {
    let mut fans: Vec<Fan> = LOW_RANK.iter().map(|n| fan_from_arrangement(&catalog(n).unwrap()).unwrap()).collect();
    let singular = Arrangement::new(2, vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[2, 1])]).unwrap();
    fans.push(fan_from_arrangement(&singular).unwrap());
    for f in fans {
        let report = f.check_properties();
        assert!(report.strongly_symmetric);
        let rebuilt = Arrangement::from_normals(f.rank(), report.hyperplanes.clone()).unwrap();
        assert_eq!(fan_from_arrangement(&rebuilt).unwrap(), f);
    }
}

#[test]
fn every_star_is_strongly_symmetric() {
    for name in LOW_RANK {
        let f = fan_from_arrangement(&catalog(name).unwrap()).unwrap();
        for delta in f.faces() {
            let s = star_fan(&f, &delta).unwrap();
            assert_eq!(s.rank(), f.rank() - delta.len());
            assert!(s.check_properties().strongly_symmetric, "{name} at {delta:?}");
        }
    }
}

fn codim_two_stars_symmetric(f: &Fan) -> bool {
    f.cones_of_dim(f.rank() - 2).iter().all(|d| star_fan(f, d).unwrap().is_centrally_symmetric())
}

#[test]
fn strong_symmetry_via_codim_two_stars() {
    for name in ["A_3", "B_3", "C_3", "D_3"] {
        let f = fan_from_arrangement(&catalog(name).unwrap()).unwrap();
        assert!(f.check_properties().strongly_symmetric);
        assert!(codim_two_stars_symmetric(&f), "{name}");
    }
    let g = counterexample();
    let report = g.check_properties();
    assert!(report.centrally_symmetric && report.smooth && report.complete);
    assert!(!report.strongly_symmetric);
    assert!(!codim_two_stars_symmetric(&g));
}

/// All integer matrices with entries in `[-bound, bound]` and determinant ±1
/// that permute the rays and the maximal cones.
fn brute_force_automorphisms(f: &Fan, bound: i64) -> BTreeSet<Vec<i64>> {
    let rays: BTreeSet<IntVec> = f.rays().iter().cloned().collect();
    let cones: BTreeSet<BTreeSet<IntVec>> =
        f.max_cones().iter().map(|c| f.generators(c).into_iter().collect()).collect();
    let apply = |m: &[i64], v: &IntVec| -> IntVec {
        vec![&v[0] * m[0] + &v[1] * m[1], &v[0] * m[2] + &v[1] * m[3]]
    };
    let range: Vec<i64> = (-bound..=bound).collect();
    let mut out = BTreeSet::new();
    for &a in &range {
        for &b in &range {
            for &c in &range {
                for &d in &range {
                    let m = [a, b, c, d];
                    if (a * d - b * c).abs() != 1 {
                        continue;
                    }
                    let image: BTreeSet<IntVec> = rays.iter().map(|v| apply(&m, v)).collect();
                    if image != rays {
                        continue;
                    }
                    let cone_image: BTreeSet<BTreeSet<IntVec>> =
                        cones.iter().map(|c| c.iter().map(|v| apply(&m, v)).collect()).collect();
                    if cone_image == cones {
                        out.insert(m.to_vec());
                    }
                }
            }
        }
    }
    out
}

fn flatten(m: &IntMatrix) -> Vec<i64> {
    m.to_rows().concat().iter().map(|x| i64::try_from(x).unwrap()).collect()
}

#[test]
fn automorphisms_match_brute_force_in_rank_two() {
    for name in ["A_2", "B_2", "ngon:4:0", "ngon:5:0", "ngon:6:2"] {
        let f = fan_from_arrangement(&catalog(name).unwrap()).unwrap();
        let got: BTreeSet<Vec<i64>> = fan_automorphisms(&f).unwrap().iter().map(flatten).collect();
        let bound = got.iter().flatten().map(|x| x.abs()).max().unwrap().max(3);
        assert_eq!(got, brute_force_automorphisms(&f, bound), "{name}");
        assert!(got.contains(&vec![-1, 0, 0, -1]), "{name}");
    }
    let square = Arrangement::new(2, vec![ivec(&[1, 0]), ivec(&[0, 1])]).unwrap();
    let f = fan_from_arrangement(&square).unwrap();
    assert_eq!(fan_automorphisms(&f).unwrap().len(), brute_force_automorphisms(&f, 3).len());
}

#[test]
fn automorphisms_contain_minus_identity() {
    for name in ["A_3", "B_3", "C_3"] {
        let f = fan_from_arrangement(&catalog(name).unwrap()).unwrap();
        let autos = fan_automorphisms(&f).unwrap();
        let mut minus = IntMatrix::identity(3);
        for i in 0..3 {
            minus.negate_row(i);
        }
        assert!(autos.contains(&minus), "{name}");
    }
}

#[test]
fn removing_and_reinserting_a_hyperplane() {
    let mut checked = 0;
    for name in LOW_RANK {
        let a = catalog(name).unwrap();
        let full = fan_from_arrangement(&a).unwrap();
        for h in a.covectors() {
            let rest: Vec<IntVec> = a.covectors().iter().filter(|c| *c != h).cloned().collect();
            let Ok(smaller) = Arrangement::new(a.rank(), rest) else { continue };
            if !is_crystallographic(&smaller).is_ok_and(|r| r.verdict) {
                continue;
            }
            let (fan, cert) = insert_hyperplane(&smaller, h).unwrap();
            assert_eq!(fan, full, "{name}");
            let before: BTreeSet<IntVec> = fan_from_arrangement(&smaller).unwrap().rays().iter().cloned().collect();
            let added: Vec<IntVec> = full.rays().iter().filter(|r| !before.contains(*r)).cloned().collect();
            assert_eq!(cert.new_rays(), added, "{name}");
            for e in &cert.entries {
                assert_eq!(add(&e.rho1, &e.rho2), e.new_ray);
                assert!(dot(h, &e.new_ray).is_zero());
                assert!(dot(h, &e.rho1).signum() == -dot(h, &e.rho2).signum());
                assert!(!dot(h, &e.rho1).is_zero());
            }
            checked += 1;
        }
    }
    assert!(checked >= 10, "only {checked} insertions");
}

#[test]
fn smooth_fans_have_unimodular_cones() {
    for name in LOW_RANK {
        let f = fan_from_arrangement(&catalog(name).unwrap()).unwrap();
        for c in f.max_cones() {
            let m = IntMatrix::from_rows(f.rank(), f.generators(c)).unwrap();
            assert!(cryfan::linalg::det(&m).unwrap().abs().is_one());
        }
    }
}
