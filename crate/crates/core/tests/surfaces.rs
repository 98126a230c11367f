use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use cryfan::fan::{roots_from_fan, Fan};
use cryfan::linalg::{ivec, IntVec};
use cryfan::surface::{
    ccw_sorted, circular_graph, desingularize, doubled, equal_up_to_rotation, graph_from_weights, hilbert_between,
    intersection_numbers, symmetrize, triangulation_to_weights, triangulations, verify_picard_presentation,
    verify_weight_identity, weights_to_fan, y_divisor_class, CircularGraph, WeightMode,
};

fn det2(u: &[BigInt], v: &[BigInt]) -> BigInt {
    &u[0] * &v[1] - &u[1] * &v[0]
}

fn half_weights(t: usize) -> Vec<Vec<BigInt>> {
    triangulations(t).unwrap().iter().map(|d| triangulation_to_weights(t, d).unwrap()).collect()
}

#[test]
fn triangulation_weights_round_trip() {
    for t in 3..=10 {
        for half in half_weights(t) {
            assert!(verify_weight_identity(&half, WeightMode::Half));
            let full = doubled(&half);
            assert!(verify_weight_identity(&full, WeightMode::Full));
            let f = weights_to_fan(&full).unwrap();
            assert_eq!(f.rays().len(), 2 * t);
            let g = circular_graph(&f).unwrap();
            assert!(equal_up_to_rotation(&g.weights, &full), "t = {t}");
        }
    }
}

/// Independent of the weights: consecutive rays satisfy
/// `n_{j-1} + n_{j+1} + a_j n_j = 0` and form unimodular pairs.
fn check_relations(g: &CircularGraph) {
    let s = g.rays.len();
    for j in 0..s {
        let (prev, cur, next) = (&g.rays[(j + s - 1) % s], &g.rays[j], &g.rays[(j + 1) % s]);
        assert!(det2(cur, next).is_one());
        for k in 0..2 {
            assert!((&prev[k] + &next[k] + &g.weights[j] * &cur[k]).is_zero());
        }
    }
}

#[test]
fn intersection_numbers_respect_linear_equivalence() {
    for t in 3..=7 {
        for half in half_weights(t) {
            let g = graph_from_weights(&doubled(&half)).unwrap();
            check_relations(&g);
            let d = intersection_numbers(&g);
            for k in 0..2 {
                for row in &d {
                    let total: BigInt = g.rays.iter().zip(row).map(|(n, x)| &n[k] * x).sum();
                    assert!(total.is_zero());
                }
            }
            let y = y_divisor_class(&g).unwrap();
            assert!(y.self_intersection.is_zero());
            let p = verify_picard_presentation(&g).unwrap();
            assert_eq!(p.pic_rank, 2 * t - 2);
        }
    }
}

#[test]
fn a2_divisor_class() {
    let g = graph_from_weights(&ivec(&[-1; 6])).unwrap();
    assert_eq!(y_divisor_class(&g).unwrap().class.render(), "D2 + D3");
}

/// Whether `w` is a sum of two nonzero lattice points of `cone(u, v)`,
/// searching the box `|x|, |y| <= bound`.
fn decomposable(u: &[i64], v: &[i64], w: &[i64], bound: i64) -> bool {
    let inside = |p: [i64; 2]| {
        let a = p[0] * v[1] - p[1] * v[0];
        let b = u[0] * p[1] - u[1] * p[0];
        a >= 0 && b >= 0 && p != [0, 0]
    };
    (-bound..=bound).any(|x| {
        (-bound..=bound).any(|y| inside([x, y]) && inside([w[0] - x, w[1] - y]))
    })
}

fn small(v: &IntVec) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).unwrap()).collect()
}

fn nonzero_vector() -> impl Strategy<Value = Vec<i64>> {
    (-6i64..=6, -6i64..=6).prop_filter("nonzero", |(x, y)| *x != 0 || *y != 0).prop_map(|(x, y)| vec![x, y])
}

fn random_complete_fan() -> impl Strategy<Value = Fan> {
    prop::collection::vec(nonzero_vector(), 0..6).prop_map(|extra| {
        let mut rays: Vec<IntVec> = vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[-1, 0]), ivec(&[0, -1])];
        for v in extra {
            let p = cryfan::linalg::primitive(&ivec(&v)).unwrap();
            if !rays.contains(&p) {
                rays.push(p);
            }
        }
        Fan::from_ccw_rays(ccw_sorted(rays)).unwrap()
    })
}

proptest! {
    #[test]
    fn hilbert_rays_are_irreducible(u in nonzero_vector(), v in nonzero_vector()) {
        let (bu, bv) = (ivec(&u), ivec(&v));
        prop_assume!(det2(&bu, &bv).is_positive());
        let pu = cryfan::linalg::primitive(&bu).unwrap();
        let pv = cryfan::linalg::primitive(&bv).unwrap();
        let chain = hilbert_between(&pu, &pv);
        let (su, sv) = (small(&pu), small(&pv));
        for w in &chain {
            prop_assert!(!decomposable(&su, &sv, &small(w), 40));
        }
        let mut all = vec![pu.clone()];
        all.extend(chain);
        all.push(pv);
        for pair in all.windows(2) {
            prop_assert!(det2(&pair[0], &pair[1]).is_one());
        }
    }

    #[test]
    fn symmetrized_desingularization_is_crystallographic(f in random_complete_fan()) {
        let g = desingularize(&symmetrize(&f).unwrap()).unwrap();
        let report = g.check_properties();
        prop_assert!(report.smooth && report.complete && report.centrally_symmetric && report.strongly_symmetric);
        for r in f.rays() {
            prop_assert!(g.ray_index(r).is_some());
        }
        let graph = circular_graph(&g).unwrap();
        check_relations(&graph);
        prop_assert!(verify_weight_identity(&graph.weights, WeightMode::Full));
        prop_assert!(roots_from_fan(&g).is_ok());
    }
}
