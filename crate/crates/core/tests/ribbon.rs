mod common;

use rand::seq::SliceRandom;
use rand::Rng;

use twuality::ribbon::{catalog, split_components, transition_matroid, Edge, RibbonGraph};
use twuality::*;

use common::*;

fn rotate_and_rename(rng: &mut impl Rng, g: &RibbonGraph) -> RibbonGraph {
    let ids: Vec<usize> = g.vertices().iter().flatten().copied().collect();
    let mut fresh: Vec<usize> = (1..=ids.len()).map(|k| 10 * k).collect();
    fresh.shuffle(rng);
    let rename = |h: usize| fresh[ids.iter().position(|&x| x == h).unwrap()];
    let vertices = g
        .vertices()
        .iter()
        .map(|rot| {
            let mut r: Vec<usize> = rot.iter().map(|&h| rename(h)).collect();
            if !r.is_empty() {
                let k = rng.gen_range(0..r.len());
                r.rotate_left(k);
            }
            r
        })
        .collect();
    let edges = g
        .edges()
        .iter()
        .map(|e| Edge {
            ends: [rename(e.ends[0]), rename(e.ends[1])],
            ..*e
        })
        .collect();
    RibbonGraph::new(vertices, edges).unwrap()
}

#[test]
fn boundary_count_ignores_rotation_start_and_half_edge_names() {
    let mut rng = rng(41);
    for g in catalog::full(3, 2) {
        let h = rotate_and_rename(&mut rng, &g);
        assert_eq!(h.boundary_components(), g.boundary_components(), "{g}");
        assert_eq!(delta_matroid_of(&h).unwrap(), delta_matroid_of(&g).unwrap(), "{g}");
    }
}

#[test]
fn orientable_euler_parity() {
    for g in catalog::full(3, 3) {
        if g.is_orientable_signs() && g.components() == 1 {
            let chi = g.vertex_count() as i64 - g.edge_count() as i64 + g.boundary_components() as i64;
            assert_eq!(chi.rem_euclid(2), 0, "{g}");
        }
    }
}

#[test]
fn bridge_identity_for_black_white_systems() {
    for g in catalog::full(3, 3) {
        let fm = medial(&g);
        let m = g.edge_count();
        let k = fm.components();
        let labels = g.labelling();
        for mask in 0u32..(1 << m) {
            let choice: Vec<u8> = (0..m).map(|e| if mask & (1 << e) != 0 { 2 } else { 1 }).collect();
            let t = SubTransversal::from_choice(&choice).unwrap();
            let white = labels.project(ElementSet::from_bits(mask));
            assert_eq!(
                split_components(&fm, t).unwrap() == k,
                g.is_spanning_quasi_tree(white),
                "{g} with white edges {white}"
            );
        }
    }
}

#[test]
fn medial_components_match_graph_components() {
    for g in catalog::full(3, 3) {
        assert_eq!(medial(&g).components(), g.components(), "{g}");
    }
}

#[test]
fn transition_matroids_are_tight_with_bases() {
    for g in catalog::full(3, 3) {
        let z = transition_matroid(&medial(&g)).unwrap();
        assert!(!z.bases().is_empty(), "{g}");
        assert!(z.is_tight().unwrap().is_tight(), "{g}");
        assert!(z.is_multimatroid().unwrap().is_valid(), "{g}");
    }
}

#[test]
fn ribbon_delta_matroids_are_vf_safe() {
    for g in catalog::full(3, 3) {
        let d = delta_matroid_of(&g).unwrap();
        assert!(d.is_vf_safe().unwrap(), "{g}");
    }
}

#[test]
fn random_graphs_satisfy_the_transition_theorem() {
    let mut rng = rng(42);
    for _ in 0..60 {
        let edges = rng.gen_range(1..=5);
        let g = random_ribbon_graph(&mut rng, edges, 3);
        let check = verify_transition_lift(&g).unwrap();
        assert!(check.equal, "{g}: {check:?}");
    }
}
