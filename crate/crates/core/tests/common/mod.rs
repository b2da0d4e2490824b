#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twuality::ribbon::{delta_matroid_of, Edge, RibbonGraph};
use twuality::{Flip, FlipVector, Perm, Projection, SetSystem, TransversalTriple, TwualityElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_flip(rng: &mut impl Rng) -> Flip {
    Flip::ALL[rng.gen_range(0..6)]
}

pub fn random_gvec(rng: &mut impl Rng, n: usize) -> FlipVector {
    FlipVector::new((0..n).map(|_| random_flip(rng)).collect())
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Perm {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Perm::from_one_line(&images).unwrap()
}

pub fn random_element(rng: &mut impl Rng, n: usize) -> TwualityElement {
    TwualityElement::new(random_gvec(rng, n), random_perm(rng, n)).unwrap()
}

pub fn random_triple(rng: &mut impl Rng, n: usize) -> TransversalTriple {
    TransversalTriple::reference(n)
        .twist_by(&random_gvec(rng, n), &Projection::identity(n))
        .unwrap()
}

pub fn random_projection(rng: &mut impl Rng, n: usize) -> Projection {
    Projection::new(random_perm(rng, n))
}

/// Each subset of `[n]` feasible with probability one half.
pub fn random_system(rng: &mut impl Rng, n: usize) -> SetSystem {
    let ind: Vec<bool> = (0..1usize << n).map(|_| rng.gen()).collect();
    SetSystem::from_indicator(n, &ind).unwrap()
}

pub fn random_proper_system(rng: &mut impl Rng, n: usize) -> SetSystem {
    loop {
        let d = random_system(rng, n);
        if d.is_proper() {
            return d;
        }
    }
}

/// A proper system fixed by `a`, if a few random tries find one. Flips and
/// relabellings act linearly on indicator vectors over GF(2), so the sum of an
/// orbit under `<a>` is fixed. Some elements fix no proper system at all (the
/// 3-cycle `*+` on one element only fixes the empty family).
pub fn fixed_by(rng: &mut impl Rng, a: &TwualityElement) -> Option<SetSystem> {
    let n = a.n();
    for _ in 0..64 {
        let seed = random_system(rng, n);
        let mut acc = seed.indicator();
        let mut cur = a.act(&seed).unwrap();
        while cur != seed {
            for (x, y) in acc.iter_mut().zip(cur.indicator()) {
                *x ^= y;
            }
            cur = a.act(&cur).unwrap();
        }
        let d = SetSystem::from_indicator(n, &acc).unwrap();
        if d.is_proper() {
            return Some(d);
        }
    }
    None
}

/// A random signed rotation system with shuffled labels.
pub fn random_ribbon_graph(rng: &mut impl Rng, edges: usize, max_vertices: usize) -> RibbonGraph {
    let v = rng.gen_range(1..=max_vertices);
    let mut rotations = vec![Vec::new(); v];
    for h in 1..=2 * edges {
        rotations[rng.gen_range(0..v)].push(h);
    }
    for rot in &mut rotations {
        rot.shuffle(rng);
    }
    let mut labels: Vec<usize> = (1..=edges).collect();
    labels.shuffle(rng);
    let edge_list = (0..edges)
        .map(|k| Edge {
            ends: [2 * k + 1, 2 * k + 2],
            sign: if rng.gen() { 1 } else { -1 },
            label: labels[k],
        })
        .collect();
    RibbonGraph::new(rotations, edge_list).unwrap()
}

/// vf-safe delta-matroids: `D_o(G)` of random ribbon graphs, moved by random
/// group elements.
pub fn vf_safe_sample(rng: &mut impl Rng, count: usize, max_n: usize) -> Vec<SetSystem> {
    (0..count)
        .map(|_| {
            let edges = rng.gen_range(1..=max_n);
            let g = random_ribbon_graph(rng, edges, 3);
            let d = delta_matroid_of(&g).unwrap();
            random_element(rng, edges).act(&d).unwrap()
        })
        .collect()
}

/// Every proper set system on `[n]`.
pub fn all_proper_systems(n: usize) -> impl Iterator<Item = SetSystem> {
    let subsets = 1usize << n;
    (1u64..(1u64 << subsets)).map(move |mask| {
        let ind: Vec<bool> = (0..subsets).map(|x| mask & (1 << x) != 0).collect();
        SetSystem::from_indicator(n, &ind).unwrap()
    })
}
