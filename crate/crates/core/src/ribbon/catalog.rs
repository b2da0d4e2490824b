//! Ribbon graph fixtures: named small graphs and an exhaustive enumeration of
//! signed rotation systems.

use itertools::Itertools;

use super::{Edge, RibbonGraph};

fn graph(vertices: &[&[usize]], edges: &[(usize, usize, i8)]) -> RibbonGraph {
    RibbonGraph::new(
        vertices.iter().map(|v| v.to_vec()).collect(),
        edges
            .iter()
            .enumerate()
            .map(|(k, &(a, b, sign))| Edge {
                ends: [a, b],
                sign,
                label: k + 1,
            })
            .collect(),
    )
    .expect("fixture is well formed")
}

/// Named fixtures.
pub fn named() -> Vec<(&'static str, RibbonGraph)> {
    vec![
        ("isolated_vertex", graph(&[&[]], &[])),
        ("untwisted_loop", graph(&[&[1, 2]], &[(1, 2, 1)])),
        ("twisted_loop", graph(&[&[1, 2]], &[(1, 2, -1)])),
        ("single_edge", graph(&[&[1], &[2]], &[(1, 2, 1)])),
        ("path", graph(&[&[1], &[2, 3], &[4]], &[(1, 2, 1), (3, 4, 1)])),
        ("digon", graph(&[&[1, 3], &[2, 4]], &[(1, 2, 1), (3, 4, 1)])),
        ("twisted_digon", graph(&[&[1, 3], &[2, 4]], &[(1, 2, 1), (3, 4, -1)])),
        ("theta", graph(&[&[1, 2, 3], &[4, 6, 5]], &[(1, 4, 1), (2, 5, 1), (3, 6, 1)])),
        ("theta_toroidal", graph(&[&[1, 2, 3], &[4, 5, 6]], &[(1, 4, 1), (2, 5, 1), (3, 6, 1)])),
        ("bouquet_nested", graph(&[&[1, 2, 3, 4]], &[(1, 2, 1), (3, 4, 1)])),
        ("bouquet_interlaced", graph(&[&[1, 2, 3, 4]], &[(1, 3, 1), (2, 4, 1)])),
        ("bouquet_mixed", graph(&[&[1, 2, 3, 4]], &[(1, 3, -1), (2, 4, 1)])),
        (
            "bouquet_three",
            graph(&[&[1, 2, 3, 4, 5, 6]], &[(1, 4, 1), (2, 5, -1), (3, 6, 1)]),
        ),
        ("edge_and_isolated", graph(&[&[1], &[2], &[]], &[(1, 2, -1)])),
    ]
}

/// Restricted growth strings of length `len` with at most `max_blocks` blocks.
fn vertex_assignments(len: usize, max_blocks: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|a: Vec<usize>| {
                let used = a.iter().max().map_or(0, |m| m + 1);
                (0..=used.min(max_blocks - 1)).map(move |b| {
                    let mut next = a.clone();
                    next.push(b);
                    next
                })
            })
            .collect();
    }
    out
}

/// Cyclic orders of `items` starting with the least element.
fn cyclic_orders(items: &[usize]) -> Vec<Vec<usize>> {
    match items.split_first() {
        None => vec![vec![]],
        Some((&first, rest)) => rest
            .iter()
            .copied()
            .permutations(rest.len())
            .map(|p| std::iter::once(first).chain(p).collect())
            .collect(),
    }
}

/// Every signed rotation system with `edges` edges (half-edges `2k-1, 2k` on
/// edge `k`, labelled `k`) and exactly `vertices` vertices, up to renaming
/// vertices. Vertices without half-edges are isolated.
pub fn enumerate(edges: usize, vertices: usize) -> Vec<RibbonGraph> {
    let half = 2 * edges;
    let mut out = Vec::new();
    for assignment in vertex_assignments(half, vertices.max(1)) {
        let used = assignment.iter().max().map_or(0, |m| m + 1);
        if used > vertices {
            continue;
        }
        let groups: Vec<Vec<usize>> = (0..used)
            .map(|v| (1..=half).filter(|&h| assignment[h - 1] == v).collect())
            .collect();
        // An empty product yields one empty choice, which covers the edgeless case.
        for mut rots in groups.iter().map(|g| cyclic_orders(g)).multi_cartesian_product() {
            rots.resize(vertices, vec![]);
            for signs in (0..edges).map(|_| [1i8, -1]).multi_cartesian_product() {
                let edge_list: Vec<(usize, usize, i8)> =
                    (0..edges).map(|k| (2 * k + 1, 2 * k + 2, signs[k])).collect();
                let verts: Vec<&[usize]> = rots.iter().map(|r| r.as_slice()).collect();
                out.push(graph(&verts, &edge_list));
            }
        }
    }
    out
}

/// All enumerated graphs with up to `max_edges` edges over 1 to `max_vertices`
/// vertices, followed by the named fixtures.
pub fn full(max_edges: usize, max_vertices: usize) -> Vec<RibbonGraph> {
    let mut out: Vec<RibbonGraph> = (0..=max_edges)
        .flat_map(|m| (1..=max_vertices).flat_map(move |v| enumerate(m, v)))
        .collect();
    out.extend(named().into_iter().map(|(_, g)| g));
    out
}
