use std::fmt;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use super::{count_roots, point, RibbonGraph};
use crate::error::{budget, invalid, Result};
use crate::multimatroid::{Multimatroid, SubTransversal};

/// Largest medial vertex count for [`transition_matroid`].
pub const TRANSITION_MATROID_CAP: usize = 8;

/// The three transitions at a medial vertex, in role order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Transition {
    Black = 1,
    White = 2,
    Crossing = 3,
}

impl Transition {
    pub const ALL: [Transition; 3] = [Transition::Black, Transition::White, Transition::Crossing];

    pub fn role(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Transition::Black => "black",
            Transition::White => "white",
            Transition::Crossing => "crossing",
        })
    }
}

type Pairing = [(usize, usize); 2];

/// A 4-regular graph with medial half-edges numbered `4v + 2 end + slot`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourRegularGraph {
    /// Label of each medial vertex (the label of the edge it sits on).
    pub labels: Vec<usize>,
    /// Edges between medial half-edges.
    pub corners: Vec<(usize, usize)>,
    /// Per medial vertex, the black, white and crossing pairings.
    pub transitions: Vec<[Pairing; 3]>,
    /// Vertex-free circles, one per isolated vertex of the ribbon graph.
    pub free_loops: usize,
}

impl FourRegularGraph {
    pub fn vertex_count(&self) -> usize {
        self.transitions.len()
    }

    fn corner_union_find(&self) -> UnionFind<usize> {
        let mut uf = UnionFind::new(4 * self.vertex_count());
        for &(a, b) in &self.corners {
            uf.union(a, b);
        }
        uf
    }

    /// `k(F)`: components of the 4-regular graph, free loops included.
    pub fn components(&self) -> usize {
        let mut uf = self.corner_union_find();
        for v in 0..self.vertex_count() {
            for k in 1..4 {
                uf.union(4 * v, 4 * v + k);
            }
        }
        count_roots(&uf, 0..4 * self.vertex_count()) + self.free_loops
    }
}

/// The medial graph: one vertex per edge of `g`, corner edges along the vertex
/// discs, and transitions black (the two sides at one end), white (along the
/// band sides, so crossed on a twisted edge) and crossing (the remaining pairing).
pub fn medial(g: &RibbonGraph) -> FourRegularGraph {
    let slots = g.slots();
    let mut corners = Vec::with_capacity(2 * g.edge_count());
    let mut free_loops = 0;
    for rot in g.vertices() {
        if rot.is_empty() {
            free_loops += 1;
        }
        for (k, h) in rot.iter().enumerate() {
            let s = slots[h];
            let t = slots[&rot[(k + 1) % rot.len()]];
            corners.push((point(s.edge, s.end, true), point(t.edge, t.end, false)));
        }
    }
    let transitions = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            let p = |end, after| point(e, end, after);
            let tw = edge.is_twisted();
            [
                [(p(0, false), p(0, true)), (p(1, false), p(1, true))],
                [(p(0, true), p(1, tw)), (p(0, false), p(1, !tw))],
                [(p(0, true), p(1, !tw)), (p(0, false), p(1, tw))],
            ]
        })
        .collect();
    FourRegularGraph {
        labels: g.edges().iter().map(|e| e.label).collect(),
        corners,
        transitions,
        free_loops,
    }
}

/// Components of the 2-regular graph obtained by splitting every medial vertex
/// along the transition chosen in `t` (role 1 black, 2 white, 3 crossing).
pub fn split_components(fm: &FourRegularGraph, t: SubTransversal) -> Result<usize> {
    if !t.is_total(fm.vertex_count()) || t.elements().any(|(i, _)| i > fm.vertex_count()) {
        return Err(invalid(format!(
            "transition system {t} does not choose exactly one transition at each of {} vertices",
            fm.vertex_count()
        )));
    }
    let mut uf = fm.corner_union_find();
    for (i, r) in t.elements() {
        for (a, b) in fm.transitions[i - 1][r as usize - 1] {
            uf.union(a, b);
        }
    }
    Ok(count_roots(&uf, 0..4 * fm.vertex_count()) + fm.free_loops)
}

/// `Z(F)`: the transition systems `T` with `k(F|T) = k(F)`.
pub fn transition_matroid(fm: &FourRegularGraph) -> Result<Multimatroid> {
    transition_matroid_with_cap(fm, TRANSITION_MATROID_CAP)
}

pub fn transition_matroid_with_cap(fm: &FourRegularGraph, cap: usize) -> Result<Multimatroid> {
    let m = fm.vertex_count();
    budget("transition matroid", m, cap)?;
    let k = fm.components();
    let candidates = SubTransversal::all_total(m);
    let keep: Vec<bool> = candidates
        .par_iter()
        .map(|&t| split_components(fm, t).map(|c| c == k))
        .collect::<Result<_>>()?;
    Multimatroid::new(
        m,
        candidates
            .into_iter()
            .zip(keep)
            .filter_map(|(t, ok)| ok.then_some(t)),
    )
}
