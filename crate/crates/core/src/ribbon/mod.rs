//! Ribbon graphs as signed rotation systems, their boundary components and
//! spanning quasi-trees, the delta-matroid `D_o(G)`, and medial graphs.
//!
//! Each half-edge `h` of an edge band has two sides where it meets its vertex
//! disc: `before` (towards the previous half-edge in the rotation) and `after`.
//! These side points are numbered `4e + 2 end + slot` with `slot` 0 for
//! `before` and 1 for `after`, where `e` is the position of the edge in the
//! input and `end` is 0 or 1. Boundary walks alternate between corner arcs,
//! joining `(h, after)` to `(next(h), before)`, and band sides, joining
//! `after` to `before` across an untwisted edge and `after` to `after` across a
//! twisted one.

pub mod catalog;
mod medial;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{budget, invalid, Error, Result};
use crate::group::Perm;
use crate::multimatroid::{lift_unchecked_with_cap, Projection, SubTransversal, TransversalTriple};
use crate::set_system::{ElementSet, SetSystem, MAX_GROUND};

pub use medial::{
    medial, split_components, transition_matroid, transition_matroid_with_cap, FourRegularGraph, Transition,
    TRANSITION_MATROID_CAP,
};

/// Largest edge count for the quasi-tree enumeration.
pub const QUASI_TREE_CAP: usize = MAX_GROUND;
/// Largest edge count for the vf-safe self-check in [`delta_matroid_of`].
pub const DM_VF_SAFE_CHECK_CAP: usize = 4;
/// Largest edge count for [`verify_transition_lift`].
pub const VERIFY_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub ends: [usize; 2],
    /// `1` for an untwisted band, `-1` for a twisted one.
    pub sign: i8,
    pub label: usize,
}

impl Edge {
    pub fn is_twisted(&self) -> bool {
        self.sign < 0
    }
}

/// A ribbon graph as a signed rotation system.
///
/// Rotations are stored starting from their least half-edge id; edges keep
/// their input order and carry labels forming a bijection onto `[n]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RibbonRepr", into = "RibbonRepr")]
pub struct RibbonGraph {
    vertices: Vec<Vec<usize>>,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RibbonRepr {
    vertices: Vec<Vec<usize>>,
    edges: Vec<Edge>,
}

impl TryFrom<RibbonRepr> for RibbonGraph {
    type Error = Error;
    fn try_from(r: RibbonRepr) -> Result<Self> {
        RibbonGraph::new(r.vertices, r.edges)
    }
}

impl From<RibbonGraph> for RibbonRepr {
    fn from(g: RibbonGraph) -> Self {
        RibbonRepr {
            vertices: g.vertices,
            edges: g.edges,
        }
    }
}

/// Where a half-edge sits: its vertex, position in the rotation, edge and end.
#[derive(Clone, Copy, Debug)]
struct Slot {
    vertex: usize,
    edge: usize,
    end: usize,
}

pub(crate) fn point(edge: usize, end: usize, after: bool) -> usize {
    4 * edge + 2 * end + after as usize
}

fn count_roots(uf: &UnionFind<usize>, points: impl Iterator<Item = usize>) -> usize {
    points.map(|p| uf.find(p)).collect::<BTreeSet<_>>().len()
}

impl RibbonGraph {
    pub fn new(vertices: Vec<Vec<usize>>, edges: Vec<Edge>) -> Result<Self> {
        if edges.len() > MAX_GROUND {
            return Err(invalid(format!("at most {MAX_GROUND} edges supported")));
        }
        let mut seen_rot = BTreeSet::new();
        for &h in vertices.iter().flatten() {
            if h == 0 {
                return Err(invalid("half-edge ids must be positive"));
            }
            if !seen_rot.insert(h) {
                return Err(invalid(format!("half-edge {h} appears twice in the rotations")));
            }
        }
        let mut seen_ends = BTreeSet::new();
        for e in &edges {
            if e.sign != 1 && e.sign != -1 {
                return Err(invalid(format!("edge sign {} is not 1 or -1", e.sign)));
            }
            for h in e.ends {
                if !seen_ends.insert(h) {
                    return Err(invalid(format!("half-edge {h} is the end of two edges")));
                }
            }
        }
        if seen_rot != seen_ends {
            let stray: Vec<usize> = seen_rot.symmetric_difference(&seen_ends).copied().collect();
            return Err(invalid(format!("half-edges {stray:?} are missing from a rotation or an edge")));
        }
        let labels: BTreeSet<usize> = edges.iter().map(|e| e.label).collect();
        if labels.len() != edges.len() || labels.iter().any(|&l| l == 0 || l > edges.len()) {
            return Err(invalid(format!("edge labels must be a bijection onto [{}]", edges.len())));
        }
        let vertices = vertices
            .into_iter()
            .map(|mut rot| {
                if let Some(k) = rot.iter().enumerate().min_by_key(|(_, &h)| h).map(|(k, _)| k) {
                    rot.rotate_left(k);
                }
                rot
            })
            .collect();
        Ok(RibbonGraph { vertices, edges })
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_orientable_signs(&self) -> bool {
        self.edges.iter().all(|e| !e.is_twisted())
    }

    /// The ordering `o` as a projection: edge position `k` carries label `o(e_k)`.
    pub fn labelling(&self) -> Projection {
        let one_line: Vec<usize> = self.edges.iter().map(|e| e.label).collect();
        Projection::new(Perm::from_one_line(&one_line).expect("labels are a bijection"))
    }

    fn slots(&self) -> HashMap<usize, Slot> {
        let vertex_of: HashMap<usize, usize> = self
            .vertices
            .iter()
            .enumerate()
            .flat_map(|(v, rot)| rot.iter().map(move |&h| (h, v)))
            .collect();
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(e, edge)| edge.ends.iter().enumerate().map(move |(end, &h)| (h, e, end)))
            .map(|(h, edge, end)| {
                (
                    h,
                    Slot {
                        vertex: vertex_of[&h],
                        edge,
                        end,
                    },
                )
            })
            .collect()
    }

    /// `(k, b)` of the spanning subgraph on the edges at positions in `keep`.
    fn trace(&self, keep: u32, slots: &HashMap<usize, Slot>) -> (usize, usize) {
        let kept = |e: usize| keep & (1 << e) != 0;
        let mut sides = UnionFind::new(4 * self.edges.len());
        let mut verts = UnionFind::new(self.vertices.len());
        let mut isolated = 0;
        for rot in &self.vertices {
            let live: Vec<Slot> = rot.iter().map(|h| slots[h]).filter(|s| kept(s.edge)).collect();
            if live.is_empty() {
                isolated += 1;
                continue;
            }
            for (k, s) in live.iter().enumerate() {
                let t = live[(k + 1) % live.len()];
                sides.union(point(s.edge, s.end, true), point(t.edge, t.end, false));
            }
        }
        for (e, edge) in self.edges.iter().enumerate().filter(|(e, _)| kept(*e)) {
            let twisted = edge.is_twisted();
            sides.union(point(e, 0, true), point(e, 1, twisted));
            sides.union(point(e, 0, false), point(e, 1, !twisted));
            verts.union(slots[&edge.ends[0]].vertex, slots[&edge.ends[1]].vertex);
        }
        let live_points = (0..self.edges.len())
            .filter(|&e| kept(e))
            .flat_map(|e| (0..4).map(move |k| 4 * e + k));
        let boundary = count_roots(&sides, live_points) + isolated;
        let components = count_roots(&verts, 0..self.vertices.len());
        (components, boundary)
    }

    fn all_edges(&self) -> u32 {
        ((1u64 << self.edges.len()) - 1) as u32
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        self.trace(self.all_edges(), &self.slots()).0
    }

    /// Number of boundary walks of the surface; an isolated vertex contributes one.
    pub fn boundary_components(&self) -> usize {
        self.trace(self.all_edges(), &self.slots()).1
    }

    /// Label sets `A` whose spanning subgraph has `k(V, A) = b(V, A) = k(G)`.
    pub fn spanning_quasi_trees(&self) -> Result<Vec<ElementSet>> {
        budget("quasi-tree enumeration", self.edges.len(), QUASI_TREE_CAP)?;
        let slots = self.slots();
        let k = self.trace(self.all_edges(), &slots).0;
        let labels = self.labelling();
        let mut out: Vec<ElementSet> = (0..=self.all_edges())
            .filter(|&mask| self.trace(mask, &slots) == (k, k))
            .map(|mask| labels.project(ElementSet::from_bits(mask)))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Whether the spanning subgraph on the edges labelled by `a` is a spanning quasi-tree.
    pub fn is_spanning_quasi_tree(&self, a: ElementSet) -> bool {
        let slots = self.slots();
        let positions = a.map(&self.labelling().relabel.inverse());
        let k = self.trace(self.all_edges(), &slots).0;
        self.trace(positions.bits(), &slots) == (k, k)
    }
}

impl fmt::Display for RibbonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

impl fmt::Debug for RibbonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `D_o(G)`: spanning quasi-trees as label sets. The result is checked to be a
/// delta-matroid, and vf-safe when it has at most [`DM_VF_SAFE_CHECK_CAP`] edges.
pub fn delta_matroid_of(g: &RibbonGraph) -> Result<SetSystem> {
    let d = SetSystem::new(g.edge_count(), g.spanning_quasi_trees()?)?;
    let dm = d.is_delta_matroid();
    if !dm.is_valid() {
        return Err(Error::Internal(format!("{d} from {g} is not a delta-matroid: {dm:?}")));
    }
    if g.edge_count() <= DM_VF_SAFE_CHECK_CAP && !d.is_vf_safe()? {
        return Err(Error::Internal(format!("{d} from {g} is not vf-safe")));
    }
    Ok(d)
}

/// Outcome of comparing the transition matroid of the medial graph with the
/// lift of `D_o(G)` at the reference triple (black, white, crossing).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionCheck {
    pub equal: bool,
    pub delta_matroid: SetSystem,
    pub medial_bases: usize,
    pub lift_bases: usize,
    /// Bases of the transition matroid missing from the lift.
    pub medial_only: Vec<SubTransversal>,
    /// Bases of the lift missing from the transition matroid.
    pub lift_only: Vec<SubTransversal>,
}

pub fn verify_transition_lift(g: &RibbonGraph) -> Result<TransitionCheck> {
    verify_transition_lift_with_cap(g, VERIFY_CAP)
}

pub fn verify_transition_lift_with_cap(g: &RibbonGraph, cap: usize) -> Result<TransitionCheck> {
    budget("transition matroid comparison", g.edge_count(), cap)?;
    let n = g.edge_count();
    let z_medial = transition_matroid_with_cap(&medial(g), cap)?;
    let d = delta_matroid_of(g)?;
    let z_lift = lift_unchecked_with_cap(&d, &TransversalTriple::reference(n), &g.labelling(), cap)?;
    let a: BTreeSet<_> = z_medial.bases().iter().copied().collect();
    let b: BTreeSet<_> = z_lift.bases().iter().copied().collect();
    let medial_only: Vec<_> = a.difference(&b).copied().collect();
    let lift_only: Vec<_> = b.difference(&a).copied().collect();
    Ok(TransitionCheck {
        equal: medial_only.is_empty() && lift_only.is_empty(),
        delta_matroid: d,
        medial_bases: a.len(),
        lift_bases: b.len(),
        medial_only,
        lift_only,
    })
}
