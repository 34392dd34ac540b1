//! Strong connectivity cuts and their separation from integer candidates.

use std::collections::BTreeSet;

use super::domain::{self, Domain};
use crate::puzzle::{Assignment, EdgeSet};
use crate::verify::{components_where, positive_components};

/// Which components of a disconnected candidate become cuts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CutEmission {
    /// One cut per component.
    #[default]
    AllComponents,
    /// One cut per component except the largest (first one on ties).
    AllButLargest,
}

/// An island subset whose boundary must carry at least one bridge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    /// Island indices, ascending.
    pub members: Vec<usize>,
    /// Edges with exactly one endpoint in `members`, ascending.
    pub boundary: Vec<usize>,
}

impl Cut {
    pub fn new(edges: &EdgeSet, members: Vec<usize>) -> Self {
        let mut inside = vec![false; edges.island_count()];
        for &k in &members {
            inside[k] = true;
        }
        let boundary = edges
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| inside[e.i] != inside[e.j])
            .map(|(idx, _)| idx)
            .collect();
        Self { members, boundary }
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.boundary.iter().any(|&e| a.used(e))
    }
}

/// Cuts for the components of the graph induced by the positive edges of
/// `a`. Empty when that graph is connected.
pub fn separate_connectivity(edges: &EdgeSet, a: &Assignment, policy: CutEmission) -> Vec<Cut> {
    let comps = positive_components(edges, a);
    if comps.len() <= 1 {
        return Vec::new();
    }
    let skip = match policy {
        CutEmission::AllComponents => None,
        CutEmission::AllButLargest => comps
            .iter()
            .enumerate()
            .max_by(|(ia, a), (ib, b)| a.len().cmp(&b.len()).then(ib.cmp(ia)))
            .map(|(idx, _)| idx),
    };
    comps
        .into_iter()
        .enumerate()
        .filter(|(idx, _)| Some(*idx) != skip)
        .map(|(_, members)| Cut::new(edges, members))
        .collect()
}

/// Cuts for the components of the fixed-positive edges that can no longer
/// reach any other island: every boundary edge is fixed to zero. Each such
/// component stays disconnected in every completion of `dom`. Empty when the
/// fixed-positive edges already span all islands.
pub fn separate_sealed(edges: &EdgeSet, dom: &[Domain]) -> Vec<Cut> {
    let comps = components_where(edges, |e| !domain::contains(dom[e], 0));
    if comps.len() <= 1 {
        return Vec::new();
    }
    let mut comp_of = vec![0; edges.island_count()];
    for (c, members) in comps.iter().enumerate() {
        for &k in members {
            comp_of[k] = c;
        }
    }
    let mut open = vec![false; comps.len()];
    for (e, edge) in edges.edges().iter().enumerate() {
        let (ci, cj) = (comp_of[edge.i], comp_of[edge.j]);
        if ci != cj && dom[e] != domain::ZERO {
            open[ci] = true;
            open[cj] = true;
        }
    }
    comps
        .into_iter()
        .zip(open)
        .filter(|(_, open)| !open)
        .map(|(members, _)| Cut::new(edges, members))
        .collect()
}

/// Global, append-only set of cuts with per-edge watch lists.
#[derive(Debug, Clone, Default)]
pub struct CutPool {
    cuts: Vec<Cut>,
    keys: BTreeSet<Vec<usize>>,
    watch: Vec<Vec<usize>>,
}

impl CutPool {
    pub fn new(edge_count: usize) -> Self {
        Self {
            cuts: Vec::new(),
            keys: BTreeSet::new(),
            watch: vec![Vec::new(); edge_count],
        }
    }

    /// Adds a cut unless one with the same members is already pooled.
    pub fn insert(&mut self, cut: Cut) -> bool {
        if !self.keys.insert(cut.members.clone()) {
            return false;
        }
        let idx = self.cuts.len();
        for &e in &cut.boundary {
            self.watch[e].push(idx);
        }
        self.cuts.push(cut);
        true
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn get(&self, idx: usize) -> &Cut {
        &self.cuts[idx]
    }

    pub fn cuts(&self) -> &[Cut] {
        &self.cuts
    }

    /// Cuts whose boundary contains edge `e`.
    pub fn watching(&self, e: usize) -> &[usize] {
        &self.watch[e]
    }
}
