//! Subgroups of free groups via folded wedges of loops.

use crate::graph::{Folder, InverseGraph, Schedule, VertexId};
use crate::words::Word;

/// The folded wedge of generator loops at a base vertex.
#[derive(Clone, Debug)]
pub struct CoreGraph {
    graph: InverseGraph,
}

impl CoreGraph {
    /// Builds the core graph of the subgroup generated by `gens` in the free
    /// group on `letters` generators.
    pub fn new(gens: &[Word], letters: usize) -> CoreGraph {
        let mut f = Folder::new(letters, Schedule::Fifo);
        let base = f.add_vertex();
        for g in gens {
            let r = g.free_reduce();
            if !r.is_empty() {
                f.attach_path(base, &r, Some(base));
                f.settle();
            }
        }
        CoreGraph { graph: f.snapshot(base).0 }
    }

    pub fn graph(&self) -> &InverseGraph {
        &self.graph
    }

    pub fn base(&self) -> VertexId {
        self.graph.root()
    }

    /// Whether `w` lies in the subgroup: its free reduction reads as a loop
    /// at the base.
    pub fn contains(&self, w: &Word) -> bool {
        if w.max_gen().is_some_and(|g| g >= self.graph.gens()) {
            return false;
        }
        self.graph.read_path(self.base(), &w.free_reduce()).ok().flatten() == Some(self.base())
    }
}

pub fn stallings_membership(subgroup_gens: &[Word], w: &Word) -> bool {
    let letters = subgroup_gens.iter().chain([w]).filter_map(Word::max_gen).max().map_or(0, |g| g + 1);
    CoreGraph::new(subgroup_gens, letters).contains(w)
}
