//! The free inverse monoid word problem via Munn trees.
//!
//! Two constructions of the same tree are provided: folding the straight
//! line graph of a word, and the set of freely reduced prefixes. They are
//! computed independently so that each checks the other.

use std::collections::HashMap;

use crate::graph::{find_root_morphism, Edge, InverseGraph, Schedule, VertexId};
use crate::words::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MunnTree {
    tree: InverseGraph,
    end: VertexId,
}

impl MunnTree {
    pub fn tree(&self) -> &InverseGraph {
        &self.tree
    }

    pub fn start(&self) -> VertexId {
        self.tree.root()
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn vertex_count(&self) -> usize {
        self.tree.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.tree.edge_count()
    }

    /// Acyclic and connected as an undirected graph.
    pub fn is_tree(&self) -> bool {
        self.tree.is_connected() && self.tree.edge_count() + 1 == self.tree.vertex_count()
    }

    /// Same element of the free inverse monoid: a root-preserving
    /// isomorphism that also matches ends.
    pub fn same_element(&self, other: &MunnTree) -> bool {
        if self.vertex_count() != other.vertex_count() || self.edge_count() != other.edge_count() {
            return false;
        }
        let (a, b) = common_gens(self, other);
        match find_root_morphism(&a.tree, &b.tree, b.start()) {
            Ok(Some(m)) => m.is_bijective(b.vertex_count()) && m.map[a.end] == b.end,
            _ => false,
        }
    }

    fn padded(&self, gens: usize) -> MunnTree {
        if gens == self.tree.gens() {
            return self.clone();
        }
        let tree = InverseGraph::folded_from_edges(gens, self.vertex_count(), self.start(), self.tree.edges()).expect("padding keeps the tree folded");
        MunnTree { tree, end: self.end }
    }
}

fn gens_of(w: &Word) -> usize {
    w.max_gen().map_or(0, |g| g + 1)
}

fn common_gens(a: &MunnTree, b: &MunnTree) -> (MunnTree, MunnTree) {
    let n = a.tree.gens().max(b.tree.gens());
    (a.padded(n), b.padded(n))
}

/// Folds the straight line graph of `w`.
pub fn munn_tree(w: &Word) -> MunnTree {
    let (tree, map) = InverseGraph::linear(w, gens_of(w)).fold_tracked(Schedule::Fifo);
    let t = MunnTree { end: map[w.len()], tree };
    debug_assert!(t.is_tree(), "folded linear graph is not a tree");
    t
}

/// Builds the tree from the freely reduced prefixes of `w`.
pub fn munn_tree_oracle(w: &Word) -> MunnTree {
    let mut ids: HashMap<Word, VertexId> = HashMap::new();
    let mut prefix = Word::empty();
    ids.insert(prefix.clone(), 0);
    let mut edges = Vec::new();
    let mut prev = 0;
    for &l in w {
        prefix = prefix.concat(&Word::from_letters([l])).free_reduce();
        let next = ids.len();
        let v = *ids.entry(prefix.clone()).or_insert(next);
        edges.push(Edge::along(prev, l, v));
        prev = v;
    }
    let tree = InverseGraph::folded_from_edges(gens_of(w), ids.len(), 0, edges).expect("reduced prefixes form a folded tree");
    MunnTree { tree, end: prev }
}

/// Equality in the free inverse monoid.
pub fn fim_equal(u: &Word, v: &Word) -> bool {
    munn_tree(u).same_element(&munn_tree(v))
}

/// The natural partial order `u ≤ v` in the free inverse monoid: the tree
/// of `v` embeds in the tree of `u` fixing the root and matching ends.
pub fn fim_leq(u: &Word, v: &Word) -> bool {
    let (tu, tv) = common_gens(&munn_tree(u), &munn_tree(v));
    match find_root_morphism(&tv.tree, &tu.tree, tu.start()) {
        Ok(Some(m)) => m.map[tv.end] == tu.end,
        _ => false,
    }
}
