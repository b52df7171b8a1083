//! Rooted, edge-labelled graphs whose edges come in inverse pairs.
//!
//! Only positive-letter edges are stored. Reading a formal inverse `x'` at a
//! vertex means traversing an `x`-edge backwards, so the inverse-pair
//! closure holds by construction. A graph is either *raw* (an arbitrary
//! edge list, possibly with two same-labelled edges at a vertex) or
//! *folded* (bi-deterministic, stored as transition tables).

mod export;
mod fold;
mod morphism;

use std::collections::VecDeque;

use thiserror::Error;

use crate::words::{Letter, Word};

pub use export::GraphAnnotations;
pub use fold::{Folder, Schedule};
pub use morphism::{automorphisms, find_root_morphism, is_isomorphic, AutomorphismGroup, Morphism};

pub type VertexId = usize;

/// Default vertex cap for searches over finite graphs.
pub const DEFAULT_VERTEX_CAP: usize = 100_000;

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("operation requires a folded graph")]
    UnfoldedGraph,
    #[error("graph has {vertices} vertices, above the cap of {cap}")]
    GraphTooLarge { vertices: usize, cap: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("two {letter:?}-edges meet at vertex {vertex}")]
    Nondeterministic { vertex: VertexId, letter: Letter },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
}

/// A positive-letter edge `source --gen--> target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: VertexId,
    pub gen: usize,
    pub target: VertexId,
}

impl Edge {
    /// The edge read along `letter` from `from`.
    pub fn along(from: VertexId, letter: Letter, to: VertexId) -> Edge {
        if letter.is_inverse() {
            Edge { source: to, gen: letter.gen(), target: from }
        } else {
            Edge { source: from, gen: letter.gen(), target: to }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Table {
    gens: usize,
    out: Vec<u32>,
    inn: Vec<u32>,
}

impl Table {
    fn new(gens: usize, vertices: usize) -> Table {
        Table { gens, out: vec![NONE; gens * vertices], inn: vec![NONE; gens * vertices] }
    }

    #[inline]
    fn get(slot: u32) -> Option<VertexId> {
        (slot != NONE).then_some(slot as VertexId)
    }

    #[inline]
    pub(crate) fn step(&self, v: VertexId, letter: Letter) -> Option<VertexId> {
        let i = v * self.gens + letter.gen();
        if letter.is_inverse() {
            Table::get(self.inn[i])
        } else {
            Table::get(self.out[i])
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Body {
    Raw(Vec<Edge>),
    Folded(Table),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseGraph {
    gens: usize,
    vertices: usize,
    root: VertexId,
    body: Body,
}

impl InverseGraph {
    /// A single root vertex and no edges (folded).
    pub fn trivial(gens: usize) -> InverseGraph {
        InverseGraph { gens, vertices: 1, root: 0, body: Body::Folded(Table::new(gens, 1)) }
    }

    /// An unfolded graph with the given edges.
    pub fn from_edges(gens: usize, vertices: usize, root: VertexId, edges: Vec<Edge>) -> InverseGraph {
        assert!(root < vertices, "root out of range");
        for e in &edges {
            assert!(e.source < vertices && e.target < vertices && e.gen < gens, "edge {e:?} out of range");
        }
        InverseGraph { gens, vertices, root, body: Body::Raw(edges) }
    }

    /// A folded graph from an edge list that must already be
    /// bi-deterministic. Duplicate edges are merged.
    pub fn folded_from_edges(
        gens: usize,
        vertices: usize,
        root: VertexId,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<InverseGraph, GraphError> {
        if root >= vertices {
            return Err(GraphError::VertexOutOfRange(root));
        }
        let mut table = Table::new(gens, vertices);
        for e in edges {
            if e.source >= vertices {
                return Err(GraphError::VertexOutOfRange(e.source));
            }
            if e.target >= vertices {
                return Err(GraphError::VertexOutOfRange(e.target));
            }
            let o = e.source * gens + e.gen;
            let i = e.target * gens + e.gen;
            match (Table::get(table.out[o]), Table::get(table.inn[i])) {
                (None, None) => {
                    table.out[o] = e.target as u32;
                    table.inn[i] = e.source as u32;
                }
                (Some(t), Some(s)) if t == e.target && s == e.source => {}
                (Some(_), _) => return Err(GraphError::Nondeterministic { vertex: e.source, letter: Letter::pos(e.gen) }),
                (None, Some(_)) => return Err(GraphError::Nondeterministic { vertex: e.target, letter: Letter::neg(e.gen) }),
            }
        }
        Ok(InverseGraph { gens, vertices, root, body: Body::Folded(table) })
    }

    /// The straight-line graph `L_w`: vertices `0..=|w|`, root 0, and the
    /// path `0 → |w|` reads `w`. Returned unfolded.
    pub fn linear(word: &Word, gens: usize) -> InverseGraph {
        let edges = word.letters().iter().enumerate().map(|(i, &l)| Edge::along(i, l, i + 1)).collect();
        InverseGraph::from_edges(gens, word.len() + 1, 0, edges)
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn is_folded(&self) -> bool {
        matches!(self.body, Body::Folded(_))
    }

    pub fn with_root(mut self, root: VertexId) -> InverseGraph {
        assert!(root < self.vertices);
        self.root = root;
        self
    }

    pub(crate) fn table(&self) -> Result<&Table, GraphError> {
        match &self.body {
            Body::Folded(t) => Ok(t),
            Body::Raw(_) => Err(GraphError::UnfoldedGraph),
        }
    }

    /// Positive edges; sorted for folded graphs.
    pub fn edges(&self) -> Vec<Edge> {
        match &self.body {
            Body::Raw(edges) => edges.clone(),
            Body::Folded(t) => {
                let mut out = Vec::new();
                for v in 0..self.vertices {
                    for g in 0..self.gens {
                        if let Some(w) = Table::get(t.out[v * self.gens + g]) {
                            out.push(Edge { source: v, gen: g, target: w });
                        }
                    }
                }
                out
            }
        }
    }

    pub fn edge_count(&self) -> usize {
        match &self.body {
            Body::Raw(edges) => edges.len(),
            Body::Folded(t) => t.out.iter().filter(|&&s| s != NONE).count(),
        }
    }

    /// One transition of a folded graph.
    pub fn step(&self, v: VertexId, letter: Letter) -> Result<Option<VertexId>, GraphError> {
        Ok(self.table()?.step(v, letter))
    }

    /// Follows `word` from `start`; `None` at the first missing transition.
    pub fn read_path(&self, start: VertexId, word: &Word) -> Result<Option<VertexId>, GraphError> {
        let table = self.table()?;
        let mut v = start;
        for &l in word {
            match table.step(v, l) {
                Some(w) => v = w,
                None => return Ok(None),
            }
        }
        Ok(Some(v))
    }

    /// Like [`read_path`](Self::read_path) but returns every visited vertex.
    pub fn trace_path(&self, start: VertexId, word: &Word) -> Result<Option<Vec<VertexId>>, GraphError> {
        let table = self.table()?;
        let mut path = Vec::with_capacity(word.len() + 1);
        path.push(start);
        let mut v = start;
        for &l in word {
            match table.step(v, l) {
                Some(w) => {
                    v = w;
                    path.push(v);
                }
                None => return Ok(None),
            }
        }
        Ok(Some(path))
    }

    /// Neighbours of `v` as `(letter, vertex)` pairs ordered by generator,
    /// positive before inverse.
    pub fn neighbors(&self, v: VertexId) -> Vec<(Letter, VertexId)> {
        match &self.body {
            Body::Folded(t) => {
                let mut out = Vec::new();
                for g in 0..self.gens {
                    for l in [Letter::pos(g), Letter::neg(g)] {
                        if let Some(w) = t.step(v, l) {
                            out.push((l, w));
                        }
                    }
                }
                out
            }
            Body::Raw(edges) => {
                let mut out = Vec::new();
                for e in edges {
                    if e.source == v {
                        out.push((Letter::pos(e.gen), e.target));
                    }
                    if e.target == v {
                        out.push((Letter::neg(e.gen), e.source));
                    }
                }
                out.sort_by_key(|&(l, w)| (l.gen(), l.is_inverse(), w));
                out
            }
        }
    }

    /// Vertices in canonical order: breadth-first from the root with
    /// neighbours visited by letter, then any unreachable vertices in id
    /// order (each followed by its own breadth-first sweep).
    pub fn canonical_order(&self) -> Vec<VertexId> {
        let adjacency: Vec<Vec<(Letter, VertexId)>> = (0..self.vertices).map(|v| self.neighbors(v)).collect();
        let mut seen = vec![false; self.vertices];
        let mut order = Vec::with_capacity(self.vertices);
        let starts = std::iter::once(self.root).chain(0..self.vertices);
        for s in starts {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &(_, w) in &adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        order
    }

    /// True iff every vertex is reachable from the root (edges traversed in
    /// either direction).
    pub fn is_connected(&self) -> bool {
        let order = self.canonical_order();
        let mut seen = vec![false; self.vertices];
        seen[self.root] = true;
        let mut queue = VecDeque::from([self.root]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for (_, w) in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        debug_assert_eq!(order.len(), self.vertices);
        count == self.vertices
    }

    /// Renumbers vertices so that `perm[old] = new`.
    pub fn relabel(&self, perm: &[VertexId]) -> InverseGraph {
        assert_eq!(perm.len(), self.vertices);
        let edges: Vec<Edge> = self
            .edges()
            .into_iter()
            .map(|e| Edge { source: perm[e.source], gen: e.gen, target: perm[e.target] })
            .collect();
        let root = perm[self.root];
        match self.body {
            Body::Raw(_) => InverseGraph::from_edges(self.gens, self.vertices, root, edges),
            Body::Folded(_) => InverseGraph::folded_from_edges(self.gens, self.vertices, root, edges).expect("relabelling preserves determinism"),
        }
    }

    /// Copy renumbered in [`canonical_order`](Self::canonical_order).
    pub fn canonical(&self) -> InverseGraph {
        self.relabel(&self.canonical_ranks())
    }

    /// `ranks[old] = position in canonical order`.
    pub fn canonical_ranks(&self) -> Vec<VertexId> {
        let order = self.canonical_order();
        let mut ranks = vec![0; self.vertices];
        for (i, &v) in order.iter().enumerate() {
            ranks[v] = i;
        }
        ranks
    }

    /// Folds with the default (FIFO) schedule.
    pub fn fold(&self) -> InverseGraph {
        self.fold_tracked(Schedule::Fifo).0
    }

    pub fn fold_with(&self, schedule: Schedule) -> InverseGraph {
        self.fold_tracked(schedule).0
    }

    /// Folds and reports where each old vertex went.
    pub fn fold_tracked(&self, schedule: Schedule) -> (InverseGraph, Vec<VertexId>) {
        let mut folder = Folder::new(self.gens, schedule);
        folder.add_vertices(self.vertices);
        for e in self.edges() {
            folder.add_edge(e.source, Letter::pos(e.gen), e.target);
        }
        folder.settle();
        folder.snapshot(self.root)
    }

    /// Disjoint union: `other`'s vertices are shifted by
    /// `self.vertex_count()`. The result is raw; the root is `self`'s.
    pub fn disjoint_union(&self, other: &InverseGraph) -> InverseGraph {
        assert_eq!(self.gens, other.gens);
        let shift = self.vertices;
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|e| Edge { source: e.source + shift, gen: e.gen, target: e.target + shift }));
        InverseGraph::from_edges(self.gens, self.vertices + other.vertices, self.root, edges)
    }

    /// In-degree and out-degree agreement check used by tests: a folded
    /// graph never has two same-labelled edges at a vertex.
    pub fn is_bideterministic(&self) -> bool {
        let mut out = std::collections::HashSet::new();
        let mut inn = std::collections::HashSet::new();
        self.edges().into_iter().all(|e| out.insert((e.source, e.gen)) & inn.insert((e.target, e.gen)))
    }

    /// Vertices with at least one incoming `gen`-edge.
    pub fn has_in_edge(&self, v: VertexId, gen: usize) -> Result<bool, GraphError> {
        Ok(self.table()?.step(v, Letter::neg(gen)).is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn linear_graph_shape() {
        let al = ab();
        let g = InverseGraph::linear(&al.parse_word("a b").unwrap(), 2);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), vec![Edge { source: 0, gen: 0, target: 1 }, Edge { source: 1, gen: 1, target: 2 }]);
        assert!(!g.is_folded());

        let g = InverseGraph::linear(&Word::empty(), 2);
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));

        let g = InverseGraph::linear(&al.parse_word("a a'").unwrap(), 2);
        assert_eq!(g.edges(), vec![Edge { source: 0, gen: 0, target: 1 }, Edge { source: 2, gen: 0, target: 1 }]);
    }

    #[test]
    fn fold_examples() {
        let al = ab();
        let g = InverseGraph::linear(&al.parse_word("a a'").unwrap(), 2).fold();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        assert_eq!(g.read_path(g.root(), &al.parse_word("a a'").unwrap()).unwrap(), Some(g.root()));

        let (g, map) = InverseGraph::linear(&al.parse_word("a b b' a'").unwrap(), 2).fold_tracked(Schedule::Fifo);
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
        assert_eq!(map[4], g.root());
        let end = g.read_path(g.root(), &al.parse_word("a b").unwrap()).unwrap().unwrap();
        assert_ne!(end, g.root());

        let again = g.fold();
        assert_eq!(again.canonical(), g.canonical());
    }

    #[test]
    fn read_path_requires_folded() {
        let g = InverseGraph::linear(&Word::empty(), 1);
        assert_eq!(g.read_path(0, &Word::empty()), Err(GraphError::UnfoldedGraph));
        let f = g.fold();
        assert_eq!(f.read_path(0, &Word::empty()), Ok(Some(0)));
    }

    #[test]
    fn folded_from_edges_rejects_clash() {
        let edges = [Edge { source: 0, gen: 0, target: 1 }, Edge { source: 0, gen: 0, target: 2 }];
        assert!(matches!(InverseGraph::folded_from_edges(1, 3, 0, edges), Err(GraphError::Nondeterministic { vertex: 0, .. })));
        let edges = [Edge { source: 0, gen: 0, target: 2 }, Edge { source: 1, gen: 0, target: 2 }];
        assert!(matches!(InverseGraph::folded_from_edges(1, 3, 0, edges), Err(GraphError::Nondeterministic { vertex: 2, .. })));
    }

    #[test]
    fn canonical_order_is_bfs() {
        let edges = vec![Edge { source: 2, gen: 0, target: 0 }, Edge { source: 2, gen: 1, target: 1 }];
        let g = InverseGraph::folded_from_edges(2, 3, 2, edges).unwrap();
        assert_eq!(g.canonical_order(), vec![2, 0, 1]);
    }
}
