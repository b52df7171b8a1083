//! Text and Graphviz output. Both use the canonical vertex numbering, so
//! isomorphic rooted graphs produce identical text.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::{InverseGraph, VertexId};
use crate::words::Alphabet;

/// Extra labels for vertices, keyed by the graph's own vertex ids.
pub type GraphAnnotations = BTreeMap<VertexId, String>;

impl InverseGraph {
    /// One line `u x v` per positive edge, canonical numbering, sorted.
    pub fn dump(&self, alphabet: &Alphabet) -> String {
        let ranks = self.canonical_ranks();
        let mut lines: Vec<(VertexId, usize, VertexId)> =
            self.edges().into_iter().map(|e| (ranks[e.source], e.gen, ranks[e.target])).collect();
        lines.sort_unstable();
        lines.dedup();
        let mut s = String::new();
        for (u, g, v) in lines {
            writeln!(s, "{u} {} {v}", alphabet.name(g)).unwrap();
        }
        s
    }

    /// Graphviz source. The root is drawn as a double circle.
    pub fn to_dot(&self, alphabet: &Alphabet, annotations: &GraphAnnotations) -> String {
        let ranks = self.canonical_ranks();
        let mut by_rank: BTreeMap<VertexId, Option<&String>> = BTreeMap::new();
        for v in 0..self.vertex_count() {
            by_rank.insert(ranks[v], annotations.get(&v));
        }
        let mut s = String::from("digraph G {\n  rankdir=LR;\n  node [shape=circle];\n");
        for (r, note) in by_rank {
            let shape = if r == ranks[self.root()] { ", shape=doublecircle" } else { "" };
            let label = match note {
                Some(n) => format!("{r}\\n{}", n.replace('"', "\\\"")),
                None => r.to_string(),
            };
            writeln!(s, "  {r} [label=\"{label}\"{shape}];").unwrap();
        }
        let mut edges: Vec<_> = self.edges().into_iter().map(|e| (ranks[e.source], e.gen, ranks[e.target])).collect();
        edges.sort_unstable();
        edges.dedup();
        for (u, g, v) in edges {
            writeln!(s, "  {u} -> {v} [label=\"{}\"];", alphabet.name(g)).unwrap();
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dump_and_dot() {
        let al = Alphabet::new(["a", "b"]).unwrap();
        let g = InverseGraph::linear(&al.parse_word("b a'").unwrap(), 2).fold();
        assert_eq!(g.dump(&al), "0 b 1\n2 a 1\n");
        let mut notes = GraphAnnotations::new();
        notes.insert(2, "end".into());
        let dot = g.to_dot(&al, &notes);
        assert!(dot.contains("0 [label=\"0\", shape=doublecircle];"));
        assert!(dot.contains("2 [label=\"2\\nend\"];"));
        assert!(dot.contains("0 -> 1 [label=\"b\"];"));
    }
}
