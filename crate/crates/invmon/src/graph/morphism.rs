//! Label-preserving maps between folded graphs.
//!
//! In a bi-deterministic connected graph a morphism is fixed by the image
//! of one vertex, so every search here is "pick an image for the root and
//! propagate".

use std::collections::VecDeque;

use rayon::prelude::*;

use super::{GraphError, InverseGraph, VertexId};

/// A vertex map, `map[v]` being the image of `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    pub map: Vec<VertexId>,
}

impl Morphism {
    /// Checks edge by edge that the map sends every edge of `src` to an
    /// edge of `dst` with the same label.
    pub fn verify(&self, src: &InverseGraph, dst: &InverseGraph) -> bool {
        if self.map.len() != src.vertex_count() || self.map.iter().any(|&v| v >= dst.vertex_count()) {
            return false;
        }
        let Ok(table) = dst.table() else { return false };
        src.edges().into_iter().all(|e| table.step(self.map[e.source], crate::words::Letter::pos(e.gen)) == Some(self.map[e.target]))
    }

    pub fn is_bijective(&self, dst_vertices: usize) -> bool {
        if self.map.len() != dst_vertices {
            return false;
        }
        let mut hit = vec![false; dst_vertices];
        self.map.iter().all(|&v| !std::mem::replace(&mut hit[v], true))
    }

    pub fn compose(&self, then: &Morphism) -> Morphism {
        Morphism { map: self.map.iter().map(|&v| then.map[v]).collect() }
    }
}

/// The unique morphism `src → dst` sending `src`'s root to `image`, if
/// any. `src` must be connected and both graphs folded.
pub fn find_root_morphism(src: &InverseGraph, dst: &InverseGraph, image: VertexId) -> Result<Option<Morphism>, GraphError> {
    let s = src.table()?;
    let d = dst.table()?;
    if image >= dst.vertex_count() {
        return Err(GraphError::VertexOutOfRange(image));
    }
    let n = src.vertex_count();
    let mut map = vec![usize::MAX; n];
    map[src.root()] = image;
    let mut queue = VecDeque::from([src.root()]);
    let mut seen = 1;
    let letters: Vec<_> = (0..src.gens())
        .flat_map(|g| [crate::words::Letter::pos(g), crate::words::Letter::neg(g)])
        .collect();
    while let Some(u) = queue.pop_front() {
        for &l in &letters {
            let Some(v) = s.step(u, l) else { continue };
            let Some(w) = d.step(map[u], l) else { return Ok(None) };
            if map[v] == usize::MAX {
                map[v] = w;
                seen += 1;
                queue.push_back(v);
            } else if map[v] != w {
                return Ok(None);
            }
        }
    }
    if seen != n {
        return Err(GraphError::Disconnected);
    }
    Ok(Some(Morphism { map }))
}

/// Isomorphism test. With `rooted`, roots must correspond.
pub fn is_isomorphic(g: &InverseGraph, h: &InverseGraph, rooted: bool) -> Result<bool, GraphError> {
    g.table()?;
    h.table()?;
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() || g.gens() != h.gens() {
        return Ok(false);
    }
    let candidates: Vec<VertexId> = if rooted { vec![h.root()] } else { (0..h.vertex_count()).collect() };
    for c in candidates {
        if let Some(m) = find_root_morphism(g, h, c)? {
            if m.is_bijective(h.vertex_count()) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// The automorphism group of a connected folded graph, each element a
/// vertex permutation. Ordered by the image of the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    elements: Vec<Morphism>,
    vertices: usize,
    root: VertexId,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Morphism] {
        &self.elements
    }

    /// Images of the root, one per automorphism, ascending.
    pub fn root_images(&self) -> Vec<VertexId> {
        self.elements.iter().map(|m| m.map[self.root]).collect()
    }

    /// The automorphism sending the root to `v`, if one exists.
    pub fn by_root_image(&self, v: VertexId) -> Option<&Morphism> {
        self.elements.binary_search_by_key(&v, |m| m.map[self.root]).ok().map(|i| &self.elements[i])
    }

    /// Closure under composition and inverses, and presence of the identity.
    pub fn is_group(&self) -> bool {
        let identity = Morphism { map: (0..self.vertices).collect() };
        if !self.elements.contains(&identity) {
            return false;
        }
        for a in &self.elements {
            let Some(inv) = self.inverse_of(a) else { return false };
            if self.by_root_image(inv.map[self.root]) != Some(&inv) {
                return false;
            }
            for b in &self.elements {
                let ab = a.compose(b);
                if self.by_root_image(ab.map[self.root]) != Some(&ab) {
                    return false;
                }
            }
        }
        true
    }

    fn inverse_of(&self, m: &Morphism) -> Option<Morphism> {
        let mut inv = vec![usize::MAX; self.vertices];
        for (v, &w) in m.map.iter().enumerate() {
            inv[w] = v;
        }
        inv.iter().all(|&v| v != usize::MAX).then_some(Morphism { map: inv })
    }

    /// Order of each element, in [`elements`](Self::elements) order.
    pub fn element_orders(&self) -> Vec<usize> {
        self.elements
            .iter()
            .map(|m| {
                let mut k = 1;
                let mut v = m.map[self.root];
                while v != self.root {
                    v = m.map[v];
                    k += 1;
                }
                k
            })
            .collect()
    }
}

/// All automorphisms of a connected folded graph with at most `cap`
/// vertices. Candidate root images are tried in parallel.
pub fn automorphisms(g: &InverseGraph, cap: usize) -> Result<AutomorphismGroup, GraphError> {
    g.table()?;
    if g.vertex_count() > cap {
        return Err(GraphError::GraphTooLarge { vertices: g.vertex_count(), cap });
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let n = g.vertex_count();
    let found: Vec<Option<Morphism>> = (0..n)
        .into_par_iter()
        .map(|c| find_root_morphism(g, g, c).ok().flatten().filter(|m| m.is_bijective(n)))
        .collect();
    let elements = found.into_iter().flatten().collect();
    Ok(AutomorphismGroup { elements, vertices: n, root: g.root() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn cycle(n: usize) -> InverseGraph {
        let edges = (0..n).map(|i| Edge { source: i, gen: 0, target: (i + 1) % n });
        InverseGraph::folded_from_edges(1, n, 0, edges).unwrap()
    }

    #[test]
    fn cycle_automorphisms_are_rotations() {
        let g = cycle(5);
        let aut = automorphisms(&g, 100).unwrap();
        assert_eq!(aut.order(), 5);
        assert!(aut.is_group());
        for m in aut.elements() {
            assert!(m.verify(&g, &g));
        }
        assert_eq!(aut.element_orders(), vec![1, 5, 5, 5, 5]);
    }

    #[test]
    fn path_has_trivial_group() {
        let edges = [Edge { source: 0, gen: 0, target: 1 }, Edge { source: 1, gen: 0, target: 2 }];
        let g = InverseGraph::folded_from_edges(1, 3, 0, edges).unwrap();
        assert_eq!(automorphisms(&g, 100).unwrap().order(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(automorphisms(&cycle(10), 9), Err(GraphError::GraphTooLarge { vertices: 10, cap: 9 }));
    }

    #[test]
    fn isomorphism_rooted_and_unrooted() {
        let g = cycle(4);
        let h = cycle(4).with_root(2);
        assert!(is_isomorphic(&g, &h, true).unwrap());
        let edges = [Edge { source: 0, gen: 0, target: 1 }];
        let p = InverseGraph::folded_from_edges(1, 2, 0, edges).unwrap();
        let q = p.clone().with_root(1);
        assert!(!is_isomorphic(&p, &q, true).unwrap());
        assert!(is_isomorphic(&p, &q, false).unwrap());
    }

    #[test]
    fn morphism_into_larger_graph() {
        let edges = [Edge { source: 0, gen: 0, target: 1 }];
        let p = InverseGraph::folded_from_edges(1, 2, 0, edges).unwrap();
        let m = find_root_morphism(&p, &cycle(3), 2).unwrap().unwrap();
        assert_eq!(m.map, vec![2, 0]);
        assert!(m.verify(&p, &cycle(3)));
        assert!(!m.is_bijective(3));
    }
}
