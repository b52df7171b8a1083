//! Incremental folding with a union-find over vertices.
//!
//! The transition tables only ever mention live representatives. Merging
//! two representatives moves the dropped vertex's edges onto the kept one;
//! each move that clashes with an existing edge queues another
//! coincidence. The order in which queued coincidences are processed is
//! the [`Schedule`]; the final partition does not depend on it.

use std::collections::VecDeque;

use super::{InverseGraph, Table, VertexId, NONE};
use crate::words::{Letter, Word};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Schedule {
    #[default]
    Fifo,
    Lifo,
}

#[derive(Clone, Debug)]
pub struct Folder {
    gens: usize,
    parent: Vec<u32>,
    out: Vec<u32>,
    inn: Vec<u32>,
    queue: VecDeque<(u32, u32)>,
    schedule: Schedule,
    live: usize,
    merges: usize,
}

impl Folder {
    pub fn new(gens: usize, schedule: Schedule) -> Folder {
        Folder {
            gens,
            parent: Vec::new(),
            out: Vec::new(),
            inn: Vec::new(),
            queue: VecDeque::new(),
            schedule,
            live: 0,
            merges: 0,
        }
    }

    /// Starts from a folded graph, keeping its vertex numbering.
    pub fn from_graph(graph: &InverseGraph, schedule: Schedule) -> Folder {
        let mut f = Folder::new(graph.gens(), schedule);
        f.add_vertices(graph.vertex_count());
        for e in graph.edges() {
            f.add_edge(e.source, Letter::pos(e.gen), e.target);
        }
        f.settle();
        f
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let v = self.parent.len();
        self.parent.push(v as u32);
        self.out.extend(std::iter::repeat_n(NONE, self.gens));
        self.inn.extend(std::iter::repeat_n(NONE, self.gens));
        self.live += 1;
        v
    }

    /// Adds `n` vertices and returns the first new id.
    pub fn add_vertices(&mut self, n: usize) -> VertexId {
        let first = self.parent.len();
        for _ in 0..n {
            self.add_vertex();
        }
        first
    }

    /// Vertices ever created, merged ones included.
    pub fn total_count(&self) -> usize {
        self.parent.len()
    }

    /// Current representatives.
    pub fn live_count(&self) -> usize {
        self.live
    }

    /// Number of merges performed so far.
    pub fn merges(&self) -> usize {
        self.merges
    }

    pub fn is_settled(&self) -> bool {
        self.queue.is_empty()
    }

    pub fn find(&mut self, v: VertexId) -> VertexId {
        let mut v = v as u32;
        while self.parent[v as usize] != v {
            let p = self.parent[v as usize];
            self.parent[v as usize] = self.parent[p as usize];
            v = p;
        }
        v as VertexId
    }

    pub fn is_rep(&self, v: VertexId) -> bool {
        self.parent[v] == v as u32
    }

    /// One transition from a representative (only meaningful once settled).
    #[inline]
    pub fn step(&self, v: VertexId, letter: Letter) -> Option<VertexId> {
        let i = v * self.gens + letter.gen();
        let slot = if letter.is_inverse() { self.inn[i] } else { self.out[i] };
        (slot != NONE).then_some(slot as VertexId)
    }

    pub fn read(&self, start: VertexId, word: &Word) -> Option<VertexId> {
        let mut v = start;
        for &l in word {
            v = self.step(v, l)?;
        }
        Some(v)
    }

    /// Adds the edge read as `letter` from `from` to `to`. Coincidences are
    /// queued but not processed; call [`settle`](Self::settle).
    pub fn add_edge(&mut self, from: VertexId, letter: Letter, to: VertexId) {
        let from = self.find(from);
        let to = self.find(to);
        if letter.is_inverse() {
            self.link(to, letter.gen(), from);
        } else {
            self.link(from, letter.gen(), to);
        }
    }

    /// Attaches a path reading `word` from `start`, through fresh vertices,
    /// ending at `end` (or at a fresh vertex). Returns the end vertex.
    pub fn attach_path(&mut self, start: VertexId, word: &Word, end: Option<VertexId>) -> VertexId {
        let letters = word.letters();
        if letters.is_empty() {
            if let Some(e) = end {
                self.merge_request(start, e);
                return self.find(e);
            }
            return start;
        }
        let mut v = start;
        for (i, &l) in letters.iter().enumerate() {
            let w = match (i + 1 == letters.len(), end) {
                (true, Some(e)) => e,
                _ => self.add_vertex(),
            };
            self.add_edge(v, l, w);
            v = w;
        }
        v
    }

    /// Queues the identification of two vertices.
    pub fn merge_request(&mut self, a: VertexId, b: VertexId) {
        self.queue.push_back((a as u32, b as u32));
    }

    /// Processes coincidences until none remain.
    pub fn settle(&mut self) {
        loop {
            let next = match self.schedule {
                Schedule::Fifo => self.queue.pop_front(),
                Schedule::Lifo => self.queue.pop_back(),
            };
            let Some((a, b)) = next else { break };
            self.merge(a as VertexId, b as VertexId);
        }
    }

    fn link(&mut self, u: VertexId, g: usize, v: VertexId) {
        let w = self.out[u * self.gens + g];
        let x = self.inn[v * self.gens + g];
        if w == v as u32 {
            return;
        }
        if w == NONE && x == NONE {
            self.out[u * self.gens + g] = v as u32;
            self.inn[v * self.gens + g] = u as u32;
            return;
        }
        if w != NONE {
            self.queue.push_back((w, v as u32));
        }
        if x != NONE {
            self.queue.push_back((x, u as u32));
        }
    }

    fn merge(&mut self, a: VertexId, b: VertexId) {
        let a = self.find(a);
        let b = self.find(b);
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop] = keep as u32;
        self.live -= 1;
        self.merges += 1;

        let n = self.gens;
        let mut outs = Vec::new();
        let mut ins = Vec::new();
        for g in 0..n {
            let w = std::mem::replace(&mut self.out[drop * n + g], NONE);
            if w != NONE {
                self.inn[w as usize * n + g] = NONE;
                outs.push((g, w as VertexId));
            }
            let x = std::mem::replace(&mut self.inn[drop * n + g], NONE);
            if x != NONE {
                self.out[x as usize * n + g] = NONE;
                ins.push((g, x as VertexId));
            }
        }
        let rep = |v: VertexId| if v == drop { keep } else { v };
        for (g, w) in outs {
            self.link(keep, g, rep(w));
        }
        for (g, x) in ins {
            self.link(rep(x), g, keep);
        }
    }

    /// Live representatives in increasing id order.
    pub fn reps(&self) -> Vec<VertexId> {
        (0..self.parent.len()).filter(|&v| self.is_rep(v)).collect()
    }

    /// A folded copy with live vertices renumbered densely in id order,
    /// plus the image of every vertex ever created.
    pub fn snapshot(&mut self, root: VertexId) -> (InverseGraph, Vec<VertexId>) {
        assert!(self.is_settled(), "snapshot of an unsettled folder");
        let (dense, map) = self.dense_map();
        let mut table = Table::new(self.gens, dense.len());
        for (new, &old) in dense.iter().enumerate() {
            for g in 0..self.gens {
                let w = self.out[old * self.gens + g];
                if w != NONE {
                    let w = map[w as usize];
                    table.out[new * self.gens + g] = w as u32;
                    table.inn[w * self.gens + g] = new as u32;
                }
            }
        }
        let root = map[self.find(root)];
        let graph = InverseGraph { gens: self.gens, vertices: dense.len(), root, body: super::Body::Folded(table) };
        (graph, map)
    }

    /// Drops merged vertices and renumbers the rest densely. Returns the
    /// new id of every old vertex.
    pub fn compact(&mut self) -> Vec<VertexId> {
        assert!(self.is_settled(), "compaction of an unsettled folder");
        let (dense, map) = self.dense_map();
        let n = self.gens;
        let mut out = vec![NONE; n * dense.len()];
        let mut inn = vec![NONE; n * dense.len()];
        for (new, &old) in dense.iter().enumerate() {
            for g in 0..n {
                let w = self.out[old * n + g];
                if w != NONE {
                    out[new * n + g] = map[w as usize] as u32;
                }
                let x = self.inn[old * n + g];
                if x != NONE {
                    inn[new * n + g] = map[x as usize] as u32;
                }
            }
        }
        self.out = out;
        self.inn = inn;
        self.parent = (0..dense.len() as u32).collect();
        self.live = dense.len();
        map
    }

    fn dense_map(&mut self) -> (Vec<VertexId>, Vec<VertexId>) {
        let dense = self.reps();
        let mut new_id = vec![usize::MAX; self.parent.len()];
        for (i, &v) in dense.iter().enumerate() {
            new_id[v] = i;
        }
        let map = (0..self.parent.len()).map(|v| new_id[self.find(v)]).collect();
        (dense, map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_of_coincidences() {
        // Two a-paths of length 3 from the same vertex collapse to one.
        let mut f = Folder::new(1, Schedule::Fifo);
        let root = f.add_vertex();
        let a3: Word = vec![Letter::pos(0); 3].into();
        f.attach_path(root, &a3, None);
        f.attach_path(root, &a3, None);
        f.settle();
        assert_eq!(f.live_count(), 4);
        assert_eq!(f.merges(), 3);
    }

    #[test]
    fn closed_loop_collapses_cycle() {
        let mut f = Folder::new(1, Schedule::Lifo);
        let root = f.add_vertex();
        let a2: Word = vec![Letter::pos(0); 2].into();
        let a3: Word = vec![Letter::pos(0); 3].into();
        f.attach_path(root, &a2, Some(root));
        f.attach_path(root, &a3, Some(root));
        f.settle();
        // a^2 = a^3 = 1 at the root forces a single vertex with a loop.
        assert_eq!(f.live_count(), 1);
        assert_eq!(f.read(0, &a2), Some(0));
    }

    #[test]
    fn compaction_preserves_reading() {
        let mut f = Folder::new(2, Schedule::Fifo);
        let r = f.add_vertex();
        let w: Word = vec![Letter::pos(0), Letter::pos(1), Letter::neg(1)].into();
        let end = f.attach_path(r, &w, None);
        f.settle();
        let end = f.find(end);
        let map = f.compact();
        assert_eq!(f.read(map[r], &w), Some(map[end]));
        assert_eq!(f.total_count(), f.live_count());
    }
}
