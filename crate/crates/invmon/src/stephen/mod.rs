//! Stephen's procedure as a bounded semidecision engine.
//!
//! A [`Session`] holds an approximation of the Schützenberger graph of its
//! seed word. Each round walks the vertices present at the start of the
//! round and, wherever a relator fails to read as a closed path, attaches
//! a fresh closed path labelled by it and folds. Readings found at some
//! round persist at every later round, so positive answers are final.
//! Negative answers come only from homomorphisms whose relator check
//! passed.

mod certificate;
mod homomorphism;

use thiserror::Error;

use crate::graph::{Edge, Folder, InverseGraph, Schedule, VertexId, DEFAULT_VERTEX_CAP};
use crate::presentation::{Flavor, Presentation};
use crate::words::{Letter, Word};

pub use certificate::{Certificate, DepthBound, Evidence, ImageWitness, PathWitness, RefutationTrace, TraceStep, Verdict};
pub use homomorphism::{bicyclic_check, bicyclic_eval, weight_check, BicyclicForm, BicyclicHom, RegisteredHom, WeightHom};

pub const DEFAULT_DEPTH: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StephenError {
    #[error("expected a special inverse monoid presentation, got flavor `{}`", .0.keyword())]
    WrongFlavor(Flavor),
    #[error("graph grew to {vertices} vertices, above the cap of {cap}")]
    GraphTooLarge { vertices: usize, cap: usize },
    #[error("word uses a generator outside the presentation")]
    ForeignWord,
}

/// One expansion of `SΓ(seed)`, advanced round by round.
#[derive(Clone, Debug)]
pub struct Session {
    presentation: Presentation,
    seed: Word,
    folder: Folder,
    root: VertexId,
    terminal: VertexId,
    rounds: usize,
    saturated: bool,
    cap: usize,
}

impl Session {
    pub fn new(p: &Presentation, seed: &Word) -> Result<Session, StephenError> {
        Session::with_cap(p, seed, DEFAULT_VERTEX_CAP)
    }

    pub fn with_cap(p: &Presentation, seed: &Word, cap: usize) -> Result<Session, StephenError> {
        if p.flavor() != Flavor::SpecialInverseMonoid {
            return Err(StephenError::WrongFlavor(p.flavor()));
        }
        check_word(p, seed)?;
        let mut folder = Folder::new(p.gens(), Schedule::Fifo);
        let root = folder.add_vertex();
        let terminal = folder.attach_path(root, seed, None);
        folder.settle();
        let map = folder.compact();
        let s = Session {
            presentation: p.clone(),
            seed: seed.clone(),
            root: map[root],
            terminal: map[terminal],
            folder,
            rounds: 0,
            saturated: false,
            cap,
        };
        s.check_cap()?;
        Ok(s)
    }

    fn check_cap(&self) -> Result<(), StephenError> {
        if self.folder.live_count() > self.cap {
            return Err(StephenError::GraphTooLarge { vertices: self.folder.live_count(), cap: self.cap });
        }
        Ok(())
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn seed(&self) -> &Word {
        &self.seed
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn terminal(&self) -> VertexId {
        self.terminal
    }

    pub fn rounds_done(&self) -> usize {
        self.rounds
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn vertex_count(&self) -> usize {
        self.folder.live_count()
    }

    /// One round of expansion. Returns whether anything was attached.
    pub fn round(&mut self) -> Result<bool, StephenError> {
        if self.saturated {
            return Ok(false);
        }
        let snapshot = self.folder.live_count();
        let relators = self.presentation.relators().to_vec();
        let mut attached = false;
        for v in 0..snapshot {
            for r in &relators {
                let v = self.folder.find(v);
                if self.folder.read(v, r) != Some(v) {
                    self.folder.attach_path(v, r, Some(v));
                    self.folder.settle();
                    attached = true;
                    self.check_cap()?;
                }
            }
        }
        let root = self.folder.find(self.root);
        let terminal = self.folder.find(self.terminal);
        let map = self.folder.compact();
        self.root = map[root];
        self.terminal = map[terminal];
        self.rounds += 1;
        self.saturated = !attached;
        Ok(attached)
    }

    /// Runs up to `rounds` further rounds, stopping early at saturation.
    pub fn expand(&mut self, rounds: usize) -> Result<(), StephenError> {
        for _ in 0..rounds {
            if self.saturated {
                break;
            }
            self.round()?;
        }
        Ok(())
    }

    /// Expands until `rounds_done() == depth` or saturation.
    pub fn expand_to(&mut self, depth: usize) -> Result<(), StephenError> {
        self.expand(depth.saturating_sub(self.rounds))
    }

    pub fn read_from(&self, v: VertexId, w: &Word) -> Option<VertexId> {
        self.folder.read(v, w)
    }

    pub fn read(&self, w: &Word) -> Option<VertexId> {
        self.folder.read(self.root, w)
    }

    /// Vertices visited when reading `w` from `v`.
    pub fn trace_from(&self, v: VertexId, w: &Word) -> Option<Vec<VertexId>> {
        let mut path = vec![v];
        let mut at = v;
        for &l in w {
            at = self.folder.step(at, l)?;
            path.push(at);
        }
        Some(path)
    }

    pub fn step(&self, v: VertexId, l: Letter) -> Option<VertexId> {
        self.folder.step(v, l)
    }

    /// The current approximation as a folded graph.
    pub fn graph(&self) -> InverseGraph {
        let n = self.folder.live_count();
        let mut edges = Vec::new();
        for v in 0..n {
            for g in 0..self.presentation.gens() {
                if let Some(w) = self.folder.step(v, Letter::pos(g)) {
                    edges.push(Edge { source: v, gen: g, target: w });
                }
            }
        }
        InverseGraph::folded_from_edges(self.presentation.gens(), n, self.root, edges).expect("session graph is folded")
    }

    /// Every relator reads as a closed path at every vertex.
    pub fn relators_close_everywhere(&self) -> bool {
        (0..self.folder.live_count()).all(|v| self.presentation.relators().iter().all(|r| self.folder.read(v, r) == Some(v)))
    }

    fn bound(&self) -> DepthBound {
        DepthBound { rounds: self.rounds, vertices: self.vertex_count(), saturated: self.saturated }
    }

    fn witness(&self, v: VertexId, w: &Word) -> Option<PathWitness> {
        self.trace_from(v, w).map(|vertices| PathWitness { word: self.presentation.render(w), vertices })
    }
}

fn check_word(p: &Presentation, w: &Word) -> Result<(), StephenError> {
    if w.max_gen().is_some_and(|g| g >= p.gens()) {
        return Err(StephenError::ForeignWord);
    }
    Ok(())
}

/// Query engine: a presentation, search bounds, and the homomorphisms
/// registered for negative answers.
#[derive(Clone, Debug)]
pub struct Stephen {
    presentation: Presentation,
    depth: usize,
    vertex_cap: usize,
    homs: Vec<RegisteredHom>,
}

impl Stephen {
    pub fn new(p: &Presentation) -> Result<Stephen, StephenError> {
        if p.flavor() != Flavor::SpecialInverseMonoid {
            return Err(StephenError::WrongFlavor(p.flavor()));
        }
        Ok(Stephen { presentation: p.clone(), depth: DEFAULT_DEPTH, vertex_cap: DEFAULT_VERTEX_CAP, homs: Vec::new() })
    }

    pub fn with_depth(mut self, depth: usize) -> Stephen {
        self.depth = depth;
        self
    }

    pub fn with_vertex_cap(mut self, cap: usize) -> Stephen {
        self.vertex_cap = cap;
        self
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn homomorphisms(&self) -> &[RegisteredHom] {
        &self.homs
    }

    /// Registers a map into the bicyclic monoid if it kills every relator.
    pub fn register_bicyclic(&mut self, images: &[Word]) -> bool {
        let h = BicyclicHom::from_words(images);
        let ok = h.respects(&self.presentation);
        if ok {
            self.homs.push(RegisteredHom::Bicyclic(h));
        }
        ok
    }

    /// Registers integer weights if every relator weighs zero.
    pub fn register_weights(&mut self, weights: &[i64]) -> bool {
        let h = WeightHom::new(weights.to_vec());
        let ok = h.respects(&self.presentation);
        if ok {
            self.homs.push(RegisteredHom::Weight(h));
        }
        ok
    }

    pub fn session(&self, seed: &Word) -> Result<Session, StephenError> {
        Session::with_cap(&self.presentation, seed, self.vertex_cap)
    }

    /// Expands a session seeded by `seed` until `found` succeeds or the
    /// depth bound or saturation is reached.
    fn search(
        &self,
        seed: &Word,
        found: impl Fn(&Session) -> Option<Vec<PathWitness>>,
    ) -> Result<Certificate, StephenError> {
        let mut s = self.session(seed)?;
        loop {
            if let Some(paths) = found(&s) {
                return Ok(Certificate::positive(s.rounds_done(), paths));
            }
            if s.rounds_done() >= self.depth || s.is_saturated() {
                return Ok(Certificate::unknown(s.bound()));
            }
            s.round()?;
        }
    }

    fn refute(&self, words: &[&Word], refutes: impl Fn(&RegisteredHom) -> bool) -> Option<Certificate> {
        let h = self.homs.iter().find(|h| refutes(h))?;
        let images = words.iter().map(|w| (self.presentation.render(w), h.render_image(w))).collect();
        Some(Certificate::negative(0, Evidence::Image(ImageWitness { target: h.target().to_string(), images })))
    }

    /// `u ≤ v` in the natural order: `v` reads from the root to the
    /// terminal vertex of the session seeded by `u`.
    pub fn certify_leq(&self, u: &Word, v: &Word) -> Result<Certificate, StephenError> {
        check_word(&self.presentation, v)?;
        self.search(u, |s| {
            let p = s.witness(s.root(), v)?;
            (p.vertices.last() == Some(&s.terminal())).then(|| vec![p])
        })
    }

    pub fn certify_equal(&self, u: &Word, v: &Word) -> Result<Certificate, StephenError> {
        check_word(&self.presentation, u)?;
        check_word(&self.presentation, v)?;
        if let Some(c) = self.refute(&[u, v], |h| h.separates(u, v)) {
            return Ok(c);
        }
        let a = self.certify_leq(u, v)?;
        if !a.is_positive() {
            return Ok(a);
        }
        let b = self.certify_leq(v, u)?;
        if !b.is_positive() {
            return Ok(b);
        }
        let (Evidence::Paths(mut pa), Evidence::Paths(pb)) = (a.evidence, b.evidence) else { unreachable!() };
        pa.extend(pb);
        Ok(Certificate::positive(a.depth.max(b.depth), pa))
    }

    /// `w` reads out of the root of `SΓ(1)`.
    pub fn certify_right_invertible(&self, w: &Word) -> Result<Certificate, StephenError> {
        check_word(&self.presentation, w)?;
        if let Some(c) = self.refute(&[w], |h| h.refutes_right_invertible(w)) {
            return Ok(c);
        }
        self.search(&Word::empty(), |s| s.witness(s.root(), w).map(|p| vec![p]))
    }

    /// `w` reads both out of and into the root of `SΓ(1)`.
    pub fn certify_unit(&self, w: &Word) -> Result<Certificate, StephenError> {
        check_word(&self.presentation, w)?;
        if let Some(c) = self.refute(&[w], |h| h.refutes_unit(w)) {
            return Ok(c);
        }
        let inv = w.invert();
        self.search(&Word::empty(), |s| Some(vec![s.witness(s.root(), w)?, s.witness(s.root(), &inv)?]))
    }

    /// Deletes adjacent `x x'` pairs from a right invertible word; any
    /// other word is returned unchanged.
    pub fn lemma34_simplify(&self, w: &Word) -> Result<Word, StephenError> {
        if self.certify_right_invertible(w)?.is_positive() {
            Ok(w.free_reduce())
        } else {
            Ok(w.clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bicyclic() -> Presentation {
        Presentation::from_strs(Flavor::SpecialInverseMonoid, &["b"], &["b b'"]).unwrap()
    }

    fn w(p: &Presentation, s: &str) -> Word {
        p.parse_word(s).unwrap()
    }

    #[test]
    fn session_basics() {
        let p = bicyclic();
        assert_eq!(Session::new(&p, &Word::empty()).unwrap().vertex_count(), 1);
        assert_eq!(Session::new(&p, &w(&p, "b")).unwrap().vertex_count(), 2);
        let g = p.with_flavor(Flavor::Group);
        assert_eq!(Session::new(&g, &Word::empty()).unwrap_err(), StephenError::WrongFlavor(Flavor::Group));
    }

    #[test]
    fn bicyclic_ray() {
        let p = bicyclic();
        let mut s = Session::new(&p, &Word::empty()).unwrap();
        s.expand(3).unwrap();
        assert_eq!(s.vertex_count(), 4);
        assert_eq!(s.graph().edge_count(), 3);
        assert!(!s.is_saturated());
        assert!(s.read(&w(&p, "b b b")).is_some());
        assert!(s.read(&w(&p, "b'")).is_none());
    }

    #[test]
    fn z2_saturates() {
        let p = Presentation::from_strs(Flavor::Group, &["a"], &["a a"]).unwrap().group_as_inverse();
        let mut s = Session::new(&p, &Word::empty()).unwrap();
        s.expand(2).unwrap();
        assert!(s.is_saturated());
        assert_eq!(s.vertex_count(), 2);
        let before = s.graph();
        s.expand(3).unwrap();
        assert_eq!(s.graph(), before);
        assert_eq!(s.rounds_done(), 2);
        assert!(s.relators_close_everywhere());
    }

    #[test]
    fn vertex_cap() {
        let p = bicyclic();
        let mut s = Session::with_cap(&p, &Word::empty(), 3).unwrap();
        assert_eq!(s.expand(5), Err(StephenError::GraphTooLarge { vertices: 4, cap: 3 }));
    }

    #[test]
    fn leq_examples() {
        let p = Presentation::from_strs(Flavor::SpecialInverseMonoid, &["a", "b"], &["a b a' b'"]).unwrap();
        let c = Stephen::new(&p).unwrap().certify_leq(&w(&p, "a a' b"), &w(&p, "b")).unwrap();
        assert_eq!((c.verdict, c.depth), (Verdict::Positive, 0));

        let p = bicyclic();
        let st = Stephen::new(&p).unwrap();
        let c = st.certify_leq(&w(&p, "b' b"), &Word::empty()).unwrap();
        assert!(c.is_positive() && c.depth <= 2);
        for depth in [0, 3, 8] {
            let c = st.clone().with_depth(depth).certify_leq(&Word::empty(), &w(&p, "b' b")).unwrap();
            assert_eq!(c.verdict, Verdict::Unknown);
        }
    }

    #[test]
    fn right_invertible_examples() {
        let p = bicyclic();
        let mut st = Stephen::new(&p).unwrap();
        let c = st.certify_right_invertible(&w(&p, "b")).unwrap();
        assert_eq!((c.verdict, c.depth), (Verdict::Positive, 1));
        assert_eq!(st.certify_right_invertible(&Word::empty()).unwrap().depth, 0);
        assert_eq!(st.clone().with_depth(6).certify_right_invertible(&w(&p, "b'")).unwrap().verdict, Verdict::Unknown);
        assert!(st.register_bicyclic(&[w(&p, "b")]));
        let c = st.certify_right_invertible(&w(&p, "b'")).unwrap();
        assert_eq!(c.verdict, Verdict::Negative);
        assert_eq!(c.evidence.kind(), "homomorphic_image");
    }

    #[test]
    fn unit_and_equal() {
        let p = bicyclic();
        let mut st = Stephen::new(&p).unwrap();
        assert!(st.certify_unit(&Word::empty()).unwrap().is_positive());
        assert!(st.register_bicyclic(&[w(&p, "b")]));
        assert!(st.certify_unit(&w(&p, "b")).unwrap().is_negative());
        let u = w(&p, "b b'");
        assert!(st.certify_equal(&u, &Word::empty()).unwrap().is_positive());
        assert!(st.certify_equal(&u, &u).unwrap().is_positive());
        assert!(st.certify_equal(&w(&p, "b' b"), &Word::empty()).unwrap().is_negative());
    }

    #[test]
    fn registration_requires_relators_to_die() {
        let p = bicyclic();
        let mut st = Stephen::new(&p).unwrap();
        assert!(!st.register_bicyclic(&[w(&p, "b'")]));
        assert!(st.homomorphisms().is_empty());
        let q = p.with_relator(w(&p, "b")).unwrap();
        let mut st = Stephen::new(&q).unwrap();
        assert!(!st.register_weights(&[1]));
        assert!(st.homomorphisms().is_empty());
    }

    #[test]
    fn simplify() {
        let p = bicyclic();
        let st = Stephen::new(&p).unwrap().with_depth(6);
        assert_eq!(st.lemma34_simplify(&w(&p, "b b b' b")).unwrap(), w(&p, "b b"));
        let x = w(&p, "b' b b' b");
        assert_eq!(st.lemma34_simplify(&x).unwrap(), x);
    }
}
