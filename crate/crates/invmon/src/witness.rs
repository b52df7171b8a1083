//! A lazily evaluated infinite graph Ω for the units construction, used to
//! refute readability in `SΓ(1)`.
//!
//! Ω is a tree of zones hanging off a root. A vertex is named by the path
//! of zone attachments leading to it plus its position in the last zone,
//! so equal names mean equal vertices. Neighbours are computed on demand:
//!
//! * the root has an `x`-edge out to a fresh `Ω_x` for each
//!   `x ∈ {z, p0, …, pk}`;
//! * a `p_i`-zone is the free monoid Cayley graph on `A`, where every
//!   vertex has fresh `x`-zones going out, every non-root vertex has a
//!   fresh `p_i'`-zone coming in, and `d` either loops (`i = 0`) or jumps
//!   along the relator `r_i` (`i ≥ 1`);
//! * a `z`-zone is the Cayley graph of `G` with fresh `x`-zones going out,
//!   fresh `p_j'`-zones coming in at every vertex, fresh `z'`-zones coming
//!   in at the elements of `H`, and a `d`-loop everywhere;
//! * an `x'`-zone is a single vertex with fresh `y`-zones going out for
//!   every `y ≠ x`.
//!
//! If every relator closes at every vertex, there is a morphism
//! `SΓ(1) → Ω` fixing the root, so a word that cannot be read into the
//! root of Ω cannot be read into the root of `SΓ(1)` either.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::constructions::{build_units_presentation, ConstructionError};
use crate::groups::{FiniteGroup, Subgroup};
use crate::presentation::{Flavor, Presentation};
use crate::stephen::{Certificate, Evidence, RefutationTrace, TraceStep, Verdict};
use crate::words::{Letter, Word};

/// Default number of oracle calls allowed per query.
pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("exploration budget of {0} oracle calls exceeded")]
    BudgetExceeded(usize),
    #[error("refutation needs a passing local validation first")]
    PreconditionMissing,
    #[error("base relator `{0}` must be a positive word")]
    NonPositiveRelator(String),
    #[error("word uses a generator outside the presentation")]
    ForeignWord,
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// Which distinguished generator a primed zone hangs from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Marker {
    Z,
    P(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZoneKind {
    Root,
    PZone(usize),
    ZZone,
    Primed(Marker),
}

/// Position inside a zone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Local {
    Unit,
    /// A vertex of the free monoid Cayley graph: a word over `A`.
    Word(Vec<usize>),
    /// A group element index.
    Elem(usize),
}

/// A zone attachment: where in the parent zone it hangs, and its kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hop {
    pub at: Local,
    pub zone: ZoneKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LazyVertex {
    pub trail: Vec<Hop>,
    pub local: Local,
}

impl LazyVertex {
    pub fn root() -> LazyVertex {
        LazyVertex { trail: Vec::new(), local: Local::Unit }
    }

    pub fn zone(&self) -> ZoneKind {
        self.trail.last().map_or(ZoneKind::Root, |h| h.zone)
    }

    pub fn is_zone_root(&self) -> bool {
        match &self.local {
            Local::Unit => true,
            Local::Word(w) => w.is_empty(),
            Local::Elem(g) => *g == 0,
        }
    }

    fn parent(&self) -> LazyVertex {
        let mut trail = self.trail.clone();
        let hop = trail.pop().expect("zone root has a parent");
        LazyVertex { trail, local: hop.at }
    }

    fn child(&self, zone: ZoneKind) -> LazyVertex {
        let local = match zone {
            ZoneKind::Root | ZoneKind::Primed(_) => Local::Unit,
            ZoneKind::PZone(_) => Local::Word(Vec::new()),
            ZoneKind::ZZone => Local::Elem(0),
        };
        let mut trail = self.trail.clone();
        trail.push(Hop { at: self.local.clone(), zone });
        LazyVertex { trail, local }
    }

    fn moved(&self, local: Local) -> LazyVertex {
        LazyVertex { trail: self.trail.clone(), local }
    }
}

/// Toggles for the grammar; only used to build corrupted variants for
/// negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grammar {
    pub d_loops: bool,
}

impl Default for Grammar {
    fn default() -> Grammar {
        Grammar { d_loops: true }
    }
}

/// Ω for `G = Mon⟨A | r_1, …, r_k⟩` (finite) and `H = ⟨B⟩`.
#[derive(Clone, Debug)]
pub struct UnitsWitness {
    group: FiniteGroup,
    in_h: Vec<bool>,
    relators: Vec<Vec<usize>>,
    presentation: Presentation,
    grammar: Grammar,
}

impl UnitsWitness {
    /// `base` is the special monoid presentation of `G` over the same
    /// generator names as `group`; `b_names` generate `H`.
    pub fn new<S: AsRef<str>>(group: &FiniteGroup, base: &Presentation, b_names: &[S]) -> Result<UnitsWitness, WitnessError> {
        let base = base.with_flavor(Flavor::Monoid);
        let mut relators = Vec::new();
        for r in base.relators() {
            if r.letters().iter().any(|l| l.is_inverse()) {
                return Err(WitnessError::NonPositiveRelator(base.render(r)));
            }
            relators.push(r.letters().iter().map(|l| l.gen()).collect());
        }
        let presentation = build_units_presentation(&base, b_names)?.presentation;
        let b_words: Vec<Word> = b_names
            .iter()
            .map(|n| base.alphabet().parse_word(n.as_ref()).map_err(ConstructionError::from))
            .collect::<Result<_, _>>()?;
        let h = Subgroup::generated_by(group, &b_words);
        let mut in_h = vec![false; group.order()];
        for &x in h.elements() {
            in_h[x] = true;
        }
        Ok(UnitsWitness { group: group.clone(), in_h, relators, presentation, grammar: Grammar::default() })
    }

    pub fn with_grammar(mut self, grammar: Grammar) -> UnitsWitness {
        self.grammar = grammar;
        self
    }

    /// The presentation of `M` that Ω is built for.
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn root(&self) -> LazyVertex {
        LazyVertex::root()
    }

    fn n(&self) -> usize {
        self.group.gen_count()
    }

    fn k(&self) -> usize {
        self.relators.len()
    }

    fn p(&self, i: usize) -> usize {
        self.n() + i
    }

    fn z(&self) -> usize {
        self.n() + self.k() + 1
    }

    /// Classifies a generator of `M`.
    fn kind(&self, g: usize) -> Gen {
        if g < self.n() {
            Gen::A(g)
        } else if g <= self.n() + self.k() {
            Gen::Mark(Marker::P(g - self.n()))
        } else if g == self.z() {
            Gen::Mark(Marker::Z)
        } else {
            Gen::D
        }
    }

    fn zone_for(m: Marker) -> ZoneKind {
        match m {
            Marker::Z => ZoneKind::ZZone,
            Marker::P(i) => ZoneKind::PZone(i),
        }
    }

    /// The edge read as `l` from `v`: an out-edge for a generator, an
    /// in-edge traversed backwards for an inverse.
    pub fn neighbor(&self, v: &LazyVertex, l: Letter) -> Option<LazyVertex> {
        let out = !l.is_inverse();
        let gen = self.kind(l.gen());
        match (v.zone(), gen) {
            (_, Gen::Mark(m)) if out && !matches!(v.zone(), ZoneKind::Primed(x) if x == m) => Some(v.child(Self::zone_for(m))),
            (ZoneKind::Root, _) => None,

            (ZoneKind::Primed(x), Gen::Mark(m)) if out && x == m => Some(v.parent()),
            (ZoneKind::Primed(_), _) => None,

            (ZoneKind::PZone(_), Gen::A(a)) => {
                let Local::Word(w) = &v.local else { unreachable!() };
                if out {
                    let mut w = w.clone();
                    w.push(a);
                    Some(v.moved(Local::Word(w)))
                } else if w.last() == Some(&a) {
                    Some(v.moved(Local::Word(w[..w.len() - 1].to_vec())))
                } else {
                    None
                }
            }
            (ZoneKind::PZone(i), Gen::Mark(Marker::P(j))) if !out && j == i => {
                if v.is_zone_root() {
                    Some(v.parent())
                } else {
                    Some(v.child(ZoneKind::Primed(Marker::P(i))))
                }
            }
            (ZoneKind::PZone(_), Gen::Mark(_)) => None,
            (ZoneKind::PZone(0), Gen::D) => self.grammar.d_loops.then(|| v.clone()),
            (ZoneKind::PZone(i), Gen::D) => {
                let Local::Word(w) = &v.local else { unreachable!() };
                let r = &self.relators[i - 1];
                if out {
                    Some(v.moved(Local::Word([w.as_slice(), r.as_slice()].concat())))
                } else if w.ends_with(r) {
                    Some(v.moved(Local::Word(w[..w.len() - r.len()].to_vec())))
                } else {
                    None
                }
            }

            (ZoneKind::ZZone, Gen::A(a)) => {
                let Local::Elem(g) = v.local else { unreachable!() };
                let l = if out { Letter::pos(a) } else { Letter::neg(a) };
                Some(v.moved(Local::Elem(self.group.act(g, l))))
            }
            (ZoneKind::ZZone, Gen::Mark(Marker::P(j))) => Some(v.child(ZoneKind::Primed(Marker::P(j)))),
            (ZoneKind::ZZone, Gen::Mark(Marker::Z)) => {
                let Local::Elem(g) = v.local else { unreachable!() };
                if !self.in_h[g] {
                    None
                } else if g == 0 {
                    Some(v.parent())
                } else {
                    Some(v.child(ZoneKind::Primed(Marker::Z)))
                }
            }
            (ZoneKind::ZZone, Gen::D) => self.grammar.d_loops.then(|| v.clone()),
        }
    }

    /// Human readable vertex name, e.g. `p1[a a]/z{3}/p0'`.
    pub fn render(&self, v: &LazyVertex) -> String {
        let mut parts = Vec::new();
        for (i, hop) in v.trail.iter().enumerate() {
            let local = if i + 1 < v.trail.len() { &v.trail[i + 1].at } else { &v.local };
            parts.push(format!("{}{}", self.zone_name(hop.zone), self.local_name(local)));
        }
        if parts.is_empty() {
            "root".into()
        } else {
            parts.join("/")
        }
    }

    fn zone_name(&self, z: ZoneKind) -> String {
        let al = self.presentation.alphabet();
        match z {
            ZoneKind::Root => "root".into(),
            ZoneKind::PZone(i) => al.name(self.p(i)).into(),
            ZoneKind::ZZone => "z".into(),
            ZoneKind::Primed(Marker::Z) => "z'".into(),
            ZoneKind::Primed(Marker::P(i)) => format!("{}'", al.name(self.p(i))),
        }
    }

    fn local_name(&self, l: &Local) -> String {
        let al = self.presentation.alphabet();
        match l {
            Local::Unit => String::new(),
            Local::Word(w) => format!("[{}]", w.iter().map(|&a| al.name(a)).collect::<Vec<_>>().join(" ")),
            Local::Elem(g) => format!("{{{}}}", self.group.element(*g)),
        }
    }

    pub fn explorer(&self, budget: usize) -> Explorer<'_> {
        Explorer { graph: self, calls: 0, budget }
    }

    /// Checks at each sample that every relator of `M` closes and that the
    /// oracle is bi-deterministic on the ball of the given radius.
    pub fn validate_locally(&self, samples: &[LazyVertex], radius: usize, budget: usize) -> Result<ValidationReport, WitnessError> {
        let mut ex = self.explorer(budget);
        let mut vertices = Vec::with_capacity(samples.len());
        for s in samples {
            let mut failures = Vec::new();
            for r in self.presentation.relators() {
                if ex.read(s, r)?.as_ref() != Some(s) {
                    failures.push(format!("relator {} does not close", self.presentation.render(r)));
                }
            }
            let mut seen: HashSet<LazyVertex> = HashSet::from([s.clone()]);
            let mut queue = VecDeque::from([(s.clone(), 0usize)]);
            while let Some((u, dist)) = queue.pop_front() {
                for l in self.letters() {
                    let Some(w) = ex.step(&u, l)? else { continue };
                    if ex.step(&u, l)?.as_ref() != Some(&w) {
                        failures.push(format!("unstable answer at {} for {}", self.render(&u), self.presentation.alphabet().render_letter(l)));
                    }
                    if ex.step(&w, l.inverse())?.as_ref() != Some(&u) {
                        failures.push(format!(
                            "edge {} --{}--> {} has no matching reverse",
                            self.render(&u),
                            self.presentation.alphabet().render_letter(l),
                            self.render(&w)
                        ));
                    }
                    if dist < radius && seen.insert(w.clone()) {
                        queue.push_back((w, dist + 1));
                    }
                }
            }
            vertices.push(VertexReport { vertex: self.render(s), passed: failures.is_empty(), failures });
        }
        let passed = vertices.iter().all(|v| v.passed);
        Ok(ValidationReport { passed, radius, calls: ex.calls, vertices })
    }

    fn letters(&self) -> Vec<Letter> {
        (0..self.presentation.gens()).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect()
    }

    /// Vertices reached by seeded random walks from the root, the root first.
    pub fn sample_vertices(&self, count: usize, walk: usize, seed: u64) -> Vec<LazyVertex> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let letters = self.letters();
        let mut out = vec![self.root()];
        while out.len() < count {
            let mut v = self.root();
            for _ in 0..walk {
                let moves: Vec<LazyVertex> = letters.iter().filter_map(|&l| self.neighbor(&v, l)).collect();
                match moves.choose(&mut rng) {
                    Some(w) => v = w.clone(),
                    None => break,
                }
            }
            out.push(v);
        }
        out.truncate(count);
        out
    }

    /// Tries to read `v` into the root, i.e. `v⁻¹` out of it. Failure
    /// gives a negative certificate: `v` is not readable into the root of
    /// `SΓ(1)`, so `v` is not left invertible. Success proves nothing.
    pub fn refute_readable_into(&self, v: &Word, validation: &ValidationReport, budget: usize) -> Result<Certificate, WitnessError> {
        if !validation.passed {
            return Err(WitnessError::PreconditionMissing);
        }
        if v.max_gen().is_some_and(|g| g >= self.presentation.gens()) {
            return Err(WitnessError::ForeignWord);
        }
        let mut ex = self.explorer(budget);
        let inv = v.invert();
        let al = self.presentation.alphabet();
        let mut at = self.root();
        let mut steps = Vec::new();
        for &l in &inv {
            match ex.step(&at, l)? {
                Some(w) => {
                    steps.push(TraceStep { letter: al.render_letter(l), vertex: self.render(&w) });
                    at = w;
                }
                None => {
                    let trace = RefutationTrace { word: al.render(&inv), steps, missing: Some(al.render_letter(l)) };
                    return Ok(Certificate::negative(0, Evidence::Refutation(trace)));
                }
            }
        }
        let trace = RefutationTrace { word: al.render(&inv), steps, missing: None };
        Ok(Certificate { verdict: Verdict::Unknown, depth: 0, evidence: Evidence::Refutation(trace) })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gen {
    A(usize),
    Mark(Marker),
    D,
}

/// Budgeted access to the oracle.
pub struct Explorer<'a> {
    graph: &'a UnitsWitness,
    calls: usize,
    budget: usize,
}

impl Explorer<'_> {
    pub fn step(&mut self, v: &LazyVertex, l: Letter) -> Result<Option<LazyVertex>, WitnessError> {
        self.calls += 1;
        if self.calls > self.budget {
            return Err(WitnessError::BudgetExceeded(self.budget));
        }
        Ok(self.graph.neighbor(v, l))
    }

    pub fn read(&mut self, v: &LazyVertex, w: &Word) -> Result<Option<LazyVertex>, WitnessError> {
        let mut at = v.clone();
        for &l in w {
            match self.step(&at, l)? {
                Some(x) => at = x,
                None => return Ok(None),
            }
        }
        Ok(Some(at))
    }

    pub fn calls(&self) -> usize {
        self.calls
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexReport {
    pub vertex: String,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub radius: usize,
    pub calls: usize,
    pub vertices: Vec<VertexReport>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "{} {}", if v.passed { "ok  " } else { "FAIL" }, v.vertex)?;
            for m in &v.failures {
                writeln!(f, "     {m}")?;
            }
        }
        write!(f, "{} vertices, radius {}, {} oracle calls", self.vertices.len(), self.radius, self.calls)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Perm;

    fn z2() -> (FiniteGroup, Presentation) {
        let g = FiniteGroup::enumerate(&[("a", Perm::parse("(1 2)").unwrap())]).unwrap();
        let base = Presentation::from_strs(Flavor::Monoid, &["a"], &["a a"]).unwrap();
        (g, base)
    }

    fn omega() -> UnitsWitness {
        let (g, base) = z2();
        UnitsWitness::new(&g, &base, &["a"]).unwrap()
    }

    fn w(om: &UnitsWitness, s: &str) -> Word {
        om.presentation().parse_word(s).unwrap()
    }

    fn l(om: &UnitsWitness, s: &str) -> Letter {
        om.presentation().alphabet().parse_letter(s).unwrap()
    }

    #[test]
    fn pzone_root_has_no_a_in_edge() {
        let om = omega();
        for p in ["p0", "p1"] {
            let v = om.neighbor(&om.root(), l(&om, p)).unwrap();
            assert_eq!(om.neighbor(&v, l(&om, "a'")), None);
            assert!(om.neighbor(&v, l(&om, "a")).is_some());
        }
    }

    #[test]
    fn every_vertex_has_z_out_edge_into_zzone() {
        let om = omega();
        for v in om.sample_vertices(40, 8, 7) {
            let c = om.neighbor(&v, l(&om, "z")).unwrap();
            assert_eq!(c.zone(), ZoneKind::ZZone);
        }
    }

    #[test]
    fn zzone_for_whole_group_has_z_in_edges() {
        let om = omega();
        let zr = om.neighbor(&om.root(), l(&om, "z")).unwrap();
        let other = om.neighbor(&zr, l(&om, "a")).unwrap();
        assert_ne!(zr, other);
        assert_eq!(om.neighbor(&zr, l(&om, "z'")), Some(om.root()));
        let primed = om.neighbor(&other, l(&om, "z'")).unwrap();
        assert_eq!(primed.zone(), ZoneKind::Primed(Marker::Z));

        let (g, base) = z2();
        let trivial_h = UnitsWitness::new::<&str>(&g, &base, &[]).unwrap();
        let zr = trivial_h.neighbor(&trivial_h.root(), l(&om, "z")).unwrap();
        let other = trivial_h.neighbor(&zr, l(&om, "a")).unwrap();
        assert_eq!(trivial_h.neighbor(&other, l(&om, "z'")), None);
    }

    #[test]
    fn primed_zone_out_labels() {
        let om = omega();
        let pz = om.neighbor(&om.root(), l(&om, "p1")).unwrap();
        let deeper = om.neighbor(&pz, l(&om, "a")).unwrap();
        let primed = om.neighbor(&deeper, l(&om, "p1'")).unwrap();
        assert_eq!(primed.zone(), ZoneKind::Primed(Marker::P(1)));
        let labels: Vec<String> = om
            .letters()
            .into_iter()
            .filter(|&x| om.neighbor(&primed, x).is_some())
            .map(|x| om.presentation().alphabet().render_letter(x))
            .collect();
        assert_eq!(labels, ["p0", "p1", "z"]);
        // the p1-edge leads back to where the zone hangs
        assert_eq!(om.neighbor(&primed, l(&om, "p1")), Some(deeper));
    }

    #[test]
    fn pzone_d_edges() {
        let om = omega();
        let p1 = om.neighbor(&om.root(), l(&om, "p1")).unwrap();
        let end = om.neighbor(&p1, l(&om, "d")).unwrap();
        assert_eq!(end, om.explorer(100).read(&p1, &w(&om, "a a")).unwrap().unwrap());
        assert_eq!(om.neighbor(&p1, l(&om, "d'")), None);
        let p0 = om.neighbor(&om.root(), l(&om, "p0")).unwrap();
        assert_eq!(om.neighbor(&p0, l(&om, "d")), Some(p0));
    }

    #[test]
    fn validation_and_refutation() {
        let om = omega();
        let samples = om.sample_vertices(25, 10, 1);
        let report = om.validate_locally(&samples, 2, DEFAULT_BUDGET * 10).unwrap();
        assert!(report.passed, "{report}");

        let c = om.refute_readable_into(&w(&om, "a p0'"), &report, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.verdict, Verdict::Negative);
        let c = om.refute_readable_into(&Word::empty(), &report, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.verdict, Verdict::Unknown);
        let c = om.refute_readable_into(&w(&om, "z a z'"), &report, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.verdict, Verdict::Unknown);
    }

    #[test]
    fn corrupted_grammar_fails() {
        let om = omega().with_grammar(Grammar { d_loops: false });
        let report = om.validate_locally(&[om.root()], 1, DEFAULT_BUDGET).unwrap();
        assert!(!report.passed);
        assert_eq!(
            om.refute_readable_into(&Word::empty(), &report, DEFAULT_BUDGET).unwrap_err(),
            WitnessError::PreconditionMissing
        );
    }

    #[test]
    fn budget() {
        let om = omega();
        assert_eq!(om.validate_locally(&[om.root()], 3, 10).unwrap_err(), WitnessError::BudgetExceeded(10));
    }
}
