//! Builders for the presentations and distinguished elements used in the
//! units and maximal-subgroup constructions.
//!
//! Relator families are emitted in a fixed order: by family, then by index,
//! then by generator order. Products whose factor order is immaterial are
//! taken in input order.

use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{Edge, InverseGraph, VertexId};
use crate::groups::{CosetUnion, FiniteGroup};
use crate::presentation::{Flavor, Presentation, PresentationDocument, PresentationError};
use crate::words::{Alphabet, Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("generator `{0}` has no involution relator `a ā`")]
    InvolutionMissing(String),
    #[error("`{0}` is not a generator of the base presentation")]
    BNotInA(String),
    #[error("generator name `{0}` clashes with a name the construction introduces")]
    NameClash(String),
    #[error("the representative set X is empty")]
    EmptyX,
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A built presentation with the homomorphisms known to respect it and the
/// distinguished words of the construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub presentation: Presentation,
    /// Images over `{b}` per generator.
    pub bicyclic: Option<Vec<Word>>,
    pub weights: Option<Vec<i64>>,
    pub distinguished: Vec<(String, Word)>,
}

impl Construction {
    fn new(presentation: Presentation) -> Construction {
        Construction { presentation, bicyclic: None, weights: None, distinguished: Vec::new() }
    }

    /// The presentation file, with `[bicyclic]` and `[weights]` sections
    /// for any attached homomorphism.
    pub fn document(&self) -> PresentationDocument {
        let al = self.presentation.alphabet();
        let b = Alphabet::new(["b"]).expect("single name");
        let bicyclic = self
            .bicyclic
            .iter()
            .flat_map(|imgs| imgs.iter().enumerate())
            .filter(|(_, w)| !w.is_empty())
            .map(|(g, w)| (al.name(g).to_string(), b.render(w)))
            .collect();
        let weights = self
            .weights
            .iter()
            .flat_map(|ws| ws.iter().enumerate())
            .filter(|(_, &w)| w != 0)
            .map(|(g, &w)| (al.name(g).to_string(), w))
            .collect();
        PresentationDocument { presentation: self.presentation.clone(), bicyclic, weights }
    }

    /// Generator list, relator count and distinguished words as JSON.
    pub fn manifest(&self) -> Value {
        let p = &self.presentation;
        let distinguished: serde_json::Map<String, Value> =
            self.distinguished.iter().map(|(k, w)| (k.clone(), Value::String(p.render(w)))).collect();
        json!({
            "generators": p.alphabet().names(),
            "relator_count": p.relators().len(),
            "relators": p.relators().iter().map(|r| p.render(r)).collect::<Vec<_>>(),
            "bicyclic": self.bicyclic.is_some(),
            "weights": self.weights.is_some(),
            "distinguished": distinguished,
        })
    }
}

fn letters(l: &[Letter]) -> Word {
    Word::from_letters(l.iter().copied())
}

/// `x w x'` for a single generator `x`.
fn conj(x: usize, w: &Word) -> Word {
    letters(&[Letter::pos(x)]).concat(w).concat(&letters(&[Letter::neg(x)]))
}

/// The fundamental idempotent `x b x' x b' x'`.
fn zb_relator(x: usize, b: &Word) -> Word {
    let u = conj(x, b);
    u.concat(&u.invert())
}

/// For every `a`, the `ā` with `a ā` among the relators (two-letter
/// positive relators), checked to be an involution.
pub fn infer_involution(base: &Presentation) -> Result<Vec<usize>, ConstructionError> {
    let n = base.gens();
    let mut bar = vec![usize::MAX; n];
    for r in base.relators() {
        if let [x, y] = r.letters() {
            if !x.is_inverse() && !y.is_inverse() && bar[x.gen()] == usize::MAX {
                bar[x.gen()] = y.gen();
            }
        }
    }
    for a in 0..n {
        let b = bar[a];
        let missing = if b == usize::MAX { Some(a) } else { (bar[b] != a).then_some(b) };
        if let Some(m) = missing {
            return Err(ConstructionError::InvolutionMissing(base.alphabet().name(m).to_string()));
        }
    }
    Ok(bar)
}

fn check_fresh(base: &Alphabet, names: &[String]) -> Result<(), ConstructionError> {
    for n in names {
        if base.contains(n) {
            return Err(ConstructionError::NameClash(n.clone()));
        }
    }
    Ok(())
}

/// The monoid whose group of units is the subgroup `H = ⟨B⟩` of the group
/// `G = Mon⟨A | r_1, …, r_k⟩`.
///
/// Generators: `A`, then `p0 … pk`, `z`, `d`. Relator families in order:
/// `p_i a p_i' p_i a' p_i'` (i outer, a inner), `p_i r_i d' p_i'`,
/// `p0 d p0'`, `z b z' z b' z'`, `z p0' p0 … pk' pk z'`.
///
/// The attached bicyclic map sends each `p_i` to `b`, `z` to `b b` and
/// everything else to `1`.
pub fn build_units_presentation<S: AsRef<str>>(base: &Presentation, b_names: &[S]) -> Result<Construction, ConstructionError> {
    infer_involution(base)?;
    let a = base.alphabet();
    let n = a.len();
    let k = base.relators().len();
    let mut b_gens = Vec::with_capacity(b_names.len());
    for name in b_names {
        b_gens.push(a.gen(name.as_ref()).ok_or_else(|| ConstructionError::BNotInA(name.as_ref().to_string()))?);
    }
    let p_names: Vec<String> = (0..=k).map(|i| format!("p{i}")).collect();
    let mut extra = p_names.clone();
    extra.push("z".into());
    extra.push("d".into());
    check_fresh(a, &extra)?;

    let mut alphabet = a.clone();
    for name in &extra {
        alphabet.push(name)?;
    }
    let p = |i: usize| n + i;
    let z = n + k + 1;
    let d = n + k + 2;

    let mut relators = Vec::new();
    for i in 0..=k {
        for g in 0..n {
            relators.push(zb_relator(p(i), &letters(&[Letter::pos(g)])));
        }
    }
    for (i, r) in base.relators().iter().enumerate() {
        let body = r.concat(&letters(&[Letter::neg(d)]));
        relators.push(conj(p(i + 1), &body));
    }
    relators.push(conj(p(0), &letters(&[Letter::pos(d)])));
    for &g in &b_gens {
        relators.push(zb_relator(z, &letters(&[Letter::pos(g)])));
    }
    let product: Word = (0..=k).flat_map(|i| [Letter::neg(p(i)), Letter::pos(p(i))]).collect();
    relators.push(conj(z, &product));

    let presentation = Presentation::new(alphabet, relators, Flavor::SpecialInverseMonoid)?;
    let mut images = vec![Word::empty(); presentation.gens()];
    for i in 0..=k {
        images[p(i)] = letters(&[Letter::pos(0)]);
    }
    images[z] = letters(&[Letter::pos(0), Letter::pos(0)]);
    let mut c = Construction::new(presentation);
    c.bicyclic = Some(images);
    Ok(c)
}

/// The auxiliary monoid `N` with generators `p0 … pk`, `z` and relators
/// `p_i p_i'`, `z z'`, `z p0' p0 … pk' pk z'`. Carries the bicyclic map
/// `p_i ↦ b`, `z ↦ b b`.
pub fn build_n(k: usize) -> Construction {
    let mut alphabet = Alphabet::default();
    for i in 0..=k {
        alphabet.push(&format!("p{i}")).expect("fresh name");
    }
    let z = alphabet.push("z").expect("fresh name");
    let mut relators: Vec<Word> = (0..=k).map(|i| letters(&[Letter::pos(i), Letter::neg(i)])).collect();
    relators.push(letters(&[Letter::pos(z), Letter::neg(z)]));
    let product: Word = (0..=k).flat_map(|i| [Letter::neg(i), Letter::pos(i)]).collect();
    relators.push(conj(z, &product));
    let presentation = Presentation::new(alphabet, relators, Flavor::SpecialInverseMonoid).expect("well formed");
    let mut images = vec![letters(&[Letter::pos(0)]); k + 1];
    images.push(letters(&[Letter::pos(0), Letter::pos(0)]));
    let mut c = Construction::new(presentation);
    c.bicyclic = Some(images);
    c
}

/// `Inv⟨A, y, z | R, a a' = a' a = 1, z b z' z b' z' = y b y' y b' y' = 1⟩`
/// for a group presentation `⟨A | R⟩` and words `B` over `A`.
///
/// Generators: `A`, then `y`, `z`. Carries the weights `A ↦ 0`, `y, z ↦ 1`.
pub fn build_stabiliser_monoid(group: &Presentation, b_words: &[Word]) -> Result<Construction, ConstructionError> {
    let a = group.alphabet();
    check_fresh(a, &["y".to_string(), "z".to_string()])?;
    let n = a.len();
    for w in b_words {
        if w.max_gen().is_some_and(|g| g >= n) {
            return Err(ConstructionError::Presentation(PresentationError::ForeignRelator(0)));
        }
    }
    let mut alphabet = a.clone();
    let y = alphabet.push("y")?;
    let z = alphabet.push("z")?;
    let mut relators = group.relators().to_vec();
    for g in 0..n {
        relators.push(letters(&[Letter::pos(g), Letter::neg(g)]));
        relators.push(letters(&[Letter::neg(g), Letter::pos(g)]));
    }
    for b in b_words {
        relators.push(zb_relator(z, b));
        relators.push(zb_relator(y, b));
    }
    let presentation = Presentation::new(alphabet, relators, Flavor::SpecialInverseMonoid)?;
    let mut weights = vec![0; n];
    weights.extend([1, 1]);
    let mut c = Construction::new(presentation);
    c.weights = Some(weights);
    Ok(c)
}

/// `e = ∏_{x ∈ X} x z' z y' y x'` in input order, over the alphabet of a
/// stabiliser monoid (which must contain `y` and `z`).
pub fn build_idempotent_e(monoid: &Presentation, x: &[Word]) -> Result<Word, ConstructionError> {
    if x.is_empty() {
        return Err(ConstructionError::EmptyX);
    }
    let al = monoid.alphabet();
    let y = al.gen("y").ok_or_else(|| WordError::UndeclaredGenerator("y".into()))?;
    let z = al.gen("z").ok_or_else(|| WordError::UndeclaredGenerator("z".into()))?;
    let core = letters(&[Letter::neg(z), Letter::pos(z), Letter::neg(y), Letter::pos(y)]);
    Ok(x.iter().fold(Word::empty(), |e, w| e.concat(w).concat(&core).concat(&w.invert())))
}

/// The Cayley graph of `G` with, for every vertex of `XH`, a fresh vertex
/// sending a `y`-edge into it and another sending a `z`-edge into it.
#[derive(Clone, Debug)]
pub struct MarkedOmega {
    pub graph: InverseGraph,
    /// Group generators, then `y`, `z`.
    pub alphabet: Alphabet,
    /// `(group vertex, y-marker, z-marker)`.
    pub markers: Vec<(VertexId, VertexId, VertexId)>,
}

impl MarkedOmega {
    pub fn group_vertices(&self) -> usize {
        self.graph.vertex_count() - 2 * self.markers.len()
    }
}

pub fn build_marked_omega(g: &FiniteGroup, xh: &CosetUnion) -> MarkedOmega {
    let n = g.gen_count();
    let (y, z) = (n, n + 1);
    let mut alphabet = g.alphabet().clone();
    alphabet.push("y").expect("y is reserved in group alphabets");
    alphabet.push("z").expect("z is reserved in group alphabets");
    let cayley = g.cayley_graph();
    let mut edges = cayley.edges();
    let mut next = g.order();
    let mut markers = Vec::new();
    for &v in &xh.set {
        edges.push(Edge { source: next, gen: y, target: v });
        edges.push(Edge { source: next + 1, gen: z, target: v });
        markers.push((v, next, next + 1));
        next += 2;
    }
    let graph = InverseGraph::folded_from_edges(n + 2, next, g.identity(), edges).expect("markers are fresh sources");
    MarkedOmega { graph, alphabet, markers }
}

/// HNN extension: adds generator `t` and relators `t u t' v'`.
pub fn build_hnn(base: &Presentation, assoc: &[(Word, Word)], t_name: &str) -> Result<Presentation, ConstructionError> {
    check_fresh(base.alphabet(), &[t_name.to_string()])?;
    let mut alphabet = base.alphabet().clone();
    let t = alphabet.push(t_name)?;
    let mut relators = base.relators().to_vec();
    for (u, v) in assoc {
        relators.push(conj(t, u).concat(&v.invert()));
    }
    Ok(Presentation::new(alphabet, relators, Flavor::Group)?)
}

/// The finitely presented monoid with a non-finitely generated maximal
/// subgroup, and its idempotent `e = (z' z y' y)(t z' z y' y t')`.
pub fn build_moldavanskii() -> (Construction, Word) {
    let base = Presentation::from_strs(Flavor::Group, &["a", "b", "q"], &["a q a' q'", "b q b' q'"]).expect("fixed text");
    let al = base.alphabet().clone();
    let w = |s: &str| al.parse_word(s).expect("fixed text");
    let g = build_hnn(&base, &[(w("a"), w("a")), (w("b"), w("q b"))], "t").expect("t is fresh");
    let b_words = [w("a"), w("a'"), w("b"), w("b'")];
    let mut c = build_stabiliser_monoid(&g, &b_words).expect("y, z are fresh");
    let t = g.alphabet().gen("t").expect("just added");
    let e = build_idempotent_e(&c.presentation, &[Word::empty(), letters(&[Letter::pos(t)])]).expect("X is nonempty");
    c.distinguished.push(("e".into(), e.clone()));
    (c, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{resolve_subgroup, Perm, Subgroup};
    use crate::presentation::parse_document;
    use crate::stephen::{bicyclic_check, weight_check};

    fn z2_base() -> Presentation {
        Presentation::from_strs(Flavor::Monoid, &["a"], &["a a"]).unwrap()
    }

    #[test]
    fn units_z2_instance() {
        let c = build_units_presentation(&z2_base(), &["a"]).unwrap();
        let p = &c.presentation;
        assert_eq!(p.alphabet().names(), ["a", "p0", "p1", "z", "d"]);
        let text: Vec<String> = p.relators().iter().map(|r| p.render(r)).collect();
        assert_eq!(
            text,
            [
                "p0 a p0' p0 a' p0'",
                "p1 a p1' p1 a' p1'",
                "p1 a a d' p1'",
                "p0 d p0'",
                "z a z' z a' z'",
                "z p0' p0 p1' p1 z'",
            ]
        );
        assert!(bicyclic_check(p, c.bicyclic.as_ref().unwrap()));
    }

    #[test]
    fn units_errors() {
        let bad = Presentation::from_strs(Flavor::Monoid, &["a", "c"], &["a c", "a a a"]).unwrap();
        assert_eq!(build_units_presentation(&bad, &["a"]).unwrap_err(), ConstructionError::InvolutionMissing("c".into()));
        assert_eq!(build_units_presentation(&z2_base(), &["x"]).unwrap_err(), ConstructionError::BNotInA("x".into()));
        let clash = Presentation::from_strs(Flavor::Monoid, &["d"], &["d d"]).unwrap();
        assert_eq!(build_units_presentation::<&str>(&clash, &[]).unwrap_err(), ConstructionError::NameClash("d".into()));
        let c = build_units_presentation::<&str>(&z2_base(), &[]).unwrap();
        assert_eq!(c.presentation.relators().len(), 5);
    }

    #[test]
    fn n_builder() {
        for k in 0..=4 {
            let c = build_n(k);
            assert_eq!(c.presentation.relators().len(), k + 3);
            assert!(bicyclic_check(&c.presentation, c.bicyclic.as_ref().unwrap()));
        }
        let c = build_n(0);
        let text: Vec<String> = c.presentation.relators().iter().map(|r| c.presentation.render(r)).collect();
        assert_eq!(text, ["p0 p0'", "z z'", "z p0' p0 z'"]);
    }

    #[test]
    fn stabiliser_monoid_counts() {
        let g = Presentation::from_strs(Flavor::Group, &["a", "b"], &["a a", "b b b", "a b a b"]).unwrap();
        let al = g.alphabet().clone();
        let c = build_stabiliser_monoid(&g, &[al.parse_word("a").unwrap()]).unwrap();
        assert_eq!(c.presentation.gens(), 4);
        assert_eq!(c.presentation.relators().len(), 3 + 4 + 2);
        assert!(weight_check(&c.presentation, c.weights.as_ref().unwrap()));
        let absorbed = c.presentation.absorb_all_idempotents();
        assert_eq!(absorbed.relators().len(), 3);

        let free = Presentation::from_strs(Flavor::Group, &["a"], &[]).unwrap();
        let c = build_stabiliser_monoid(&free, &[]).unwrap();
        assert_eq!(c.presentation.absorb_all_idempotents().relators().len(), 1);

        let clash = Presentation::from_strs(Flavor::Group, &["y"], &[]).unwrap();
        assert_eq!(build_stabiliser_monoid(&clash, &[]).unwrap_err(), ConstructionError::NameClash("y".into()));
    }

    #[test]
    fn idempotent_e() {
        let g = Presentation::from_strs(Flavor::Group, &["t"], &[]).unwrap();
        let m = build_stabiliser_monoid(&g, &[]).unwrap().presentation;
        let e = build_idempotent_e(&m, &[Word::empty()]).unwrap();
        assert_eq!(m.render(&e), "z' z y' y");
        let e = build_idempotent_e(&m, &[Word::empty(), m.parse_word("t").unwrap()]).unwrap();
        assert_eq!(m.render(&e), "z' z y' y t z' z y' y t'");
        assert!(e.is_fundamental_idempotent());
        assert_eq!(build_idempotent_e(&m, &[]).unwrap_err(), ConstructionError::EmptyX);
    }

    #[test]
    fn moldavanskii() {
        let (c, e) = build_moldavanskii();
        let p = &c.presentation;
        assert_eq!(p.alphabet().names(), ["a", "b", "q", "t", "y", "z"]);
        assert_eq!(p.relators().len(), 20);
        assert_eq!(p.render(&p.relators()[2]), "t a t' a'");
        assert_eq!(p.render(&p.relators()[3]), "t b t' b' q'");
        assert!(p.relators()[12..].iter().all(Word::is_fundamental_idempotent));
        assert_eq!(p.render(&e), "z' z y' y t z' z y' y t'");
        assert!(weight_check(p, c.weights.as_ref().unwrap()));
    }

    #[test]
    fn hnn() {
        let base = Presentation::from_strs(Flavor::Group, &["a"], &[]).unwrap();
        let g = build_hnn(&base, &[], "t").unwrap();
        assert_eq!((g.gens(), g.relators().len()), (2, 0));
        let a = base.parse_word("a").unwrap();
        let g = build_hnn(&base, &[(a.clone(), a)], "t").unwrap();
        assert_eq!(g.render(&g.relators()[0]), "t a t' a'");
        assert_eq!(build_hnn(&base, &[], "a").unwrap_err(), ConstructionError::NameClash("a".into()));
    }

    #[test]
    fn documents_round_trip() {
        for c in [build_units_presentation(&z2_base(), &["a"]).unwrap(), build_n(2), build_moldavanskii().0] {
            let doc = c.document();
            let back = parse_document(&doc.to_text()).unwrap();
            assert_eq!(back, doc);
        }
    }

    #[test]
    fn marked_omega() {
        let g = FiniteGroup::enumerate(&[("a", Perm::parse("(1 2)").unwrap()), ("b", Perm::parse("(1 2 3)").unwrap())]).unwrap();
        let h = resolve_subgroup(&g, &["a"]).unwrap();
        let xh = CosetUnion::from_elements(&g, &h, &[0]);
        let om = build_marked_omega(&g, &xh);
        assert_eq!(om.graph.vertex_count(), 6 + 4);
        assert!(om.graph.is_bideterministic());
        let all = CosetUnion::from_elements(&g, &Subgroup::trivial(), &(0..6).collect::<Vec<_>>());
        assert_eq!(build_marked_omega(&g, &all).group_vertices(), 6);
    }
}
