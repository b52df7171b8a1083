//! Subgroups, unions of left cosets and their setwise stabilisers.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use super::{FiniteGroup, GroupError};
use crate::words::Word;

/// Subgroup sweeps only run on groups up to this order.
pub const SWEEP_ORDER_CAP: usize = 24;

/// A subgroup as a sorted element list, with words for a generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
    generators: Vec<Word>,
}

impl Subgroup {
    /// The least subgroup containing the images of `words`.
    pub fn generated_by(g: &FiniteGroup, words: &[Word]) -> Subgroup {
        let seeds: Vec<usize> = words.iter().map(|w| g.eval(w)).collect();
        Subgroup { elements: closure(g, &seeds), generators: words.to_vec() }
    }

    /// Wraps an element set already known to be a subgroup.
    fn from_closed(g: &FiniteGroup, elements: Vec<usize>) -> Subgroup {
        let generators = generating_words(g, &elements);
        Subgroup { elements, generators }
    }

    pub fn trivial() -> Subgroup {
        Subgroup { elements: vec![0], generators: Vec::new() }
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        Subgroup::from_closed(g, (0..g.order()).collect())
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Closed under products and inverses, and contains the identity.
    pub fn is_closed(&self, g: &FiniteGroup) -> bool {
        self.contains(0)
            && self.elements.iter().all(|&a| self.contains(g.inv(a)) && self.elements.iter().all(|&b| self.contains(g.mul(a, b))))
    }

    /// Largest element order in the subgroup.
    pub fn exponent_witness(&self, g: &FiniteGroup) -> usize {
        self.elements.iter().map(|&x| g.element_order(x)).max().unwrap_or(1)
    }
}

/// Sorted closure of `seeds` under right multiplication, from the identity.
fn closure(g: &FiniteGroup, seeds: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut out = vec![0];
    while let Some(x) = queue.pop_front() {
        for &s in seeds {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Greedy generating set: scan elements in order and keep each one not
/// already generated.
fn generating_words(g: &FiniteGroup, elements: &[usize]) -> Vec<Word> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut current: HashSet<usize> = HashSet::from([0]);
    for &x in elements {
        if !current.contains(&x) {
            chosen.push(x);
            current = closure(g, &chosen).into_iter().collect();
        }
    }
    chosen.iter().map(|&x| g.word(x).clone()).collect()
}

/// Parses subgroup generators given as words in the group's generator
/// names and takes their closure.
pub fn resolve_subgroup<S: AsRef<str>>(g: &FiniteGroup, words: &[S]) -> Result<Subgroup, GroupError> {
    let parsed = words.iter().map(|w| g.alphabet().parse_word(w.as_ref())).collect::<Result<Vec<_>, _>>()?;
    Ok(Subgroup::generated_by(g, &parsed))
}

/// The set `XH`, kept with its ingredients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetUnion {
    pub subgroup: Subgroup,
    pub representatives: Vec<usize>,
    pub set: Vec<usize>,
}

impl CosetUnion {
    pub fn from_elements(g: &FiniteGroup, h: &Subgroup, reps: &[usize]) -> CosetUnion {
        let set: BTreeSet<usize> = reps.iter().flat_map(|&x| h.elements().iter().map(move |&k| g.mul(x, k))).collect();
        CosetUnion { subgroup: h.clone(), representatives: reps.to_vec(), set: set.into_iter().collect() }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }
}

/// `XH` for representatives given as words.
pub fn coset_union(g: &FiniteGroup, h: &Subgroup, x_words: &[Word]) -> CosetUnion {
    let reps: Vec<usize> = x_words.iter().map(|w| g.eval(w)).collect();
    CosetUnion::from_elements(g, h, &reps)
}

/// `{ k : k·s = s }` under left multiplication, by brute force.
pub fn setwise_stabiliser(g: &FiniteGroup, s: &[usize]) -> Subgroup {
    let set: HashSet<usize> = s.iter().copied().collect();
    let elements: Vec<usize> = (0..g.order()).filter(|&k| set.iter().all(|&x| set.contains(&g.mul(k, x)))).collect();
    Subgroup::from_closed(g, elements)
}

/// Every subgroup, by repeatedly adjoining one element to a known
/// subgroup. Ordered by size, then by element list.
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>, GroupError> {
    if g.order() > SWEEP_ORDER_CAP {
        return Err(GroupError::SweepTooLarge { order: g.order(), cap: SWEEP_ORDER_CAP });
    }
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::from([vec![0]]);
    let mut frontier = vec![vec![0usize]];
    while let Some(s) = frontier.pop() {
        for x in 0..g.order() {
            if s.binary_search(&x).is_ok() {
                continue;
            }
            let mut seeds = s.clone();
            seeds.push(x);
            let t = closure(g, &seeds);
            if found.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    let mut list: Vec<Vec<usize>> = found.into_iter().collect();
    list.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(list.into_iter().map(|e| Subgroup::from_closed(g, e)).collect())
}

/// The stabiliser of `K ∪ tK` compared with `K ∩ tKt⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma51Report {
    pub k_order: usize,
    pub stabiliser_order: usize,
    pub intersection_order: usize,
    /// `|S| / |K ∩ tKt⁻¹|`.
    pub index: usize,
    /// Whether `K ∩ tKt` is empty.
    pub disjoint: bool,
}

/// Computes the stabiliser `S` of `K ∪ tK` and `I = K ∩ tKt⁻¹`, and checks
/// that `I ≤ S` with index 1 or 2, and index 1 when `K ∩ tKt` is empty.
pub fn lemma51_check(g: &FiniteGroup, k: &Subgroup, t: usize) -> Result<Lemma51Report, GroupError> {
    let ti = g.inv(t);
    let mut union: Vec<usize> = k.elements().to_vec();
    union.extend(k.elements().iter().map(|&x| g.mul(t, x)));
    union.sort_unstable();
    union.dedup();
    let s = setwise_stabiliser(g, &union);
    let inter: Vec<usize> = k.elements().iter().copied().filter(|&x| k.contains(g.mul(g.mul(ti, x), t))).collect();
    let disjoint = !k.elements().iter().any(|&x| k.contains(g.mul(g.mul(t, x), t)));
    let fail = |m: String| Err(GroupError::AssertionFailure(m));
    if !inter.iter().all(|&x| s.contains(x)) {
        return fail("K ∩ tKt⁻¹ is not inside the stabiliser".into());
    }
    if !s.order().is_multiple_of(inter.len()) {
        return fail("intersection order does not divide stabiliser order".into());
    }
    let index = s.order() / inter.len();
    if index > 2 {
        return fail(format!("index {index} exceeds 2"));
    }
    if disjoint && index != 1 {
        return fail("index 2 although K ∩ tKt is empty".into());
    }
    Ok(Lemma51Report { k_order: k.order(), stabiliser_order: s.order(), intersection_order: inter.len(), index, disjoint })
}
