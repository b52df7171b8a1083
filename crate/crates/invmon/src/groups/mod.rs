//! Finite permutation groups and free-group subgroup membership.
//!
//! Points are written 1-based in cycle notation and stored 0-based.
//! Products apply the left factor first: `(g·h)(x) = h(g(x))`.

mod stallings;
mod subgroups;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::graph::{Edge, InverseGraph};
use crate::words::{Alphabet, Letter, Word, WordError};

pub use stallings::{stallings_membership, CoreGraph};
pub use subgroups::{all_subgroups, coset_union, lemma51_check, resolve_subgroup, setwise_stabiliser, CosetUnion, Lemma51Report, Subgroup};

/// Default bound on enumerated group orders.
pub const DEFAULT_ORDER_CAP: usize = 20_160;

/// Names that the constructions use for their own generators.
pub const RESERVED_NAMES: [&str; 3] = ["y", "z", "d"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("bad permutation `{text}`: {message}")]
    BadPermutation { text: String, message: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("generator name `{0}` is reserved")]
    ReservedName(String),
    #[error("undeclared generator `{0}`")]
    UndeclaredGenerator(String),
    #[error("relator `{0}` is not the identity in the group")]
    NotARelator(String),
    #[error("subgroup sweep needs |G| <= {cap}, got {order}")]
    SweepTooLarge { order: usize, cap: usize },
    #[error("Lemma check failed: {0}")]
    AssertionFailure(String),
    #[error(transparent)]
    Word(WordError),
}

impl From<WordError> for GroupError {
    fn from(e: WordError) -> GroupError {
        match e {
            WordError::UndeclaredGenerator(name) => GroupError::UndeclaredGenerator(name),
            other => GroupError::Word(other),
        }
    }
}

/// A permutation of `0..degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Option<Perm> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i as usize >= images.len() || std::mem::replace(&mut seen[i as usize], true) {
                return None;
            }
        }
        Some(Perm(images))
    }

    /// Parses cycle notation such as `(1 2)(3 4 5)`; `()` and `1` give the
    /// identity. The degree is the largest point mentioned.
    pub fn parse(text: &str) -> Result<Perm, GroupError> {
        let bad = |message: &str| GroupError::BadPermutation { text: text.to_string(), message: message.to_string() };
        let t = text.trim();
        if t == "1" || t.is_empty() {
            return Ok(Perm::identity(0));
        }
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else { return Err(bad("expected `(`")) };
            let Some(close) = body.find(')') else { return Err(bad("unclosed cycle")) };
            let points = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| match s.parse::<u32>() {
                    Ok(p) if p >= 1 => Ok(p - 1),
                    _ => Err(bad("points are positive integers")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            cycles.push(points);
            rest = body[close + 1..].trim_start();
        }
        let degree = cycles.iter().flatten().map(|&p| p as usize + 1).max().unwrap_or(0);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        for c in &cycles {
            for (i, &p) in c.iter().enumerate() {
                if std::mem::replace(&mut moved[p as usize], true) {
                    return Err(bad("point repeated"));
                }
                images[p as usize] = c[(i + 1) % c.len()];
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn padded(&self, degree: usize) -> Perm {
        let mut v = self.0.clone();
        v.extend(v.len() as u32..degree as u32);
        Perm(v)
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.0[x] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// An enumerated permutation group. Element 0 is the identity; elements are
/// listed in breadth-first order over the generators and their inverses,
/// each with a shortest word.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    alphabet: Alphabet,
    gen_perms: Vec<Perm>,
    gens: Vec<usize>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    words: Vec<Word>,
    right_gen: Vec<u32>,
}

impl FiniteGroup {
    pub fn enumerate<S: AsRef<str>>(gens: &[(S, Perm)]) -> Result<FiniteGroup, GroupError> {
        FiniteGroup::enumerate_capped(gens, DEFAULT_ORDER_CAP)
    }

    pub fn enumerate_capped<S: AsRef<str>>(gens: &[(S, Perm)], cap: usize) -> Result<FiniteGroup, GroupError> {
        for (name, _) in gens {
            if RESERVED_NAMES.contains(&name.as_ref()) {
                return Err(GroupError::ReservedName(name.as_ref().to_string()));
            }
        }
        let alphabet = Alphabet::new(gens.iter().map(|(n, _)| n.as_ref()))?;
        let degree = gens.iter().map(|(_, p)| p.degree()).max().unwrap_or(0);
        let gen_perms: Vec<Perm> = gens.iter().map(|(_, p)| p.padded(degree)).collect();
        let inverses: Vec<Perm> = gen_perms.iter().map(Perm::inverse).collect();

        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut words = vec![Word::empty()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for g in 0..gen_perms.len() {
                for (l, p) in [(Letter::pos(g), &gen_perms[g]), (Letter::neg(g), &inverses[g])] {
                    let v = elements[u].then(p);
                    if index.contains_key(&v) {
                        continue;
                    }
                    if elements.len() == cap {
                        return Err(GroupError::OrderCapExceeded { cap });
                    }
                    let mut w = words[u].clone();
                    w.push(l);
                    index.insert(v.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(v);
                    words.push(w);
                }
            }
        }
        let gens_idx = gen_perms.iter().map(|p| index[p]).collect();
        let mut right_gen = Vec::with_capacity(elements.len() * gen_perms.len());
        for e in &elements {
            for p in &gen_perms {
                right_gen.push(index[&e.then(p)] as u32);
            }
        }
        Ok(FiniteGroup { degree, alphabet, gen_perms, gens: gens_idx, elements, index, words, right_gen })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn gen_count(&self) -> usize {
        self.gen_perms.len()
    }

    /// Element index of generator `g`.
    pub fn gen(&self, g: usize) -> usize {
        self.gens[g]
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(&p.padded(self.degree)).copied()
    }

    /// A shortest word for element `i`.
    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].then(&self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// `u · x` for a generator letter.
    pub fn act(&self, u: usize, l: Letter) -> usize {
        if l.is_inverse() {
            self.index[&self.elements[u].then(&self.gen_perms[l.gen()].inverse())]
        } else {
            self.right_gen[u * self.gen_perms.len() + l.gen()] as usize
        }
    }

    pub fn eval(&self, w: &Word) -> usize {
        w.letters().iter().fold(0, |u, &l| self.act(u, l))
    }

    pub fn parse_element(&self, text: &str) -> Result<usize, GroupError> {
        Ok(self.eval(&self.alphabet.parse_word(text)?))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Vertices are elements, the root is the identity, and `u --a--> u·a`.
    pub fn cayley_graph(&self) -> InverseGraph {
        let n = self.gen_perms.len();
        let edges = (0..self.order()).flat_map(|u| (0..n).map(move |g| (u, g))).map(|(u, g)| Edge {
            source: u,
            gen: g,
            target: self.right_gen[u * n + g] as usize,
        });
        InverseGraph::folded_from_edges(n, self.order(), 0, edges).expect("right multiplication is a permutation")
    }
}

/// A parsed group file: permutation generators, optional relators checked
/// against the group, and an optional subgroup given by words.
#[derive(Clone, Debug)]
pub struct GroupFile {
    pub group: FiniteGroup,
    pub relators: Vec<Word>,
    pub subgroup: Option<Vec<Word>>,
}

/// Reads the `[permgens]` / `[relators]` / `[subgroup]` format.
pub fn parse_group_file(text: &str) -> Result<GroupFile, GroupError> {
    let mut section = "";
    let mut gens: Vec<(String, Perm)> = Vec::new();
    let mut relator_lines: Vec<(usize, String)> = Vec::new();
    let mut subgroup_lines: Option<Vec<(usize, String)>> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = match name.trim() {
                "permgens" => "permgens",
                "relators" => "relators",
                "subgroup" => {
                    subgroup_lines.get_or_insert_with(Vec::new);
                    "subgroup"
                }
                other => return Err(GroupError::Syntax { line: line_no, message: format!("unknown section [{other}]") }),
            };
            continue;
        }
        match section {
            "permgens" => {
                let Some((name, cycles)) = line.split_once('=') else {
                    return Err(GroupError::Syntax { line: line_no, message: "expected `name = cycles`".into() });
                };
                gens.push((name.trim().to_string(), Perm::parse(cycles)?));
            }
            "relators" => relator_lines.push((line_no, line.trim_end_matches("= 1").trim().to_string())),
            "subgroup" => subgroup_lines.as_mut().unwrap().push((line_no, line.to_string())),
            _ => return Err(GroupError::Syntax { line: line_no, message: "content before any section".into() }),
        }
    }
    let group = FiniteGroup::enumerate(&gens)?;
    let mut relators = Vec::new();
    for (_, text) in relator_lines {
        let w = group.alphabet().parse_word(&text)?;
        if group.eval(&w) != 0 {
            return Err(GroupError::NotARelator(text));
        }
        relators.push(w);
    }
    let subgroup = subgroup_lines
        .map(|lines| lines.iter().map(|(_, t)| group.alphabet().parse_word(t)).collect::<Result<Vec<_>, _>>())
        .transpose()?;
    Ok(GroupFile { group, relators, subgroup })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::automorphisms;

    fn s3() -> FiniteGroup {
        FiniteGroup::enumerate(&[("a", Perm::parse("(1 2)").unwrap()), ("b", Perm::parse("(1 2 3)").unwrap())]).unwrap()
    }

    #[test]
    fn perm_parse_and_display() {
        let p = Perm::parse("(1 2)(3 4 5)").unwrap();
        assert_eq!(p.degree(), 5);
        assert_eq!(p.to_string(), "(1 2)(3 4 5)");
        assert_eq!(Perm::parse("()").unwrap().to_string(), "()");
        assert!(Perm::parse("(1 1)").is_err());
        assert!(Perm::parse("(0 1)").is_err());
        assert!(Perm::parse("(1 2").is_err());
        let q = Perm::parse("(1 2 3)").unwrap();
        assert_eq!(q.then(&q.inverse()), Perm::identity(3));
        // Left factor acts first.
        let a = Perm::parse("(1 2)").unwrap().padded(3);
        assert_eq!(a.then(&q).image(0), 2);
    }

    #[test]
    fn enumeration_orders() {
        assert_eq!(s3().order(), 6);
        let d4 = FiniteGroup::enumerate(&[("r", Perm::parse("(1 2 3 4)").unwrap()), ("s", Perm::parse("(1 3)").unwrap())]).unwrap();
        assert_eq!(d4.order(), 8);
        let s4 = FiniteGroup::enumerate(&[("r", Perm::parse("(1 2 3 4)").unwrap()), ("s", Perm::parse("(1 2)").unwrap())]).unwrap();
        assert_eq!(s4.order(), 24);
        let trivial = FiniteGroup::enumerate::<&str>(&[]).unwrap();
        assert_eq!(trivial.order(), 1);
        assert_eq!(
            FiniteGroup::enumerate_capped(&[("r", Perm::parse("(1 2 3 4)").unwrap())], 3).unwrap_err(),
            GroupError::OrderCapExceeded { cap: 3 }
        );
        assert_eq!(
            FiniteGroup::enumerate(&[("z", Perm::parse("(1 2)").unwrap())]).unwrap_err(),
            GroupError::ReservedName("z".into())
        );
    }

    #[test]
    fn words_evaluate_to_their_elements() {
        let g = s3();
        for i in 0..g.order() {
            assert_eq!(g.eval(g.word(i)), i);
            assert_eq!(g.mul(i, g.inv(i)), 0);
        }
    }

    #[test]
    fn cayley_graphs() {
        let z2 = FiniteGroup::enumerate(&[("a", Perm::parse("(1 2)").unwrap())]).unwrap();
        let c = z2.cayley_graph();
        assert_eq!((c.vertex_count(), c.edge_count()), (2, 2));
        let c = s3().cayley_graph();
        assert_eq!((c.vertex_count(), c.edge_count()), (6, 12));
        assert_eq!(automorphisms(&c, 100).unwrap().order(), 6);
    }

    #[test]
    fn group_file() {
        let text = "# S3\n[permgens]\na = (1 2)\nb = (1 2 3)\n[relators]\na a\nb b b = 1\na b a b\n[subgroup]\na\n";
        let f = parse_group_file(text).unwrap();
        assert_eq!(f.group.order(), 6);
        assert_eq!(f.relators.len(), 3);
        assert_eq!(f.subgroup.unwrap().len(), 1);
        let bad = "[permgens]\na = (1 2)\n[relators]\na\n";
        assert_eq!(parse_group_file(bad).unwrap_err(), GroupError::NotARelator("a".into()));
        assert!(matches!(parse_group_file("a = (1 2)\n"), Err(GroupError::Syntax { line: 1, .. })));
    }
}
