//! Presentations and their line-oriented text format.
//!
//! ```text
//! [flavor] inverse
//! [generators] b
//! [relators]
//! b b'          # "= 1" may be appended
//! ```
//!
//! Two optional sections declare homomorphisms that the certificate engine
//! may use for negative answers: `[bicyclic]` with lines `gen = b b'` and
//! `[weights]` with lines `gen = 3`.

use std::fmt;

use thiserror::Error;

use crate::words::{Alphabet, Letter, Word, WordError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    SpecialInverseMonoid,
    Group,
    Monoid,
}

impl Flavor {
    pub fn keyword(self) -> &'static str {
        match self {
            Flavor::SpecialInverseMonoid => "inverse",
            Flavor::Group => "group",
            Flavor::Monoid => "monoid",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Flavor> {
        match s {
            "inverse" => Some(Flavor::SpecialInverseMonoid),
            "group" => Some(Flavor::Group),
            "monoid" => Some(Flavor::Monoid),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: undeclared generator `{name}`")]
    UndeclaredGenerator { line: usize, name: String },
    #[error("line {line}: empty relator")]
    EmptyRelator { line: usize },
    #[error("relator {0} is not a fundamental idempotent")]
    NotFundamentalIdempotent(usize),
    #[error("relator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("idempotent and target relator must differ")]
    SameIndex,
    #[error("relator {0} uses a generator outside the alphabet")]
    ForeignRelator(usize),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Generators, relator words and a flavor tag. For the inverse flavor every
/// relator `r` stands for the relation `r = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
    flavor: Flavor,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>, flavor: Flavor) -> Result<Presentation, PresentationError> {
        for (i, r) in relators.iter().enumerate() {
            if r.is_empty() {
                return Err(PresentationError::EmptyRelator { line: 0 });
            }
            if r.max_gen().is_some_and(|g| g >= alphabet.len()) {
                return Err(PresentationError::ForeignRelator(i));
            }
        }
        Ok(Presentation { alphabet, relators, flavor })
    }

    pub fn inverse(alphabet: Alphabet, relators: Vec<Word>) -> Result<Presentation, PresentationError> {
        Presentation::new(alphabet, relators, Flavor::SpecialInverseMonoid)
    }

    /// Convenience constructor from generator names and relator texts.
    pub fn from_strs(flavor: Flavor, gens: &[&str], relators: &[&str]) -> Result<Presentation, PresentationError> {
        let alphabet = Alphabet::new(gens)?;
        let relators = relators.iter().map(|r| alphabet.parse_word(r)).collect::<Result<Vec<_>, _>>()?;
        Presentation::new(alphabet, relators, flavor)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn gens(&self) -> usize {
        self.alphabet.len()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        self.alphabet.parse_word(text)
    }

    pub fn render(&self, word: &Word) -> String {
        self.alphabet.render(word)
    }

    pub fn with_flavor(&self, flavor: Flavor) -> Presentation {
        Presentation { flavor, ..self.clone() }
    }

    /// The special inverse monoid presenting the same group: the relators
    /// plus `x x'` and `x' x` for every generator `x`.
    pub fn group_as_inverse(&self) -> Presentation {
        let mut relators = self.relators.clone();
        for g in 0..self.gens() {
            relators.push(Word::from_letters([Letter::pos(g), Letter::neg(g)]));
            relators.push(Word::from_letters([Letter::neg(g), Letter::pos(g)]));
        }
        Presentation { alphabet: self.alphabet.clone(), relators, flavor: Flavor::SpecialInverseMonoid }
    }

    /// Appends a relator (must be nonempty and over this alphabet).
    pub fn with_relator(&self, r: Word) -> Result<Presentation, PresentationError> {
        let mut relators = self.relators.clone();
        relators.push(r);
        Presentation::new(self.alphabet.clone(), relators, self.flavor)
    }

    /// Replaces relator `target` by `e · r_target` and deletes the
    /// fundamental idempotent relator `e`. The presented inverse monoid is
    /// unchanged.
    pub fn absorb_idempotent_relator(&self, e_index: usize, target_index: usize) -> Result<Presentation, PresentationError> {
        let n = self.relators.len();
        if e_index >= n {
            return Err(PresentationError::IndexOutOfRange(e_index));
        }
        if target_index >= n {
            return Err(PresentationError::IndexOutOfRange(target_index));
        }
        if e_index == target_index {
            return Err(PresentationError::SameIndex);
        }
        let e = &self.relators[e_index];
        if !e.is_fundamental_idempotent() {
            return Err(PresentationError::NotFundamentalIdempotent(e_index));
        }
        let mut relators = Vec::with_capacity(n - 1);
        for (i, r) in self.relators.iter().enumerate() {
            if i == e_index {
                continue;
            }
            if i == target_index {
                relators.push(e.concat(r));
            } else {
                relators.push(r.clone());
            }
        }
        Ok(Presentation { relators, ..self.clone() })
    }

    /// Absorbs fundamental idempotent relators until none is left beside a
    /// non-idempotent one. Idempotents are folded into the first
    /// non-idempotent relator; if every relator is idempotent they collapse
    /// into the last one.
    pub fn absorb_all_idempotents(&self) -> Presentation {
        let mut p = self.clone();
        loop {
            let n = p.relators.len();
            if n <= 1 {
                return p;
            }
            let Some(e) = p.relators.iter().position(|r| r.is_fundamental_idempotent()) else {
                return p;
            };
            let target = p
                .relators
                .iter()
                .position(|r| !r.is_fundamental_idempotent())
                .unwrap_or(if e == n - 1 { n - 2 } else { n - 1 });
            p = p.absorb_idempotent_relator(e, target).expect("indices checked");
        }
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[flavor] {}", self.flavor.keyword())?;
        writeln!(f, "[generators] {}", self.alphabet.names().join(" "))?;
        writeln!(f, "[relators]")?;
        for r in &self.relators {
            writeln!(f, "{}", self.alphabet.render(r))?;
        }
        Ok(())
    }
}

/// A presentation file: the presentation plus any homomorphism
/// declarations it carries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationDocument {
    pub presentation: Presentation,
    /// Generator name and image word over `{b}`.
    pub bicyclic: Vec<(String, String)>,
    pub weights: Vec<(String, i64)>,
}

impl PresentationDocument {
    pub fn bare(presentation: Presentation) -> PresentationDocument {
        PresentationDocument { presentation, bicyclic: Vec::new(), weights: Vec::new() }
    }

    /// Bicyclic images indexed by generator, unlisted generators mapping to
    /// `1`. `None` when the section is absent.
    pub fn bicyclic_images(&self) -> Result<Option<Vec<Word>>, PresentationError> {
        if self.bicyclic.is_empty() {
            return Ok(None);
        }
        let b = Alphabet::new(["b"])?;
        let mut images = vec![Word::empty(); self.presentation.gens()];
        for (g, w) in &self.bicyclic {
            let i = self.presentation.alphabet.gen(g).ok_or_else(|| WordError::UndeclaredGenerator(g.clone()))?;
            images[i] = b.parse_word(w)?;
        }
        Ok(Some(images))
    }

    /// Weights indexed by generator, unlisted generators weighing 0.
    pub fn weight_vector(&self) -> Option<Vec<i64>> {
        if self.weights.is_empty() {
            return None;
        }
        let mut v = vec![0; self.presentation.gens()];
        for (g, w) in &self.weights {
            if let Some(i) = self.presentation.alphabet.gen(g) {
                v[i] = *w;
            }
        }
        Some(v)
    }

    pub fn to_text(&self) -> String {
        let mut s = self.presentation.to_string();
        if !self.bicyclic.is_empty() {
            s.push_str("[bicyclic]\n");
            for (g, w) in &self.bicyclic {
                s.push_str(&format!("{g} = {w}\n"));
            }
        }
        if !self.weights.is_empty() {
            s.push_str("[weights]\n");
            for (g, w) in &self.weights {
                s.push_str(&format!("{g} = {w}\n"));
            }
        }
        s
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Flavor,
    Generators,
    Relators,
    Bicyclic,
    Weights,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> PresentationError {
    PresentationError::Syntax { line, column, message: message.into() }
}

/// Parses a presentation file.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    parse_document(text).map(|d| d.presentation)
}

pub fn parse_document(text: &str) -> Result<PresentationDocument, PresentationError> {
    let mut flavor: Option<Flavor> = None;
    let mut alphabet = Alphabet::default();
    let mut relator_lines: Vec<(usize, usize, String)> = Vec::new();
    let mut bicyclic = Vec::new();
    let mut weights = Vec::new();
    let mut section = Section::None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        let trimmed = line.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let mut col = line.len() - trimmed.len() + 1;
        let mut body = trimmed;
        if let Some(rest) = trimmed.strip_prefix('[') {
            let close = rest.find(']').ok_or_else(|| syntax(line_no, col, "unterminated section header"))?;
            let name = &rest[..close];
            section = match name {
                "flavor" => Section::Flavor,
                "generators" => Section::Generators,
                "relators" => Section::Relators,
                "bicyclic" => Section::Bicyclic,
                "weights" => Section::Weights,
                other => return Err(syntax(line_no, col, format!("unknown section `[{other}]`"))),
            };
            let after = &rest[close + 1..];
            let lead = after.len() - after.trim_start().len();
            body = after.trim_start();
            col += close + 2 + lead;
            if body.trim().is_empty() {
                continue;
            }
        }
        match section {
            Section::None => return Err(syntax(line_no, col, "content before any section header")),
            Section::Flavor => {
                let word = body.trim();
                if flavor.is_some() {
                    return Err(syntax(line_no, col, "flavor declared twice"));
                }
                flavor = Some(Flavor::from_keyword(word).ok_or_else(|| syntax(line_no, col, format!("unknown flavor `{word}`")))?);
            }
            Section::Generators => {
                for tok in body.split_whitespace() {
                    alphabet.push(tok).map_err(|e| match e {
                        WordError::MalformedToken(t) => syntax(line_no, col, format!("malformed generator `{t}`")),
                        other => syntax(line_no, col, other.to_string()),
                    })?;
                }
            }
            Section::Relators => relator_lines.push((line_no, col, body.to_string())),
            Section::Bicyclic | Section::Weights => {
                let (lhs, rhs) = body.split_once('=').ok_or_else(|| syntax(line_no, col, "expected `generator = image`"))?;
                let g = lhs.trim().to_string();
                if section == Section::Bicyclic {
                    bicyclic.push((g, rhs.trim().to_string()));
                } else {
                    let w: i64 = rhs.trim().parse().map_err(|_| syntax(line_no, col, "weight must be an integer"))?;
                    weights.push((g, w));
                }
            }
        }
    }

    let mut relators = Vec::with_capacity(relator_lines.len());
    for (line_no, col, body) in relator_lines {
        let mut body = body.trim().to_string();
        if let Some(stripped) = body.strip_suffix("= 1").or_else(|| body.strip_suffix("=1")) {
            body = stripped.trim().to_string();
        }
        if body.contains('=') {
            return Err(syntax(line_no, col, "only relations of the form `w = 1` are supported"));
        }
        let word = alphabet.parse_word(&body).map_err(|e| match e {
            WordError::UndeclaredGenerator(name) => PresentationError::UndeclaredGenerator { line: line_no, name },
            WordError::MalformedToken(t) => syntax(line_no, col, format!("malformed token `{t}`")),
            other => PresentationError::Word(other),
        })?;
        if word.is_empty() {
            return Err(PresentationError::EmptyRelator { line: line_no });
        }
        relators.push(word);
    }
    for (g, _) in bicyclic.iter() {
        if !alphabet.contains(g) {
            return Err(PresentationError::UndeclaredGenerator { line: 0, name: g.clone() });
        }
    }
    for (g, _) in weights.iter() {
        if !alphabet.contains(g) {
            return Err(PresentationError::UndeclaredGenerator { line: 0, name: g.clone() });
        }
    }

    let presentation = Presentation { alphabet, relators, flavor: flavor.unwrap_or(Flavor::SpecialInverseMonoid) };
    Ok(PresentationDocument { presentation, bicyclic, weights })
}
