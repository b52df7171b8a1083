//! Alphabets, signed letters and words over `A ∪ A⁻¹`.
//!
//! Generators are identified by their position in an [`Alphabet`]; a
//! [`Word`] only stores generator indices and signs, so rendering and parsing
//! always go through the alphabet that owns the names.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Errors produced while tokenizing words or declaring alphabets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("undeclared generator `{0}`")]
    UndeclaredGenerator(String),
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
}

/// A generator or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    gen: u32,
    inverse: bool,
}

impl Letter {
    pub const fn pos(gen: usize) -> Letter {
        Letter { gen: gen as u32, inverse: false }
    }

    pub const fn neg(gen: usize) -> Letter {
        Letter { gen: gen as u32, inverse: true }
    }

    pub fn new(gen: usize, inverse: bool) -> Letter {
        Letter { gen: gen as u32, inverse }
    }

    #[inline]
    pub fn gen(self) -> usize {
        self.gen as usize
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    /// `+1` for a generator, `-1` for a formal inverse.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

/// A finite sequence of letters. The empty word denotes `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
        Word(letters.into_iter().collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Formal inverse: reverse the word and flip every sign.
    pub fn invert(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Free reduction: cancel adjacent `x x⁻¹` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            match out.last() {
                Some(&top) if top == l.inverse() => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// True iff the word represents the identity of the free group, i.e. it
    /// is idempotent in every inverse monoid over the alphabet.
    pub fn is_fundamental_idempotent(&self) -> bool {
        self.free_reduce().is_empty()
    }

    /// Largest generator index used, if any.
    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen()).max()
    }

    /// Rewrites generator indices through `map` (old index -> new index).
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Word {
        Word(self.0.iter().map(|l| Letter::new(map(l.gen()), l.is_inverse())).collect())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Word {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Returns true if `token` is a legal generator name.
pub fn is_generator_token(token: &str) -> bool {
    !token.is_empty() && token != "1" && token.bytes().all(|b| b.is_ascii_alphanumeric())
}

/// An ordered list of generator names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Alphabet, WordError> {
        let mut alphabet = Alphabet::default();
        for name in names {
            alphabet.push(name.as_ref())?;
        }
        Ok(alphabet)
    }

    /// Appends a generator and returns its index.
    pub fn push(&mut self, name: &str) -> Result<usize, WordError> {
        if !is_generator_token(name) {
            return Err(WordError::MalformedToken(name.to_string()));
        }
        if self.index.contains_key(name) {
            return Err(WordError::DuplicateGenerator(name.to_string()));
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, gen: usize) -> &str {
        &self.names[gen]
    }

    pub fn gen(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.gen(name).map(Letter::pos)
    }

    /// Parses one token: a declared generator optionally followed by a
    /// single apostrophe.
    pub fn parse_letter(&self, token: &str) -> Result<Letter, WordError> {
        let (base, inverse) = match token.strip_suffix('\'') {
            Some(base) => (base, true),
            None => (token, false),
        };
        if !is_generator_token(base) {
            return Err(WordError::MalformedToken(token.to_string()));
        }
        let gen = self.gen(base).ok_or_else(|| WordError::UndeclaredGenerator(base.to_string()))?;
        Ok(Letter::new(gen, inverse))
    }

    /// Parses whitespace-separated tokens. The lone token `1` (or blank
    /// text) is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() || tokens == ["1"] {
            return Ok(Word::empty());
        }
        tokens.into_iter().map(|t| self.parse_letter(t)).collect()
    }

    pub fn render_letter(&self, letter: Letter) -> String {
        let mut s = self.names[letter.gen()].clone();
        if letter.is_inverse() {
            s.push('\'');
        }
        s
    }

    /// Renders a word in token syntax; the empty word renders as `1`.
    pub fn render(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.letters().iter().map(|&l| self.render_letter(l)).collect::<Vec<_>>().join(" ")
    }

    pub fn display<'a>(&'a self, word: &'a Word) -> DisplayWord<'a> {
        DisplayWord { alphabet: self, word }
    }

    /// Builds an alphabet from the generator names appearing in `texts`, in
    /// order of first appearance. Used where words are given without a
    /// declared alphabet (the free inverse monoid commands).
    pub fn infer<S: AsRef<str>>(texts: &[S]) -> Result<Alphabet, WordError> {
        let mut alphabet = Alphabet::default();
        for text in texts {
            let text = text.as_ref();
            if text.trim() == "1" {
                continue;
            }
            for token in text.split_whitespace() {
                let base = token.strip_suffix('\'').unwrap_or(token);
                if !is_generator_token(base) {
                    return Err(WordError::MalformedToken(token.to_string()));
                }
                if !alphabet.contains(base) {
                    alphabet.push(base)?;
                }
            }
        }
        Ok(alphabet)
    }
}

pub struct DisplayWord<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.render(self.word))
    }
}

/// All words of exactly `len` letters over `gens` generators and their
/// inverses, in lexicographic order of (generator, sign).
pub fn all_words(gens: usize, len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (0..gens).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect();
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * letters.len());
        for w in &out {
            for &l in &letters {
                let mut w2 = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        out = next;
    }
    out
}

/// All words of length at most `max_len`.
pub fn words_up_to(gens: usize, max_len: usize) -> Vec<Word> {
    (0..=max_len).flat_map(|n| all_words(gens, n)).collect()
}
