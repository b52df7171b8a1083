//! Homomorphisms into targets with decidable word problems: the bicyclic
//! monoid and the integers under addition. They are the only source of
//! negative answers.

use std::fmt;

use serde::Serialize;

use crate::presentation::Presentation;
use crate::words::Word;

/// The element `b'^m b^n` of the bicyclic monoid `Inv<b | b b' = 1>`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BicyclicForm {
    pub m: u64,
    pub n: u64,
}

impl BicyclicForm {
    pub const ONE: BicyclicForm = BicyclicForm { m: 0, n: 0 };
    pub const B: BicyclicForm = BicyclicForm { m: 0, n: 1 };
    pub const B_INV: BicyclicForm = BicyclicForm { m: 1, n: 0 };

    pub fn new(m: u64, n: u64) -> BicyclicForm {
        BicyclicForm { m, n }
    }

    pub fn mul(self, other: BicyclicForm) -> BicyclicForm {
        let c = self.n.min(other.m);
        BicyclicForm { m: self.m + other.m - c, n: other.n + self.n - c }
    }

    pub fn inverse(self) -> BicyclicForm {
        BicyclicForm { m: self.n, n: self.m }
    }

    /// Has a right inverse: `x y = 1` for some `y`.
    pub fn is_right_invertible(self) -> bool {
        self.m == 0
    }

    pub fn is_unit(self) -> bool {
        self == BicyclicForm::ONE
    }

    /// The form of a word over `{b}` (every letter counts as `b` or `b'`).
    pub fn of_word(w: &Word) -> BicyclicForm {
        w.letters().iter().fold(BicyclicForm::ONE, |acc, l| {
            acc.mul(if l.is_inverse() { BicyclicForm::B_INV } else { BicyclicForm::B })
        })
    }
}

impl fmt::Display for BicyclicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// Normal form of a word over the single generator `b`.
pub fn bicyclic_eval(w: &Word) -> BicyclicForm {
    debug_assert!(w.max_gen().unwrap_or(0) == 0, "bicyclic words use one generator");
    BicyclicForm::of_word(w)
}

/// A map from generators to bicyclic elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BicyclicHom {
    images: Vec<BicyclicForm>,
}

impl BicyclicHom {
    pub fn new(images: Vec<BicyclicForm>) -> BicyclicHom {
        BicyclicHom { images }
    }

    /// Images given as words over `{b}`, one per generator.
    pub fn from_words(images: &[Word]) -> BicyclicHom {
        BicyclicHom { images: images.iter().map(bicyclic_eval).collect() }
    }

    pub fn images(&self) -> &[BicyclicForm] {
        &self.images
    }

    pub fn image(&self, w: &Word) -> BicyclicForm {
        w.letters().iter().fold(BicyclicForm::ONE, |acc, l| {
            let x = self.images[l.gen()];
            acc.mul(if l.is_inverse() { x.inverse() } else { x })
        })
    }

    /// Every relator maps to `1`.
    pub fn respects(&self, p: &Presentation) -> bool {
        self.images.len() == p.gens() && p.relators().iter().all(|r| self.image(r).is_unit())
    }
}

/// Integer weights per generator; a letter weighs `sign × weight`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightHom {
    weights: Vec<i64>,
}

impl WeightHom {
    pub fn new(weights: Vec<i64>) -> WeightHom {
        WeightHom { weights }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn image(&self, w: &Word) -> i64 {
        w.letters().iter().map(|l| l.sign() * self.weights[l.gen()]).sum()
    }

    pub fn respects(&self, p: &Presentation) -> bool {
        self.weights.len() == p.gens() && p.relators().iter().all(|r| self.image(r) == 0)
    }
}

/// True iff the assignment `generator → word over {b}` kills every relator.
pub fn bicyclic_check(p: &Presentation, assignment: &[Word]) -> bool {
    BicyclicHom::from_words(assignment).respects(p)
}

/// True iff every relator has total weight zero.
pub fn weight_check(p: &Presentation, weights: &[i64]) -> bool {
    WeightHom::new(weights.to_vec()).respects(p)
}

/// A homomorphism whose relator check has passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegisteredHom {
    Bicyclic(BicyclicHom),
    Weight(WeightHom),
}

impl RegisteredHom {
    pub fn target(&self) -> &'static str {
        match self {
            RegisteredHom::Bicyclic(_) => "bicyclic",
            RegisteredHom::Weight(_) => "integers",
        }
    }

    pub fn render_image(&self, w: &Word) -> String {
        match self {
            RegisteredHom::Bicyclic(h) => h.image(w).to_string(),
            RegisteredHom::Weight(h) => h.image(w).to_string(),
        }
    }

    /// Images differ, so `u ≠ v`.
    pub fn separates(&self, u: &Word, v: &Word) -> bool {
        match self {
            RegisteredHom::Bicyclic(h) => h.image(u) != h.image(v),
            RegisteredHom::Weight(h) => h.image(u) != h.image(v),
        }
    }

    /// The image is not right invertible, so neither is `w`.
    pub fn refutes_right_invertible(&self, w: &Word) -> bool {
        match self {
            RegisteredHom::Bicyclic(h) => !h.image(w).is_right_invertible(),
            RegisteredHom::Weight(_) => false,
        }
    }

    /// The image is not a unit, so neither is `w`.
    pub fn refutes_unit(&self, w: &Word) -> bool {
        match self {
            RegisteredHom::Bicyclic(h) => !h.image(w).is_unit(),
            RegisteredHom::Weight(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Flavor;
    use crate::words::Alphabet;

    fn b(s: &str) -> Word {
        Alphabet::new(["b"]).unwrap().parse_word(s).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(bicyclic_eval(&b("b b'")), BicyclicForm::ONE);
        assert_eq!(bicyclic_eval(&b("b' b")), BicyclicForm::new(1, 1));
        assert_eq!(bicyclic_eval(&Word::empty()), BicyclicForm::ONE);
        assert_eq!(bicyclic_eval(&b("b' b b' b")), BicyclicForm::new(1, 1));
        assert_eq!(bicyclic_eval(&b("b' b' b b b b'")), BicyclicForm::new(2, 2));
    }

    #[test]
    fn multiplication_is_associative() {
        let forms: Vec<_> = (0..4).flat_map(|m| (0..4).map(move |n| BicyclicForm::new(m, n))).collect();
        for &x in &forms {
            for &y in &forms {
                for &z in &forms {
                    assert_eq!(x.mul(y).mul(z), x.mul(y.mul(z)));
                }
            }
        }
    }

    #[test]
    fn checks() {
        let p = Presentation::from_strs(Flavor::SpecialInverseMonoid, &["b"], &["b b'"]).unwrap();
        assert!(bicyclic_check(&p, &[b("b")]));
        assert!(weight_check(&p, &[1]));
        let q = Presentation::from_strs(Flavor::SpecialInverseMonoid, &["b"], &["b b'", "b"]).unwrap();
        assert!(!weight_check(&q, &[1]));
        assert!(!bicyclic_check(&q, &[b("b")]));
    }
}
