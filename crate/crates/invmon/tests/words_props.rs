use invmon::presentation::{Flavor, Presentation};
use invmon::stephen::Stephen;
use invmon::words::{words_up_to, Letter, Word};
use proptest::prelude::*;

fn word(gens: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, any::<bool>()), 0..=max).prop_map(|v| Word::from_letters(v.into_iter().map(|(g, i)| Letter::new(g, i))))
}

#[test]
fn invert_is_an_involution_to_length_8() {
    for w in words_up_to(2, 8) {
        assert_eq!(w.invert().invert(), w);
    }
}

proptest! {
    #[test]
    fn w_times_inverse_reduces_to_empty(w in word(3, 20)) {
        prop_assert!(w.concat(&w.invert()).free_reduce().is_empty());
    }

    #[test]
    fn fundamental_idempotents_closed(w in word(2, 6)) {
        let e = w.concat(&w.invert());
        prop_assert!(e.is_fundamental_idempotent());
        prop_assert!(e.invert().is_fundamental_idempotent());
        prop_assert!(e.concat(&e).is_fundamental_idempotent());
        if w.is_fundamental_idempotent() {
            prop_assert!(w.invert().is_fundamental_idempotent());
            prop_assert!(w.concat(&w).is_fundamental_idempotent());
        }
    }

    #[test]
    fn absorption_keeps_equality_answers(u in word(3, 6), v in word(3, 6)) {
        // Inv<p0, p1, z | p0 p0', z z', z p0' p0 p1' p1 z', p1 p1'>
        let p = Presentation::from_strs(
            Flavor::SpecialInverseMonoid,
            &["p0", "p1", "z"],
            &["p0 p0'", "z z'", "z p0' p0 p1' p1 z'", "p1 p1'"],
        ).unwrap();
        let q = p.absorb_all_idempotents();
        prop_assert!(q.relators().len() < p.relators().len());
        let a = Stephen::new(&p).unwrap().with_depth(4).certify_equal(&u, &v).unwrap();
        let b = Stephen::new(&q).unwrap().with_depth(4).certify_equal(&u, &v).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
    }
}
