use invmon::presentation::{parse_document, Presentation};
use invmon::stephen::{Evidence, Session, Stephen, Verdict};
use invmon::words::{words_up_to, Letter, Word};
use proptest::prelude::*;

fn m_z2() -> Presentation {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/presentations/m_z2.ip")).unwrap();
    parse_document(&text).unwrap().presentation
}

fn word(gens: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, any::<bool>()), 0..=max).prop_map(|v| Word::from_letters(v.into_iter().map(|(g, i)| Letter::new(g, i))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn positive_readings_survive_deeper_expansion(w in word(5, 4)) {
        let p = m_z2();
        let st = Stephen::new(&p).unwrap().with_depth(2);
        let c = st.certify_right_invertible(&w).unwrap();
        if c.is_positive() {
            let mut s = Session::new(&p, &Word::empty()).unwrap();
            s.expand_to(c.depth + 2).unwrap();
            prop_assert!(s.read(&w).is_some());
        }
    }

    #[test]
    fn leq_witness_keeps_ending_at_terminal(u in word(2, 4), v in word(2, 4)) {
        let p = Presentation::from_strs(invmon::presentation::Flavor::SpecialInverseMonoid, &["a", "b"], &["a b a' b'"]).unwrap();
        let c = Stephen::new(&p).unwrap().with_depth(3).certify_leq(&u, &v).unwrap();
        if c.is_positive() {
            let mut s = Session::new(&p, &u).unwrap();
            s.expand_to(c.depth + 2).unwrap();
            prop_assert_eq!(s.read(&v), Some(s.terminal()));
        }
        prop_assert_ne!(c.verdict, Verdict::Negative);
    }
}

#[test]
fn saturated_graphs_close_every_relator() {
    for (gens, rels) in [(&["a"][..], &["a a"][..]), (&["a"], &["a a a"]), (&["a", "b"], &["a a", "b b b", "a b a b"])] {
        let p = Presentation::from_strs(invmon::presentation::Flavor::Group, gens, rels).unwrap().group_as_inverse();
        let mut s = Session::new(&p, &Word::empty()).unwrap();
        s.expand_to(10).unwrap();
        assert!(s.is_saturated());
        assert!(s.relators_close_everywhere());
    }
}

#[test]
fn equality_is_an_equivalence_on_the_battery() {
    let p = m_z2();
    let st = Stephen::new(&p).unwrap().with_depth(2);
    let battery: Vec<Word> = words_up_to(p.gens(), 2).into_iter().filter(|w| w.len() != 1).take(40).collect();
    let mut eq = vec![vec![false; battery.len()]; battery.len()];
    for (i, u) in battery.iter().enumerate() {
        for (j, v) in battery.iter().enumerate() {
            let c = st.certify_equal(u, v).unwrap();
            // no flip: positive one way never meets negative the other
            let back = st.certify_equal(v, u).unwrap();
            assert!(!(c.is_positive() && back.is_negative()));
            eq[i][j] = c.is_positive();
            if let Evidence::Paths(ps) = &c.evidence {
                assert!(!ps.is_empty());
            }
        }
    }
    let n = battery.len();
    for i in 0..n {
        assert!(eq[i][i]);
        for j in 0..n {
            assert_eq!(eq[i][j], eq[j][i]);
            for k in 0..n {
                if eq[i][j] && eq[j][k] {
                    assert!(eq[i][k], "transitivity {i} {j} {k}");
                }
            }
        }
    }
}
