use invmon::constructions::{build_idempotent_e, build_marked_omega, build_moldavanskii, build_n, build_stabiliser_monoid, build_units_presentation};
use invmon::groups::{all_subgroups, CosetUnion, FiniteGroup, Perm};
use invmon::presentation::{parse_document, parse_presentation, Flavor, Presentation};
use invmon::words::Word;
use proptest::prelude::*;

fn z2() -> Presentation {
    Presentation::from_strs(Flavor::Monoid, &["a"], &["a a"]).unwrap()
}

fn z3() -> Presentation {
    Presentation::from_strs(Flavor::Monoid, &["a", "c"], &["a c", "c a", "a a a"]).unwrap()
}

#[test]
fn builder_outputs_round_trip() {
    let s3 = Presentation::from_strs(Flavor::Group, &["a", "b"], &["a a", "b b b", "a b a b"]).unwrap();
    let a = s3.alphabet().parse_word("a").unwrap();
    let built = [
        build_units_presentation(&z2(), &["a"]).unwrap(),
        build_units_presentation(&z3(), &["a", "c"]).unwrap(),
        build_n(3),
        build_stabiliser_monoid(&s3, &[a]).unwrap(),
        build_moldavanskii().0,
    ];
    for c in built {
        let text = c.document().to_text();
        assert_eq!(parse_presentation(&text).unwrap(), c.presentation);
        assert_eq!(parse_document(&text).unwrap(), c.document());
    }
}

#[test]
fn absorbed_units_presentation_keeps_one_relator_per_base_relator_plus_one() {
    for (base, k) in [(z2(), 1), (z3(), 3)] {
        let c = build_units_presentation(&base, &["a"]).unwrap();
        assert_eq!(c.presentation.absorb_all_idempotents().relators().len(), k + 1);
    }
}

proptest! {
    #[test]
    fn e_is_a_fundamental_idempotent(xs in prop::collection::vec("(a|b|a'|b')( (a|b|a'|b')){0,3}", 1..4)) {
        let g = Presentation::from_strs(Flavor::Group, &["a", "b"], &["a a"]).unwrap();
        let m = build_stabiliser_monoid(&g, &[]).unwrap().presentation;
        let words: Vec<Word> = xs.iter().map(|s| m.parse_word(s).unwrap()).collect();
        prop_assert!(build_idempotent_e(&m, &words).unwrap().is_fundamental_idempotent());
    }

    #[test]
    fn marked_omega_is_bideterministic(hi in 0..6usize, reps in prop::collection::vec(0..6usize, 1..4)) {
        let g = FiniteGroup::enumerate(&[("a", Perm::parse("(1 2)").unwrap()), ("b", Perm::parse("(1 2 3)").unwrap())]).unwrap();
        let subs = all_subgroups(&g).unwrap();
        let xh = CosetUnion::from_elements(&g, &subs[hi], &reps);
        let om = build_marked_omega(&g, &xh);
        prop_assert!(om.graph.is_folded() && om.graph.is_bideterministic() && om.graph.is_connected());
        prop_assert_eq!(om.group_vertices(), 6);
        prop_assert_eq!(om.markers.len(), xh.len());
    }
}
