use invmon::groups::parse_group_file;
use invmon::presentation::{Flavor, Presentation};
use invmon::stephen::{Session, Verdict};
use invmon::witness::{UnitsWitness, DEFAULT_BUDGET};
use invmon::words::{words_up_to, Letter};
use proptest::prelude::*;

fn witness(file: &str, b: &[&str]) -> UnitsWitness {
    let text = std::fs::read_to_string(format!("{}/../../fixtures/groups/{file}", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let gf = parse_group_file(&text).unwrap();
    let base = Presentation::new(gf.group.alphabet().clone(), gf.relators, Flavor::Monoid).unwrap();
    UnitsWitness::new(&gf.group, &base, b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn walks_are_deterministic_and_bideterministic(steps in prop::collection::vec((0..7usize, any::<bool>()), 0..30)) {
        for om in [witness("z2.grp", &["a"]), witness("z3_units.grp", &[])] {
            let n = om.presentation().gens();
            let mut v = om.root();
            for &(g, inv) in &steps {
                let l = Letter::new(g % n, inv);
                let Some(w) = om.neighbor(&v, l) else { continue };
                prop_assert_eq!(om.neighbor(&v, l), Some(w.clone()));
                prop_assert_eq!(om.neighbor(&w, l.inverse()), Some(v.clone()));
                v = w;
            }
        }
    }
}

#[test]
fn instances_validate() {
    for om in [witness("z2.grp", &["a"]), witness("z2.grp", &[]), witness("z3_units.grp", &["a"]), witness("z3_units.grp", &[])] {
        let samples = om.sample_vertices(24, 12, 9);
        let r = om.validate_locally(&samples, 2, DEFAULT_BUDGET * 100).unwrap();
        assert!(r.passed, "{r}");
    }
}

#[test]
fn refutation_never_contradicts_stephen() {
    let om = witness("z3_units.grp", &["a"]);
    let p = om.presentation().clone();
    let r = om.validate_locally(&om.sample_vertices(16, 8, 1), 1, DEFAULT_BUDGET * 100).unwrap();
    let mut s = Session::new(&p, &invmon::words::Word::empty()).unwrap();
    s.expand_to(2).unwrap();
    let mut readable = 0;
    for w in words_up_to(p.gens(), 3) {
        if s.read(&w.invert()).is_some() {
            readable += 1;
            assert_ne!(om.refute_readable_into(&w, &r, DEFAULT_BUDGET).unwrap().verdict, Verdict::Negative, "{}", p.render(&w));
        }
    }
    assert!(readable > 100);
}
