mod common;

use inforest_core::gen::{self, FamilySpec};
use inforest_core::oracle::max_induced_forest_exact;
use inforest_core::reducer::{self, replay, solve, solve_with, validate_input, SolveOptions, Trace};
use inforest_core::textio;
use num_rational::BigRational;
use proptest::prelude::*;

#[test]
fn cube_and_square_examples() {
    assert_eq!(solve(&gen::cube()).unwrap().forest.len(), 5);
    assert_eq!(solve(&gen::cycle(4)).unwrap().forest.len(), 3);
    assert_eq!(solve(&gen::t6()).unwrap().forest.len(), 4);
}

#[test]
fn whole_corpus_in_strict_mode() {
    let opts = SolveOptions { strict: true, ..SolveOptions::default() };
    for (spec, g) in gen::standard_corpus(1) {
        let s = solve_with(&g, &opts).unwrap_or_else(|e| panic!("{spec}: {e}"));
        assert!(s.forest.len() >= reducer::bound(g.n()), "{spec}");
    }
}

#[test]
fn every_generated_graph_is_valid_input() {
    for (spec, g) in gen::standard_corpus(7) {
        validate_input(&g).unwrap_or_else(|e| panic!("{spec}: {e}"));
        assert_eq!(gen::generate(&spec).unwrap(), g, "{spec} is not reproducible");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(192))]

    #[test]
    fn forest_is_sandwiched(g in common::small_graph(20)) {
        let s = solve(&g).unwrap();
        prop_assert!(common::induces_forest(&g, &s.forest));
        prop_assert!(s.forest.len() >= reducer::bound(g.n()));
        prop_assert!(BigRational::from_integer(s.forest.len().into()) >= s.certified_bound);
        let opt = max_induced_forest_exact(&g, 50_000_000).unwrap().optimum;
        prop_assert!(s.forest.len() <= opt);
    }

    #[test]
    fn bound_survives_relabeling(g in common::small_graph(30), seed in any::<u64>()) {
        let h = common::shuffled(&g, seed);
        let s = solve(&h).unwrap();
        prop_assert!(common::induces_forest(&h, &s.forest));
        prop_assert!(s.forest.len() >= reducer::bound(h.n()));
    }

    #[test]
    fn solving_is_deterministic_and_replayable(g in common::small_graph(30)) {
        // go through the file format, as the command line does
        let text = textio::write_graph(&g).unwrap();
        let a = solve(&textio::parse_graph(&text).unwrap()).unwrap();
        let b = solve(&textio::parse_graph(&text).unwrap()).unwrap();
        prop_assert_eq!(&a.forest, &b.forest);
        let printed = a.trace.to_string();
        prop_assert_eq!(&printed, &b.trace.to_string());
        let parsed = Trace::parse(&printed).unwrap();
        prop_assert_eq!(&parsed, &a.trace);
        prop_assert_eq!(replay(&g, &parsed).unwrap(), a.forest);
    }

    #[test]
    fn every_step_shrinks_its_component(seed in any::<u64>(), steps in 0usize..40) {
        let g = gen::generate(&FamilySpec::Walk34 { steps, seed }).unwrap();
        let s = solve(&g).unwrap();
        for st in &s.trace.steps {
            let before = (st.before.n, st.before.m);
            let after = (st.after.n, st.after.m);
            prop_assert!(after < before, "{} did not shrink the component", st.rule);
        }
    }
}
