mod common;

use std::collections::BTreeSet;

use inforest_core::extend::{check_induced_forest, check_induced_forest_dfs, extend_q3, extend_q3_maxdeg4, extend_t6};
use inforest_core::pattern::{find_q3, find_t6};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn forest_checkers_agree(g in common::small_graph(14), mask in any::<u64>()) {
        let s = common::subset(&g, mask);
        let uf = check_induced_forest(&g, &s).unwrap();
        prop_assert_eq!(uf, check_induced_forest_dfs(&g, &s).unwrap());
        prop_assert_eq!(uf, common::induces_forest(&g, &s));
    }

    #[test]
    fn extensions_add_exactly_the_promise(g in common::gadget(10), mask in any::<u64>()) {
        for m in find_q3(&g, 5) {
            let img = m.image();
            let rest: BTreeSet<_> = common::subset(&g, mask).difference(&img).copied().collect();
            prop_assume!(common::induces_forest(&g, &rest));
            let runs = [
                (m.degree_in_host <= 3).then(|| extend_q3(&g, &m, &rest)),
                img.iter().all(|&v| g.degree(v) <= 4).then(|| extend_q3_maxdeg4(&g, &m, &rest)),
            ];
            for f in runs.into_iter().flatten() {
                let f = f.unwrap();
                prop_assert!(f.is_superset(&rest));
                prop_assert_eq!(f.len(), rest.len() + 5);
                prop_assert!(f.difference(&rest).all(|v| img.contains(v)));
                prop_assert!(common::induces_forest(&g, &f));
            }
        }
        for m in find_t6(&g, 3) {
            let img = m.image();
            let rest: BTreeSet<_> = common::subset(&g, mask).difference(&img).copied().collect();
            prop_assume!(common::induces_forest(&g, &rest));
            let f = extend_t6(&g, &m, &rest).unwrap();
            prop_assert!(f.is_superset(&rest));
            prop_assert_eq!(f.len(), rest.len() + 4);
            prop_assert!(f.difference(&rest).all(|v| img.contains(v)));
            prop_assert!(common::induces_forest(&g, &f));
        }
    }
}
