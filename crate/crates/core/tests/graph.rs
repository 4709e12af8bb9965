mod common;

use std::collections::BTreeSet;

use inforest_core::{gen, PlanarGraph};
use proptest::prelude::*;

fn consistent(g: &PlanarGraph) -> Result<(), TestCaseError> {
    g.check_simple().map_err(|e| TestCaseError::fail(e.to_string()))?;
    for c in g.components() {
        let set: BTreeSet<_> = c.iter().copied().collect();
        let others: BTreeSet<_> = g.vertex_set().difference(&set).copied().collect();
        let h = g.delete_vertices(&others).unwrap();
        h.check_euler().map_err(|e| TestCaseError::fail(e.to_string()))?;
    }
    Ok(())
}

#[test]
fn contracting_an_edge_of_a_square_makes_a_triangle() {
    // 5-cycle plus vertex 5 on 1 and 3; 2-3 lies on the square 1-2-3-5
    let g = PlanarGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 1), (5, 3)]).unwrap().embed().unwrap();
    assert!(g.is_triangle_free());
    let (h, _) = g.contract_edge(2, 3).unwrap();
    assert!(!h.is_triangle_free());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generated_graphs_are_embedded_consistently(g in common::small_graph(30)) {
        consistent(&g)?;
        prop_assert!(g.is_triangle_free());
        if g.n() >= 3 {
            prop_assert!(g.m() <= 2 * g.n() - 4);
        }
    }

    #[test]
    fn deletion_keeps_embedding(g in common::small_graph(30), mask in any::<u64>()) {
        let s = common::subset(&g, mask);
        let h = g.delete_vertices(&s).unwrap();
        consistent(&h)?;
        for f in h.faces().unwrap() {
            prop_assert!(f.boundary.iter().all(|v| !s.contains(v)));
        }
        if let Some((u, v)) = h.edges().first().copied() {
            consistent(&h.delete_edge(u, v).unwrap())?;
        }
    }

    #[test]
    fn chords_keep_embedding(g in common::small_graph(30), pick in any::<u64>()) {
        let faces = g.faces().unwrap();
        prop_assume!(!faces.is_empty());
        let f = &faces[(pick % faces.len() as u64) as usize];
        let b = &f.boundary;
        prop_assume!(b.len() >= 6);
        let (u, v) = (b[0], b[3]);
        prop_assume!(u != v && !g.has_edge(u, v));
        let h = g.add_edge_in_face(u, v, f).unwrap();
        consistent(&h)?;
        prop_assert_eq!(h.m(), g.m() + 1);
    }

    #[test]
    fn relabeling_preserves_structure(g in common::small_graph(30), seed in any::<u64>()) {
        let h = common::shuffled(&g, seed);
        consistent(&h)?;
        let mut a: Vec<usize> = g.faces().unwrap().iter().map(|f| f.len()).collect();
        let mut b: Vec<usize> = h.faces().unwrap().iter().map(|f| f.len()).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn cubes_are_consistent() {
    for k in 1..=3 {
        let g = gen::cubes(k);
        assert_eq!(g.faces().unwrap().len(), 6 * k);
    }
}
