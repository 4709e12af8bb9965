#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use inforest_core::gen::{self, FamilySpec, Pattern};
use inforest_core::{PlanarGraph, VertexId};
use proptest::prelude::*;

/// Random bipartite planar graphs on at most `max_n` vertices.
pub fn bipartite(max_n: usize) -> impl Strategy<Value = PlanarGraph> {
    (4..=max_n, 0.5f64..=1.0, any::<u64>()).prop_map(|(n, keep, seed)| gen::random_bipartite_planar(n, keep, seed))
}

/// Cube or `T6` attached by 0..=5 edges to a random tree.
pub fn gadget(max_base: usize) -> impl Strategy<Value = PlanarGraph> {
    (any::<bool>(), 0usize..=5, 1..=max_base, any::<u64>()).prop_map(|(q3, edges_out, base_n, seed)| {
        let pattern = if q3 { Pattern::Q3 } else { Pattern::T6 };
        gen::generate(&FamilySpec::Gadget { pattern, edges_out, base_n, seed }).unwrap()
    })
}

/// Bipartite graphs, gadgets, and degree-3/4 walks (which contain odd
/// faces), all on at most `max_n` vertices.
pub fn small_graph(max_n: usize) -> impl Strategy<Value = PlanarGraph> {
    let walks = (0usize..40, any::<u64>())
        .prop_map(|(steps, seed)| gen::walk34(steps, seed))
        .prop_filter("walk too large", move |g| g.n() <= max_n);
    prop_oneof![
        3 => bipartite(max_n),
        2 => gadget(max_n.saturating_sub(8).max(1)).prop_filter("gadget too large", move |g| g.n() <= max_n),
        1 => walks,
    ]
}

/// The graph with its ids permuted by a seeded shuffle and shifted by 100.
pub fn shuffled(g: &PlanarGraph, seed: u64) -> PlanarGraph {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut ids: Vec<VertexId> = g.vertices().collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    ids.shuffle(&mut rng);
    let map: BTreeMap<VertexId, VertexId> = g.vertices().zip(ids.into_iter().map(|v| v + 100)).collect();
    g.relabel(&map).unwrap()
}

/// Subset of `g`'s vertices selected by the bits of `mask`.
pub fn subset(g: &PlanarGraph, mask: u64) -> BTreeSet<VertexId> {
    g.vertices().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, v)| v).collect()
}

/// Independent acyclicity test: a vertex set induces a forest iff every
/// component of the induced subgraph has one edge fewer than vertices.
pub fn induces_forest(g: &PlanarGraph, s: &BTreeSet<VertexId>) -> bool {
    let mut seen = BTreeSet::new();
    for &r in s {
        if !seen.insert(r) {
            continue;
        }
        let (mut verts, mut deg_sum) = (0usize, 0usize);
        let mut stack = vec![r];
        while let Some(v) = stack.pop() {
            verts += 1;
            for &w in g.neighbors(v) {
                if s.contains(&w) {
                    deg_sum += 1;
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
        }
        if deg_sum / 2 != verts - 1 {
            return false;
        }
    }
    true
}
