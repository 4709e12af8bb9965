//! The ordered table of reduction rules.
//!
//! A rule inspects one connected component and proposes concrete rewrites:
//! remove a vertex set, drop and add edges, and collect a subset of the
//! removed vertices. Proposals carry the accounting tuples of the cases they
//! realize; the engine keeps the first proposal whose tuple is confirmed by
//! the real deltas. Where an argument fixes a labeling "by symmetry", the
//! rule enumerates all labelings and lets verification choose.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::accounting::Accounting;
use crate::extend::{q3_collect_set, q3_maxdeg4_collect_set, t6_collect_set};
use crate::graph::{norm, Edge, PlanarGraph, VertexId};
use crate::pattern::{count_p, find_q3, find_t6, four_cycles, q3_automorphisms, t6_automorphisms, t6_components, Q3Match};

const fn t(alpha: i64, beta: i64, gamma: i64, eta: i64, lambda: i64) -> Accounting {
    Accounting::new(alpha, beta, gamma, eta, lambda)
}

/// A concrete rewrite of the current component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proposal {
    pub removed: BTreeSet<VertexId>,
    pub deleted_edges: Vec<Edge>,
    pub added_edges: Vec<Edge>,
    pub collect: BTreeSet<VertexId>,
    /// Candidate tuples, tried in order against the measured deltas.
    pub tuples: Vec<Accounting>,
}

impl Proposal {
    fn new(removed: impl IntoIterator<Item = VertexId>, collect: impl IntoIterator<Item = VertexId>, tuples: &[Accounting]) -> Self {
        Proposal {
            removed: removed.into_iter().collect(),
            deleted_edges: Vec::new(),
            added_edges: Vec::new(),
            collect: collect.into_iter().collect(),
            tuples: tuples.to_vec(),
        }
    }

    fn adding(mut self, edges: &[Edge]) -> Self {
        self.added_edges = edges.iter().map(|&(a, b)| norm(a, b)).collect();
        self
    }
}

/// Accounting attached to a rule, for the LP cross-check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AccountingFamily {
    Fixed(&'static [Accounting]),
    /// `T6` followed by a chain of `t` cubes: `(8t+6, 13t+9, 0, −1, 5t+4)`,
    /// plus the cube cycle `(8h, 13h, 0, 0, 5h)` when `cycle` is set.
    Chain,
    CubeDeg2(&'static [Accounting]),
}

impl AccountingFamily {
    /// Concrete tuples, expanding parametric families over `0..=3` (chain
    /// length) and `1..=4` (cycle length).
    pub fn expand(&self) -> Vec<Accounting> {
        match self {
            AccountingFamily::Fixed(a) => a.to_vec(),
            AccountingFamily::Chain => (0..=3).map(chain_tuple).collect(),
            AccountingFamily::CubeDeg2(a) => {
                let mut v = a.to_vec();
                v.extend((1..=4).map(cycle_tuple));
                v
            }
        }
    }
}

pub fn chain_tuple(k: i64) -> Accounting {
    t(8 * k + 6, 13 * k + 9, 0, -1, 5 * k + 4)
}

pub fn cycle_tuple(h: i64) -> Accounting {
    t(8 * h, 13 * h, 0, 0, 5 * h)
}

#[derive(Clone, Copy)]
pub struct ReductionRule {
    pub name: &'static str,
    pub accounting: AccountingFamily,
    pub propose: fn(&PlanarGraph) -> Vec<Proposal>,
}

impl core::fmt::Debug for ReductionRule {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("ReductionRule").field("name", &self.name).finish()
    }
}

macro_rules! rule {
    ($name:expr, [$($a:expr),* $(,)?], $f:expr) => {
        ReductionRule { name: $name, accounting: AccountingFamily::Fixed(const { &[$($a),*] }), propose: $f }
    };
}

/// Rules applied before the potential argument: each removes a `T6`
/// component or a cube of degree at most 1 and collects at least 5/9 of it.
pub fn ratio_rules() -> Vec<ReductionRule> {
    vec![
        rule!("ratio-t6-component", [t(6, 8, 0, 1, 4)], t6_component),
        rule!("ratio-cube-deg01", [t(8, 12, 1, 0, 5), t(8, 13, 1, -1, 5)], cube_low_degree),
    ]
}

/// The potential-phase rules in priority order. Each may assume that no
/// earlier rule applies to the component.
pub fn build_rule_table() -> Vec<ReductionRule> {
    vec![
        rule!("cube-component", [t(8, 12, 1, 0, 5)], cube_component),
        rule!("t6-component", [t(6, 8, 0, 1, 4)], t6_component),
        rule!("cube-deg1", [t(8, 13, 0, 0, 5), t(8, 13, 1, -1, 5)], cube_deg1),
        ReductionRule {
            name: "t6-deg1-chain",
            accounting: AccountingFamily::Chain,
            propose: t6_deg1_chain,
        },
        ReductionRule {
            name: "cube-deg2",
            accounting: AccountingFamily::CubeDeg2(const { &[t(8, 14, 0, -1, 5), t(8, 14, -1, 0, 5)] }),
            propose: cube_deg2,
        },
        rule!("cube-deg3", [t(8, 15, -1, -1, 5)], |g| cube_exact(g, 3, t(8, 15, -1, -1, 5))),
        rule!("t6-deg2", [t(6, 10, 0, -1, 4)], |g| t6_exact(g, 2, t(6, 10, 0, -1, 4))),
        rule!("high-degree-vertex", [t(1, 5, 0, 0, 0)], high_degree_vertex),
        rule!("cube-deg4", [t(8, 16, -1, -1, 5)], |g| cube_exact(g, 4, t(8, 16, -1, -1, 5))),
        rule!("t6-deg3", [t(6, 11, 0, -1, 4)], |g| t6_exact(g, 3, t(6, 11, 0, -1, 4))),
        rule!("t6-one-face", [t(5, 10, 0, -1, 3), t(5, 10, -1, 0, 3)], t6_one_face),
        rule!("cube-deg5", [t(8, 17, -1, -1, 5)], |g| cube_exact(g, 5, t(8, 17, -1, -1, 5))),
        rule!("isolated-vertex", [t(1, 0, 0, 0, 1)], isolated_vertex),
        rule!("bridge", [t(0, 1, 0, 0, 0)], bridge),
        rule!("contract-deg2", [t(1, 1, -1, 0, 1), t(1, 1, 0, -1, 1)], contract_deg2),
        rule!("deg2-next-to-deg4", [t(2, 5, 0, 0, 1)], deg2_next_to_deg4),
        rule!("adjacent-deg2", [t(4, 4, 0, 0, 3), t(3, 5, 0, 0, 2)], adjacent_deg2),
        rule!("deg3-two-deg2", [t(3, 5, 0, 0, 2)], deg3_two_deg2),
        rule!("deg2-square", [t(5, 9, 0, 0, 3), t(6, 9, 0, 0, 4)], deg2_square),
        rule!("deg3-next-to-deg4", [t(2, 5, 0, 0, 1), t(9, 14, 0, 0, 6)], deg3_next_to_deg4),
        rule!("c4-split-pair", [t(4, 10, 0, 0, 2)], c4_split_pair),
        rule!("sep-c4-four-deg3", [t(5, 10, 0, 0, 3)], sep_c4_four_deg3),
        rule!("sep-c4-three-deg3", [t(5, 10, 0, 0, 3), t(6, 11, 0, 0, 4), t(7, 14, 0, 0, 4)], sep_c4_three_deg3),
        rule!("sep-c4-two-deg3", [t(4, 10, 0, 0, 2), t(5, 10, 0, 0, 3)], sep_c4_two_deg3),
        rule!("face4-deg3-opposite-join", [t(5, 10, 0, 0, 3), t(5, 10, 0, -1, 3), t(5, 10, -1, 0, 3)], face4_opposite_join),
        rule!("face4-deg3-long-corner", [t(3, 5, 0, 0, 2), t(11, 18, 0, 0, 7)], face4_long_corner),
        rule!("face4-deg3-opposite-deg4", [t(6, 14, 0, 0, 3)], face4_opposite_deg4),
        rule!("face4-deg3", [t(8, 13, 0, 0, 5), t(7, 14, 0, 0, 4)], face4_all_deg3),
        rule!("face4-three-deg3", [t(7, 14, 0, 0, 4)], face4_three_deg3),
        rule!("face4-two-deg3", [t(4, 10, 0, 0, 2), t(10, 18, 0, 0, 6), t(12, 23, 0, 0, 7)], face4_two_deg3),
        rule!(
            "face4-one-deg3",
            [t(8, 20, 0, 0, 4), t(6, 15, -1, 0, 3), t(8, 19, 0, 0, 4), t(7, 19, 0, 0, 3)],
            face4_one_deg3
        ),
        rule!("face5-deg3", [t(3, 5, 0, 0, 2)], face5_deg3),
    ]
}

// ---- helpers ----

fn deg(g: &PlanarGraph, v: VertexId) -> usize {
    g.degree(v)
}

fn others(g: &PlanarGraph, v: VertexId, excl: &[VertexId]) -> Vec<VertexId> {
    g.neighbors(v).iter().copied().filter(|x| !excl.contains(x)).collect()
}

fn common(g: &PlanarGraph, a: VertexId, b: VertexId, excl: &[VertexId]) -> Vec<VertexId> {
    let mut v: Vec<VertexId> = g
        .neighbors(a)
        .iter()
        .copied()
        .filter(|x| g.has_edge(*x, b) && !excl.contains(x))
        .collect();
    v.sort_unstable();
    v
}

/// The unique neighbor of `w` off the cycle, when `w` has exactly one.
fn off_cycle(g: &PlanarGraph, w: VertexId, cyc: &[VertexId]) -> Option<VertexId> {
    let o = others(g, w, cyc);
    (o.len() == 1).then(|| o[0])
}

/// All `2k` relabelings of a cycle: rotations in both directions.
fn dihedral(b: &[VertexId]) -> Vec<Vec<VertexId>> {
    let k = b.len();
    let mut out = Vec::with_capacity(2 * k);
    for dir in [1usize, k - 1] {
        for s in 0..k {
            out.push((0..k).map(|i| b[(s + dir * i) % k]).collect());
        }
    }
    out
}

fn distinct(xs: &[VertexId]) -> bool {
    xs.iter().collect::<BTreeSet<_>>().len() == xs.len()
}

/// Simple 4- or 5-faces in face order.
fn short_faces(g: &PlanarGraph, len: usize) -> Vec<Vec<VertexId>> {
    let Ok(faces) = g.faces() else { return Vec::new() };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for f in faces {
        if f.len() == len && distinct(&f.boundary) && seen.insert(f.vertex_set()) {
            out.push(f.boundary);
        }
    }
    out
}

fn rewritten(g: &PlanarGraph, p: &Proposal) -> Option<PlanarGraph> {
    crate::reducer::apply_rewrite(g, &p.removed, &p.deleted_edges, &p.added_edges).ok()
}

fn cube_of_degree(g: &PlanarGraph, d: usize) -> Vec<Q3Match> {
    find_q3(g, d).into_iter().filter(|m| m.degree_in_host == d).collect()
}

// ---- pattern rules ----

fn t6_component(g: &PlanarGraph) -> Vec<Proposal> {
    t6_components(g)
        .iter()
        .filter_map(|m| Some(Proposal::new(m.image(), t6_collect_set(g, m).ok()?, &[t(6, 8, 0, 1, 4)])))
        .collect()
}

fn cube_low_degree(g: &PlanarGraph) -> Vec<Proposal> {
    find_q3(g, 1)
        .iter()
        .filter_map(|m| {
            Some(Proposal::new(
                m.image(),
                q3_collect_set(g, m).ok()?,
                &[t(8, 12, 1, 0, 5), t(8, 13, 1, -1, 5), t(8, 13, 0, 0, 5)],
            ))
        })
        .collect()
}

fn cube_component(g: &PlanarGraph) -> Vec<Proposal> {
    cube_of_degree(g, 0)
        .iter()
        .filter_map(|m| Some(Proposal::new(m.image(), q3_collect_set(g, m).ok()?, &[t(8, 12, 1, 0, 5)])))
        .collect()
}

fn cube_deg1(g: &PlanarGraph) -> Vec<Proposal> {
    cube_of_degree(g, 1)
        .iter()
        .filter_map(|m| {
            Some(Proposal::new(
                m.image(),
                q3_collect_set(g, m).ok()?,
                &[t(8, 13, 0, 0, 5), t(8, 13, 1, -1, 5)],
            ))
        })
        .collect()
}

fn t6_deg1_chain(g: &PlanarGraph) -> Vec<Proposal> {
    let mut out = Vec::new();
    for k in find_t6(g, 1).into_iter().filter(|m| m.degree_in_host() == 1) {
        let Ok(first) = t6_collect_set(g, &k) else { continue };
        let mut removed = k.image();
        let mut collect: Vec<VertexId> = first;
        let Ok(mut rest) = g.delete_vertices(&removed) else { continue };
        let mut len = 0;
        let mut ok = true;
        while let Some(h) = cube_of_degree(&rest, 1).into_iter().next() {
            match q3_collect_set(&rest, &h) {
                Ok(x) => collect.extend(x),
                Err(_) => {
                    ok = false;
                    break;
                }
            }
            removed.extend(h.image());
            rest = rest.delete_vertices(&h.image()).expect("cube lies in the graph");
            len += 1;
        }
        if ok {
            out.push(Proposal::new(removed, collect, &[chain_tuple(len)]));
        }
    }
    out
}

fn cube_deg2(g: &PlanarGraph) -> Vec<Proposal> {
    let cubes = cube_of_degree(g, 2);
    if cubes.is_empty() {
        return Vec::new();
    }
    let mut scored: Vec<(usize, &Q3Match)> = cubes
        .iter()
        .map(|m| (g.delete_vertices(&m.image()).map(|r| count_p(&r)).unwrap_or(usize::MAX), m))
        .collect();
    scored.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.image().cmp(&b.1.image())));
    let mut out: Vec<Proposal> = scored
        .iter()
        .filter_map(|(_, m)| {
            Some(Proposal::new(
                m.image(),
                q3_collect_set(g, m).ok()?,
                &[t(8, 14, 0, -1, 5), t(8, 14, -1, 0, 5)],
            ))
        })
        .collect();
    // every degree-2 cube meets two others: remove the whole cycle of them
    let images: Vec<BTreeSet<VertexId>> = cubes.iter().map(|m| m.image()).collect();
    let touches = |a: &BTreeSet<VertexId>, b: &BTreeSet<VertexId>| a.iter().any(|&v| g.neighbors(v).iter().any(|w| b.contains(w)));
    let mut order = vec![0usize];
    let mut i = 0;
    while i < order.len() {
        let cur = order[i];
        for j in 0..cubes.len() {
            if !order.contains(&j) && touches(&images[cur], &images[j]) {
                order.push(j);
            }
        }
        i += 1;
    }
    let mut rest = g.clone();
    let mut removed = BTreeSet::new();
    let mut collect = Vec::new();
    for &j in &order {
        let Ok(x) = q3_collect_set(&rest, &cubes[j]) else { return out };
        collect.extend(x);
        removed.extend(images[j].iter().copied());
        rest = rest.delete_vertices(&images[j]).expect("cube lies in the graph");
    }
    out.push(Proposal::new(removed, collect, &[cycle_tuple(order.len() as i64)]));
    out
}

fn cube_exact(g: &PlanarGraph, d: usize, acct: Accounting) -> Vec<Proposal> {
    cube_of_degree(g, d)
        .iter()
        .filter_map(|m| {
            let x = if d <= 3 { q3_collect_set(g, m) } else { q3_maxdeg4_collect_set(g, m) };
            Some(Proposal::new(m.image(), x.ok()?, &[acct]))
        })
        .collect()
}

fn t6_exact(g: &PlanarGraph, d: usize, acct: Accounting) -> Vec<Proposal> {
    find_t6(g, d)
        .iter()
        .filter(|m| m.degree_in_host() == d)
        .filter_map(|m| Some(Proposal::new(m.image(), t6_collect_set(g, m).ok()?, &[acct])))
        .collect()
}

fn high_degree_vertex(g: &PlanarGraph) -> Vec<Proposal> {
    g.vertices()
        .filter(|&v| deg(g, v) >= 5)
        .map(|v| Proposal::new([v], [], &[t(1, 5, 0, 0, 0)]))
        .collect()
}

/// A `T6` of degree ≤ 5 whose between vertices avoid `v4` and `v6` after
/// relabeling: they then all lie on the face `v1v2v5v3`. Removes
/// `{v1, v2, v3, v4, v6}` and collects `{v1, v4, v6}`.
fn t6_one_face(g: &PlanarGraph) -> Vec<Proposal> {
    let auts = t6_automorphisms();
    let mut out = Vec::new();
    for m in find_t6(g, 5) {
        for a in &auts {
            let r = m.m.compose(a);
            let btw = r.between(g);
            if !btw[3] && !btw[5] {
                let v = r.map;
                out.push(Proposal::new(
                    [v[0], v[1], v[2], v[3], v[5]],
                    [v[0], v[3], v[5]],
                    &[t(5, 10, 0, -1, 3), t(5, 10, -1, 0, 3)],
                ));
            }
        }
    }
    out
}

// ---- low degree ----

fn isolated_vertex(g: &PlanarGraph) -> Vec<Proposal> {
    g.vertices()
        .filter(|&v| deg(g, v) == 0)
        .map(|v| Proposal::new([v], [v], &[t(1, 0, 0, 0, 1)]))
        .collect()
}

fn bridge(g: &PlanarGraph) -> Vec<Proposal> {
    g.bridges()
        .into_iter()
        .map(|e| Proposal {
            deleted_edges: vec![e],
            ..Proposal::new([], [], &[t(0, 1, 0, 0, 0)])
        })
        .collect()
}

fn deg2_vertices(g: &PlanarGraph) -> Vec<(VertexId, VertexId, VertexId)> {
    g.vertices()
        .filter(|&v| deg(g, v) == 2)
        .map(|v| (v, g.neighbors(v)[0], g.neighbors(v)[1]))
        .collect()
}

fn contract_deg2(g: &PlanarGraph) -> Vec<Proposal> {
    deg2_vertices(g)
        .into_iter()
        .filter(|&(v, x, y)| common(g, x, y, &[v]).is_empty())
        .map(|(v, x, y)| Proposal::new([v], [v], &[t(1, 1, -1, 0, 1), t(1, 1, 0, -1, 1)]).adding(&[(x, y)]))
        .collect()
}

fn deg2_next_to_deg4(g: &PlanarGraph) -> Vec<Proposal> {
    let mut out = Vec::new();
    for (v, x, y) in deg2_vertices(g) {
        for u in [x, y] {
            if deg(g, u) == 4 {
                out.push(Proposal::new([u, v], [v], &[t(2, 5, 0, 0, 1)]));
            }
        }
    }
    out
}

fn adjacent_deg2(g: &PlanarGraph) -> Vec<Proposal> {
    let mut out = Vec::new();
    if g.n() == 4 && g.m() == 4 && g.vertices().all(|v| deg(g, v) == 2) {
        let vs: Vec<VertexId> = g.vertices().collect();
        out.push(Proposal::new(vs.clone(), vs[..3].iter().copied(), &[t(4, 4, 0, 0, 3)]));
    }
    for (v, a, b) in deg2_vertices(g) {
        for u in [a, b] {
            if deg(g, u) != 2 || u < v {
                continue;
            }
            let w = others(g, u, &[v])[0];
            let w2 = others(g, v, &[u])[0];
            for z in [w, w2] {
                if deg(g, z) == 3 {
                    out.push(Proposal::new([u, v, z], [u, v], &[t(3, 5, 0, 0, 2)]));
                }
            }
        }
    }
    out
}

fn deg3_two_deg2(g: &PlanarGraph) -> Vec<Proposal> {
    let mut out = Vec::new();
    for w in g.vertices().filter(|&w| deg(g, w) == 3) {
        let twos: Vec<VertexId> = others(g, w, &[]).into_iter().filter(|&x| deg(g, x) == 2).collect();
        for i in 0..twos.len() {
            for j in i + 1..twos.len() {
                out.push(Proposal::new([twos[i], twos[j], w], [twos[i], twos[j]], &[t(3, 5, 0, 0, 2)]));
            }
        }
    }
    out
}

/// A 2-vertex `w1` on the 4-cycle `w1w2w3w4`: collect three of its vertices
/// together with the outside neighbor `u` of `w2`, or four once the
/// outside neighbor `v` of `w3` is added.
fn deg2_square(g: &PlanarGraph) -> Vec<Proposal> {
    let mut first = Vec::new();
    let mut second = Vec::new();
    for (w1, a, b) in deg2_vertices(g) {
        for (w2, w4) in [(a, b), (b, a)] {
            for w3 in common(g, w2, w4, &[w1]) {
                for u in others(g, w2, &[w1, w3]) {
                    if u == w4 {
                        continue;
                    }
                    first.push(Proposal::new([w1, w2, w3, w4, u], [w4, w1, w2], &[t(5, 9, 0, 0, 3)]));
                    for v in others(g, w3, &[w1, w2, w4, u]) {
                        second.push(Proposal::new([w1, w2, w3, w4, u, v], [u, w1, w2, w3], &[t(6, 9, 0, 0, 4)]));
                    }
                }
            }
        }
    }
    first.extend(second);
    first
}

// ---- small cuts ----

/// A 3-vertex `v` next to a 4-vertex `u` whose other neighbors `x, y` share
/// no neighbor but `v`: remove `u, v`, join `x y`, collect `v`. If the join
/// closes a cube of degree ≤ 1, remove that cube with `v` instead and
/// collect six.
fn deg3_next_to_deg4(g: &PlanarGraph) -> Vec<Proposal> {
    let mut join = Vec::new();
    let mut cube = Vec::new();
    let auts = q3_automorphisms();
    for v in g.vertices().filter(|&v| deg(g, v) == 3) {
        for &u in g.neighbors(v) {
            if deg(g, u) != 4 {
                continue;
            }
            let xy = others(g, v, &[u]);
            let (x, y) = (xy[0], xy[1]);
            if !common(g, x, y, &[v]).is_empty() {
                continue;
            }
            let p = Proposal::new([u, v], [v], &[t(2, 5, 0, 0, 1)]).adding(&[(x, y)]);
            if let Some(g1) = rewritten(g, &p) {
                for h in find_q3(&g1, 1) {
                    let img = h.image();
                    if !img.contains(&x) || !img.contains(&y) {
                        continue;
                    }
                    for a in &auts {
                        let r = h.compose(a);
                        if r.map[0] != x || r.map[1] != y {
                            continue;
                        }
                        let m = r.map;
                        for z in [x, y] {
                            if deg(g, z) != 3 {
                                continue;
                            }
                            let removed: Vec<VertexId> = img.iter().copied().chain([v]).collect();
                            for rest in [[m[2], m[4], m[6], m[7]], [m[3], m[5], m[6], m[7]]] {
                                let x6: Vec<VertexId> = [v, z].into_iter().chain(rest).collect();
                                cube.push(Proposal::new(removed.clone(), x6, &[t(9, 14, 0, 0, 6)]));
                            }
                        }
                    }
                }
            }
            join.push(p);
        }
    }
    join.extend(cube);
    join
}

/// 4-cycles with one or two 3-vertices whose outside edges are arranged so
/// that two cycle vertices can be collected.
fn c4_split_pair(g: &PlanarGraph) -> Vec<Proposal> {
    let mut out = Vec::new();
    for c in four_cycles(g) {
        let threes: Vec<usize> = (0..4).filter(|&i| deg(g, c[i]) == 3).collect();
        if threes.is_empty() || threes.len() > 2 {
            continue;
        }
        let Ok(info) = g.classify_cycle(&c) else { continue };
        let sides = |i: usize| -> Vec<bool> { others(g, c[i], &c).iter().map(|&x| info.edge_inside(x)).collect() };
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        if threes.len() == 2 {
            let (i, j) = (threes[0], threes[1]);
            if (j - i) % 2 == 0 || sides(i) != sides(j) {
                pairs.push((i, j));
            }
        }
        for &i in &threes {
            let j = (i + 2) % 4;
            let s = sides(j);
            if deg(g, c[j]) == 4 && s.len() == 2 && s[0] != s[1] {
                pairs.push((i.min(j), i.max(j)));
            }
        }
        for (i, j) in pairs {
            out.push(Proposal::new(c, [c[i], c[j]], &[t(4, 10, 0, 0, 2)]));
        }
    }
    out
}

fn separating_c4(g: &PlanarGraph, threes: usize) -> Vec<([VertexId; 4], crate::graph::CycleRegionInfo)> {
    four_cycles(g)
        .into_iter()
        .filter(|c| c.iter().filter(|&&v| deg(g, v) == 3).count() == threes)
        .filter_map(|c| {
            let info = g.classify_cycle(&c).ok()?;
            info.is_separating().then_some((c, info))
        })
        .collect()
}

fn sep_c4_four_deg3(g: &PlanarGraph) -> Vec<Proposal> {
    let mut out = Vec::new();
    for (c, info) in separating_c4(g, 4) {
        let x: Vec<Option<VertexId>> = c.iter().map(|&w| off_cycle(g, w, &c)).collect();
        if x.iter().any(|o| o.is_none()) {
            continue;
        }
        let x: Vec<VertexId> = x.into_iter().map(Option::unwrap).collect();
        let side: Vec<bool> = x.iter().map(|&v| info.edge_inside(v)).collect();
        for a in 0..4 {
            for b in 0..4 {
                for j in 0..4 {
                    if b != a && side[b] == side[a] && side[j] != side[a] {
                        let mut r: Vec<VertexId> = c.to_vec();
                        r.push(x[a]);
                        out.push(Proposal::new(r, [c[a], c[b], c[j]], &[t(5, 10, 0, 0, 3)]));
                    }
                }
            }
        }
    }
    out
}

fn sep_c4_three_deg3(g: &PlanarGraph) -> Vec<Proposal> {
    let mut out = Vec::new();
    for (c, _) in separating_c4(g, 3) {
        for w in dihedral(&c) {
            // w[0] is the 4-vertex; w1, w2, w3 follow it
            if deg(g, w[0]) == 3 {
                continue;
            }
            let (w1, w2, w3, w4) = (w[1], w[2], w[3], w[0]);
            let (Some(x), Some(y), Some(z)) = (off_cycle(g, w1, &c), off_cycle(g, w2, &c), off_cycle(g, w3, &c)) else {
                continue;
            };
            if x == z {
                out.push(Proposal::new([w1, w2, w3, w4, x], [w1, w2, w3], &[t(5, 10, 0, 0, 3)]));
            } else if distinct(&[x, y, z]) {
                if [x, y, z].iter().all(|&v| deg(g, v) == 3) {
                    out.push(Proposal::new([w1, w2, w3, x, y, z], [w2, w3, x, y], &[t(6, 11, 0, 0, 4)]));
                }
                out.push(Proposal::new([w1, w2, w3, w4, x, y, z], [y, w1, w2, w3], &[t(7, 14, 0, 0, 4)]));
            }
        }
    }
    out
}

fn sep_c4_two_deg3(g: &PlanarGraph) -> Vec<Proposal> {
    let mut out = Vec::new();
    for (c, _) in separating_c4(g, 2) {
        for w in dihedral(&c) {
            let (w1, w2, w3, w4) = (w[0], w[1], w[2], w[3]);
            if deg(g, w1) != 3 || deg(g, w2) != 3 {
                continue;
            }
            let (Some(u), Some(v)) = (off_cycle(g, w1, &c), off_cycle(g, w2, &c)) else { continue };
            if deg(g, v) == 4 {
                out.push(Proposal::new([w1, w2, v, w4], [w1, w2], &[t(4, 10, 0, 0, 2)]));
            } else if u != v {
                out.push(Proposal::new([u, v, w1, w2, w4], [v, w2, w1], &[t(5, 10, 0, 0, 3)]));
            }
            let _ = w3;
        }
    }
    out
}

// ---- 4-faces ----

/// Labeled 4-faces `w0..w3` whose vertices are all 3-vertices, with their
/// outside neighbors `x0..x3` (pairwise distinct).
fn deg3_faces(g: &PlanarGraph) -> Vec<([VertexId; 4], [VertexId; 4])> {
    let mut out = Vec::new();
    for f in short_faces(g, 4) {
        if f.iter().any(|&v| deg(g, v) != 3) {
            continue;
        }
        for w in dihedral(&f) {
            let x: Option<Vec<VertexId>> = w.iter().map(|&v| off_cycle(g, v, &w)).collect();
            let Some(x) = x else { continue };
            if distinct(&x) {
                out.push(([w[0], w[1], w[2], w[3]], [x[0], x[1], x[2], x[3]]));
            }
        }
    }
    out
}

fn face4_opposite_join(g: &PlanarGraph) -> Vec<Proposal> {
    let mut out = Vec::new();
    for (w, x) in deg3_faces(g) {
        if !g.has_edge(x[0], x[2]) || (g.has_edge(x[2], x[1]) && g.has_edge(x[2], x[3])) {
            continue;
        }
        if deg(g, x[0]) == 3 {
            out.push(Proposal::new([w[0], w[1], w[2], w[3], x[2]], [w[1], w[2], w[3]], &[t(5, 10, 0, 0, 3)]));
        } else {
            out.push(
                Proposal::new(
                    [x[0], w[0], w[1], w[2], w[3]],
                    [w[0], w[1], w[3]],
                    &[t(5, 10, 0, -1, 3), t(5, 10, -1, 0, 3)],
                )
                .adding(&[(x[1], x[3])]),
            );
        }
    }
    out
}

fn face4_long_corner(g: &PlanarGraph) -> Vec<Proposal> {
    let Ok(lens) = g.dart_face_lengths() else { return Vec::new() };
    let long = |a: VertexId, b: VertexId| lens.get(&(a, b)).copied().unwrap_or(0) >= 5 || lens.get(&(b, a)).copied().unwrap_or(0) >= 5;
    let mut out = Vec::new();
    let mut nested = Vec::new();
    for (w, x) in deg3_faces(g) {
        if !long(w[0], w[1]) || !long(w[1], w[2]) {
            continue;
        }
        let p = Proposal::new([w[0], w[2], w[3]], [w[0], w[2]], &[t(3, 5, 0, 0, 2)]).adding(&[(x[0], w[1]), (w[1], x[2])]);
        if let Some(g1) = rewritten(g, &p) {
            for k in find_q3(&g1, 1) {
                if !k.image().contains(&w[1]) {
                    continue;
                }
                let Ok(xs) = q3_collect_set(&g1, &k) else { continue };
                let removed: Vec<VertexId> = k.image().into_iter().chain([w[0], w[2], w[3]]).collect();
                let collect: Vec<VertexId> = xs.into_iter().chain([w[0], w[2]]).collect();
                nested.push(Proposal::new(removed, collect, &[t(11, 18, 0, 0, 7)]));
            }
        }
        out.push(p);
    }
    out.extend(nested);
    out
}

fn face4_opposite_deg4(g: &PlanarGraph) -> Vec<Proposal> {
    let mut out = Vec::new();
    for (w, x) in deg3_faces(g) {
        if deg(g, x[0]) == 4 && deg(g, x[2]) == 4 {
            out.push(Proposal::new([w[0], w[1], w[2], w[3], x[0], x[2]], [w[0], w[1], w[2]], &[t(6, 14, 0, 0, 3)]));
        }
    }
    out
}

fn face4_all_deg3(g: &PlanarGraph) -> Vec<Proposal> {
    let mut five = Vec::new();
    let mut four = Vec::new();
    for (w, x) in deg3_faces(g) {
        if !g.has_edge(x[0], x[1]) || !g.has_edge(x[2], x[3]) {
            continue;
        }
        let all: Vec<VertexId> = w.iter().chain(x.iter()).copied().collect();
        let mut sets: Vec<[VertexId; 5]> = Vec::new();
        if g.has_edge(x[1], x[2]) {
            sets.push([x[1], w[1], w[0], w[3], x[2]]);
        }
        if g.has_edge(x[0], x[3]) {
            sets.push([x[0], w[0], w[1], w[3], x[2]]);
        }
        if deg(g, x[1]) == 3 {
            sets.push([w[0], w[2], w[3], x[2], x[1]]);
        }
        for s in sets {
            five.push(Proposal::new(all.clone(), s, &[t(8, 13, 0, 0, 5)]));
        }
        four.push(Proposal::new([w[0], w[1], w[2], w[3], x[0], x[2], x[3]], [x[3], w[0], w[2], w[3]], &[t(7, 14, 0, 0, 4)]));
    }
    five.extend(four);
    five
}

fn face4_three_deg3(g: &PlanarGraph) -> Vec<Proposal> {
    let mut out = Vec::new();
    for f in short_faces(g, 4) {
        if f.iter().filter(|&&v| deg(g, v) == 3).count() != 3 {
            continue;
        }
        for w in dihedral(&f) {
            if deg(g, w[3]) == 3 {
                continue;
            }
            let x: Option<Vec<VertexId>> = w[..3].iter().map(|&v| off_cycle(g, v, &w)).collect();
            let Some(x) = x else { continue };
            out.push(Proposal::new([w[0], w[1], w[2], w[3], x[0], x[1], x[2]], [x[1], w[0], w[1], w[2]], &[t(7, 14, 0, 0, 4)]));
        }
    }
    out
}

fn face4_two_deg3(g: &PlanarGraph) -> Vec<Proposal> {
    let mut out = Vec::new();
    let mut nested = Vec::new();
    for f in short_faces(g, 4) {
        if f.iter().filter(|&&v| deg(g, v) == 3).count() != 2 {
            continue;
        }
        for w in dihedral(&f) {
            if deg(g, w[0]) != 3 || deg(g, w[1]) != 3 {
                continue;
            }
            let (Some(x0), Some(x1)) = (off_cycle(g, w[0], &w), off_cycle(g, w[1], &w)) else { continue };
            let p = Proposal::new([x1, w[0], w[1], w[3]], [w[0], w[1]], &[t(4, 10, 0, 0, 2)]).adding(&[(x0, w[2])]);
            if let Some(g1) = rewritten(g, &p) {
                let base: Vec<VertexId> = vec![x1, w[0], w[1], w[3]];
                for c in t6_components(&g1) {
                    if !c.image().contains(&x0) {
                        continue;
                    }
                    let Ok(xs) = t6_collect_set(&g1, &c) else { continue };
                    nested.push(Proposal::new(
                        c.image().into_iter().chain(base.iter().copied()),
                        xs.into_iter().chain([w[0], w[1]]),
                        &[t(10, 18, 0, 0, 6)],
                    ));
                }
                for c in find_q3(&g1, 1) {
                    if !c.image().contains(&x0) {
                        continue;
                    }
                    let Ok(xs) = q3_collect_set(&g1, &c) else { continue };
                    nested.push(Proposal::new(
                        c.image().into_iter().chain(base.iter().copied()),
                        xs.into_iter().chain([w[0], w[1]]),
                        &[t(12, 23, 0, 0, 7)],
                    ));
                }
            }
            out.push(p);
        }
    }
    out.extend(nested);
    out
}

/// A 4-face with a single 3-vertex `w0`. The three neighbors of `w0` play
/// symmetric roles once the face is viewed as a 4-cycle, so every
/// assignment of `(w1, w3, x0)` is tried.
fn face4_one_deg3(g: &PlanarGraph) -> Vec<Proposal> {
    let mut stages: [Vec<Proposal>; 6] = Default::default();
    for f in short_faces(g, 4) {
        let threes: Vec<VertexId> = f.iter().copied().filter(|&v| deg(g, v) == 3).collect();
        if threes.len() != 1 || f.iter().any(|&v| deg(g, v) > 4) {
            continue;
        }
        let w0 = threes[0];
        let nb = g.neighbors(w0).to_vec();
        if nb.len() != 3 {
            continue;
        }
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for p in PERMS {
            let (w1, w3, x0) = (nb[p[0]], nb[p[1]], nb[p[2]]);
            for w2 in common(g, w1, w3, &[w0]) {
                for x1 in common(g, x0, w1, &[w0]) {
                    for x3 in common(g, x0, w3, &[w0]) {
                        if !distinct(&[w0, w1, w2, w3, x0, x1, x3]) {
                            continue;
                        }
                        face4_one_deg3_at(g, [w0, w1, w2, w3, x0, x1, x3], &mut stages);
                    }
                }
            }
        }
    }
    stages.into_iter().flatten().collect()
}

fn face4_one_deg3_at(g: &PlanarGraph, v: [VertexId; 7], stages: &mut [Vec<Proposal>; 6]) {
    let [w0, w1, w2, w3, x0, x1, x3] = v;
    let acct20 = [t(8, 20, 0, 0, 4)];
    for x in common(g, w1, w3, &[w0, w2]) {
        if distinct(&[x, x1, x3]) && !g.has_edge(x, x0) {
            stages[0].push(Proposal::new([w0, w1, w2, w3, x, x0, x1, x3], [x0, w0, w1, w3], &acct20));
        }
    }
    for y1 in others(g, w1, &[w0, w2, x1]) {
        for y3 in others(g, w3, &[w0, w2, x3]) {
            for y0 in others(g, x0, &[w0, x1, x3]) {
                if y0 == y1 {
                    stages[1].push(Proposal::new([w0, w1, w2, w3, x0, x1, x3, y0], [x0, w0, w1, w3], &acct20));
                    continue;
                }
                if !distinct(&[y0, y1, y3]) {
                    continue;
                }
                let ys_free = !g.has_edge(y0, y1) && !g.has_edge(y1, y3) && !g.has_edge(y0, y3);
                if ys_free {
                    stages[2].push(
                        Proposal::new([x0, x1, x3, w1, w2, w3], [x0, w1, w3], &[t(6, 15, -1, 0, 3)]).adding(&[
                            (w0, y0),
                            (w0, y1),
                            (w0, y3),
                        ]),
                    );
                }
                if g.has_edge(y1, y3) && deg(g, y1) == 3 {
                    stages[3].push(Proposal::new([w0, w1, w3, x0, x1, x3, y1, y3], [y1, x0, w0, w3], &[t(8, 19, 0, 0, 4)]));
                }
                if g.has_edge(y3, x1) {
                    stages[4].push(Proposal::new([w0, w1, w2, w3, x0, x1, x3, y3], [x0, w0, w1, w3], &acct20));
                }
                if !g.has_edge(y0, y1) {
                    stages[5].push(
                        Proposal::new([w0, w1, w2, w3, x1, x3, y3], [w0, w1, w3], &[t(7, 19, 0, 0, 3)]).adding(&[(x0, y1)]),
                    );
                }
            }
        }
    }
}

// ---- 5-faces ----

fn face5_deg3(g: &PlanarGraph) -> Vec<Proposal> {
    let mut out = Vec::new();
    for f in short_faces(g, 5) {
        if f.iter().filter(|&&v| deg(g, v) == 3).count() < 4 {
            continue;
        }
        for w in dihedral(&f) {
            if [w[0], w[3], w[4]].iter().any(|&v| deg(g, v) != 3) {
                continue;
            }
            let (Some(x0), Some(x3)) = (off_cycle(g, w[0], &w), off_cycle(g, w[3], &w)) else { continue };
            out.push(Proposal::new([w[0], w[3], w[4]], [w[0], w[3]], &[t(3, 5, 0, 0, 2)]).adding(&[(x0, w[1]), (x3, w[2])]));
        }
    }
    out
}
