//! Induced-forest validation and the three collect lemmas: given a matched
//! cube or `T6`, choose pattern vertices that can be added to any induced
//! forest of the rest of the graph.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{norm, Edge, GraphError, PlanarGraph, VertexId};
use crate::pattern::{q3_automorphisms, t6_automorphisms, PatternMatch, Q3Match, T6Match, Q3_EDGES, Q3_FACES, T6_FACES};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtendError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("lift failed: {0}")]
    LiftFailed(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

struct Dsu {
    parent: BTreeMap<VertexId, VertexId>,
}

impl Dsu {
    fn find(&mut self, x: VertexId) -> VertexId {
        let mut r = x;
        while let Some(&p) = self.parent.get(&r) {
            if p == r {
                break;
            }
            r = p;
        }
        let mut y = x;
        while y != r {
            let p = self.parent[&y];
            self.parent.insert(y, r);
            y = p;
        }
        r
    }

    fn union(&mut self, a: VertexId, b: VertexId) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent.insert(ra, rb);
        true
    }
}

/// Whether `s` induces an acyclic subgraph (union-find over induced edges).
pub fn check_induced_forest(g: &PlanarGraph, s: &BTreeSet<VertexId>) -> Result<bool, GraphError> {
    let mut dsu = Dsu {
        parent: s.iter().map(|&v| (v, v)).collect(),
    };
    for &u in s {
        if !g.contains(u) {
            return Err(GraphError::UnknownVertex(u));
        }
        for &v in g.neighbors(u) {
            if u < v && s.contains(&v) && !dsu.union(u, v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Same predicate by depth-first search for a non-tree edge.
pub fn check_induced_forest_dfs(g: &PlanarGraph, s: &BTreeSet<VertexId>) -> Result<bool, GraphError> {
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    for &root in s {
        if !g.contains(root) {
            return Err(GraphError::UnknownVertex(root));
        }
        if seen.contains(&root) {
            continue;
        }
        seen.insert(root);
        let mut stack = vec![(root, None::<VertexId>)];
        while let Some((v, parent)) = stack.pop() {
            for &w in g.neighbors(v) {
                if !s.contains(&w) || Some(w) == parent {
                    continue;
                }
                if seen.contains(&w) {
                    return Ok(false);
                }
                seen.insert(w);
                stack.push((w, Some(v)));
            }
        }
    }
    Ok(true)
}

fn validated(g: &PlanarGraph, f: &BTreeSet<VertexId>, add: &[VertexId], what: &str) -> Result<BTreeSet<VertexId>, ExtendError> {
    let mut out = f.clone();
    for &v in add {
        if !out.insert(v) {
            return Err(ExtendError::LiftFailed(format!("{what}: vertex {v} already in the forest")));
        }
    }
    if !check_induced_forest(g, &out)? {
        return Err(ExtendError::LiftFailed(format!("{what}: collected set {add:?} closes a cycle")));
    }
    Ok(out)
}

fn relabel_until<const K: usize>(
    m: &PatternMatch<K>,
    auts: &[[usize; K]],
    mut pred: impl FnMut(&PatternMatch<K>) -> bool,
) -> Option<PatternMatch<K>> {
    auts.iter().map(|a| m.compose(a)).find(|r| pred(r))
}

fn pick<const K: usize>(m: &PatternMatch<K>, labels: &[usize]) -> Vec<VertexId> {
    labels.iter().map(|&i| m.map[i]).collect()
}

fn cube_adjacent(i: usize, j: usize) -> bool {
    Q3_EDGES.contains(&(i, j)) || Q3_EDGES.contains(&(j, i))
}

/// The five cube vertices the cube lemma collects (host-degree ≤ 3).
pub fn q3_collect_set(g: &PlanarGraph, m: &Q3Match) -> Result<Vec<VertexId>, ExtendError> {
    let img = m.image();
    let deg = g.subgraph_degree(&img)?;
    if deg > 3 {
        return Err(ExtendError::LiftFailed(format!("cube of degree {deg} exceeds 3")));
    }
    // three highest-degree vertices, ties by smallest id
    let mut by_deg: Vec<(usize, VertexId)> = m.map.iter().map(|&v| (g.degree(v), v)).collect();
    by_deg.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let trio: BTreeSet<VertexId> = by_deg[..3].iter().map(|&(_, v)| v).collect();
    let pos: Vec<usize> = trio.iter().map(|v| m.map.iter().position(|x| x == v).unwrap()).collect();
    let inner = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .filter(|&(i, j)| cube_adjacent(pos[i], pos[j]))
        .count();
    let auts = q3_automorphisms();
    let as_set = |r: &Q3Match, labels: [usize; 3]| labels.iter().map(|&i| r.map[i]).collect::<BTreeSet<_>>() == trio;
    let chosen = match inner {
        0 => {
            let r = relabel_until(m, &auts, |r| as_set(r, [0, 2, 5]));
            r.map(|r| pick(&r, &[1, 3, 4, 6, 7]))
        }
        2 => {
            let r = relabel_until(m, &auts, |r| as_set(r, [0, 1, 2]));
            r.and_then(|r| {
                let x = if g.degree(r.map[0]) <= 4 {
                    r.map[0]
                } else if g.degree(r.map[2]) <= 4 {
                    r.map[2]
                } else {
                    return None;
                };
                let mut s = vec![x];
                s.extend(pick(&r, &[3, 4, 5, 6]));
                Some(s)
            })
        }
        1 => {
            let r = relabel_until(m, &auts, |r| {
                let pair: BTreeSet<_> = [r.map[0], r.map[1]].into_iter().collect();
                trio.contains(&r.map[6]) && pair.is_subset(&trio)
            });
            r.map(|r| pick(&r, &[2, 3, 4, 5, 7]))
        }
        _ => None,
    };
    chosen.ok_or_else(|| ExtendError::LiftFailed(format!("no cube-lemma case fits trio {trio:?}")))
}

/// `f` plus five cube vertices, re-validated in `g`.
pub fn extend_q3(g: &PlanarGraph, m: &Q3Match, f: &BTreeSet<VertexId>) -> Result<BTreeSet<VertexId>, ExtendError> {
    let add = q3_collect_set(g, m)?;
    validated(g, f, &add, "cube lemma")
}

/// The four `T6` vertices the `T6` lemma collects (host-degree ≤ 3).
pub fn t6_collect_set(g: &PlanarGraph, m: &T6Match) -> Result<Vec<VertexId>, ExtendError> {
    let deg = g.subgraph_degree(&m.image())?;
    if deg > 3 {
        return Err(ExtendError::LiftFailed(format!("T6 of degree {deg} exceeds 3")));
    }
    let auts = t6_automorphisms();
    let face_load = |r: &PatternMatch<6>, f: &[usize; 4]| {
        let od = r.outside_degrees(g);
        f.iter().map(|&i| od[i]).sum::<usize>()
    };
    let best = T6_FACES.iter().map(|f| face_load(&m.m, f)).max().unwrap();
    let r = relabel_until(&m.m, &auts, |r| face_load(r, &T6_FACES[0]) == best).expect("automorphisms act transitively on faces");
    let od = r.outside_degrees(g);
    let btw: Vec<bool> = od.iter().map(|&d| d > 0).collect();
    const X: [usize; 4] = [0, 5, 3, 4];
    const ALT: [usize; 4] = [1, 3, 5, 2];
    if let Some(v) = (0..6).find(|&i| od[i] >= 2) {
        return Ok(pick(&r, if X.contains(&v) { &ALT } else { &X }));
    }
    if X.iter().filter(|&&i| btw[i]).count() <= 1 {
        return Ok(pick(&r, &X));
    }
    let x = if !btw[1] { 1 } else if !btw[2] { 2 } else {
        return Err(ExtendError::InternalInconsistency("both v2 and v3 are between".into()));
    };
    match (btw[3], btw[5]) {
        (false, false) => Ok(pick(&r, &ALT)),
        (true, true) => Err(ExtendError::InternalInconsistency("both v4 and v6 are between".into())),
        (b4, _) => {
            let y = if b4 { 5 } else { 3 };
            match (btw[0], btw[4]) {
                (true, true) => Ok(pick(&r, &ALT)),
                (true, false) => Ok(pick(&r, &[4, 3, 5, x])),
                _ => Ok(pick(&r, &[0, x, y, 4])),
            }
        }
    }
}

/// `f` plus four `T6` vertices, re-validated in `g`.
pub fn extend_t6(g: &PlanarGraph, m: &T6Match, f: &BTreeSet<VertexId>) -> Result<BTreeSet<VertexId>, ExtendError> {
    let add = t6_collect_set(g, m)?;
    validated(g, f, &add, "T6 lemma")
}

/// Five cube vertices for a cube of host-degree ≤ 5 whose vertices all
/// have host-degree ≤ 4.
pub fn q3_maxdeg4_collect_set(g: &PlanarGraph, m: &Q3Match) -> Result<Vec<VertexId>, ExtendError> {
    let deg = g.subgraph_degree(&m.image())?;
    if deg > 5 {
        return Err(ExtendError::LiftFailed(format!("cube of degree {deg} exceeds 5")));
    }
    if let Some(&v) = m.map.iter().find(|&&v| g.degree(v) > 4) {
        return Err(ExtendError::LiftFailed(format!("cube vertex {v} has degree above 4")));
    }
    if deg <= 3 {
        return q3_collect_set(g, m);
    }
    let three = |r: &Q3Match, i: usize| g.degree(r.map[i]) == 3;
    let per_face = |r: &Q3Match, f: &[usize; 4]| f.iter().filter(|&&i| three(r, i)).count();
    let best = Q3_FACES.iter().map(|f| per_face(m, f)).max().unwrap();
    let auts = q3_automorphisms();
    let fail = || ExtendError::InternalInconsistency("no labeling fits the chosen face".into());
    if best >= 3 {
        let r = relabel_until(m, &auts, |r| three(r, 0) && three(r, 1) && three(r, 2)).ok_or_else(fail)?;
        return Ok(pick(&r, &[0, 1, 2, 5, 7]));
    }
    if best < 2 {
        return Err(ExtendError::InternalInconsistency(format!(
            "best face has {best} 3-vertices, forcing degree at least 6"
        )));
    }
    let adjacent_pair = Q3_EDGES.iter().any(|&(i, j)| three(m, i) && three(m, j));
    if adjacent_pair {
        let r = relabel_until(m, &auts, |r| three(r, 0) && three(r, 1) && !three(r, 2) && !three(r, 3)).ok_or_else(fail)?;
        let star = if three(&r, 6) {
            6
        } else if three(&r, 7) {
            7
        } else {
            return Err(ExtendError::InternalInconsistency("u7 and u8 are both 4-vertices".into()));
        };
        Ok(pick(&r, &[5, 0, 1, 3, star]))
    } else {
        let r = relabel_until(m, &auts, |r| three(r, 0) && three(r, 2)).ok_or_else(fail)?;
        let star = if !three(&r, 7) {
            1
        } else if !three(&r, 5) {
            3
        } else {
            1
        };
        Ok(pick(&r, &[0, 2, 5, 7, star]))
    }
}

/// `f` plus five cube vertices under the bounded-degree cube lemma.
pub fn extend_q3_maxdeg4(g: &PlanarGraph, m: &Q3Match, f: &BTreeSet<VertexId>) -> Result<BTreeSet<VertexId>, ExtendError> {
    let add = q3_maxdeg4_collect_set(g, m)?;
    validated(g, f, &add, "bounded-degree cube lemma")
}

/// Components of `G[x]`.
fn trees_of(g: &PlanarGraph, x: &BTreeSet<VertexId>) -> Vec<BTreeSet<VertexId>> {
    let mut out: Vec<BTreeSet<VertexId>> = Vec::new();
    let mut seen = BTreeSet::new();
    for &s in x {
        if !seen.insert(s) {
            continue;
        }
        let mut t = BTreeSet::from([s]);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if x.contains(&w) && seen.insert(w) {
                    t.insert(w);
                    stack.push(w);
                }
            }
        }
        out.push(t);
    }
    out
}

/// Whether `x ⊆ r` can be added to every induced forest of `G - r`.
///
/// Exact test: `G[x]` is a forest and the multigraph joining each tree of
/// `G[x]` to each component of `G - r` once per edge between them has no
/// cycle. Any cycle there is realized by shortest (hence induced) paths in
/// the components involved.
pub fn collectible(g: &PlanarGraph, r: &BTreeSet<VertexId>, x: &BTreeSet<VertexId>) -> Result<bool, GraphError> {
    if !x.is_subset(r) || !check_induced_forest(g, x)? {
        return Ok(false);
    }
    let comps = g.components_avoiding(r);
    let mut comp_of = BTreeMap::new();
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of.insert(v, i);
        }
    }
    let trees = trees_of(g, x);
    let off = comps.len();
    let mut dsu = Dsu {
        parent: (0..(off + trees.len()) as VertexId).map(|i| (i, i)).collect(),
    };
    for (ti, t) in trees.iter().enumerate() {
        for &v in t {
            for w in g.neighbors(v) {
                if let Some(&ci) = comp_of.get(w) {
                    if !dsu.union((off + ti) as VertexId, ci as VertexId) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Sufficient test for adding `x ⊆ r` to any induced forest of
/// `G - r + added`: every tree of `G[x]` has at most one edge to the rest,
/// or exactly two edges ending at the endpoints of an added edge that no
/// other tree uses.
pub fn collectible_with_added(
    g: &PlanarGraph,
    r: &BTreeSet<VertexId>,
    x: &BTreeSet<VertexId>,
    added: &[Edge],
) -> Result<bool, GraphError> {
    if added.is_empty() {
        return collectible(g, r, x);
    }
    if !x.is_subset(r) || !check_induced_forest(g, x)? {
        return Ok(false);
    }
    let added: BTreeSet<Edge> = added.iter().map(|&(a, b)| norm(a, b)).collect();
    let mut claimed = BTreeSet::new();
    for t in trees_of(g, x) {
        let ends: Vec<VertexId> = t
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().copied())
            .filter(|w| !r.contains(w))
            .collect();
        match ends.len() {
            0 | 1 => {}
            2 => {
                let e = norm(ends[0], ends[1]);
                if ends[0] == ends[1] || !added.contains(&e) || !claimed.insert(e) {
                    return Ok(false);
                }
            }
            _ => return Ok(false),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{cube, cycle, t6};
    use crate::pattern::{find_q3, find_t6};

    fn set(xs: &[VertexId]) -> BTreeSet<VertexId> {
        xs.iter().copied().collect()
    }

    #[test]
    fn forest_check_examples() {
        let c = cycle(4);
        assert!(check_induced_forest(&c, &set(&[0, 1, 2])).unwrap());
        assert!(!check_induced_forest(&c, &set(&[0, 1, 2, 3])).unwrap());
        assert!(check_induced_forest(&cube(), &set(&[1, 3, 4, 6, 7])).unwrap());
        assert!(check_induced_forest_dfs(&cube(), &set(&[1, 3, 4, 6, 7])).unwrap());
        assert!(!check_induced_forest_dfs(&c, &set(&[0, 1, 2, 3])).unwrap());
        assert_eq!(check_induced_forest(&c, &set(&[7])), Err(GraphError::UnknownVertex(7)));
    }

    #[test]
    fn isolated_cube_collects_five() {
        let q = cube();
        let m = &find_q3(&q, 0)[0];
        let f = extend_q3(&q, m, &BTreeSet::new()).unwrap();
        assert_eq!(f.len(), 5);
        let f = extend_q3_maxdeg4(&q, m, &BTreeSet::new()).unwrap();
        assert_eq!(f.len(), 5);
    }

    fn pendants(g: &PlanarGraph, at: &[VertexId]) -> PlanarGraph {
        let mut h = g.clone();
        for &v in at {
            let (k, x) = h.add_vertex();
            h = k.add_edge_in_some_face(v, x).unwrap();
        }
        h
    }

    #[test]
    fn cube_trio_cases() {
        // u1, u3, u6 raised: pairwise non-adjacent
        let g = pendants(&cube(), &[0, 2, 5]);
        let m = &find_q3(&g, 3)[0];
        assert_eq!(set(&q3_collect_set(&g, m).unwrap()), set(&[1, 3, 4, 6, 7]));
        // u1, u2, u7 raised: an edge and a far vertex
        let g = pendants(&cube(), &[0, 1, 6]);
        let m = &find_q3(&g, 3)[0];
        assert_eq!(set(&q3_collect_set(&g, m).unwrap()), set(&[2, 3, 4, 5, 7]));
        // u1, u2, u3 raised: a path, so x = u1
        let g = pendants(&cube(), &[0, 1, 2]);
        let m = &find_q3(&g, 3)[0];
        let s = set(&q3_collect_set(&g, m).unwrap());
        assert_eq!(s.len(), 5);
        assert!(s.contains(&0) || s.contains(&2));
        assert!(!s.contains(&1));
    }

    #[test]
    fn t6_cases() {
        let t = t6();
        let m = &find_t6(&t, 0)[0];
        assert_eq!(set(&t6_collect_set(&t, m).unwrap()), set(&[0, 5, 3, 4]));
        // v1 with two outside edges lies in X
        let g = pendants(&t, &[0, 0]);
        let m = &find_t6(&g, 3)[0];
        let s = set(&t6_collect_set(&g, m).unwrap());
        assert!(!s.contains(&0));
        assert!(check_induced_forest(&g, &s).unwrap());
        // v1 between and v4 between, v5 not
        let g = pendants(&t, &[0, 3]);
        let m = &find_t6(&g, 3)[0];
        let s = t6_collect_set(&g, m).unwrap();
        assert_eq!(s.len(), 4);
        assert!(check_induced_forest(&g, &set(&s)).unwrap());
    }

    #[test]
    fn maxdeg4_cases() {
        // u5..u8 raised: the top face has four 3-vertices
        let g = pendants(&cube(), &[4, 5, 6, 7]);
        let m = &find_q3(&g, 5)[0];
        let s = q3_maxdeg4_collect_set(&g, m).unwrap();
        assert!(check_induced_forest(&g, &set(&s)).unwrap());
        // u1, u3 are the only 3-vertices of top face; raise u2, u4, u5, u7, u8
        let g = pendants(&cube(), &[1, 3, 4, 6, 7]);
        let m = &find_q3(&g, 5)[0];
        let s = set(&q3_maxdeg4_collect_set(&g, m).unwrap());
        assert_eq!(s.len(), 5);
        assert!(check_induced_forest(&g, &s).unwrap());
        // adjacent 3-vertices u1, u2
        let g = pendants(&cube(), &[2, 3, 4, 5, 6]);
        let m = &find_q3(&g, 5)[0];
        let s = set(&q3_maxdeg4_collect_set(&g, m).unwrap());
        assert!(check_induced_forest(&g, &s).unwrap());
    }

    #[test]
    fn collectibility() {
        let c = cycle(6);
        // removing two adjacent vertices leaves a path; both rejoin it
        assert!(!collectible(&c, &set(&[0, 1]), &set(&[0, 1])).unwrap());
        assert!(collectible(&c, &set(&[0, 1]), &set(&[0])).unwrap());
        // via an added edge between its two neighbors
        assert!(collectible_with_added(&c, &set(&[0]), &set(&[0]), &[(1, 5)]).unwrap());
        assert!(!collectible_with_added(&c, &set(&[0, 3]), &set(&[0, 3]), &[(1, 5)]).unwrap());
    }
}
