//! Induced occurrences of the cube `Q3` and of `T6 = K3,3 - e`, the counters
//! `p` and `q`, and the configuration finders used by the reducer.
//!
//! Pattern vertices are indexed from 0: `u1..u8` are `0..7` and `v1..v6`
//! are `0..5`, with the adjacency of [`gen::cube`] and [`gen::T6_EDGES`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::gen;
use crate::graph::{CycleRegionInfo, PlanarGraph, VertexId};

pub const Q3_EDGES: [(usize, usize); 12] = [
    (0, 1), (1, 2), (2, 3), (3, 0),
    (4, 5), (5, 6), (6, 7), (7, 4),
    (0, 4), (1, 5), (2, 6), (3, 7),
];

/// The six faces of the cube, as cyclic label sequences.
pub const Q3_FACES: [[usize; 4]; 6] = [
    [0, 1, 2, 3],
    [4, 5, 6, 7],
    [0, 1, 5, 4],
    [1, 2, 6, 5],
    [2, 3, 7, 6],
    [3, 0, 4, 7],
];

/// The four faces of `T6`: `v1v2v5v3`, `v4v2v5v3`, `v1v6v4v2`, `v1v6v4v3`.
pub const T6_FACES: [[usize; 4]; 4] = [[0, 1, 4, 2], [3, 1, 4, 2], [0, 5, 3, 1], [0, 5, 3, 2]];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternMatch<const K: usize> {
    /// `map[i]` is the host vertex playing pattern vertex `i`.
    pub map: [VertexId; K],
    pub degree_in_host: usize,
}

pub type Q3Match = PatternMatch<8>;

impl<const K: usize> PatternMatch<K> {
    pub fn image(&self) -> BTreeSet<VertexId> {
        self.map.iter().copied().collect()
    }

    /// Pattern vertices with a neighbor outside the image.
    pub fn between(&self, g: &PlanarGraph) -> [bool; K] {
        let img = self.image();
        let mut out = [false; K];
        for (i, &v) in self.map.iter().enumerate() {
            out[i] = g.neighbors(v).iter().any(|x| !img.contains(x));
        }
        out
    }

    /// Outside degree of each pattern vertex.
    pub fn outside_degrees(&self, g: &PlanarGraph) -> [usize; K] {
        let img = self.image();
        let mut out = [0; K];
        for (i, &v) in self.map.iter().enumerate() {
            out[i] = g.neighbors(v).iter().filter(|x| !img.contains(x)).count();
        }
        out
    }

    /// The same occurrence relabeled by a pattern automorphism `a`, so the
    /// new map sends `i` to the old image of `a[i]`.
    pub fn compose(&self, a: &[usize; K]) -> Self {
        let mut map = self.map;
        for i in 0..K {
            map[i] = self.map[a[i]];
        }
        PatternMatch {
            map,
            degree_in_host: self.degree_in_host,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T6Match {
    pub m: PatternMatch<6>,
    pub between: [bool; 6],
    /// Whether all between vertices lie on a single face of the pattern.
    pub between_on_one_face: bool,
}

impl T6Match {
    pub fn map(&self) -> &[VertexId; 6] {
        &self.m.map
    }

    pub fn degree_in_host(&self) -> usize {
        self.m.degree_in_host
    }

    pub fn image(&self) -> BTreeSet<VertexId> {
        self.m.image()
    }
}

fn adjacency<const K: usize>(edges: &[(usize, usize)]) -> [[bool; K]; K] {
    let mut a = [[false; K]; K];
    for &(i, j) in edges {
        a[i][j] = true;
        a[j][i] = true;
    }
    a
}

fn t6_edges_usize() -> [(usize, usize); 8] {
    let mut e = [(0, 0); 8];
    for (k, &(i, j)) in gen::T6_EDGES.iter().enumerate() {
        e[k] = (i as usize, j as usize);
    }
    e
}

/// Order in which pattern vertices are placed; each vertex after the first
/// has an earlier neighbor.
const Q3_ORDER: [usize; 8] = [0, 1, 3, 4, 2, 5, 7, 6];
const T6_ORDER: [usize; 6] = [0, 1, 2, 5, 3, 4];

struct Matcher<'a, const K: usize> {
    g: &'a PlanarGraph,
    adj: [[bool; K]; K],
    deg: [usize; K],
    order: [usize; K],
    /// Only maps whose first vertex is the smallest image id.
    anchored: bool,
    out: Vec<[VertexId; K]>,
}

impl<const K: usize> Matcher<'_, K> {
    fn run(&mut self) {
        let first = self.order[0];
        let roots: Vec<VertexId> = self.g.vertices().filter(|&v| self.g.degree(v) >= self.deg[first]).collect();
        let mut map = [VertexId::MAX; K];
        for r in roots {
            map[first] = r;
            self.extend(1, &mut map);
        }
    }

    fn extend(&mut self, k: usize, map: &mut [VertexId; K]) {
        if k == K {
            self.out.push(*map);
            return;
        }
        let p = self.order[k];
        let anchor = self.order[..k].iter().copied().find(|&q| self.adj[p][q]).expect("connected order");
        let cands: Vec<VertexId> = self.g.neighbors(map[anchor]).to_vec();
        'cand: for c in cands {
            if self.g.degree(c) < self.deg[p] {
                continue;
            }
            if self.anchored && c < map[self.order[0]] {
                continue;
            }
            for &q in &self.order[..k] {
                if map[q] == c || self.g.has_edge(c, map[q]) != self.adj[p][q] {
                    continue 'cand;
                }
            }
            map[p] = c;
            self.extend(k + 1, map);
            map[p] = VertexId::MAX;
        }
    }
}

fn all_maps<const K: usize>(
    g: &PlanarGraph,
    edges: &[(usize, usize)],
    order: [usize; K],
    anchored: bool,
) -> Vec<[VertexId; K]> {
    let adj = adjacency::<K>(edges);
    let mut deg = [0; K];
    for i in 0..K {
        deg[i] = adj[i].iter().filter(|&&b| b).count();
    }
    let mut m = Matcher {
        g,
        adj,
        deg,
        order,
        anchored,
        out: Vec::new(),
    };
    m.run();
    m.out
}

/// One canonical map (lexicographically smallest) per image set, sorted by
/// sorted image.
fn dedup<const K: usize>(maps: Vec<[VertexId; K]>) -> Vec<[VertexId; K]> {
    let mut best: BTreeMap<Vec<VertexId>, [VertexId; K]> = BTreeMap::new();
    for m in maps {
        let mut key = m.to_vec();
        key.sort_unstable();
        best.entry(key)
            .and_modify(|b| {
                if m < *b {
                    *b = m;
                }
            })
            .or_insert(m);
    }
    best.into_values().collect()
}

/// All induced cube occurrences of host-degree at most `max_degree`.
pub fn find_q3(g: &PlanarGraph, max_degree: usize) -> Vec<Q3Match> {
    dedup(all_maps::<8>(g, &Q3_EDGES, Q3_ORDER, true))
        .into_iter()
        .map(|map| {
            let img: BTreeSet<_> = map.iter().copied().collect();
            PatternMatch {
                map,
                degree_in_host: g.subgraph_degree(&img).unwrap(),
            }
        })
        .filter(|m| m.degree_in_host <= max_degree)
        .collect()
}

/// Whether the non-between pattern vertices contain a pair missing from
/// some face, i.e. every between vertex lies on that face.
fn between_on_one_face(between: &[bool; 6]) -> bool {
    T6_FACES.iter().any(|f| (0..6).all(|i| !between[i] || f.contains(&i)))
}

/// All induced `T6` occurrences of host-degree at most `max_degree`.
pub fn find_t6(g: &PlanarGraph, max_degree: usize) -> Vec<T6Match> {
    dedup(all_maps::<6>(g, &t6_edges_usize(), T6_ORDER, false))
        .into_iter()
        .filter_map(|map| {
            let img: BTreeSet<_> = map.iter().copied().collect();
            let m = PatternMatch {
                map,
                degree_in_host: g.subgraph_degree(&img).unwrap(),
            };
            if m.degree_in_host > max_degree {
                return None;
            }
            let between = m.between(g);
            Some(T6Match {
                m,
                between,
                between_on_one_face: between_on_one_face(&between),
            })
        })
        .collect()
}

/// The 48 automorphisms of the cube, in lexicographic order.
pub fn q3_automorphisms() -> Vec<[usize; 8]> {
    let mut v: Vec<[usize; 8]> = all_maps::<8>(&gen::cube(), &Q3_EDGES, Q3_ORDER, false)
        .into_iter()
        .map(|m| m.map(|x| x as usize))
        .collect();
    v.sort_unstable();
    v
}

/// The 8 automorphisms of `T6`, in lexicographic order.
pub fn t6_automorphisms() -> Vec<[usize; 6]> {
    let mut v: Vec<[usize; 6]> = all_maps::<6>(&gen::t6(), &t6_edges_usize(), T6_ORDER, false)
        .into_iter()
        .map(|m| m.map(|x| x as usize))
        .collect();
    v.sort_unstable();
    v
}

/// `p(G)`: number of distinct `Q3^{1-}` images. Such occurrences are
/// pairwise disjoint in triangle-free planar graphs, so this is also the
/// maximum number of disjoint ones.
pub fn count_p(g: &PlanarGraph) -> usize {
    find_q3(g, 1).len()
}

fn is_t6_component(g: &PlanarGraph, c: &[VertexId]) -> bool {
    if c.len() != 6 {
        return false;
    }
    let set: BTreeSet<VertexId> = c.iter().copied().collect();
    if g.induced_edge_count(&set) != 8 {
        return false;
    }
    match two_color(g, c) {
        Some(side) => side.iter().filter(|&&s| s).count() == 3,
        None => false,
    }
}

/// 2-coloring of a connected vertex list, or `None` if not bipartite.
fn two_color(g: &PlanarGraph, c: &[VertexId]) -> Option<Vec<bool>> {
    let idx: BTreeMap<VertexId, usize> = c.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut col: Vec<Option<bool>> = vec![None; c.len()];
    col[0] = Some(true);
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for w in g.neighbors(c[i]) {
            let Some(&j) = idx.get(w) else { continue };
            match col[j] {
                None => {
                    col[j] = Some(!col[i].unwrap());
                    stack.push(j);
                }
                Some(x) if x == col[i].unwrap() => return None,
                _ => {}
            }
        }
    }
    col.into_iter().collect()
}

/// `q(G)`: number of components isomorphic to `T6`.
pub fn count_q(g: &PlanarGraph) -> usize {
    g.components().iter().filter(|c| is_t6_component(g, c)).count()
}

/// `T6` components, in order of smallest vertex.
pub fn t6_components(g: &PlanarGraph) -> Vec<T6Match> {
    let comps: Vec<BTreeSet<VertexId>> = g
        .components()
        .into_iter()
        .filter(|c| is_t6_component(g, c))
        .map(|c| c.into_iter().collect())
        .collect();
    if comps.is_empty() {
        return Vec::new();
    }
    find_t6(g, 0).into_iter().filter(|m| comps.contains(&m.image())).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureConfig {
    LowDegreeVertex(VertexId),
    /// A 4-face (boundary in walk order) with at least one 3-vertex.
    FourFaceWith3Vertex(Vec<VertexId>),
    /// A 5-face with at least four 3-vertices.
    FiveFaceWithFour3Vertices(Vec<VertexId>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("structure violation: {0}")]
pub struct StructureViolation(pub String);

/// The first unavoidable configuration present: a 2⁻-vertex, else a 4-face
/// with a 3-vertex, else a 5-face with four 3-vertices.
pub fn find_structure_config(g: &PlanarGraph) -> Result<StructureConfig, StructureViolation> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) <= 2) {
        return Ok(StructureConfig::LowDegreeVertex(v));
    }
    let faces = g.faces().map_err(|e| StructureViolation(format!("{e}")))?;
    let simple = |b: &[VertexId]| b.iter().collect::<BTreeSet<_>>().len() == b.len();
    for f in &faces {
        if f.len() == 4 && simple(&f.boundary) && f.boundary.iter().any(|&v| g.degree(v) == 3) {
            return Ok(StructureConfig::FourFaceWith3Vertex(f.boundary.clone()));
        }
    }
    for f in &faces {
        if f.len() == 5 && simple(&f.boundary) && f.boundary.iter().filter(|&&v| g.degree(v) == 3).count() >= 4 {
            return Ok(StructureConfig::FiveFaceWithFour3Vertices(f.boundary.clone()));
        }
    }
    Err(StructureViolation(format!(
        "no 2--vertex, no 4-face with a 3-vertex and no 5-face with four 3-vertices (n={}, m={})",
        g.n(),
        g.m()
    )))
}

/// Every 4-cycle once, as `[a, b, c, d]` with `a` the smallest vertex and
/// `b < d`, in lexicographic order.
pub fn four_cycles(g: &PlanarGraph) -> Vec<[VertexId; 4]> {
    let mut out = Vec::new();
    for a in g.vertices() {
        let na: Vec<VertexId> = g.neighbors(a).iter().copied().filter(|&x| x > a).collect();
        for &b in &na {
            for &d in &na {
                if d <= b {
                    continue;
                }
                for &c in g.neighbors(b) {
                    if c > a && c != d && g.has_edge(c, d) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// The first separating 4-cycle (in [`four_cycles`] order) with at least
/// `min_3vertices` vertices of degree 3.
pub fn find_separating_4cycle(g: &PlanarGraph, min_3vertices: usize) -> Option<CycleRegionInfo> {
    for c in four_cycles(g) {
        if c.iter().filter(|&&v| g.degree(v) == 3).count() < min_3vertices {
            continue;
        }
        if let Ok(info) = g.classify_cycle(&c) {
            if info.is_separating() {
                return Some(info);
            }
        }
    }
    None
}
