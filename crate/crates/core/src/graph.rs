//! Simple planar graphs stored as rotation systems.
//!
//! Every vertex carries a cyclically ordered neighbor list. When the graph is
//! marked as embedded, that order is read as the clockwise order of a planar
//! embedding and face traversal uses it directly. All mutations return a new
//! value; ids of deleted vertices are never handed out again.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::embed;

pub type VertexId = u32;

/// Undirected edge with `0 < 1`.
pub type Edge = (VertexId, VertexId);

pub(crate) fn norm(u: VertexId, v: VertexId) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("edge {0}-{1} is absent")]
    EdgeAbsent(VertexId, VertexId),
    #[error("edge {0}-{1} already exists")]
    EdgeExists(VertexId, VertexId),
    #[error("self-loop at {0}")]
    SelfLoop(VertexId),
    #[error("vertices {0} and {1} do not share the face")]
    NotCoFacial(VertexId, VertexId),
    #[error("invalid embedding: {0}")]
    EmbeddingInvalid(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("graph is not planar")]
    NotPlanar,
}

/// A face as the closed boundary walk of the rotation system.
///
/// `boundary[i] -> boundary[i + 1]` are the darts of the walk; a vertex may
/// repeat (cut vertices, bridges).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<VertexId>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.boundary.contains(&v)
    }

    /// The directed edges of the walk.
    pub fn darts(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let l = self.boundary.len();
        (0..l).map(move |i| (self.boundary[i], self.boundary[(i + 1) % l]))
    }

    /// Boundary vertices without repetition.
    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.boundary.iter().copied().collect()
    }
}

/// Split of the vertex set by an embedded cycle.
///
/// `inside` is the smaller of the two sides (ties go to the right-hand side
/// of the traversal direction). Vertices of components that do not touch the
/// cycle are counted as outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleRegionInfo {
    pub cycle: Vec<VertexId>,
    pub inside: BTreeSet<VertexId>,
    pub outside: BTreeSet<VertexId>,
}

impl CycleRegionInfo {
    pub fn is_separating(&self) -> bool {
        !self.inside.is_empty() && !self.outside.is_empty()
    }

    /// Whether the edge from cycle vertex `w` to the non-cycle vertex `x`
    /// leaves into the inside region.
    pub fn edge_inside(&self, x: VertexId) -> bool {
        self.inside.contains(&x)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct PlanarGraph {
    rot: Vec<Option<Vec<VertexId>>>,
    n: usize,
    m: usize,
    embedded: bool,
    pub name: Option<String>,
    pub seed: Option<u64>,
}

impl fmt::Debug for PlanarGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PlanarGraph")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("embedded", &self.embedded)
            .field("rot", &self.rotations())
            .finish()
    }
}

impl Default for PlanarGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl PlanarGraph {
    /// The empty graph, trivially embedded.
    pub fn new() -> Self {
        PlanarGraph {
            rot: Vec::new(),
            n: 0,
            m: 0,
            embedded: true,
            name: None,
            seed: None,
        }
    }

    /// Builds a graph on vertices `0..n` from an edge list, without an
    /// embedding. Neighbor order is insertion order.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut rot: Vec<Option<Vec<VertexId>>> = vec![Some(Vec::new()); n];
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for x in [u, v] {
                if x as usize >= n {
                    return Err(GraphError::UnknownVertex(x));
                }
            }
            if !seen.insert(norm(u, v)) {
                return Err(GraphError::EdgeExists(u, v));
            }
            rot[u as usize].as_mut().unwrap().push(v);
            rot[v as usize].as_mut().unwrap().push(u);
        }
        Ok(PlanarGraph {
            rot,
            n,
            m: seen.len(),
            embedded: edges.is_empty(),
            name: None,
            seed: None,
        })
    }

    /// Builds an embedded graph on `0..rotations.len()` from clockwise
    /// neighbor lists. Consistency and Euler's formula are checked.
    pub fn from_rotations(rotations: Vec<Vec<VertexId>>) -> Result<Self, GraphError> {
        let n = rotations.len();
        let g = PlanarGraph::from_rotation_map(
            rotations
                .into_iter()
                .enumerate()
                .map(|(i, r)| (i as VertexId, r))
                .collect(),
        )?;
        debug_assert_eq!(g.n, n);
        Ok(g)
    }

    /// Like [`PlanarGraph::from_rotations`] but with an arbitrary id set.
    pub fn from_rotation_map(rotations: BTreeMap<VertexId, Vec<VertexId>>) -> Result<Self, GraphError> {
        let cap = rotations.keys().next_back().map_or(0, |&v| v as usize + 1);
        let mut rot: Vec<Option<Vec<VertexId>>> = vec![None; cap];
        for (&v, r) in &rotations {
            rot[v as usize] = Some(r.clone());
        }
        let mut g = PlanarGraph {
            rot,
            n: rotations.len(),
            m: 0,
            embedded: true,
            name: None,
            seed: None,
        };
        g.check_simple()?;
        g.m = g.rot.iter().flatten().map(|r| r.len()).sum::<usize>() / 2;
        g.check_euler()?;
        Ok(g)
    }

    /// Replaces the neighbor order with the given rotations (same edge set
    /// required) and marks the result embedded after an Euler check.
    pub fn with_rotations(&self, rotations: &BTreeMap<VertexId, Vec<VertexId>>) -> Result<Self, GraphError> {
        let mut g = self.clone();
        for v in self.vertices() {
            let r = rotations.get(&v).cloned().unwrap_or_default();
            let mut a: Vec<_> = r.clone();
            let mut b: Vec<_> = self.neighbors(v).to_vec();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(GraphError::EmbeddingInvalid(alloc::format!(
                    "rotation at {v} does not match its neighborhood"
                )));
            }
            g.rot[v as usize] = Some(r);
        }
        g.embedded = true;
        g.check_euler()?;
        Ok(g)
    }

    /// Computes a planar embedding (LR planarity) and returns the embedded
    /// graph, or `NotPlanar`.
    pub fn embed(&self) -> Result<Self, GraphError> {
        if self.embedded {
            return Ok(self.clone());
        }
        let rots = embed::lr_embedding(self).ok_or(GraphError::NotPlanar)?;
        self.with_rotations(&rots)
    }

    /// Whether the graph is planar, via the LR test.
    pub fn is_planar(&self) -> bool {
        embed::lr_embedding(self).is_some()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_embedded(&self) -> bool {
        self.embedded
    }

    /// One past the largest id ever present.
    pub fn id_bound(&self) -> usize {
        self.rot.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        (v as usize) < self.rot.len() && self.rot[v as usize].is_some()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.rot
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_some())
            .map(|(i, _)| i as VertexId)
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.vertices().collect()
    }

    /// Clockwise neighbor order (or insertion order when not embedded).
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.rot
            .get(v as usize)
            .and_then(|r| r.as_deref())
            .unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).contains(&v)
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.vertices() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn rotations(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        self.vertices().map(|v| (v, self.neighbors(v).to_vec())).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    fn require(&self, v: VertexId) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    /// Simple-graph and rotation-consistency check.
    pub fn check_simple(&self) -> Result<(), GraphError> {
        for u in self.vertices() {
            let nb = self.neighbors(u);
            let mut seen = BTreeSet::new();
            for &v in nb {
                if v == u {
                    return Err(GraphError::SelfLoop(u));
                }
                if !self.contains(v) {
                    return Err(GraphError::UnknownVertex(v));
                }
                if !seen.insert(v) {
                    return Err(GraphError::EdgeExists(u, v));
                }
                if !self.neighbors(v).contains(&u) {
                    return Err(GraphError::EmbeddingInvalid(alloc::format!(
                        "{v} is in the rotation of {u} but not vice versa"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Per-component Euler check `n - m + f = 2` (an isolated vertex counts
    /// one face). A no-op on graphs without an embedding.
    pub fn check_euler(&self) -> Result<(), GraphError> {
        if !self.embedded {
            return Ok(());
        }
        let faces = self.faces_unchecked();
        let comps = self.components();
        let mut comp_of = BTreeMap::new();
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of.insert(v, i);
            }
        }
        let mut fcount = vec![0i64; comps.len()];
        for f in &faces {
            fcount[comp_of[&f.boundary[0]]] += 1;
        }
        for (i, c) in comps.iter().enumerate() {
            let nc = c.len() as i64;
            let mc: i64 = c.iter().map(|&v| self.degree(v) as i64).sum::<i64>() / 2;
            let fc = if mc == 0 { 1 } else { fcount[i] };
            if nc - mc + fc != 2 {
                return Err(GraphError::EmbeddingInvalid(alloc::format!(
                    "component of vertex {} has n - m + f = {}",
                    c[0],
                    nc - mc + fc
                )));
            }
        }
        Ok(())
    }

    fn pred_in_rotation(&self, at: VertexId, of: VertexId) -> VertexId {
        let r = self.neighbors(at);
        let i = r.iter().position(|&x| x == of).expect("rotation consistent");
        r[(i + r.len() - 1) % r.len()]
    }

    /// The dart that follows `(u, v)` on its face.
    pub fn next_dart(&self, u: VertexId, v: VertexId) -> (VertexId, VertexId) {
        (v, self.pred_in_rotation(v, u))
    }

    fn faces_unchecked(&self) -> Vec<Face> {
        let mut visited: Vec<Vec<bool>> = self
            .rot
            .iter()
            .map(|r| vec![false; r.as_ref().map_or(0, |r| r.len())])
            .collect();
        let mut faces = Vec::new();
        for u in self.vertices() {
            for i in 0..self.degree(u) {
                if visited[u as usize][i] {
                    continue;
                }
                let start = (u, self.neighbors(u)[i]);
                let mut boundary = Vec::new();
                let mut d = start;
                loop {
                    let j = self.neighbors(d.0).iter().position(|&x| x == d.1).unwrap();
                    if visited[d.0 as usize][j] {
                        break;
                    }
                    visited[d.0 as usize][j] = true;
                    boundary.push(d.0);
                    d = self.next_dart(d.0, d.1);
                }
                faces.push(Face { boundary });
            }
        }
        faces
    }

    /// All faces of the embedding. Every dart lies on exactly one face.
    pub fn faces(&self) -> Result<Vec<Face>, GraphError> {
        if !self.embedded {
            return Err(GraphError::EmbeddingInvalid("graph carries no embedding".to_string()));
        }
        self.check_simple()?;
        Ok(self.faces_unchecked())
    }

    /// Map from dart to the length of the face it lies on.
    pub fn dart_face_lengths(&self) -> Result<BTreeMap<(VertexId, VertexId), usize>, GraphError> {
        let mut out = BTreeMap::new();
        for f in self.faces()? {
            let l = f.len();
            for d in f.darts() {
                out.insert(d, l);
            }
        }
        Ok(out)
    }

    pub fn is_triangle_free(&self) -> bool {
        for u in self.vertices() {
            let nb = self.neighbors(u);
            for (i, &v) in nb.iter().enumerate() {
                if v < u {
                    continue;
                }
                for &w in &nb[i + 1..] {
                    if w > u && self.has_edge(v, w) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Number of edges with exactly one endpoint in `h`.
    pub fn subgraph_degree(&self, h: &BTreeSet<VertexId>) -> Result<usize, GraphError> {
        let mut d = 0;
        for &v in h {
            self.require(v)?;
            d += self.neighbors(v).iter().filter(|x| !h.contains(x)).count();
        }
        Ok(d)
    }

    /// Number of edges with both endpoints in `h`.
    pub fn induced_edge_count(&self, h: &BTreeSet<VertexId>) -> usize {
        h.iter()
            .map(|&v| self.neighbors(v).iter().filter(|x| h.contains(x)).count())
            .sum::<usize>()
            / 2
    }

    /// Induced subgraph on `V \ s`; rotations are filtered in place, so the
    /// result carries the induced embedding.
    pub fn delete_vertices(&self, s: &BTreeSet<VertexId>) -> Result<PlanarGraph, GraphError> {
        for &v in s {
            self.require(v)?;
        }
        let mut g = self.clone();
        let mut removed_edges = 0;
        for &v in s {
            removed_edges += self
                .neighbors(v)
                .iter()
                .map(|x| if s.contains(x) { 1 } else { 2 })
                .sum::<usize>();
            g.rot[v as usize] = None;
        }
        for r in g.rot.iter_mut().flatten() {
            r.retain(|x| !s.contains(x));
        }
        g.n -= s.len();
        g.m -= removed_edges / 2;
        debug_assert_eq!(g.m, g.rot.iter().flatten().map(|r| r.len()).sum::<usize>() / 2);
        Ok(g)
    }

    pub fn delete_edge(&self, u: VertexId, v: VertexId) -> Result<PlanarGraph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::EdgeAbsent(u, v));
        }
        let mut g = self.clone();
        g.rot[u as usize].as_mut().unwrap().retain(|&x| x != v);
        g.rot[v as usize].as_mut().unwrap().retain(|&x| x != u);
        g.m -= 1;
        Ok(g)
    }

    /// Contracts `uv` into `u`; `v` disappears. The rotation of `v` is
    /// spliced into that of `u` at the position of `v`, and parallel edges
    /// are coalesced (the copy already at `u` survives).
    pub fn contract_edge(&self, u: VertexId, v: VertexId) -> Result<(PlanarGraph, VertexId), GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::EdgeAbsent(u, v));
        }
        let mut g = self.clone();
        let ru = self.neighbors(u);
        let rv = self.neighbors(v);
        let ju = rv.iter().position(|&x| x == u).unwrap();
        // v's other neighbors, clockwise starting after u
        let tail: Vec<VertexId> = (1..rv.len()).map(|k| rv[(ju + k) % rv.len()]).collect();
        let iv = ru.iter().position(|&x| x == v).unwrap();
        let mut new_ru = Vec::with_capacity(ru.len() + tail.len());
        new_ru.extend_from_slice(&ru[..iv]);
        for &w in &tail {
            if !ru.contains(&w) {
                new_ru.push(w);
            }
        }
        new_ru.extend_from_slice(&ru[iv + 1..]);
        let mut lost = 1;
        for &w in &tail {
            let rw = g.rot[w as usize].as_mut().unwrap();
            if ru.contains(&w) {
                rw.retain(|&x| x != v);
                lost += 1;
            } else {
                for x in rw.iter_mut() {
                    if *x == v {
                        *x = u;
                    }
                }
            }
        }
        g.rot[u as usize] = Some(new_ru);
        g.rot[v as usize] = None;
        g.n -= 1;
        g.m -= lost;
        Ok((g, u))
    }

    /// Inserts `uv` as a chord of face `f`, using the first corner of each
    /// endpoint on the walk. An isolated endpoint is accepted and simply
    /// placed inside `f`.
    pub fn add_edge_in_face(&self, u: VertexId, v: VertexId, f: &Face) -> Result<PlanarGraph, GraphError> {
        self.require(u)?;
        self.require(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::EdgeExists(u, v));
        }
        if !self.embedded {
            return Err(GraphError::EmbeddingInvalid("graph carries no embedding".to_string()));
        }
        let corner = |x: VertexId| -> Option<VertexId> {
            let b = &f.boundary;
            b.iter().position(|&y| y == x).map(|i| b[(i + 1) % b.len()])
        };
        let mut g = self.clone();
        for (x, y) in [(u, v), (v, u)] {
            if self.degree(x) == 0 {
                g.rot[x as usize].as_mut().unwrap().push(y);
                continue;
            }
            let after = corner(x).ok_or(GraphError::NotCoFacial(u, v))?;
            if !self.has_edge(x, after) {
                return Err(GraphError::EmbeddingInvalid("face is not a walk of this graph".to_string()));
            }
            let rx = g.rot[x as usize].as_mut().unwrap();
            let i = rx.iter().position(|&z| z == after).unwrap();
            rx.insert(i + 1, y);
        }
        g.m += 1;
        Ok(g)
    }

    /// Adds `uv` in the first face that contains both endpoints (or the face
    /// of the non-isolated endpoint). Errors with `NotCoFacial` otherwise.
    pub fn add_edge_in_some_face(&self, u: VertexId, v: VertexId) -> Result<PlanarGraph, GraphError> {
        let faces = self.faces()?;
        let iso_u = self.degree(u) == 0;
        let iso_v = self.degree(v) == 0;
        if iso_u && iso_v {
            return self.add_edge_in_face(u, v, &Face { boundary: Vec::new() });
        }
        for f in &faces {
            if (iso_u || f.contains(u)) && (iso_v || f.contains(v)) {
                return self.add_edge_in_face(u, v, f);
            }
        }
        Err(GraphError::NotCoFacial(u, v))
    }

    /// Classifies the vertices off an embedded cycle by the side they lie on.
    pub fn classify_cycle(&self, cycle: &[VertexId]) -> Result<CycleRegionInfo, GraphError> {
        let k = cycle.len();
        if k < 3 {
            return Err(GraphError::NotACycle("fewer than 3 vertices".to_string()));
        }
        let on: BTreeSet<VertexId> = cycle.iter().copied().collect();
        if on.len() != k {
            return Err(GraphError::NotACycle("repeated vertex".to_string()));
        }
        for i in 0..k {
            self.require(cycle[i])?;
            if !self.has_edge(cycle[i], cycle[(i + 1) % k]) {
                return Err(GraphError::NotACycle(alloc::format!(
                    "{} and {} are not adjacent",
                    cycle[i],
                    cycle[(i + 1) % k]
                )));
            }
        }
        if !self.embedded {
            return Err(GraphError::EmbeddingInvalid("graph carries no embedding".to_string()));
        }
        let mut right = Vec::new();
        let mut left = Vec::new();
        for i in 0..k {
            let w = cycle[i];
            let next = cycle[(i + 1) % k];
            let prev = cycle[(i + k - 1) % k];
            let r = self.neighbors(w);
            let start = r.iter().position(|&x| x == next).unwrap();
            let mut side_right = true;
            for t in 1..r.len() {
                let x = r[(start + t) % r.len()];
                if x == prev {
                    side_right = false;
                    continue;
                }
                if on.contains(&x) {
                    continue;
                }
                if side_right {
                    right.push(x);
                } else {
                    left.push(x);
                }
            }
        }
        let reach = |seeds: &[VertexId]| -> BTreeSet<VertexId> {
            let mut seen: BTreeSet<VertexId> = seeds.iter().copied().collect();
            let mut q: VecDeque<VertexId> = seeds.iter().copied().collect();
            while let Some(x) = q.pop_front() {
                for &y in self.neighbors(x) {
                    if !on.contains(&y) && seen.insert(y) {
                        q.push_back(y);
                    }
                }
            }
            seen
        };
        let rs = reach(&right);
        let ls = reach(&left);
        if rs.intersection(&ls).next().is_some() {
            return Err(GraphError::EmbeddingInvalid(
                "a component touches both sides of a cycle".to_string(),
            ));
        }
        let (inside, mut outside) = if rs.len() <= ls.len() { (rs, ls) } else { (ls, rs) };
        for v in self.vertices() {
            if !on.contains(&v) && !inside.contains(&v) {
                outside.insert(v);
            }
        }
        Ok(CycleRegionInfo {
            cycle: cycle.to_vec(),
            inside,
            outside,
        })
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        self.components_avoiding(&BTreeSet::new())
    }

    /// Components of the graph with `removed` deleted.
    pub fn components_avoiding(&self, removed: &BTreeSet<VertexId>) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.rot.len()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if removed.contains(&s) || comp[s as usize] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut c = vec![s];
            comp[s as usize] = id;
            let mut i = 0;
            while i < c.len() {
                let x = c[i];
                i += 1;
                for &y in self.neighbors(x) {
                    if !removed.contains(&y) && comp[y as usize] == usize::MAX {
                        comp[y as usize] = id;
                        c.push(y);
                    }
                }
            }
            c.sort_unstable();
            out.push(c);
        }
        out
    }

    /// Bridges, each normalized and sorted ascending.
    pub fn bridges(&self) -> Vec<Edge> {
        let cap = self.rot.len();
        let mut disc = vec![0usize; cap];
        let mut low = vec![0usize; cap];
        let mut timer = 1;
        let mut out = Vec::new();
        for s in self.vertices() {
            if disc[s as usize] != 0 {
                continue;
            }
            // iterative DFS: (vertex, parent, next neighbor index)
            let mut stack: Vec<(VertexId, Option<VertexId>, usize)> = vec![(s, None, 0)];
            disc[s as usize] = timer;
            low[s as usize] = timer;
            timer += 1;
            while let Some(&mut (v, p, ref mut i)) = stack.last_mut() {
                let nb = self.neighbors(v);
                if *i < nb.len() {
                    let w = nb[*i];
                    *i += 1;
                    if Some(w) == p {
                        continue;
                    }
                    if disc[w as usize] == 0 {
                        disc[w as usize] = timer;
                        low[w as usize] = timer;
                        timer += 1;
                        stack.push((w, Some(v), 0));
                    } else {
                        low[v as usize] = low[v as usize].min(disc[w as usize]);
                    }
                } else {
                    stack.pop();
                    if let Some(p) = p {
                        low[p as usize] = low[p as usize].min(low[v as usize]);
                        if low[v as usize] > disc[p as usize] {
                            out.push(norm(p, v));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Stable 64-bit FNV-1a digest of the vertex set and rotations.
    pub fn digest(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        for v in self.vertices() {
            feed(v as u64);
            feed(self.degree(v) as u64);
            for &w in self.neighbors(v) {
                feed(w as u64);
            }
        }
        h
    }

    /// Relabels through `map`, keeping rotations. `map` must be injective on
    /// the vertex set.
    pub fn relabel(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<PlanarGraph, GraphError> {
        let mut rots = BTreeMap::new();
        for v in self.vertices() {
            let nv = *map.get(&v).ok_or(GraphError::UnknownVertex(v))?;
            let r = self
                .neighbors(v)
                .iter()
                .map(|w| map.get(w).copied().ok_or(GraphError::UnknownVertex(*w)))
                .collect::<Result<Vec<_>, _>>()?;
            if rots.insert(nv, r).is_some() {
                return Err(GraphError::EmbeddingInvalid("relabeling is not injective".to_string()));
            }
        }
        let mut g = PlanarGraph::from_rotation_map_unchecked(rots);
        g.embedded = self.embedded;
        Ok(g)
    }

    fn from_rotation_map_unchecked(rotations: BTreeMap<VertexId, Vec<VertexId>>) -> PlanarGraph {
        let cap = rotations.keys().next_back().map_or(0, |&v| v as usize + 1);
        let mut rot: Vec<Option<Vec<VertexId>>> = vec![None; cap];
        let mut m2 = 0;
        for (v, r) in &rotations {
            m2 += r.len();
            rot[*v as usize] = Some(r.clone());
        }
        PlanarGraph {
            rot,
            n: rotations.len(),
            m: m2 / 2,
            embedded: false,
            name: None,
            seed: None,
        }
    }

    /// Disjoint union; ids of `other` are shifted past this graph's ids.
    pub fn disjoint_union(&self, other: &PlanarGraph) -> PlanarGraph {
        let shift = self.rot.len() as VertexId;
        let mut rots = self.rotations();
        for v in other.vertices() {
            rots.insert(v + shift, other.neighbors(v).iter().map(|w| w + shift).collect());
        }
        let mut g = PlanarGraph::from_rotation_map_unchecked(rots);
        g.embedded = self.embedded && other.embedded;
        g
    }

    /// Adds a fresh isolated vertex and returns its id.
    pub fn add_vertex(&self) -> (PlanarGraph, VertexId) {
        let mut g = self.clone();
        let id = g.rot.len() as VertexId;
        g.rot.push(Some(Vec::new()));
        g.n += 1;
        (g, id)
    }

    /// Appends `uv` at the end of both rotations and drops the embedding flag.
    pub fn add_edge_unembedded(&self, u: VertexId, v: VertexId) -> Result<PlanarGraph, GraphError> {
        self.require(u)?;
        self.require(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::EdgeExists(u, v));
        }
        let mut g = self.clone();
        g.rot[u as usize].as_mut().unwrap().push(v);
        g.rot[v as usize].as_mut().unwrap().push(u);
        g.m += 1;
        g.embedded = false;
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    fn set(xs: &[VertexId]) -> BTreeSet<VertexId> {
        xs.iter().copied().collect()
    }

    fn c4() -> PlanarGraph {
        PlanarGraph::from_rotations(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap()
    }

    #[test]
    fn cube_has_six_quadrilateral_faces() {
        let q = gen::cube();
        let f = q.faces().unwrap();
        assert_eq!(f.len(), 6);
        assert!(f.iter().all(|f| f.len() == 4));
        assert_eq!(f.iter().map(|f| f.len()).sum::<usize>(), 2 * q.m());
    }

    #[test]
    fn c4_and_k2_faces() {
        let f = c4().faces().unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|f| f.len() == 4));
        let k2 = PlanarGraph::from_rotations(vec![vec![1], vec![0]]).unwrap();
        let f = k2.faces().unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].len(), 2);
    }

    #[test]
    fn inconsistent_rotation_is_rejected() {
        let r = PlanarGraph::from_rotations(vec![vec![1], vec![]]);
        assert!(matches!(r, Err(GraphError::EmbeddingInvalid(_))));
        // K4 with a non-planar rotation: Euler fails
        let bad = PlanarGraph::from_rotations(vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]]);
        assert!(bad.is_err());
    }

    #[test]
    fn triangle_freeness() {
        assert!(gen::cube().is_triangle_free());
        let (c3, _) = c4().contract_edge(0, 1).unwrap();
        assert_eq!((c3.n(), c3.m()), (3, 3));
        assert!(!c3.is_triangle_free());
        let k2 = PlanarGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(k2.is_triangle_free());
    }

    #[test]
    fn subgraph_degree_examples() {
        let q = gen::cube();
        assert_eq!(q.subgraph_degree(&q.vertex_set()).unwrap(), 0);
        let (g, p) = q.add_vertex();
        let g = g.add_edge_in_some_face(p, 0).unwrap();
        assert_eq!(g.subgraph_degree(&q.vertex_set()).unwrap(), 1);
        assert_eq!(c4().subgraph_degree(&set(&[0])).unwrap(), 2);
        assert_eq!(c4().subgraph_degree(&set(&[9])), Err(GraphError::UnknownVertex(9)));
    }

    #[test]
    fn delete_vertices_examples() {
        let p3 = c4().delete_vertices(&set(&[0])).unwrap();
        assert_eq!((p3.n(), p3.m()), (3, 2));
        let q = gen::cube().delete_vertices(&set(&[0])).unwrap();
        assert_eq!((q.n(), q.m()), (7, 9));
        q.check_euler().unwrap();
        let e = c4().delete_vertices(&set(&[0, 1, 2, 3])).unwrap();
        assert!(e.is_empty());
        assert_eq!(e.m(), 0);
    }

    #[test]
    fn deleted_ids_never_appear_on_faces() {
        let q = gen::cube().delete_vertices(&set(&[0, 6])).unwrap();
        for f in q.faces().unwrap() {
            assert!(!f.contains(0) && !f.contains(6));
        }
    }

    #[test]
    fn contraction_examples() {
        let p3 = PlanarGraph::from_rotations(vec![vec![1], vec![0, 2], vec![1]]).unwrap();
        let (p2, keep) = p3.contract_edge(1, 2).unwrap();
        assert_eq!(keep, 1);
        assert_eq!((p2.n(), p2.m()), (2, 1));
        let star = PlanarGraph::from_rotations(vec![vec![1, 2, 3], vec![0], vec![0], vec![0]]).unwrap();
        let (k12, _) = star.contract_edge(0, 1).unwrap();
        assert_eq!((k12.n(), k12.m()), (3, 2));
        k12.check_euler().unwrap();
        assert_eq!(c4().contract_edge(0, 2), Err(GraphError::EdgeAbsent(0, 2)));
    }

    #[test]
    fn contraction_keeps_embedding() {
        let q = gen::cube();
        let (g, _) = q.contract_edge(0, 1).unwrap();
        g.check_simple().unwrap();
        g.check_euler().unwrap();
        assert_eq!((g.n(), g.m()), (7, 11));
    }

    #[test]
    fn chord_insertion() {
        let g = c4();
        let f = g.faces().unwrap()[0].clone();
        let k4e = g.add_edge_in_face(0, 2, &f).unwrap();
        assert_eq!(k4e.m(), 5);
        k4e.check_euler().unwrap();
        assert!(!k4e.is_triangle_free());
        let c6 = gen::cycle(6);
        let f = c6.faces().unwrap()[0].clone();
        let g = c6.add_edge_in_face(0, 3, &f).unwrap();
        let faces = g.faces().unwrap();
        assert_eq!(faces.iter().filter(|f| f.len() == 4).count(), 2);
        assert_eq!(c6.add_edge_in_face(0, 1, &f), Err(GraphError::EdgeExists(0, 1)));
    }

    #[test]
    fn chord_requires_shared_face() {
        let q = gen::cube();
        let f = q.faces().unwrap()[0].clone();
        let outside: Vec<VertexId> = q.vertices().filter(|v| !f.contains(*v)).collect();
        let inside = f.boundary[0];
        let far = *outside.iter().find(|&&x| !q.has_edge(inside, x)).unwrap();
        assert_eq!(q.add_edge_in_face(inside, far, &f), Err(GraphError::NotCoFacial(inside, far)));
    }

    #[test]
    fn cube_cycles_classified() {
        let q = gen::cube();
        // top face u1u2u3u4 = ids 0,1,2,3
        let top = q.classify_cycle(&[0, 1, 2, 3]).unwrap();
        assert_eq!(top.inside.len(), 0);
        assert_eq!(top.outside.len(), 4);
        assert!(!top.is_separating());
        // every 4-cycle of the cube bounds a face
        for c in [[0, 1, 5, 4], [1, 2, 6, 5], [4, 5, 6, 7]] {
            assert!(!q.classify_cycle(&c).unwrap().is_separating());
        }
        // the 6-cycle u1u2u3u7u8u5 splits off u4 from u6
        let hex = q.classify_cycle(&[0, 1, 2, 6, 7, 4]).unwrap();
        assert!(hex.is_separating());
        assert_eq!(hex.inside.len(), 1);
        let sides = [hex.inside.clone(), hex.outside.clone()];
        assert!(sides.contains(&set(&[3])));
        assert!(sides.contains(&set(&[5])));
        let c = c4().classify_cycle(&[0, 1, 2, 3]).unwrap();
        assert!(c.inside.is_empty() && c.outside.is_empty());
        assert!(matches!(c4().classify_cycle(&[0, 2, 1, 3]), Err(GraphError::NotACycle(_))));
    }

    #[test]
    fn bridges_and_components() {
        let g = PlanarGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (4, 5)]).unwrap();
        assert_eq!(g.bridges(), vec![(2, 3), (4, 5)]);
        assert_eq!(g.components(), vec![vec![0, 1, 2, 3], vec![4, 5]]);
        assert!(gen::cube().bridges().is_empty());
    }

    #[test]
    fn triangle_free_edge_bound_holds_on_generators() {
        for g in [gen::cube(), gen::grid(4, 5), gen::hexgrid(2), gen::t6()] {
            assert!(g.n() < 3 || g.m() + 4 <= 2 * g.n());
        }
    }

    #[test]
    fn euler_on_generators() {
        for g in [gen::cube(), gen::grid(3, 3), gen::hexgrid(3), gen::t6(), gen::cubes(2)] {
            g.check_simple().unwrap();
            g.check_euler().unwrap();
        }
    }
}
