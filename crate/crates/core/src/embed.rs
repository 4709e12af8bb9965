//! Left-right planarity test with embedding extraction.
//!
//! Iterative three-pass formulation (orientation, testing, embedding) after
//! Brandes' description of the de Fraysseix-Rosenstiehl criterion. The output
//! is a clockwise rotation for every vertex, or `None` for non-planar input.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{PlanarGraph, VertexId};

type Eid = usize;

#[derive(Clone, Copy, Default, PartialEq, Eq)]
struct Interval {
    low: Option<Eid>,
    high: Option<Eid>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy)]
struct ConflictPair {
    id: usize,
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        core::mem::swap(&mut self.left, &mut self.right);
    }
}

struct Lr {
    n: usize,
    adjs: Vec<Vec<(usize, usize)>>,
    src: Vec<usize>,
    dst: Vec<usize>,
    out: Vec<Vec<Eid>>,
    height: Vec<Option<i64>>,
    parent_edge: Vec<Option<Eid>>,
    lowpt: Vec<i64>,
    lowpt2: Vec<i64>,
    nesting: Vec<i64>,
    refe: Vec<Option<Eid>>,
    side: Vec<i8>,
    lowpt_edge: Vec<Eid>,
    stack_bottom: Vec<Option<usize>>,
    stack: Vec<ConflictPair>,
    next_pair: usize,
    ordered: Vec<Vec<Eid>>,
    roots: Vec<usize>,
}

impl Lr {
    fn new_edge(&mut self, v: usize, w: usize) -> Eid {
        let id = self.src.len();
        self.src.push(v);
        self.dst.push(w);
        self.out[v].push(id);
        self.lowpt.push(0);
        self.lowpt2.push(0);
        self.nesting.push(0);
        self.refe.push(None);
        self.side.push(1);
        self.lowpt_edge.push(id);
        self.stack_bottom.push(None);
        id
    }

    fn top_id(&self) -> Option<usize> {
        self.stack.last().map(|p| p.id)
    }

    fn conflicting(&self, i: &Interval, b: Eid) -> bool {
        match i.high {
            Some(h) => self.lowpt[h] > self.lowpt[b],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> i64 {
        let lp = |e: Option<Eid>| self.lowpt[e.expect("nonempty interval has a low edge")];
        if p.left.is_empty() {
            return lp(p.right.low);
        }
        if p.right.is_empty() {
            return lp(p.left.low);
        }
        lp(p.left.low).min(lp(p.right.low))
    }

    fn orientation(&mut self, root: usize, oriented: &mut [bool]) {
        let mut stack = vec![root];
        let mut ind = vec![0usize; self.n];
        // edge pending a child return, keyed by vertex
        let mut pending: Vec<Option<Eid>> = vec![None; self.n];
        while let Some(v) = stack.pop() {
            let e = self.parent_edge[v];
            while ind[v] < self.adjs[v].len() {
                let (w, ue) = self.adjs[v][ind[v]];
                let vw = if let Some(vw) = pending[v].take() {
                    vw
                } else {
                    if oriented[ue] {
                        ind[v] += 1;
                        continue;
                    }
                    oriented[ue] = true;
                    let vw = self.new_edge(v, w);
                    let hv = self.height[v].unwrap();
                    self.lowpt[vw] = hv;
                    self.lowpt2[vw] = hv;
                    match self.height[w] {
                        None => {
                            self.parent_edge[w] = Some(vw);
                            self.height[w] = Some(hv + 1);
                            pending[v] = Some(vw);
                            stack.push(v);
                            stack.push(w);
                            break;
                        }
                        Some(hw) => self.lowpt[vw] = hw,
                    }
                    vw
                };
                let hv = self.height[v].unwrap();
                self.nesting[vw] = 2 * self.lowpt[vw];
                if self.lowpt2[vw] < hv {
                    self.nesting[vw] += 1;
                }
                if let Some(e) = e {
                    if self.lowpt[vw] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                        self.lowpt[e] = self.lowpt[vw];
                    } else if self.lowpt[vw] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                    }
                }
                ind[v] += 1;
            }
        }
    }

    fn testing(&mut self, root: usize) -> bool {
        let mut stack = vec![root];
        let mut ind = vec![0usize; self.n];
        let mut resumed = vec![false; self.n];
        while let Some(v) = stack.pop() {
            let e = self.parent_edge[v];
            let mut descended = false;
            while ind[v] < self.ordered[v].len() {
                let ei = self.ordered[v][ind[v]];
                let w = self.dst[ei];
                if !resumed[v] {
                    self.stack_bottom[ei] = self.top_id();
                    if self.parent_edge[w] == Some(ei) {
                        resumed[v] = true;
                        stack.push(v);
                        stack.push(w);
                        descended = true;
                        break;
                    }
                    self.lowpt_edge[ei] = ei;
                    let id = self.next_pair;
                    self.next_pair += 1;
                    self.stack.push(ConflictPair {
                        id,
                        left: Interval::default(),
                        right: Interval {
                            low: Some(ei),
                            high: Some(ei),
                        },
                    });
                } else {
                    resumed[v] = false;
                }
                if self.lowpt[ei] < self.height[v].unwrap() {
                    if ei == self.ordered[v][0] {
                        if let Some(e) = e {
                            self.lowpt_edge[e] = self.lowpt_edge[ei];
                        }
                    } else if !self.add_constraints(ei, e.expect("non-root has a parent edge")) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !descended {
                if let Some(e) = e {
                    self.remove_back_edges(e);
                }
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: Eid, e: Eid) -> bool {
        let mut p = ConflictPair {
            id: self.next_pair,
            left: Interval::default(),
            right: Interval::default(),
        };
        self.next_pair += 1;
        loop {
            let Some(mut q) = self.stack.pop() else {
                break;
            };
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let ql = q.right.low.expect("right interval nonempty");
            if self.lowpt[ql] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.refe[p.right.low.unwrap()] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.refe[ql] = Some(self.lowpt_edge[e]);
            }
            if self.top_id() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(l) = p.right.low {
                self.refe[l] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(l) = p.left.low {
                self.refe[l] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: Eid) {
        let u = self.src[e];
        let hu = self.height[u].unwrap();
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != hu {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.refe[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.refe[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.refe[h];
            }
            if p.right.high.is_none() {
                if let Some(l) = p.right.low {
                    self.refe[l] = p.left.low;
                    self.side[l] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < hu {
            let top = self.stack.last().expect("return edge keeps a conflict pair");
            let hl = top.left.high;
            let hr = top.right.high;
            self.refe[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: Eid) -> i8 {
        let mut chain = vec![e];
        while let Some(r) = self.refe[*chain.last().unwrap()] {
            chain.push(r);
        }
        for i in (0..chain.len() - 1).rev() {
            let (a, b) = (chain[i], chain[i + 1]);
            self.side[a] *= self.side[b];
            self.refe[a] = None;
        }
        self.side[e]
    }
}

fn insert_after(list: &mut Vec<usize>, reference: usize, x: usize) {
    let i = list.iter().position(|&y| y == reference).expect("reference present");
    list.insert(i + 1, x);
}

fn insert_before(list: &mut Vec<usize>, reference: usize, x: usize) {
    let i = list.iter().position(|&y| y == reference).expect("reference present");
    list.insert(i, x);
}

/// Returns a rotation system of a planar embedding of `g`, or `None`.
pub fn lr_embedding(g: &PlanarGraph) -> Option<BTreeMap<VertexId, Vec<VertexId>>> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let n = ids.len();
    if n > 2 && g.m() > 3 * n - 6 {
        return None;
    }
    let mut index = BTreeMap::new();
    for (i, &v) in ids.iter().enumerate() {
        index.insert(v, i);
    }
    let mut adjs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut uedges = 0;
    for (i, &v) in ids.iter().enumerate() {
        for &w in g.neighbors(v) {
            if v < w {
                let j = index[&w];
                adjs[i].push((j, uedges));
                adjs[j].push((i, uedges));
                uedges += 1;
            }
        }
    }
    let mut lr = Lr {
        n,
        adjs,
        src: Vec::new(),
        dst: Vec::new(),
        out: vec![Vec::new(); n],
        height: vec![None; n],
        parent_edge: vec![None; n],
        lowpt: Vec::new(),
        lowpt2: Vec::new(),
        nesting: Vec::new(),
        refe: Vec::new(),
        side: Vec::new(),
        lowpt_edge: Vec::new(),
        stack_bottom: Vec::new(),
        stack: Vec::new(),
        next_pair: 0,
        ordered: Vec::new(),
        roots: Vec::new(),
    };
    let mut oriented = vec![false; uedges];
    for v in 0..n {
        if lr.height[v].is_none() {
            lr.height[v] = Some(0);
            lr.roots.push(v);
            lr.orientation(v, &mut oriented);
        }
    }
    let sorted_out = |lr: &Lr| -> Vec<Vec<Eid>> {
        lr.out
            .iter()
            .map(|o| {
                let mut o = o.clone();
                o.sort_by_key(|&e| lr.nesting[e]);
                o
            })
            .collect()
    };
    lr.ordered = sorted_out(&lr);
    for r in lr.roots.clone() {
        if !lr.testing(r) {
            return None;
        }
    }
    for e in 0..lr.src.len() {
        let s = lr.sign(e) as i64;
        lr.nesting[e] *= s;
    }
    lr.ordered = sorted_out(&lr);

    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        for &e in &lr.ordered[v] {
            rot[v].push(lr.dst[e]);
        }
    }
    let mut left_ref = vec![usize::MAX; n];
    let mut right_ref = vec![usize::MAX; n];
    for &r in &lr.roots {
        let mut stack = vec![r];
        let mut ind = vec![0usize; n];
        while let Some(v) = stack.pop() {
            while ind[v] < lr.ordered[v].len() {
                let ei = lr.ordered[v][ind[v]];
                ind[v] += 1;
                let w = lr.dst[ei];
                if lr.parent_edge[w] == Some(ei) {
                    rot[w].insert(0, v);
                    left_ref[v] = w;
                    right_ref[v] = w;
                    stack.push(v);
                    stack.push(w);
                    break;
                } else if lr.side[ei] == 1 {
                    insert_after(&mut rot[w], right_ref[w], v);
                } else {
                    insert_before(&mut rot[w], left_ref[w], v);
                    left_ref[w] = v;
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for (i, r) in rot.into_iter().enumerate() {
        out.insert(ids[i], r.into_iter().map(|j| ids[j]).collect());
    }
    Some(out)
}
