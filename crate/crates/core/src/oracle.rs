//! Exact maximum induced forest for small graphs.
//!
//! Two independent solvers: a branch and bound over cycle vertices, and
//! exhaustive subset enumeration. Both report the lexicographically smallest
//! optimal vertex set.

use alloc::vec::Vec;

use crate::graph::{PlanarGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum: usize,
    pub witness: Vec<VertexId>,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("node budget exhausted; best forest found has {best_lower_bound} vertices")]
    BudgetExceeded { best_lower_bound: usize },
    #[error("graph has {0} vertices, more than this oracle accepts")]
    TooLarge(usize),
}

pub const MAX_EXACT_N: usize = 64;
pub const MAX_BRUTE_N: usize = 20;

struct Masks {
    ids: Vec<VertexId>,
    adj: Vec<u64>,
}

impl Masks {
    fn new(g: &PlanarGraph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let pos = |v: VertexId| ids.binary_search(&v).unwrap();
        let adj = ids
            .iter()
            .map(|&v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << pos(w)))
            .collect();
        Masks { ids, adj }
    }

    fn n(&self) -> usize {
        self.ids.len()
    }

    fn is_forest(&self, s: u64) -> bool {
        let mut parent = [0u8; 64];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        fn find(p: &mut [u8; 64], mut x: usize) -> usize {
            while p[x] as usize != x {
                p[x] = p[p[x] as usize];
                x = p[x] as usize;
            }
            x
        }
        let mut rest = s;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut nb = self.adj[i] & s & !((2u64 << i) - 1);
            while nb != 0 {
                let j = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a == b {
                    return false;
                }
                parent[a] = b as u8;
            }
        }
        true
    }

    /// Repeatedly strips vertices of degree ≤ 1; what is left is the union
    /// of all cycles and the paths between them.
    fn core(&self, mut s: u64) -> u64 {
        loop {
            let mut strip = 0u64;
            let mut rest = s;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if (self.adj[i] & s).count_ones() <= 1 {
                    strip |= 1 << i;
                }
            }
            if strip == 0 {
                return s;
            }
            s &= !strip;
        }
    }

    /// A shortest cycle inside `s` (which must be a nonempty core), found by
    /// BFS from every vertex.
    fn short_cycle(&self, s: u64) -> u64 {
        let n = self.n();
        let mut best: Option<(u32, u64)> = None;
        let mut rest = s;
        while rest != 0 {
            let root = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut parent = [usize::MAX; 64];
            let mut depth = [u32::MAX; 64];
            depth[root] = 0;
            let mut queue = [0usize; 64];
            let (mut head, mut tail) = (0, 1);
            queue[0] = root;
            'bfs: while head < tail {
                let v = queue[head];
                head += 1;
                let mut nb = self.adj[v] & s;
                while nb != 0 {
                    let w = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    if w == parent[v] {
                        continue;
                    }
                    if depth[w] == u32::MAX {
                        depth[w] = depth[v] + 1;
                        parent[w] = v;
                        queue[tail] = w;
                        tail += 1;
                    } else {
                        let len = depth[v] + depth[w] + 1;
                        if best.is_none_or(|(l, _)| len < l) {
                            // walk both branches up to their meeting point
                            let mut m = 0u64;
                            let (mut a, mut b) = (v, w);
                            while a != b {
                                if depth[a] >= depth[b] {
                                    m |= 1 << a;
                                    a = parent[a];
                                } else {
                                    m |= 1 << b;
                                    b = parent[b];
                                }
                            }
                            m |= 1 << a;
                            best = Some((m.count_ones(), m));
                        }
                        break 'bfs;
                    }
                }
            }
        }
        debug_assert!(n <= 64);
        best.map(|(_, m)| m).unwrap_or(0)
    }

    /// Greedy vertex-disjoint cycle packing size: a lower bound on the
    /// number of vertices any forest must drop from `s`.
    fn packing(&self, s: u64) -> u32 {
        let mut s = self.core(s);
        let mut k = 0;
        while s != 0 {
            let c = self.short_cycle(s);
            if c == 0 {
                break;
            }
            k += 1;
            s = self.core(s & !c);
        }
        k
    }
}

struct Search<'a> {
    g: &'a Masks,
    nodes: u64,
    budget: u64,
    best: u32,
    exhausted: bool,
}

impl Search<'_> {
    /// Largest forest `f` with `keep ⊆ f ⊆ keep ∪ open`, if it beats
    /// `self.best`; updates `self.best`.
    fn run(&mut self, keep: u64, open: u64) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let alive = keep | open;
        let core = self.g.core(alive);
        if core == 0 {
            self.best = self.best.max(alive.count_ones());
            return;
        }
        let upper = alive.count_ones() - self.g.packing(alive);
        if upper <= self.best {
            return;
        }
        let cycle = self.g.short_cycle(core);
        let choice = cycle & open;
        if choice == 0 {
            // a cycle inside the kept set: infeasible
            return;
        }
        let v = 1u64 << choice.trailing_zeros();
        if self.g.is_forest(keep | v) {
            self.run(keep | v, open & !v);
        }
        self.run(keep, open & !v);
    }
}

fn masks_or_err(g: &PlanarGraph) -> Result<Masks, OracleError> {
    if g.n() > MAX_EXACT_N {
        return Err(OracleError::TooLarge(g.n()));
    }
    Ok(Masks::new(g))
}

/// Exact optimum by branch and bound, with at most `budget` search nodes
/// per query.
pub fn max_induced_forest_exact(g: &PlanarGraph, budget: u64) -> Result<OracleResult, OracleError> {
    let m = masks_or_err(g)?;
    let n = m.n();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut nodes = 0;
    let mut s = Search {
        g: &m,
        nodes: 0,
        budget,
        best: 0,
        exhausted: false,
    };
    s.run(0, all);
    nodes += s.nodes;
    if s.exhausted {
        return Err(OracleError::BudgetExceeded {
            best_lower_bound: s.best as usize,
        });
    }
    let opt = s.best;
    // fix vertices in increasing order, keeping each when still optimal
    let (mut keep, mut dropped) = (0u64, 0u64);
    for i in 0..n {
        let v = 1u64 << i;
        let mut t = Search {
            g: &m,
            nodes: 0,
            budget,
            best: opt - 1,
            exhausted: false,
        };
        if m.is_forest(keep | v) {
            t.run(keep | v, all & !(keep | v | dropped));
        }
        nodes += t.nodes;
        if t.exhausted {
            return Err(OracleError::BudgetExceeded {
                best_lower_bound: opt as usize,
            });
        }
        if t.best >= opt {
            keep |= v;
        } else {
            dropped |= v;
        }
    }
    debug_assert_eq!(keep.count_ones(), opt);
    Ok(OracleResult {
        optimum: opt as usize,
        witness: (0..n).filter(|&i| keep >> i & 1 == 1).map(|i| m.ids[i]).collect(),
        nodes_explored: nodes,
    })
}

/// Exact optimum by trying all subsets, largest first, in lexicographic
/// order within each size.
pub fn brute_force_tiny(g: &PlanarGraph) -> Result<OracleResult, OracleError> {
    if g.n() > MAX_BRUTE_N {
        return Err(OracleError::TooLarge(g.n()));
    }
    let m = Masks::new(g);
    let n = m.n();
    let mut nodes = 0u64;
    for k in (0..=n).rev() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            nodes += 1;
            let s = idx.iter().fold(0u64, |s, &i| s | 1 << i);
            if m.is_forest(s) {
                return Ok(OracleResult {
                    optimum: k,
                    witness: idx.iter().map(|&i| m.ids[i]).collect(),
                    nodes_explored: nodes,
                });
            }
            // next combination in lexicographic order
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("the empty set is a forest")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    const B: u64 = 1_000_000;

    #[test]
    fn ground_truths() {
        assert_eq!(max_induced_forest_exact(&gen::cycle(4), B).unwrap().optimum, 3);
        assert_eq!(max_induced_forest_exact(&gen::cube(), B).unwrap().optimum, 5);
        assert_eq!(max_induced_forest_exact(&gen::t6(), B).unwrap().optimum, 4);
        for k in 1..=3 {
            assert_eq!(max_induced_forest_exact(&gen::cubes(k), B).unwrap().optimum, 5 * k);
        }
    }

    #[test]
    fn brute_force_examples() {
        let one = PlanarGraph::from_edges(1, &[]).unwrap();
        assert_eq!(brute_force_tiny(&one).unwrap().optimum, 1);
        let p5 = PlanarGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(brute_force_tiny(&p5).unwrap().optimum, 5);
        let k23 = PlanarGraph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(brute_force_tiny(&k23).unwrap().optimum, 4);
        assert_eq!(brute_force_tiny(&PlanarGraph::new()).unwrap().optimum, 0);
    }

    #[test]
    fn oracles_agree_with_same_witness() {
        for seed in 0..40 {
            let g = gen::random_bipartite_planar(14, 0.85, seed);
            let a = max_induced_forest_exact(&g, B).unwrap();
            let b = brute_force_tiny(&g).unwrap();
            assert_eq!(a.optimum, b.optimum, "seed {seed}");
            assert_eq!(a.witness, b.witness, "seed {seed}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = gen::cubes(3);
        assert!(matches!(
            max_induced_forest_exact(&g, 3),
            Err(OracleError::BudgetExceeded { .. })
        ));
        assert!(matches!(brute_force_tiny(&g), Err(OracleError::TooLarge(24))));
    }
}
