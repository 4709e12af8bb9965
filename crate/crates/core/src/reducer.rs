//! The reduction engine.
//!
//! The graph is kept as a worklist of connected components, processed in
//! order of smallest vertex id. A component first goes through the ratio
//! phase, which strips `T6` components and cubes of degree ≤ 1 while
//! collecting 5/9 of what it removes. Once a component has no such
//! structure its potential `a·n − b·m − c·p − d·q` is a lower bound for the
//! rest, and the potential-phase rules take over.
//!
//! Every applied step is verified against the real graph before it is
//! accepted: vertex and collect counts exact, edge and structure counts as
//! lower bounds, the accounting inequality non-negative at the LP point,
//! planarity and triangle-freeness of the result, and collectibility of the
//! collect set.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::accounting::Accounting;
use crate::extend::{check_induced_forest, collectible_with_added};
use crate::graph::{norm, Edge, GraphError, PlanarGraph, VertexId};
use crate::lpcert::lp_point;
use crate::pattern::{count_p, count_q, find_structure_config};
use crate::rules::{build_rule_table, ratio_rules, Proposal, ReductionRule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no rule applies to a nonempty component: {0}")]
    StructureViolation(String),
    #[error("rule {rule} failed verification: {detail}")]
    AccountingMismatch { rule: String, detail: String },
    #[error("step {step} ({rule}) does not lift: {detail}")]
    LiftFailed { step: usize, rule: String, detail: String },
    #[error("no rule applies to the empty graph")]
    NoRuleApplies,
    #[error("forest of size {size} misses the bound {bound}")]
    BoundMissed { size: usize, bound: usize },
    #[error("replay diverged at step {step}: {detail}")]
    ReplayMismatch { step: usize, detail: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Phase {
    Ratio,
    Potential,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Ratio => "ratio",
            Phase::Potential => "potential",
        }
    }
}

/// One applied rewrite of one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: String,
    pub phase: Phase,
    pub removed: BTreeSet<VertexId>,
    pub deleted_edges: Vec<Edge>,
    pub added_edges: Vec<Edge>,
    pub collect: BTreeSet<VertexId>,
    pub accounting: Accounting,
    pub before: GraphStamp,
    pub after: GraphStamp,
}

/// Size and digest of a component graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphStamp {
    pub n: usize,
    pub m: usize,
    pub digest: u64,
}

impl GraphStamp {
    pub fn of(g: &PlanarGraph) -> Self {
        GraphStamp { n: g.n(), m: g.m(), digest: g.digest() }
    }
}

/// Measured change of `(n, m, p, q)` across a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Deltas {
    pub n: i64,
    pub m: i64,
    pub p: i64,
    pub q: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Counts {
    n: i64,
    m: i64,
    p: i64,
    q: i64,
}

impl Counts {
    fn of(g: &PlanarGraph) -> Self {
        Counts { n: g.n() as i64, m: g.m() as i64, p: count_p(g) as i64, q: count_q(g) as i64 }
    }

    fn rho(&self) -> i64 {
        self.n + self.p + self.q
    }

    fn minus(&self, o: &Counts) -> Deltas {
        Deltas { n: self.n - o.n, m: self.m - o.m, p: self.p - o.p, q: self.q - o.q }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Fail when a rule matches but none of its proposals verifies, instead
    /// of moving on to the next rule.
    pub strict: bool,
    /// Check after solving that the forest restricted to each step's
    /// component is induced-acyclic there.
    pub validate_lifts: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { strict: false, validate_lifts: true }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub rule_counts: BTreeMap<String, usize>,
    /// Proposals built by a matching rule but refused by verification.
    pub rejected_proposals: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub forest: BTreeSet<VertexId>,
    pub trace: Trace,
    pub stats: SolveStats,
    /// Proven lower bound: collected in the ratio phase plus the potential
    /// of every component entering the potential phase.
    pub certified_bound: BigRational,
}

/// `⌈5n/9⌉`.
pub fn bound(n: usize) -> usize {
    (5 * n).div_ceil(9)
}

/// `a·n − b·m − c·p − d·q` at the LP point, exactly.
pub fn potential(g: &PlanarGraph) -> BigRational {
    let [a, b, c, d] = lp_point();
    let k = Counts::of(g);
    let r = |x: i64| BigRational::from_integer(BigInt::from(x));
    a * r(k.n) - b * r(k.m) - c * r(k.p) - d * r(k.q)
}

/// Rejects graphs outside the domain: nonplanar, with a triangle, or denser
/// than a triangle-free planar graph can be.
pub fn validate_input(g: &PlanarGraph) -> Result<PlanarGraph, SolveError> {
    if !g.is_triangle_free() {
        return Err(SolveError::InvalidInput("graph contains a triangle".to_string()));
    }
    if g.n() >= 3 && g.m() > 2 * g.n() - 4 {
        return Err(SolveError::InvalidInput(format!("{} edges exceed 2n-4 = {}", g.m(), 2 * g.n() - 4)));
    }
    let h = if g.is_embedded() { g.clone() } else { g.embed().map_err(|_| SolveError::InvalidInput("graph is not planar".to_string()))? };
    h.check_euler().map_err(|e| SolveError::InvalidInput(e.to_string()))?;
    Ok(h)
}

/// Deletes `removed`, then `deleted`, then inserts each added edge, falling
/// back to a fresh embedding when the endpoints share no face.
pub fn apply_rewrite(
    g: &PlanarGraph,
    removed: &BTreeSet<VertexId>,
    deleted: &[Edge],
    added: &[Edge],
) -> Result<PlanarGraph, GraphError> {
    let mut h = g.delete_vertices(removed)?;
    for &(u, v) in deleted {
        h = h.delete_edge(u, v)?;
    }
    for &(u, v) in added {
        h = match h.add_edge_in_some_face(u, v) {
            Ok(x) => x,
            Err(GraphError::NotCoFacial(..)) => h.add_edge_unembedded(u, v)?.embed()?,
            Err(e) => return Err(e),
        };
    }
    Ok(h)
}

fn restrict(g: &PlanarGraph, keep: &BTreeSet<VertexId>) -> PlanarGraph {
    let drop: BTreeSet<VertexId> = g.vertices().filter(|v| !keep.contains(v)).collect();
    g.delete_vertices(&drop).expect("vertices come from the graph")
}

fn split(g: &PlanarGraph) -> Vec<PlanarGraph> {
    g.components().into_iter().map(|c| restrict(g, &c.into_iter().collect())).collect()
}

/// Why a proposal was refused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection(pub String);

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn reject<T>(msg: impl Into<String>) -> Result<T, Rejection> {
    Err(Rejection(msg.into()))
}

/// Whether a tuple keeps the invariant of `phase`: the potential at the
/// LP point, or the `5/9` ratio of collected to removed vertices.
pub fn sound_for(t: &Accounting, phase: Phase) -> bool {
    sound_at(t, phase, &lp_point())
}

fn sound_at(t: &Accounting, phase: Phase, point: &[BigRational; 4]) -> bool {
    match phase {
        Phase::Potential => !t.slack_at(point).is_negative(),
        Phase::Ratio => 9 * t.lambda >= 5 * t.alpha,
    }
}

/// Verifies one proposal against component `h`. Returns the rewritten
/// component and the first candidate tuple the measured deltas confirm.
pub fn verify_proposal(h: &PlanarGraph, p: &Proposal, phase: Phase) -> Result<(PlanarGraph, Accounting), Rejection> {
    if !p.removed.iter().all(|&v| h.contains(v)) {
        return reject("removed vertex outside the component");
    }
    if !p.collect.is_subset(&p.removed) {
        return reject("collect set not inside the removed set");
    }
    if !p.deleted_edges.is_empty() {
        let bridges: BTreeSet<Edge> = h.bridges().into_iter().map(|(a, b)| norm(a, b)).collect();
        if p.deleted_edges.iter().any(|&(a, b)| !bridges.contains(&norm(a, b))) {
            return reject("deleted edge is not a bridge");
        }
    }
    for &(a, b) in &p.added_edges {
        if a == b || p.removed.contains(&a) || p.removed.contains(&b) || !h.contains(a) || !h.contains(b) {
            return reject(format!("added edge {a}-{b} has an endpoint outside the remainder"));
        }
    }
    let h2 = match apply_rewrite(h, &p.removed, &p.deleted_edges, &p.added_edges) {
        Ok(x) => x,
        Err(e) => return reject(format!("rewrite failed: {e}")),
    };
    if !h2.is_triangle_free() {
        return reject("rewrite creates a triangle");
    }
    match collectible_with_added(h, &p.removed, &p.collect, &p.added_edges) {
        Ok(true) => {}
        Ok(false) => return reject("collect set is not collectible"),
        Err(e) => return reject(format!("collectibility check failed: {e}")),
    }
    let c0 = Counts::of(h);
    let c1 = Counts::of(&h2);
    if (c1.rho(), c1.m) >= (c0.rho(), c0.m) {
        return reject("no progress");
    }
    let d = c0.minus(&c1);
    let point = lp_point();
    let mut why = String::new();
    for &t in &p.tuples {
        let fits = t.alpha == d.n
            && t.lambda == p.collect.len() as i64
            && t.beta <= d.m
            && t.gamma <= d.p
            && t.eta <= d.q;
        let sound = sound_at(&t, phase, &point);
        if fits && sound {
            return Ok((h2, t));
        }
        if why.is_empty() {
            why = format!("tuple {t} against deltas (n {}, m {}, p {}, q {}, collected {})", d.n, d.m, d.p, d.q, p.collect.len());
        }
    }
    reject(why)
}

fn rules_for(phase: Phase) -> Vec<ReductionRule> {
    match phase {
        Phase::Ratio => ratio_rules(),
        Phase::Potential => build_rule_table(),
    }
}

/// First verified proposal of the first rule that has one.
fn choose(
    h: &PlanarGraph,
    phase: Phase,
    opts: &SolveOptions,
    stats: &mut SolveStats,
) -> Result<Option<(&'static str, Proposal, PlanarGraph, Accounting)>, SolveError> {
    for rule in rules_for(phase) {
        let mut first_refusal = None;
        for p in (rule.propose)(h) {
            match verify_proposal(h, &p, phase) {
                Ok((h2, t)) => return Ok(Some((rule.name, p, h2, t))),
                Err(r) => {
                    log::debug!("{} refused: {}", rule.name, r);
                    stats.rejected_proposals += 1;
                    first_refusal.get_or_insert(r);
                }
            }
        }
        if let (true, Some(r)) = (opts.strict, first_refusal) {
            return Err(SolveError::AccountingMismatch { rule: rule.name.to_string(), detail: r.0 });
        }
    }
    Ok(None)
}

/// Applies the first verified rule of the potential-phase table to a graph
/// (whose first component is processed).
pub fn apply_first_rule(g: &PlanarGraph) -> Result<(PlanarGraph, Step), SolveError> {
    let comps = g.components();
    let Some(first) = comps.first() else { return Err(SolveError::NoRuleApplies) };
    let h = restrict(g, &first.iter().copied().collect());
    let opts = SolveOptions::default();
    let mut stats = SolveStats::default();
    let Some((name, p, _, t)) = choose(&h, Phase::Potential, &opts, &mut stats)? else {
        return Err(structure_violation(&h));
    };
    let g2 = apply_rewrite(g, &p.removed, &p.deleted_edges, &p.added_edges)?;
    let step = Step {
        rule: name.to_string(),
        phase: Phase::Potential,
        removed: p.removed,
        deleted_edges: p.deleted_edges,
        added_edges: p.added_edges,
        collect: p.collect,
        accounting: t,
        before: GraphStamp::of(&h),
        after: GraphStamp::of(&g2),
    };
    Ok((g2, step))
}

fn structure_violation(h: &PlanarGraph) -> SolveError {
    let detail = match find_structure_config(h) {
        Ok(c) => format!("component with {} vertices has {c:?} but no rule verified", h.n()),
        Err(v) => format!("component with {} vertices: {}", h.n(), v.0),
    };
    SolveError::StructureViolation(detail)
}

/// Worklist of components keyed by smallest vertex id.
struct Work {
    items: BTreeMap<VertexId, (PlanarGraph, Phase)>,
}

impl Work {
    fn new(g: &PlanarGraph) -> Self {
        let mut w = Work { items: BTreeMap::new() };
        w.push(g, Phase::Ratio);
        w
    }

    fn push(&mut self, g: &PlanarGraph, phase: Phase) {
        for c in split(g) {
            let key = c.vertices().next().expect("components are nonempty");
            self.items.insert(key, (c, phase));
        }
    }

    fn pop(&mut self) -> Option<(PlanarGraph, Phase)> {
        self.items.pop_first().map(|(_, x)| x)
    }
}

/// Finds an induced forest of at least `⌈5n/9⌉` vertices with a verified
/// trace that replays it.
pub fn solve(g: &PlanarGraph) -> Result<Solution, SolveError> {
    solve_with(g, &SolveOptions::default())
}

pub fn solve_with(g: &PlanarGraph, opts: &SolveOptions) -> Result<Solution, SolveError> {
    let mut trace = Trace::default();
    solve_recording(g, opts, &mut trace)
}

/// Like [`solve_with`], but steps are appended to `trace` as they are
/// applied, so a failed run leaves its prefix there for diagnosis. On
/// success the returned solution holds the same steps.
pub fn solve_recording(g: &PlanarGraph, opts: &SolveOptions, trace: &mut Trace) -> Result<Solution, SolveError> {
    let g = validate_input(g)?;
    let mut work = Work::new(&g);
    let mut stats = SolveStats::default();
    let mut snapshots = Vec::new();
    let mut certified = BigRational::zero();
    while let Some((h, mut phase)) = work.pop() {
        let mut chosen = None;
        if phase == Phase::Ratio {
            chosen = choose(&h, phase, opts, &mut stats)?;
            if chosen.is_none() {
                phase = Phase::Potential;
                certified += potential(&h);
            }
        }
        if chosen.is_none() {
            chosen = choose(&h, phase, opts, &mut stats)?;
        }
        let Some((name, p, h2, t)) = chosen else { return Err(structure_violation(&h)) };
        if phase == Phase::Ratio {
            certified += BigRational::from_integer(BigInt::from(t.lambda));
        }
        *stats.rule_counts.entry(name.to_string()).or_default() += 1;
        trace.steps.push(Step {
            rule: name.to_string(),
            phase,
            removed: p.removed,
            deleted_edges: p.deleted_edges,
            added_edges: p.added_edges,
            collect: p.collect,
            accounting: t,
            before: GraphStamp::of(&h),
            after: GraphStamp::of(&h2),
        });
        if opts.validate_lifts {
            snapshots.push(h);
        }
        work.push(&h2, phase);
    }
    let forest: BTreeSet<VertexId> = trace.steps.iter().flat_map(|s| s.collect.iter().copied()).collect();
    if opts.validate_lifts {
        for (i, (h, s)) in snapshots.iter().zip(&trace.steps).enumerate() {
            let local: BTreeSet<VertexId> = forest.iter().copied().filter(|&v| h.contains(v)).collect();
            if !check_induced_forest(h, &local)? {
                return Err(SolveError::LiftFailed { step: i, rule: s.rule.clone(), detail: "forest has a cycle in the step's component".to_string() });
            }
        }
    }
    finish(&g, forest, trace.clone(), stats, certified)
}

fn finish(g: &PlanarGraph, forest: BTreeSet<VertexId>, trace: Trace, stats: SolveStats, certified: BigRational) -> Result<Solution, SolveError> {
    if !check_induced_forest(g, &forest)? {
        return Err(SolveError::LiftFailed { step: trace.steps.len(), rule: "final".to_string(), detail: "result is not an induced forest".to_string() });
    }
    let size = BigRational::from_integer(BigInt::from(forest.len()));
    let need = bound(g.n());
    if size < certified || forest.len() < need {
        return Err(SolveError::BoundMissed { size: forest.len(), bound: need });
    }
    Ok(Solution { forest, trace, stats, certified_bound: certified })
}

/// Adds the step's collect set to a forest of the rewritten component and
/// checks the result in the component before the step.
pub fn lift_forest(f: &BTreeSet<VertexId>, step: &Step, before: &PlanarGraph) -> Result<BTreeSet<VertexId>, SolveError> {
    let mut out: BTreeSet<VertexId> = f.iter().copied().filter(|v| before.contains(*v) && !step.removed.contains(v)).collect();
    out.extend(step.collect.iter().copied());
    if check_induced_forest(before, &out)? {
        Ok(out)
    } else {
        Err(SolveError::LiftFailed { step: 0, rule: step.rule.clone(), detail: format!("{:?} is not an induced forest", out) })
    }
}

/// Re-runs a trace from the input graph, checking every stamp, and returns
/// the forest it certifies.
pub fn replay(g: &PlanarGraph, trace: &Trace) -> Result<BTreeSet<VertexId>, SolveError> {
    let g = validate_input(g)?;
    let mut work = Work::new(&g);
    let mut forest = BTreeSet::new();
    for (i, s) in trace.steps.iter().enumerate() {
        let Some((h, _)) = work.pop() else {
            return Err(SolveError::ReplayMismatch { step: i, detail: "graph exhausted before the trace".to_string() });
        };
        if GraphStamp::of(&h) != s.before {
            return Err(SolveError::ReplayMismatch { step: i, detail: "component differs before the step".to_string() });
        }
        let h2 = apply_rewrite(&h, &s.removed, &s.deleted_edges, &s.added_edges)?;
        if GraphStamp::of(&h2) != s.after {
            return Err(SolveError::ReplayMismatch { step: i, detail: "component differs after the step".to_string() });
        }
        if !collectible_with_added(&h, &s.removed, &s.collect, &s.added_edges)? {
            return Err(SolveError::LiftFailed { step: i, rule: s.rule.clone(), detail: "collect set is not collectible".to_string() });
        }
        forest.extend(s.collect.iter().copied());
        work.push(&h2, s.phase);
    }
    if work.pop().is_some() {
        return Err(SolveError::ReplayMismatch { step: trace.steps.len(), detail: "graph left over after the trace".to_string() });
    }
    if !check_induced_forest(&g, &forest)? {
        return Err(SolveError::LiftFailed { step: trace.steps.len(), rule: "final".to_string(), detail: "result is not an induced forest".to_string() });
    }
    Ok(forest)
}

// ---- text form ----

fn join_ids(xs: impl IntoIterator<Item = VertexId>) -> String {
    xs.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn join_edges(es: &[Edge]) -> String {
    es.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Trace {
    /// One line per step: `step <i> key=value ...`, lists comma-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "inforest-trace 1")?;
        for (i, s) in self.steps.iter().enumerate() {
            let a = s.accounting;
            writeln!(
                f,
                "step {i} rule={} phase={} acct={},{},{},{},{} removed={} deleted={} added={} collect={} before={}:{}:{:016x} after={}:{}:{:016x}",
                s.rule,
                s.phase.as_str(),
                a.alpha,
                a.beta,
                a.gamma,
                a.eta,
                a.lambda,
                join_ids(s.removed.iter().copied()),
                join_edges(&s.deleted_edges),
                join_edges(&s.added_edges),
                join_ids(s.collect.iter().copied()),
                s.before.n,
                s.before.m,
                s.before.digest,
                s.after.n,
                s.after.m,
                s.after.digest,
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("trace line {line}: {msg}")]
pub struct TraceParseError {
    pub line: usize,
    pub msg: String,
}

impl Trace {
    pub fn parse(text: &str) -> Result<Trace, TraceParseError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let err = |line: usize, msg: &str| TraceParseError { line: line + 1, msg: msg.to_string() };
        match lines.next() {
            Some((_, l)) if l.trim() == "inforest-trace 1" => {}
            Some((i, _)) => return Err(err(i, "expected header `inforest-trace 1`")),
            None => return Err(err(0, "empty trace")),
        }
        let mut steps = Vec::new();
        for (i, l) in lines {
            let mut words = l.split_whitespace();
            if words.next() != Some("step") || words.next().is_none() {
                return Err(err(i, "expected `step <index>`"));
            }
            let kv: BTreeMap<&str, &str> = words.filter_map(|w| w.split_once('=')).collect();
            let get = |k: &str| kv.get(k).copied().ok_or_else(|| err(i, &format!("missing {k}")));
            let ids = |s: &str| -> Result<Vec<VertexId>, TraceParseError> {
                s.split(',').filter(|x| !x.is_empty()).map(|x| x.parse().map_err(|_| err(i, "bad vertex id"))).collect()
            };
            let edges = |s: &str| -> Result<Vec<Edge>, TraceParseError> {
                s.split(',')
                    .filter(|x| !x.is_empty())
                    .map(|x| {
                        let (a, b) = x.split_once('-').ok_or_else(|| err(i, "bad edge"))?;
                        Ok((a.parse().map_err(|_| err(i, "bad edge"))?, b.parse().map_err(|_| err(i, "bad edge"))?))
                    })
                    .collect()
            };
            let stamp = |s: &str| -> Result<GraphStamp, TraceParseError> {
                let p: Vec<&str> = s.split(':').collect();
                if p.len() != 3 {
                    return Err(err(i, "bad stamp"));
                }
                Ok(GraphStamp {
                    n: p[0].parse().map_err(|_| err(i, "bad stamp"))?,
                    m: p[1].parse().map_err(|_| err(i, "bad stamp"))?,
                    digest: u64::from_str_radix(p[2], 16).map_err(|_| err(i, "bad stamp"))?,
                })
            };
            let acct: Vec<i64> = get("acct")?
                .split(',')
                .map(|x| x.parse().map_err(|_| err(i, "bad accounting")))
                .collect::<Result<_, _>>()?;
            if acct.len() != 5 {
                return Err(err(i, "accounting needs five entries"));
            }
            let phase = match get("phase")? {
                "ratio" => Phase::Ratio,
                "potential" => Phase::Potential,
                _ => return Err(err(i, "bad phase")),
            };
            steps.push(Step {
                rule: get("rule")?.to_string(),
                phase,
                removed: ids(get("removed")?)?.into_iter().collect(),
                deleted_edges: edges(get("deleted")?)?,
                added_edges: edges(get("added")?)?,
                collect: ids(get("collect")?)?.into_iter().collect(),
                accounting: Accounting::new(acct[0], acct[1], acct[2], acct[3], acct[4]),
                before: stamp(get("before")?)?,
                after: stamp(get("after")?)?,
            });
        }
        Ok(Trace { steps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn small_ground_truths() {
        assert_eq!(solve(&gen::cycle(4)).unwrap().forest.len(), 3);
        assert_eq!(solve(&gen::cube()).unwrap().forest.len(), 5);
        assert_eq!(solve(&gen::cubes(2)).unwrap().forest.len(), 10);
        assert_eq!(solve(&PlanarGraph::new()).unwrap().forest.len(), 0);
    }

    #[test]
    fn cube_rule_fires_first_on_cube_plus_square() {
        let g = gen::cube().disjoint_union(&gen::cycle(4));
        let (g2, step) = apply_first_rule(&g).unwrap();
        assert_eq!(step.rule, "cube-component");
        assert_eq!(step.accounting, Accounting::new(8, 12, 1, 0, 5));
        assert_eq!((g2.n(), g2.m()), (4, 4));
    }

    #[test]
    fn square_collects_three() {
        let (g2, step) = apply_first_rule(&gen::cycle(4)).unwrap();
        assert!(g2.is_empty());
        assert_eq!(step.collect.len(), 3);
    }

    #[test]
    fn empty_graph_has_no_rule() {
        assert_eq!(apply_first_rule(&PlanarGraph::new()).unwrap_err(), SolveError::NoRuleApplies);
    }

    #[test]
    fn rejects_triangle() {
        let g = PlanarGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(matches!(solve(&g), Err(SolveError::InvalidInput(_))));
    }

    #[test]
    fn trace_round_trip_and_replay() {
        let g = gen::grid(3, 4);
        let s = solve(&g).unwrap();
        let text = s.trace.to_string();
        let t = Trace::parse(&text).unwrap();
        assert_eq!(t, s.trace);
        assert_eq!(replay(&g, &t).unwrap(), s.forest);
    }

    #[test]
    fn bound_values() {
        assert_eq!(bound(4), 3);
        assert_eq!(bound(8), 5);
        assert_eq!(bound(9), 5);
        assert_eq!(bound(0), 0);
    }
}
