//! Exact-rational checks of the coefficient linear program.
//!
//! Constraints are affine forms `k0 + k1·a + k2·b + k3·c + k4·d ≥ 0` over
//! `BigRational`. The optimum is found by enumerating basic solutions, and
//! implied constraints receive nonnegative multiplier certificates found by
//! enumerating supports of at most five base constraints.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::accounting::Accounting;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn qi(n: i64) -> Q {
    q(n, 1)
}

/// The coefficient point `(a, b, c, d) = (25/27, 5/27, 5/27, 2/27)`.
pub fn lp_point() -> [Q; 4] {
    [q(25, 27), q(5, 27), q(5, 27), q(2, 27)]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpConstraint {
    pub label: String,
    /// `[const, a, b, c, d]`.
    pub coef: [Q; 5],
}

impl LpConstraint {
    pub fn new(label: &str, k: [i64; 5]) -> Self {
        LpConstraint {
            label: label.to_string(),
            coef: k.map(qi),
        }
    }

    pub fn eval(&self, p: &[Q; 4]) -> Q {
        let mut s = self.coef[0].clone();
        for i in 0..4 {
            s += &self.coef[i + 1] * &p[i];
        }
        s
    }

    pub fn scaled(&self, f: &Q) -> Self {
        LpConstraint {
            label: self.label.clone(),
            coef: self.coef.clone().map(|c| c * f),
        }
    }
}

impl fmt::Display for LpConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "a", "b", "c", "d"];
        let mut first = true;
        for (i, c) in self.coef.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{}", names[i])?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " >= 0")
    }
}

/// The 19 base constraints, labeled `Ba`..`Bs`.
pub fn base_constraints() -> Vec<LpConstraint> {
    let rows: [(&str, [i64; 5]); 19] = [
        ("Ba", [0, 1, 0, 0, 0]),
        ("Bb", [1, -1, 0, 0, 0]),
        ("Bc", [0, 0, 1, 0, 0]),
        ("Bd", [0, 0, 0, 1, 0]),
        ("Be", [0, 0, 0, 0, 1]),
        ("Bf", [1, -1, 1, -1, 0]),
        ("Bg", [1, -1, 1, 0, -1]),
        ("Bh", [0, -1, 5, 0, 0]),
        ("Bi", [5, -8, 12, 1, 0]),
        ("Bj", [4, -6, 8, 0, 1]),
        ("Bk", [5, -8, 13, 0, 0]),
        ("Bl", [5, -8, 13, 1, -1]),
        ("Bm", [4, -6, 9, 0, -1]),
        ("Bn", [5, -8, 14, 0, -1]),
        ("Bo", [5, -8, 14, -1, 0]),
        ("Bp", [5, -8, 15, -1, -1]),
        ("Bq", [3, -5, 10, -1, 0]),
        ("Br", [3, -5, 10, 0, -1]),
        ("Bs", [3, -4, 4, 0, 0]),
    ];
    rows.iter().map(|(l, k)| LpConstraint::new(l, *k)).collect()
}

/// `(5t+4) − (8t+6)a + (13t+9)b − d ≥ 0`.
pub fn t6_chain_constraint(t: i64) -> LpConstraint {
    LpConstraint::new(&format!("T6-chain(t={t})"), [5 * t + 4, -(8 * t + 6), 13 * t + 9, 0, -1])
}

/// Every inequality the reduction rules add, with the chain family at
/// `t = 0..=3`.
pub fn derived_constraints() -> Vec<LpConstraint> {
    let rows: [(&str, [i64; 5]); 30] = [
        ("cube-component", [5, -8, 12, 1, 0]),
        ("t6-component", [4, -6, 8, 0, 1]),
        ("cube-deg1-shared", [5, -8, 13, 0, 0]),
        ("cube-deg1", [5, -8, 13, 1, -1]),
        ("cube-deg2-a", [5, -8, 14, 0, -1]),
        ("cube-deg2-b", [5, -8, 14, -1, 0]),
        ("cube-deg3", [5, -8, 15, -1, -1]),
        ("t6-deg2", [4, -6, 10, 0, -1]),
        ("vertex-deg5", [0, -1, 5, 0, 0]),
        ("cube-deg4", [5, -8, 16, -1, -1]),
        ("t6-deg3", [4, -6, 11, 0, -1]),
        ("t6-deg45-a", [3, -5, 10, -1, 0]),
        ("t6-deg45-b", [3, -5, 10, 0, -1]),
        ("cube-deg5", [5, -8, 17, -1, -1]),
        ("contract-a", [1, -1, 1, -1, 0]),
        ("contract-b", [1, -1, 1, 0, -1]),
        ("deg2-next-to-deg4", [1, -2, 5, 0, 0]),
        ("adjacent-deg2-c4", [3, -4, 4, 0, 0]),
        ("adjacent-deg2", [2, -3, 5, 0, 0]),
        ("deg2-square-a", [3, -5, 9, 0, 0]),
        ("deg2-square-b", [4, -6, 9, 0, 0]),
        ("deg3-deg4-cube", [6, -9, 14, 0, 0]),
        ("deg3-deg4-join", [1, -2, 5, 0, 0]),
        ("sep4-three-deg3", [4, -7, 14, 0, 0]),
        ("two-face-edges-cube", [7, -11, 18, 0, 0]),
        ("deg4-pair-on-face", [3, -6, 14, 0, 0]),
        ("face4-two-deg3-cube", [7, -12, 23, 0, 0]),
        ("face4-one-deg3-join", [3, -6, 15, -1, 0]),
        ("face4-one-deg3-x", [4, -8, 19, 0, 0]),
        ("face4-one-deg3-final", [3, -7, 19, 0, 0]),
    ];
    let mut out: Vec<LpConstraint> = rows.iter().map(|(l, k)| LpConstraint::new(l, *k)).collect();
    for t in 0..=3 {
        out.push(t6_chain_constraint(t));
    }
    out
}

/// Combinations printed alongside the derived inequalities, as base label
/// and multiplier. Kept verbatim so the verifier can flag the wrong one.
pub fn stated_combinations() -> Vec<(&'static str, Vec<(&'static str, i64)>)> {
    vec![
        ("t6-deg2", vec![("Bm", 1), ("Bc", 1)]),
        ("cube-deg4", vec![("Bp", 1), ("Bc", 1)]),
        ("t6-deg3", vec![("Bm", 1), ("Bc", 2)]),
        ("cube-deg5", vec![("Bp", 1), ("Bc", 2)]),
        ("deg2-next-to-deg4", vec![("Bh", 1), ("Bb", 1)]),
        ("adjacent-deg2", vec![("Bb", 2), ("Bh", 1)]),
        ("deg2-square-a", vec![("Bs", 1), ("Bh", 1)]),
        ("deg2-square-b", vec![("Bm", 1), ("Be", 1)]),
        ("deg3-deg4-cube", vec![("Bk", 1), ("Bc", 1), ("Bb", 1)]),
        ("deg3-deg4-join", vec![("Bh", 1), ("Bb", 1)]),
        ("sep4-three-deg3", vec![("Bb", 1), ("Bh", 2), ("Bs", 1)]),
        ("two-face-edges-cube", vec![("Bb", 1), ("Bh", 2), ("Bs", 1)]),
        ("deg4-pair-on-face", vec![("Bs", 1), ("Bh", 2)]),
        ("face4-two-deg3-cube", vec![("Bs", 2), ("Bh", 3), ("Bb", 1)]),
        ("face4-one-deg3-join", vec![("Bh", 1), ("Bq", 1)]),
        ("face4-one-deg3-x", vec![("Bh", 3), ("Bs", 1), ("Bb", 1)]),
        ("face4-one-deg3-final", vec![("Bs", 1), ("Bh", 3)]),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("objective is unbounded")]
    Unbounded,
    #[error("no feasible basic solution")]
    Infeasible,
    #[error("{0} is not a nonnegative combination of the base constraints")]
    NotImplied(String),
    #[error("accounting mismatch for {rule}: {detail}")]
    AccountingMismatch { rule: String, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slack {
    pub label: String,
    pub value: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointReport {
    pub objective: Q,
    pub slacks: Vec<Slack>,
}

impl PointReport {
    pub fn violations(&self) -> impl Iterator<Item = &Slack> {
        self.slacks.iter().filter(|s| s.value.is_negative())
    }

    pub fn tight(&self) -> impl Iterator<Item = &Slack> {
        self.slacks.iter().filter(|s| s.value.is_zero())
    }
}

/// Slack of every constraint at `p`, and the objective `a − 2b`.
pub fn check_point(p: &[Q; 4], constraints: &[LpConstraint]) -> PointReport {
    PointReport {
        objective: &p[0] - &p[1] * qi(2),
        slacks: constraints
            .iter()
            .map(|c| Slack {
                label: c.label.clone(),
                value: c.eval(p),
            })
            .collect(),
    }
}

/// Solves the square system `rows · x = rhs` exactly; `None` if singular.
fn solve_square(mut m: Vec<Vec<Q>>, mut rhs: Vec<Q>) -> Option<Vec<Q>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = m[col][col].recip();
        for k in col..n {
            m[col][k] = &m[col][k] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in col..n {
                    let t = &f * &m[col][k];
                    m[r][k] -= t;
                }
                let t = &f * &rhs[col];
                rhs[r] -= t;
            }
        }
    }
    Some(rhs)
}

/// Solves an overdetermined or square system `A x = b` (A is `r × k`,
/// r ≥ k) exactly, returning the unique solution if one exists.
fn solve_tall(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let r = a.len();
    let k = a[0].len();
    let mut m: Vec<Vec<Q>> = a.to_vec();
    let mut rhs = b.to_vec();
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        let Some(piv) = (row..r).find(|&i| !m[i][col].is_zero()) else {
            return None;
        };
        m.swap(row, piv);
        rhs.swap(row, piv);
        let inv = m[row][col].recip();
        for j in col..k {
            m[row][j] = &m[row][j] * &inv;
        }
        rhs[row] = &rhs[row] * &inv;
        for i in 0..r {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..k {
                    let t = &f * &m[row][j];
                    m[i][j] -= t;
                }
                let t = &f * &rhs[row];
                rhs[i] -= t;
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rhs[row..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(rhs[..k].to_vec())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn vertices(constraints: &[LpConstraint]) -> Vec<[Q; 4]> {
    let mut out = Vec::new();
    for s in subsets(constraints.len(), 4) {
        let m: Vec<Vec<Q>> = s.iter().map(|&i| constraints[i].coef[1..].to_vec()).collect();
        let rhs: Vec<Q> = s.iter().map(|&i| -constraints[i].coef[0].clone()).collect();
        if let Some(x) = solve_square(m, rhs) {
            let p: [Q; 4] = [x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone()];
            if constraints.iter().all(|c| !c.eval(&p).is_negative()) {
                out.push(p);
            }
        }
    }
    out
}

fn dot(obj: &[Q; 4], p: &[Q; 4]) -> Q {
    (0..4).fold(Q::zero(), |s, i| s + &obj[i] * &p[i])
}

/// Maximizes `obj · (a, b, c, d)` over a pointed feasible region by
/// enumerating basic feasible solutions. Ties go to the lexicographically
/// smallest point.
pub fn maximize(obj: &[Q; 4], constraints: &[LpConstraint]) -> Result<(Q, [Q; 4]), LpError> {
    // recession cone ∩ box: positive objective there means unbounded
    let mut cone: Vec<LpConstraint> = constraints
        .iter()
        .map(|c| {
            let mut k = c.coef.clone();
            k[0] = Q::zero();
            LpConstraint {
                label: c.label.clone(),
                coef: k,
            }
        })
        .collect();
    for i in 0..4 {
        let mut lo = [0i64; 5];
        lo[0] = 1;
        lo[i + 1] = 1;
        let mut hi = [0i64; 5];
        hi[0] = 1;
        hi[i + 1] = -1;
        cone.push(LpConstraint::new("box", lo));
        cone.push(LpConstraint::new("box", hi));
    }
    if vertices(&cone).iter().any(|r| dot(obj, r).is_positive()) {
        return Err(LpError::Unbounded);
    }
    let mut best: Option<(Q, [Q; 4])> = None;
    for p in vertices(constraints) {
        let v = dot(obj, &p);
        let better = match &best {
            None => true,
            Some((bv, bp)) => v > *bv || (v == *bv && p < *bp),
        };
        if better {
            best = Some((v, p));
        }
    }
    best.ok_or(LpError::Infeasible)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub target: String,
    pub multipliers: BTreeMap<String, Q>,
}

impl FarkasCertificate {
    /// Independent re-summation of the certificate against `target`.
    pub fn verify(&self, target: &LpConstraint, base: &[LpConstraint]) -> bool {
        let mut sum: [Q; 5] = core::array::from_fn(|_| Q::zero());
        for (label, m) in &self.multipliers {
            if m.is_negative() {
                return false;
            }
            let Some(c) = base.iter().find(|c| &c.label == label) else {
                return false;
            };
            for i in 0..5 {
                sum[i] += m * &c.coef[i];
            }
        }
        sum == target.coef
    }
}

impl fmt::Display for FarkasCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .multipliers
            .iter()
            .map(|(l, m)| if m.is_one() { format!("({l})") } else { format!("{m}({l})") })
            .collect();
        write!(f, "{} = {}", self.target, parts.join(" + "))
    }
}

/// Nonnegative multipliers over `base` summing exactly to `target`, with
/// the smallest support first and lexicographic order within a support size.
pub fn find_redundancy_certificate(target: &LpConstraint, base: &[LpConstraint]) -> Result<FarkasCertificate, LpError> {
    if target.coef.iter().all(|c| c.is_zero()) {
        return Ok(FarkasCertificate {
            target: target.label.clone(),
            multipliers: BTreeMap::new(),
        });
    }
    for k in 1..=5.min(base.len()) {
        for s in subsets(base.len(), k) {
            // A is 5 × k: coefficient i of constraint s[j]
            let a: Vec<Vec<Q>> = (0..5).map(|i| s.iter().map(|&j| base[j].coef[i].clone()).collect()).collect();
            let Some(x) = solve_tall(&a, &target.coef) else { continue };
            if x.iter().any(|v| !v.is_positive()) {
                continue;
            }
            let cert = FarkasCertificate {
                target: target.label.clone(),
                multipliers: s.iter().zip(x).map(|(&j, v)| (base[j].label.clone(), v)).collect(),
            };
            debug_assert!(cert.verify(target, base));
            return Ok(cert);
        }
    }
    Err(LpError::NotImplied(target.label.clone()))
}

/// Checks the chain family symbolically: its constant part is `Bm` and its
/// `t`-slope is `Bk`, so `{Bm: 1, Bk: t}` certifies every `t ≥ 0`.
pub fn verify_chain_family(base: &[LpConstraint]) -> bool {
    let get = |l: &str| base.iter().find(|c| c.label == l).map(|c| c.coef.clone());
    let (Some(m), Some(k)) = (get("Bm"), get("Bk")) else {
        return false;
    };
    let c0 = t6_chain_constraint(0).coef;
    let c1 = t6_chain_constraint(1).coef;
    let slope: Vec<Q> = (0..5).map(|i| &c1[i] - &c0[i]).collect();
    c0 == m && slope[..] == k[..]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatedCheck {
    pub target: String,
    pub claimed: Vec<(String, i64)>,
    pub holds: bool,
    /// The same combination is also claimed for another target.
    pub duplicated_with: Option<String>,
}

/// Re-sums every stated combination and flags the ones that do not
/// reproduce their target.
pub fn check_stated_combinations() -> Vec<StatedCheck> {
    let base = base_constraints();
    let derived = derived_constraints();
    let pubs = stated_combinations();
    pubs.iter()
        .map(|(target, combo)| {
            let t = derived.iter().find(|c| c.label == *target).expect("stated target exists");
            let cert = FarkasCertificate {
                target: t.label.clone(),
                multipliers: combo.iter().map(|(l, m)| (l.to_string(), qi(*m))).collect(),
            };
            let mut sorted = combo.clone();
            sorted.sort();
            let dup = pubs
                .iter()
                .filter(|(o, _)| o != target)
                .find(|(_, oc)| {
                    let mut s = oc.clone();
                    s.sort();
                    s == sorted
                })
                .map(|(o, _)| o.to_string());
            StatedCheck {
                target: target.to_string(),
                claimed: combo.iter().map(|(l, m)| (l.to_string(), *m)).collect(),
                holds: cert.verify(t, &base),
                duplicated_with: dup,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// The inequality is literally one of the listed constraints.
    Listed(String),
    Certificate(FarkasCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleCheck {
    pub rule: String,
    pub accounting: Accounting,
    pub slack: Q,
    pub justification: Justification,
}

/// Maps every rule's accounting inequality to a listed constraint or a
/// certificate over the base, and checks it at `point`.
pub fn verify_rule_accounting(rules: &[(String, Accounting)], point: &[Q; 4]) -> Result<Vec<RuleCheck>, LpError> {
    let base = base_constraints();
    let listed: Vec<LpConstraint> = base.iter().cloned().chain(derived_constraints()).collect();
    let mut out = Vec::new();
    for (name, acct) in rules {
        let target = LpConstraint::new(name, acct.inequality());
        let slack = target.eval(point);
        if slack.is_negative() {
            return Err(LpError::AccountingMismatch {
                rule: name.clone(),
                detail: format!("{target} is violated at the point by {slack}"),
            });
        }
        let justification = match listed.iter().find(|c| c.coef == target.coef) {
            Some(c) => Justification::Listed(c.label.clone()),
            None => Justification::Certificate(find_redundancy_certificate(&target, &base).map_err(|_| {
                LpError::AccountingMismatch {
                    rule: name.clone(),
                    detail: format!("{target} is not implied by the base constraints"),
                }
            })?),
        };
        out.push(RuleCheck {
            rule: name.clone(),
            accounting: *acct,
            slack,
            justification,
        });
    }
    Ok(out)
}
