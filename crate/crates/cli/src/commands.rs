use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use inforest_core::extend::check_induced_forest;
use inforest_core::gen::{self, FamilySpec};
use inforest_core::lpcert::{self, LpConstraint, Q};
use inforest_core::oracle::{self, OracleError};
use inforest_core::reducer::{self, Phase, SolveError, SolveOptions, Solution, Trace};
use inforest_core::rules;
use inforest_core::textio;
use inforest_core::PlanarGraph;
use log::{info, warn};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::report::{self, CertificateReport, CorpusReport, LpReport, StatedReport, RunReport, Status};

/// Process exit codes. These values are part of the interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Exit {
    Ok = 0,
    /// I/O errors and other unexpected failures.
    Failure = 1,
    /// Unreadable graph, a triangle, a non-planar graph, or too many edges.
    InvalidInput = 2,
    /// No rule applied, or a rule's rewrite failed verification.
    StructureViolation = 3,
    NotForest = 4,
    BelowBound = 5,
    /// The produced certificate or a cross-check did not hold.
    VerificationFailed = 6,
    /// At least one corpus member failed.
    CorpusFailures = 7,
}

/// Budget for the oracle run that brackets a solve from above.
const SOLVE_ORACLE_BUDGET: u64 = 50_000_000;

type Result<T> = anyhow::Result<T>;

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn parse_graph_bytes(bytes: &[u8]) -> std::result::Result<PlanarGraph, String> {
    let text = std::str::from_utf8(bytes).map_err(|_| "graph file is not UTF-8".to_string())?;
    textio::parse_graph(text).map_err(|e| e.to_string())
}

pub fn gen(family: Option<&str>, seed: Option<u64>, output: Option<&Path>, corpus_dir: Option<&Path>) -> Result<Exit> {
    if let Some(dir) = corpus_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let corpus = gen::standard_corpus(seed.unwrap_or(0));
        for (i, (spec, g)) in corpus.iter().enumerate() {
            let name = format!("{i:03}-{}.graph", spec.to_string().replace([':', '.'], "_"));
            let text = format!("# {spec}\n{}", textio::write_graph(g)?);
            fs::write(dir.join(&name), text).with_context(|| format!("writing {name}"))?;
        }
        eprintln!("wrote {} graphs to {}", corpus.len(), dir.display());
        return Ok(Exit::Ok);
    }
    let family = family.context("--family is required")?;
    let mut spec: FamilySpec = match family.parse() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(Exit::InvalidInput);
        }
    };
    if let Some(s) = seed {
        spec = spec.with_seed(s);
    }
    let g = match gen::generate(&spec) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(Exit::InvalidInput);
        }
    };
    write_out(output, &format!("# {spec}\n{}", textio::write_graph(&g)?))?;
    Ok(Exit::Ok)
}

fn classify(e: &SolveError) -> (Status, Exit) {
    match e {
        SolveError::InvalidInput(_) | SolveError::Graph(_) => (Status::InvalidInput, Exit::InvalidInput),
        SolveError::StructureViolation(_) | SolveError::NoRuleApplies | SolveError::AccountingMismatch { .. } => {
            (Status::StructureViolation, Exit::StructureViolation)
        }
        SolveError::LiftFailed { .. } | SolveError::BoundMissed { .. } | SolveError::ReplayMismatch { .. } => {
            (Status::VerificationFailed, Exit::VerificationFailed)
        }
    }
}

struct Run {
    report: RunReport,
    exit: Exit,
    solution: Option<Solution>,
    trace: Trace,
}

/// Parse, solve, validate and bracket one graph file.
fn run_one(file: Option<String>, bytes: &[u8], oracle_limit: usize, strict: bool) -> Run {
    let start = Instant::now();
    let mut report = RunReport {
        schema: report::RUN_SCHEMA,
        file,
        input_digest: format!("{:x}", Sha256::digest(bytes)),
        n: 0,
        m: 0,
        forest_size: None,
        bound: 0,
        certified_bound: None,
        oracle_optimum: None,
        status: Status::Ok,
        rule_histogram: BTreeMap::new(),
        rejected_proposals: 0,
        steps: 0,
        wall_ms: 0.0,
        error: None,
    };
    let mut trace = Trace::default();
    let finish = |mut report: RunReport, exit, solution, trace| {
        report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
        Run { report, exit, solution, trace }
    };
    let g = match parse_graph_bytes(bytes) {
        Ok(g) => g,
        Err(e) => {
            report.status = Status::InvalidInput;
            report.error = Some(e);
            return finish(report, Exit::InvalidInput, None, trace);
        }
    };
    report.n = g.n();
    report.m = g.m();
    report.bound = reducer::bound(g.n());
    let opts = SolveOptions { strict, ..SolveOptions::default() };
    let sol = match reducer::solve_recording(&g, &opts, &mut trace) {
        Ok(s) => s,
        Err(e) => {
            let (status, exit) = classify(&e);
            report.status = status;
            report.error = Some(e.to_string());
            report.steps = trace.steps.len();
            return finish(report, exit, None, trace);
        }
    };
    report.forest_size = Some(sol.forest.len());
    report.certified_bound = Some(sol.certified_bound.to_string());
    report.rule_histogram = sol.stats.rule_counts.clone();
    report.rejected_proposals = sol.stats.rejected_proposals;
    report.steps = sol.trace.steps.len();
    let mut exit = Exit::Ok;
    if g.n() <= oracle_limit {
        match oracle::max_induced_forest_exact(&g, SOLVE_ORACLE_BUDGET) {
            Ok(o) => {
                report.oracle_optimum = Some(o.optimum);
                if sol.forest.len() > o.optimum || o.optimum < report.bound {
                    report.status = Status::VerificationFailed;
                    report.error = Some(format!("forest {} against optimum {}", sol.forest.len(), o.optimum));
                    exit = Exit::VerificationFailed;
                }
            }
            Err(e) => warn!("oracle skipped: {e}"),
        }
    }
    finish(report, exit, Some(sol), trace)
}

pub fn solve(graph: &Path, output: Option<&Path>, trace_path: Option<&Path>, json: bool, oracle_limit: usize, strict: bool) -> Result<Exit> {
    let bytes = read(graph)?;
    let run = run_one(Some(graph.display().to_string()), &bytes, oracle_limit, strict);
    let trace_text = run.trace.to_string();
    match trace_path {
        Some(p) => fs::write(p, &trace_text).with_context(|| format!("writing {}", p.display()))?,
        None if run.exit == Exit::StructureViolation => eprint!("{trace_text}"),
        None => {}
    }
    if let Some(sol) = &run.solution {
        if output.is_some() || !json {
            write_out(output, &textio::write_forest(&sol.forest))?;
        }
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&run.report)?);
    } else {
        eprintln!("{}", run.report.line());
    }
    Ok(run.exit)
}

pub fn oracle(graph: &Path, budget: u64, brute: bool) -> Result<Exit> {
    let g = match parse_graph_bytes(&read(graph)?) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(Exit::InvalidInput);
        }
    };
    let res = match oracle::max_induced_forest_exact(&g, budget) {
        Ok(r) => r,
        Err(e @ OracleError::BudgetExceeded { .. }) => {
            eprintln!("error: {e}");
            return Ok(Exit::Failure);
        }
        Err(e @ OracleError::TooLarge(_)) => {
            eprintln!("error: {e}");
            return Ok(Exit::InvalidInput);
        }
    };
    println!("optimum {}", res.optimum);
    let w: Vec<String> = res.witness.iter().map(|v| v.to_string()).collect();
    println!("witness {}", w.join(" "));
    info!("explored {} nodes", res.nodes_explored);
    if brute {
        let b = oracle::brute_force_tiny(&g).context("subset enumeration")?;
        println!("brute {}", b.optimum);
        if b.optimum != res.optimum {
            eprintln!("error: oracles disagree");
            return Ok(Exit::VerificationFailed);
        }
    }
    Ok(Exit::Ok)
}

pub fn check(graph: &Path, forest: &Path) -> Result<Exit> {
    let g = match parse_graph_bytes(&read(graph)?) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(Exit::InvalidInput);
        }
    };
    let text = String::from_utf8(read(forest)?).context("forest file is not UTF-8")?;
    let f = match textio::parse_forest(&text) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(Exit::InvalidInput);
        }
    };
    let acyclic = match check_induced_forest(&g, &f) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(Exit::InvalidInput);
        }
    };
    let need = reducer::bound(g.n());
    if !acyclic {
        println!("not a forest: the set induces a cycle");
        return Ok(Exit::NotForest);
    }
    if f.len() < need {
        println!("below bound: {} < {need}", f.len());
        return Ok(Exit::BelowBound);
    }
    println!("ok: induced forest of {} vertices, bound {need}", f.len());
    Ok(Exit::Ok)
}

fn q_str(x: &Q) -> String {
    x.to_string()
}

fn multipliers(c: &lpcert::FarkasCertificate) -> BTreeMap<String, String> {
    c.multipliers.iter().map(|(l, m)| (l.clone(), q_str(m))).collect()
}

/// Builds the whole LP report; `ok` is the conjunction of every check.
pub fn lp_report() -> LpReport {
    let start = Instant::now();
    let base = lpcert::base_constraints();
    let derived = lpcert::derived_constraints();
    let point = lpcert::lp_point();
    let objective = [lpcert::q(1, 1), lpcert::q(-2, 1), lpcert::q(0, 1), lpcert::q(0, 1)];
    let (opt, argmax) = match lpcert::maximize(&objective, &base) {
        Ok(r) => r,
        Err(_) => (lpcert::q(-1, 1), point.clone()),
    };
    let at_point = lpcert::check_point(&point, &base);
    let base_satisfied = base.len() - at_point.violations().count();
    let tight: Vec<String> = at_point.tight().map(|s| s.label.clone()).collect();
    let argmax_clean = lpcert::check_point(&argmax, &base).violations().next().is_none();

    let mut certs_ok = true;
    let certificates: Vec<CertificateReport> = derived
        .iter()
        .map(|t| match lpcert::find_redundancy_certificate(t, &base) {
            Ok(c) => {
                let verified = c.verify(t, &base);
                certs_ok &= verified;
                CertificateReport { target: t.label.clone(), inequality: t.to_string(), multipliers: multipliers(&c), verified }
            }
            Err(_) => {
                certs_ok = false;
                CertificateReport { target: t.label.clone(), inequality: t.to_string(), multipliers: BTreeMap::new(), verified: false }
            }
        })
        .collect();
    let chain_family = lpcert::verify_chain_family(&base);

    let stated: Vec<StatedReport> = lpcert::check_stated_combinations()
        .into_iter()
        .map(|p| {
            let replacement = (!p.holds)
                .then(|| derived.iter().find(|c| c.label == p.target))
                .flatten()
                .and_then(|t| lpcert::find_redundancy_certificate(t, &base).ok())
                .map(|c| multipliers(&c));
            StatedReport { target: p.target, claimed: p.claimed.into_iter().collect(), holds: p.holds, duplicated_with: p.duplicated_with, replacement }
        })
        .collect();
    let stated_ok = stated.iter().all(|p| p.holds || p.replacement.is_some());

    let mut tuples: Vec<(String, inforest_core::accounting::Accounting)> = Vec::new();
    for r in rules::build_rule_table() {
        for a in r.accounting.expand() {
            tuples.push((r.name.to_string(), a));
        }
    }
    let potential_ok = lpcert::verify_rule_accounting(&tuples, &point).is_ok();
    let mut ratio_count = 0;
    let mut ratio_ok = true;
    for r in rules::ratio_rules() {
        for a in r.accounting.expand() {
            ratio_count += 1;
            ratio_ok &= reducer::sound_for(&a, Phase::Ratio);
        }
    }

    let ok = opt == lpcert::q(5, 9)
        && argmax_clean
        && at_point.objective == opt
        && base_satisfied == base.len()
        && ["Bh", "Bi", "Bj"].iter().all(|l| tight.iter().any(|t| t == l))
        && certs_ok
        && chain_family
        && stated_ok;
    LpReport {
        schema: report::LP_SCHEMA,
        optimum: q_str(&opt),
        point: point.clone().map(|x| q_str(&x)),
        base_total: base.len(),
        base_satisfied,
        tight,
        certificates,
        chain_family,
        stated,
        rule_tuples: tuples.len() + ratio_count,
        rules_sound: potential_ok && ratio_ok,
        ok: ok && potential_ok && ratio_ok,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn slack_table(point: &[Q; 4], cs: &[LpConstraint]) -> String {
    let mut s = String::new();
    for c in cs {
        s += &format!("  {:<24} {:<36} slack {}\n", c.label, c.to_string(), c.eval(point));
    }
    s
}

pub fn verify_lp(json: bool) -> Result<Exit> {
    let r = lp_report();
    if json {
        println!("{}", serde_json::to_string_pretty(&r)?);
    } else {
        let point = lpcert::lp_point();
        println!("optimum a - 2b = {} at (a, b, c, d) = ({})", r.optimum, r.point.join(", "));
        println!("base constraints: {}/{} satisfied, tight: {}", r.base_satisfied, r.base_total, r.tight.join(" "));
        print!("{}", slack_table(&point, &lpcert::base_constraints()));
        println!("derived constraints:");
        print!("{}", slack_table(&point, &lpcert::derived_constraints()));
        println!("certificates:");
        for c in &r.certificates {
            let parts: Vec<String> = c.multipliers.iter().map(|(l, m)| format!("{m}*({l})")).collect();
            let mark = if c.verified { "ok" } else { "FAILED" };
            println!("  {:<24} = {}  [{mark}]", c.target, parts.join(" + "));
        }
        println!("chain family {{Bm: 1, Bk: t}}: {}", if r.chain_family { "ok" } else { "FAILED" });
        for p in &r.stated {
            if p.holds {
                continue;
            }
            let dup = p.duplicated_with.as_deref().map(|d| format!(", same combination as {d}")).unwrap_or_default();
            let fix = p
                .replacement
                .as_ref()
                .map(|m| m.iter().map(|(l, x)| format!("{x}*({l})")).collect::<Vec<_>>().join(" + "))
                .unwrap_or_else(|| "none found".to_string());
            println!("stated combination for {} does not hold{dup}; replacement: {fix}", p.target);
        }
        println!("rule accounting: {} tuples, {}", r.rule_tuples, if r.rules_sound { "all sound" } else { "UNSOUND" });
        println!("{}", if r.ok { "verify-lp: ok" } else { "verify-lp: FAILED" });
    }
    Ok(if r.ok { Exit::Ok } else { Exit::VerificationFailed })
}

pub fn replay(graph: &Path, trace: &Path, output: Option<&Path>) -> Result<Exit> {
    let g = match parse_graph_bytes(&read(graph)?) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(Exit::InvalidInput);
        }
    };
    let text = String::from_utf8(read(trace)?).context("trace file is not UTF-8")?;
    let t = match Trace::parse(&text) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(Exit::InvalidInput);
        }
    };
    let f = match reducer::replay(&g, &t) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(classify(&e).1);
        }
    };
    let need = reducer::bound(g.n());
    eprintln!("replayed {} steps: forest {} bound {need}", t.steps.len(), f.len());
    write_out(output, &textio::write_forest(&f))?;
    Ok(if f.len() >= need { Exit::Ok } else { Exit::BelowBound })
}

fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for e in fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let e = e?;
        if e.file_type()?.is_file() {
            files.push(e.path());
        }
    }
    files.sort();
    Ok(files)
}

pub fn corpus_report(dir: &Path, oracle_limit: usize) -> Result<CorpusReport> {
    let files = corpus_files(dir)?;
    let entries: Vec<RunReport> = files
        .par_iter()
        .map(|p| {
            let name = p.file_name().map(|s| s.to_string_lossy().into_owned());
            match fs::read(p) {
                Ok(bytes) => run_one(name, &bytes, oracle_limit, false).report,
                Err(e) => {
                    let mut r = run_one(name, b"", 0, false).report;
                    r.status = Status::ReadError;
                    r.error = Some(e.to_string());
                    r.input_digest.clear();
                    r
                }
            }
        })
        .collect();
    let failed = entries.iter().filter(|e| e.status != Status::Ok).count();
    let ratios: Vec<f64> = entries
        .iter()
        .filter(|e| e.status == Status::Ok && e.n > 0)
        .filter_map(|e| e.forest_size.map(|f| f as f64 / e.n as f64))
        .collect();
    let oracle_ratios = entries
        .iter()
        .filter(|e| e.status == Status::Ok)
        .filter_map(|e| match (e.forest_size, e.oracle_optimum) {
            (Some(f), Some(o)) if o > 0 => Some(f as f64 / o as f64),
            _ => None,
        });
    Ok(CorpusReport {
        schema: report::CORPUS_SCHEMA,
        graphs: entries.len(),
        passed: entries.len() - failed,
        failed,
        min_ratio: ratios.iter().copied().reduce(f64::min),
        mean_ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
        min_oracle_ratio: oracle_ratios.reduce(f64::min),
        entries,
    })
}

pub fn corpus(dir: &Path, oracle_limit: usize, json: bool, continue_on_error: bool) -> Result<Exit> {
    let r = corpus_report(dir, oracle_limit)?;
    if !continue_on_error {
        if let Some(e) = r.entries.iter().find(|e| matches!(e.status, Status::InvalidInput | Status::ReadError)) {
            bail!("{}: {}", e.file.as_deref().unwrap_or("?"), e.error.as_deref().unwrap_or("unreadable"));
        }
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&r)?);
    } else {
        for e in &r.entries {
            println!("{:<48} {}", e.file.as_deref().unwrap_or("?"), e.line());
        }
        let f = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| format!("{v:.4}"));
        println!(
            "graphs {} passed {} failed {} min-ratio {} mean-ratio {} min-vs-optimum {}",
            r.graphs,
            r.passed,
            r.failed,
            f(r.min_ratio),
            f(r.mean_ratio),
            f(r.min_oracle_ratio)
        );
    }
    Ok(if r.failed == 0 { Exit::Ok } else { Exit::CorpusFailures })
}
