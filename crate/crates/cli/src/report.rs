//! Machine-readable reports. Each carries a `schema` tag; the suffix is
//! bumped on any incompatible change.

use std::collections::BTreeMap;

use serde::Serialize;

pub const RUN_SCHEMA: &str = "inforest.run/1";
pub const CORPUS_SCHEMA: &str = "inforest.corpus/1";
pub const LP_SCHEMA: &str = "inforest.lp/1";

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub file: Option<String>,
    /// SHA-256 of the input file bytes.
    pub input_digest: String,
    pub n: usize,
    pub m: usize,
    pub forest_size: Option<usize>,
    pub bound: usize,
    /// Exact lower bound proven by the trace, as a fraction.
    pub certified_bound: Option<String>,
    pub oracle_optimum: Option<usize>,
    pub status: Status,
    pub rule_histogram: BTreeMap<String, usize>,
    pub rejected_proposals: usize,
    pub steps: usize,
    pub wall_ms: f64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    InvalidInput,
    StructureViolation,
    VerificationFailed,
    ReadError,
}

impl RunReport {
    pub fn line(&self) -> String {
        let mut s = format!("n={} m={} forest={} bound={}", self.n, self.m, opt(self.forest_size), self.bound);
        if let Some(o) = self.oracle_optimum {
            s += &format!(" optimum={o}");
        }
        s += &format!(" status={}", self.status.as_str());
        if let Some(e) = &self.error {
            s += &format!(" error=\"{e}\"");
        }
        s
    }
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::InvalidInput => "invalid_input",
            Status::StructureViolation => "structure_violation",
            Status::VerificationFailed => "verification_failed",
            Status::ReadError => "read_error",
        }
    }
}

fn opt(x: Option<usize>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub schema: &'static str,
    pub graphs: usize,
    pub passed: usize,
    pub failed: usize,
    /// Smallest and mean `forest / n` over solved graphs.
    pub min_ratio: Option<f64>,
    pub mean_ratio: Option<f64>,
    /// Smallest `forest / optimum` where the oracle ran.
    pub min_oracle_ratio: Option<f64>,
    pub entries: Vec<RunReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LpReport {
    pub schema: &'static str,
    pub optimum: String,
    pub point: [String; 4],
    pub base_total: usize,
    pub base_satisfied: usize,
    pub tight: Vec<String>,
    pub certificates: Vec<CertificateReport>,
    pub chain_family: bool,
    pub stated: Vec<StatedReport>,
    pub rule_tuples: usize,
    pub rules_sound: bool,
    pub ok: bool,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub target: String,
    pub inequality: String,
    pub multipliers: BTreeMap<String, String>,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct StatedReport {
    pub target: String,
    pub claimed: BTreeMap<String, i64>,
    pub holds: bool,
    pub duplicated_with: Option<String>,
    pub replacement: Option<BTreeMap<String, String>>,
}
