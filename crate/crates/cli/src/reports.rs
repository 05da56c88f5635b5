//! Wire formats for command output. Struct field order is the key order of
//! the emitted JSON, and every report serializes to the same bytes for the
//! same inputs.

use ffderiv::census::CensusIdentityReport;
use ffderiv::FieldSpec;
use serde::Serialize;
use serde_json::Value;

/// One rendered command result: the JSON line, the plain-text view, and the
/// process exit code.
pub struct Output {
    pub json: String,
    pub table: String,
    pub exit: u8,
}

impl Output {
    pub fn new<T: Serialize>(report: &T, table: String, exit: u8) -> Self {
        let json = serde_json::to_string(report).expect("reports serialize");
        Output { json, table, exit }
    }
}

#[derive(Serialize)]
pub struct TrialRun<T: Serialize> {
    pub field: FieldSpec,
    pub trials: u64,
    pub seed: u64,
    pub failures: u64,
    /// Failing draws in full, so a defect can be replayed without the RNG.
    pub counterexamples: Vec<T>,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct LemmaCounterexample {
    pub trial: u64,
    pub f: Vec<u64>,
    pub alpha: u64,
}

#[derive(Serialize)]
pub struct PropsCounterexample {
    pub trial: u64,
    pub f: Vec<u64>,
    pub alpha: u64,
    pub beta: u64,
    pub iota: u64,
    pub failed: Vec<&'static str>,
}

#[derive(Serialize)]
pub struct GapnOut {
    pub field: FieldSpec,
    pub is_gapn: bool,
    pub max_solutions: usize,
    pub worst_alpha: u64,
    pub worst_beta: u64,
}

#[derive(Serialize)]
pub struct DeriveOut {
    pub field: FieldSpec,
    pub dirs: Vec<u64>,
    pub oracle_checked: bool,
    pub result: Value,
}

#[derive(Serialize)]
pub struct MatchFound {
    pub status: &'static str,
    pub g: Value,
    pub verified: bool,
}

#[derive(Serialize)]
pub struct MatchWitness {
    pub j: usize,
    pub w: Vec<u64>,
}

#[derive(Serialize)]
pub struct MatchMissing {
    pub status: &'static str,
    pub witness: MatchWitness,
}

#[derive(Serialize)]
pub struct CheckOut {
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Serialize)]
pub struct AntiderivFound {
    pub status: &'static str,
    pub h: Value,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessOut {
    Coset { indices: Vec<u64> },
    Pair { i: usize, j: usize },
}

#[derive(Serialize)]
pub struct AntiderivMissing {
    pub status: &'static str,
    pub witness: WitnessOut,
}

#[derive(Serialize)]
pub struct FieldInfoOut {
    pub p: u64,
    pub n: usize,
    pub modulus: Vec<u64>,
    pub order: u64,
}

#[derive(Serialize)]
pub struct AgreementOut {
    /// None when the prime exceeds the enumeration bound.
    pub enumerate: Option<bool>,
    pub closed_form: bool,
}

#[derive(Serialize)]
pub struct CensusOut {
    pub p: u64,
    pub star: bool,
    pub counts: Vec<Vec<u64>>,
    pub agreement: AgreementOut,
    /// None for p = 2, where the identities are not stated.
    pub identities: Option<CensusIdentityReport>,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct RingOut {
    pub n: u64,
    pub counts: Vec<Vec<u64>>,
    /// None when the modulus exceeds the enumeration bound.
    pub enumerate_agrees: Option<bool>,
    pub pass: bool,
}

pub fn kv_lines(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in pairs {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    out
}

pub fn join_u64(xs: &[u64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn field_label(spec: &FieldSpec) -> String {
    format!(
        "p={} n={} modulus={}",
        spec.p(),
        spec.n(),
        join_u64(spec.modulus())
    )
}

fn opt_flag(v: Option<bool>) -> String {
    match v {
        Some(b) => b.to_string(),
        None => "skipped".to_string(),
    }
}

/// Rows labeled by cardinality, columns by sum residue.
pub fn grid_text(header: &str, counts: &[Vec<u64>]) -> String {
    let width = counts
        .iter()
        .flatten()
        .map(|c| c.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = format!("{header}\n");
    for (l, row) in counts.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&format!("l={l:<3} {}\n", cells.join(" ")));
    }
    out
}

pub fn census_text(out: &CensusOut) -> String {
    let header = format!("census p={} star={}", out.p, out.star);
    let mut pairs = vec![
        ("enumerate_agrees", opt_flag(out.agreement.enumerate)),
        ("closed_form_agrees", out.agreement.closed_form.to_string()),
    ];
    match &out.identities {
        Some(r) => {
            pairs.push(("row_sums", r.row_sums.to_string()));
            pairs.push(("full_uniform", r.full_uniform.to_string()));
            pairs.push(("star_uniform", r.star_uniform.to_string()));
            pairs.push(("recurrence", r.recurrence.to_string()));
            pairs.push(("difference", r.difference.to_string()));
            pairs.push(("congruence", r.congruence.to_string()));
            pairs.push(("closed_form_matches", r.closed_form_matches.to_string()));
            pairs.push(("enumerate_matches_dp", opt_flag(r.enumerate_matches_dp)));
        }
        None => pairs.push(("identities", "skipped".to_string())),
    }
    pairs.push(("pass", out.pass.to_string()));
    grid_text(&header, &out.counts) + &kv_lines(&pairs)
}

pub fn ring_text(out: &RingOut) -> String {
    let header = format!("ring census N={}", out.n);
    let pairs = [
        ("enumerate_agrees", opt_flag(out.enumerate_agrees)),
        ("pass", out.pass.to_string()),
    ];
    grid_text(&header, &out.counts) + &kv_lines(&pairs)
}
