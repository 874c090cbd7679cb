//! JSON reports.
//!
//! Every report is an object whose first two keys are `version` and
//! `kind`; the remaining keys follow a fixed order, so output is
//! byte-for-byte reproducible.

use freegroup::equaliser::EqualiserReport;
use freegroup::harness::CampaignReport;
use freegroup::stable_domain::{SdStatus, SdTrace};
use freegroup::{format_word, Alphabet, Word};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

fn words(al: &Alphabet, ws: &[Word]) -> Vec<String> {
    ws.iter().map(|w| format_word(al, w)).collect()
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EqualiserJson {
    pub version: u32,
    pub kind: &'static str,
    pub verdict: &'static str,
    pub basis_words: Vec<String>,
    pub rank: usize,
    pub witnesses: Vec<String>,
    pub provenance: Vec<&'static str>,
    pub radius: Option<usize>,
    pub rank_bound: Option<usize>,
}

impl EqualiserJson {
    pub fn new(report: &EqualiserReport, domain: &Alphabet) -> Self {
        EqualiserJson {
            version: SCHEMA_VERSION,
            kind: "equaliser",
            verdict: report.verdict.code(),
            basis_words: words(domain, &report.basis),
            rank: report.rank(),
            witnesses: words(domain, &report.witnesses),
            provenance: report.provenance.iter().map(|p| p.code()).collect(),
            radius: report.radius,
            rank_bound: report.rank_bound,
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SdJson {
    pub version: u32,
    pub kind: &'static str,
    pub status: &'static str,
    pub stabilized_at: Option<usize>,
    pub cap: usize,
    pub iterate_ranks: Vec<usize>,
    pub iterate_bases: Vec<Vec<String>>,
    pub sd_basis: Option<Vec<String>>,
    pub reason: Option<String>,
}

impl SdJson {
    pub fn new(trace: &SdTrace, cap: usize) -> Self {
        let domain = trace.g.domain();
        let (stabilized_at, reason) = match &trace.status {
            SdStatus::Stabilized(i) => (Some(*i), None),
            SdStatus::CapReached(c) => (None, Some(format!("no two consecutive iterates agree among the first {c}"))),
            SdStatus::SizeLimit { vertices } => (
                None,
                Some(format!("the next iterate has {vertices} vertices, over the size limit")),
            ),
            SdStatus::Unsupported(r) => (None, Some(r.clone())),
        };
        SdJson {
            version: SCHEMA_VERSION,
            kind: "sdTrace",
            status: trace.status.code(),
            stabilized_at,
            cap,
            iterate_ranks: trace.ranks(),
            iterate_bases: trace
                .iterates
                .iter()
                .map(|it| words(domain, &it.basis().words))
                .collect(),
            sd_basis: trace.sd.as_ref().map(|sd| words(domain, &sd.basis().words)),
            reason,
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FailureJson {
    pub trial: usize,
    pub trial_seed: u64,
    pub instance: String,
    pub detail: String,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CampaignJson {
    pub version: u32,
    pub kind: &'static str,
    pub property: String,
    pub seed: u64,
    pub trials: usize,
    pub max_word_len: usize,
    pub max_rank: usize,
    pub radius: usize,
    pub max_iter: usize,
    pub trials_run: usize,
    pub status: &'static str,
    pub failures: Vec<FailureJson>,
    pub note: &'static str,
}

impl CampaignJson {
    pub fn new(report: &CampaignReport) -> Self {
        let c = &report.config;
        CampaignJson {
            version: SCHEMA_VERSION,
            kind: "campaign",
            property: report.property.clone(),
            seed: c.seed,
            trials: c.trials,
            max_word_len: c.max_word_len,
            max_rank: c.max_rank,
            radius: c.radius,
            max_iter: c.max_iter,
            trials_run: report.trials_run,
            status: report.status.code(),
            failures: report
                .failures
                .iter()
                .map(|f| FailureJson {
                    trial: f.trial,
                    trial_seed: f.trial_seed,
                    instance: f.instance.clone(),
                    detail: f.detail.clone(),
                })
                .collect(),
            note: report.note,
        }
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
