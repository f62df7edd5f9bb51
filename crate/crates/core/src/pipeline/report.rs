//! Versioned JSON summary of a search.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::Shard;
use crate::equiv::{canonical_set, CanonicalQuad};
use crate::error::{invalid, Result};
use crate::filters::Filters;
use crate::seqcore::write_quads;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCounts {
    pub rowsum_triples: usize,
    pub skew_candidates: usize,
    pub symmetric_candidates: usize,
    pub matched_quadruples: usize,
    /// Instances of the whole search after compressed deduplication.
    pub instances: usize,
    /// Instances this shard solved.
    pub shard_instances: usize,
    pub raw_solutions: usize,
    pub inequivalent: usize,
}

/// Seconds per stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StageTimings {
    pub rowsums: f64,
    pub candidates: f64,
    pub matching: f64,
    pub dedup: f64,
    pub solving: f64,
    pub canonical: f64,
}

impl StageTimings {
    pub fn total(&self) -> f64 {
        self.rowsums + self.candidates + self.matching + self.dedup + self.solving + self.canonical
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub n: usize,
    pub shard: Shard,
    pub filters: Filters,
    pub compressed_dedup: bool,
    pub seed: u64,
    pub counts: StageCounts,
    pub timings: StageTimings,
    pub wall_time_secs: f64,
    /// False when some instance ran out of budget or a shard is missing.
    pub exhaustive: bool,
    /// SHA-256 of the row file of the quads, in canonical order.
    pub digest: String,
}

impl SearchReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: SearchReport = serde_json::from_str(text)?;
        if report.schema_version != SCHEMA_VERSION {
            return invalid(format!(
                "report schema version {} is not {SCHEMA_VERSION}",
                report.schema_version
            ));
        }
        Ok(report)
    }
}

/// Row file text for a sorted list of canonical quads.
pub fn row_file(quads: &[CanonicalQuad]) -> String {
    let rows: Vec<_> = quads.iter().map(|q| q.quad().to_row_quad()).collect();
    write_quads(&rows)
}

pub fn quads_digest(quads: &[CanonicalQuad]) -> String {
    hex::encode(Sha256::digest(row_file(quads).as_bytes()))
}

/// Combines shard reports and their quads into one report for the whole order.
pub fn merge_reports(
    reports: &[SearchReport],
    quads: &[CanonicalQuad],
) -> Result<(SearchReport, Vec<CanonicalQuad>)> {
    let Some(first) = reports.first() else {
        return invalid("no reports to merge");
    };
    let total = first.shard.total;
    if reports
        .iter()
        .any(|r| r.n != first.n || r.shard.total != total
            || r.filters != first.filters
            || r.compressed_dedup != first.compressed_dedup)
    {
        return invalid("reports come from different searches");
    }
    let mut seen = vec![false; total];
    for r in reports {
        if std::mem::replace(&mut seen[r.shard.index], true) {
            return invalid(format!("shard {}/{total} appears twice", r.shard.index));
        }
    }
    let merged_quads = canonical_set(quads.iter().map(|q| q.quad()));
    let mut counts = first.counts;
    counts.shard_instances = reports.iter().map(|r| r.counts.shard_instances).sum();
    counts.raw_solutions = reports.iter().map(|r| r.counts.raw_solutions).sum();
    counts.inequivalent = merged_quads.len();
    let mut timings = first.timings;
    timings.solving = reports.iter().map(|r| r.timings.solving).sum();
    timings.canonical = reports.iter().map(|r| r.timings.canonical).sum();
    let report = SearchReport {
        schema_version: SCHEMA_VERSION,
        n: first.n,
        shard: Shard::WHOLE,
        filters: first.filters,
        compressed_dedup: first.compressed_dedup,
        seed: first.seed,
        counts,
        timings,
        wall_time_secs: reports.iter().map(|r| r.wall_time_secs).sum(),
        exhaustive: seen.iter().all(|&s| s) && reports.iter().all(|r| r.exhaustive),
        digest: quads_digest(&merged_quads),
    };
    Ok((report, merged_quads))
}
