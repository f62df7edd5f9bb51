//! The full search: rowsums, candidates, matching, uncompression, canonical forms.

pub mod oracle;
pub mod report;
pub mod verify;

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;

pub use oracle::brute_force_oracle;
pub use report::{merge_reports, quads_digest, SearchReport, StageCounts, StageTimings, SCHEMA_VERSION};
pub use verify::{build_skew_hadamard, certify, recover_amicable, verify_definition, Certificates};

use crate::candidates::generate_candidates_with;
use crate::diophantine::signed_rowsums;
use crate::equiv::{canonical_compressed, canonical_set, CanonicalQuad};
use crate::error::{invalid, Error, Result};
use crate::filters::Filters;
use crate::matching::match_quadruples_with;
use crate::satsearch::{build_instance, solve_all_with, CnfInstance, SolveOptions};
use crate::seqcore::{CompressedQuad, DefiningQuad};

/// Orders above this are refused unless `allow_large` is set.
pub const DEFAULT_MAX_ORDER: usize = 39;

/// Part `index` of `total` round-robin parts of the instance list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Shard {
    pub index: usize,
    pub total: usize,
}

impl Shard {
    pub const WHOLE: Shard = Shard { index: 0, total: 1 };

    pub fn new(index: usize, total: usize) -> Result<Self> {
        if total == 0 || index >= total {
            return invalid(format!("shard {index}/{total} is out of range"));
        }
        Ok(Shard { index, total })
    }

    /// Parses `i/N`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("shard must look like i/N, got {text:?}"));
        let (i, total) = text.split_once('/').ok_or_else(bad)?;
        let i = i.trim().parse().map_err(|_| bad())?;
        let total = total.trim().parse().map_err(|_| bad())?;
        Shard::new(i, total)
    }

    pub fn owns(&self, instance: usize) -> bool {
        instance % self.total == self.index
    }
}

impl Default for Shard {
    fn default() -> Self {
        Shard::WHOLE
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub filters: Filters,
    pub shard: Shard,
    pub seed: u64,
    /// Conflict budget per instance.
    pub max_conflicts: Option<u64>,
    /// Solve one compressed quadruple per reorder/automorphism class.
    pub compressed_dedup: bool,
    pub allow_large: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            filters: Filters::ALL,
            shard: Shard::WHOLE,
            seed: 0,
            max_conflicts: None,
            compressed_dedup: true,
            allow_large: false,
        }
    }
}

/// Inequivalent quads of one search plus how they were found.
#[derive(Clone, Debug)]
pub struct Search {
    pub quads: Vec<CanonicalQuad>,
    pub report: SearchReport,
}

/// Compressed quadruples and SAT instances for one order, before solving.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub n: usize,
    /// Every instance of the whole search, in the order shards are cut from.
    pub instances: Vec<CnfInstance>,
    pub counts: StageCounts,
    pub timings: StageTimings,
}

impl Prepared {
    pub fn shard(&self, shard: Shard) -> impl Iterator<Item = &CnfInstance> {
        self.instances
            .iter()
            .enumerate()
            .filter(move |(i, _)| shard.owns(*i))
            .map(|(_, inst)| inst)
    }
}

pub fn check_order(n: usize, allow_large: bool) -> Result<()> {
    if n == 0 || n.is_multiple_of(2) || !n.is_multiple_of(3) {
        return invalid(format!("order must be odd and divisible by 3, got {n}"));
    }
    if n > DEFAULT_MAX_ORDER && !allow_large {
        return invalid(format!(
            "order {n} is above {DEFAULT_MAX_ORDER}; pass the large-order opt-in to search it anyway"
        ));
    }
    Ok(())
}

fn secs(start: Instant) -> f64 {
    start.elapsed().as_secs_f64()
}

/// Runs every stage up to building the SAT instances.
pub fn prepare(n: usize, config: &SearchConfig) -> Result<Prepared> {
    check_order(n, config.allow_large)?;
    let filters = &config.filters;
    let mut timings = StageTimings::default();
    let mut counts = StageCounts::default();

    let t = Instant::now();
    let rowsums = signed_rowsums(n as u64)?;
    timings.rowsums = secs(t);
    counts.rowsum_triples = rowsums.len();

    let t = Instant::now();
    let cands = generate_candidates_with(n, &rowsums, filters)?;
    timings.candidates = secs(t);
    counts.skew_candidates = cands.s_sk.len();
    counts.symmetric_candidates = cands.s_sy.len();

    let t = Instant::now();
    let matched = match_quadruples_with(&cands, n, filters);
    timings.matching = secs(t);
    counts.matched_quadruples = matched.len();

    let t = Instant::now();
    let kept: Vec<CompressedQuad> = if config.compressed_dedup {
        matched
            .iter()
            .map(canonical_compressed)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    } else {
        matched.into_iter().collect()
    };
    let instances = kept
        .iter()
        .map(|cq| build_instance(cq, filters.parity))
        .collect::<Result<Vec<_>>>()?;
    timings.dedup = secs(t);
    counts.instances = instances.len();

    Ok(Prepared {
        n,
        instances,
        counts,
        timings,
    })
}

/// Solves the instances of one shard of a prepared search.
pub fn solve_prepared(prepared: &Prepared, config: &SearchConfig) -> Result<Search> {
    let start = Instant::now();
    let opts = SolveOptions {
        seed: config.seed,
        partial_psd: config.filters.partial_psd,
        max_conflicts: config.max_conflicts,
    };
    let mine: Vec<&CnfInstance> = prepared.shard(config.shard).collect();
    let runs: Vec<Result<Vec<DefiningQuad>>> = mine
        .par_iter()
        .map(|inst| solve_all_with(inst, &opts).map(|run| run.solutions))
        .collect();
    let solving = secs(start);

    let mut raw = Vec::new();
    let mut exhaustive = true;
    for run in runs {
        match run {
            Ok(sols) => raw.extend(sols),
            Err(Error::ResourceLimit { partial, .. }) => {
                exhaustive = false;
                raw.extend(partial);
            }
            Err(e) => return Err(e),
        }
    }

    let t = Instant::now();
    let quads = canonical_set(&raw);
    let mut timings = prepared.timings;
    timings.solving = solving;
    timings.canonical = secs(t);
    let mut counts = prepared.counts;
    counts.shard_instances = mine.len();
    counts.raw_solutions = raw.len();
    counts.inequivalent = quads.len();

    let report = SearchReport {
        schema_version: SCHEMA_VERSION,
        n: prepared.n,
        shard: config.shard,
        filters: config.filters,
        compressed_dedup: config.compressed_dedup,
        seed: config.seed,
        counts,
        timings,
        wall_time_secs: timings.total(),
        exhaustive,
        digest: quads_digest(&quads),
    };
    let search = Search { quads, report };
    if exhaustive {
        Ok(search)
    } else {
        Err(Error::Incomplete(Box::new(search)))
    }
}

pub fn enumerate_with(n: usize, config: &SearchConfig) -> Result<Search> {
    let prepared = prepare(n, config)?;
    solve_prepared(&prepared, config)
}

/// Every inequivalent good matrix quad of order `n`, with every filter on.
pub fn enumerate_good_matrices(n: usize) -> Result<Vec<CanonicalQuad>> {
    enumerate_with(n, &SearchConfig::default()).map(|s| s.quads)
}
