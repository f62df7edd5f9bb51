//! Splits the instances of one order into shards, solves each, and merges.

use goodmat::pipeline::{merge_reports, prepare, solve_prepared, SearchConfig, Shard};

fn main() -> goodmat::Result<()> {
    let n = 21;
    let total = 4;
    let base = SearchConfig::default();
    let prepared = prepare(n, &base)?;

    let mut reports = Vec::new();
    let mut quads = Vec::new();
    for index in 0..total {
        let config = SearchConfig {
            shard: Shard::new(index, total)?,
            ..base
        };
        let part = solve_prepared(&prepared, &config)?;
        println!(
            "shard {index}/{total}: {} instances, {} quads",
            part.report.counts.shard_instances,
            part.quads.len()
        );
        quads.extend(part.quads);
        reports.push(part.report);
    }
    let (report, merged) = merge_reports(&reports, &quads)?;
    println!("merged: {} inequivalent, exhaustive {}", merged.len(), report.exhaustive);
    println!("digest {}", report.digest);
    Ok(())
}
