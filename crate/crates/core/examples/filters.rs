//! Stage sizes with every filter on, every filter off, each one off alone,
//! and without compressed deduplication.
//!
//! `cargo run --release --example filters -- 21`

use goodmat::pipeline::{prepare, SearchConfig};
use goodmat::Filters;

fn main() -> goodmat::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(Ok(21), |s| s.parse()).expect("order");
    let on = SearchConfig::default();
    let mut variants = vec![
        ("all on", on),
        ("all off", SearchConfig { filters: Filters::NONE, ..on }),
        ("no dedup", SearchConfig { compressed_dedup: false, ..on }),
    ];
    let names = ["row_psd", "rowsum", "pair_psd", "parity", "partial_psd"];
    for (i, name) in names.into_iter().enumerate() {
        let mut f = Filters::ALL;
        *[&mut f.row_psd, &mut f.rowsum, &mut f.pair_psd, &mut f.parity, &mut f.partial_psd][i] = false;
        variants.push((name, SearchConfig { filters: f, ..on }));
    }
    println!("{:<12} {:>6} {:>6} {:>9} {:>9}", "", "skew", "sym", "matched", "instances");
    for (name, config) in variants {
        let c = prepare(n, &config)?.counts;
        println!(
            "{name:<12} {:>6} {:>6} {:>9} {:>9}",
            c.skew_candidates, c.symmetric_candidates, c.matched_quadruples, c.instances
        );
    }
    Ok(())
}
