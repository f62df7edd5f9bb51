//! Full search for one order: `cargo run --release --example enumerate -- 27`

use goodmat::pipeline::{enumerate_with, SearchConfig};

fn main() -> goodmat::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(Ok(21), |s| s.parse()).expect("order");
    let search = enumerate_with(n, &SearchConfig::default())?;

    for (i, q) in search.quads.iter().enumerate() {
        println!("# {i}\n{}", q.quad());
    }
    let r = &search.report;
    println!(
        "n = {n}: {} inequivalent from {} instances in {:.2}s",
        r.counts.inequivalent, r.counts.instances, r.wall_time_secs
    );
    println!("digest {}", r.digest);
    Ok(())
}
