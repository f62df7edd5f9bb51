//! Sort-join of compressed pairs, then one quadruple per equivalence class.
//!
//! `cargo run --release --example match_quadruples -- 21`

use std::collections::BTreeSet;

use goodmat::candidates::generate_candidates;
use goodmat::diophantine::signed_rowsums;
use goodmat::equiv::canonical_compressed;
use goodmat::matching::{is_compressed_match, match_quadruples};

fn main() -> goodmat::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(Ok(21), |s| s.parse()).expect("order");
    let sets = generate_candidates(n, &signed_rowsums(n as u64)?)?;
    let matched = match_quadruples(&sets, n);
    assert!(matched.iter().all(|q| is_compressed_match(q, n)));

    let classes: BTreeSet<_> = matched.iter().map(canonical_compressed).collect();
    println!("{} compressed quadruples, {} up to equivalence", matched.len(), classes.len());
    for q in classes.iter().take(10) {
        println!("  {q}");
    }
    Ok(())
}
