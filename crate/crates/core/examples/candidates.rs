//! Compressed candidate rows for one order: `cargo run --release --example candidates -- 27`

use goodmat::candidates::generate_candidates;
use goodmat::diophantine::signed_rowsums;

fn main() -> goodmat::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(Ok(27), |s| s.parse()).expect("order");
    let rowsums = signed_rowsums(n as u64)?;
    let sets = generate_candidates(n, &rowsums)?;

    println!("n = {n}, m = {}", sets.m);
    println!("{} skew compressions, {} symmetric compressions", sets.s_sk.len(), sets.s_sy.len());
    for row in sets.s_sk.iter().take(5) {
        println!("  skew      {row}  (rowsum {})", row.rowsum());
    }
    for row in sets.s_sy.iter().take(5) {
        println!("  symmetric {row}  (rowsum {})", row.rowsum());
    }
    Ok(())
}
