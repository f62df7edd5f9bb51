//! Skew-Hadamard matrix of order 108 from the published order-27 quad.

use goodmat::known;
use goodmat::pipeline::{build_skew_hadamard, recover_amicable};

fn main() -> goodmat::Result<()> {
    let rows = known::order_27().to_row_quad();

    // The circulant B, C, D commute with A but are not amicable with it until
    // their rows are reversed.
    let good = recover_amicable(&rows)?;
    println!("pairwise amicable after reversal: {}", good.pairwise_amicable());

    let h = build_skew_hadamard(&rows)?;
    println!("order {}", h.order());
    print!("{h}");
    Ok(())
}
