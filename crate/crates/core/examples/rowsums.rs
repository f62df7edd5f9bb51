//! Rowsum triples for `B, C, D`: `cargo run --example rowsums -- 69`

use goodmat::diophantine::{signed_rowsums, three_squares};

fn main() -> goodmat::Result<()> {
    let n: u64 = std::env::args().nth(1).map_or(Ok(69), |s| s.parse()).expect("order");

    println!("4n - 1 = {} as a sum of three odd squares:", 4 * n - 1);
    for [x, y, z] in three_squares(n) {
        println!("  {x}² + {y}² + {z}²");
    }

    // Signs are fixed by n mod 4.
    println!("signed rowsums:");
    for t in signed_rowsums(n)? {
        println!("  ({}, {}, {})", t.x, t.y, t.z);
    }
    Ok(())
}
