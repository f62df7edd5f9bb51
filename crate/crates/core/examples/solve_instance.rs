//! Uncompress one compressed quadruple with the CDCL solver and PSD callback.
//!
//! The compression of the published order-27 quad is used as the instance, so
//! that quad must come back among the solutions.

use goodmat::known;
use goodmat::satsearch::{build_instance, solve_all_with, SolveOptions};

fn main() -> goodmat::Result<()> {
    let quad = known::order_27();
    let compressed = quad.compress()?;
    let instance = build_instance(&compressed, true)?;
    println!("instance {compressed}");
    println!("{} variables, {} clauses", instance.num_vars(), instance.clauses.len());

    let run = solve_all_with(&instance, &SolveOptions::default())?;
    println!("{:?}", run.stats);
    for (i, q) in run.solutions.iter().enumerate() {
        let mark = if *q == quad { "  <- published" } else { "" };
        println!("solution {i}{mark}\n{q}");
    }
    assert!(run.solutions.contains(&quad));
    Ok(())
}
