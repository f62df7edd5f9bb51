//! Brute force against the pipeline for the small orders.

use goodmat::pipeline::{brute_force_oracle, enumerate_good_matrices};

fn main() -> goodmat::Result<()> {
    for n in [3, 9, 15] {
        let brute = brute_force_oracle(n)?;
        let search = enumerate_good_matrices(n)?;
        println!("n = {n:2}: oracle {:2}, pipeline {:2}, equal {}", brute.len(), search.len(), brute == search);
    }
    // The oracle also handles orders the pipeline does not.
    for n in [5, 7, 11, 13] {
        println!("n = {n:2}: oracle {:2}", brute_force_oracle(n)?.len());
    }
    Ok(())
}
