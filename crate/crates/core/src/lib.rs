//! Exhaustive search for circulant good matrices of odd order divisible by 3.
//!
//! A quad of good matrices is given by its defining rows: a skew row `A` and
//! symmetric rows `B, C, D` of length `n` whose periodic autocorrelations sum
//! to zero at every nonzero shift. The search
//!
//! 1. solves `4n = 1 + x² + y² + z²` for the rowsums of `B, C, D`,
//! 2. lists the 3-compressions of every row that passes the PSD bound,
//! 3. joins compressed pairs on their autocorrelation vectors,
//! 4. uncompresses each match with a CDCL solver whose callback enforces the
//!    PSD bound, and
//! 5. keeps one representative per equivalence class.
//!
//! Start with the programs under `examples/`: `rowsums`, `candidates`,
//! `match_quadruples`, `solve_instance`, `enumerate`, `verify_published`,
//! `skew_hadamard`, `oracle`, `export_dimacs` and `sharded`.
//!
//! ```
//! let quads = goodmat::pipeline::enumerate_good_matrices(9).unwrap();
//! assert_eq!(quads.len(), 1);
//! ```

pub mod candidates;
pub mod cli;
pub mod diophantine;
pub mod equiv;
pub mod error;
pub mod filters;
pub mod known;
pub mod matching;
pub mod pipeline;
pub mod satsearch;
pub mod seqcore;
pub mod spectral;

pub use error::{Error, Result};
pub use filters::Filters;
