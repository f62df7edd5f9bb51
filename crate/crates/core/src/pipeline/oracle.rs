//! Exhaustive reference search for small orders.
//!
//! Shares nothing with the compression, matching or SAT stages: every skew
//! and symmetric row is listed and the autocorrelation identity is solved by
//! meet-in-the-middle on the `D` row.

use std::collections::{BTreeSet, HashMap};

use crate::equiv::{canonical_form, CanonicalQuad};
use crate::error::{invalid, Result};
use crate::seqcore::{make_skew, make_symmetric, DefiningQuad};

pub const ORACLE_MAX_ORDER: usize = 15;

fn half_from_bits(bits: u32, d: usize) -> Vec<i8> {
    (0..d).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect()
}

fn autocorrelations(x: &[i8]) -> Vec<i32> {
    let n = x.len();
    (1..=n / 2)
        .map(|k| (0..n).map(|j| i32::from(x[j] * x[(j + k) % n])).sum())
        .collect()
}

/// Every inequivalent good matrix quad of odd order `n <= 15`, by brute force.
pub fn brute_force_oracle(n: usize) -> Result<Vec<CanonicalQuad>> {
    if n.is_multiple_of(2) || n > ORACLE_MAX_ORDER {
        return invalid(format!(
            "oracle needs an odd order up to {ORACLE_MAX_ORDER}, got {n}"
        ));
    }
    let d = n / 2;
    let halves: Vec<Vec<i8>> = (0..1u32 << d).map(|b| half_from_bits(b, d)).collect();
    let skew: Vec<_> = halves
        .iter()
        .map(|h| {
            let row = make_skew(h, n)?;
            let paf = autocorrelations(row.entries());
            Ok((row, paf))
        })
        .collect::<Result<_>>()?;
    let sym: Vec<_> = halves
        .iter()
        .map(|h| {
            let row = make_symmetric(h, n)?;
            let paf = autocorrelations(row.entries());
            Ok((row, paf))
        })
        .collect::<Result<_>>()?;
    let mut by_paf: HashMap<&[i32], Vec<usize>> = HashMap::new();
    for (i, (_, paf)) in sym.iter().enumerate() {
        by_paf.entry(paf).or_default().push(i);
    }

    let mut found = BTreeSet::new();
    let mut need = vec![0i32; d];
    for (a, pa) in &skew {
        for (b, pb) in &sym {
            for (c, pc) in &sym {
                for k in 0..d {
                    need[k] = -(pa[k] + pb[k] + pc[k]);
                }
                let Some(ds) = by_paf.get(need.as_slice()) else {
                    continue;
                };
                for &i in ds {
                    let q = DefiningQuad::new(a.clone(), b.clone(), c.clone(), sym[i].0.clone())?;
                    found.insert(canonical_form(&q));
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(brute_force_oracle(1).unwrap().len(), 1);
        assert_eq!(brute_force_oracle(3).unwrap().len(), 1);
        assert_eq!(brute_force_oracle(9).unwrap().len(), 1);
    }

    #[test]
    fn order_3_representative() {
        let got = brute_force_oracle(3).unwrap();
        assert_eq!(got[0].quad().to_string(), "++-\n+++\n+--\n+--\n");
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(brute_force_oracle(4).is_err());
        assert!(brute_force_oracle(17).is_err());
    }
}
