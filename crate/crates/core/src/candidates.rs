//! Compressed candidate rows: every skew and symmetric defining row that
//! survives the PSD and rowsum filters, reduced to its 3-compression.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use rayon::prelude::*;

use crate::diophantine::RowsumTriple;
use crate::error::{invalid, Result};
use crate::filters::Filters;
use crate::seqcore::{compress3, CompressedRow};
use crate::spectral::Dft;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CandidateSets {
    /// Compressions of skew rows.
    pub s_sk: BTreeSet<CompressedRow>,
    /// Compressions of symmetric rows.
    pub s_sy: BTreeSet<CompressedRow>,
    pub n: usize,
    pub m: usize,
    pub d: usize,
}

pub fn generate_candidates(n: usize, rowsums: &BTreeSet<RowsumTriple>) -> Result<CandidateSets> {
    generate_candidates_with(n, rowsums, &Filters::ALL)
}

pub fn generate_candidates_with(
    n: usize,
    rowsums: &BTreeSet<RowsumTriple>,
    filters: &Filters,
) -> Result<CandidateSets> {
    if n.is_multiple_of(2) || !n.is_multiple_of(3) {
        return invalid(format!("order must be odd and divisible by 3, got {n}"));
    }
    let d = n / 2;
    let m = n / 3;
    let mut sets = CandidateSets {
        n,
        m,
        d,
        ..Default::default()
    };
    if filters.rowsum && rowsums.is_empty() {
        return Ok(sets);
    }
    let allowed: BTreeSet<i32> = rowsums.iter().flat_map(|t| t.as_array()).collect();
    let dft = Dft::new(n);
    let bound = 4.0 * n as f64;

    const CHUNK: u64 = 1 << 12;
    let total = 1u64 << d;
    let chunks = total.div_ceil(CHUNK);
    let (s_sk, s_sy) = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut sk = BTreeSet::new();
            let mut sy = BTreeSet::new();
            let mut skew = vec![1i8; n];
            let mut sym = vec![1i8; n];
            for bits in chunk * CHUNK..((chunk + 1) * CHUNK).min(total) {
                for i in 0..d {
                    let x = if bits >> i & 1 == 1 { -1 } else { 1 };
                    skew[1 + i] = x;
                    skew[n - 1 - i] = -x;
                    sym[1 + i] = x;
                    sym[n - 1 - i] = x;
                }
                if !filters.row_psd || dft.within(&skew, bound, 0) {
                    sk.insert(compress3(&skew).expect("length is a multiple of 3"));
                }
                let sum: i32 = sym.iter().map(|&v| i32::from(v)).sum();
                if (!filters.rowsum || allowed.contains(&sum))
                    && (!filters.row_psd || dft.within(&sym, bound, 0))
                {
                    sy.insert(compress3(&sym).expect("length is a multiple of 3"));
                }
            }
            (sk, sy)
        })
        .reduce(
            || (BTreeSet::new(), BTreeSet::new()),
            |(mut a1, mut b1), (a2, b2)| {
                a1.extend(a2);
                b1.extend(b2);
                (a1, b1)
            },
        );
    sets.s_sk = s_sk;
    sets.s_sy = s_sy;
    Ok(sets)
}

/// Writes one compressed row per line as comma-separated integers.
pub fn write_rows<'a, W: Write>(
    mut out: W,
    rows: impl IntoIterator<Item = &'a CompressedRow>,
) -> std::io::Result<()> {
    for row in rows {
        writeln!(out, "{row}")?;
    }
    Ok(())
}

pub fn read_rows<R: BufRead>(input: R) -> Result<BTreeSet<CompressedRow>> {
    let mut rows = BTreeSet::new();
    for line in input.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        rows.insert(CompressedRow::parse(line)?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diophantine::signed_rowsums;

    fn crow(v: &[i8]) -> CompressedRow {
        CompressedRow::new(v.to_vec()).unwrap()
    }

    #[test]
    fn order_3_sets() {
        let rs = signed_rowsums(3).unwrap();
        let c = generate_candidates(3, &rs).unwrap();
        assert_eq!(c.s_sk.into_iter().collect::<Vec<_>>(), vec![crow(&[1])]);
        assert_eq!(c.s_sy.into_iter().collect::<Vec<_>>(), vec![crow(&[3]), crow(&[-1])]);
    }

    #[test]
    fn no_rowsums_means_no_symmetric_candidates() {
        let c = generate_candidates(3, &BTreeSet::new()).unwrap();
        assert!(c.s_sy.is_empty());
    }

    #[test]
    fn rejects_orders_not_divisible_by_3() {
        assert!(generate_candidates(5, &BTreeSet::new()).is_err());
        assert!(generate_candidates(6, &BTreeSet::new()).is_err());
    }

    #[test]
    fn members_have_expected_shape() {
        for n in [9, 15, 21] {
            let rs = signed_rowsums(n as u64).unwrap();
            let c = generate_candidates(n, &rs).unwrap();
            assert!(c.s_sk.len() <= 1 << c.d && c.s_sy.len() <= 1 << c.d);
            assert!(c.s_sk.iter().all(|r| r.is_skew_like() && r.len() == n / 3));
            for r in &c.s_sy {
                assert!(r.is_symmetric());
                assert!(rs.iter().any(|t| t.contains(r.rowsum())));
            }
        }
    }

    #[test]
    fn spill_round_trip() {
        let rs = signed_rowsums(15).unwrap();
        let c = generate_candidates(15, &rs).unwrap();
        let mut buf = Vec::new();
        write_rows(&mut buf, &c.s_sy).unwrap();
        assert_eq!(read_rows(&buf[..]).unwrap(), c.s_sy);
    }
}
