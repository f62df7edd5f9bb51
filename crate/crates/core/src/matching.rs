//! Compressed quadruples `(A', B', C', D')` whose spectra sum to `4n`.
//!
//! Pairs `(A', B')` and `(C', D')` are keyed by their autocorrelation sums,
//! sorted, and joined: a quadruple matches exactly when the `(C', D')` key is
//! the negation of the `(A', B')` key and the rowsums account for `4n`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::candidates::CandidateSets;
use crate::error::{invalid, Result};
use crate::filters::Filters;
use crate::seqcore::{CompressedQuad, CompressedRow};
use crate::spectral::{paf, paf_sums_vanish, Dft, PSD_TOLERANCE};

/// `PAF_X(k) + PAF_Y(k)` for `k = 1..=⌊m/2⌋`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PafKey(pub Vec<i32>);

pub fn paf_key(x: &CompressedRow, y: &CompressedRow) -> Result<PafKey> {
    if x.len() != y.len() {
        return invalid(format!(
            "rows of length {} and {} cannot be paired",
            x.len(),
            y.len()
        ));
    }
    Ok(PafKey(
        (1..=x.len() / 2).map(|k| paf(x, k) + paf(y, k)).collect(),
    ))
}

/// Sort key of one side of the join. `rowsum_part` carries the `k = 0`
/// condition: `r_B²` on the left and `4n - 1 - r_C² - r_D²` on the right.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct JoinKey {
    paf: PafKey,
    rowsum_part: i32,
}

/// True when the quadruple satisfies the compressed identity exactly.
pub fn is_compressed_match(q: &CompressedQuad, n: usize) -> bool {
    let squares: i32 = q.rows().iter().map(|r| r.rowsum().pow(2)).sum();
    squares == 4 * n as i32
        && paf_sums_vanish(&[q.a.entries(), q.b.entries(), q.c.entries(), q.d.entries()])
}

pub fn match_quadruples(cands: &CandidateSets, n: usize) -> BTreeSet<CompressedQuad> {
    match_quadruples_with(cands, n, &Filters::ALL)
}

pub fn match_quadruples_with(
    cands: &CandidateSets,
    n: usize,
    filters: &Filters,
) -> BTreeSet<CompressedQuad> {
    let sk: Vec<&CompressedRow> = cands.s_sk.iter().collect();
    let sy: Vec<&CompressedRow> = cands.s_sy.iter().collect();
    if sk.is_empty() || sy.is_empty() {
        return BTreeSet::new();
    }
    let m = sk[0].len();
    let dft = Dft::new(m);
    let psd = |r: &CompressedRow| dft.psd(r.entries());
    let sk_psd: Vec<Vec<f64>> = sk.iter().map(|r| psd(r)).collect();
    let sy_psd: Vec<Vec<f64>> = sy.iter().map(|r| psd(r)).collect();
    let bound = 4.0 * n as f64 + PSD_TOLERANCE;
    let pair_ok = |p: &[f64], q: &[f64]| {
        !filters.pair_psd || p.iter().zip(q).all(|(x, y)| x + y <= bound)
    };
    let target = 4 * n as i32 - 1;

    // (key, index into sk, index into sy)
    let mut left: Vec<(JoinKey, usize, usize)> = (0..sk.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let sy = &sy;
            let sy_psd = &sy_psd;
            let sk = &sk;
            let sk_psd = &sk_psd;
            (0..sy.len()).filter_map(move |j| {
                if !pair_ok(&sk_psd[i], &sy_psd[j]) {
                    return None;
                }
                let key = paf_key(sk[i], sy[j]).expect("equal lengths");
                let rowsum_part = sy[j].rowsum().pow(2);
                Some((JoinKey { paf: key, rowsum_part }, i, j))
            })
        })
        .collect();

    // (key, c, d) with c <= d
    let mut right: Vec<(JoinKey, usize, usize)> = (0..sy.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let sy = &sy;
            let sy_psd = &sy_psd;
            (i..sy.len()).filter_map(move |j| {
                if !pair_ok(&sy_psd[i], &sy_psd[j]) {
                    return None;
                }
                let PafKey(mut key) = paf_key(sy[i], sy[j]).expect("equal lengths");
                key.iter_mut().for_each(|v| *v = -*v);
                let rowsum_part = target - sy[i].rowsum().pow(2) - sy[j].rowsum().pow(2);
                Some((JoinKey { paf: PafKey(key), rowsum_part }, i, j))
            })
        })
        .collect();

    left.par_sort_unstable();
    right.par_sort_unstable();

    let mut out = BTreeSet::new();
    let (mut li, mut ri) = (0, 0);
    while li < left.len() && ri < right.len() {
        match left[li].0.cmp(&right[ri].0) {
            Ordering::Less => li += 1,
            Ordering::Greater => ri += 1,
            Ordering::Equal => {
                let key = &left[li].0;
                let l_end = li + left[li..].iter().take_while(|e| &e.0 == key).count();
                let r_end = ri + right[ri..].iter().take_while(|e| &e.0 == key).count();
                for (_, a, b) in &left[li..l_end] {
                    for (_, c, d) in &right[ri..r_end] {
                        let orders: &[(usize, usize)] =
                            if c == d { &[(*c, *d)] } else { &[(*c, *d), (*d, *c)] };
                        for &(c, d) in orders {
                            let q = CompressedQuad {
                                a: sk[*a].clone(),
                                b: sy[*b].clone(),
                                c: sy[c].clone(),
                                d: sy[d].clone(),
                            };
                            if is_compressed_match(&q, n) {
                                out.insert(q);
                            }
                        }
                    }
                }
                li = l_end;
                ri = r_end;
            }
        }
    }
    out
}

/// Writes one quadruple per line: four comma-separated rows joined by `;`.
pub fn format_quadruples<'a>(quads: impl IntoIterator<Item = &'a CompressedQuad>) -> String {
    let mut out = String::new();
    for q in quads {
        out.push_str(&format!("{};{};{};{}\n", q.a, q.b, q.c, q.d));
    }
    out
}

pub fn parse_quadruples(text: &str) -> Result<Vec<CompressedQuad>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|line| {
            let rows = line
                .split(';')
                .map(CompressedRow::parse)
                .collect::<Result<Vec<_>>>()?;
            let [a, b, c, d]: [CompressedRow; 4] = rows
                .try_into()
                .map_err(|_| crate::Error::InvalidInput(format!("expected 4 rows in {line:?}")))?;
            CompressedQuad::new(a, b, c, d)
        })
        .collect()
}
