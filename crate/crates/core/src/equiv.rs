//! Equivalence of good matrices and canonical representatives.
//!
//! The group is generated by reordering `B, C, D`, negating any of them, and
//! reindexing every row by `i ↦ u·i mod n` for a unit `u`. The canonical
//! representative of an orbit is its minimum under the sign order of
//! [`crate::seqcore`], comparing `A‖B‖C‖D`.

use std::collections::BTreeSet;

use crate::error::{invalid, Result};
use crate::seqcore::{
    CompressedQuad, CompressedRow, DefiningQuad, PmSequence, RowQuad, SkewRow, SymRow,
};

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Units of `Z_n`, in increasing order. `Z_1` has the single unit `1`.
pub fn units(n: usize) -> Vec<usize> {
    if n == 1 {
        return vec![1];
    }
    (1..n).filter(|&u| gcd(u, n) == 1).collect()
}

fn sort3<T: Ord>(rows: [T; 3]) -> [T; 3] {
    let mut rows = rows;
    rows.sort();
    rows
}

/// Negates each of `B, C, D` that starts with `-1`, then sorts them.
pub fn normalize_signs_and_order(quad: &RowQuad) -> Result<DefiningQuad> {
    let n = quad.a.len();
    if n.is_multiple_of(2) || quad.rows().iter().any(|r| r.len() != n) {
        return invalid("rows must share one odd length");
    }
    let a = SkewRow::from_seq(quad.a.clone())?;
    let fix = |r: &PmSequence| -> Result<SymRow> {
        if r.entries()[0] < 0 {
            SymRow::from_seq(r.negated())
        } else {
            SymRow::from_seq(r.clone())
        }
    };
    let [b, c, d] = sort3([fix(&quad.b)?, fix(&quad.c)?, fix(&quad.d)?]);
    Ok(DefiningQuad { a, b, c, d })
}

/// Sorts `B, C, D` of an already sign-normalized quad.
pub fn sort_symmetric(quad: DefiningQuad) -> DefiningQuad {
    let [b, c, d] = sort3([quad.b, quad.c, quad.d]);
    DefiningQuad { a: quad.a, b, c, d }
}

fn reindex(x: &[i8], u: usize) -> Vec<i8> {
    let n = x.len();
    (0..n).map(|i| x[(u * i) % n]).collect()
}

/// Replaces every row `x` by `y_i = x_{u·i mod n}`.
pub fn apply_automorphism(quad: &DefiningQuad, u: usize) -> Result<DefiningQuad> {
    let n = quad.order();
    if gcd(u % n, n) != 1 && n != 1 {
        return invalid(format!("{u} is not a unit modulo {n}"));
    }
    let seq = |x: &[i8]| PmSequence::new(reindex(x, u)).expect("reindexing keeps signs");
    Ok(DefiningQuad {
        a: SkewRow::from_seq(seq(quad.a.entries()))?,
        b: SymRow::from_seq(seq(quad.b.entries()))?,
        c: SymRow::from_seq(seq(quad.c.entries()))?,
        d: SymRow::from_seq(seq(quad.d.entries()))?,
    })
}

/// Orbit minimum of a quad.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalQuad(DefiningQuad);

impl CanonicalQuad {
    pub fn quad(&self) -> &DefiningQuad {
        &self.0
    }

    pub fn into_quad(self) -> DefiningQuad {
        self.0
    }
}

pub fn canonical_form(quad: &DefiningQuad) -> CanonicalQuad {
    let best = units(quad.order())
        .into_iter()
        .map(|u| sort_symmetric(apply_automorphism(quad, u).expect("u is a unit")))
        .min()
        .expect("at least one unit");
    CanonicalQuad(best)
}

/// Orbit minimum under reordering `B', C', D'` and `j ↦ u·j mod m` for all
/// units `u` of `Z_m`.
pub fn canonical_compressed(cq: &CompressedQuad) -> CompressedQuad {
    let m = cq.len();
    units(m)
        .into_iter()
        .map(|u| {
            let p = |r: &CompressedRow| r.permuted(u);
            let [b, c, d] = sort3([p(&cq.b), p(&cq.c), p(&cq.d)]);
            CompressedQuad { a: p(&cq.a), b, c, d }
        })
        .min()
        .expect("at least one unit")
}

/// One canonical representative per class, sorted by the global order.
pub fn dedup<T, K, F>(items: impl IntoIterator<Item = T>, canonicalize: F) -> Vec<K>
where
    K: Ord,
    F: Fn(&T) -> K,
{
    items
        .into_iter()
        .map(|item| canonicalize(&item))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Canonical forms of `quads` with duplicates removed, sorted.
pub fn canonical_set<'a>(quads: impl IntoIterator<Item = &'a DefiningQuad>) -> Vec<CanonicalQuad> {
    quads
        .into_iter()
        .map(canonical_form)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}
