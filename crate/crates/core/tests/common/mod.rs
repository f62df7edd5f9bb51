//! Property checks shared by the property suite and the acceptance runner.
//! Each runs a proptest runner for the given number of cases and reports the
//! minimal failing input as an error string.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::sync::OnceLock;

use goodmat::equiv::{
    apply_automorphism, canonical_compressed, canonical_form,
    normalize_signs_and_order, units, CanonicalQuad,
};
use goodmat::pipeline::{merge_reports, prepare, solve_prepared, Prepared, SearchConfig, Shard};
use goodmat::satsearch::{Assignment, Callback, PsdCallback, Row, VarMap};
use goodmat::seqcore::{compress3, CompressedQuad, DefiningQuad, RowQuad};
use goodmat::spectral::{paf, psd_profile, Dft};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

pub const CASES: u32 = 1000;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn finish<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn signs(bits: Vec<bool>) -> Vec<i8> {
    bits.into_iter().map(|b| if b { 1 } else { -1 }).collect()
}

fn pm_row(min: usize, max: usize) -> impl Strategy<Value = Vec<i8>> {
    (min..=max).prop_flat_map(|n| prop::collection::vec(any::<bool>(), n).prop_map(signs))
}

/// Random defining quad (not necessarily good) of odd order up to 25.
fn any_quad() -> impl Strategy<Value = DefiningQuad> {
    (0usize..=12).prop_flat_map(|d| {
        let n = 2 * d + 1;
        prop::collection::vec(prop::collection::vec(any::<bool>(), d), 4).prop_map(move |h| {
            let h: Vec<Vec<i8>> = h.into_iter().map(signs).collect();
            DefiningQuad::from_halves(n, [&h[0], &h[1], &h[2], &h[3]]).unwrap()
        })
    })
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-6 * (1.0 + a.abs().max(b.abs()))
}

/// Sum of the PSD over all frequencies is `n·Σx_j² = n²`, and each PSD value
/// is the DFT of the autocorrelation.
pub fn parseval(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&pm_row(1, 48), |x| {
        let n = x.len();
        let full = psd_profile(&x).full(n);
        let total: f64 = full.iter().sum();
        prop_assert!(close(total, (n * n) as f64), "Σ PSD = {total}, n = {n}");
        for (k, &p) in full.iter().enumerate() {
            let wk: f64 = (0..n)
                .map(|j| f64::from(paf(&x, j)) * (2.0 * PI * (j * k) as f64 / n as f64).cos())
                .sum();
            prop_assert!(close(p, wk), "k = {k}: PSD {p} vs DFT of PAF {wk}");
        }
        Ok(())
    }))
}

/// `PSD_X(3k) = PSD_{X'}(k)` and `PAF_{X'}(k) = Σ_t PAF_X(k + t·m)` for the
/// 3-compression `X'` of a row of length `3m`.
pub fn compression_commutes(cases: u32) -> Result<(), String> {
    let rows = (1usize..=16)
        .prop_flat_map(|m| prop::collection::vec(any::<bool>(), 3 * m).prop_map(signs));
    finish(runner(cases).run(&rows, |x| {
        let n = x.len();
        let m = n / 3;
        let c = compress3(&x).unwrap();
        let big = Dft::new(n);
        let small = Dft::new(m);
        for k in 0..m {
            let (p, q) = (big.psd_at(&x, 3 * k), small.psd_at(c.entries(), k));
            prop_assert!(close(p, q), "k = {k}: {p} vs {q}");
            let folded: i32 = (0..3).map(|t| paf(&x, k + t * m)).sum();
            prop_assert_eq!(paf(&c, k), folded);
        }
        Ok(())
    }))
}

/// Reordering `B, C, D`, negating any of them and reindexing by a unit all
/// leave the canonical form unchanged, and canonicalizing twice is a no-op.
pub fn orbit_invariance(cases: u32) -> Result<(), String> {
    let input = (any_quad(), any::<prop::sample::Index>(), 0usize..6, any::<[bool; 3]>());
    finish(runner(cases).run(&input, |(q, unit, perm, neg)| {
        let n = q.order();
        let us = units(n);
        let u = us[unit.index(us.len())];
        let moved = apply_automorphism(&q, u).unwrap().to_row_quad();
        let mut sym = [moved.b, moved.c, moved.d];
        for (row, flip) in sym.iter_mut().zip(neg) {
            if flip {
                *row = row.negated();
            }
        }
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let p = PERMS[perm];
        let image = RowQuad {
            a: moved.a,
            b: sym[p[0]].clone(),
            c: sym[p[1]].clone(),
            d: sym[p[2]].clone(),
        };
        let canon = canonical_form(&q);
        let image_canon = canonical_form(&normalize_signs_and_order(&image).unwrap());
        prop_assert_eq!(&image_canon, &canon);
        prop_assert_eq!(canonical_form(canon.quad()), canon.clone());
        prop_assert!(canon.quad() <= &q);

        if n % 3 == 0 {
            let cq = q.compress().unwrap();
            let fix = |r: &goodmat::seqcore::PmSequence| {
                let s = r.entries()[0];
                compress3(&r.entries().iter().map(|&v| v * s).collect::<Vec<_>>()).unwrap()
            };
            let cimage =
                CompressedQuad::new(compress3(&image.a).unwrap(), fix(&image.b), fix(&image.c), fix(&image.d))
                    .unwrap();
            let cc = canonical_compressed(&cq);
            prop_assert_eq!(canonical_compressed(&cimage), cc.clone());
            prop_assert_eq!(canonical_compressed(&cc), cc);
        }
        Ok(())
    }))
}

fn prepared(n: usize) -> &'static Prepared {
    static P9: OnceLock<Prepared> = OnceLock::new();
    static P15: OnceLock<Prepared> = OnceLock::new();
    let cell = match n {
        9 => &P9,
        15 => &P15,
        _ => panic!("no cached search for {n}"),
    };
    cell.get_or_init(|| prepare(n, &SearchConfig::default()).unwrap())
}

fn baseline(n: usize) -> &'static Vec<CanonicalQuad> {
    static B9: OnceLock<Vec<CanonicalQuad>> = OnceLock::new();
    static B15: OnceLock<Vec<CanonicalQuad>> = OnceLock::new();
    let cell = match n {
        9 => &B9,
        15 => &B15,
        _ => panic!("no cached search for {n}"),
    };
    cell.get_or_init(|| solve_prepared(prepared(n), &SearchConfig::default()).unwrap().quads)
}

/// Solving the shards `i/N` separately and merging gives the unsharded result.
pub fn sharded_union(cases: u32) -> Result<(), String> {
    let input = (prop::sample::select(vec![9usize, 15]), 1usize..=16);
    finish(runner(cases).run(&input, |(n, total)| {
        let p = prepared(n);
        let mut reports = Vec::new();
        let mut quads = Vec::new();
        let mut owned = 0;
        for index in 0..total {
            let config = SearchConfig {
                shard: Shard::new(index, total).unwrap(),
                ..SearchConfig::default()
            };
            let part = solve_prepared(p, &config).unwrap();
            owned += part.report.counts.shard_instances;
            quads.extend(part.quads);
            reports.push(part.report);
        }
        prop_assert_eq!(owned, p.instances.len());
        let (report, merged) = merge_reports(&reports, &quads).unwrap();
        prop_assert!(report.exhaustive);
        prop_assert_eq!(&merged, baseline(n));
        Ok(())
    }))
}

/// The set of inequivalent quads does not depend on the solver seed.
pub fn seed_independence(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&any::<u64>(), |seed| {
        let config = SearchConfig {
            seed,
            ..SearchConfig::default()
        };
        let got = solve_prepared(prepared(15), &config).unwrap().quads;
        prop_assert_eq!(&got, baseline(15));
        Ok(())
    }))
}

/// Every good quad of orders 9, 15 and 21, including all images under
/// reordering and automorphisms, as raw quads.
fn all_good(n: usize) -> &'static Vec<DefiningQuad> {
    static CACHE: OnceLock<Vec<(usize, Vec<DefiningQuad>)>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        [9usize, 15, 21]
            .into_iter()
            .map(|n| {
                let canon = goodmat::pipeline::enumerate_good_matrices(n).unwrap();
                let mut all = BTreeSet::new();
                for c in &canon {
                    for u in units(n) {
                        let q = apply_automorphism(c.quad(), u).unwrap();
                        let [b, c, d] = [q.b.clone(), q.c.clone(), q.d.clone()];
                        for [x, y, z] in [
                            [&b, &c, &d],
                            [&b, &d, &c],
                            [&c, &b, &d],
                            [&c, &d, &b],
                            [&d, &b, &c],
                            [&d, &c, &b],
                        ] {
                            all.insert(DefiningQuad::new(q.a.clone(), x.clone(), y.clone(), z.clone()).unwrap());
                        }
                    }
                }
                (n, all.into_iter().collect())
            })
            .collect()
    });
    &cache.iter().find(|(k, _)| *k == n).expect("cached order").1
}

fn model_value(vars: &VarMap, q: &DefiningQuad, var: goodmat::satsearch::Var) -> bool {
    let rows = q.rows();
    let row = var.index() / (vars.d + 1);
    let i = var.index() % (vars.d + 1);
    rows[row][i] > 0
}

/// Clauses from the PSD callback are falsified by the current assignment,
/// mention only fully assigned rows, and never exclude a good quad that has
/// not been recorded.
pub fn callback_soundness(cases: u32) -> Result<(), String> {
    // Per row: 0 = copy the chosen good quad, 1 = random, 2 = random with holes.
    let input = (
        prop::sample::select(vec![9usize, 15, 21]),
        any::<prop::sample::Index>(),
        prop::collection::vec((0u8..3, prop::collection::vec(0u8..3, 11)), 4),
        any::<bool>(),
    );
    finish(runner(cases).run(&input, |(n, pick, modes, partial_psd)| {
        let vars = VarMap::new(n);
        let good = all_good(n);
        let base = &good[pick.index(good.len())];
        let mut values = vec![None; vars.num_vars()];
        let mut full_rows = BTreeSet::new();
        for (row, (mode, cells)) in Row::ALL.into_iter().zip(&modes) {
            values[vars.var(row, 0).index()] = Some(true);
            let mut complete = true;
            for i in 1..=vars.d {
                let cell = cells[i - 1];
                values[vars.var(row, i).index()] = match mode {
                    0 => Some(base.rows()[row as usize][i] > 0),
                    _ if *mode == 2 && cell == 0 => {
                        complete = false;
                        None
                    }
                    _ => Some(cell == 1),
                };
            }
            if complete {
                full_rows.insert(row);
            }
        }
        let assignment = Assignment::from_values(&values);
        let mut cb = PsdCallback::new(vars);
        cb.partial_psd = partial_psd;
        let Some(clause) = cb.check(&assignment) else {
            prop_assert!(full_rows.len() < 4, "complete assignment must always be blocked");
            return Ok(());
        };
        prop_assert!(!clause.is_empty());
        for &lit in &clause {
            prop_assert_eq!(assignment.lit_value(lit), Some(false));
            let row = Row::ALL[lit.var().index() / (vars.d + 1)];
            prop_assert!(full_rows.contains(&row));
            prop_assert!(lit.var().index() % (vars.d + 1) != 0, "pinned variable in clause");
        }
        for q in good {
            let satisfied = clause
                .iter()
                .any(|l| model_value(&vars, q, l.var()) == l.is_positive());
            if !satisfied {
                prop_assert!(
                    cb.solutions().contains(q),
                    "clause {:?} excludes an unrecorded good quad\n{}",
                    clause,
                    q
                );
            }
        }
        Ok(())
    }))
}

pub type Property = (&'static str, fn(u32) -> Result<(), String>);

pub const PROPERTIES: [Property; 6] = [
    ("Parseval and Wiener-Khinchin", parseval),
    ("compression commutes with the DFT", compression_commutes),
    ("canonical form: orbit invariance and idempotence", orbit_invariance),
    ("sharded union equals the whole search", sharded_union),
    ("seed independence", seed_independence),
    ("callback clause soundness", callback_soundness),
];
