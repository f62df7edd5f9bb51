//! Uncompression of one compressed quadruple by SAT with a spectral callback.
//!
//! Only the entries with index `0..=n/2` of each row get a variable; every
//! other index is folded onto one of them through the skew or symmetric
//! relation. A true variable stands for `+1`.

pub mod callback;
pub mod dimacs;
pub mod solver;

use std::fmt;

pub use callback::PsdCallback;
pub use dimacs::{blocking_clause, export_dimacs, parse_dimacs, write_manifest, ManifestEntry};
pub use solver::{Assignment, Callback, Lit, SolveOutcome, Solver, SolverStats, Var};

use crate::error::{invalid, Error, Result};
use crate::seqcore::{compress3, CompressedQuad, CompressedRow, DefiningQuad};
use crate::spectral::paf_certificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Row {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
}

impl Row {
    pub const ALL: [Row; 4] = [Row::A, Row::B, Row::C, Row::D];
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Row::A => "a",
            Row::B => "b",
            Row::C => "c",
            Row::D => "d",
        };
        f.write_str(s)
    }
}

/// Variable layout for order `n`: row `r`, index `i <= n/2` maps to `r·(d+1) + i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarMap {
    pub n: usize,
    pub d: usize,
}

impl VarMap {
    pub fn new(n: usize) -> Self {
        VarMap { n, d: n / 2 }
    }

    pub fn num_vars(&self) -> usize {
        4 * (self.d + 1)
    }

    pub fn var(&self, row: Row, i: usize) -> Var {
        assert!(i <= self.d);
        Var((row as usize * (self.d + 1) + i) as u32)
    }

    /// Literal that is true exactly when entry `j` of `row` is `+1`.
    pub fn lit(&self, row: Row, j: usize) -> Lit {
        let (var, positive) = self.fold_index(row, j);
        var.lit(positive)
    }

    /// Maps any index `0 <= j < n` onto its variable and polarity.
    pub fn fold_index(&self, row: Row, j: usize) -> (Var, bool) {
        let j = j % self.n;
        if j <= self.d {
            (self.var(row, j), true)
        } else {
            (self.var(row, self.n - j), row != Row::A)
        }
    }

    /// Variables of `row` that are not pinned by the leading `+1`.
    pub fn free_vars(&self, row: Row) -> impl Iterator<Item = Var> + '_ {
        (1..=self.d).map(move |i| self.var(row, i))
    }

    /// Full row of signs if every variable of `row` is assigned.
    pub fn read_row(&self, row: Row, assignment: &Assignment) -> Option<Vec<i8>> {
        (0..self.n)
            .map(|j| {
                assignment
                    .lit_value(self.lit(row, j))
                    .map(|v| if v { 1 } else { -1 })
            })
            .collect()
    }

    pub fn read_model_row(&self, row: Row, model: &[bool]) -> Vec<i8> {
        (0..self.n)
            .map(|j| {
                let lit = self.lit(row, j);
                if model[lit.var().index()] == lit.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }
}

/// CNF for one uncompression problem: symmetry units, compression clauses,
/// and (optionally) parity clauses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfInstance {
    pub vars: VarMap,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub clauses: Vec<Vec<Lit>>,
    pub source: CompressedQuad,
}

impl CnfInstance {
    pub fn num_vars(&self) -> usize {
        self.vars.num_vars()
    }
}

/// Drops duplicate literals; returns `None` for tautologies.
fn tidy(mut clause: Vec<Lit>) -> Option<Vec<Lit>> {
    clause.sort_unstable();
    clause.dedup();
    if clause.windows(2).any(|w| w[0] == !w[1]) {
        None
    } else {
        Some(clause)
    }
}

fn compression_clauses(vars: &VarMap, row: Row, x: &CompressedRow, out: &mut Vec<Vec<Lit>>) {
    let m = x.len();
    for (k, &value) in x.entries().iter().enumerate() {
        let l = [vars.lit(row, k), vars.lit(row, k + m), vars.lit(row, k + 2 * m)];
        let raw: Vec<Vec<Lit>> = match value {
            3 => l.iter().map(|&x| vec![x]).collect(),
            -3 => l.iter().map(|&x| vec![!x]).collect(),
            1 => vec![
                vec![!l[0], !l[1], !l[2]],
                vec![l[0], l[1]],
                vec![l[0], l[2]],
                vec![l[1], l[2]],
            ],
            -1 => vec![
                vec![l[0], l[1], l[2]],
                vec![!l[0], !l[1]],
                vec![!l[0], !l[2]],
                vec![!l[1], !l[2]],
            ],
            other => unreachable!("compressed entry {other}"),
        };
        out.extend(raw.into_iter().filter_map(tidy));
    }
}

/// Clauses forcing `cq` to be the 3-compression of the defining rows.
pub fn encode_compression(cq: &CompressedQuad) -> Result<Vec<Vec<Lit>>> {
    if cq.a.at(0) != 1 {
        return Err(Error::Infeasible(format!(
            "first compressed skew entry is {}, but a_0 + a_m + a_2m = 1",
            cq.a.at(0)
        )));
    }
    let n = 3 * cq.len();
    let vars = VarMap::new(n);
    let mut out = Vec::new();
    for (row, x) in Row::ALL.into_iter().zip(cq.rows()) {
        compression_clauses(&vars, row, x, &mut out);
    }
    Ok(out)
}

/// Every clause over `lits` that rules out one assignment whose number of
/// true literals has parity `forbidden_parity`.
fn parity_clauses(lits: &[Lit], forbidden_parity: u32) -> Vec<Vec<Lit>> {
    (0u32..1 << lits.len())
        .filter(|bits| bits.count_ones() % 2 == forbidden_parity)
        .map(|bits| {
            lits.iter()
                .enumerate()
                .map(|(i, &l)| if bits >> i & 1 == 1 { !l } else { l })
                .collect()
        })
        .collect()
}

/// Product-theorem clauses, assuming `b_0 = c_0 = d_0 = 1`.
///
/// For `1 <= k < n/2`, `k != m`: `a_k b_k c_k d_k a_{2k} = -1`, i.e. an even
/// number of those five entries are `+1` (16 clauses). For `k = m`, where
/// `a_{2m} = -a_m`: `b_m c_m d_m = +1`, i.e. an odd number are `+1` (4 clauses).
pub fn encode_parity(n: usize) -> Result<Vec<Vec<Lit>>> {
    if !n.is_multiple_of(3) || n.is_multiple_of(2) {
        return invalid(format!("parity clauses need odd n divisible by 3, got {n}"));
    }
    let m = n / 3;
    let vars = VarMap::new(n);
    let mut out = Vec::new();
    for k in 1..=n / 2 {
        if k == m {
            let lits = [vars.lit(Row::B, k), vars.lit(Row::C, k), vars.lit(Row::D, k)];
            out.extend(parity_clauses(&lits, 0));
        } else {
            let lits = [
                vars.lit(Row::A, k),
                vars.lit(Row::A, 2 * k),
                vars.lit(Row::B, k),
                vars.lit(Row::C, k),
                vars.lit(Row::D, k),
            ];
            out.extend(parity_clauses(&lits, 1));
        }
    }
    Ok(out)
}

/// Units fixing `a_0 = b_0 = c_0 = d_0 = +1`.
pub fn symmetry_units(vars: &VarMap) -> Vec<Vec<Lit>> {
    Row::ALL
        .into_iter()
        .map(|r| vec![vars.var(r, 0).lit(true)])
        .collect()
}

pub fn build_instance(cq: &CompressedQuad, with_parity: bool) -> Result<CnfInstance> {
    let m = cq.len();
    let n = 3 * m;
    let vars = VarMap::new(n);
    let mut clauses = symmetry_units(&vars);
    clauses.extend(encode_compression(cq)?);
    if with_parity {
        clauses.extend(encode_parity(n)?);
    }
    Ok(CnfInstance {
        vars,
        n,
        m,
        d: n / 2,
        clauses,
        source: cq.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub seed: u64,
    pub partial_psd: bool,
    pub max_conflicts: Option<u64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            partial_psd: true,
            max_conflicts: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveRun {
    pub solutions: Vec<DefiningQuad>,
    pub stats: SolverStats,
}

pub fn solve_all(instance: &CnfInstance) -> Result<Vec<DefiningQuad>> {
    solve_all_with(instance, &SolveOptions::default()).map(|r| r.solutions)
}

/// Enumerates every quad compressing to `instance.source` whose four rows
/// satisfy the exact autocorrelation identity.
pub fn solve_all_with(instance: &CnfInstance, opts: &SolveOptions) -> Result<SolveRun> {
    let mut solver = Solver::with_seed(instance.num_vars(), opts.seed);
    solver.set_conflict_budget(opts.max_conflicts);
    for clause in &instance.clauses {
        if !solver.add_clause(clause) {
            break;
        }
    }
    let mut callback = PsdCallback::new(instance.vars);
    callback.partial_psd = opts.partial_psd;
    let outcome = solver.solve(&mut callback);
    let solutions = callback.into_solutions();
    match outcome {
        SolveOutcome::Unsat => {}
        SolveOutcome::Unknown => {
            return Err(Error::ResourceLimit {
                limit: opts.max_conflicts.unwrap_or(0),
                partial: solutions,
            })
        }
        SolveOutcome::Sat(_) => {
            return Err(Error::Internal(
                "solver stopped on a model the callback did not block".into(),
            ))
        }
    }
    for q in &solutions {
        if !paf_certificate(q) {
            return Err(Error::Internal(format!("recorded quad fails certificate:\n{q}")));
        }
        let rows = q.rows();
        for (x, want) in rows.iter().zip(instance.source.rows()) {
            if &compress3(x)? != want {
                return Err(Error::Internal(format!(
                    "recorded quad does not compress to {}",
                    instance.source
                )));
            }
        }
    }
    Ok(SolveRun {
        solutions,
        stats: solver.stats(),
    })
}
