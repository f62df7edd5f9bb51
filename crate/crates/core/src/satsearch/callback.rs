use super::solver::{Assignment, Callback, Lit};
use super::{Row, VarMap};
use crate::seqcore::{make_skew, make_symmetric, DefiningQuad};
use crate::spectral::{paf_certificate, Dft, PSD_TOLERANCE};

/// Spectral theory for the solver.
///
/// Looks at the rows whose variables are all assigned, most energetic first,
/// and blocks the first prefix of one, two or three of them whose summed PSD
/// exceeds `4n` at some frequency. Once all four rows are assigned the quad is
/// recorded if it passes the exact certificate and is blocked either way, so
/// the search runs until every candidate has been seen.
pub struct PsdCallback {
    vars: VarMap,
    dft: Dft,
    bound: f64,
    /// When off, only complete assignments are examined.
    pub partial_psd: bool,
    solutions: Vec<DefiningQuad>,
    /// Every clause handed to the solver, in order. Kept only when
    /// `record_clauses` is set.
    pub learned: Vec<Vec<Lit>>,
    pub record_clauses: bool,
}

struct AssignedRow {
    row: Row,
    entries: Vec<i8>,
    psd: Vec<f64>,
    peak: f64,
}

impl PsdCallback {
    pub fn new(vars: VarMap) -> Self {
        PsdCallback {
            vars,
            dft: Dft::new(vars.n),
            bound: 4.0 * vars.n as f64 + PSD_TOLERANCE,
            partial_psd: true,
            solutions: Vec::new(),
            learned: Vec::new(),
            record_clauses: false,
        }
    }

    pub fn solutions(&self) -> &[DefiningQuad] {
        &self.solutions
    }

    pub fn into_solutions(self) -> Vec<DefiningQuad> {
        self.solutions
    }

    /// `¬x^cur` for every free variable of `rows`.
    fn block(&self, rows: &[&AssignedRow], assignment: &Assignment) -> Vec<Lit> {
        rows.iter()
            .flat_map(|r| self.vars.free_vars(r.row))
            .map(|v| !assignment.current_lit(v).expect("row is fully assigned"))
            .collect()
    }

    fn examine(&mut self, assignment: &Assignment) -> Option<Vec<Lit>> {
        let mut assigned: Vec<AssignedRow> = Row::ALL
            .into_iter()
            .filter_map(|row| {
                let entries = self.vars.read_row(row, assignment)?;
                let psd = if self.partial_psd {
                    self.dft.psd(&entries)
                } else {
                    Vec::new()
                };
                let peak = psd.iter().copied().fold(0.0, f64::max);
                Some(AssignedRow {
                    row,
                    entries,
                    psd,
                    peak,
                })
            })
            .collect();
        if assigned.is_empty() {
            return None;
        }
        if self.partial_psd {
            assigned.sort_by(|x, y| y.peak.total_cmp(&x.peak));
            let mut sums = vec![0.0; self.dft.bins()];
            for (taken, r) in assigned.iter().enumerate().take(3) {
                sums.iter_mut().zip(&r.psd).for_each(|(s, p)| *s += p);
                if sums.iter().any(|&s| s > self.bound) {
                    let prefix: Vec<&AssignedRow> = assigned[..=taken].iter().collect();
                    return Some(self.block(&prefix, assignment));
                }
            }
        }
        if assigned.len() < 4 {
            return None;
        }
        assigned.sort_by_key(|r| r.row);
        let half = |r: &AssignedRow| r.entries[1..=self.vars.d].to_vec();
        let n = self.vars.n;
        let quad = DefiningQuad::new(
            make_skew(&half(&assigned[0]), n).expect("valid skew half"),
            make_symmetric(&half(&assigned[1]), n).expect("valid half"),
            make_symmetric(&half(&assigned[2]), n).expect("valid half"),
            make_symmetric(&half(&assigned[3]), n).expect("valid half"),
        )
        .expect("equal lengths");
        // a_0..d_0 are pinned by units, so the rows built from halves are the
        // assigned rows.
        debug_assert!(assigned.iter().zip(quad.rows()).all(|(r, q)| r.entries == q));
        if paf_certificate(&quad) {
            self.solutions.push(quad);
        }
        let all: Vec<&AssignedRow> = assigned.iter().collect();
        Some(self.block(&all, assignment))
    }
}

impl Callback for PsdCallback {
    fn check(&mut self, assignment: &Assignment) -> Option<Vec<Lit>> {
        let clause = self.examine(assignment);
        if self.record_clauses {
            if let Some(c) = &clause {
                self.learned.push(c.clone());
            }
        }
        clause
    }
}
