//! A small conflict-driven clause-learning solver with a user callback.
//!
//! Two watched literals, first-UIP learning, VSIDS-style activities, phase
//! saving and Luby restarts. After every propagation fixpoint without a
//! conflict the [`Callback`] sees the partial assignment and may hand back a
//! clause that is false under it; the solver treats that clause as a conflict,
//! learns from it, and keeps going.

use std::fmt;
use std::ops::Not;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn lit(self, positive: bool) -> Lit {
        Lit::new(self, positive)
    }
}

/// `2·var + (1 if negated)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Self {
        Lit(var.0 << 1 | u32::from(!positive))
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    fn code(self) -> usize {
        self.0 as usize
    }

    /// Signed 1-based DIMACS form.
    pub fn to_dimacs(self) -> i32 {
        let v = self.var().0 as i32 + 1;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    pub fn from_dimacs(v: i32) -> Option<Self> {
        if v == 0 {
            return None;
        }
        Some(Lit::new(Var(v.unsigned_abs() - 1), v > 0))
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Three-valued view of the current assignment.
#[derive(Clone, Debug)]
pub struct Assignment {
    values: Vec<i8>,
}

impl Assignment {
    /// Builds an assignment from per-variable values, `None` meaning unassigned.
    pub fn from_values(values: &[Option<bool>]) -> Self {
        Assignment {
            values: values
                .iter()
                .map(|v| match v {
                    None => 0,
                    Some(true) => 1,
                    Some(false) => -1,
                })
                .collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, var: Var) -> Option<bool> {
        match self.values[var.index()] {
            0 => None,
            v => Some(v > 0),
        }
    }

    pub fn lit_value(&self, lit: Lit) -> Option<bool> {
        self.value(lit.var()).map(|v| v == lit.is_positive())
    }

    /// The literal of `var` that is currently true, if assigned.
    pub fn current_lit(&self, var: Var) -> Option<Lit> {
        self.value(var).map(|v| var.lit(v))
    }

    pub fn is_complete(&self) -> bool {
        self.values.iter().all(|&v| v != 0)
    }
}

/// Hook run at every conflict-free propagation fixpoint.
pub trait Callback {
    /// Returns a clause whose literals are all false under `assignment`, or
    /// `None` if the assignment is acceptable so far.
    fn check(&mut self, assignment: &Assignment) -> Option<Vec<Lit>>;
}

/// A callback that never objects; turns [`Solver`] into a plain SAT solver.
pub struct NoCallback;

impl Callback for NoCallback {
    fn check(&mut self, _: &Assignment) -> Option<Vec<Lit>> {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// A total assignment accepted by the callback; indexed by variable.
    Sat(Vec<bool>),
    Unsat,
    /// The conflict budget ran out.
    Unknown,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub restarts: u64,
    pub callback_clauses: u64,
}

struct Clause {
    lits: Vec<Lit>,
}

const NO_REASON: usize = usize::MAX;

/// Watch list entry. `blocker` is some other literal of the clause; when it
/// is true the clause is skipped without being loaded.
#[derive(Clone, Copy)]
struct Watcher {
    clause: usize,
    blocker: Lit,
}

pub struct Solver {
    clauses: Vec<Clause>,
    watches: Vec<Vec<Watcher>>,
    assign: Assignment,
    level: Vec<u32>,
    reason: Vec<usize>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    phase: Vec<bool>,
    seen: Vec<bool>,
    unsat: bool,
    conflict_budget: Option<u64>,
    stats: SolverStats,
}

const VAR_DECAY: f64 = 0.95;
const RESTART_UNIT: u64 = 64;

fn luby(mut i: u64) -> u64 {
    // 1, 1, 2, 1, 1, 2, 4, ...
    let mut size = 1;
    let mut seq = 0;
    while size < i + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != i {
        size = (size - 1) >> 1;
        seq -= 1;
        i %= size;
    }
    1 << seq
}

impl Solver {
    pub fn new(num_vars: usize) -> Self {
        Self::with_seed(num_vars, 0)
    }

    /// The seed perturbs initial activities and phases only.
    pub fn with_seed(num_vars: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Solver {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            assign: Assignment {
                values: vec![0; num_vars],
            },
            level: vec![0; num_vars],
            reason: vec![NO_REASON; num_vars],
            trail: Vec::with_capacity(num_vars),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: (0..num_vars).map(|_| rng.gen::<f64>() * 1e-3).collect(),
            var_inc: 1.0,
            phase: (0..num_vars).map(|_| rng.gen()).collect(),
            seen: vec![false; num_vars],
            unsat: false,
            conflict_budget: None,
            stats: SolverStats::default(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.assign.num_vars()
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    /// Stop with [`SolveOutcome::Unknown`] after this many conflicts in total.
    pub fn set_conflict_budget(&mut self, budget: Option<u64>) {
        self.conflict_budget = budget;
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn lit_value(&self, lit: Lit) -> Option<bool> {
        self.assign.lit_value(lit)
    }

    fn enqueue(&mut self, lit: Lit, reason: usize) {
        let v = lit.var().index();
        debug_assert_eq!(self.assign.values[v], 0);
        self.assign.values[v] = if lit.is_positive() { 1 } else { -1 };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(lit);
    }

    /// Adds a clause at decision level 0. Returns `false` once the formula is
    /// known to be unsatisfiable.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        assert_eq!(self.decision_level(), 0, "clauses are added between solves");
        if self.unsat {
            return false;
        }
        let mut lits: Vec<Lit> = lits.to_vec();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] == !w[1]) {
            return true;
        }
        if lits.iter().any(|&l| self.lit_value(l) == Some(true)) {
            return true;
        }
        lits.retain(|&l| self.lit_value(l).is_none());
        match lits.len() {
            0 => {
                self.unsat = true;
                false
            }
            1 => {
                self.enqueue(lits[0], NO_REASON);
                if self.propagate().is_some() {
                    self.unsat = true;
                }
                !self.unsat
            }
            _ => {
                self.attach(lits);
                true
            }
        }
    }

    fn attach(&mut self, lits: Vec<Lit>) -> usize {
        let idx = self.clauses.len();
        self.watches[(!lits[0]).code()].push(Watcher {
            clause: idx,
            blocker: lits[1],
        });
        self.watches[(!lits[1]).code()].push(Watcher {
            clause: idx,
            blocker: lits[0],
        });
        self.clauses.push(Clause { lits });
        idx
    }

    /// Unit propagation; returns the index of a conflicting clause.
    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            // clauses watching ¬p, which just became false
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[p.code()]);
            let mut i = 0;
            let mut conflict = None;
            while i < ws.len() {
                let w = ws[i];
                if self.assign.lit_value(w.blocker) == Some(true) {
                    i += 1;
                    continue;
                }
                let ci = w.clause;
                let lits = &mut self.clauses[ci].lits;
                if lits[0] == false_lit {
                    lits.swap(0, 1);
                }
                let first = lits[0];
                if first != w.blocker && self.assign.lit_value(first) == Some(true) {
                    ws[i].blocker = first;
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..lits.len() {
                    if self.assign.lit_value(lits[k]) != Some(false) {
                        lits.swap(1, k);
                        let new_watch = !lits[1];
                        self.watches[new_watch.code()].push(Watcher {
                            clause: ci,
                            blocker: first,
                        });
                        ws.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                match self.assign.lit_value(first) {
                    Some(false) => {
                        conflict = Some(ci);
                        break;
                    }
                    _ => {
                        self.enqueue(first, ci);
                        i += 1;
                    }
                }
            }
            let leftover = std::mem::replace(&mut self.watches[p.code()], ws);
            self.watches[p.code()].extend(leftover);
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn backtrack_to(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let start = self.trail_lim[level as usize];
        for &lit in &self.trail[start..] {
            let v = lit.var().index();
            self.phase[v] = lit.is_positive();
            self.assign.values[v] = 0;
            self.reason[v] = NO_REASON;
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(level as usize);
        self.qhead = start;
    }

    fn bump(&mut self, var: Var) {
        let a = &mut self.activity[var.index()];
        *a += self.var_inc;
        if *a > 1e100 {
            self.activity.iter_mut().for_each(|x| *x *= 1e-100);
            self.var_inc *= 1e-100;
        }
    }

    /// First-UIP analysis. Returns the learnt clause (asserting literal first)
    /// and the level to jump back to.
    fn analyze(&mut self, conflict: usize) -> (Vec<Lit>, u32) {
        let current = self.decision_level();
        let mut learnt = vec![Lit(0)];
        let mut pending = 0usize;
        let mut index = self.trail.len();
        let mut clause = conflict;
        let mut resolved: Option<Lit> = None;
        loop {
            let lits = self.clauses[clause].lits.clone();
            for lit in lits {
                if Some(lit) == resolved {
                    continue;
                }
                let v = lit.var();
                if self.seen[v.index()] || self.level[v.index()] == 0 {
                    continue;
                }
                self.seen[v.index()] = true;
                self.bump(v);
                if self.level[v.index()] == current {
                    pending += 1;
                } else {
                    learnt.push(lit);
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var().index()] {
                    break;
                }
            }
            let p = self.trail[index];
            self.seen[p.var().index()] = false;
            pending -= 1;
            if pending == 0 {
                learnt[0] = !p;
                break;
            }
            clause = self.reason[p.var().index()];
            debug_assert_ne!(clause, NO_REASON);
            resolved = Some(p);
        }
        for lit in &learnt[1..] {
            self.seen[lit.var().index()] = false;
        }
        let mut back = 0;
        if learnt.len() > 1 {
            let mut best = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var().index()] > self.level[learnt[best].var().index()] {
                    best = i;
                }
            }
            learnt.swap(1, best);
            back = self.level[learnt[1].var().index()];
        }
        self.var_inc /= VAR_DECAY;
        (learnt, back)
    }

    /// Learns from a conflict at the current level. Returns `false` when the
    /// formula is unsatisfiable.
    fn resolve_conflict(&mut self, conflict: usize) -> bool {
        self.stats.conflicts += 1;
        if self.decision_level() == 0 {
            self.unsat = true;
            return false;
        }
        let (learnt, back) = self.analyze(conflict);
        self.backtrack_to(back);
        if learnt.len() == 1 {
            self.enqueue(learnt[0], NO_REASON);
        } else {
            let asserting = learnt[0];
            let ci = self.attach(learnt);
            self.enqueue(asserting, ci);
        }
        true
    }

    /// Installs a callback clause that is false under the current assignment
    /// and turns it into a conflict at the highest level among its literals.
    fn add_external(&mut self, mut lits: Vec<Lit>) -> Option<usize> {
        self.stats.callback_clauses += 1;
        lits.sort_unstable();
        lits.dedup();
        assert!(
            lits.iter().all(|&l| self.lit_value(l) == Some(false)),
            "callback clause must be falsified by the current assignment"
        );
        self.minimize(&mut lits);
        let lvl = |s: &Self, l: Lit| s.level[l.var().index()];
        lits.sort_by_key(|&l| std::cmp::Reverse(lvl(self, l)));
        let top = lits.first().map_or(0, |&l| lvl(self, l));
        if top == 0 {
            self.unsat = true;
            return None;
        }
        self.backtrack_to(top);
        if lits.len() == 1 {
            // Unit: holds from the root on.
            self.backtrack_to(0);
            self.enqueue(lits[0], NO_REASON);
            return None;
        }
        Some(self.attach(lits))
    }

    /// Drops every literal whose reason clause is otherwise contained in the
    /// clause (or fixed at level 0). Each drop is a resolution step with a
    /// clause already present, so the result is implied and blocks the same
    /// models.
    fn minimize(&mut self, lits: &mut Vec<Lit>) {
        for &l in lits.iter() {
            self.seen[l.var().index()] = true;
        }
        let redundant: Vec<bool> = lits
            .iter()
            .map(|&l| {
                let v = l.var().index();
                let r = self.reason[v];
                r != NO_REASON
                    && self.clauses[r].lits.iter().all(|&q| {
                        let u = q.var().index();
                        u == v || self.seen[u] || self.level[u] == 0
                    })
            })
            .collect();
        for &l in lits.iter() {
            self.seen[l.var().index()] = false;
        }
        let mut keep = redundant.into_iter().map(|r| !r);
        lits.retain(|_| keep.next().unwrap());
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        let mut best: Option<usize> = None;
        for v in 0..self.num_vars() {
            if self.assign.values[v] == 0
                && best.is_none_or(|b| self.activity[v] > self.activity[b])
            {
                best = Some(v);
            }
        }
        best.map(|v| Var(v as u32).lit(self.phase[v]))
    }

    /// Runs the search until a model accepted by `callback` is found, the
    /// formula is refuted, or the conflict budget is spent.
    ///
    /// The solver stays usable afterwards: clauses may be added and `solve`
    /// called again.
    pub fn solve<C: Callback + ?Sized>(&mut self, callback: &mut C) -> SolveOutcome {
        self.backtrack_to(0);
        if self.unsat {
            return SolveOutcome::Unsat;
        }
        if self.propagate().is_some() {
            self.unsat = true;
            return SolveOutcome::Unsat;
        }
        let mut restart_round = 0;
        let mut restart_limit = RESTART_UNIT * luby(restart_round);
        let mut since_restart = 0;
        loop {
            if let Some(conflict) = self.propagate() {
                since_restart += 1;
                if !self.resolve_conflict(conflict) {
                    return SolveOutcome::Unsat;
                }
                if self
                    .conflict_budget
                    .is_some_and(|b| self.stats.conflicts >= b)
                {
                    self.backtrack_to(0);
                    return SolveOutcome::Unknown;
                }
                continue;
            }
            if let Some(clause) = callback.check(&self.assign) {
                match self.add_external(clause) {
                    Some(ci) => {
                        since_restart += 1;
                        if !self.resolve_conflict(ci) {
                            return SolveOutcome::Unsat;
                        }
                    }
                    None if self.unsat => return SolveOutcome::Unsat,
                    None => {}
                }
                continue;
            }
            if since_restart >= restart_limit {
                since_restart = 0;
                restart_round += 1;
                restart_limit = RESTART_UNIT * luby(restart_round);
                self.stats.restarts += 1;
                self.backtrack_to(0);
                continue;
            }
            match self.pick_branch() {
                Some(lit) => {
                    self.stats.decisions += 1;
                    self.trail_lim.push(self.trail.len());
                    self.enqueue(lit, NO_REASON);
                }
                None => {
                    let model = self.assign.values.iter().map(|&v| v > 0).collect();
                    self.backtrack_to(0);
                    return SolveOutcome::Sat(model);
                }
            }
        }
    }
}
