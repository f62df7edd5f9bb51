//! The solver on its own: enumerate all models of a formula by blocking each
//! one from a callback, the same way the PSD theory blocks rows.

use goodmat::satsearch::{Assignment, Callback, Lit, SolveOutcome, Solver, Var};

/// Records each total assignment and rules it out.
struct AllModels {
    vars: usize,
    models: Vec<Vec<bool>>,
}

impl Callback for AllModels {
    fn check(&mut self, a: &Assignment) -> Option<Vec<Lit>> {
        if !a.is_complete() {
            return None;
        }
        let vars = (0..self.vars as u32).map(Var);
        self.models.push(vars.clone().map(|v| a.value(v).unwrap()).collect());
        Some(vars.map(|v| !a.current_lit(v).unwrap()).collect())
    }
}

fn main() {
    // Exactly one of x0, x1, x2, and x3 -> x0.
    let x = |i: u32, positive: bool| Var(i).lit(positive);
    let mut solver = Solver::new(4);
    solver.add_clause(&[x(0, true), x(1, true), x(2, true)]);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        solver.add_clause(&[x(i, false), x(j, false)]);
    }
    solver.add_clause(&[x(3, false), x(0, true)]);

    let mut cb = AllModels { vars: 4, models: Vec::new() };
    assert_eq!(solver.solve(&mut cb), SolveOutcome::Unsat);
    for m in &cb.models {
        println!("{m:?}");
    }
    println!("{} models, {:?}", cb.models.len(), solver.stats());
}
