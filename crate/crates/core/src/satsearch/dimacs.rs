//! DIMACS CNF export of uncompression instances and the instance manifest.
//!
//! The spectral callback has no clausal form, so an exported instance admits
//! more models than the search accepts. Any model an external solver finds
//! must either be one of our recorded solutions or fail the certificate.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::solver::Lit;
use super::{CnfInstance, Row, VarMap};
use crate::error::{Error, Result};
use crate::seqcore::DefiningQuad;

/// Clause excluding exactly the free entries of `quad`.
pub fn blocking_clause(vars: &VarMap, quad: &DefiningQuad) -> Vec<Lit> {
    Row::ALL
        .into_iter()
        .zip(quad.rows())
        .flat_map(|(row, x)| (1..=vars.d).map(move |i| vars.var(row, i).lit(x[i] < 0)))
        .collect()
}

/// DIMACS text of the instance. Each quad in `blocked` adds one clause
/// ruling it out, so a model of the export is a solution not yet recorded.
pub fn export_dimacs(instance: &CnfInstance, blocked: &[DefiningQuad]) -> String {
    let extra: Vec<Vec<Lit>> = blocked
        .iter()
        .map(|q| blocking_clause(&instance.vars, q))
        .collect();
    let clauses = instance.clauses.iter().chain(&extra);
    let count = instance.clauses.len() + extra.len();
    let mut out = String::new();
    writeln!(out, "c compressed quadruple {}", instance.source).unwrap();
    writeln!(out, "p cnf {} {}", instance.num_vars(), count).unwrap();
    for clause in clauses {
        for lit in clause {
            write!(out, "{} ", lit.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}

/// Parses DIMACS CNF text into `(variable count, clauses)`.
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<Lit>>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let bad = |message: String| Error::Format {
            line: idx + 1,
            message,
        };
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(bad(format!("malformed header {line:?}")));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|e| bad(e.to_string()));
            header = Some((num(parts[2])?, num(parts[3])?));
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(bad("clause before header".into()));
        };
        for tok in line.split_whitespace() {
            let v: i32 = tok.parse().map_err(|_| bad(format!("bad literal {tok:?}")))?;
            match Lit::from_dimacs(v) {
                None => clauses.push(std::mem::take(&mut current)),
                Some(lit) if lit.var().index() < vars => current.push(lit),
                Some(_) => return Err(bad(format!("variable {v} out of range"))),
            }
        }
    }
    let Some((vars, count)) = header else {
        return Err(Error::Format {
            line: 0,
            message: "missing header".into(),
        });
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(Error::Format {
            line: 0,
            message: format!("header declares {count} clauses, found {}", clauses.len()),
        });
    }
    Ok((vars, clauses))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: usize,
    pub quadruple: String,
    pub variables: usize,
    pub clauses: usize,
}

impl ManifestEntry {
    pub fn new(id: usize, instance: &CnfInstance) -> Self {
        ManifestEntry {
            id,
            quadruple: instance.source.to_string(),
            variables: instance.num_vars(),
            clauses: instance.clauses.len(),
        }
    }
}

/// Tab-separated manifest with a header line.
pub fn write_manifest(entries: &[ManifestEntry]) -> String {
    let mut out = String::from("id\tquadruple\tvariables\tclauses\n");
    for e in entries {
        writeln!(out, "{}\t{}\t{}\t{}", e.id, e.quadruple, e.variables, e.clauses).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::satsearch::build_instance;
    use crate::seqcore::{CompressedQuad, CompressedRow};

    fn order_3() -> CnfInstance {
        let r = |v: i8| CompressedRow::new(vec![v]).unwrap();
        build_instance(&CompressedQuad::new(r(1), r(3), r(-1), r(-1)).unwrap(), true).unwrap()
    }

    #[test]
    fn header_and_round_trip() {
        let inst = order_3();
        let text = export_dimacs(&inst, &[]);
        assert!(text.contains(&format!("p cnf 8 {}\n", inst.clauses.len())));
        let (vars, clauses) = parse_dimacs(&text).unwrap();
        assert_eq!(vars, 8);
        assert_eq!(clauses, inst.clauses);
    }

    #[test]
    fn empty_clause_list() {
        let mut inst = order_3();
        inst.clauses.clear();
        assert!(export_dimacs(&inst, &[]).contains("p cnf 8 0\n"));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_dimacs("1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 x 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n3 0\n").is_err());
    }

    #[test]
    fn manifest_lines() {
        let inst = order_3();
        let text = write_manifest(&[ManifestEntry::new(0, &inst)]);
        let line = text.lines().nth(1).unwrap();
        assert_eq!(line, format!("0\t1 | 3 | -1 | -1\t8\t{}", inst.clauses.len()));
    }
}
