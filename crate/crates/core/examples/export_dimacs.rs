//! Writes every instance of an order as DIMACS plus a TSV manifest.
//!
//! `cargo run --release --example export_dimacs -- 15 /tmp/cnf`
//!
//! The PSD callback has no clausal form, so the exported formulas admit more
//! models than the search accepts.

use std::fs;
use std::path::PathBuf;

use goodmat::pipeline::{prepare, SearchConfig};
use goodmat::satsearch::{export_dimacs, parse_dimacs, write_manifest, ManifestEntry};

fn main() -> goodmat::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(Ok(15), |s| s.parse()).expect("order");
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "cnf".into()));
    fs::create_dir_all(&dir)?;

    let prepared = prepare(n, &SearchConfig::default())?;
    let mut manifest = Vec::new();
    for (id, inst) in prepared.instances.iter().enumerate() {
        let text = export_dimacs(inst, &[]);
        let (vars, clauses) = parse_dimacs(&text)?;
        assert_eq!((vars, &clauses), (inst.num_vars(), &inst.clauses));
        fs::write(dir.join(format!("n{n}_{id:04}.cnf")), text)?;
        manifest.push(ManifestEntry::new(id, inst));
    }
    fs::write(dir.join("manifest.tsv"), write_manifest(&manifest))?;
    println!("wrote {} instances to {}", manifest.len(), dir.display());
    Ok(())
}
