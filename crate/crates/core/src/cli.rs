//! Command-line front end. Exit codes: 0 success, 1 failed check or search,
//! 2 bad usage or input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::candidates::{generate_candidates_with, write_rows};
use crate::diophantine::signed_rowsums;
use crate::equiv::{canonical_set, normalize_signs_and_order, CanonicalQuad};
use crate::error::{Error, Result};
use crate::filters::Filters;
use crate::matching::{format_quadruples, match_quadruples_with};
use crate::pipeline::report::row_file;
use crate::pipeline::{
    brute_force_oracle, build_skew_hadamard, certify, enumerate_with, merge_reports, prepare,
    solve_prepared, quads_digest, Search, SearchConfig, SearchReport, Shard,
};
use crate::seqcore::read_quads;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "goodmat", version, about = "Circulant good matrices of odd order divisible by 3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct SearchArgs {
    /// Seed for the solver's activity and phase perturbation.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Conflict budget per SAT instance.
    #[arg(long)]
    max_conflicts: Option<u64>,
    /// Turn every pruning filter off.
    #[arg(long)]
    no_filters: bool,
    /// Comma-separated filters to turn off: row_psd, rowsum, pair_psd,
    /// parity, partial_psd.
    #[arg(long, value_delimiter = ',')]
    disable: Vec<String>,
    /// Solve every compressed quadruple, not one per equivalence class.
    #[arg(long)]
    no_dedup: bool,
    /// Search orders above 39.
    #[arg(long)]
    allow_large: bool,
    /// Directory for the row file and JSON report.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Signed rowsum triples of B, C, D.
    Rowsums { n: usize },
    /// Compressed candidate rows.
    Candidates {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compressed quadruples satisfying the compressed identity.
    Match {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uncompress one shard of the instances.
    Solve {
        n: usize,
        /// `i/N`: solve instances whose index is `i` modulo `N`.
        #[arg(long)]
        shard: Option<String>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Full search for one order.
    Enumerate {
        n: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Run every check on each quad of a row file.
    Verify { rowfile: PathBuf },
    /// Build the skew-Hadamard matrix of order 4n from a quad of a row file.
    Hadamard {
        rowfile: PathBuf,
        /// Which quad of the file, from 0.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force search for orders up to 15.
    Oracle { n: usize },
    /// Merge the shard reports and row files of a directory.
    Report { dir: PathBuf },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::Parse { .. } | Error::Format { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match run(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "{msg}");
            EXIT_FAILURE
        }
    }
}

fn filters_from(args: &SearchArgs) -> Result<Filters> {
    let mut f = if args.no_filters { Filters::NONE } else { Filters::ALL };
    for name in &args.disable {
        let slot = match name.trim() {
            "row_psd" => &mut f.row_psd,
            "rowsum" => &mut f.rowsum,
            "pair_psd" => &mut f.pair_psd,
            "parity" => &mut f.parity,
            "partial_psd" => &mut f.partial_psd,
            other => return Err(Error::InvalidInput(format!("unknown filter {other:?}"))),
        };
        *slot = false;
    }
    Ok(f)
}

fn config_from(args: &SearchArgs, shard: Shard) -> Result<SearchConfig> {
    Ok(SearchConfig {
        filters: filters_from(args)?,
        shard,
        seed: args.seed,
        max_conflicts: args.max_conflicts,
        compressed_dedup: !args.no_dedup,
        allow_large: args.allow_large,
    })
}

fn stem(n: usize, shard: Shard) -> String {
    if shard == Shard::WHOLE {
        format!("good_{n}")
    } else {
        format!("good_{n}_shard_{}_of_{}", shard.index, shard.total)
    }
}

fn write_search(dir: &Path, stem: &str, search: &Search) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(format!("{stem}.rows")), row_file(&search.quads))?;
    fs::write(dir.join(format!("{stem}.json")), search.report.to_json()?)?;
    Ok(())
}

fn finish_search(
    out: &mut dyn Write,
    result: Result<Search>,
    n: usize,
    shard: Shard,
    dir: Option<&Path>,
) -> CliResult {
    let (search, complete) = match result {
        Ok(s) => (s, true),
        Err(Error::Incomplete(s)) => (*s, false),
        Err(e) => return Err(e.into()),
    };
    if let Some(dir) = dir {
        write_search(dir, &stem(n, shard), &search)?;
    }
    write!(out, "{}", row_file(&search.quads))?;
    writeln!(out, "{}", search.report.to_json()?)?;
    if complete {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "search of order {n} ran out of budget; {} quads found so far",
            search.quads.len()
        )))
    }
}

fn read_row_file(path: &Path) -> std::result::Result<Vec<crate::seqcore::RowQuad>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(read_quads(&text)?)
}

fn run(command: Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Rowsums { n } => {
            for t in signed_rowsums(n as u64)? {
                writeln!(out, "{} {} {}", t.x, t.y, t.z)?;
            }
        }
        Command::Candidates { n, out: dir } => {
            let rowsums = signed_rowsums(n as u64)?;
            let c = generate_candidates_with(n, &rowsums, &Filters::ALL)?;
            if let Some(dir) = dir {
                fs::create_dir_all(&dir)?;
                write_rows(fs::File::create(dir.join(format!("s_sk_{n}.txt")))?, &c.s_sk)?;
                write_rows(fs::File::create(dir.join(format!("s_sy_{n}.txt")))?, &c.s_sy)?;
            }
            writeln!(out, "skew {}", c.s_sk.len())?;
            writeln!(out, "symmetric {}", c.s_sy.len())?;
        }
        Command::Match { n, out: file } => {
            let rowsums = signed_rowsums(n as u64)?;
            let c = generate_candidates_with(n, &rowsums, &Filters::ALL)?;
            let quads = match_quadruples_with(&c, n, &Filters::ALL);
            let text = format_quadruples(&quads);
            match file {
                Some(path) => {
                    fs::write(path, &text)?;
                    writeln!(out, "{}", quads.len())?;
                }
                None => write!(out, "{text}")?,
            }
        }
        Command::Solve { n, shard, search } => {
            let shard = match shard {
                Some(s) => Shard::parse(&s)?,
                None => Shard::WHOLE,
            };
            let config = config_from(&search, shard)?;
            let result = prepare(n, &config).and_then(|p| solve_prepared(&p, &config));
            finish_search(out, result, n, shard, search.out.as_deref())?;
        }
        Command::Enumerate { n, search } => {
            let config = config_from(&search, Shard::WHOLE)?;
            finish_search(out, enumerate_with(n, &config), n, Shard::WHOLE, search.out.as_deref())?;
        }
        Command::Verify { rowfile } => {
            let quads = read_row_file(&rowfile)?;
            if quads.is_empty() {
                return Err(Failure::Usage(format!("{}: no quads", rowfile.display())));
            }
            let mut failed = 0;
            for (i, q) in quads.iter().enumerate() {
                let c = certify(q);
                let verdict = if c.all_pass() { "ok" } else { "FAIL" };
                writeln!(out, "{i} {verdict} {}", serde_json::to_string(&c).map_err(Error::from)?)?;
                failed += usize::from(!c.all_pass());
            }
            if failed > 0 {
                return Err(Failure::Check(format!("{failed} of {} quads failed", quads.len())));
            }
        }
        Command::Hadamard { rowfile, index, out: file } => {
            let quads = read_row_file(&rowfile)?;
            let q = quads
                .get(index)
                .ok_or_else(|| Failure::Usage(format!("no quad {index} in {}", rowfile.display())))?;
            let h = build_skew_hadamard(q)?;
            match file {
                Some(path) => {
                    fs::write(path, h.to_string())?;
                    writeln!(out, "skew-Hadamard matrix of order {}", h.order())?;
                }
                None => write!(out, "{h}")?,
            }
        }
        Command::Oracle { n } => {
            let quads = brute_force_oracle(n)?;
            write!(out, "{}", row_file(&quads))?;
            writeln!(out, "# {} inequivalent", quads.len())?;
        }
        Command::Report { dir } => report_dir(&dir, out)?,
    }
    Ok(())
}

/// Reads every `<stem>.json` with a matching `<stem>.rows` in `dir`, checks
/// each digest, merges, and writes `good_<n>.merged.{rows,json}`.
fn report_dir(dir: &Path, out: &mut dyn Write) -> CliResult {
    let mut reports = Vec::new();
    let mut quads: Vec<CanonicalQuad> = Vec::new();
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().is_some_and(|x| x == "json")
                && !p.to_string_lossy().ends_with(".merged.json")
        })
        .collect();
    entries.sort();
    for json in entries {
        let rows = json.with_extension("rows");
        if !rows.exists() {
            continue;
        }
        let report = SearchReport::from_json(&fs::read_to_string(&json)?)?;
        let normalized = read_row_file(&rows)?
            .iter()
            .map(normalize_signs_and_order)
            .collect::<Result<Vec<_>>>()?;
        let mine = canonical_set(&normalized);
        if quads_digest(&mine) != report.digest {
            return Err(Failure::Check(format!(
                "{} does not match the digest in {}",
                rows.display(),
                json.display()
            )));
        }
        quads.extend(mine);
        reports.push(report);
    }
    if reports.is_empty() {
        return Err(Failure::Usage(format!("no reports in {}", dir.display())));
    }
    let (report, merged) = merge_reports(&reports, &quads)?;
    let stem = format!("good_{}.merged", report.n);
    fs::write(dir.join(format!("{stem}.rows")), row_file(&merged))?;
    fs::write(dir.join(format!("{stem}.json")), report.to_json()?)?;
    writeln!(out, "{}", report.to_json()?)?;
    if !report.exhaustive {
        return Err(Failure::Check("some shards are missing or incomplete".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("goodmat").chain(args.iter().copied());
        let code = run_cli(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&[]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["rowsums", "10"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["enumerate", "45"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["enumerate", "9", "--disable", "bogus"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["solve", "9", "--shard", "3/3"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["verify", "/nonexistent/rows"]).0, EXIT_USAGE);
    }

    #[test]
    fn rowsums_output() {
        let (code, out, _) = run_args(&["rowsums", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "-1 -1 3\n");
    }

    #[test]
    fn verify_exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let good = dir.path().join("good.rows");
        fs::write(&good, "++-\n+++\n+--\n+--\n").unwrap();
        let (code, out, _) = run_args(&["verify", good.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
        assert!(out.starts_with("0 ok"));

        let bad = dir.path().join("bad.rows");
        fs::write(&bad, "++-\n+++\n+--\n+++\n").unwrap();
        assert_eq!(run_args(&["verify", bad.to_str().unwrap()]).0, EXIT_FAILURE);

        let garbage = dir.path().join("garbage.rows");
        fs::write(&garbage, "++x\n").unwrap();
        assert_eq!(run_args(&["verify", garbage.to_str().unwrap()]).0, EXIT_USAGE);
    }

    #[test]
    fn shards_merge_into_the_whole() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().to_str().unwrap();
        for s in ["0/2", "1/2"] {
            assert_eq!(run_args(&["solve", "9", "--shard", s, "--out", d]).0, 0);
        }
        let (code, out, err) = run_args(&["report", d]);
        assert_eq!(code, 0, "{err}");
        let merged = SearchReport::from_json(&out).unwrap();
        assert!(merged.exhaustive);
        assert_eq!(merged.counts.inequivalent, 1);
    }

    #[test]
    fn hadamard_from_file() {
        let dir = tempfile::tempdir().unwrap();
        let rows = dir.path().join("q.rows");
        fs::write(&rows, "++-\n+++\n+--\n+--\n").unwrap();
        let (code, out, _) = run_args(&["hadamard", rows.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 12);
        assert_eq!(run_args(&["hadamard", rows.to_str().unwrap(), "--index", "1"]).0, EXIT_USAGE);
    }
}
