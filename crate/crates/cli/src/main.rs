//! qhook: exact q-hook generating functions, cumulants, scans, limit
//! densities, and discrete-vs-limit distances on the command line.
//!
//! Output contract: identical invocations print identical bytes. Text and
//! CSV start with one version header line; JSON is a single document with
//! no header. Exit codes: 0 success, 2 parse error, 3 domain error, 4
//! guard exceeded.

mod classify;
mod compare;
mod dist;
mod gf;
mod oracle;
mod output;
mod scan;
mod target;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use qhook_core::{Error, ErrorKind, Result};

use output::Format;

#[derive(Parser)]
#[command(
    name = "qhook",
    version,
    about = "Exact q-hook generating functions, cumulants, and limit laws"
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    global: Global,
}

#[derive(Debug, clap::Args)]
struct Global {
    /// Emit JSON (single document, no header line).
    #[arg(long, global = true)]
    json: bool,
    /// Emit CSV with full-precision float cells.
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,
    /// gf: expand the product form into coefficients.
    #[arg(long, global = true)]
    expand: bool,
    /// gf: cross-check against brute-force enumeration when within guards.
    #[arg(long, global = true)]
    oracle: bool,
    /// Highest cumulant order for cumulant tables.
    #[arg(long, global = true, value_name = "D")]
    upto: Option<usize>,
    /// Seed for the sampled labeling sweeps in the oracle suites.
    #[arg(long, global = true, value_name = "S")]
    seed: Option<u64>,
    /// scan, dist: also write a plain "x y" grid to this file.
    #[arg(long, global = true, value_name = "PATH")]
    gnuplot: Option<PathBuf>,
    /// Read the whole argument list from a JSON job file instead:
    /// {"argv": ["scan", "--family", ...]} or a bare array.
    #[arg(long, global = true, value_name = "FILE")]
    job: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build one generating function (product form, optional expansion).
    Gf {
        #[command(subcommand)]
        target: target::Target,
    },
    /// Exact and standardized cumulants of one generating function.
    Cumulants {
        #[command(subcommand)]
        target: target::Target,
    },
    /// Sweep a one-parameter family; one table row per parameter.
    Scan(scan::ScanArgs),
    /// Diagnostic report for one instance.
    Classify {
        #[command(subcommand)]
        what: classify::ClassifyWhat,
    },
    /// Continuous limit laws: density, CDF, grids, cumulants, char function.
    Dist {
        #[command(subcommand)]
        what: dist::DistWhat,
    },
    /// Kolmogorov and Levy distances between a discrete law and a limit.
    Compare(compare::CompareArgs),
    /// Run the small-instance equivalence suites.
    Oracle,
}

fn main() {
    let cli = Cli::parse();
    let cli = match expand_job(cli) {
        Ok(c) => c,
        Err(e) => fail(e),
    };
    if let Err(e) = run(cli) {
        fail(e);
    }
}

fn fail(e: Error) -> ! {
    eprintln!("error: {e}");
    std::process::exit(match e.kind() {
        ErrorKind::Parse => 2,
        ErrorKind::Domain => 3,
        ErrorKind::Guard => 4,
    })
}

/// Replaces the argument list with the one stored in a job file. The file
/// holds exactly what would have been typed, so every input keeps a JSON
/// form without a second parser.
fn expand_job(cli: Cli) -> Result<Cli> {
    let Some(path) = &cli.global.job else {
        return Ok(cli);
    };
    if cli.command.is_some() {
        return Err(Error::parse(
            "--job replaces the whole argument list; do not combine it with a subcommand",
        ));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(format!("cannot read job file {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::parse(format!("bad JSON in {}: {e}", path.display())))?;
    let items = match &value {
        serde_json::Value::Array(items) => items,
        serde_json::Value::Object(map) => match map.get("argv") {
            Some(serde_json::Value::Array(items)) => items,
            _ => {
                return Err(Error::parse(
                    "a job object needs an \"argv\" array of strings",
                ))
            }
        },
        _ => {
            return Err(Error::parse(
                "a job file holds an argv array or {\"argv\": [...]}",
            ))
        }
    };
    let mut args = vec!["qhook".to_string()];
    for item in items {
        match item {
            serde_json::Value::String(s) => args.push(s.clone()),
            other => {
                return Err(Error::parse(format!(
                    "job argv entries must be strings, found {other}"
                )))
            }
        }
    }
    if args.iter().any(|a| a == "--job" || a.starts_with("--job=")) {
        return Err(Error::parse("job files cannot contain --job"));
    }
    Cli::try_parse_from(&args).map_err(|e| Error::parse(e.to_string()))
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    let fmt = Format::pick(g.json, g.csv);
    let command = cli
        .command
        .ok_or_else(|| Error::parse("missing subcommand (see --help)"))?;
    if g.gnuplot.is_some() && !matches!(command, Command::Scan(_) | Command::Dist { .. }) {
        return Err(Error::parse("--gnuplot applies to scan and dist"));
    }
    match command {
        Command::Gf { target } => gf::run_gf(&target, g.expand, g.oracle, fmt),
        Command::Cumulants { target } => gf::run_cumulants(&target, g.upto.unwrap_or(4), fmt),
        Command::Scan(args) => scan::run(&args, fmt, g.gnuplot.as_deref()),
        Command::Classify { what } => classify::run(&what, fmt),
        Command::Dist { what } => dist::run(&what, g.upto, fmt, g.gnuplot.as_deref()),
        Command::Compare(args) => compare::run(&args, fmt),
        Command::Oracle => oracle::run(g.seed.unwrap_or(0), fmt),
    }
}
