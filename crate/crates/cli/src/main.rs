use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ftri_cli::commands::{self, CliError, Settings, Status};
use ftri_cli::{Cache, Format, OutputDocument};

/// Exact F-triangles, M-triangles and the identity relating them, for finite root systems.
///
/// Exit status: 0 success, 1 mismatch, 2 usage error, 3 timeout, 4 internal error.
#[derive(Parser)]
#[command(name = "ftri", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the F-triangle.
    Ftriangle(SpecArgs),
    /// Print the f-, positive f-, natural f- and h-vectors.
    Fvector(SpecArgs),
    /// Build the noncrossing partition lattice and print its M-triangle.
    Mtriangle(LatticeArgs),
    /// Print Coxeter number, exponents, zeta polynomial and lattice counts from closed formulas.
    Invariants(SpecArgs),
    /// Compare both sides of the identity exactly and run the consistency checks.
    Verify(LatticeArgs),
    /// Verify several specs, optionally in parallel, one summary line each.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SpecArgs {
    /// Root system, e.g. A3, E6, B2xA1.
    spec: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct LatticeArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Order in which simple reflections are multiplied, e.g. 2,1,3.
    #[arg(long, value_delimiter = ',')]
    coxeter_order: Option<Vec<usize>>,
    #[command(flatten)]
    limits: Limits,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct Limits {
    /// Give up after this many seconds and report what was finished.
    #[arg(long)]
    max_seconds: Option<f64>,
    /// Build lattices larger than the default size limit.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Specs to verify. Defaults to a representative list of small types.
    specs: Vec<String>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write one JSON report per spec into this directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[command(flatten)]
    limits: Limits,
}

const DEFAULT_SWEEP: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "B6", "D4", "D5", "D6", "E6", "F4", "G2", "A2xA1",
    "B2xA1", "A1xA1xA1",
];

fn settings(cache_dir: Option<PathBuf>, limits: Option<&Limits>, timings: bool) -> Settings {
    Settings {
        cache: cache_dir.map(Cache::new),
        allow_large: limits.is_some_and(|l| l.allow_large),
        max_seconds: limits.and_then(|l| l.max_seconds),
        timings,
    }
}

fn emit(doc: &OutputDocument, format: Format) -> Result<(), CliError> {
    let text = doc.render(format)?;
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<Status, CliError> {
    match cli.command {
        Command::Ftriangle(a) => {
            let spec = commands::parse_spec(&a.spec)?;
            emit(&commands::ftriangle(&spec, &settings(a.cache_dir, None, false))?, a.format)?;
            Ok(Status::Ok)
        }
        Command::Fvector(a) => {
            let spec = commands::parse_spec(&a.spec)?;
            emit(&commands::fvectors(&spec, &settings(a.cache_dir, None, false))?, a.format)?;
            Ok(Status::Ok)
        }
        Command::Invariants(a) => {
            let spec = commands::parse_spec(&a.spec)?;
            emit(&commands::invariants(&spec)?, a.format)?;
            Ok(Status::Ok)
        }
        Command::Mtriangle(a) => {
            let spec = commands::parse_spec(&a.spec.spec)?;
            let s = settings(a.spec.cache_dir, Some(&a.limits), false);
            emit(&commands::mtriangle(&spec, a.coxeter_order.as_deref(), &s)?, a.spec.format)?;
            Ok(Status::Ok)
        }
        Command::Verify(a) => {
            let spec = commands::parse_spec(&a.spec.spec)?;
            let s = settings(a.spec.cache_dir, Some(&a.limits), a.timings);
            let (doc, status) = commands::verify(&spec, a.coxeter_order.as_deref(), &s)?;
            emit(&doc, a.spec.format)?;
            if status == Status::Timeout {
                eprintln!("ftri: time budget exhausted, partial report written");
            }
            Ok(status)
        }
        Command::Sweep(a) => {
            let specs: Vec<String> = if a.specs.is_empty() {
                DEFAULT_SWEEP.iter().map(|s| s.to_string()).collect()
            } else {
                a.specs
            };
            let s = settings(a.cache_dir, Some(&a.limits), false);
            let lines = commands::sweep(&specs, &s, a.jobs, a.out_dir.as_deref())?;
            let mut out = std::io::stdout().lock();
            for line in &lines {
                writeln!(out, "{line}")?;
            }
            Ok(commands::sweep_status(&lines))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = run(cli).unwrap_or_else(|e| {
        eprintln!("ftri: {e}");
        e.status()
    });
    ExitCode::from(status.code() as u8)
}
