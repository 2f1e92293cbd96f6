//! `sfcpart`: partition structured grids along space-filling curves and
//! score the result.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 data error.

use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sfcpart_core::curve::{CurveRegistry, DEFAULT_LEVEL};
use sfcpart_core::io::{self as files, ReportFormat};
use sfcpart_core::partition::DEFAULT_EPSILON;
use sfcpart_core::sweep::{format_sweep, sweep};
use sfcpart_core::{evaluate, partition_grid, DualGraph, Error, GridSpec, Level, UnitPoint};

#[derive(Debug, Parser)]
#[command(name = "sfcpart", version, about = "Space-filling-curve grid partitioner")]
struct Cli {
    /// Worker threads for keying and sorting (default: all cores).
    #[arg(long, global = true, env = "SFCPART_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Partition a grid and write a partition file.
    Partition(PartitionArgs),
    /// Print quality metrics of a partition file.
    Metrics(MetricsArgs),
    /// Partition for several rank counts and curves and tabulate the metrics.
    Sweep(SweepArgs),
    /// Encode `u v w` lines from standard input.
    Encode(EncodeArgs),
}

#[derive(Debug, Args)]
struct CurveOpts {
    /// Curve level (bits per axis).
    #[arg(long, default_value_t = DEFAULT_LEVEL)]
    level: u8,

    /// Margin between the mapped domain and the unit cube faces.
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
}

#[derive(Debug, Args)]
struct GridOpts {
    #[arg(long)]
    grid: PathBuf,

    /// Cell weights file, overrides the grid file's `weights` line.
    #[arg(long)]
    weights: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PartitionArgs {
    #[command(flatten)]
    grid: GridOpts,

    #[arg(long, default_value = "hilbert")]
    method: String,

    /// Number of ranks.
    #[arg(long = "np")]
    n_ranks: usize,

    #[command(flatten)]
    curve: CurveOpts,

    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct MetricsArgs {
    #[command(flatten)]
    grid: GridOpts,

    #[arg(long)]
    partition: PathBuf,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    grid: GridOpts,

    /// Comma-separated curve names.
    #[arg(long, value_delimiter = ',', default_value = "hilbert")]
    method: Vec<String>,

    /// Comma-separated rank counts.
    #[arg(long = "np", value_delimiter = ',', required = true)]
    n_ranks: Vec<usize>,

    #[command(flatten)]
    curve: CurveOpts,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct EncodeArgs {
    #[arg(long, default_value = "hilbert")]
    method: String,

    #[arg(long, default_value_t = DEFAULT_LEVEL)]
    level: u8,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => ReportFormat::Text,
            Format::Csv => ReportFormat::Csv,
        }
    }
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_config() { 1 } else { 2 },
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn load_grid(opts: &GridOpts) -> Result<GridSpec, Failure> {
    let grid = files::read_grid(&opts.grid)?;
    match &opts.weights {
        None => Ok(grid),
        Some(path) => {
            let weights = files::read_weights(path, grid.num_cells())?;
            Ok(grid.without_weights().with_weights(weights)?)
        }
    }
}

fn check_ranks(n_ranks: usize, grid: &GridSpec) -> Result<(), Failure> {
    if n_ranks == 0 || n_ranks > grid.num_cells() {
        return Err(usage(format!(
            "--np must be between 1 and the number of cells ({}), got {n_ranks}",
            grid.num_cells()
        )));
    }
    Ok(())
}

fn cmd_partition(args: &PartitionArgs) -> Result<(), Failure> {
    let registry = CurveRegistry::builtin();
    let curve = registry.get(&args.method)?;
    let level = Level::new(args.curve.level)?;
    let grid = load_grid(&args.grid)?;
    check_ranks(args.n_ranks, &grid)?;
    let start = Instant::now();
    let partition = partition_grid(&grid, curve.as_ref(), args.n_ranks, level, args.curve.epsilon)?;
    let elapsed = start.elapsed();
    files::save_partition(&partition, &args.out)?;
    println!(
        "cells {} ranks {} method {} time {:.3}s",
        grid.num_cells(),
        partition.n_ranks(),
        partition.method(),
        elapsed.as_secs_f64()
    );
    Ok(())
}

fn cmd_metrics(args: &MetricsArgs) -> Result<(), Failure> {
    let grid = load_grid(&args.grid)?;
    let partition = files::load_partition(&args.partition)?;
    let report = evaluate(&partition, &DualGraph::new(&grid))?;
    print!("{}", files::format_report(&report, args.format.into()));
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), Failure> {
    let registry = CurveRegistry::builtin();
    let curves = args
        .method
        .iter()
        .map(|m| registry.get(m))
        .collect::<Result<Vec<_>, _>>()?;
    let level = Level::new(args.curve.level)?;
    let grid = load_grid(&args.grid)?;
    for &np in &args.n_ranks {
        check_ranks(np, &grid)?;
    }
    let refs: Vec<&dyn sfcpart_core::CurveEncoder> = curves.iter().map(|c| c.as_ref()).collect();
    let rows = sweep(&grid, &refs, &args.n_ranks, level, args.curve.epsilon)?;
    print!("{}", format_sweep(&rows, args.format.into()));
    Ok(())
}

fn cmd_encode(args: &EncodeArgs) -> Result<(), Failure> {
    let registry = CurveRegistry::builtin();
    let curve = registry.get(&args.method)?;
    let level = Level::new(args.level)?;
    let stdin = io::stdin();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    for (n, line) in stdin.lock().lines().enumerate() {
        let line = line?;
        let line_no = n + 1;
        if line.trim().is_empty() {
            continue;
        }
        let coords: Vec<f64> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| Failure {
                code: 2,
                message: format!("stdin:{line_no}: expected three decimals, got '{line}'"),
            })?;
        if coords.len() != 3 {
            return Err(Failure {
                code: 2,
                message: format!("stdin:{line_no}: expected three decimals, got '{line}'"),
            });
        }
        let p = UnitPoint::new(coords[0], coords[1], coords[2]).map_err(|e| Failure {
            code: 2,
            message: format!("stdin:{line_no}: {e}"),
        })?;
        let key = curve.encode(p, level);
        writeln!(out, "{key} {key:#x} {:.17e}", key.to_unit_interval())?;
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match &cli.command {
        Command::Partition(a) => cmd_partition(a),
        Command::Metrics(a) => cmd_metrics(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Encode(a) => cmd_encode(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
