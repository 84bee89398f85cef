use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use a6arc::Error;
use a6arc_cli::commands;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "a6arc", version, about = "The 90-point A6 orbit in PG(2,q): arcs, spectra, completeness, exceptional primes")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for scans and pair jobs (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Cross-check fast results against brute-force oracles.
    #[arg(long, global = true)]
    oracle: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Copy)]
struct FieldArgs {
    /// Characteristic.
    #[arg(short)]
    p: u64,
    /// Extension degree (1 or 2).
    #[arg(short)]
    r: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the 90 orbit points.
    Orbit(FieldArgs),
    /// Arc verdict, line spectrum and completeness for one field.
    Check(FieldArgs),
    /// Run `check` for every prime 7 <= p <= p_max at its smallest valid degree.
    Scan {
        #[arg(long)]
        p_max: u64,
    },
    /// Exceptional primes from the resultant pipeline.
    Delta {
        /// Pair cache; read if present, written otherwise.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Write the generator matrix of the [90,3,88] MDS code as CSV.
    ExportMds {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidQ { .. } => 2,
        Error::CorruptCache { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let opts = commands::Opts { oracle: cli.oracle };
    let start = Instant::now();
    let out = match &cli.command {
        Command::Orbit(f) => commands::orbit(f.p, f.r, opts),
        Command::Check(f) => commands::check(f.p, f.r, opts),
        Command::Scan { p_max } => commands::scan(*p_max, opts),
        Command::Delta { cache } => commands::delta(cache.as_deref(), opts),
        Command::ExportMds { field, out } => commands::export_mds(field.p, field.r, out, opts),
    };
    match out {
        Ok(mut run) => {
            run.report.timing.elapsed_us = start.elapsed().as_micros() as u64;
            match cli.format {
                Format::Json => print!("{}", run.report.to_json()),
                Format::Text => print!("{}", run.text),
                Format::Csv => print!("{}", run.csv),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
