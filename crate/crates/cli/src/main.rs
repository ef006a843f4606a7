//! `sepprob`: evaluate, tabulate and cross-check two-qubit separability
//! probabilities.

mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use output::Format;

/// Environment variable holding the default working precision in bits.
pub const PREC_ENV: &str = "SEPPROB_PREC";

#[derive(Parser, Debug)]
#[command(name = "sepprob", version, about = "Generalized two-qubit Hilbert-Schmidt separability probabilities")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Working precision in bits.
    #[arg(long, global = true, env = PREC_ENV, default_value_t = 256, value_parser = clap::value_parser!(u32).range(32..=65536))]
    pub prec: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Report wall-clock time (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// P(alpha), exact for half-integer alpha.
    Eval(commands::EvalArgs),
    /// P over an alpha grid with log values and the origin-line slope fit.
    Table(commands::TableArgs),
    /// First, second or third derivative of P.
    Derivative(commands::DerivativeArgs),
    /// Closed-form special values compared with the series.
    SpecialValues,
    /// Monte Carlo separability probability and determinant moments.
    Montecarlo(commands::MonteCarloArgs),
    /// Legendre density reconstruction from a moments file.
    Reconstruct(commands::ReconstructArgs),
    /// Separable volumes and boundary-state probabilities.
    Volumes,
    /// Check P(alpha) - P(alpha + 1) = f(alpha).
    Telescope(commands::TelescopeArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let g = &cli.global;
    let report = match &cli.command {
        Command::Eval(a) => commands::eval(a, g),
        Command::Table(a) => commands::table(a, g),
        Command::Derivative(a) => commands::derivative(a, g),
        Command::SpecialValues => commands::special_values(g),
        Command::Montecarlo(a) => commands::montecarlo(a),
        Command::Reconstruct(a) => commands::reconstruct(a),
        Command::Volumes => commands::volumes(g),
        Command::Telescope(a) => commands::telescope(a, g),
    };
    let mut report = match report {
        Ok(r) => r,
        Err(e) => {
            eprintln!("sepprob: {e}");
            return ExitCode::from(1);
        }
    };
    if g.timing {
        report.elapsed_seconds = Some(start.elapsed().as_secs_f64());
    }
    let written = match &g.out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            report.render(g.format, &mut w)?;
            w.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            report.render(g.format, &mut lock)
        }
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sepprob: cannot write output: {e}");
            ExitCode::from(1)
        }
    }
}
