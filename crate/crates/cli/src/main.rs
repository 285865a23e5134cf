//! Batch front-end for the cartan-forge engine.

mod commands;
mod config;
mod fields;
mod report;
mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Context, Outcome};
use config::RunConfig;

const EXIT_CONFIG: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the selected identity suites (lie, forms, cartan, lagrangian).
    CheckIdentities,
    /// Compare the Chern-Simons and Palatini actions and first variations.
    Correspondence,
    /// Test the gauge shift relation for the configured gauge map.
    GaugeShift,
    /// Extend Cartan data to all frames and print it.
    Extend,
    /// Reduce Cartan data to the orthonormal frames of the configured frame's metric.
    Reduce,
    /// Check d(Tq(A)) = <F^F> on random 1-forms.
    TransgressionCheck,
}

#[derive(Debug, Parser)]
#[command(name = "cartan-forge", version, about = "Chern-Simons and Palatini checks on Cartan geometries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON run configuration; defaults to flat data on the unit box.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Multiplies every tolerance.
    #[arg(long, global = true, default_value_t = 1.0)]
    tolerance_scale: f64,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_CONFIG)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match &cli.config {
        Some(p) => match RunConfig::load(p) {
            Ok(c) => c,
            Err(e) => return fail(e),
        },
        None => RunConfig::default(),
    };
    if !(cli.tolerance_scale.is_finite() && cli.tolerance_scale > 0.0) {
        return fail(format!("--tolerance-scale must be positive, found {}", cli.tolerance_scale));
    }
    cfg.tolerances = cfg.tolerances.scaled(cli.tolerance_scale);
    let data_command = matches!(cli.command, Command::Extend | Command::Reduce);
    if data_command && cli.format == Format::Csv {
        return fail("extend and reduce emit JSON only");
    }
    let cx = Context { cfg: &cfg, cli_seed: cli.seed };
    let result = match cli.command {
        Command::CheckIdentities => commands::check_identities(&cx),
        Command::Correspondence => commands::correspondence(&cx),
        Command::GaugeShift => commands::gauge_shift(&cx),
        Command::Extend => commands::extend(&cx),
        Command::Reduce => commands::reduce(&cx),
        Command::TransgressionCheck => commands::transgression_check(&cx),
    };
    let (text, code) = match result {
        Ok(Outcome::Data(text)) => (text, 0),
        Ok(Outcome::Report(r)) => {
            for c in r.checks.iter().filter(|c| !c.passed) {
                eprintln!("failed [{}] {}: residual {:e} (tolerance {:e})", c.anchor, c.identity, c.max_residual, c.tolerance);
            }
            let text = match cli.format {
                Format::Json => r.to_json(),
                Format::Csv => r.to_csv(),
            };
            (text, r.exit_code())
        }
        Err(e) => return fail(e),
    };
    let out = cli.out.clone().or_else(|| cfg.output.clone());
    let written = match &out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        return fail(format!("cannot write output: {e}"));
    }
    ExitCode::from(code as u8)
}
