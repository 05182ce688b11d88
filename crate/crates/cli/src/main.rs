//! `expsol` command-line front end.
//!
//! Exit codes: 0 when the command's success predicate holds, 1 for a
//! definite negative or inapplicable answer, 2 for usage, I/O or parse
//! errors.

mod commands;
mod corpus;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use report::{CliError, Done, RunReport};

#[derive(Parser, Debug)]
#[command(name = "expsol", version, about = "Verify, classify and solve exponential-polynomial differential equations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a candidate solution exactly.
    Verify {
        equation: PathBuf,
        /// Expression or file; defaults to the `.sol` sidecar.
        #[arg(long)]
        candidate: Option<String>,
        /// Number of numeric sample checks.
        #[arg(long, default_value_t = 0)]
        numeric: usize,
        #[arg(long, default_value_t = 128)]
        precision_bits: u32,
    },
    /// Construct solutions of the form q*exp(P).
    Solve { equation: PathBuf },
    /// Report which case applies and which bounds fail.
    Classify { equation: PathBuf },
    /// Coefficient matrix, determinants and the Cramer identity.
    Diagnose { equation: PathBuf },
    /// Run every entry of a corpus directory.
    Corpus { dir: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::Verify { .. } => "verify",
            Self::Solve { .. } => "solve",
            Self::Classify { .. } => "classify",
            Self::Diagnose { .. } => "diagnose",
            Self::Corpus { .. } => "corpus",
        }
    }

    fn inputs(&self) -> Vec<String> {
        match self {
            Self::Verify { equation, candidate, .. } => {
                let mut v = vec![equation.display().to_string()];
                v.extend(candidate.clone());
                v
            }
            Self::Solve { equation } | Self::Classify { equation } | Self::Diagnose { equation } => {
                vec![equation.display().to_string()]
            }
            Self::Corpus { dir } => vec![dir.display().to_string()],
        }
    }

    fn run(&self) -> Result<Done, CliError> {
        match self {
            Self::Verify { equation, candidate, numeric, precision_bits } => {
                commands::verify(equation, candidate.as_deref(), *numeric, *precision_bits)
            }
            Self::Solve { equation } => commands::solve_cmd(equation),
            Self::Classify { equation } => commands::classify(equation),
            Self::Diagnose { equation } => commands::diagnose(equation),
            Self::Corpus { dir } => corpus::run(dir),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = std::panic::catch_unwind(|| cli.command.run())
        .unwrap_or_else(|_| Err(CliError::Usage("internal error".into())));
    let timing_ms = start.elapsed().as_secs_f64() * 1e3;
    let version = env!("CARGO_PKG_VERSION");
    let command = cli.command.name();

    match result {
        Ok(done) => {
            match cli.format {
                Format::Text => print!("{}", done.text),
                Format::Json => {
                    let report =
                        RunReport { command, version, inputs: cli.command.inputs(), outcome: done.outcome, timing_ms };
                    println!("{}", serde_json::to_string_pretty(&report).expect("json values serialize"));
                }
            }
            if done.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.format == Format::Json {
                let doc = serde_json::json!({
                    "command": command,
                    "version": version,
                    "inputs": cli.command.inputs(),
                    "outcome": null,
                    "error": e.to_json(),
                    "timing_ms": timing_ms,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("json values serialize"));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
