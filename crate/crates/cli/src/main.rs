use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use drinfeld_endo_cli::{check_module, resolve_bound, run_analysis, CliError, OutputFormat, Problem, ProblemConfig, BOUND_ENV};

/// Endomorphism rings in an isogeny class of rank-3 Drinfeld modules.
#[derive(Parser)]
#[command(name = "drinfeld-endo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Runs the whole pipeline and prints the report.
    Analyze {
        config: PathBuf,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
        /// Refuse instances with more candidate triples than this.
        #[arg(long)]
        candidate_bound: Option<u128>,
    },
    /// Checks one module of the config against the class and identifies its endomorphism ring.
    CheckModule {
        config: PathBuf,
        #[arg(long)]
        name: String,
        #[arg(long)]
        candidate_bound: Option<u128>,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    let env = std::env::var(BOUND_ENV).ok();
    match cli.command {
        Command::Analyze { config, format, candidate_bound } => {
            let cfg = ProblemConfig::load(&config)?;
            let bound = resolve_bound(candidate_bound, env.as_deref(), &cfg)?;
            let problem = Problem::build(&cfg)?;
            let report = run_analysis(&problem, bound)?;
            Ok(match format.or(cfg.options.output_format).unwrap_or_default() {
                OutputFormat::Json => report.to_json(),
                OutputFormat::Text => report.to_text(),
            })
        }
        Command::CheckModule { config, name, candidate_bound } => {
            let cfg = ProblemConfig::load(&config)?;
            let bound = resolve_bound(candidate_bound, env.as_deref(), &cfg)?;
            let problem = Problem::build(&cfg)?;
            Ok(check_module(&problem, &name, bound)? + "\n")
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
