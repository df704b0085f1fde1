use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ncdeform_cli::commands::{self, Options};
use ncdeform_cli::suite::{self, SuiteConfig};
use ncdeform_cli::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "ncdeform", version, about = "Experiments on twisted star products and their finite models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input document (JSON); standard input when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for all randomness; overrides a seed given in the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, default_value_t = 1e-10)]
    tolerance: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Product of two elements under a bicharacter.
    Star,
    /// Semiclassical defect over a list of ℏ (CSV hbar,defect).
    Semiclassical,
    /// Homomorphism check of I on the deformed fixed-point algebra.
    KasprzakVerify,
    /// Commutation phases of the Heisenberg field (CSV y,phase_re,phase_im).
    Heisenberg,
    /// Window norm estimates (CSV window,estimate).
    Norm,
    /// Factor of automorphy for a τ table over Z/M.
    AutomorphySolve,
    /// Acceptance criteria (CSV criterion,name,status,detail).
    Suite {
        /// Comma-separated criterion ids to run.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<usize>>,
        /// Bracket normalisation for the semiclassical criterion.
        #[arg(long)]
        bracket_scale: Option<f64>,
    },
}

fn read_input(path: &Option<PathBuf>) -> CliResult<String> {
    let mut text = String::new();
    match path {
        Some(p) => text = std::fs::read_to_string(p).map_err(|e| CliError::validation(format!("{}: {e}", p.display())))?,
        None => {
            std::io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

fn run(cli: &Cli) -> CliResult<String> {
    let opts = Options { seed: cli.seed, tolerance: cli.tolerance };
    if let Command::Suite { only, bracket_scale } = &cli.command {
        let cfg = SuiteConfig {
            seed: cli.seed.unwrap_or(0),
            bracket_scale: bracket_scale.unwrap_or(ncdeform::deform::BRACKET_SCALE),
            only: only.clone(),
        };
        let outcomes = suite::run_suite(&cfg);
        let text = suite::summary_csv(&outcomes)?;
        return if outcomes.iter().all(|o| o.passed) { Ok(text) } else { Err(CliError::tolerance(text)) };
    }
    let input = read_input(&cli.input)?;
    match cli.command {
        Command::Star => commands::cmd_star(&input),
        Command::Semiclassical => commands::cmd_semiclassical(&input),
        Command::KasprzakVerify => commands::cmd_kasprzak_verify(&input, opts),
        Command::Heisenberg => commands::cmd_heisenberg(&input),
        Command::Norm => commands::cmd_norm(&input),
        Command::AutomorphySolve => commands::cmd_automorphy_solve(&input, opts),
        Command::Suite { .. } => unreachable!("handled above"),
    }
}

fn emit(path: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::validation(format!("{}: {e}", p.display()))),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => match emit(&cli.output, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code() as u8)
            }
        },
        Err(e) => {
            // tolerance failures still carry a report worth emitting
            if e.kind == ncdeform_cli::Kind::Tolerance {
                let _ = emit(&cli.output, &e.message);
                eprintln!("error: tolerance check failed");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
