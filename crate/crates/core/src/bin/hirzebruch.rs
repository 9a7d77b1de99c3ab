use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hirzebruch::cli::{error_text, Clock, Config, Session, DEFAULT_SEED};
use hirzebruch::field::DEFAULT_PRIME;
use hirzebruch::Error;

/// Diagram calculus and non-speciality checks for linear systems on
/// Hirzebruch surfaces.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    /// Prime modulus for the rank computations.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u64,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Default number of tries for `ns` and `check`.
    #[arg(long, global = true)]
    tries: Option<u32>,

    /// Directory for the log, shortlog, infolog and finitlog files.
    #[arg(long, global = true, default_value = ".")]
    log_dir: PathBuf,

    /// Stamp every log entry with 00:00:00:00.
    #[arg(long, global = true)]
    fixed_clock: bool,

    /// Write the batch script of a set generator to this file.
    #[arg(long, global = true)]
    emit_batch: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a batch script.
    Run { script: PathBuf },
    /// Any batch command, e.g. `hirzebruch setpb 3 9`.
    #[command(external_subcommand)]
    Line(Vec<String>),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = Config {
        prime: cli.prime,
        seed: cli.seed,
        tries: cli.tries,
        work_dir: PathBuf::from("."),
        log_dir: cli.log_dir,
        clock: if cli.fixed_clock {
            Clock::Fixed
        } else {
            Clock::Local
        },
        emit_batch: cli.emit_batch,
    };
    let result = Session::new(config).and_then(|session| match &cli.command {
        Command::Run { script } => session.run_script(script),
        Command::Line(tokens) => session.run_line(&tokens.join(" ")),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::Batch { line, .. }) if line > 0 => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {}", error_text(&e));
            ExitCode::FAILURE
        }
    }
}
