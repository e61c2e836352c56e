mod args;
mod failure;
mod jobs;
mod render;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use failure::Failure;

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("BETHECOUNT_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Failure::BadInput(format!(
            "BETHECOUNT_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::BadInput(e.to_string()))
}

fn run(cli: Cli) -> Result<String, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Count(job) => jobs::count(&job),
        Command::Mu(job) => jobs::mu(&job),
        Command::Symmetry(job) => jobs::symmetry(&job),
        Command::Check(job) => jobs::check(&job),
        Command::Verify(job) => verify::run(&job),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(failure) => {
            if let Some(out) = failure.stdout() {
                let _ = std::io::stdout().write_all(out.as_bytes());
            }
            if let Some(msg) = failure.message() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(failure.code())
        }
    }
}
