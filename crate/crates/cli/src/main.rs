use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use stammer_cli::{run_job, Cli, JobConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match JobConfig::from_cli(&cli) {
        Ok(cfg) => run_job(&cfg),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(outcome.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(1);
    }
    if let Some(e) = &outcome.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(outcome.exit_code() as u8)
}
