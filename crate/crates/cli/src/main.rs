mod args;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use args::{Cli, Command};
use commands::{CliError, Status};

fn configure_threads(flag: Option<usize>) -> Result<(), CliError> {
    let from_env = match std::env::var("CIX_THREADS") {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("CIX_THREADS must be a positive integer, got {v:?}")))?,
        ),
        Err(_) => None,
    };
    if let Some(n) = flag.or(from_env).filter(|&n| n > 0) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

fn fail(err: &CliError) -> ExitCode {
    eprintln!(
        "{}",
        json!({ "error": { "kind": err.kind(), "message": err.message() } })
    );
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Usage(e.to_string().trim_end().to_string())),
    };
    if let Err(e) = configure_threads(cli.threads) {
        return fail(&e);
    }
    let result = match &cli.command {
        Command::Count(a) => commands::count(a),
        Command::Check(a) => commands::check(a),
        Command::Construct(a) => commands::construct(a),
        Command::Bound(a) => commands::bound(a),
        Command::Search(a) => commands::search(a),
        Command::Decompose(a) => commands::decompose_cmd(a),
        Command::Stability(a) => commands::stability(a),
        Command::Suite(a) => commands::suite(a),
    };
    match result {
        Ok(Status::Passed) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => fail(&e),
    }
}
