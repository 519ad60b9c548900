use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use qiso_cli::{run, Cli, EXIT_OK};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    if outcome.code == EXIT_OK || outcome.code == qiso_cli::EXIT_MISMATCH {
        let _ = std::io::stdout().write_all(outcome.output.as_bytes());
    } else {
        let _ = std::io::stderr().write_all(outcome.output.as_bytes());
    }
    ExitCode::from(outcome.code)
}
