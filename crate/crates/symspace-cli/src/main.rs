use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use symspace_cli::commands::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let outcome = execute(&cli, &echo);
    std::io::stdout().write_all(outcome.stdout.as_bytes()).expect("stdout");
    std::io::stderr().write_all(outcome.stderr.as_bytes()).expect("stderr");
    ExitCode::from(outcome.exit_code as u8)
}
