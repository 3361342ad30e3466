use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use coxval_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, out) = run(&cli);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    ExitCode::from(code)
}
