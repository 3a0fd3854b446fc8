use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hurwitzcalc::{execute, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    let (code, out, err) = execute(&args, std::io::stdin().lock());
    // A closed pipe on stdout is not worth a panic.
    let _ = std::io::stdout().write_all(out.as_bytes());
    let _ = std::io::stderr().write_all(err.as_bytes());
    ExitCode::from(code as u8)
}
