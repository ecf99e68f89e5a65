mod cli;
mod commands;
mod report;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use freegauss::Error;

use crate::cli::Cli;
use crate::report::{write_error, write_report, ErrorObject};

/// Exit status for a mathematical finding, as opposed to an error (1).
const EXIT_FINDING: u8 = 2;

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Bound { .. } => "bound",
        Error::Order(_) => "order",
        Error::Structure(_) => "structure",
        Error::Parse(_) => "parse",
        Error::Precision { .. } => "precision",
        Error::Pole { .. } => "pole",
        Error::Verification(_) => "verification",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help and version go to stdout with status 0; usage errors are status 1
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    let config = serde_json::to_value(&cli).expect("serializable config");
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let (written, code) = match commands::run(&cli) {
        Ok(report) => {
            let code = if report.finding.is_some() { ExitCode::from(EXIT_FINDING) } else { ExitCode::SUCCESS };
            (write_report(&mut out, cli.format, &config, &report), code)
        }
        Err(e) => {
            eprintln!("freegauss: {e}");
            let code = if e.is_finding() { ExitCode::from(EXIT_FINDING) } else { ExitCode::FAILURE };
            let obj = ErrorObject { kind: error_kind(&e), message: e.to_string() };
            (write_error(&mut out, cli.format, &config, &obj), code)
        }
    };
    match written.and_then(|_| out.flush()) {
        Ok(()) => code,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => code,
        Err(e) => {
            eprintln!("freegauss: cannot write output: {e}");
            ExitCode::FAILURE
        }
    }
}
