//! Command-line front end: argument parsing, commands and the verify suite.

pub mod args;
pub mod commands;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::fmt;

use clap::Parser;

use args::{Cli, Command};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// An error together with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(msg: impl fmt::Display) -> Self {
        Self {
            code: EXIT_USAGE,
            error: anyhow::anyhow!("{msg}"),
        }
    }
}

impl From<qdeficit::Error> for Failure {
    fn from(e: qdeficit::Error) -> Self {
        let code = match e {
            qdeficit::Error::Io(_) => EXIT_IO,
            _ => EXIT_USAGE,
        };
        Self { code, error: e.into() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: EXIT_IO,
            error: e.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .try_init();
}

/// Parses `argv` and runs the command, returning the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    init_logging(cli.verbose);
    let result = match &cli.command {
        Command::Compute(a) => commands::compute(a),
        Command::Scan(a) => commands::scan(a),
        Command::Sample(a) => commands::sample(a),
        Command::FindA0(a) => commands::find_a0(a),
        Command::SigmaRoots(a) => commands::sigma_roots(a),
        Command::Verify(a) => return run_verify(a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {f}");
            f.code
        }
    }
}

fn run_verify(a: &args::VerifyArgs) -> i32 {
    let opts = verify::VerifyOptions {
        only: a.only.clone(),
        tolerance_scale: a.tolerance_scale,
    };
    let checks = verify::run(&opts, |c| println!("{}", c.line()));
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.id.to_string())
        .collect();
    if checks.is_empty() {
        eprintln!("error: no criteria selected");
        return EXIT_USAGE;
    }
    if failed.is_empty() {
        println!("all {} checks passed", checks.len());
        EXIT_OK
    } else {
        eprintln!("failed criteria: {}", failed.join(", "));
        EXIT_VERIFY
    }
}
