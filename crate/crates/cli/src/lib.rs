//! `flagcy` command-line front end.
//!
//! Exit codes: 0 pass, 1 check failure, 2 usage, 3 unsupported case,
//! 4 computation error, 5 I/O.

pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;
use flagcy_core::Error;

use crate::config::{resolve, Cli, Command, Overrides};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_COMPUTATION: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Unsupported(String),
    Computation(String),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Unsupported(_) => EXIT_UNSUPPORTED,
            Failure::Computation(_) => EXIT_COMPUTATION,
            Failure::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m)
            | Failure::Unsupported(m)
            | Failure::Computation(m)
            | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::RealizationUnsupported(_) => Failure::Unsupported(format!(
                "{msg}; only classical types A–D have a matrix realization (info works for all types)"
            )),
            Error::NotMinorRepresentable(_) => Failure::Unsupported(format!(
                "{msg}; spin nodes have no minor formula for their orbit norm"
            )),
            Error::InvalidParameter(_)
            | Error::UnsupportedType(_)
            | Error::InvalidNode { .. }
            | Error::PointManifold
            | Error::NodeInTheta(_)
            | Error::NonPositiveWeight(_)
            | Error::WeightCount { .. } => Failure::Usage(msg),
            _ => Failure::Computation(msg),
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn dispatch(cli: Cli) -> Result<i32, Failure> {
    match &cli.command {
        Command::Info { case, output } => {
            let cfg = resolve(Overrides {
                case,
                metric: None,
                sweep: None,
                tol: None,
                output,
            })?;
            emit(&commands::info(&cfg)?, cfg.out.as_deref())?;
            Ok(EXIT_PASS)
        }
        Command::Potential {
            case,
            metric,
            symbolic,
            at,
            xi,
            output,
        } => {
            let cfg = resolve(Overrides {
                case,
                metric: Some(metric),
                sweep: None,
                tol: None,
                output,
            })?;
            let text = commands::potential(&cfg, *symbolic, at.as_deref(), xi.as_deref())?;
            emit(&text, cfg.out.as_deref())?;
            Ok(EXIT_PASS)
        }
        Command::Verify {
            case,
            metric,
            sweep,
            tol,
            timing,
            output,
        } => {
            let cfg = resolve(Overrides {
                case,
                metric: Some(metric),
                sweep: Some(sweep),
                tol: Some(tol),
                output,
            })?;
            let (text, pass, errored) = commands::verify(&cfg, *timing)?;
            emit(&text, cfg.out.as_deref())?;
            Ok(if errored {
                EXIT_COMPUTATION
            } else if pass {
                EXIT_PASS
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Sample {
            case,
            metric,
            sweep,
            output,
        } => {
            let cfg = resolve(Overrides {
                case,
                metric: Some(metric),
                sweep: Some(sweep),
                tol: None,
                output,
            })?;
            emit(&commands::sample(&cfg)?, cfg.out.as_deref())?;
            Ok(EXIT_PASS)
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.exit_code()
        }
    }
}
