//! Command-line front end: argument grammar, row evaluation, verification
//! suites and output formatting.

pub mod args;
pub mod commands;
pub mod output;
pub mod suites;
pub mod verdict;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Why a command could not produce its output.
#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<finfourier::Error> for Failure {
    fn from(e: finfourier::Error) -> Self {
        match e {
            finfourier::Error::Parameter(_) | finfourier::Error::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

/// Runs the program on `argv` (program name first), writing the document to
/// standard output and diagnostics to standard error. Returns the exit code.
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
    let outcome = match &cli.command {
        Command::Transform(a) => commands::transform(a).map(|s| (s, true)),
        Command::Table(a) => commands::table(a).map(|s| (s, true)),
        Command::Parseval(a) => commands::parseval(a).map(|s| (s, true)),
        Command::Verify(a) => suites::verify(a),
    };
    match outcome {
        Ok((doc, passed)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(doc.as_bytes()).and_then(|_| out.flush()).is_err() {
                return EXIT_NUMERICAL;
            }
            if passed {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            EXIT_NUMERICAL
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use finfourier::{Complex64, Error};

    #[test]
    fn library_errors_map_to_exit_classes() {
        assert!(matches!(Failure::from(Error::Parameter("n".into())), Failure::Usage(_)));
        assert!(matches!(Failure::from(Error::Domain("λ".into())), Failure::Usage(_)));
        let e = Error::Evaluation {
            message: "budget".into(),
            partial: Complex64::new(0.0, 0.0),
            estimate: 1.0,
        };
        assert!(matches!(Failure::from(e), Failure::Numerical(_)));
    }

    #[test]
    fn help_is_not_an_error() {
        assert_eq!(run(["finfourier", "--version"]), EXIT_OK);
        assert_eq!(run(["finfourier", "transform"]), EXIT_USAGE);
    }
}
