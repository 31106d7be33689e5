//! Command implementations behind the `hasse-pareto` binary.

pub mod bench;
pub mod commands;
pub mod screen;

use thiserror::Error;

/// Process exit status of a subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::VerificationFailed => 1,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Input {
        path: String,
        #[source]
        source: hasse_pareto::Error,
    },

    #[error("invalid argument: {0}")]
    Usage(String),

    #[error("refused: {0}")]
    Refused(String),

    #[error(transparent)]
    Solver(#[from] hasse_pareto::Error),

    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Refused(_) => 3,
            CliError::Solver(hasse_pareto::Error::BudgetExceeded { .. }) => 3,
            CliError::Solver(hasse_pareto::Error::ComponentTooLarge { .. }) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

/// Parses `A..B` or `A..B:STEP` (inclusive bounds) into the list of sizes.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>> {
    let bad = || {
        CliError::Usage(format!(
            "sizes must look like A..B or A..B:STEP, got {text:?}"
        ))
    };
    let (range, step) = match text.split_once(':') {
        Some((r, s)) => (r, s.trim().parse::<usize>().map_err(|_| bad())?),
        None => (text, 1),
    };
    let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if step == 0 || lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).step_by(step).collect())
}
