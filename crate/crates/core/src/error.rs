use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("singular {what} in plan year {year}")]
    Singular { what: &'static str, year: usize },

    #[error("length mismatch: {what} (expected {expected}, found {found})")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("negative holdings {0}")]
    NegativeHoldings(f64),

    #[error("empty contribution grid")]
    EmptyGrid,

    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}:{line}: malformed row: {message}", path.display())]
    MalformedRow {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("{}: series `{series}` has a gap, year {missing} is missing", path.display())]
    Gap {
        path: PathBuf,
        series: String,
        missing: i32,
    },

    #[error("{}: series `{series}` repeats year {year}", path.display())]
    DuplicateYear {
        path: PathBuf,
        series: String,
        year: i32,
    },

    #[error("{}: series `{series}` years must be increasing, {year} follows {previous}", path.display())]
    Unordered {
        path: PathBuf,
        series: String,
        year: i32,
        previous: i32,
    },

    #[error("series `{series}` does not cover years {missing:?}")]
    Coverage { series: String, missing: Vec<i32> },

    #[error("series `{series}` must be positive, found {value} in {year}")]
    NonPositive { series: String, year: i32, value: f64 },

    #[error("invalid window {start}..={end} with base year {base}: {reason}")]
    InvalidWindow {
        start: i32,
        end: i32,
        base: i32,
        reason: &'static str,
    },
}
