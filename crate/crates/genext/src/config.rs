//! Run configuration shared by the CLI and the experiment driver.

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::linalg::{PrimeField, DEFAULT_PRIME};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;
pub const DEFAULT_TRIALS: u32 = 3;
pub const DEFAULT_DEGREE_CAP: usize = 30;

/// Output format for reports and series.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum OutputFormat {
    Md,
    Csv,
    Json,
    #[default]
    Plain,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<OutputFormat> {
        match s {
            "md" => Ok(OutputFormat::Md),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "plain" => Ok(OutputFormat::Plain),
            other => Err(Error::InvalidArgument(format!(
                "unknown format {other:?}; expected md, csv, json or plain"
            ))),
        }
    }
}

impl std::fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OutputFormat::Md => write!(f, "md"),
            OutputFormat::Csv => write!(f, "csv"),
            OutputFormat::Json => write!(f, "json"),
            OutputFormat::Plain => write!(f, "plain"),
        }
    }
}

/// Global knobs: modulus, master seed, trial count, worker pool size,
/// output format, the degree cap for symmetric-algebra expansions, an
/// optional expected-tables directory, and the extended-bounds switch.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub prime: u64,
    pub seed: u64,
    pub trials: u32,
    pub workers: usize,
    pub format: OutputFormat,
    pub degree_cap: usize,
    pub expected_path: Option<PathBuf>,
    pub extended: bool,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            prime: DEFAULT_PRIME,
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            format: OutputFormat::Plain,
            degree_cap: DEFAULT_DEGREE_CAP,
            expected_path: None,
            extended: false,
        }
    }
}

impl RunConfig {
    /// Validate the numeric invariants and produce the field.
    pub fn field(&self) -> Result<PrimeField> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be >= 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidArgument("workers must be >= 1".into()));
        }
        PrimeField::new(self.prime)
    }
}
