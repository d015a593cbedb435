use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{CliError, Result};

pub const MAX_DIM: usize = 64;
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Kahler,
    Reduction,
    Unfolding,
    Crosscheck,
    All,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Kahler,
        Suite::Reduction,
        Suite::Unfolding,
        Suite::Crosscheck,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Kahler => "kahler",
            Suite::Reduction => "reduction",
            Suite::Unfolding => "unfolding",
            Suite::Crosscheck => "crosscheck",
            Suite::All => "all",
        }
    }

    /// The suites whose checks this one runs, in report order.
    pub fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Kahler, Suite::Reduction, Suite::Unfolding, Suite::Crosscheck],
            s => vec![s],
        }
    }

    pub fn requires_two_modes(self) -> bool {
        matches!(self, Suite::Reduction | Suite::Crosscheck | Suite::All)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format `{s}`")),
        }
    }
}

/// Parameters of one `verify` run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub suite: Suite,
    pub dim: usize,
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
    pub out_path: PathBuf,
    pub format: Format,
    pub timing: bool,
}

impl RunConfig {
    pub fn new(suite: Suite, dim: usize, out_path: impl Into<PathBuf>) -> Self {
        Self {
            suite,
            dim,
            trials: 100,
            seed: 0,
            tol: DEFAULT_TOL,
            out_path: out_path.into(),
            format: Format::Json,
            timing: false,
        }
    }

    /// Rejects invalid combinations before any computation.
    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_DIM).contains(&self.dim) {
            return Err(CliError::Config(format!(
                "dim must lie in 1..={MAX_DIM}, got {}",
                self.dim
            )));
        }
        if self.suite.requires_two_modes() && self.dim != 2 {
            return Err(CliError::Config(format!(
                "suite `{}` requires dim = 2, got {}",
                self.suite, self.dim
            )));
        }
        if self.trials == 0 {
            return Err(CliError::Config("trials must be positive".into()));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(CliError::Config(format!(
                "tol must be a positive number, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}
