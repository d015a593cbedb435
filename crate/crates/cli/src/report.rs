use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::checks::Rule;
use crate::config::{Format, RunConfig, Suite};
use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub suite: Suite,
    pub dim: usize,
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
    pub format: Format,
}

impl From<&RunConfig> for ConfigEcho {
    fn from(c: &RunConfig) -> Self {
        Self {
            suite: c.suite,
            dim: c.dim,
            trials: c.trials,
            seed: c.seed,
            tol: c.tol,
            format: c.format,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub suite: Suite,
    pub identity: String,
    pub n_trials: u64,
    pub max_abs_err: f64,
    pub max_rel_err: f64,
    pub rule: Rule,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol_note: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: String,
    pub version: String,
    pub config: ConfigEcho,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn render(&self) -> Result<Vec<u8>> {
        match self.config.format {
            Format::Json => {
                let mut bytes = serde_json::to_vec_pretty(self).map_err(|e| CliError::Config(e.to_string()))?;
                bytes.push(b'\n');
                Ok(bytes)
            }
            Format::Csv => self.render_csv(),
        }
    }

    fn render_csv(&self) -> Result<Vec<u8>> {
        let c = &self.config;
        let mut out = Vec::new();
        writeln!(
            out,
            "# schema_version={} version={} suite={} dim={} trials={} seed={} tol={:?}",
            self.schema_version, self.version, c.suite, c.dim, c.trials, c.seed, c.tol
        )
        .expect("writing to a Vec");
        if let Some(ms) = self.wall_time_ms {
            writeln!(out, "# wall_time_ms={ms}").expect("writing to a Vec");
        }
        let mut w = csv::Writer::from_writer(out);
        let header = [
            "check_id",
            "suite",
            "identity",
            "n_trials",
            "max_abs_err",
            "max_rel_err",
            "rule",
            "tol",
            "tol_note",
            "pass",
        ];
        let csv_err = |e: csv::Error| CliError::Config(e.to_string());
        w.write_record(header).map_err(csv_err)?;
        for r in &self.checks {
            w.write_record([
                r.check_id.clone(),
                r.suite.to_string(),
                r.identity.clone(),
                r.n_trials.to_string(),
                format!("{:?}", r.max_abs_err),
                format!("{:?}", r.max_rel_err),
                r.rule.name().to_string(),
                format!("{:?}", r.tol),
                r.tol_note.clone().unwrap_or_default(),
                r.pass.to_string(),
            ])
            .map_err(csv_err)?;
        }
        w.into_inner().map_err(|e| CliError::Config(e.to_string()))
    }
}

/// An output file that only appears at `path` once [`commit`](Self::commit)
/// succeeds. Creating it first surfaces an unwritable directory before any
/// computation.
pub struct AtomicOutput {
    path: PathBuf,
    tmp: tempfile::NamedTempFile,
}

impl AtomicOutput {
    pub fn create(path: &Path) -> Result<Self> {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
        Ok(Self {
            path: path.to_path_buf(),
            tmp,
        })
    }

    pub fn commit(mut self, bytes: &[u8]) -> Result<()> {
        let path = self.path;
        self.tmp.write_all(bytes).map_err(|e| CliError::io(&path, e))?;
        self.tmp.as_file().sync_all().map_err(|e| CliError::io(&path, e))?;
        self.tmp.persist(&path).map_err(|e| CliError::io(&path, e.error))?;
        Ok(())
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    AtomicOutput::create(path)?.commit(bytes)
}
