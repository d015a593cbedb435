//! Check registry and the per-check error accumulator.

use std::time::Instant;

use kaehler::tol::relative_error;
use kaehler::HermitianMatrix;
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::config::{RunConfig, Suite};
use crate::error::Result;
use crate::report::{CheckRecord, ConfigEcho, Report, SCHEMA_VERSION};
use crate::suites;

/// How a check's errors decide `pass`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// `max_rel_err <= tol`.
    Relative,
    /// `max_abs_err <= tol`, for zero targets.
    Absolute,
    /// `max_abs_err` counts failing trials and must be zero.
    Count,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Relative => "relative",
            Rule::Absolute => "absolute",
            Rule::Count => "count",
        }
    }
}

/// Tolerance of a check: the run's `tol`, or a fixed value with the reason.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tol {
    Config,
    Fixed(f64, &'static str),
}

pub const FD_TOL: Tol = Tol::Fixed(1e-6, "finite-difference oracle, step 1e-5 with one Richardson level");

/// Trials are capped for finite-difference checks.
pub const FD_TRIALS: u64 = 10;

pub struct Ctx {
    pub dim: usize,
    pub trials: u64,
    pub seed: u64,
}

impl Ctx {
    pub fn fd_trials(&self) -> u64 {
        self.trials.min(FD_TRIALS)
    }
}

pub struct Check {
    pub id: &'static str,
    pub identity: &'static str,
    pub rule: Rule,
    pub tol: Tol,
    pub run: fn(&Ctx) -> kaehler::Result<Measure>,
}

/// Largest errors over the trials of one check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measure {
    pub n_trials: u64,
    pub max_abs: f64,
    pub max_rel: f64,
}

fn fmax(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

impl Measure {
    pub fn over(n_trials: u64) -> Self {
        Self {
            n_trials,
            max_abs: 0.0,
            max_rel: 0.0,
        }
    }

    fn push(&mut self, abs: f64, rel: f64) {
        self.max_abs = fmax(self.max_abs, abs);
        self.max_rel = fmax(self.max_rel, rel);
    }

    pub fn scalar(&mut self, lhs: f64, rhs: f64) {
        self.push((lhs - rhs).abs(), relative_error(lhs, rhs));
    }

    pub fn matrix(&mut self, lhs: &DMatrix<f64>, rhs: &DMatrix<f64>) {
        if lhs.shape() != rhs.shape() {
            self.push(f64::INFINITY, f64::INFINITY);
            return;
        }
        for (a, b) in lhs.iter().zip(rhs.iter()) {
            self.scalar(*a, *b);
        }
    }

    pub fn vector(&mut self, lhs: &DVector<f64>, rhs: &DVector<f64>) {
        if lhs.len() != rhs.len() {
            self.push(f64::INFINITY, f64::INFINITY);
            return;
        }
        for (a, b) in lhs.iter().zip(rhs.iter()) {
            self.scalar(*a, *b);
        }
    }

    /// Entrywise difference relative to `max(1, |rhs|)`.
    pub fn hermitian(&mut self, lhs: &HermitianMatrix, rhs: &HermitianMatrix) {
        let d = lhs.max_abs_diff(rhs);
        self.push(d, d / rhs.max_abs().max(1.0));
    }

    /// A residual whose target is zero, relative to `max(1, scale)`.
    pub fn residual(&mut self, r: f64, scale: f64) {
        self.push(r, r / scale.max(1.0));
    }

    pub fn failures(&mut self, count: u64) {
        self.push(count as f64, count as f64 / self.n_trials.max(1) as f64);
    }
}

pub fn checks_of(suite: Suite) -> &'static [Check] {
    match suite {
        Suite::Kahler => suites::kahler::CHECKS,
        Suite::Reduction => suites::reduction::CHECKS,
        Suite::Unfolding => suites::unfolding::CHECKS,
        Suite::Crosscheck => suites::crosscheck::CHECKS,
        Suite::All => &[],
    }
}

/// Every check of `suite = all`, with its owning suite.
pub fn catalogue() -> Vec<(Suite, &'static Check)> {
    Suite::All
        .members()
        .into_iter()
        .flat_map(|s| checks_of(s).iter().map(move |c| (s, c)))
        .collect()
}

/// The traceability table as Markdown.
pub fn traceability_table() -> String {
    let mut out = String::from("| check_id | suite | identity | rule | tolerance |\n|---|---|---|---|---|\n");
    for (suite, c) in catalogue() {
        let tol = match c.tol {
            Tol::Config => "run tol".to_string(),
            Tol::Fixed(t, _) => format!("{t:e}"),
        };
        let tol = if c.rule == Rule::Count { "0".to_string() } else { tol };
        out.push_str(&format!(
            "| `{}` | {} | {} | {} | {} |\n",
            c.id,
            suite,
            c.identity.replace('|', "\\|"),
            c.rule.name(),
            tol
        ));
    }
    out
}

fn evaluate(c: &Check, suite: Suite, ctx: &Ctx, config_tol: f64) -> Result<CheckRecord> {
    let start = Instant::now();
    let m = (c.run)(ctx)?;
    log::debug!("{} took {:.3}s", c.id, start.elapsed().as_secs_f64());
    let (tol, tol_note) = match (c.rule, c.tol) {
        (Rule::Count, _) => (0.0, Some("number of failing trials".to_string())),
        (_, Tol::Config) => (config_tol, None),
        (_, Tol::Fixed(t, note)) => (t, Some(note.to_string())),
    };
    let pass = match c.rule {
        Rule::Relative => m.max_rel <= tol,
        Rule::Absolute => m.max_abs <= tol,
        Rule::Count => m.max_abs == 0.0,
    };
    if pass {
        log::info!("{} pass (abs {:e}, rel {:e})", c.id, m.max_abs, m.max_rel);
    } else {
        log::warn!(
            "{} FAIL (abs {:e}, rel {:e}, tol {:e})",
            c.id,
            m.max_abs,
            m.max_rel,
            tol
        );
    }
    Ok(CheckRecord {
        check_id: c.id.to_string(),
        suite,
        identity: c.identity.to_string(),
        n_trials: m.n_trials,
        max_abs_err: m.max_abs,
        max_rel_err: m.max_rel,
        rule: c.rule,
        tol,
        tol_note,
        pass,
    })
}

/// Runs the checks of a validated configuration without writing anything.
pub fn run_checks(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let start = Instant::now();
    let ctx = Ctx {
        dim: config.dim,
        trials: config.trials,
        seed: config.seed,
    };
    let mut checks = Vec::new();
    for suite in config.suite.members() {
        for c in checks_of(suite) {
            checks.push(evaluate(c, suite, &ctx, config.tol)?);
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(Report {
        schema_version: SCHEMA_VERSION.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: ConfigEcho::from(config),
        checks,
        pass,
        wall_time_ms: config.timing.then(|| start.elapsed().as_millis() as u64),
    })
}
