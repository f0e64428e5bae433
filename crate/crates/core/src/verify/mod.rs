//! Identity suites run by `qdeform verify`, collected into one report.

mod algebra;
mod analysis;
mod basics;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{QError, Result};
use crate::fockspace::DEFAULT_DIM;
use crate::qcore::{Mode, QParam, Residual};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Algebra,
    Fock,
    Ground,
    Fourier,
    Delta,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Core, Suite::Algebra, Suite::Fock, Suite::Ground, Suite::Fourier, Suite::Delta];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Algebra => "algebra",
            Suite::Fock => "fock",
            Suite::Ground => "ground",
            Suite::Fourier => "fourier",
            Suite::Delta => "delta",
        }
    }
}

/// `all` or a single suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector {
    All,
    One(Suite),
}

impl Selector {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            Selector::All => Suite::ALL.to_vec(),
            Selector::One(s) => vec![s],
        }
    }
}

impl FromStr for Selector {
    type Err = QError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(Selector::All);
        }
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .map(Selector::One)
            .ok_or_else(|| QError::Domain(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported only; never fails a run.
    Diagnostic,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Diagnostic => "DIAGNOSTIC",
        }
    }
}

/// One identity check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
    /// Residual magnitude, or surviving term count for exact residuals.
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

impl Check {
    fn new(suite: Suite, name: impl Into<String>, status: Status, value: f64) -> Self {
        Self { suite, name: name.into(), status, value, tolerance: None, detail: String::new() }
    }

    /// Passes when `value ≤ tol`.
    pub fn bound(suite: Suite, name: impl Into<String>, value: f64, tol: f64) -> Self {
        Self { tolerance: Some(tol), ..Self::new(suite, name, pass_if(value.is_finite() && value <= tol), value) }
    }

    /// Passes when `value > threshold`; used by negative controls.
    pub fn above(suite: Suite, name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { tolerance: Some(threshold), ..Self::new(suite, name, pass_if(value > threshold), value) }
    }

    /// Float residuals against `tol`, exact residuals against zero.
    pub fn residual(suite: Suite, name: impl Into<String>, r: &Residual, tol: f64) -> Self {
        match r {
            Residual::Float(v) => Self::bound(suite, name, *v, tol),
            Residual::Exact(p) => Self::new(suite, name, pass_if(p.is_zero()), p.term_count() as f64)
                .with_detail(if p.is_zero() { String::new() } else { p.to_string() }),
        }
    }

    pub fn flag(suite: Suite, name: impl Into<String>, ok: bool) -> Self {
        Self::new(suite, name, pass_if(ok), if ok { 1.0 } else { 0.0 })
    }

    pub fn diagnostic(suite: Suite, name: impl Into<String>, value: f64) -> Self {
        Self::new(suite, name, Status::Diagnostic, value)
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<10} {:<8} {:<52} {:.3e}", self.status.label(), self.suite.name(), self.name, self.value)?;
        if let Some(t) = self.tolerance {
            write!(f, " (tol {t:.0e})")?;
        }
        if !self.detail.is_empty() {
            write!(f, "  {}", self.detail)?;
        }
        Ok(())
    }
}

/// Parameters shared by the suites.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VerifyConfig {
    /// Numeric `q` for the float suites. Exact mode still uses it for the
    /// ground, fourier and delta suites, which have no exact form.
    pub q: f64,
    pub mode: Mode,
    pub dim: usize,
    pub lambda: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { q: 0.9, mode: Mode::Float, dim: DEFAULT_DIM, lambda: 1.0 }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<QParam> {
        if self.dim < 2 {
            return Err(QError::Domain(format!("Fock dimension must be at least 2, got {}", self.dim)));
        }
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return Err(QError::Domain(format!("lambda must be positive, got {}", self.lambda)));
        }
        QParam::numeric(self.q)
    }

    pub fn qparam(&self) -> QParam {
        match self.mode {
            Mode::Float => QParam::Numeric(self.q),
            Mode::Exact => QParam::Formal,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: VerifyConfig,
    pub checks: Vec<Check>,
}

impl Report {
    /// True when no asserted check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// Runs a fallible check; an error becomes a failed check carrying the
/// message.
fn guarded(suite: Suite, name: &str, f: impl FnOnce() -> Result<Vec<Check>>) -> Vec<Check> {
    f().unwrap_or_else(|e| vec![Check::flag(suite, name, false).with_detail(e.to_string())])
}

pub fn run(selector: Selector, config: &VerifyConfig) -> Result<Report> {
    config.validate()?;
    let mut checks = Vec::new();
    for suite in selector.suites() {
        checks.extend(match suite {
            Suite::Core => basics::core(config),
            Suite::Algebra => algebra::algebra(),
            Suite::Fock => basics::fock(config),
            Suite::Ground => analysis::ground(config),
            Suite::Fourier => analysis::fourier(config),
            Suite::Delta => analysis::delta(config),
        });
    }
    Ok(Report { config: *config, checks })
}
