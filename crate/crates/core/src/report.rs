//! Run configuration and the machine-readable report.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lab::context::BPresets;
use crate::lab::experiments::{find_experiment, run_experiments, ExperimentResult, EXPERIMENTS};
use crate::lab::registry::{find, registry, Expectation, IdentityCheck, OUT_OF_SCOPE};
use crate::lab::runner::{run_checks, CheckResult, Model, Settings, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Manifold {
    Darboux,
    Spaceform,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub manifold: Manifold,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    pub samples: usize,
    pub seed: u64,
    pub tol_musthold: f64,
    pub tol_claim: f64,
    /// Check ids, or the single entry `"all"`.
    pub ids: Vec<String>,
    /// Experiment ids, or the single entry `"all"`.
    pub experiments: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub format: Format,
    /// Quasi-conformal `(b0, b1)`; defaults to `(1, -1/(n-2))`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quasi: Option<[f64; 2]>,
    /// Custom `(b0, b1, b2)`; defaults to `(1, 1, 1)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub custom: Option<[f64; 3]>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            manifold: Manifold::Darboux,
            m: 1,
            c: None,
            samples: 100,
            seed: 42,
            tol_musthold: 1e-9,
            tol_claim: 1e-9,
            ids: vec!["all".into()],
            experiments: Vec::new(),
            out: None,
            format: Format::Json,
            quasi: None,
            custom: None,
        }
    }
}

fn expand<'a, T>(sel: &'a [String], all: impl Fn() -> Vec<T>, one: impl Fn(&'a str) -> Result<T>) -> Result<Vec<T>> {
    if sel.len() == 1 && sel[0] == "all" {
        return Ok(all());
    }
    sel.iter().map(|s| one(s)).collect()
}

impl RunConfig {
    pub fn model(&self) -> Result<Model> {
        if self.m == 0 {
            return Err(Error::arg("m must be at least 1"));
        }
        match self.manifold {
            Manifold::Darboux => {
                if self.c.is_some() {
                    return Err(Error::arg("--c only applies to the space form"));
                }
                Ok(Model::Darboux { m: self.m })
            }
            Manifold::Spaceform => {
                let c = self.c.ok_or_else(|| Error::arg("the space form needs a value for c"))?;
                if !c.is_finite() {
                    return Err(Error::arg("c must be finite"));
                }
                Ok(Model::Spaceform { m: self.m, c })
            }
        }
    }

    pub fn settings(&self) -> Result<Settings> {
        let mut s = Settings::new(self.model()?, self.samples, self.seed)?;
        for (name, tol) in [("tol-musthold", self.tol_musthold), ("tol-claim", self.tol_claim)] {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(Error::arg(format!("{name} must be positive")));
            }
        }
        s.tol_musthold = self.tol_musthold;
        s.tol_claim = self.tol_claim;
        let n = s.model.n();
        let quasi = self.quasi.map(|[a, b]| (a, b)).unwrap_or((1.0, -1.0 / (n as f64 - 2.0)));
        let custom = self.custom.map(|[a, b, c]| (a, b, c)).unwrap_or((1.0, 1.0, 1.0));
        s.presets = BPresets::new(n, quasi, custom)?;
        Ok(s)
    }

    /// Selected checks, in registry order when `"all"` is given.
    pub fn checks(&self) -> Result<Vec<&'static IdentityCheck>> {
        expand(&self.ids, || registry().iter().collect(), find)
    }

    pub fn experiment_ids(&self) -> Result<Vec<&'static str>> {
        expand(&self.experiments, || EXPERIMENTS.iter().map(|e| e.id).collect(), |id| find_experiment(id).map(|e| e.id))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub timestamp: String,
    pub config: RunConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub meta: Meta,
    pub checks: Vec<CheckResult>,
    pub experiments: Vec<ExperimentResult>,
    /// Number of checks per verdict label.
    pub summary: BTreeMap<String, usize>,
    /// No must-hold check failed.
    pub gate: bool,
}

pub const TOOL: &str = "sasakian-verify";

/// Runs everything `config` selects. All ids are resolved before any work.
pub fn run(config: &RunConfig, timestamp: &str) -> Result<Report> {
    let settings = config.settings()?;
    let checks = config.checks()?;
    let exp_ids = config.experiment_ids()?;
    let results = run_checks(&settings, &checks)?;
    let experiments = run_experiments(&settings, &exp_ids, &results)?;
    Ok(assemble(config.clone(), timestamp, results, experiments))
}

pub fn assemble(config: RunConfig, timestamp: &str, checks: Vec<CheckResult>, experiments: Vec<ExperimentResult>) -> Report {
    let mut summary = BTreeMap::new();
    for r in &checks {
        *summary.entry(r.verdict.label().to_string()).or_insert(0) += 1;
    }
    let gate = !checks.iter().any(|r| r.expectation == Expectation::MustHold && r.verdict == Verdict::Fail);
    Report {
        meta: Meta { tool: TOOL.into(), version: env!("CARGO_PKG_VERSION").into(), timestamp: timestamp.into(), config },
        checks,
        experiments,
        summary,
        gate,
    }
}

fn num(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |v| format!("{v:.3e}"))
}

fn flag(x: Option<bool>) -> &'static str {
    match x {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::arg(format!("serializing report: {e}")))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::arg(format!("parsing report: {e}")))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let c = &self.meta.config;
        let _ = writeln!(s, "{} {}  {:?} m={} samples={} seed={}", self.meta.tool, self.meta.version, c.manifold, c.m, c.samples, c.seed);
        if let Some(cv) = c.c {
            let _ = writeln!(s, "c = {cv}");
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "{:<24} {:<8} {:<14} {:>7} {:>11} {:>11} {:>11}  verdict", "id", "eq", "class", "samples", "max_abs", "max_rel", "scale");
        for r in &self.checks {
            let _ = writeln!(
                s,
                "{:<24} {:<8} {:<14} {:>7} {:>11} {:>11} {:>11}  {}",
                r.id,
                r.eq,
                r.class.label(),
                r.samples,
                num(r.max_abs),
                num(r.max_rel),
                num(r.scale),
                r.verdict.label()
            );
        }
        if !self.experiments.is_empty() {
            let _ = writeln!(s);
            let _ = writeln!(s, "{:<11} {:>11} {:>11} {:>4} {:>4} {:>10}", "experiment", "hypothesis", "conclusion", "hyp", "con", "consistent");
            for e in &self.experiments {
                let _ = writeln!(
                    s,
                    "{:<11} {:>11} {:>11} {:>4} {:>4} {:>10}",
                    e.id,
                    num(e.hypothesis_residual),
                    num(e.conclusion_residual),
                    flag(e.hypothesis_holds),
                    flag(e.conclusion_holds),
                    flag(e.consistent)
                );
            }
        }
        let _ = writeln!(s);
        let counts: Vec<String> = self.summary.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(s, "summary: {}", counts.join(" "));
        let _ = writeln!(s, "gate: {}", if self.gate { "pass" } else { "fail" });
        s
    }

    pub fn emit(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Text => Ok(self.to_text()),
        }
    }
}

/// The registry as a fixed-width table, followed by the equations that have
/// no check.
pub fn list_text() -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<24} {:<8} {:<14} {:<10} {:<11} formula", "id", "eq", "class", "backend", "expectation");
    for c in registry() {
        let backend = match c.backend {
            crate::lab::registry::BackendReq::Any => "any",
            crate::lab::registry::BackendReq::ChartOnly => "chart-only",
        };
        let exp = match c.expectation {
            Expectation::MustHold => "must-hold",
            Expectation::Claim => "claim",
            Expectation::Diagnostic => "diagnostic",
        };
        let _ = writeln!(s, "{:<24} {:<8} {:<14} {:<10} {:<11} {}", c.id, c.eq, c.class.label(), backend, exp, c.formula);
    }
    for (eq, why) in OUT_OF_SCOPE {
        let _ = writeln!(s, "{:<24} {:<8} {}", "-", eq, why);
    }
    s
}
