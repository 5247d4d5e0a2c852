//! Theorem-level probes: each pairs a hypothesis check with a conclusion check
//! and reports whether the observed verdicts respect the stated logic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lab::registry::find;
use crate::lab::runner::{run_checks, CheckResult, Settings};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Implies,
    Equivalent,
}

#[derive(Clone, Copy, Debug)]
pub struct Experiment {
    pub id: &'static str,
    pub statement: &'static str,
    pub hypothesis: &'static str,
    pub conclusion: &'static str,
    pub relation: Relation,
}

const fn exp(
    id: &'static str,
    statement: &'static str,
    hypothesis: &'static str,
    conclusion: &'static str,
    relation: Relation,
) -> Experiment {
    Experiment { id, statement, hypothesis, conclusion, relation }
}

use Relation::{Equivalent, Implies};

pub const EXPERIMENTS: &[Experiment] = &[
    exp("EXP-T3.2", "φ²[(R·R)(X,Y)ξ] = 0 on horizontals ⇒ 𝓗 = 0", "PRF-3.6", "H-4.5", Implies),
    exp("EXP-T3.3", "φ-semisymmetric ⇔ (3.18) on horizontals", "DEF-3.5", "CHR-3.18", Equivalent),
    exp("EXP-T4.1", "φ-semisymmetric ⇔ (4.8) for all vectors", "DEF-3.5", "CHR-4.8", Equivalent),
    exp("EXP-T5.1", "Ricci φ-semisymmetric ⇔ R·Q = 0 on horizontals", "RIC-5.1", "RIC-5.1Q", Equivalent),
    exp("EXP-T5.2", "φ-semisymmetric ⇒ Ricci φ-semisymmetric", "DEF-3.5", "RIC-5.1", Implies),
    exp("EXP-T5.3", "Ricci φ-semisymmetric ⇔ (5.6) for all vectors", "RIC-5.1", "CHR-5.6", Equivalent),
    exp("EXP-T5.4", "projectively φ-semisymmetric ⇔ φ-semisymmetric", "DEF-5.7P", "DEF-3.5", Equivalent),
    exp("EXP-T5.5", "conformally φ-semisymmetric ⇔ (5.16)", "DEF-5.7C", "CHR-5.16", Equivalent),
    exp("EXP-T5.6", "φ-semisymmetric ⇒ conformally φ-semisymmetric", "DEF-3.5", "DEF-5.7C", Implies),
    exp("EXP-T5.7", "conformally φ-semisymmetric ⇔ (5.18) for all vectors", "DEF-5.7C", "CHR-5.18", Equivalent),
    exp("EXP-T5.8", "B-φ-semisymmetric ⇔ (5.23), concircular B", "DEF-5.20/concircular", "CHR-5.23/concircular", Equivalent),
    exp("EXP-T5.9", "B-φ-semisymmetric ⇒ Ricci φ-semisymmetric, concircular B", "DEF-5.20/concircular", "RIC-5.1", Implies),
    exp("EXP-T5.10", "B-φ-semisymmetric ⇔ φ-semisymmetric, concircular B", "DEF-5.20/concircular", "DEF-3.5", Equivalent),
    exp("EXP-T5.11", "B-φ-semisymmetric ⇔ (5.27), quasi-conformal B with b0 + (n-2)b1 = 0", "DEF-5.20/quasi", "CHR-5.27/quasi", Equivalent),
    exp("EXP-T5.12", "φ-semisymmetric ⇒ B-φ-semisymmetric, conharmonic B", "DEF-3.5", "DEF-5.20/conharmonic", Implies),
    exp("EXP-T5.13", "B-φ-semisymmetric ⇔ (5.18) for all vectors, conformal B", "DEF-5.20/conformal", "CHR-5.18", Equivalent),
    exp("EXP-COR", "semisymmetric ⇒ 𝓗 = 0", "COR-SEMI", "H-4.5", Implies),
];

pub fn find_experiment(id: &str) -> Result<&'static Experiment> {
    EXPERIMENTS.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub id: String,
    pub statement: String,
    pub relation: Relation,
    pub hypothesis: String,
    pub conclusion: String,
    pub hypothesis_residual: Option<f64>,
    pub conclusion_residual: Option<f64>,
    pub hypothesis_holds: Option<bool>,
    pub conclusion_holds: Option<bool>,
    /// `None` when either side is not applicable on the model.
    pub consistent: Option<bool>,
}

fn combine(e: &Experiment, hyp: &CheckResult, con: &CheckResult) -> ExperimentResult {
    let (h, c) = (hyp.verdict.satisfied(), con.verdict.satisfied());
    let consistent = match (h, c) {
        (Some(h), Some(c)) => Some(match e.relation {
            Relation::Implies => !h || c,
            Relation::Equivalent => h == c,
        }),
        _ => None,
    };
    ExperimentResult {
        id: e.id.to_string(),
        statement: e.statement.to_string(),
        relation: e.relation,
        hypothesis: e.hypothesis.to_string(),
        conclusion: e.conclusion.to_string(),
        hypothesis_residual: hyp.max_rel,
        conclusion_residual: con.max_rel,
        hypothesis_holds: h,
        conclusion_holds: c,
        consistent,
    }
}

/// Runs the experiments in `ids` together with the checks they reference.
/// Checks already present in `done` are reused.
pub fn run_experiments(settings: &Settings, ids: &[&str], done: &[CheckResult]) -> Result<Vec<ExperimentResult>> {
    let exps: Vec<&Experiment> = ids.iter().map(|id| find_experiment(id)).collect::<Result<_>>()?;
    let mut needed: Vec<&str> = Vec::new();
    for e in &exps {
        for id in [e.hypothesis, e.conclusion] {
            if !needed.contains(&id) && !done.iter().any(|r| r.id == id) {
                needed.push(id);
            }
        }
    }
    let checks = needed.iter().map(|id| find(id)).collect::<Result<Vec<_>>>()?;
    let fresh = run_checks(settings, &checks)?;
    let lookup = |id: &str| done.iter().chain(&fresh).find(|r| r.id == id).expect("check was run");
    Ok(exps.iter().map(|e| combine(e, lookup(e.hypothesis), lookup(e.conclusion))).collect())
}

pub fn run_experiment(settings: &Settings, id: &str) -> Result<ExperimentResult> {
    Ok(run_experiments(settings, &[id], &[])?.remove(0))
}
