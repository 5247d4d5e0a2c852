//! Sampling loop: geometry per sample point, every selected check per sample,
//! then an order-fixed aggregation into one result per check.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curvature::Depth;
use crate::error::{Error, Result};
use crate::lab::context::{Args, BPresets, Ctx, PointData};
use crate::lab::registry::{find, BackendReq, Expectation, IdentityCheck};
use crate::manifolds::sampling::{hash_id, stream_rng};
use crate::manifolds::{
    chart_geometry, sample_point, sample_vectors, DarbouxChart, GeometryAtPoint, GeometryOptions, InputClass, SpaceForm,
};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "manifold", rename_all = "lowercase")]
pub enum Model {
    Darboux { m: usize },
    Spaceform { m: usize, c: f64 },
}

impl Model {
    pub fn m(&self) -> usize {
        match *self {
            Model::Darboux { m } | Model::Spaceform { m, .. } => m,
        }
    }

    pub fn n(&self) -> usize {
        2 * self.m() + 1
    }

    pub fn is_chart(&self) -> bool {
        matches!(self, Model::Darboux { .. })
    }

    /// Geometry at sample `index`. The space form is homogeneous, so the
    /// index is ignored there.
    pub fn geometry(&self, seed: u64, index: u64, depth: Depth) -> Result<GeometryAtPoint> {
        match *self {
            Model::Darboux { m } => {
                let chart = DarbouxChart::new(m)?;
                let point = sample_point(seed, index, self.n());
                chart_geometry(&chart, &point, GeometryOptions { depth, ..Default::default() })
            }
            Model::Spaceform { m, c } => SpaceForm::new(m, c)?.geometry(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Settings {
    pub model: Model,
    pub samples: usize,
    pub seed: u64,
    pub tol_musthold: f64,
    pub tol_claim: f64,
    pub presets: BPresets,
}

impl Settings {
    pub fn new(model: Model, samples: usize, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::arg("samples must be at least 1"));
        }
        if model.m() == 0 {
            return Err(Error::arg("m must be at least 1"));
        }
        Ok(Settings { presets: BPresets::defaults(model.n())?, model, samples, seed, tol_musthold: 1e-9, tol_claim: 1e-9 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "HOLDS")]
    Holds,
    #[serde(rename = "VIOLATED")]
    Violated,
    /// Diagnostic within tolerance of zero.
    #[serde(rename = "ZERO")]
    Zero,
    #[serde(rename = "NONZERO")]
    Nonzero,
    #[serde(rename = "N/A")]
    NotApplicable,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Holds => "HOLDS",
            Verdict::Violated => "VIOLATED",
            Verdict::Zero => "ZERO",
            Verdict::Nonzero => "NONZERO",
            Verdict::NotApplicable => "N/A",
        }
    }

    /// `Some(true)` when the identity was satisfied, `None` for N/A.
    pub fn satisfied(self) -> Option<bool> {
        match self {
            Verdict::Pass | Verdict::Holds | Verdict::Zero => Some(true),
            Verdict::Fail | Verdict::Violated | Verdict::Nonzero => Some(false),
            Verdict::NotApplicable => None,
        }
    }

    fn of(expectation: Expectation, ok: bool) -> Self {
        match (expectation, ok) {
            (Expectation::MustHold, true) => Verdict::Pass,
            (Expectation::MustHold, false) => Verdict::Fail,
            (Expectation::Claim, true) => Verdict::Holds,
            (Expectation::Claim, false) => Verdict::Violated,
            (Expectation::Diagnostic, true) => Verdict::Zero,
            (Expectation::Diagnostic, false) => Verdict::Nonzero,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub eq: String,
    pub class: InputClass,
    pub expectation: Expectation,
    pub samples: usize,
    /// `None` when not applicable or not finite.
    pub max_abs: Option<f64>,
    pub max_rel: Option<f64>,
    pub scale: Option<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug)]
enum Outcome {
    Value { abs: f64, rel: f64, scale: f64 },
    Skipped,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn evaluate_at(check: &IdentityCheck, pd: &PointData, seed: u64, index: u64) -> Result<Outcome> {
    let b = match check.preset {
        Some(kind) => Some(
            pd.b.iter().find(|(k, _)| k.kind == kind).ok_or_else(|| Error::arg(format!("no coefficients for {}", kind.label())))?,
        ),
        None => None,
    };
    let ctx = Ctx { pd, b };
    let mut rng = stream_rng(seed ^ hash_id(&check.id), index);
    let args = Args::from_vec(sample_vectors(&pd.geom, check.class, 6, &mut rng));
    let bal = (check.eval)(&ctx, &args)?;
    Ok(Outcome::Value { abs: bal.abs(), rel: bal.rel(), scale: bal.scale() })
}

/// Runs `checks` on `settings.samples` points.
pub fn run_checks(settings: &Settings, checks: &[&IdentityCheck]) -> Result<Vec<CheckResult>> {
    let model = settings.model;
    let runnable: Vec<bool> = checks.iter().map(|c| model.is_chart() || c.backend == BackendReq::Any).collect();
    let depth = checks
        .iter()
        .zip(&runnable)
        .filter(|(_, r)| **r)
        .map(|(c, _)| c.depth)
        .max()
        .unwrap_or(Depth::Riemann);

    let shared = if model.is_chart() {
        None
    } else {
        Some(PointData::new(model.geometry(settings.seed, 0, depth)?, &settings.presets)?)
    };

    // One row of outcomes per sample; a check that is not applicable anywhere
    // yields an error string in place of an outcome.
    let rows: Vec<Vec<std::result::Result<Outcome, String>>> = (0..settings.samples as u64)
        .into_par_iter()
        .map(|i| -> Result<Vec<std::result::Result<Outcome, String>>> {
            let owned;
            let pd = match &shared {
                Some(pd) => pd,
                None => {
                    owned = PointData::new(model.geometry(settings.seed, i, depth)?, &settings.presets)?;
                    &owned
                }
            };
            checks
                .iter()
                .zip(&runnable)
                .map(|(c, &run)| {
                    if !run {
                        return Ok(Ok(Outcome::Skipped));
                    }
                    match evaluate_at(c, pd, settings.seed, i) {
                        Ok(o) => Ok(Ok(o)),
                        Err(Error::NotApplicable(msg)) => Ok(Err(msg)),
                        Err(e) => Err(e),
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    Ok(checks
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let base = match c.expectation {
                Expectation::MustHold => settings.tol_musthold,
                _ => settings.tol_claim,
            };
            let tolerance = c.tolerance(base);
            let mut result = CheckResult {
                id: c.id.clone(),
                eq: c.eq.to_string(),
                class: c.class,
                expectation: c.expectation,
                samples: settings.samples,
                max_abs: None,
                max_rel: None,
                scale: None,
                tolerance,
                verdict: Verdict::NotApplicable,
                seed: settings.seed,
                note: None,
            };
            let (mut abs, mut rel, mut scale) = (0.0f64, 0.0f64, 0.0f64);
            for row in &rows {
                match row[k] {
                    Ok(Outcome::Value { abs: a, rel: r, scale: s }) => {
                        abs = abs.max(a);
                        rel = rel.max(r);
                        scale = scale.max(s);
                    }
                    Ok(Outcome::Skipped) => {
                        result.note = Some("needs the chart backend".into());
                        return result;
                    }
                    Err(ref msg) => {
                        result.note = Some(msg.clone());
                        return result;
                    }
                }
            }
            result.max_abs = finite(abs);
            result.max_rel = finite(rel);
            result.scale = finite(scale);
            result.verdict = Verdict::of(c.expectation, rel <= tolerance);
            result
        })
        .collect())
}

/// Runs a single registered check with default tolerances.
pub fn evaluate_identity(id: &str, model: Model, samples: usize, seed: u64) -> Result<CheckResult> {
    let check = find(id)?;
    let settings = Settings::new(model, samples, seed)?;
    Ok(run_checks(&settings, &[check])?.remove(0))
}
