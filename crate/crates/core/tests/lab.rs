use std::collections::HashSet;

use sasakian::lab::{
    evaluate_identity, find, registry, run_checks, run_experiment, BackendReq, Expectation, IdentityCheck, Model, Settings,
    Verdict, EXPERIMENTS,
};
use sasakian::report::{self, list_text, Manifold, Report, RunConfig};
use sasakian::Error;

const DARBOUX2: Model = Model::Darboux { m: 2 };
const UNIT: Model = Model::Spaceform { m: 2, c: 1.0 };

#[test]
fn ids_are_unique_and_resolvable() {
    let mut seen = HashSet::new();
    for c in registry() {
        assert!(seen.insert(c.id.clone()), "duplicate {}", c.id);
        assert_eq!(find(&c.id).unwrap().id, c.id);
    }
    assert!(matches!(find("NO-SUCH-ID"), Err(Error::UnknownId(_))));
}

#[test]
fn experiments_reference_registered_checks() {
    for e in EXPERIMENTS {
        find(e.hypothesis).unwrap();
        find(e.conclusion).unwrap();
    }
}

#[test]
fn axiom_check_passes() {
    let r = evaluate_identity("SAS-2.4", DARBOUX2, 100, 42).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert!(r.max_rel.unwrap() <= 1e-9);
    assert_eq!(r.samples, 100);
    assert_eq!(r.seed, 42);
}

#[test]
fn constant_curvature_one_satisfies_characterization() {
    let r = evaluate_identity("CHL-3.13", UNIT, 100, 42).unwrap();
    assert_eq!(r.verdict, Verdict::Zero);
    assert!(r.max_abs.unwrap() <= 1e-12);
    let r = evaluate_identity("DEF-3.5", UNIT, 100, 42).unwrap();
    assert_eq!(r.verdict, Verdict::Holds);
}

#[test]
fn not_applicable_cases() {
    let r = evaluate_identity("CNF-5.9", Model::Darboux { m: 1 }, 5, 42).unwrap();
    assert_eq!(r.verdict, Verdict::NotApplicable);
    assert!(r.max_abs.is_none());
    let r = evaluate_identity("SAS-2.8", UNIT, 5, 42).unwrap();
    assert_eq!(r.verdict, Verdict::NotApplicable);
    assert!(r.note.unwrap().contains("chart"));
    let r = evaluate_identity("COND-5.25/conformal", DARBOUX2, 5, 42).unwrap();
    assert_eq!(r.verdict, Verdict::NotApplicable);
}

#[test]
fn verdict_kinds_follow_expectation() {
    let settings = Settings::new(DARBOUX2, 10, 3).unwrap();
    let checks: Vec<&IdentityCheck> = registry().iter().collect();
    for (c, r) in checks.iter().zip(run_checks(&settings, &checks).unwrap()) {
        let ok = match c.expectation {
            Expectation::MustHold => matches!(r.verdict, Verdict::Pass | Verdict::Fail | Verdict::NotApplicable),
            Expectation::Claim => matches!(r.verdict, Verdict::Holds | Verdict::Violated | Verdict::NotApplicable),
            Expectation::Diagnostic => matches!(r.verdict, Verdict::Zero | Verdict::Nonzero | Verdict::NotApplicable),
        };
        assert!(ok, "{} got {}", c.id, r.verdict.label());
        if c.expectation == Expectation::MustHold {
            assert_ne!(r.verdict, Verdict::Fail, "{}", c.id);
        }
    }
}

#[test]
fn chart_only_checks_are_skipped_on_the_space_form() {
    let settings = Settings::new(UNIT, 3, 1).unwrap();
    let checks: Vec<&IdentityCheck> = registry().iter().filter(|c| c.backend == BackendReq::ChartOnly).collect();
    for r in run_checks(&settings, &checks).unwrap() {
        assert_eq!(r.verdict, Verdict::NotApplicable, "{}", r.id);
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let settings = Settings::new(DARBOUX2, 12, 9).unwrap();
    let checks: Vec<&IdentityCheck> = ["DEF-3.5", "ENG-RICCI-ID", "ALG-4.7"].iter().map(|id| find(id).unwrap()).collect();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let many = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = single.install(|| run_checks(&settings, &checks).unwrap());
    let b = many.install(|| run_checks(&settings, &checks).unwrap());
    assert_eq!(a, b);
}

#[test]
fn seed_changes_samples() {
    let a = evaluate_identity("DEF-3.5", DARBOUX2, 5, 1).unwrap();
    let b = evaluate_identity("DEF-3.5", DARBOUX2, 5, 2).unwrap();
    assert_ne!(a.max_abs, b.max_abs);
}

#[test]
fn ricci_experiment_on_unit_space_form() {
    let settings = Settings::new(UNIT, 20, 42).unwrap();
    let r = run_experiment(&settings, "EXP-T5.1").unwrap();
    assert_eq!(r.hypothesis_holds, Some(true));
    assert_eq!(r.conclusion_holds, Some(true));
    assert_eq!(r.consistent, Some(true));
}

#[test]
fn horizontal_hypothesis_of_the_constant_curvature_theorem() {
    let settings = Settings::new(DARBOUX2, 20, 42).unwrap();
    let r = run_experiment(&settings, "EXP-T3.2").unwrap();
    assert_eq!(r.hypothesis_holds, Some(true));
    assert_eq!(r.conclusion_holds, Some(false));
    assert_eq!(r.consistent, Some(false));
    assert!(matches!(run_experiment(&settings, "EXP-NOPE"), Err(Error::UnknownId(_))));
}

fn config(ids: &[&str]) -> RunConfig {
    RunConfig {
        manifold: Manifold::Darboux,
        m: 1,
        samples: 8,
        ids: ids.iter().map(|s| s.to_string()).collect(),
        experiments: vec!["EXP-T3.3".into()],
        ..Default::default()
    }
}

#[test]
fn report_round_trips_through_json() {
    let rep = report::run(&config(&["all"]), "2026-01-01T00:00:00Z").unwrap();
    assert!(rep.gate);
    assert_eq!(rep.summary.values().sum::<usize>(), registry().len());
    let back = Report::from_json(&rep.to_json().unwrap()).unwrap();
    assert_eq!(back, rep);
    let value: serde_json::Value = serde_json::from_str(&rep.to_json().unwrap()).unwrap();
    for key in ["id", "eq", "class", "samples", "max_abs", "max_rel", "scale", "verdict"] {
        assert!(value["checks"][0].get(key).is_some(), "missing {key}");
    }
    for key in ["id", "hypothesis_residual", "conclusion_residual", "consistent"] {
        assert!(value["experiments"][0].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn report_is_reproducible() {
    let a = report::run(&config(&["DEF-3.5", "SAS-2.4"]), "t").unwrap().to_json().unwrap();
    let b = report::run(&config(&["DEF-3.5", "SAS-2.4"]), "t").unwrap().to_json().unwrap();
    assert_eq!(a, b);
}

#[test]
fn gate_fails_on_must_hold_failure() {
    let mut cfg = config(&["SAS-2.4"]);
    cfg.tol_musthold = 1e-300;
    let rep = report::run(&cfg, "t").unwrap();
    assert_eq!(rep.checks[0].verdict, Verdict::Fail);
    assert!(!rep.gate);
    // Claims never affect the gate.
    let mut cfg = config(&["DEF-3.5"]);
    cfg.m = 2;
    let rep = report::run(&cfg, "t").unwrap();
    assert_eq!(rep.checks[0].verdict, Verdict::Violated);
    assert!(rep.gate);
}

#[test]
fn config_is_validated_before_running() {
    assert!(matches!(report::run(&config(&["SAS-2.4", "NOPE"]), "t"), Err(Error::UnknownId(_))));
    let mut cfg = config(&["SAS-2.4"]);
    cfg.samples = 0;
    assert!(report::run(&cfg, "t").is_err());
    let mut cfg = config(&["SAS-2.4"]);
    cfg.m = 0;
    assert!(report::run(&cfg, "t").is_err());
    let mut cfg = config(&["SAS-2.4"]);
    cfg.manifold = Manifold::Spaceform;
    assert!(report::run(&cfg, "t").is_err());
    let mut cfg = config(&["SAS-2.4"]);
    cfg.experiments = vec!["EXP-NOPE".into()];
    assert!(report::run(&cfg, "t").is_err());
}

#[test]
fn text_report_has_one_row_per_check() {
    let rep = report::run(&config(&["SAS-2.4", "DEF-3.5"]), "t").unwrap();
    let text = rep.to_text();
    assert_eq!(text.lines().filter(|l| l.starts_with("SAS-2.4 ")).count(), 1);
    assert_eq!(text.lines().filter(|l| l.starts_with("DEF-3.5 ")).count(), 1);
    assert!(text.contains("gate: pass"));
}

#[test]
fn list_covers_every_equation() {
    let text = list_text();
    for (s, last) in [(2, 12), (3, 18), (4, 8), (5, 27)] {
        for k in 1..=last {
            let label = format!("({s}.{k})");
            assert!(text.lines().any(|l| l.split_whitespace().nth(1) == Some(label.as_str())), "{label}");
        }
    }
    assert_eq!(text.matches("out-of-scope: fibration").count(), 4);
}
