//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use sasakian::lab::{curvature_endo, derive_tensor, find, registry, run_checks, BackendReq, CheckResult, IdentityCheck, Model, Settings, Verdict};
use sasakian::manifolds::sampling::stream_rng;
use sasakian::manifolds::{adapted_frame, darboux_geometry, express_in_frame, sample_point, sample_vectors, space_form_geometry, InputClass};

type Outcome = Result<String, String>;

fn run(model: Model, samples: usize, ids: &[&str]) -> Vec<CheckResult> {
    let settings = Settings::new(model, samples, 42).unwrap();
    let checks: Vec<&IdentityCheck> = ids.iter().map(|id| find(id).unwrap()).collect();
    run_checks(&settings, &checks).unwrap()
}

fn require(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn worst(results: &[CheckResult], f: impl Fn(&CheckResult) -> Option<f64>) -> f64 {
    results.iter().map(|r| f(r).unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
}

fn axiom_suite() -> Outcome {
    let ids: Vec<&str> = registry()
        .iter()
        .filter(|c| c.id.starts_with("AX-") || c.id.starts_with("SAS-"))
        .map(|c| c.id.as_str())
        .collect();
    let start = Instant::now();
    let mut rel = 0.0f64;
    for m in 1..=3 {
        let results = run(Model::Darboux { m }, 100, &ids);
        for r in &results {
            require(r.verdict == Verdict::Pass, format!("{} on m={m}: {}", r.id, r.verdict.label()))?;
        }
        rel = rel.max(worst(&results, |r| r.max_rel));
    }
    let elapsed = start.elapsed();
    require(rel <= 1e-9, format!("max_rel {rel:.2e}"))?;
    require(elapsed <= Duration::from_secs(30), format!("took {elapsed:?}"))?;
    Ok(format!("{} checks x m=1..3, max_rel {rel:.1e}, {:.1}s", ids.len(), elapsed.as_secs_f64()))
}

fn ricci_along_xi() -> Outcome {
    let mut err = 0.0f64;
    for m in 1..=3 {
        let n1 = (2 * m) as f64;
        let mut geoms = vec![space_form_geometry(m, 1.0).unwrap(), space_form_geometry(m, -3.0).unwrap(), space_form_geometry(m, 2.5).unwrap()];
        for i in 0..5 {
            geoms.push(darboux_geometry(m, &sample_point(7, i, 2 * m + 1)).unwrap());
        }
        for geom in &geoms {
            let xi = geom.xi_vec();
            err = err.max((geom.s(&xi, &xi) - n1).abs());
            let mut rng = stream_rng(11, m as u64);
            for x in sample_vectors(geom, InputClass::Arbitrary, 6, &mut rng) {
                err = err.max((geom.s(&x, &xi) - n1 * geom.eta_of(&x)).abs());
            }
        }
        for model in [Model::Darboux { m }, Model::Spaceform { m, c: -3.0 }] {
            let r = &run(model, 100, &["SAS-2.10"])[0];
            require(r.verdict == Verdict::Pass, format!("SAS-2.10 on {model:?}"))?;
            err = err.max(r.max_rel.unwrap());
        }
    }
    require(err <= 1e-9, format!("residual {err:.2e}"))?;
    Ok(format!("both backends, n=3,5,7, max residual {err:.1e}"))
}

fn cross_backend() -> Outcome {
    let mut err = 0.0f64;
    for m in 1..=3 {
        let model = space_form_geometry(m, -3.0).unwrap();
        for i in 0..20 {
            let geom = darboux_geometry(m, &sample_point(2024, i, 2 * m + 1)).unwrap();
            let f = adapted_frame(&geom).unwrap();
            let r = express_in_frame(&geom.riemann, &f).unwrap();
            let s = express_in_frame(&geom.ricci, &f).unwrap();
            err = err.max(r.max_diff(&model.riemann).unwrap());
            err = err.max(s.max_diff(&model.ricci).unwrap());
            err = err.max((geom.scalar - model.scalar).abs());
        }
    }
    require(err <= 1e-8, format!("residual {err:.2e}"))?;
    Ok(format!("20 points x m=1..3 against M(-3), max residual {err:.1e}"))
}

fn ricci_identity() -> Outcome {
    let mut rel = 0.0f64;
    for m in 1..=3 {
        for i in 0..20 {
            let geom = darboux_geometry(m, &sample_point(99, i, 2 * m + 1)).unwrap();
            let mut rng = stream_rng(5, i);
            let v = sample_vectors(&geom, InputClass::Arbitrary, 2, &mut rng);
            let comm = geom.commutator().unwrap().contract_vector(0, v[0].as_slice()).unwrap().contract_vector(0, v[1].as_slice()).unwrap();
            let derived = derive_tensor(&geom, &v[0], &v[1], &geom.riemann).unwrap();
            let scale = 1.0 + curvature_endo(&geom, &v[0], &v[1]).max_norm() * geom.riemann.max_norm();
            rel = rel.max(comm.max_diff(&derived).unwrap() / scale);
        }
        let r = &run(Model::Darboux { m }, 20, &["ENG-RICCI-ID"])[0];
        require(r.verdict == Verdict::Pass, format!("ENG-RICCI-ID on m={m}"))?;
        rel = rel.max(r.max_rel.unwrap());
    }
    require(rel <= 1e-7, format!("relative residual {rel:.2e}"))?;
    Ok(format!("20 points x m=1..3, max relative residual {rel:.1e}"))
}

fn bianchi() -> Outcome {
    let mut abs = 0.0f64;
    for m in 1..=2 {
        let results = run(Model::Darboux { m }, 100, &["ENG-BIANCHI1", "ENG-BIANCHI2"]);
        abs = abs.max(worst(&results, |r| r.max_abs));
    }
    require(abs <= 1e-10, format!("residual {abs:.2e}"))?;
    Ok(format!("first and second identities, m=1,2, max residual {abs:.1e}"))
}

fn derivation_algebra() -> Outcome {
    let ids = ["ENG-DERIV-G", "ENG-DERIV-CONTRACT", "ENG-SKEW"];
    let mut abs = 0.0f64;
    for model in [Model::Darboux { m: 1 }, Model::Darboux { m: 2 }, Model::Spaceform { m: 2, c: -3.0 }] {
        let results = run(model, 100, &ids);
        abs = abs.max(worst(&results, |r| r.max_abs));
    }
    require(abs <= 1e-10, format!("residual {abs:.2e}"))?;
    Ok(format!("R·g, contraction, skew-adjointness over 100 samples, max residual {abs:.1e}"))
}

const SEMISYMMETRY_PREFIXES: [&str; 12] =
    ["DEF-3.5", "RIC-5.1", "DEF-5.7", "DER-5.10", "CHR-5.13", "CNF-5.14", "DEF-5.20", "B-5.21", "COND-5.24", "COND-5.25", "COR-SEMI", "PRF-3.10"];

fn constant_curvature() -> Outcome {
    let ids: Vec<&str> = registry()
        .iter()
        .filter(|c| c.backend == BackendReq::Any && SEMISYMMETRY_PREFIXES.iter().any(|p| c.id.starts_with(p)))
        .map(|c| c.id.as_str())
        .collect();
    let mut abs = 0.0f64;
    let mut evaluated = 0;
    for m in 1..=3 {
        for r in run(Model::Spaceform { m, c: 1.0 }, 100, &ids) {
            if r.verdict == Verdict::NotApplicable {
                let note = r.note.clone().unwrap_or_default();
                require(note.contains("n > 3") || note.contains("b0 + (n-2)b1"), format!("{} N/A on m={m}: {note}", r.id))?;
                continue;
            }
            require(matches!(r.verdict, Verdict::Holds | Verdict::Zero), format!("{} on m={m}: {}", r.id, r.verdict.label()))?;
            abs = abs.max(r.max_abs.unwrap());
            evaluated += 1;
        }
    }
    // Converse: a model that is not of constant curvature 1 is not semisymmetric.
    for model in [Model::Darboux { m: 2 }, Model::Spaceform { m: 2, c: -3.0 }] {
        let r = run(model, 20, &["COR-SEMI", "H-4.5"]);
        require(r.iter().all(|r| r.verdict == Verdict::Nonzero), format!("converse on {model:?}"))?;
    }
    require(abs <= 1e-10, format!("residual {abs:.2e}"))?;
    Ok(format!("{evaluated} residuals on M(1), m=1..3, max {abs:.1e}; converse nonzero on M(-3)"))
}

fn eta_component() -> Outcome {
    let mut abs = 0.0f64;
    let models = [
        Model::Darboux { m: 1 },
        Model::Darboux { m: 2 },
        Model::Darboux { m: 3 },
        Model::Spaceform { m: 2, c: 1.0 },
        Model::Spaceform { m: 2, c: -3.0 },
        Model::Spaceform { m: 3, c: 4.0 },
    ];
    for model in models {
        let r = &run(model, 100, &["PRF-3.6-3.10"])[0];
        abs = abs.max(r.max_abs.unwrap_or(f64::INFINITY));
    }
    require(abs <= 1e-10, format!("residual {abs:.2e}"))?;
    Ok(format!("both backends, max |η((R·R)(X,Y)ξ)| {abs:.1e}"))
}

fn second_derivative_diagnostic() -> Outcome {
    let mut term = 0.0f64;
    let mut gap = 0.0f64;
    for m in 1..=3 {
        let r = run(Model::Darboux { m }, 100, &["PRF-3.7", "PRF-3.7-TERM"]);
        require(matches!(r[0].verdict, Verdict::Zero | Verdict::Nonzero), "PRF-3.7 verdict not recorded")?;
        require(r[1].verdict == Verdict::Pass, format!("PRF-3.7-TERM on m={m}"))?;
        gap = gap.max(r[0].max_rel.unwrap());
        term = term.max(r[1].max_rel.unwrap());
    }
    require(term <= 1e-8, format!("difference minus (∇_V R)(X,Y)φU: {term:.2e}"))?;
    let verdict = if gap <= 1e-9 { "ZERO" } else { "NONZERO" };
    Ok(format!("literal vs tensorial gap {gap:.2e} ({verdict}), matches (∇_V R)(X,Y)φU to {term:.1e}"))
}

fn strip_timestamp(s: &str) -> String {
    s.lines().filter(|l| !l.trim_start().starts_with("\"timestamp\"")).collect::<Vec<_>>().join("\n")
}

fn determinism_and_coverage() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_sasakian-verify");
    let dir = std::env::temp_dir().join(format!("sasakian-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let out = dir.join("report.json");
    let mut reports = Vec::new();
    let mut slowest = Duration::ZERO;
    for _ in 0..2 {
        let start = Instant::now();
        let status = Command::new(bin)
            .args(["verify", "--manifold", "darboux", "--m", "2", "--ids", "all", "--experiments", "all", "--samples", "100", "--seed", "42", "--out"])
            .arg(&out)
            .status()
            .map_err(|e| e.to_string())?;
        slowest = slowest.max(start.elapsed());
        require(status.code() == Some(0), format!("verify exited with {status}"))?;
        reports.push(std::fs::read_to_string(&out).map_err(|e| e.to_string())?);
    }
    let _ = std::fs::remove_dir_all(&dir);
    require(strip_timestamp(&reports[0]) == strip_timestamp(&reports[1]), "reports differ")?;
    let json: serde_json::Value = serde_json::from_str(&reports[0]).map_err(|e| e.to_string())?;
    require(json["gate"] == serde_json::Value::Bool(true), "gate is false")?;
    require(slowest <= Duration::from_secs(120), format!("verify took {slowest:?}"))?;

    let list = Command::new(bin).arg("list").output().map_err(|e| e.to_string())?;
    let text = String::from_utf8(list.stdout).map_err(|e| e.to_string())?;
    let sections = [(2, 12), (3, 18), (4, 8), (5, 27)];
    let mut count = 0;
    for (s, last) in sections {
        for k in 1..=last {
            let label = format!("({s}.{k})");
            require(text.lines().any(|l| l.split_whitespace().nth(1) == Some(label.as_str())), format!("{label} missing from list"))?;
            count += 1;
        }
    }
    for c in registry() {
        let rows = text.lines().filter(|l| l.split_whitespace().next() == Some(c.id.as_str())).count();
        require(rows == 1, format!("{} listed {rows} times", c.id))?;
    }
    Ok(format!("identical reports modulo timestamp, {count} equations covered, verify m=2 in {:.1}s", slowest.as_secs_f64()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("axiom suite", axiom_suite),
        ("Ricci tensor along ξ", ricci_along_xi),
        ("cross-backend oracle", cross_backend),
        ("Ricci identity oracle", ricci_identity),
        ("Bianchi identities", bianchi),
        ("derivation algebra", derivation_algebra),
        ("constant curvature model", constant_curvature),
        ("η-component invariant", eta_component),
        ("second-derivative diagnostic", second_derivative_diagnostic),
        ("determinism and coverage", determinism_and_coverage),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
