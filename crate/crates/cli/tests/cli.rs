use std::process::{Command, Output};

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sasakian-verify")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn unit_space_form_is_phi_semisymmetric() {
    let out = verify(&["verify", "--manifold", "spaceform", "--m", "2", "--c", "1.0", "--ids", "DEF-3.5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["checks"][0]["verdict"], "HOLDS");
    assert!(v["checks"][0]["max_abs"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn unknown_id_is_a_usage_error() {
    let out = verify(&["verify", "--ids", "NO-SUCH-ID"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("NO-SUCH-ID"));
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(verify(&["verify", "--manifold", "torus"]).status.code(), Some(2));
    assert_eq!(verify(&["verify", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(verify(&["verify", "--manifold", "spaceform", "--m", "1"]).status.code(), Some(2));
    assert_eq!(verify(&["verify", "--quasi", "1"]).status.code(), Some(2));
    assert_eq!(verify(&["bogus"]).status.code(), Some(2));
    assert_eq!(verify(&["--help"]).status.code(), Some(0));
}

#[test]
fn must_hold_failure_exits_one() {
    let out = verify(&["verify", "--ids", "SAS-2.4", "--tol-musthold", "1e-300", "--samples", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["gate"], false);
}

#[test]
fn unwritable_output_exits_two() {
    let out = verify(&["axioms", "--samples", "2", "--out", "/nonexistent-dir/report.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn axioms_runs_only_structure_checks() {
    let out = verify(&["axioms", "--m", "2", "--samples", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 15);
    for c in checks {
        let id = c["id"].as_str().unwrap();
        assert!(id.starts_with("AX-") || id.starts_with("SAS-"));
        assert_eq!(c["verdict"], "PASS", "{id}");
    }
}

#[test]
fn experiment_subcommand_reports_consistency() {
    let out = verify(&["experiment", "--ids", "EXP-T3.2,EXP-T5.1", "--m", "2", "--samples", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["checks"].as_array().unwrap().is_empty());
    let exps = v["experiments"].as_array().unwrap();
    assert_eq!(exps[0]["id"], "EXP-T3.2");
    assert_eq!(exps[0]["consistent"], false);
    assert_eq!(exps[1]["consistent"], true);
}

#[test]
fn text_format_and_list() {
    let out = verify(&["verify", "--ids", "SAS-2.4,DEF-3.5", "--format", "text", "--samples", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("SAS-2.4") && l.ends_with("PASS")));
    assert!(text.contains("gate: pass"));

    let out = verify(&["list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PRF-3.7-TERM"));
    assert!(text.contains("(3.1)"));
}

#[test]
fn custom_coefficients_are_echoed() {
    let out = verify(&["verify", "--ids", "B-5.21/custom", "--custom", "2,-0.5,0.25", "--samples", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["meta"]["config"]["custom"], serde_json::json!([2.0, -0.5, 0.25]));
}
