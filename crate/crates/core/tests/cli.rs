use std::path::PathBuf;
use std::process::Command;

use gauduchon::cli::{run, EXIT_INPUT, EXIT_OK, EXIT_VALIDATION, EXIT_VERIFICATION};
use gauduchon::report::{ReportDocument, Verdict};

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel).display().to_string()
}

fn gauduchon(args: &[&str]) -> gauduchon::cli::Outcome {
    let mut full = vec!["gauduchon".to_string()];
    full.extend(args.iter().map(|s| s.to_string()));
    run(full)
}

#[test]
fn validate_accepts_every_fixture() {
    for f in ["torus2", "torus3", "iwasawa", "hopf"] {
        let o = gauduchon(&["validate", &data(&format!("fixtures/{f}.json"))]);
        assert_eq!(o.code, EXIT_OK, "{f}: {o:?}");
    }
}

#[test]
fn validate_names_the_nijenhuis_failure() {
    let o = gauduchon(&["validate", &data("tests/data/hopf_sheared_j.json"), "--format", "json"]);
    assert_eq!(o.code, EXIT_VALIDATION);
    let doc: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(doc["valid"], false);
    let names: Vec<&str> = doc["failures"].as_array().unwrap().iter().map(|f| f["check"].as_str().unwrap()).collect();
    assert!(names.contains(&"nijenhuis"), "{names:?}");
}

#[test]
fn validate_rejects_a_02_term() {
    let o = gauduchon(&["validate", &data("tests/data/iwasawa_02_term.json")]);
    assert_eq!(o.code, EXIT_VALIDATION);
    assert!(o.stdout.contains("integrability"));
}

#[test]
fn unreadable_and_malformed_inputs_exit_three() {
    let o = gauduchon(&["validate", &data("tests/data/not_json.json")]);
    assert_eq!(o.code, EXIT_INPUT);
    assert!(o.stderr.contains("line"), "{}", o.stderr);
    assert_eq!(gauduchon(&["report", &data("tests/data/missing.json")]).code, EXIT_INPUT);
}

#[test]
fn report_json_on_torus() {
    let o = gauduchon(&["report", &data("fixtures/torus2.json"), "--s", "0,1,2", "--format", "json"]);
    assert_eq!(o.code, EXIT_OK);
    let doc = ReportDocument::from_json(&o.stdout).unwrap();
    assert!(doc.torsion.kahler);
    assert_eq!(doc.verdict, Verdict::Consistent);
    assert!(doc.rows.iter().all(|r| r.kahler_like && r.rho_flat == "0"));
}

#[test]
fn report_on_hopf_exempts_bismut() {
    let o = gauduchon(&["report", &data("fixtures/hopf.json"), "--s", "2", "--format", "json"]);
    let doc = ReportDocument::from_json(&o.stdout).unwrap();
    assert_eq!(doc.rows[0].rho_flat, "0");
    assert_eq!(doc.rows[0].label.as_deref(), Some("Bismut"));
    assert!(!doc.rows[0].violation);
    assert_eq!(doc.verdict, Verdict::Consistent);
}

#[test]
fn report_is_deterministic() {
    let args = ["report", &data("fixtures/iwasawa.json"), "--format", "json"];
    assert_eq!(gauduchon(&args).stdout, gauduchon(&args).stdout);
}

#[test]
fn verify_lemmas_small_run_passes() {
    let o = gauduchon(&["verify-lemmas", "--n", "2", "--draws", "1", "--seed", "0"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
}

#[test]
fn verify_lemmas_catches_a_flipped_b() {
    let o = gauduchon(&["verify-lemmas", "--n", "2", "--draws", "1", "--tamper", "b", "--format", "json"]);
    assert_eq!(o.code, EXIT_VERIFICATION);
    let doc: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let item = doc["checks"].as_array().unwrap().iter().find(|c| c["name"] == "norm-derivative 3").unwrap();
    assert_eq!(item["passed"], false);
    assert!(item["detail"].as_str().unwrap().starts_with("draw 0"));
}

#[test]
fn verify_system_passes_and_tamper_fails() {
    let o = gauduchon(&["verify-system"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("5/5 passed"));
    assert!(o.stdout.contains("{0:8, 1/2:3, 2/3:2, 4/5:1, 1:3, 2:3}"));
    assert_eq!(gauduchon(&["verify-system", "--tamper", "entry:2,1"]).code, EXIT_VERIFICATION);
}

#[test]
fn catalog_lists_all_fixtures() {
    let o = gauduchon(&["catalog", "--format", "json"]);
    assert_eq!(o.code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let entries = doc.as_array().unwrap();
    let find = |name: &str| entries.iter().find(|e| e["name"] == name).unwrap();
    let labels = |name: &str| -> Vec<String> {
        find(name)["expectations"].as_array().unwrap().iter().map(|x| x["expectation"].as_str().unwrap().to_string()).collect()
    };
    assert_eq!(labels("torus2"), ["kahler", "balanced", "all-flat"]);
    assert_eq!(labels("iwasawa"), ["non-kahler", "balanced", "chern-flat"]);
    assert_eq!(labels("hopf"), ["non-kahler", "bismut-flat"]);
    assert!(entries.iter().all(|e| e["expectations"].as_array().unwrap().iter().all(|x| x["holds"] == true)));
}

#[test]
fn binary_propagates_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_gauduchon");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["validate", &data("fixtures/torus2.json")]), Some(EXIT_OK));
    assert_eq!(status(&["validate", &data("tests/data/hopf_sheared_j.json")]), Some(EXIT_VALIDATION));
    assert_eq!(status(&["validate", &data("tests/data/not_json.json")]), Some(EXIT_INPUT));
    assert_eq!(status(&["verify-lemmas", "--n", "2", "--draws", "1", "--tamper", "a"]), Some(EXIT_VERIFICATION));
}
