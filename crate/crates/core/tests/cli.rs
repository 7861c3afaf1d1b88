use std::process::Command;

use blowuplab::cli::{run_with_env, EXIT_DISAGREEMENT, EXIT_JACOBI, EXIT_PARSE, EXIT_USAGE};

const BIN: &str = env!("CARGO_BIN_EXE_blowuplab");

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> blowuplab::cli::Outcome {
    let mut v = vec!["blowuplab"];
    v.extend_from_slice(args);
    run_with_env(v, None)
}

#[test]
fn binary_exit_codes() {
    let ok = Command::new(BIN).args(["analyze", "--catalog", "so3", "--samples", "10"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("LiftsAsDiracOnly"));

    let parse = Command::new(BIN).args(["analyze", "--input", &fixture("float_value.toml")]).output().unwrap();
    assert_eq!(parse.status.code(), Some(EXIT_PARSE));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("line 5"));

    let jacobi = Command::new(BIN).args(["analyze", "--input", &fixture("jacobi_violation.toml")]).output().unwrap();
    assert_eq!(jacobi.status.code(), Some(EXIT_JACOBI));
    assert!(String::from_utf8_lossy(&jacobi.stderr).contains("(1,2,3)"));

    let usage = Command::new(BIN).args(["analyze", "--catalog", "so3", "--samples", "0"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));

    let help = Command::new(BIN).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}

#[test]
fn seed_environment_variable_replaces_default() {
    let args = ["analyze", "--catalog", "heis3", "--format", "machine", "--samples", "5"];
    let with_env = Command::new(BIN).args(args).env("BLOWUPLAB_SEED", "42").output().unwrap();
    let explicit = Command::new(BIN).args(args).arg("--seed").arg("42").env_remove("BLOWUPLAB_SEED").output().unwrap();
    assert_eq!(with_env.stdout, explicit.stdout);
    let flag_wins = Command::new(BIN).args(args).args(["--seed", "42"]).env("BLOWUPLAB_SEED", "7").output().unwrap();
    assert_eq!(flag_wins.stdout, explicit.stdout);
    let bad = Command::new(BIN).args(args).env("BLOWUPLAB_SEED", "seven").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

#[test]
fn missing_input_file_is_an_io_error() {
    let o = run(&["analyze", "--input", "/nonexistent/algebra.toml"]);
    assert_eq!(o.code, EXIT_PARSE);
    assert!(o.stderr.contains("/nonexistent/algebra.toml"));
}

#[test]
fn source_flags_are_exclusive() {
    assert_eq!(run(&["analyze", "--catalog", "so3", "--input", "x.toml"]).code, EXIT_USAGE);
    assert_eq!(run(&["crosscheck"]).code, EXIT_USAGE);
}

#[test]
fn f_only_for_the_bundle() {
    assert_eq!(run(&["analyze", "--catalog", "so3", "--f", "y1"]).code, EXIT_USAGE);
    assert_eq!(run(&["analyze", "--catalog", "scaled_so3_bundle", "--f", "x1"]).code, EXIT_USAGE);
    let o = run(&["analyze", "--catalog", "scaled_so3_bundle", "--f", "y1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("DoesNotLift"));
    assert!(o.stdout.contains("Falsified at divisor point"));
}

#[test]
fn spinor_single_chart() {
    let o = run(&["spinor", "--catalog", "so3", "--chart", "2", "--format", "machine"]);
    assert_eq!(o.code, 0);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["charts"].as_array().unwrap().len(), 1);
    assert_eq!(v["charts"][0]["chart"], 2);
    assert_eq!(v["charts"][0]["certificate"]["order"], 1);
    assert!(v["spinor_order"].is_null());
}

#[test]
fn spinor_on_bundle_uses_zero_section_charts() {
    let o = run(&["spinor", "--catalog", "scaled_so3_bundle", "--f", "0", "--format", "machine"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["charts"].as_array().unwrap().len(), 3);
    assert_eq!(v["spinor_order"]["kind"], "Constant");
    assert_eq!(v["spinor_order"]["order"], 2);
}

#[test]
fn crosscheck_table() {
    let o = run(&["crosscheck", "--catalog", "sl2", "--samples", "12"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("0 line violations, 0 rank/orbit violations"));
    assert_eq!(run(&["crosscheck", "--catalog", "scaled_so3_bundle"]).code, EXIT_USAGE);
}

#[test]
fn catalog_listing_and_filters() {
    let o = run(&["catalog", "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let names: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    for n in ["so3", "sl2", "heis3", "abelian6", "diagonal_affine5", "scaled_so3_bundle"] {
        assert!(names.contains(&n), "{n}");
    }
    let o = run(&["catalog", "--filter", "name=diagonal", "--filter", "dim=4", "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 1);
    assert_eq!(v["entries"][0]["name"], "diagonal_affine3");
    assert_eq!(run(&["catalog", "--filter", "dim=three"]).code, EXIT_USAGE);
}

#[test]
fn input_documents_analyze_like_catalog() {
    let a = run(&["analyze", "--input", &fixture("so3.toml"), "--samples", "10", "--format", "machine"]);
    let b = run(&["analyze", "--catalog", "so3", "--samples", "10", "--format", "machine"]);
    assert_eq!(a.code, 0);
    let va: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    let vb: serde_json::Value = serde_json::from_str(&b.stdout).unwrap();
    assert_eq!(va["verdict"], vb["verdict"]);
    assert_eq!(va["charts"], vb["charts"]);
}

#[test]
fn disagreement_code_is_reserved() {
    // catalog metadata contradicting the computed verdict is an internal disagreement
    let dir = std::env::temp_dir().join("blowuplab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("mislabelled.toml");
    let text = std::fs::read_to_string(fixture("so3.toml")).unwrap().replace("LiftsAsDiracOnly", "LiftsAsPoisson");
    std::fs::write(&path, text).unwrap();
    let o = run(&["analyze", "--input", path.to_str().unwrap(), "--samples", "5"]);
    assert_eq!(o.code, EXIT_DISAGREEMENT);
    assert!(o.stdout.contains("DISAGREE"));
}
