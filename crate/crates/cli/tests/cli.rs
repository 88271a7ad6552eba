use std::process::{Command, Output};

use grfold::folding::EquationJson;
use grfold::{Seed, SeedJson};
use serde_json::Value;

fn grfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grfold"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_error(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    v["error"].clone()
}

#[test]
fn fold_gr49_prints_schedule_and_equations() {
    let out = grfold(&["fold", "--k", "4", "--n", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let ids: Vec<u64> = doc["schedule"]["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(ids, [9, 10, 11, 12, 5, 6, 7, 1, 2, 9, 10, 5]);
    let eqs: Vec<EquationJson> = serde_json::from_value(doc["equations"].clone()).unwrap();
    let forms: Vec<_> = eqs.iter().map(|e| e.to_form().unwrap()).collect();
    assert!(grfold::folding::equation_sets_equal(
        &forms,
        &grfold::closed_form_equations(9).unwrap()
    ));
    let seed: SeedJson = serde_json::from_value(doc["seed"].clone()).unwrap();
    assert_eq!(Seed::from_json(&seed).unwrap(), grfold::foldable_seed(4, 9).unwrap());
}

#[test]
fn double_mutation_returns_initial_seed() {
    let mutated = grfold(&["mutate", "--k", "4", "--n", "9", "--sequence", "9,9"]);
    assert_eq!(mutated.status.code(), Some(0));
    let initial = grfold(&["seed", "--k", "4", "--n", "9"]);
    let doc = stdout_json(&mutated);
    assert_eq!(doc["seed"], stdout_json(&initial));
    assert_eq!(doc["exchanges"].as_array().unwrap().len(), 2);
}

#[test]
fn positions_and_ids_agree() {
    let by_id = grfold(&["mutate", "--k", "4", "--n", "9", "--sequence", "9,10"]);
    let by_pos = grfold(&["mutate", "--k", "4", "--n", "9", "--positions", "1,3;(2,3)"]);
    assert_eq!(by_id.status.code(), Some(0));
    assert_eq!(by_id.stdout, by_pos.stdout);
}

#[test]
fn seed_json_round_trips_through_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seed.json");
    let path_str = path.to_str().unwrap();
    let written = grfold(&["mutate", "--k", "6", "--n", "10", "--sequence", "5,6", "--out", path_str]);
    assert_eq!(written.status.code(), Some(0));
    assert!(written.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let doc: Value = serde_json::from_str(&text).unwrap();
    let parsed: SeedJson = serde_json::from_value(doc["seed"].clone()).unwrap();
    assert_eq!(Seed::from_json(&parsed).unwrap().to_json(), parsed);

    // Undo the two mutations starting from the file.
    let undone = grfold(&["mutate", "--input", path_str, "--sequence", "6,5"]);
    assert_eq!(undone.status.code(), Some(0));
    let initial = grfold(&["seed", "--k", "6", "--n", "10"]);
    assert_eq!(stdout_json(&undone)["seed"], stdout_json(&initial));
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["fold", "--k", "6", "--n", "11"][..],
        &["verify-kinematics", "--n", "7", "--dim", "3", "--trials", "4", "--rng-seed", "9"][..],
    ] {
        let a = grfold(args);
        let b = grfold(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn verify_kinematics_d3_passes() {
    let out = grfold(&[
        "verify-kinematics",
        "--n",
        "7",
        "--dim",
        "3",
        "--trials",
        "10",
        "--tol",
        "1e-8",
        "--rng-seed",
        "42",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["pass"], true);
    assert_eq!(report["trials"], 10);
    assert!(report["identities"]["folding_family"]["max"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn impossible_tolerance_is_a_verification_failure() {
    let out = grfold(&["verify-kinematics", "--n", "6", "--trials", "3", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["pass"], false);
    assert_eq!(stderr_error(&out)["kind"], "verification");
}

#[test]
fn verify_seed_gr49_reports_drawn_label_failure() {
    let out = grfold(&["verify-seed", "--k", "4", "--n", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["pass"], true);
    assert_eq!(report["initial"]["drawn_discrepancies"].as_array().unwrap().len(), 2);
    assert!(report["drawn_labels"]["error"].is_string());
    assert_eq!(report["equations"]["matches_closed_form"], true);
}

#[test]
fn literal_schedule_is_not_foldable_for_gr4_10() {
    let out = grfold(&["fold", "--k", "4", "--n", "10", "--variant", "literal"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["report"]["square_mesh"], false);
}

#[test]
fn verify_exchange_along_schedule() {
    let out = grfold(&["verify-exchange", "--k", "6", "--n", "10", "--trials", "2", "--rng-seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["pass"], true);
    assert!(report["exchanges"].as_u64().unwrap() > 0);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["fold", "--k", "3", "--n", "9"][..],
        &["mutate", "--k", "4", "--n", "9", "--sequence", "99"][..],
        &["mutate", "--k", "4", "--n", "9", "--sequence", "13"][..],
        &["mutate", "--k", "4", "--n", "9"][..],
        &["mutate", "--k", "4", "--n", "9", "--sequence", "1", "--positions", "1,1"][..],
        &["seed", "--k", "4"][..],
        &["verify-kinematics", "--n", "7", "--dim", "5"][..],
        &["export-dot", "--fold"][..],
        &["frobnicate"][..],
    ] {
        let out = grfold(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(stderr_error(&out)["kind"], "usage", "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn dot_export_pins_grid_positions() {
    let out = grfold(&["export-dot", "--k", "4", "--n", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("pos=\"2,-2!\""));
    assert_eq!(dot.matches("shape=box").count(), 9);
    let via_format = grfold(&["fold", "--k", "4", "--n", "9", "--format", "dot"]);
    let folded = grfold(&["export-dot", "--fold", "--k", "4", "--n", "9"]);
    assert_eq!(via_format.stdout, folded.stdout);
}
