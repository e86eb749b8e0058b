//! Exit-code and error-reporting contract of the command-line interface:
//! 0 success, 1 domain error in the data, 2 usage or I/O error.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(relative: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(relative)
        .to_str()
        .unwrap()
        .to_string()
}

fn run_in(dir: &std::path::Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affectsense"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_in(std::path::Path::new("."), args)
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

#[test]
fn validate_bundled_definitions_exits_zero() {
    let output = run(&["validate", "--definitions", &fixture("definitions/daily_home.json")]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    for code in ["AG", "WD", "SF", "ED", "GS", "PIG", "MM"] {
        assert!(text.contains(&format!("ok {code}")), "missing {code} in: {text}");
    }
}

#[test]
fn validate_corrupted_weights_exits_one_with_violation_text() {
    let dir = tempfile::tempdir().unwrap();
    let good = std::fs::read_to_string(fixture("definitions/shopping.json")).unwrap();
    let corrupted = good.replace("0.32", "0.22");
    let path = dir.path().join("bad.json");
    std::fs::write(&path, corrupted).unwrap();

    let output = run(&["validate", "--definitions", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).contains("sum to 1.0"));
}

#[test]
fn validate_missing_file_exits_two() {
    let output = run(&["validate", "--definitions", "/nonexistent/defs.json"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn unknown_flags_exit_two() {
    let output = run(&["validate", "--nope"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn recognize_full_trace_emits_one_success_record() {
    let dir = tempfile::tempdir().unwrap();
    let events = "0,1,true,-\n10000,2,true,-\n20000,3,true,-\n30000,4,true,-\n40000,5,true,-\n";
    std::fs::write(dir.path().join("events.csv"), events).unwrap();

    let output = run_in(
        dir.path(),
        &[
            "recognize",
            "--definitions",
            &fixture("definitions/shopping.json"),
            "--events",
            "events.csv",
        ],
    );
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1);
    let record: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(record["code"], "GS");
    assert_eq!(record["outcome"], "Success");
    assert_eq!(record["score"], 1.0);
}

#[test]
fn recognize_empty_log_exits_zero_with_no_records() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("events.csv"), "").unwrap();
    let output = run_in(
        dir.path(),
        &[
            "recognize",
            "--definitions",
            &fixture("definitions/shopping.json"),
            "--events",
            "events.csv",
        ],
    );
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).is_empty());
}

#[test]
fn recognize_malformed_line_exits_one_naming_the_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("events.csv"), "0,1,true,-\n10,2,perhaps,-\n").unwrap();
    let output = run_in(
        dir.path(),
        &[
            "recognize",
            "--definitions",
            &fixture("definitions/shopping.json"),
            "--events",
            "events.csv",
        ],
    );
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("line 2"), "stderr: {}", stderr(&output));
}

#[test]
fn recognize_out_of_order_timestamps_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("events.csv"), "5000,1,true,-\n0,2,true,-\n").unwrap();
    let output = run_in(
        dir.path(),
        &[
            "recognize",
            "--definitions",
            &fixture("definitions/shopping.json"),
            "--events",
            "events.csv",
        ],
    );
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("precedes"));
}

#[test]
fn pipeline_requires_exactly_one_input_source() {
    let output = run(&[
        "pipeline",
        "--definitions",
        &fixture("definitions/appliance_usage.json"),
    ]);
    assert_eq!(output.status.code(), Some(2));

    let output = run(&[
        "pipeline",
        "--definitions",
        &fixture("definitions/appliance_usage.json"),
        "--events",
        "a.csv",
        "--scenario",
        "b.json",
    ]);
    assert_eq!(output.status.code(), Some(2)); // clap conflict
}

#[test]
fn pipeline_json_output_parses_strictly() {
    let output = run(&[
        "pipeline",
        "--definitions",
        &fixture("definitions/appliance_usage.json"),
        "--scenario",
        &fixture("scenarios/typical_morning.json"),
        "--seed",
        "3",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["format_version"], 1);
    assert_eq!(report["config"]["seed"], 3);
    assert_eq!(report["summary"]["occurrences"], 5);
    assert_eq!(report["summary"]["final_mood"], "Negative");
}

#[test]
fn compare_learners_csv_header_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let data = affectsense::classify::synth::gaussian_blobs(10, 8, 1.0, 1);
    std::fs::write(
        dir.path().join("blobs.csv"),
        affectsense::classify::write_generic_csv(&data),
    )
    .unwrap();
    let output = run_in(
        dir.path(),
        &[
            "compare-learners",
            "--dataset",
            "blobs.csv",
            "--seed",
            "5",
            "--format",
            "csv",
        ],
    );
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.starts_with("learner,accuracy,lowest_precision,highest_precision\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn compare_learners_json_parses_strictly() {
    let dir = tempfile::tempdir().unwrap();
    let data = affectsense::classify::synth::gaussian_blobs(10, 8, 1.0, 1);
    std::fs::write(
        dir.path().join("blobs.csv"),
        affectsense::classify::write_generic_csv(&data),
    )
    .unwrap();
    let output = run_in(
        dir.path(),
        &[
            "compare-learners",
            "--dataset",
            "blobs.csv",
            "--seed",
            "5",
            "--format",
            "json",
        ],
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn train_and_eval_round_trip_through_a_model_file() {
    let dir = tempfile::tempdir().unwrap();
    let data = affectsense::classify::synth::gaussian_blobs(10, 8, 1.0, 2);
    std::fs::write(
        dir.path().join("blobs.csv"),
        affectsense::classify::write_generic_csv(&data),
    )
    .unwrap();

    let output = run_in(
        dir.path(),
        &[
            "train-emotion",
            "--dataset",
            "blobs.csv",
            "--learner",
            "knn",
            "--model-out",
            "model.json",
            "--seed",
            "9",
        ],
    );
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["learner"], "knn");
    assert!(report["accuracy"].as_f64().unwrap() > 0.9);

    let output = run_in(
        dir.path(),
        &[
            "eval-emotion",
            "--model",
            "model.json",
            "--dataset",
            "blobs.csv",
            "--format",
            "json",
        ],
    );
    assert_eq!(output.status.code(), Some(0));
    let matrix: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(matrix["labels"].as_array().unwrap().len(), 7);
}

#[test]
fn config_file_values_are_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("config.json"), r#"{"seed": 1, "mood_window": 3}"#).unwrap();
    let output = run_in(
        dir.path(),
        &[
            "pipeline",
            "--definitions",
            &fixture("definitions/appliance_usage.json"),
            "--scenario",
            &fixture("scenarios/typical_morning.json"),
            "--config",
            "config.json",
            "--seed",
            "42",
        ],
    );
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["config"]["seed"], 42); // flag wins
    assert_eq!(report["config"]["mood_window"], 3); // file beats default
}

#[test]
fn bad_config_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("config.json"), r#"{"mood_window": 0}"#).unwrap();
    let output = run_in(
        dir.path(),
        &[
            "validate",
            "--definitions",
            &fixture("definitions/daily_home.json"),
            "--config",
            "config.json",
        ],
    );
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn ux_eval_rule_and_model_agree_on_the_bundled_samples() {
    let output = run(&[
        "ux-eval",
        "--samples",
        &fixture("ux/session_outcomes.csv"),
        "--format",
        "json",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let rule: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let accuracy = rule["accuracy"].as_f64().unwrap();
    assert!((accuracy - 11.0 / 15.0).abs() < 1e-9);

    let output = run(&[
        "ux-eval",
        "--samples",
        &fixture("ux/session_outcomes.csv"),
        "--predictor",
        "model",
        "--format",
        "csv",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text
        .starts_with("row,ux,prediction,confidence_positive,confidence_negative,mood,outcome\n"));
    assert_eq!(text.lines().count(), 16);
}

#[test]
fn simulate_writes_identical_log_to_stdout_and_file() {
    let dir = tempfile::tempdir().unwrap();
    let to_stdout = run_in(
        dir.path(),
        &[
            "simulate",
            "--definitions",
            &fixture("definitions/appliance_usage.json"),
            "--scenario",
            &fixture("scenarios/typical_morning.json"),
            "--seed",
            "4",
        ],
    );
    assert_eq!(to_stdout.status.code(), Some(0));

    let to_file = run_in(
        dir.path(),
        &[
            "simulate",
            "--definitions",
            &fixture("definitions/appliance_usage.json"),
            "--scenario",
            &fixture("scenarios/typical_morning.json"),
            "--seed",
            "4",
            "--out",
            "trace.csv",
        ],
    );
    assert_eq!(to_file.status.code(), Some(0));
    let file = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    assert_eq!(stdout(&to_stdout), file);
}
