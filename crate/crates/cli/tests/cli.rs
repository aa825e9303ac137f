use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn grapheq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grapheq")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("grapheq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn nash_csv_lists_forty_profiles_in_six_orbits() {
    let out = grapheq(&["nash", "--game", "NC00_C5", "--v0", "2/3", "--v1", "1", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header.len(), 14);
    assert_eq!(header[0], "profile");
    assert_eq!(*header.last().unwrap(), "orbit");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 40);
    let orbits: BTreeSet<&str> = rows.iter().map(|r| r[13]).collect();
    assert_eq!(orbits.len(), 6);
    assert!(rows.iter().any(|r| r[0] == "13333"));
}

#[test]
fn quantum_json_for_nc01() {
    let out = grapheq(&["quantum", "--game", "NC01_C5", "--v0", "2/3", "--v1", "1"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["perfectWin"], true);
    assert_eq!(v["uniformMarginals"], true);
    assert_eq!(v["beliefInvariant"], true);
    assert_eq!(v["threshold"]["p"], "2/3");
    assert_eq!(v["threshold"]["bound"], "v0/v1 >= 1/3");
    assert_eq!(v["isNash"], true);
    assert_eq!(v["qsw"], "5/6");
    assert_eq!(v["questions"].as_array().unwrap().len(), 6);

    let below = grapheq(&["quantum", "--game", "NC01_C5", "--v0", "1/4", "--v1", "1"]);
    let v: Value = serde_json::from_slice(&below.stdout).unwrap();
    assert_eq!(v["isNash"], false);
    assert_eq!(v["methodsAgree"], true);
    assert!(v["witness"].is_object());
}

#[test]
fn kfold_json_reports_exact_values() {
    let out = grapheq(&["kfold", "--game", "NC00_C5", "-k", "2"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["csw"], "23/36");
    assert_eq!(v["qsw"], "5/6");
    assert_eq!(v["ratio"], "23/30");
    assert_eq!(v["decayFactor"], "5/6");
}

#[test]
fn corr_lp_prints_exact_value() {
    let out = grapheq(&["corr-lp", "--game", "NC00_C5", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["correlatedSw"], "97/126");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(grapheq(&["nash"]).status.code(), Some(2));
    assert_eq!(grapheq(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(grapheq(&["nash", "--game", "NC00_C5", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn bad_input_exits_three() {
    let missing = grapheq(&["nash", "--game", "/no/such/game.json"]);
    assert_eq!(missing.status.code(), Some(3));
    let garbage = scratch("garbage.json", "{ not json");
    assert_eq!(grapheq(&["nash", "--game", garbage.to_str().unwrap()]).status.code(), Some(3));
    let inverted = grapheq(&["nash", "--game", "NC00_C5", "--v0", "2", "--v1", "1"]);
    assert_eq!(inverted.status.code(), Some(3));
    let bad_rational = grapheq(&["nash", "--game", "NC00_C5", "--v0", "two"]);
    assert_eq!(bad_rational.status.code(), Some(3));
}

#[test]
fn verify_names_the_failing_check() {
    let exported = stdout(&grapheq(&["export", "--game", "NC00_C5"]));
    let mut game: Value = serde_json::from_str(&exported).unwrap();
    let clean = scratch("clean.json", &exported);
    let ok = grapheq(&["verify", "--game", clean.to_str().unwrap(), "--check", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("[PASS] 1 "));

    // starve the all-ones question
    game["questions"][0]["w"] = Value::from("1/16");
    for q in 1..6 {
        game["questions"][q]["w"] = Value::from("3/16");
    }
    let corrupted = scratch("corrupted.json", &serde_json::to_string(&game).unwrap());
    let bad = grapheq(&["verify", "--game", corrupted.to_str().unwrap(), "--check", "1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).starts_with("[FAIL] 1 "));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("check 1"));
}

#[test]
fn export_round_trips() {
    for name in ["NC00_C5", "NC01_C5", "NC000_C5", "NC00010_C5"] {
        let first = stdout(&grapheq(&["export", "--game", name]));
        let path = scratch(&format!("{name}.json"), &first);
        let second = stdout(&grapheq(&["export", "--game", path.to_str().unwrap()]));
        assert_eq!(first, second, "{name}");
        let direct = stdout(&grapheq(&["nash", "--game", name, "-f", "json"]));
        let via_file = stdout(&grapheq(&["nash", "--game", path.to_str().unwrap(), "-f", "json"]));
        assert_eq!(direct, via_file, "{name}");
    }
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["regimes", "--game", "NC01_C5", "--criterion", "pareto", "-f", "json"];
    let one = stdout(&grapheq(&[&["--threads", "1"][..], &args[..]].concat()));
    let four = stdout(&grapheq(&[&["--threads", "4"][..], &args[..]].concat()));
    let again = stdout(&grapheq(&args));
    assert!(!one.is_empty());
    assert_eq!(one, four);
    assert_eq!(one, again);
}
