use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwmirror"))
        .args(args)
        .env_remove("GWMIRROR_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn quintic_initial_row() {
    let out = run(&["vsc", "--N", "5", "--k", "5", "--d", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "120 770 1345 770 120\n");
}

#[test]
fn both_pipelines_agree_on_spot_value() {
    let out = run(&["vsc", "--N", "3", "--k", "2", "--d", "2", "--n", "0", "--pipeline", "both"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "4\n");
}

#[test]
fn empty_window_prints_empty_row() {
    let out = run(&["vsc", "--N", "7", "--k", "2", "--d", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "\n");
}

#[test]
fn rational_values_print_without_unit_denominator() {
    let out = run(&["vsc", "--N", "5", "--k", "5", "--d", "2", "--pipeline", "both"]);
    assert_eq!(code(&out), 0);
    assert!(!stdout(&out).contains("/1 "));
}

#[test]
fn quintic_lines_and_trivial_insertion() {
    let out = run(&["gw", "--N", "5", "--k", "5", "--d", "1", "--a", "1", "--b", "1"]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "2875\n"));
    let out = run(&["gw", "--N", "5", "--k", "5", "--d", "1", "--a", "1", "--b", "0"]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "0\n"));
}

#[test]
fn equivariant_output_does_not_depend_on_characters() {
    let base = ["gw", "--N", "5", "--k", "5", "--d", "2", "--n", "2", "--pipeline", "equivariant", "--lambda-seed"];
    let one = run(&[&base[..], &["1"]].concat());
    let two = run(&[&base[..], &["2"]].concat());
    assert_eq!(code(&one), 0);
    assert_eq!(stdout(&one), stdout(&two));
    assert_eq!(stdout(&one), "4876875/2\n");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["vsc", "--N", "5", "--k", "5", "--d", "4"])), 2);
    assert_eq!(code(&run(&["gw", "--N", "5", "--k", "5", "--d", "1", "--n", "9"])), 2);
    assert_eq!(code(&run(&["gw", "--N", "5", "--k", "5", "--d", "1", "--a", "1"])), 2);
    assert_eq!(code(&run(&["gw", "--N", "3", "--k", "2", "--d", "3", "--a", "0", "--b", "0", "--pipeline", "equivariant"])), 2);
    assert_eq!(code(&run(&["cache", "show"])), 2);
}

#[test]
fn verify_recursion_small_grid() {
    let out = run(&["verify", "theorem1", "--k-max", "4", "--d-max", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("PASS theorem1"));
}

#[test]
fn verify_identities_lists_every_family() {
    let out = run(&["verify", "identities"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for name in ["kernel relation", "doubled edge (e)", "doubled edge (w)", "single edge", "chain 1:1", "chain 2:1", "chain 1:2", "three-edge chain", "level shift", "partition decompositions"] {
        assert!(text.contains(&format!("PASS {name} (")), "{name} missing from\n{text}");
    }
}

#[test]
fn verify_transform_reports_each_n() {
    let out = run(&["verify", "theorem2", "--N", "5", "--k", "6", "--d", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["passed"], true);
    let instances = report["theorem2"]["instances"].as_array().unwrap();
    let ns: Vec<i64> = instances.iter().map(|r| r["key"]["n"].as_i64().unwrap()).collect();
    assert_eq!(ns, vec![2, 3]);
}

#[test]
fn json_output_is_deterministic() {
    let args = ["verify", "all", "--k-max", "3", "--format", "json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let args = ["vsc", "--N", "6", "--k", "5", "--d", "3", "--pipeline", "both", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn report_file_matches_json_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify", "theorem2", "--report", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let json = run(&["verify", "theorem2", "--format", "json"]);
    assert_eq!(std::fs::read(&path).unwrap(), json.stdout);
}

fn with_cache(path: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwmirror"))
        .args(args)
        .env("GWMIRROR_CACHE", path)
        .output()
        .expect("binary runs")
}

#[test]
fn cache_build_show_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    let out = with_cache(&path, &["cache", "build", "--k-max", "3", "--d-max", "3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let before = std::fs::read(&path).unwrap();

    let out = with_cache(&path, &["cache", "check"]);
    assert_eq!(code(&out), 0);

    let out = with_cache(&path, &["cache", "show"]);
    assert!(stdout(&out).contains("N=5 k=3 d=1: 6 15 6"));

    // Recomputing a row already in the cache leaves the file unchanged.
    let out = with_cache(&path, &["vsc", "--N", "5", "--k", "3", "--d", "2", "--pipeline", "both"]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read(&path).unwrap(), before);

    let out = with_cache(&path, &["cache", "show", "--format", "json"]);
    assert_eq!(out.stdout, before);
}

#[test]
fn tampered_cache_is_a_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    assert_eq!(code(&with_cache(&path, &["vsc", "--N", "5", "--k", "5", "--d", "1"])), 0);
    let text = std::fs::read_to_string(&path).unwrap().replacen("\"1345\"", "\"1346\"", 1);
    std::fs::write(&path, text).unwrap();
    assert_eq!(code(&with_cache(&path, &["cache", "check"])), 3);
    assert_eq!(code(&with_cache(&path, &["vsc", "--N", "5", "--k", "5", "--d", "1"])), 3);
}

#[test]
fn unreadable_caches_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.json");
    std::fs::write(&path, "{\"schema_version\": 1, \"entries\": [").unwrap();
    let out = with_cache(&path, &["cache", "show"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("corrupt"));

    std::fs::write(&path, "{\"schema_version\": 9, \"entries\": []}").unwrap();
    let out = with_cache(&path, &["cache", "show"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema version 9"));
}
