use std::process::Command;

use ambiguity_cli::run_captured;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value, String) {
    let argv = std::iter::once("ambig").chain(args.iter().copied());
    let (code, out, err) = run_captured(argv);
    let v = serde_json::from_str(&out).unwrap_or(Value::Null);
    (code, v, err)
}

const A: &str = "[1,2,0,2,4]";
const B: &str = "[2,4,0,1,2]";

#[test]
fn worked_pair_exit_codes() {
    assert_eq!(run(&["partner-check", A, B]).0, 0);
    assert_eq!(run(&["trivial-check", A, B]).0, 1);
    assert_eq!(run(&["restricted-check", A, B]).0, 1);
    assert_eq!(run(&["matrix", "gram-check", A, B]).0, 0);
}

#[test]
fn non_partner_exits_one() {
    let (code, v, _) = run(&["partner-check", "[1,2,3]", "[1,3,2]"]);
    assert_eq!(code, 1);
    assert_eq!(v["partner"], false);
}

#[test]
fn bset_commands() {
    assert_eq!(run(&["bset", "test", "--order", "3", "0,1,2"]).0, 1);
    assert_eq!(run(&["bset", "test", "--order", "2", "0,1,5"]).0, 0);
    let (code, v, _) = run(&["bset", "recover", "0,1,5", "-3,-2,2"]);
    assert_eq!(code, 0);
    assert_eq!((v["orientation"].as_str(), v["shift"].as_i64()), (Some("direct"), Some(3)));
    let (code, v, _) = run(&["bset", "recover", "0,1,5", "5,4,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["orientation"], "reflected");
    assert_eq!(run(&["bset", "recover", "0,1,5", "0,1,6"]).0, 1);
    assert_eq!(run(&["bset", "test", "--order", "4", "0,1"]).0, 2);
}

#[test]
fn malformed_json_is_line_referenced() {
    let (code, _, err) = run(&["partner-check", "{\"coeffs\": [1,\n2,,]}", B]);
    assert_eq!(code, 2);
    assert!(err.contains("<inline>:2:"), "{err}");
}

#[test]
fn file_inputs_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let pa = dir.path().join("a.json");
    std::fs::write(&pa, r#"{"offset": 3, "coeffs": [[1,0],[2,0],[0,0],[2,0],[4,0]]}"#).unwrap();
    let pa = pa.to_str().unwrap();
    assert_eq!(run(&["partner-check", pa, B]).0, 0);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"coeffs\": [1, 2\n").unwrap();
    let (code, _, err) = run(&["partner-check", bad.to_str().unwrap(), B]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.json:3:"), "{err}");
    let (code, _, err) = run(&["partner-check", "/no/such/file.json", B]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"));
    let (code, _, err) = run(&["partner-check", r#"{"coeffs": [1, "x/2"]}"#, B]);
    assert_eq!(code, 2);
    assert!(err.contains("coeffs[1]"), "{err}");
}

#[test]
fn float_literal_switches_mode() {
    let (code, v, err) = run(&["partner-check", "[1, 2.5]", "[2.5, 1]"]);
    assert_eq!(code, 0);
    assert_eq!(v["mode"], "float");
    assert!(err.contains("float mode"));
    let (_, v, _) = run(&["partner-check", "[1, \"5/2\"]", "[\"5/2\", 1]"]);
    assert_eq!(v["mode"], "exact");
    let (_, v, _) = run(&["--mode", "float", "partner-check", A, B]);
    assert_eq!(v["mode"], "float");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["partner-check", A]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn output_is_deterministic() {
    let first = run_captured(["ambig", "matrix", "build", A]).1;
    let second = run_captured(["ambig", "matrix", "build", A]).1;
    assert_eq!(first, second);
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["degree"], 4);
}

#[test]
fn matrix_shape() {
    let (_, v, _) = run(&["matrix", "build", "[1,1,1,1,1,1]"]);
    assert_eq!(v["entries"].as_array().unwrap().len(), 36);
}

#[test]
fn multiplier_commands() {
    let check = |s: &str, vals: &str| run(&["multiplier", "check", "--support", s, "--values", vals]).0;
    assert_eq!(check("0,1,3", "[1, 1, [\"3/5\", \"4/5\"]]"), 0);
    assert_eq!(check("0,1,2", "[1, 1, -1]"), 1);
    assert_eq!(check("0,1", "[1]"), 2);
    let (code, v, _) = run(&[
        "multiplier", "apply", "--support", "0,1,3", "--values", "[1, 1, [0, 1]]", "[1,1,0,1]",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["signal"]["coeffs"][3], serde_json::json!([0, 1]));
    let b = v["signal"].to_string();
    assert_eq!(run(&["partner-check", "[1,1,0,1]", &b]).0, 0);
    assert_eq!(run(&["restricted-check", "[1,1,0,1]", &b]).0, 0);
    assert_eq!(run(&["multiplier", "apply", "--support", "0,1", "--values", "[1,1]", "[1,1,0,1]"]).0, 2);
}

#[test]
fn strange_constructions() {
    let (_, v, _) = run(&["strange", "kron", "[1,2]", "[2,1]"]);
    assert_eq!(v["coeffs"], serde_json::json!([[2, 0], [4, 0], [0, 0], [1, 0], [2, 0]]));
    let (_, v, _) = run(&["strange", "kron", "--tight", "[1,2]", "[1,2]"]);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 4);
    let (code, v, _) = run(&["strange", "interleave", "--alpha", "[1,1]", "--lambda", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["b"]["coeffs"], serde_json::json!([[2, 0], [1, 0], [2, 0], [1, 0]]));
    let (_, v, err) = run(&["strange", "interleave", "--alpha", "[1,1]", "--lambda", "0"]);
    assert_eq!(v["renormalized"], true);
    assert!(err.contains("warning"));
    let (_, v, _) = run(&["strange", "iterate", "--factors", "[[1,2],[1,2]]"]);
    assert_eq!(v["coeffs"], serde_json::json!([[1, 0], [2, 0], [0, 0], [2, 0], [4, 0]]));
    let flips = r#"[{"index": 1, "mode": "swap", "c": 1}]"#;
    let (_, v, _) = run(&["strange", "iterate", "--factors", "[[1,2],[1,2]]", "--flips", flips]);
    assert_eq!(v["coeffs"], serde_json::json!([[2, 0], [4, 0], [0, 0], [1, 0], [2, 0]]));
    let bad = r#"[{"index": 1, "mode": "swap", "c": 2}]"#;
    assert_eq!(run(&["strange", "iterate", "--factors", "[[1,2],[1,2]]", "--flips", bad]).0, 2);
}

#[test]
fn search_reports_evidence() {
    let (code, v, err) = run(&["--seed", "3", "strange", "search", "[1,2,1]", "--restarts", "50"]);
    assert_eq!(code, 0);
    assert_eq!(v["restarts"], 50);
    assert_eq!(v["certified"], 0);
    assert_eq!(v["evidence_only"], true);
    assert!(err.contains("not proof"));
    assert_eq!(run(&["strange", "search", "[1,2,1]", "--restarts", "0"]).1["candidates"], serde_json::json!([]));
}

#[test]
fn hermite_commands() {
    let (code, v, _) = run(&["hermite", "ambpoly", r#"{"coeffs": [[0,0],[1,0]]}"#]);
    assert_eq!(code, 0);
    // A_Z = zw + 1, on a rectangular grid
    assert_eq!(v["grid"], serde_json::json!([[[1, 0], [0, 0]], [[0, 0], [1, 0]]]));
    assert_eq!(run(&["hermite", "generic-check", "[2, -3, 1]"]).0, 0);
    assert_eq!(run(&["hermite", "generic-check", "[-1, 0, 1]"]).0, 1);
    let (code, v, _) = run(&["hermite", "partner-scan", "[2, -3, 1]"]);
    assert_eq!(code, 0);
    assert_eq!(v["survivors"].as_array().unwrap().len(), 2);
    let (code, _, err) = run(&["hermite", "partner-scan", "[0, 0, 3, 0, 0, 1]"]);
    assert_eq!(code, 2);
    assert!(err.contains("not generic") && err.contains("only the partners"), "{err}");
    assert_eq!(run(&["hermite", "partner-scan", "[1, 2]"]).0, 2);
    let (code, v, _) = run(&["hermite", "laguerre-verify", "--jmax", "3", "--grid", "3x3"]);
    assert_eq!(code, 0);
    assert!(v["max_relative_error"].as_f64().unwrap() < 1e-8);
}

#[test]
fn pulse_grid_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("grid.csv");
    let (code, _, _) = run(&[
        "pulse", "grid", A, "--eta", "1/3", "--xrange", "-4.5:4.05:0.45", "--yrange", "-3:2.7:0.3", "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,y,abs,re,im");
    assert_eq!(lines.len(), 401);
    assert_eq!(lines[1].split(',').count(), 5);
}

#[test]
fn pulse_origin_and_ranges() {
    let (code, v, _) = run(&["pulse", "grid", A, "--eta", "1/4", "--xrange", "0", "--yrange", "0"]);
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert!((rows[0]["abs"].as_f64().unwrap() - 25.0 / 4.0).abs() < 1e-12);
    assert_eq!(run(&["pulse", "grid", A, "--xrange", "1:0:0.1"]).0, 2);
    assert_eq!(run(&["pulse", "grid", A, "--eta", "3/4", "--xrange", "0", "--yrange", "0"]).0, 2);
}

#[test]
fn pulse_verify_flags_wide_pulses() {
    let (code, v, err) = run(&["pulse", "verify", A, "--eta", "1/3", "--samples", "20"]);
    assert_eq!(code, 0);
    assert_eq!(v["in_uniqueness_regime"], true);
    assert!(err.is_empty(), "{err}");
    let (code, v, err) = run(&["pulse", "verify", A, "--eta", "1/2", "--samples", "20"]);
    assert_eq!(code, 0);
    assert_eq!(v["in_uniqueness_regime"], false);
    assert!(err.contains("outside"));
    let decorated = r#"{"coeffs": [1, 2, 0, 2, 4], "omega": 1.3, "alpha": 0.7, "epsilon": -1}"#;
    assert_eq!(run(&["pulse", "verify", decorated, "--samples", "20"]).0, 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ambig");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["partner-check", A, B]), Some(0));
    assert_eq!(status(&["trivial-check", A, B]), Some(1));
    assert_eq!(status(&["bset", "test", "--order", "3", "0,1,2"]), Some(1));
    assert_eq!(status(&["partner-check", "{", B]), Some(2));
}

#[test]
fn selftest_json_report() {
    let (code, v, _) = run(&["selftest", "--json"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["passed"], true);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ambiguity_cli::selftest::check_names());
}
