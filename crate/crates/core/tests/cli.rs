use qwps::cli::main_with_args;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with_args(std::iter::once("qwps").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn classify_matches_golden() {
    let (code, out, _) = run(&["classify", "1", "2", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("classify_1_2_2.jsonl"));
    let v: Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(v["schema"], "qwps/1");
    assert_eq!(v["is_cpn"], true);
    assert_eq!(v["p"], "(2,1,1)");
}

#[test]
fn generators_certificate() {
    let (code, out, _) = run(&["generators", "1", "2", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("generators_1_2_3.jsonl"));
    assert!(out.contains("\"verdict\":\"NOT_GENERATED\""));
    assert!(out.contains("z0 z1 z2*"));
}

#[test]
fn pairing_csv_matches_golden() {
    let (code, out, _) = run(&["pairing", "2", "3", "--grid", "1,1,4", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("pairing_2_3.csv"));
    assert!(out.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn idempotent_text_matches_golden() {
    let (code, out, _) = run(&["connection", "2", "3", "--k", "1", "--format", "text"]);
    assert_eq!(code, 0);
    let entries: String = out.lines().filter(|l| l.starts_with("E[")).map(|l| format!("{l}\n")).collect();
    assert_eq!(entries, golden("idempotent_2_3.txt"));
    assert!(out.contains("nontrivial=true"));
}

#[test]
fn connection_json_reports_minus_one() {
    let (code, out, _) = run(&["--q", "3/10", "connection", "2", "1", "1", "--k", "1"]);
    assert_eq!(code, 0);
    let values: Vec<f64> = out
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .filter(|v| v["kind"] == "pairing_e1")
        .map(|v| v["value"].as_f64().unwrap())
        .collect();
    assert_eq!(values.len(), 2);
    assert!(values.iter().all(|v| (v + 1.0).abs() < 1e-6));
}

#[test]
fn relations_and_spectrum_succeed() {
    let (code, out, _) = run(&["relations", "2", "1", "3", "--numeric", "--cutoff", "8"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, _) = run(&["relations", "1", "2", "--symbolic"]);
    assert_eq!(code, 0);
    let (code, out, _) = run(&["spectrum", "2", "--lambda", "power:3", "--cutoff", "8"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.contains("\"schema\":\"qwps/1\"")));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["spectrum", "2", "--lambda", "cubic"]).0, 1);
    assert_eq!(run(&["--q", "abc", "classify", "1", "2"]).0, 1);
    let (code, _, err) = run(&["classify", "2", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("\"kind\":\"error\""));
    assert_eq!(run(&["pairing", "2", "4"]).0, 2);
    assert_eq!(run(&["--q", "1.5", "classify", "1", "2"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}
