use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

use nullity_core::enumerate::canonical_form;
use nullity_core::families::{generate_family, FamilyParams};
use nullity_core::graph::{parse_graph6, Graph};

fn nullity(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nullity"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn lines(out: &Output) -> Vec<String> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect()
}

fn records(out: &Output) -> Vec<Value> {
    lines(out)
        .iter()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn assert_schema(name: &str, values: &[Value]) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(name);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for v in values {
        let errors: Vec<String> = validator.iter_errors(v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{name}: {errors:?} for {v}");
    }
}

fn g6(g: &Graph) -> String {
    g.to_graph6()
}

fn p5_with_triangle() -> String {
    g6(&generate_family(&FamilyParams::new(4, 0, [])).unwrap())
}

fn diamond() -> String {
    g6(&Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap())
}

#[test]
fn invariants_records() {
    let input = format!(
        "A_\n{}\n{}\n",
        g6(&Graph::path(5).unwrap()),
        g6(&Graph::cycle(4).unwrap())
    );
    let out = nullity(&["invariants"], &input);
    assert!(out.status.success());
    let r = records(&out);
    assert_schema("invariants.schema.json", &r);
    assert_eq!(
        (
            r[0]["n"].as_u64(),
            r[0]["d"].as_u64(),
            r[0]["rank"].as_u64(),
            r[0]["nullity"].as_u64()
        ),
        (Some(2), Some(1), Some(2), Some(0))
    );
    assert_eq!(r[0]["e"], 2);
    assert_eq!(r[0]["reduced"], true);
    assert_eq!(r[1]["nullity"], 1);
    assert_eq!(r[2]["nullity"], 2);
    assert_eq!(r[2]["reduced"], false);
}

#[test]
fn parse_errors_exit_two_and_keep_going() {
    let out = nullity(&["invariants"], "A_\nA\x01\n@\n");
    assert_eq!(out.status.code(), Some(2));
    let r = records(&out);
    assert_schema("invariants.schema.json", &r);
    assert_eq!(r.len(), 3);
    assert_eq!(r[1]["line"], 2);
    assert!(r[1]["error"].is_string());
    assert_eq!(r[2]["n"], 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn reduce_lines() {
    let input = format!(
        "{}\n{}\n{}\n",
        g6(&Graph::cycle(4).unwrap()),
        g6(&Graph::path(5).unwrap()),
        g6(&Graph::complete_bipartite(1, 3).unwrap())
    );
    let out = nullity(&["reduce"], &input);
    assert!(out.status.success());
    let k2 = g6(&Graph::complete(2).unwrap());
    let p5 = g6(&Graph::path(5).unwrap());
    assert_eq!(
        lines(&out),
        vec![format!("{k2}\t2"), format!("{p5}\t0"), format!("{k2}\t2")]
    );

    let json = nullity(&["reduce", "--format", "json"], &input);
    assert_schema("reduce.schema.json", &records(&json));
}

#[test]
fn check_verdicts() {
    let input = format!(
        "{}\n{}\n{}\n",
        p5_with_triangle(),
        g6(&Graph::path(4).unwrap()),
        g6(&Graph::cycle(5).unwrap())
    );
    let out = nullity(&["check"], &input);
    assert!(out.status.success());
    let r = records(&out);
    assert_schema("check.schema.json", &r);
    assert_eq!(r[0]["verdict"], "even-extremal");
    assert_eq!(r[0]["variant"], "detached");
    assert_eq!(r[0]["params"]["b"], 0);
    assert_eq!(r[1]["verdict"], "odd-extremal");
    assert_eq!(r[2]["verdict"], "not-extremal");
}

#[test]
fn check_mismatch_exits_three() {
    let out = nullity(&["check"], &format!("{}\n", diamond()));
    assert_eq!(out.status.code(), Some(3));
    let r = records(&out);
    assert_schema("check.schema.json", &r);
    assert_eq!(r[0]["verdict"], "mismatch");
    assert_eq!(r[0]["witness"]["reduced"], false);
}

#[test]
fn check_on_disconnected_input_is_an_input_error() {
    let out = nullity(&["check"], "A?\n");
    assert_eq!(out.status.code(), Some(2));
    assert_schema("check.schema.json", &records(&out));
}

#[test]
fn gen_outputs() {
    let out = nullity(&["gen", "--d", "4", "--n-max", "7"], "");
    assert!(out.status.success());
    assert_eq!(lines(&out).len(), 1);

    let out = nullity(&["gen", "--d", "2", "--n-max", "10"], "");
    assert!(out.status.success());
    assert!(lines(&out).is_empty());

    assert_eq!(
        nullity(&["gen", "--d", "3", "--n-max", "10"], "")
            .status
            .code(),
        Some(2)
    );

    let out = nullity(&["gen", "--d", "6", "--n-max", "9", "--format", "json"], "");
    let r = records(&out);
    assert_schema("gen.schema.json", &r);
    let linked = canonical_form(&generate_family(&FamilyParams::new(6, 1, [2])).unwrap()).unwrap();
    assert!(r
        .iter()
        .any(|m| m["variant"] == "linked" && m["canonical"] == linked.as_str()));
}

#[test]
fn verify_full_suites_up_to_seven() {
    let out = nullity(&["verify", "--n-range", "1..7", "--suites", "all"], "");
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = records(&out);
    assert_schema("verify.schema.json", &r);
    assert_eq!(r[0]["mismatches"], serde_json::json!([]));
    assert!(!r[0]["reduction_violations"].as_array().unwrap().is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("mismatches: 0"));
}

#[test]
fn verify_census_and_trivial_range() {
    let out = nullity(&["verify", "--n-range", "6..6", "--suites", "none"], "");
    assert!(out.status.success());
    let r = records(&out);
    assert_schema("verify.schema.json", &r);
    let member = parse_graph6(&p5_with_triangle()).unwrap();
    let census = r[0]["per_n"][0]["census"].as_array().unwrap();
    assert!(census
        .iter()
        .any(|c| c == canonical_form(&member).unwrap().as_str()));

    let out = nullity(&["verify", "--n-range", "1..1"], "");
    assert!(out.status.success());
    let r = records(&out);
    assert_schema("verify.schema.json", &r);
    assert_eq!(r[0]["per_n"][0]["connected"], 1);

    assert_eq!(
        nullity(&["verify", "--n-range", "1..10"], "").status.code(),
        Some(2)
    );
    assert_eq!(nullity(&["verify"], "").status.code(), Some(2));
}

#[test]
fn output_order_is_input_order_for_any_job_count() {
    let one = nullity(&["invariants", "--n", "7", "--jobs", "1"], "");
    let four = nullity(&["invariants", "--n", "7", "--jobs", "4"], "");
    assert!(one.status.success() && four.status.success());
    assert_eq!(lines(&one).len(), 853);
    assert_eq!(one.stdout, four.stdout);
    let lines_seen: Vec<u64> = records(&one)
        .iter()
        .map(|r| r["line"].as_u64().unwrap())
        .collect();
    assert!(lines_seen.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.jsonl");
    let out = nullity(&["invariants", "--out", path.to_str().unwrap()], "A_\n");
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"graph6\":\"A_\""));
}

#[test]
fn input_file_and_exclusive_sources() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.g6");
    std::fs::write(&path, "A_\n@\n").unwrap();
    let out = nullity(&["invariants", "--input", path.to_str().unwrap()], "");
    assert_eq!(records(&out).len(), 2);
    let both = nullity(&["invariants", "--input", "-", "--n", "3"], "");
    assert_eq!(both.status.code(), Some(2));
    let missing = nullity(&["invariants", "--input", "/nonexistent/graphs.g6"], "");
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn log_level_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_nullity"))
        .args(["gen", "--d", "4", "--n-max", "7"])
        .env("NULLITY_LOG", "info")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stderr).contains("family members"));
}
