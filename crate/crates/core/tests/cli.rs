use jsonschema::JSONSchema;
use scfg_linear::cli::{report_for, CommandReport, ExitStatus};
use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> CommandReport {
    let mut all = vec!["scfg-linear"];
    all.extend_from_slice(args);
    report_for(all).expect("arguments parse")
}

fn validate(report: &CommandReport) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{}.schema.json", report.command));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let compiled = JSONSchema::compile(&schema).expect("schema compiles");
    let instance = serde_json::to_value(report).unwrap();
    let msgs: Vec<String> = match compiled.validate(&instance) {
        Ok(()) => Vec::new(),
        Err(errors) => errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    assert!(
        msgs.is_empty(),
        "{} report invalid: {msgs:?}",
        report.command
    );
}

fn result(report: &CommandReport) -> &Value {
    assert!(report.error.is_none(), "{:?}", report.error);
    validate(report);
    &report.result
}

#[test]
fn analyze() {
    let r = run(&["analyze", "6 1 4 2 5 3"]);
    assert_eq!(result(&r)["fo"], serde_json::json!([2, 3, 4, 3, 2, 2]));
    let r = run(&[
        "analyze",
        "6 1 4 2 5 3",
        "--strategy",
        "4 5 2 3 1 6",
        "--lm-order",
        "2",
    ]);
    let v = result(&r);
    assert_eq!(v["max_fo"], 3);
    assert_eq!(v["max_t"], 8);
    assert_eq!(v["decoding"]["max_time_exponent"], 8);
    assert_eq!(
        result(&run(&["analyze", "1 2 3"]))["fo"],
        serde_json::json!([2, 2, 2])
    );
    let bad = run(&["analyze", "1 2 3", "--strategy", "1 2"]);
    assert_eq!(bad.exit_status(), ExitStatus::InputError);
    validate(&bad);
}

#[test]
fn optimize() {
    let r = run(&[
        "optimize",
        "6 1 4 2 5 3",
        "--objective",
        "space",
        "--oracle",
    ]);
    assert_eq!(result(&r)["value"], 3);
    assert_eq!(r.result["agree"], true);
    let r = run(&["optimize", "6 1 4 2 5 3", "--objective", "time"]);
    assert_eq!(result(&r)["value"], 8);
    assert_eq!(result(&run(&["optimize", "1 2"]))["value"], 2);
    let big: Vec<String> = (1..=17).map(|i| i.to_string()).collect();
    let r = run(&["optimize", &big.join(" ")]);
    assert_eq!(r.exit_status(), ExitStatus::ResourceLimit);
}

#[test]
fn cutwidth() {
    let v = |variant: &str| {
        let r = run(&["cutwidth", "--perm", "6 1 4 2 5 3", "--variant", variant]);
        result(&r)["value"].as_u64().unwrap()
    };
    assert_eq!(v("ecw"), 6);
    assert_eq!(v("emcw"), 4);
    assert_eq!(v("cw"), 5);
    let r = run(&["cutwidth", "--perm", "6 1 4 2 5 3", "--limit", "3"]);
    assert_eq!(r.exit_status(), ExitStatus::ResourceLimit);
}

#[test]
fn reduce_small_scale() {
    let r = run(&[
        "reduce",
        &data("k4.txt"),
        "4",
        "--scale",
        "1",
        "--verify",
        "--sweep",
        "1,2",
    ]);
    let v = result(&r);
    assert_eq!(v["manifest"]["faithful"], false);
    assert_eq!(v["manifest"]["vertices"], 6027);
    assert!(v["verification"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
    assert_eq!(v["sweep"]["max_width"], v["manifest"]["k_prime"]);
    let bad = run(&["reduce", "k4", "4", "--sweep", "1,2,3"]);
    assert_eq!(bad.exit_status(), ExitStatus::InputError);
    let r = run(&["reduce", "k4", "4", "--scale", "3", "--edges", "/dev/null"]);
    assert_eq!(r.exit_status(), ExitStatus::ResourceLimit);
}

#[test]
fn reduce_faithful_manifest() {
    let r = run(&["reduce", "k4", "4"]);
    let m = &result(&r)["manifest"];
    assert_eq!(m["vertices"], 8_927_745);
    assert_eq!(m["k_prime"], 906);
    assert_eq!(m["faithful"], true);
}

#[test]
fn parse() {
    let g = data("example.scfg");
    let acc = |w1: &str, w2: &str| {
        let r = run(&["parse", &g, w1, w2, "--count"]);
        result(&r)["accepted"].as_bool().unwrap()
    };
    assert!(acc("aabbcd", "dcbbaa"));
    assert!(!acc("abcd", "abcd"));
    assert!(!acc("", ""));
    let r = run(&["parse", &g, "abcd", "dcba", "--count"]);
    assert_eq!(result(&r)["derivations"], 1);
    assert_eq!(r.stats["arity_violations"], 0);
    let bad = run(&["parse", &g, "abxd", "dcba"]);
    assert_eq!(bad.exit_status(), ExitStatus::InputError);
    validate(&bad);
    let bad = run(&["parse", &g, "ab", "ba", "--strategy", "s1=2,1,3"]);
    assert_eq!(bad.exit_status(), ExitStatus::InputError);
}

#[test]
fn deterministic_across_threads() {
    let strip = |mut r: CommandReport| {
        r.wall_time_ms = 0.0;
        serde_json::to_string(&r).unwrap()
    };
    let a = strip(run(&[
        "cutwidth",
        "--perm",
        "3 1 4 2 6 5 8 7",
        "--threads",
        "1",
    ]));
    let b = strip(run(&["cutwidth", "--perm", "3 1 4 2 6 5 8 7"]));
    assert_eq!(a.replace("\"threads\"", ""), b.replace("\"threads\"", ""));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_scfg-linear");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["analyze", "6 1 4 2 5 3"]), Some(0));
    assert_eq!(code(&["analyze", "6 1 x"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(
        code(&["cutwidth", "--perm", "2 1 3", "--limit", "2"]),
        Some(3)
    );
    let out = Command::new(bin)
        .args(["optimize", "6 1 4 2 5 3", "--pretty"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["value"], 3);
}
