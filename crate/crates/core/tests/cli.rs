use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn gtkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtkit")).args(args).env_remove("GTKIT_MAX_FACT").output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = gtkit(args);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{}: {}", e, String::from_utf8_lossy(&out.stderr));
    });
    (out.status.code().unwrap(), v)
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn verify_findim_two_one_zero() {
    let (code, r) = report(&["verify-findim", "--weight", "2,1,0"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["dimension"], 8);
    assert_eq!(r["result"]["weyl_dimension"], 8);
    assert_eq!(r["passed"], true);
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["dimension", "commutators", "central_diagonal"]);
}

#[test]
fn negative_weights_parse() {
    let (code, r) = report(&["verify-findim", "--weight", "1,-1"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["dimension"], 3);
}

#[test]
fn five_row_singularity() {
    let p = path("example5.json");
    let (code, r) = report(&["singularity", "--point", &p]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["singularity"], "((1),(2),(2,1),(2,2),(1,1,1,1,1))");
    assert_eq!(r["result"]["normal_form"], false);
    assert_eq!(r["result"]["fully_critical"], false);
}

#[test]
fn support_at_radius_zero_is_one_character() {
    let p = path("crit34.json");
    let (code, r) = report(&["support", "--point", &p, "--radius", "0"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["characters"], 1);
    assert_eq!(r["result"]["support"][0]["multiplicity"], 1);
}

#[test]
fn derived_count_and_emit() {
    let p = path("crit3.json");
    let out = std::env::temp_dir().join(format!("gtkit-derived-{}.json", std::process::id()));
    let o = out.to_string_lossy().into_owned();
    let res = gtkit(&["derived", "--point", &p, "--radius", "1", "--emit", &o]);
    assert!(res.status.success());
    assert!(res.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    std::fs::remove_file(&out).ok();
    // 18 block-descending points; the 9 with distinct row-2 entries carry two shuffles.
    assert_eq!(r["result"]["count"], 27);
    assert_eq!(r["config"]["output"], o);
}

#[test]
fn act_reports_lattice_and_evaluated_coefficients() {
    let (p, z) = (path("crit34.json"), path("z4.json"));
    let (code, r) = report(&["act", "--point", &p, "--gen", "E32", "--on", &z, "--shuffle", "(4 5)"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["tableau"]["shuffle"], "(4 5)");
    let ev = r["result"]["evaluated"].as_array().unwrap();
    assert_eq!(ev.len(), r["result"]["lattice"].as_array().unwrap().len());
    assert!(ev.iter().all(|t| t["coefficient"].is_string()));
}

#[test]
fn certify_small_point() {
    let p = path("crit3.json");
    let (code, r) = report(&["certify", "--point", &p, "--suite", "all"]);
    assert_eq!(code, 0, "{}", r);
    assert_eq!(r["passed"], true);
    assert_eq!(r["result"]["derived_tableaux"], 27);
}

#[test]
fn reports_are_deterministic() {
    let p = path("crit3.json");
    let args = ["--seed", "5", "support", "--point", &p, "--radius", "1"];
    assert_eq!(gtkit(&args).stdout, gtkit(&args).stdout);
    let ids = ["--seed", "3", "verify-identities", "--trials", "5", "--bound", "2"];
    let (a, b) = (gtkit(&ids), gtkit(&ids));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["config"]["seed"], 3);
    assert_eq!(r["config"]["bound"], 2);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn errors_name_their_kind() {
    let check = |args: &[&str], name: &str| {
        let out = gtkit(args);
        assert_eq!(out.status.code(), Some(2), "{:?}", args);
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.starts_with(name), "{:?}: {}", args, err);
    };
    check(&["verify-findim", "--weight", "0,1"], "NotDominant");
    check(&["singularity", "--point", "/nonexistent/point.json"], "InputError");
    check(&["--bound", "5", "certify", "--radius", "0", "--point", &path("crit34.json")], "BoundExceeded");
    check(&["gamma", "--k", "2", "--i", "3"], "InputError");
    let bad = std::env::temp_dir().join(format!("gtkit-bad-{}.json", std::process::id()));
    std::fs::write(&bad, "[[{\"rat\": 1}]").unwrap();
    check(&["singularity", "--point", &bad.to_string_lossy()], "InputError");
    std::fs::remove_file(&bad).ok();
}

#[test]
fn bad_flags_are_usage_errors() {
    let out = gtkit(&["derived", "--radius", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = gtkit(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}
