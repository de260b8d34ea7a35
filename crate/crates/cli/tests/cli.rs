use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn riccati(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riccati")).args(args).output().expect("binary runs")
}

fn status(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Runs with `--format json` and validates against the shipped schema.
fn json(schema: &str, args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = riccati(&full);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{}: {}", e, String::from_utf8_lossy(&o.stderr)));
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{}.schema.json", schema));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&s).unwrap();
    if let Err(e) = validator.validate(&v) {
        panic!("{} output violates schema: {} at {}", schema, e, e.instance_path());
    }
    (v, status(&o))
}

#[test]
fn catalog_lists_every_family() {
    let (v, code) = json("catalog", &["catalog"]);
    assert_eq!(code, 0);
    assert_eq!(v["families"].as_array().unwrap().len(), 7);
    let (v, _) = json("catalog", &["catalog", "hopf"]);
    let keys: Vec<&str> = v["families"].as_array().unwrap().iter().map(|f| f["key"].as_str().unwrap()).collect();
    assert_eq!(keys, ["hopf_primary", "hopf_secondary"]);
    assert!(stdout(&riccati(&["catalog", "inoue"])).contains("## Inoue surface S_M"));
}

#[test]
fn check_torus_type2_passes() {
    let (v, code) = json("check", &["check", "--surface", r#"{"family": "torus", "params": {"type": 2, "c": 5}}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn check_kodaira_with_e_ne_h_fails() {
    let (v, code) = json("check", &["check", "--surface", "kodaira", "--param", "e=1", "--param", "h=0"]);
    assert_eq!(code, 1);
    assert_eq!(v["report"]["flat"], false);
    let failures = v["failures"].as_array().unwrap();
    assert!(failures.iter().any(|f| f.as_str().unwrap().contains("curvature")));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(status(&riccati(&["check", "--surface", "{not json"])), 2);
    assert_eq!(status(&riccati(&["check"])), 2);
    assert_eq!(status(&riccati(&["check", "--surface", "torus", "--param", "zeta=1"])), 2);
    assert_eq!(status(&riccati(&["monodromy", "--surface", "torus", "--tol", "1e-3"])), 2);
    assert_eq!(status(&riccati(&["monodromy", "--surface", "torus", "--tol", "0"])), 2);
    assert_eq!(status(&riccati(&["monodromy", "--surface", "torus", "--word-bound", "13"])), 2);
    assert_eq!(status(&riccati(&["chern", "--n", "5"])), 2);
    assert_eq!(status(&riccati(&["pencil", "1/("])), 2);
    assert_eq!(status(&riccati(&["frobnicate"])), 2);
}

#[test]
fn surface_from_file() {
    let dir = std::env::temp_dir().join(format!("riccati-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("hopf.json");
    std::fs::write(&f, r#"{"family": "hopf_primary", "params": {"a": 0.5, "b": 0.5}}"#).unwrap();
    let (v, code) = json("monodromy", &["monodromy", "--surface", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["group"]["classification"]["kind"], "trivial");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn torus_type1_monodromy() {
    let (v, code) = json("monodromy", &["monodromy", "--surface", "torus", "--param", "a=1", "--param", "b=2"]);
    assert_eq!(code, 0);
    let gens = v["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 4);
    assert!(gens.iter().all(|g| g["match_report"]["kind"] == "exact-convention match"));
    assert_eq!(v["group"]["classification"]["kind"], "infinite");
}

#[test]
fn inoue_sm_is_infinite_cyclic() {
    let (v, code) = json("monodromy", &["monodromy", "--surface", "inoue_sm"]);
    assert_eq!(code, 0);
    assert_eq!(v["group"]["classification"]["kind"], "infinite_cyclic");
    assert_eq!(v["group"]["evidence"]["witness"]["class"]["kind"], "loxodromic");
}

#[test]
fn elliptic_monodromy_is_refused() {
    assert_eq!(status(&riccati(&["monodromy", "--surface", "elliptic"])), 2);
}

#[test]
fn verify_tables_is_deterministic_and_tolerance_stable() {
    let (a, code) = json("verify-tables", &["verify-tables", "--draws", "2", "--seed", "11"]);
    assert_eq!(code, 0);
    let b = riccati(&["verify-tables", "--draws", "2", "--seed", "11", "--format", "json"]);
    assert_eq!(serde_json::to_string_pretty(&a).unwrap() + "\n", stdout(&b));
    let md1 = stdout(&riccati(&["verify-tables", "--draws", "2", "--seed", "11"]));
    let md2 = stdout(&riccati(&["verify-tables", "--draws", "2", "--seed", "11"]));
    assert_eq!(md1, md2);
    let (loose, code) = json("verify-tables", &["verify-tables", "--draws", "2", "--seed", "11", "--tol", "1e-4"]);
    assert_eq!(code, 0);
    let outcomes = |v: &Value| -> Vec<(bool, Value)> {
        v["rows"].as_array().unwrap().iter().map(|r| (r["passed"].as_bool().unwrap(), r["result"]["match_report"]["kind"].clone())).collect()
    };
    assert_eq!(outcomes(&a), outcomes(&loose));
}

#[test]
fn chern_small_n() {
    let (v, code) = json("chern", &["chern", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["r2_coefficient"], "1/4");
    let (v, _) = json("chern", &["chern", "--n", "4", "--k", "3"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn pencil_reports() {
    let (v, code) = json("pencil", &["pencil", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["flat"], true);
    assert_eq!(v["foliation"], "dz");
    let (v, _) = json("pencil", &["pencil", "1/(1-x*y)"]);
    assert_eq!(v["flat"], false);
    assert_eq!(v["curvature"]["dxdy"], "(-1)/(x^2*y^2 - 2*x*y + 1)");
    let o = riccati(&["pencil", "0"]);
    assert_eq!(status(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("transverse"));
    assert!(stdout(&riccati(&["pencil", "-x"])).contains("Flat: yes"));
}
