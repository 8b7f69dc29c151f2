use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use latpoly::constructions::random_polytope;
use latpoly_cli::format::{parse_polytope, print_polytope};
use proptest::prelude::*;
use serde_json::Value;
use tempfile::TempDir;

fn latpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latpoly"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, body: &str) -> String {
        let p: PathBuf = self.0.path().join(name);
        fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_string()
    }
}

const T3: &str = r#"{"dim":2,"vertices":[[0,0],[3,0],[0,3]]}"#;
const CUBE: &str = "3 8\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n1 1 0\n1 0 1\n0 1 1\n1 1 1\n";

#[test]
fn hstar_of_cube() {
    let f = Files::new();
    let o = latpoly(&["hstar", &f.put("cube.txt", CUBE)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "h*: 1 4 1\ndegree: 2\nvolume: 6\n");
}

#[test]
fn verify_scott_on_three_simplex() {
    let f = Files::new();
    let o = latpoly(&[
        "verify",
        &f.put("t3.json", T3),
        "--theorem",
        "scott",
        "--id",
        "t3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "exceptional");
    assert_eq!(v["polytope_id"], "t3");
    assert_eq!(v["theorem"], "scott");
    assert_eq!(v["inputs"]["vol"], 9);
    assert_eq!(v["inputs"]["i"], 1);
    assert_eq!(v["inputs"]["b"], 10);
    assert_eq!(v["inputs"]["n"], 2);
    assert_eq!(v["inputs"]["degree"], 2);
    let ineq = v["inequalities"].as_array().unwrap();
    assert_eq!(ineq.len(), 3);
    for e in ineq {
        assert!(
            e["name"].is_string()
                && e["lhs"].is_string()
                && e["rhs"].is_string()
                && e["holds"].is_boolean()
        );
    }
    assert!(v["notes"].is_array());
}

#[test]
fn verify_exit_codes() {
    let f = Files::new();
    let cube = f.put("cube.txt", CUBE);
    let o = latpoly(&["verify", &cube, "--theorem", "deg2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "holds");
    assert_eq!(v["inequalities"][2]["rhs"], "8.5");

    // Scott's bound is for polygons only
    let o = latpoly(&["verify", &cube, "--theorem", "scott"]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "not-applicable");

    let tri = f.put("tri.txt", "2 3\n0 0\n1 0\n0 1\n");
    assert_eq!(
        latpoly(&["verify", &tri, "--theorem", "scott"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        latpoly(&["verify", &tri, "--theorem", "remark"])
            .status
            .code(),
        Some(3)
    );
    for t in ["star", "remark", "vpick"] {
        assert_eq!(
            latpoly(&["verify", &cube, "--theorem", t]).status.code(),
            Some(0),
            "{t}"
        );
    }
}

#[test]
fn constructions_print_polytopes() {
    let f = Files::new();
    let t3 = f.put("t3.json", T3);
    let o = latpoly(&["pyramid", &t3, "--times", "2"]);
    let p = parse_polytope(&stdout(&o)).unwrap();
    assert_eq!(p.ambient_dim(), 4);
    assert_eq!(p.vertices().len(), 5);

    let o = latpoly(&["dilate", &t3, "2"]);
    let p = parse_polytope(&stdout(&o)).unwrap();
    assert_eq!(p.normalized_volume().unwrap(), 36.into());

    let o = latpoly(&["lawrence", "--heights", "1,1"]);
    let p = parse_polytope(&stdout(&o)).unwrap();
    assert_eq!(p, latpoly::constructions::unit_cube(2).unwrap());
}

#[test]
fn volume_and_points() {
    let f = Files::new();
    let t3 = f.put("t3.json", T3);
    assert_eq!(stdout(&latpoly(&["volume", &t3])), "9\n");
    assert_eq!(stdout(&latpoly(&["points", &t3, "--dilate", "2"])), "28\n");
    assert_eq!(stdout(&latpoly(&["points", &t3, "--interior"])), "1\n");
    assert_eq!(
        stdout(&latpoly(&["points", &t3, "--interior", "--list"])),
        "(1, 1)\n1\n"
    );
}

#[test]
fn equivalence_exit_codes() {
    let f = Files::new();
    let a = f.put("a.json", r#"{"dim":2,"vertices":[[0,0],[1,0],[0,1]]}"#);
    let b = f.put("b.json", r#"{"dim":2,"vertices":[[0,0],[1,0],[1,1]]}"#);
    let o = latpoly(&["equiv", &a, &b]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["matrix"].as_array().unwrap().len(), 2);

    let t3 = f.put("t3.json", T3);
    let o = latpoly(&["equiv", &a, &t3]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "not equivalent\n");
}

#[test]
fn enumerate_streams_json_lines() {
    let o = latpoly(&["enumerate", "--box", "2", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let (summary, classes) = lines.split_last().unwrap();
    assert_eq!(classes.len(), 17);
    assert!(classes.iter().all(|c| c["type"] == "class"));
    assert_eq!(summary["type"], "summary");
    assert_eq!(summary["summary"]["classes"], 17);
    assert_eq!(summary["summary"]["exceptional"], 0);
    assert_eq!(
        summary["summary"]["violations"].as_array().unwrap().len(),
        0
    );
}

#[test]
fn corpus3d_summary_is_deterministic() {
    let run = || {
        stdout(&latpoly(&[
            "corpus3d", "--box", "2", "--count", "40", "--seed", "3",
        ]))
    };
    let (a, b) = (run(), run());
    let last = |s: &str| serde_json::from_str::<Value>(s.lines().last().unwrap()).unwrap();
    assert_eq!(last(&a), last(&b));
    assert_eq!(last(&a)["type"], "summary");
    assert_eq!(last(&a)["sampled"], 40);
}

#[test]
fn usage_and_data_errors() {
    let f = Files::new();
    assert_eq!(latpoly(&["hstar"]).status.code(), Some(64));
    assert_eq!(
        latpoly(&["verify", "x", "--theorem", "nope"]).status.code(),
        Some(64)
    );
    assert_eq!(latpoly(&["--help"]).status.code(), Some(0));
    assert_eq!(
        latpoly(&["volume", "/nonexistent/p.json"]).status.code(),
        Some(66)
    );
    let flat = f.put("flat.json", r#"{"dim":2,"vertices":[[0,0],[1,0],[2,0]]}"#);
    let o = latpoly(&["volume", &flat]);
    assert_eq!(o.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not full-dimensional"));
    let big = f.put("big.json", r#"{"dim":7,"vertices":[[0,0,0,0,0,0,0]]}"#);
    assert_eq!(latpoly(&["volume", &big]).status.code(), Some(65));
    let frac = f.put("frac.json", r#"{"dim":1,"vertices":[[0.5]]}"#);
    assert_eq!(latpoly(&["volume", &frac]).status.code(), Some(65));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn print_then_parse_keeps_vertices(n in 1usize..=4, b in 1u64..=6, m in 5usize..=9, seed in any::<u64>()) {
        let p = random_polytope(n, b, m, seed).unwrap();
        let q = parse_polytope(&print_polytope(&p)).unwrap();
        prop_assert_eq!(q.vertices(), p.vertices());
    }
}
