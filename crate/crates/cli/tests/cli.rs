use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const DEG4: &str = "params: a, b, c\ndx = -y\ndy = x + y*(x^2+y^2-1)*(a*x+b*y+c)\nperturb: a, b, c\n";
const ODD: &str = "params: b00, b20, b02\ndx = -y\ndy = x + y*(1-x^2-y^2)*(b00 + b20*x^2 + b02*y^2)\n";
const CENTER: &str = "dx = -y\ndy = x\n";

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclelab"))
        .args(args)
        .env_remove("CYCLELAB_TOL")
        .output()
        .unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn lyap_reports_l1_and_all_zero_case() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "deg4.sys", DEG4);
    let o = run(&["--json", "lyap", s(&f), "--subst", "c=0", "--max-order", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["entries"][0]["k"], 1);
    assert_eq!(v["entries"][0]["primitive"], "-a*b");
    assert_eq!(v["all_zero"], false);

    let o = run(&["--json", "lyap", s(&f), "--subst", "c=0;a=0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["all_zero"], true);
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["value"] == "0"));
}

#[test]
fn lyap_chain_steps_are_checked() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "odd.sys", ODD);
    let o = run(&["--json", "lyap", s(&f), "--step", "0:b00=0", "--step", "1:b20=-3*b02"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    let ks: Vec<u64> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["k"].as_u64().unwrap())
        .collect();
    assert_eq!(ks[0], 1);
    // a binding that does not annihilate L(1) is a math-domain failure
    let o = run(&["lyap", s(&f), "--step", "0:b00=0", "--step", "1:b20=b02"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_file_and_bad_flags_are_usage_errors() {
    let o = run(&["lyap", "/nonexistent/deg4.sys"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert_eq!(run(&["mel", "x.sys", "--order", "3"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let d = TempDir::new().unwrap();
    let f = write(&d, "deg4.sys", DEG4);
    assert_eq!(run(&["lyap", s(&f), "--subst", "zz=1"]).status.code(), Some(1));
    let bad = write(&d, "bad.sys", "params: a\ndx = -y +\ndy = x\n");
    let o = run(&["lyap", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn mel_first_and_second_order() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "deg4.sys", DEG4);
    let o = run(&["--json", "mel", s(&f), "--order", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["M"], "pi*(-4*c*h^2 + 2*c*h)");
    assert_eq!(v["roots"][0]["lo"], "1/2");
    assert_eq!(v["roots"][0]["multiplicity"], 1);
    assert_eq!(v["roots"].as_array().unwrap().len(), 1);
    assert_eq!(v["sign_convention"]["displacement_sign"], -1);

    let o = run(&["--json", "mel", s(&f), "--order", "2", "--subst", "c=0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["decomposition"]["exact"], true);
    assert_eq!(v["root_factor"], "a*b");

    let o = run(&["mel", s(&f), "--order", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("does not vanish"));
}

#[test]
fn mel_roots_at_bound_parameters() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "odd.sys", ODD);
    // M1 ~ h(2h-1)(8 b00 + 4(3 b02 + b20) h); b00 = 1, b20 = -5, b02 = 0 adds h = 2/5
    let o = run(&["--json", "mel", s(&f), "--at", "b00=1,b20=-5,b02=0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let lo: Vec<&str> = v["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["lo"].as_str().unwrap())
        .collect();
    assert_eq!(lo, ["2/5", "1/2"]);
}

#[test]
fn cofactor_examples() {
    let d = TempDir::new().unwrap();
    let deg4 = write(&d, "deg4.sys", DEG4);
    let odd = write(&d, "odd.sys", ODD);
    let v = json(&run(&["--json", "cofactor", s(&deg4), "--curve", "x^2+y^2-1"]));
    assert_eq!(v["invariant"], true);
    assert_eq!(v["cofactor"], "2*b*y^3 + 2*a*x*y^2 + 2*c*y^2");
    let v = json(&run(&["--json", "cofactor", s(&odd), "--curve", "1-x^2-y^2"]));
    assert_eq!(v["cofactor"], "-2*b02*y^4 - 2*b20*x^2*y^2 - 2*b00*y^2");
    let o = run(&["--json", "cofactor", s(&deg4), "--curve", "x^2+y^2-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["invariant"], false);
    assert_eq!(run(&["cofactor", s(&deg4), "--curve", "0"]).status.code(), Some(2));
}

#[test]
fn dulac_and_center_check() {
    let d = TempDir::new().unwrap();
    let deg4 = write(&d, "deg4.sys", DEG4);
    let v = json(&run(&[
        "--json",
        "dulac",
        s(&deg4),
        "--curve",
        "x^2+y^2-1",
        "--subst",
        "a=0;b=0",
    ]));
    assert_eq!(v["is_constant"], true);
    assert_eq!(v["value"], "c");
    for subst in ["c=0;a=0", "c=0;b=0"] {
        let v = json(&run(&["--json", "center-check", s(&deg4), "--subst", subst]));
        assert_eq!(v["certifies_center"], true, "{subst}");
        assert_eq!(v["lyapunov"]["vanish_up_to"], 6);
    }
    let v = json(&run(&["--json", "center-check", s(&deg4), "--subst", "c=0"]));
    assert_eq!(v["certifies_center"], false);
    assert_eq!(v["lyapunov"]["first_nonzero"], 1);
}

#[test]
fn kukles_conditions_cli() {
    let o = run(&[
        "--json",
        "kukles-conditions",
        "--at",
        "a1=1,a2=0,a3=-2,a4=-1/3,a5=-1,a6=0,a7=1/3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["satisfied"]["JinWang"], true);
    assert_eq!(run(&["kukles-conditions", "--at", "a1=1"]).status.code(), Some(1));
    assert_eq!(
        run(&["kukles-conditions", "--at", "a1=1,a2=0,a3=0,a4=0,a5=0,a6=0,a7=0,a8=1"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn cycles_on_the_invariant_circle_with_portrait() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "deg4.sys", DEG4);
    let svg = d.path().join("out.svg");
    let o = run(&[
        "--json",
        "cycles",
        s(&f),
        "--at",
        "a=1,b=1,c=0",
        "--eps",
        "0.05",
        "--range",
        "0.2:1.8",
        "--portrait",
        s(&svg),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    let cycles = v["cycles"].as_array().unwrap();
    assert_eq!(cycles.len(), 1);
    assert!((cycles[0]["x"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    let body = std::fs::read_to_string(&svg).unwrap();
    assert!(body.starts_with("<svg"));
    assert!(body.contains("<circle"));
    assert!(body.contains("#c0392b"));
}

#[test]
fn cycles_edge_cases() {
    let d = TempDir::new().unwrap();
    let center = write(&d, "center.sys", CENTER);
    let o = run(&["--json", "cycles", s(&center)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["cycles"].as_array().unwrap().len(), 0);
    let deg4 = write(&d, "deg4.sys", DEG4);
    let o = run(&["cycles", s(&deg4), "--at", "a=1,b=1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unbound"));
    assert_eq!(run(&["cycles", s(&center), "--range", "2:1"]).status.code(), Some(1));
}

#[test]
fn simulate_csv_and_tolerance_env() {
    let d = TempDir::new().unwrap();
    let center = write(&d, "center.sys", CENTER);
    let o = run(&[
        "simulate",
        s(&center),
        "--x0",
        "1,0",
        "--t-max",
        "6.283185307179586",
        "--samples",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "t,x,y");
    assert_eq!(lines.len(), 6);
    let last: Vec<f64> = lines[5].split(',').map(|v| v.parse().unwrap()).collect();
    assert!((last[1] - 1.0).abs() < 1e-7 && last[2].abs() < 1e-7);

    let o = Command::new(env!("CARGO_BIN_EXE_cyclelab"))
        .args(["simulate", s(&center), "--x0", "1,0"])
        .env("CYCLELAB_TOL", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_output_is_deterministic() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "deg4.sys", DEG4);
    let a = run(&["--json", "mel", s(&f), "--order", "2", "--subst", "c=0"]);
    let b = run(&["--json", "mel", s(&f), "--order", "2", "--subst", "c=0"]);
    assert_eq!(a.stdout, b.stdout);
    let out = d.path().join("report.json");
    let o = run(&["--json", "-o", s(&out), "mel", s(&f), "--order", "2", "--subst", "c=0"]);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
}

#[test]
fn reproduce_filter_and_fault_injection() {
    let o = run(&["reproduce", "--filter", "kukles"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("[PASS] AC11"));
    assert!(!out.contains("AC1 "));

    let o = run(&["--json", "reproduce", "--filter", "lyap"]);
    let ids: Vec<u64> = json(&o)["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_u64().unwrap())
        .collect();
    assert_eq!(ids, [1, 2, 7]);

    let d = TempDir::new().unwrap();
    let golden = include_str!("../../core/golden/targets.txt").replace("ac1.L1 = -1/8*a*b", "ac1.L1 = -1/8*a*c");
    let g = write(&d, "targets.txt", &golden);
    let o = run(&["reproduce", "--filter", "1", "--golden", s(&g)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("[FAIL] AC1"));
}
