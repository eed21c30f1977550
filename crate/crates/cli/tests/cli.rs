use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use equibasis::families::d4_complex_entanglement_closed_form;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_equibasis"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_stdout(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn pair(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

fn read_csv(path: &Path) -> Vec<(f64, f64)> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("param_deg,entanglement"));
    lines
        .map(|l| {
            let (p, e) = l.split_once(',').unwrap();
            (p.parse().unwrap(), e.parse().unwrap())
        })
        .collect()
}

#[test]
fn construct_qutrit_family_listing() {
    let out = run(&["construct", "--d", "3", "--family", "d3-complex", "--param-deg", "60", "--format", "json"]);
    assert!(out.status.success());
    let doc = json_stdout(&out);
    assert!((doc["entanglement"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let states = doc["states"].as_array().unwrap();
    assert_eq!(states.len(), 27);

    // |ψ_01⟩ = N(2cosφ|0,1⟩ - e^{iφ}|1,2⟩ + 2cosφ|2,0⟩) at φ = π/3, N = 1/√3
    let n = 1.0 / 3f64.sqrt();
    let edge = (n, 0.0);
    let mid = (-n * 0.5, -n * (PI / 3.0).sin());
    let psi01: Vec<_> = states.iter().filter(|r| r[0] == 0 && r[1] == 1).collect();
    assert_eq!(psi01.len(), 3);
    for r in psi01 {
        let (j, k) = (r[2].as_u64().unwrap(), r[3].as_u64().unwrap());
        let z = (r[4].as_f64().unwrap(), r[5].as_f64().unwrap());
        let expected = match (j, k) {
            (0, 1) | (2, 0) => edge,
            (1, 2) => mid,
            other => panic!("unexpected support {other:?}"),
        };
        assert!((z.0 - expected.0).abs() < 1e-15 && (z.1 - expected.1).abs() < 1e-15);
    }
}

#[test]
fn construct_tabulated_d4() {
    let out = run(&["construct", "--d", "4", "--theta", "0,0,0,pi"]);
    assert!(out.status.success());
    let doc = json_stdout(&out);
    let expected = [(0.5, 0.0), (0.0, 0.5), (0.5, 0.0), (0.0, -0.5)];
    for (c, e) in doc["coefficients"].as_array().unwrap().iter().zip(expected) {
        let (re, im) = pair(c);
        assert!((re - e.0).abs() < 1e-15 && (im - e.1).abs() < 1e-15);
    }
}

#[test]
fn construct_product_basis_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("basis.csv");
    let out =
        run(&["construct", "--d", "5", "--theta", "0,0,0,0,0", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,n,j,k,re,im"));
    assert_eq!(lines.count(), 125);
    let manifest: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("basis.csv.manifest.json")).unwrap()).unwrap();
    let e: f64 = manifest["config"]["entanglement"].as_str().unwrap().parse().unwrap();
    assert!(e < 1e-12);
    let keys: Vec<_> = manifest.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["command", "config", "versions", "timestamp"]);
}

#[test]
fn curve_d3_real_maximum() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.csv");
    let out = run(&[
        "curve",
        "--family",
        "d3-real",
        "--from",
        "0",
        "--to",
        "180",
        "--step",
        "0.25",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let rows = read_csv(&path);
    assert_eq!(rows.len(), 721);
    assert!(rows.windows(2).all(|w| w[0].0 < w[1].0));
    let max = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    assert!((max - 0.87).abs() <= 0.01 && max < 1.0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("max_entanglement=0.878"), "{stdout}");
    assert!(stdout.contains("argmax=45"));
}

#[test]
fn curve_d4_complex_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.csv");
    let out = run(&[
        "curve",
        "--family",
        "d4-complex",
        "--from",
        "0",
        "--to",
        "180",
        "--step",
        "0.25",
        "--output",
        path.to_str().unwrap(),
        "--quiet",
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    for (deg, e) in read_csv(&path) {
        // 15 significant digits bound the printed error by 1e-15 relative
        assert!((e - d4_complex_entanglement_closed_form(deg.to_radians())).abs() < 1e-12, "{deg}");
    }
}

#[test]
fn curve_interpolation_endpoints() {
    let out = run(&[
        "curve",
        "--table1",
        "d=4,v=0",
        "--interpolate",
        "--from",
        "0",
        "--to",
        "1",
        "--step",
        "0.001",
        "--quiet",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let (p, e) = l.split_once(',').unwrap();
            (p.parse().unwrap(), e.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 1001);
    assert_eq!(rows[0], (0.0, 0.0));
    assert_eq!(rows[1000].0, 1.0);
    assert!((rows[1000].1 - 1.0).abs() < 1e-14);
}

#[test]
fn curve_json_format() {
    let out = run(&[
        "curve", "--family", "d4-real", "--from", "0", "--to", "90", "--step", "45", "--format", "json", "--quiet",
    ]);
    let doc = json_stdout(&out);
    let rows = doc.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!((rows[0]["entanglement"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(rows[2]["entanglement"].as_f64().unwrap() < 1e-12);
}

#[test]
fn curve_argument_errors() {
    for args in [
        vec!["curve", "--family", "d3-real", "--step", "0"],
        vec!["curve", "--family", "d3-real", "--from", "10", "--to", "400"],
        vec!["curve", "--family", "d3-real", "--from", "90", "--to", "10"],
        vec!["curve", "--table1", "d=4,v=0"],
        vec!["curve", "--table1", "d=4,v=0", "--interpolate", "--to", "2"],
        vec!["curve", "--family", "d3-real", "--table1", "d=4,v=0"],
        vec!["curve", "--table1", "d=9,v=0", "--interpolate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!String::from_utf8_lossy(&out.stderr).contains("panicked"));
    }
}

#[test]
fn verify_certificates() {
    let out = run(&["verify", "--table1", "d=5,v=0"]);
    assert_eq!(out.status.code(), Some(0));
    let cert = json_stdout(&out);
    let keys: Vec<_> = cert.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["residual", "gram_max_offdiag", "gram_max_diag_dev", "entanglement", "maximal"]);
    assert_eq!(cert["maximal"], true);

    let out = run(&["verify", "--d", "3", "--family", "d3-real", "--param-deg", "45"]);
    assert_eq!(out.status.code(), Some(0));
    let cert = json_stdout(&out);
    assert_eq!(cert["maximal"], false);
    assert!((cert["entanglement"].as_f64().unwrap() - 0.878347104761853).abs() < 1e-12);

    let out = run(&["verify", "--d", "2", "--coeffs", "0.7071,0;0.7071,0"]);
    assert_eq!(out.status.code(), Some(1));
    let cert = json_stdout(&out);
    assert!((cert["gram_max_offdiag"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let out = run(&["verify", "--theta", "0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_stdout(&out)["entanglement"], 0.0);
}

#[test]
fn verify_argument_errors() {
    for args in [
        vec!["verify"],
        vec!["verify", "--table1", "d=6,v=0"],
        vec!["verify", "--theta", "0,foo"],
        vec!["verify", "--theta", "0"],
        vec!["verify", "--coeffs", "0,0;0,0"],
        vec!["verify", "--family", "d3-real"],
        vec!["verify", "--family", "d7-real", "--param-deg", "3"],
        vec!["verify", "--theta", "0,1", "--format", "csv"],
        vec!["bogus"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn search_commands() {
    let out = run(&["search", "--d", "5", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_stdout(&out);
    assert_eq!(doc["converged"], true);
    assert!(doc["residual"].as_f64().unwrap() < 1e-10);
    assert_eq!(doc["theta"][0], 0.0);

    let out = run(&["search", "--d", "2", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let t1 = json_stdout(&out)["theta"][1].as_f64().unwrap();
    assert!((t1 - PI / 2.0).abs() < 1e-5 || (t1 - 1.5 * PI).abs() < 1e-5);

    let out = run(&["search", "--d", "7", "--max-iters", "1", "--restarts", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json_stdout(&out);
    assert_eq!(doc["converged"], false);
    assert!(doc["residual"].as_f64().unwrap() > 1e-10);

    for args in [vec!["search", "--d", "1"], vec!["search"], vec!["search", "--d", "3", "--restarts", "0"]] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn io_failure_exit_code() {
    let out = run(&["verify", "--theta", "0,1", "--output", "/nonexistent-dir/cert.json"]);
    assert_eq!(out.status.code(), Some(3));
}
