use std::path::Path;
use std::process::{Command, Output};

use nilgeo::read_csv;

fn nilgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilgeo")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SMALL: [&str; 4] = ["--set", "n_radial=48", "--set", "n_angular=16"];

#[test]
fn verify_prints_report() {
    let out = nilgeo(&["verify", "--tol", "1e-6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# nilgeo verify"));
    for id in ["thm1-a", "thm1-b", "thm1-c", "thm1-d", "prop-catenoid"] {
        assert!(text.lines().any(|l| l.starts_with(id) && l.contains("pass")), "{id}");
    }
    assert!(text.lines().any(|l| l.starts_with("thm1-e") && l.contains("discrepancy")));
}

#[test]
fn verify_json_parses() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    assert_eq!(nilgeo(&["verify", "--json", path_str(&path)]).status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);
    assert_eq!(v[4]["verdict"], "discrepancy");
}

#[test]
fn catenoid_mesh_and_profile() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("out.obj");
    let csv = dir.path().join("profile.csv");
    let args =
        ["catenoid", "--c", "3", "--t0", "1", "--tmax", "6", "--export-obj", path_str(&obj), "--csv", path_str(&csv)];
    let out = nilgeo(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let first = std::fs::read_to_string(&obj).unwrap();
    assert!(first.starts_with("# vertices are matrix coordinates"));
    assert_eq!(first.lines().filter(|l| l.starts_with("v ")).count(), 41 * 48);
    assert_eq!(first.lines().filter(|l| l.starts_with("f ")).count(), 2 * 40 * 48);

    assert_eq!(nilgeo(&args).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&obj).unwrap(), first);

    let (header, rows) = read_csv(&csv).unwrap();
    assert_eq!(header, ["t", "h", "du"]);
    assert_eq!(rows.len(), 41);
    assert_eq!(rows[0][0], 1.0);
    assert_eq!(rows[0][1], 0.0);
}

#[test]
fn catenoid_ply_with_residual_channel() {
    let dir = tempfile::tempdir().unwrap();
    let ply = dir.path().join("c.ply");
    let out = nilgeo(&[
        "catenoid",
        "--c",
        "2",
        "--tmax",
        "4",
        "--n",
        "6",
        "--n-theta",
        "8",
        "--residual",
        "--export-ply",
        path_str(&ply),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&ply).unwrap();
    assert!(text.contains("property double abs_h"));
    let body: Vec<&str> = text.lines().skip_while(|l| *l != "end_header").skip(1).take(48).collect();
    for line in body {
        let h: f64 = line.split(' ').nth(3).unwrap().parse().unwrap();
        assert!(h < 1e-5, "{line}");
    }
}

#[test]
fn barrier_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("b.csv");
    let out = nilgeo(&["barrier", "--s", "1", "--alpha", "1", "--csv", path_str(&csv)]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = read_csv(&csv).unwrap();
    assert_eq!(header, ["r", "f", "df"]);
    assert_eq!(rows.len(), 301);
    assert_eq!(rows[0], vec![0.0, 0.0, 1.0]);
    assert!(rows.windows(2).all(|w| w[1][1] > w[0][1]));
}

#[test]
fn exterior_trace_and_slice() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ray.csv");
    let json = dir.path().join("ext.json");
    let mut args = SMALL.to_vec();
    args.extend([
        "exterior",
        "--s",
        "1",
        "--r0",
        "1",
        "--schedule",
        "3,5",
        "--csv",
        path_str(&csv),
        "--json",
        path_str(&json),
    ]);
    let out = nilgeo(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("# n_radial = 48"));
    assert!(text.contains("# schedule = 3,5"));
    assert!(text.contains("cauchy"));
    let (header, rows) = read_csv(&csv).unwrap();
    assert_eq!(header, ["r", "u"]);
    assert_eq!(rows.len(), 49);
    assert_eq!(rows[0], vec![1.0, 0.0]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 2);
}

#[test]
fn config_file_is_applied_and_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("solver.cfg");
    std::fs::write(&cfg, "# small run\nn_radial = 32\nn_angular = 16\nschedule = 4, 8\n").unwrap();
    let out = nilgeo(&["--config", path_str(&cfg), "asymptotic", "--phi", "const:0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("# n_radial = 32"));
    assert!(text.contains("# schedule = 4,8"));
    assert!(text.contains("decreasing"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(nilgeo(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(nilgeo(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(nilgeo(&["--set", "foo=1", "verify"]).status.code(), Some(2));
    assert_eq!(nilgeo(&["catenoid", "--c", "3", "--t0", "0.5"]).status.code(), Some(2));
    assert_eq!(nilgeo(&["asymptotic", "--phi", "tan:1"]).status.code(), Some(2));
}

#[test]
fn solver_failure_exits_one() {
    let mut args = SMALL.to_vec();
    args.extend(["--set", "max_newton=1", "--set", "newton_tol=1e-15", "asymptotic", "--schedule", "4"]);
    let out = nilgeo(&args);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Newton"));
}

#[test]
fn unwritable_export_exits_one() {
    let out = nilgeo(&["export", "--surface", "plane", "--out", "/nonexistent-dir/p.obj"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn plane_export_counts() {
    let dir = tempfile::tempdir().unwrap();
    let ply = dir.path().join("plane.ply");
    assert_eq!(nilgeo(&["export", "--surface", "plane", "--n", "10", "--out", path_str(&ply)]).status.code(), Some(0));
    let text = std::fs::read_to_string(&ply).unwrap();
    assert!(text.contains("element vertex 100"));
    assert!(text.contains("element face 162"));
}
