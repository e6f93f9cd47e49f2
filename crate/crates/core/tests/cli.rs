use std::f64::consts::FRAC_PI_4;
use std::path::Path;
use std::process::{Command, Output};

use clap::Parser;
use entx::cli::{self, Cli};
use entx::record::{Status, SweepRecord, Value};

fn entx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entx")).args(args).env_remove("ENTX_WORKERS").output().unwrap()
}

fn json_records(args: &[&str]) -> Vec<SweepRecord> {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = entx(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn real(v: Option<&Value>) -> f64 {
    match v {
        Some(Value::Real(x)) => *x,
        other => panic!("expected a real, got {other:?}"),
    }
}

#[test]
fn collide_examples() {
    let recs = json_records(&["collide", "--lambda", "1", "--g", "-0.25", "--j-tau", "0.7853981633974483"]);
    assert_eq!(recs.len(), 1);
    assert!((recs[0].concurrence.unwrap() - 1.0).abs() < 1e-9);
    let recs = json_records(&["collide", "--lambda", "1", "--g", "0", "--j-tau", "0.3"]);
    assert!(recs[0].concurrence.unwrap() < 1e-12);
}

#[test]
fn collide_grid_is_ordered_and_flags_non_psd() {
    let recs = json_records(&["collide", "--g-grid", "-0.25:0.5:4", "--j-tau-grid", "0.2:0.6:2"]);
    assert_eq!(recs.len(), 8);
    let keys: Vec<(f64, f64)> =
        recs.iter().map(|r| (real(r.inputs.get("g_xx")), real(r.inputs.get("j_tau")))).collect();
    assert_eq!(keys[0], (-0.25, 0.2));
    assert_eq!(keys[1], (-0.25, 0.6));
    assert_eq!(keys[7], (0.5, 0.6));
    // g = 0.25 and 0.5 lie outside the PSD range of the isotropic pair state
    assert!(recs[4..].iter().all(|r| r.status == Status::Skipped && r.message.is_some()));
    assert!(recs[..4].iter().all(|r| r.status == Status::Ok));
}

#[test]
fn output_is_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for workers in ["1", "3"] {
        let path = dir.path().join(format!("w{workers}.csv"));
        let out = entx(&[
            "collide",
            "--g-grid",
            "-0.25:-0.1:3",
            "--j-tau-grid",
            "0.1:1.2:3",
            "--workers",
            workers,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let env_run = Command::new(env!("CARGO_BIN_EXE_entx"))
        .args(["collide", "--g-grid", "-0.25:-0.1:3", "--j-tau-grid", "0.1:1.2:3"])
        .env("ENTX_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(env_run.stdout, outputs[0]);
}

#[test]
fn failed_runs_leave_no_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let p = path.to_str().unwrap();
    let cases: [(&[&str], i32); 4] = [
        (&["groundstate", "--L", "3", "--out", p], 2),
        (&["collide", "--g", "-0.2", "--j-tau", "0.3", "--bogus", "1", "--out", p], 2),
        (&["wstate", "--N", "7", "--j-tau", "0.3", "--out", p], 2),
        (&["iterate", "--g", "-0.2", "--j-tau", "1.5707963267948966", "--steps", "3", "--fixed-point", "--out", p], 2),
    ];
    for (args, code) in cases {
        let out = entx(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!Path::new(p).exists());
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn odd_chain_error_names_parity() {
    let out = entx(&["groundstate", "--lambda", "1", "--L", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("even"));
    assert!(out.stdout.is_empty());
}

#[test]
fn unwritable_destination_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = entx(&["groundstate", "--L", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn json_matches_in_memory_records() {
    let args = ["entx", "spinstar", "--L", "4", "--N", "1", "--lambda", "0", "--j-tau-grid", "0:1.5:7"];
    let in_memory = cli::run(&Cli::try_parse_from(args).unwrap()).unwrap();
    let parsed = json_records(&args[1..]);
    assert_eq!(parsed, in_memory);
}

#[test]
fn spinstar_examples() {
    let recs = json_records(&["spinstar", "--L", "4", "--N", "1", "--lambda", "0", "--j-tau-grid", "0:1.571:50"]);
    assert_eq!(recs.len(), 50);
    let best = recs.iter().max_by(|a, b| a.concurrence.unwrap().total_cmp(&b.concurrence.unwrap())).unwrap();
    assert!((best.concurrence.unwrap() - 0.5).abs() < 1e-3);
    assert!((real(best.inputs.get("j_tau")) - FRAC_PI_4).abs() < 0.02);
    assert!(recs.iter().all(|r| r.status == Status::Ok));

    let recs = json_records(&["spinstar", "--L", "6", "--N", "3", "--lambda", "0", "--j-tau", "0.453"]);
    assert!((recs[0].concurrence.unwrap() - 1.0).abs() < 1e-5);
    let recs = json_records(&["spinstar", "--L", "4", "--N", "1", "--lambda", "0", "--j-tau", "0"]);
    assert_eq!(recs[0].concurrence, Some(0.0));

    assert_eq!(entx(&["spinstar", "--L", "4", "--N", "3", "--j-tau", "0.2"]).status.code(), Some(2));
    assert_eq!(entx(&["spinstar", "--L", "12", "--N", "2", "--j-tau", "0.2"]).status.code(), Some(2));
}

#[test]
fn groundstate_examples() {
    let recs = json_records(&["groundstate", "--lambda", "1", "--L", "2"]);
    assert!((real(recs[0].auxiliary.get("g_xx")) + 0.25).abs() < 1e-12);
    assert!((real(recs[0].auxiliary.get("g_zz")) + 0.25).abs() < 1e-12);
    let recs = json_records(&["groundstate", "--lambda", "1", "--L", "4", "--boundary", "periodic"]);
    // four-site Heisenberg ring: ⟨σ·σ⟩ = -2 per bond
    assert!((real(recs[0].auxiliary.get("g_xx")) + 1.0 / 6.0).abs() < 1e-12);
    assert!((recs[0].concurrence.unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn iterate_examples() {
    let recs = json_records(&["iterate", "--lambda", "0", "--g", "-0.25", "--j-tau", "0.2", "--steps", "500"]);
    assert_eq!(recs.len(), 501);
    let summary = recs.last().unwrap();
    assert_eq!(summary.inputs.get("step"), Some(&Value::Text("summary".into())));
    assert!(real(summary.auxiliary.get("kappa")) > 0.0);
    assert!(summary.auxiliary.contains_key("r_squared"));
    assert!(recs[499].concurrence.unwrap() > 0.95);

    let one = json_records(&["iterate", "--lambda", "1", "--g", "-0.2", "--j-tau", "0.6", "--steps", "1"]);
    let col = json_records(&["collide", "--lambda", "1", "--g", "-0.2", "--j-tau", "0.6"]);
    assert_eq!(one.len(), 1);
    assert_eq!(one[0].concurrence.unwrap(), real(col[0].auxiliary.get("concurrence_unoptimized")));

    let fp = json_records(&["iterate", "--lambda", "1", "--g", "-0.2", "--j-tau", "0.6", "--steps", "2000", "--fixed-point"]);
    let summary = fp.last().unwrap();
    assert!((summary.concurrence.unwrap() - 0.28).abs() < 0.02);
    assert!(real(summary.auxiliary.get("fixed_point_residual")) < 1e-10);
}

#[test]
fn wstate_rows_match_closed_form() {
    let recs = json_records(&["wstate", "--N", "3", "--j-tau-grid", "0:1.2:5"]);
    assert_eq!(recs.len(), 5);
    assert!(recs.iter().all(|r| r.status == Status::Ok && real(r.auxiliary.get("deviation")) < 1e-10));
}

#[test]
fn csv_floats_carry_seventeen_digits() {
    let out = entx(&["groundstate", "--L", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "L,boundary,lambda,concurrence,energy,g_xx,g_zz,gap,status,message");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[2], "1.0000000000000000e0");
    assert_eq!(row[8], "ok");
}

#[test]
fn non_psd_correlation_is_a_numerical_failure() {
    let out = entx(&["iterate", "--g", "0.2", "--j-tau", "0.3", "--steps", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("positive"));
}
