//! JSON interface checks against the compiled binary.

use std::io::Write;
use std::process::{Command, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_curveinterp");

#[test]
fn feasibility_json_fields() {
    let out = Command::new(BIN)
        .args(["feasibility", "--d", "5", "--g", "2", "--r", "3", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rho"], 2);
    assert_eq!(v["chi_tangent"], 17);
    assert_eq!(v["chi_twisted"], 2);
    assert_eq!(v["feasible"], true);
}

#[test]
fn solve_round_trip_over_q() {
    let mut child = Command::new(BIN)
        .args(["solve", "--prime", "0", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(br#"{"r":1,"d":1,"pairs":[{"p":0,"q":[1,0]},{"p":1,"q":[0,1]},{"p":"inf","q":[1,1]}]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kernel_dim"], 1);
    assert_eq!(v["witness_valid"], true);
    assert_eq!(v["field"]["characteristic"], 0);
}

#[test]
fn sweep_exit_codes_and_determinism() {
    let run = || {
        Command::new(BIN)
            .args(["sweep", "--d", "2:3", "--g", "0:0", "--r", "2", "--seed", "7", "--json"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    let mut va: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let mut vb: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    for v in [&mut va, &mut vb] {
        for row in v["rows"].as_array_mut().unwrap() {
            row["runtime_ms"] = 0.into();
        }
    }
    assert_eq!(va, vb);
}

#[test]
fn invalid_modulus_exits_2() {
    let out = Command::new(BIN)
        .args(["feasibility", "--d", "3", "--g", "1", "--r", "2", "--prime", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
