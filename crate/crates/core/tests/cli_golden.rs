use std::process::Command;

use gspin_strata::report::{canonical, verify};
use serde_json::Value;

fn gspin(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_gspin")).args(args).output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    (out.status.code().unwrap(), v)
}

const ALSD3: &str = "[[3,0,0],[0,1,0],[0,0,2]]";
const NONSPLIT4: &str = "[[0,1,0,0],[1,0,0,0],[0,0,1,0],[0,0,0,1]]";

#[test]
fn spec_examples() {
    let (c, v) = gspin(&["qspace-invariants", "--p", "3", "--gram", "[[3,0],[0,2]]"]);
    assert_eq!(c, 0);
    assert_eq!(v["outputs"]["disc"], "6");
    assert_eq!(v["outputs"]["hasse"], -1);
    let (c, v) = gspin(&["ggp-intersect", "--p", "5", "--poly", "(T^2+T+1)(T-2)(T-3)"]);
    assert_eq!(c, 0);
    assert_eq!(v["outputs"]["Q_g"], "T^2+T+1");
    assert_eq!(v["outputs"]["point_count"], 4);
    assert_eq!(v["outputs"]["intersection_number"], 4);
}

#[test]
fn exit_code_classes() {
    let (c, v) = gspin(&["no-such-command"]);
    assert_eq!(c, 2);
    assert_eq!(v["error"]["kind"], "invalid-input");
    assert_eq!(gspin(&["qspace-invariants", "--p", "9", "--gram", "[[1]]"]).0, 2);
    assert_eq!(gspin(&["qspace-sharp", "--p", "3", "--gram", "[[1,0],[0,1]]"]).0, 2);
    assert_eq!(gspin(&["ggp-crosscheck", "--p", "5", "--gram", "[[1,0],[0,1]]", "--g", "[[1,0],[0,1]]"]).0, 3);
    let (c, v) = gspin(&["lattice-enumerate", "--p", "3", "--gram", ALSD3, "--budget", "10"]);
    assert_eq!(c, 4);
    assert_eq!(v["error"]["kind"], "budget-exceeded");
}

#[test]
fn reports_round_trip_and_verify() {
    let runs = [
        vec!["qspace-sharp", "--p", "3", "--gram", ALSD3],
        vec!["lattice-type", "--p", "3", "--gram", ALSD3],
        vec!["clifford-check", "--p", "3", "--gram", ALSD3],
        vec!["strata-enumerate", "--p", "3", "--gram", NONSPLIT4, "--k", "2"],
        vec!["strata-stratify", "--p", "3", "--gram", NONSPLIT4, "--k", "2"],
        vec!["ggp-crosscheck", "--p", "3", "--poly", "T^2+1"],
    ];
    for args in runs {
        let (c, v) = gspin(&args);
        assert_eq!(c, 0, "{args:?}: {v}");
        assert!(verify(&v), "{args:?}");
        let back: Value = serde_json::from_str(&canonical(&v)).unwrap();
        assert_eq!(back, v);
    }
}

#[test]
fn thread_count_does_not_change_hash() {
    let base = ["lattice-enumerate", "--p", "3", "--gram", ALSD3];
    let one = gspin(&[&base[..], &["--threads", "1"]].concat()).1;
    let four = gspin(&[&base[..], &["--threads", "4"]].concat()).1;
    assert_eq!(one["determinism_hash"], four["determinism_hash"]);
    assert_eq!(one, four);
}

#[test]
fn file_input_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.json");
    let output = dir.path().join("out.json");
    std::fs::write(&input, r#"{"p": 5, "poly": "(T^2+T+1)^3"}"#).unwrap();
    let (c, v) = gspin(&["ggp-intersect", "--in", input.to_str().unwrap(), "--out", output.to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(v["outputs"]["point_count"], 2);
    assert_eq!(v["outputs"]["intersection_number"], 4);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(written, v);
}

#[test]
fn padic_input_file() {
    use gspin_strata::arith::fpoly::FpPoly;
    use gspin_strata::ggp;
    let ns = ggp::standard_form(5, 4, false).unwrap();
    let p = FpPoly::from_i64(5, &[1, 1, 1]).mul(&FpPoly::from_i64(5, &[-2, 1])).mul(&FpPoly::from_i64(5, &[-3, 1]));
    let gbar = ggp::realize(&p, &ns).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, ggp::construct_input(&ns, &gbar, false).unwrap().to_json().to_string()).unwrap();
    let (c, v) = gspin(&["ggp-crosscheck", "--in", good.to_str().unwrap()]);
    assert_eq!(c, 0, "{v}");
    assert_eq!(v["outputs"]["rsm"], true);
    assert_eq!(v["outputs"]["brute_force_count"], 4);
    let scaled = dir.path().join("scaled.json");
    std::fs::write(&scaled, ggp::construct_input(&ns, &gbar, true).unwrap().to_json().to_string()).unwrap();
    let (c, v) = gspin(&["ggp-intersect", "--in", scaled.to_str().unwrap()]);
    assert_eq!(c, 3);
    assert_eq!(v["error"]["kind"], "criterion-not-applicable");
}
