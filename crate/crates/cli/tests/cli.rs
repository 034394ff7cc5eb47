//! End-to-end tests of the binary: exit-code contract, JSON schema
//! stability, and determinism across worker counts.

use fan_extremal::detect::{self, FanParams, PackingOutcome};
use fan_extremal::family;
use fan_extremal::graph::Graph;
use serde_json::Value;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fan-extremal"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn binary")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn construct_small_case_matches_formula() {
    let out = run(&["construct", "--n", "7", "--t", "1", "--k", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["n1"], 4);
    assert_eq!(v["edges"], 16);
    assert_eq!(v["certified_fan_free"], true);
    assert_eq!(v["r"], "1/2");
    // the emitted graph6 decodes to a verified family member
    let g = Graph::from_graph6(v["graph6"].as_str().unwrap()).unwrap();
    assert_eq!(g.edge_count(), 16);
    assert!(family::verify_membership(&g, 4, 1, 3).ok);
}

#[test]
fn construct_degenerate_size_exits_2() {
    let out = run(&["construct", "--n", "6", "--t", "1", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("infeasible or degenerate"), "stderr: {err}");
}

#[test]
fn construct_spectral_reports_both_radii() {
    let out = run(&[
        "construct", "--n", "30", "--t", "2", "--k", "3", "--spectral", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let rg = v["rho_graph"].as_f64().unwrap();
    let rq = v["rho_quotient"].as_f64().unwrap();
    assert!((rg - rq).abs() <= 1e-9, "rho mismatch: {rg} vs {rq}");
    assert!(v["r"].is_string());
}

#[test]
fn exnum_closed_form() {
    let out = run(&["exnum", "--n", "100", "--t", "1", "--k", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["n1"], 51);
    assert_eq!(v["value"], 2550);
}

#[test]
fn spexnum_two_valued_case() {
    let out = run(&["spexnum", "--n", "14", "--t", "1", "--k", "4", "--json"]);
    let v = stdout_json(&out);
    assert_eq!(v["n1"], serde_json::json!([6, 8]));
    let rho = v["rho_quotient"].as_array().unwrap();
    assert_eq!(rho.len(), 2);
    assert!((rho[0].as_f64().unwrap() - rho[1].as_f64().unwrap()).abs() < 1e-12);
}

#[test]
fn check_exit_codes() {
    let dir = std::env::temp_dir();
    let k7 = dir.join("fanx_test_k7.g6");
    std::fs::write(&k7, Graph::complete(7).to_graph6()).unwrap();
    let out = run(&["check", "--in", k7.to_str().unwrap(), "--t", "1", "--k", "3", "--json"]);
    assert_eq!(out.status.code(), Some(1), "K7 contains a fan");
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "contains fan packing");
    // witness survives the library-side re-verification
    let w: detect::FanWitness = serde_json::from_value(v["witness"].clone()).unwrap();
    assert_eq!(w.verify(&Graph::complete(7), 3), Ok(()));

    let free = dir.join("fanx_test_free.g6");
    let g = family::build_extremal(12, 1, 3, family::optimal_n1_ex(12, 1, 3).0).unwrap();
    std::fs::write(&free, g.to_graph6()).unwrap();
    let out = run(&["check", "--in", free.to_str().unwrap(), "--t", "1", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));

    let bad = dir.join("fanx_test_bad.g6");
    std::fs::write(&bad, "zz##").unwrap();
    let out = run(&["check", "--in", bad.to_str().unwrap(), "--t", "1", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_census_deterministic_across_jobs() {
    let out1 = run(&["oracle", "ex", "--n", "7", "--t", "1", "--k", "3", "--jobs", "1"]);
    let out4 = run(&["oracle", "ex", "--n", "7", "--t", "1", "--k", "3", "--jobs", "4"]);
    assert_eq!(out1.status.code(), Some(0));
    assert_eq!(out4.status.code(), Some(0));
    let mut v1 = stdout_json(&out1);
    let mut v4 = stdout_json(&out4);
    assert_eq!(v1["max_edges"], 17);
    // witnesses are recertified F-free graphs at the extremum
    for w in v1["witnesses"].as_array().unwrap() {
        let g = Graph::from_graph6(w.as_str().unwrap()).unwrap();
        assert_eq!(g.edge_count(), 17);
        let params = FanParams::new(1, 3).unwrap();
        assert_eq!(detect::contains_disjoint_fans(&g, params), PackingOutcome::Absent);
    }
    v1["wall_ms"] = Value::Null;
    v4["wall_ms"] = Value::Null;
    assert_eq!(v1, v4, "census must not depend on the worker count");

    let s1 = run(&["oracle", "spex", "--n", "6", "--t", "1", "--k", "3", "--jobs", "1"]);
    let s3 = run(&["oracle", "spex", "--n", "6", "--t", "1", "--k", "3", "--jobs", "3"]);
    let mut v1 = stdout_json(&s1);
    let mut v3 = stdout_json(&s3);
    v1["wall_ms"] = Value::Null;
    v3["wall_ms"] = Value::Null;
    assert_eq!(v1, v3, "spectral census must not depend on the worker count");
    assert_eq!(v1["witnesses"], serde_json::json!([Graph::complete(6).to_graph6()]));
}

#[test]
fn oracle_cap_respected_and_env_overridable() {
    let out = run(&["oracle", "ex", "--n", "11", "--t", "1", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2), "default cap is 10");
    let out = bin()
        .args(["oracle", "ex", "--n", "4", "--t", "1", "--k", "3"])
        .env("FAN_EXTREMAL_MAX_N", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "env var lowers the cap");
}

#[test]
fn quotient_schema_and_identity() {
    let out = run(&[
        "quotient", "--n", "22", "--t", "2", "--k", "4", "--seed", "7", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["r"], "-1/2");
    let matrix = v["matrix"].as_array().unwrap();
    assert_eq!(matrix.len(), 3);
    for row in matrix {
        for cell in row.as_array().unwrap() {
            let s = cell.as_str().unwrap();
            assert!(s.contains('/'), "matrix entries are p/q strings: {s}");
        }
    }
    assert_eq!(v["identity_max_deviation"], "0/1");
    assert!(v["poly_residual"].as_f64().unwrap() < 1e-6);
}

#[test]
fn table_emits_csv_rows() {
    let out = run(&["table", "--n", "40:41", "--t", "1:1", "--k", "3:3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,t,k,n1_ex,f,n1_spex,lower,upper"));
    let row = lines.next().unwrap();
    assert_eq!(row, "40,1,3,21,420,20,415/1,430/1");
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["exnum", "--n", "10"]); // missing required flags
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check", "--in", "/nonexistent/file.g6", "--t", "1", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["exnum", "--n", "10", "--t", "1", "--k", "2"]); // k < 3
    assert_eq!(out.status.code(), Some(2));
}
