use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use rootline::rational::{int, parse, rat};
use serde_json::Value;

fn rootline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootline"))
        .args(args)
        .env("ROOTLINE_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn approx_root_power_sum_brackets_sqrt_7_5() {
    let out = rootline(&["approx-root", "--n", "4", "--e", "10,35", "--branch", "power-sum"]);
    assert!(out.status.success());
    let v = json_of(&out);
    let lo = parse(v["estimate"].as_str().unwrap()).unwrap();
    let hi = parse(v["estimate_upper"].as_str().unwrap()).unwrap();
    assert!(&lo * &lo <= rat(15, 2) && rat(15, 2) <= &hi * &hi);
    assert_eq!(v["branch"], "power-sum");
    assert_eq!(parse(v["factor"].as_str().unwrap()).unwrap(), int(2));
    assert!(v["estimate_decimal"].as_str().unwrap().starts_with("2.7386"));
}

#[test]
fn approx_root_inputs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let profile = dir.path().join("profile.json");
    fs::write(&profile, r#"{"e": ["10", "35", "50", "24"]}"#).unwrap();
    let poly = dir.path().join("poly.json");
    fs::write(&poly, r#"{"coeffs": ["24", "-50", "35", "-10", "1"]}"#).unwrap();
    let runs = [
        rootline(&["approx-root", "--n", "4", "--k", "2", "--profile", path_str(&profile)]),
        rootline(&["approx-root", "--k", "2", "--coeffs", path_str(&poly)]),
        rootline(&["approx-root", "--n", "4", "--e", "10,35"]),
    ];
    let first = json_of(&runs[0]);
    for r in &runs {
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
        assert_eq!(json_of(r)["estimate"], first["estimate"]);
    }
    let with_roots = rootline(&["approx-root", "--roots", "1,2,3,4", "--k", "2"]);
    let v = json_of(&with_roots);
    assert_eq!(v["estimate"], first["estimate"]);
    assert_eq!(v["bracket_holds"], true);
}

#[test]
fn verify_pair_pristine_and_tampered() {
    let dir = tempfile::tempdir().unwrap();
    let pair = dir.path().join("pair.json");
    let gen = rootline(&["gen-pair", "--kind", "weak", "--n", "5", "--out", path_str(&pair)]);
    assert!(gen.status.success());
    let ok = rootline(&["verify-pair", "--in", path_str(&pair)]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json_of(&ok)["verified"], true);

    let mut v: Value = serde_json::from_str(&fs::read_to_string(&pair).unwrap()).unwrap();
    v["q"]["coeffs"][2] = Value::String("7/1".into());
    let bad = dir.path().join("bad.json");
    fs::write(&bad, v.to_string()).unwrap();
    let out = rootline(&["verify-pair", "--in", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let err = &json_of(&out)["error"];
    assert_eq!(err["kind"], "certificate");
    assert_eq!(err["check"], "coefficients");
    assert_eq!(err["index"], 3);
}

#[test]
fn malformed_input_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("junk.json");
    fs::write(&f, "{not json").unwrap();
    let out = rootline(&["verify-pair", "--in", path_str(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"]["kind"], "malformed-json");
    let out = rootline(&["girth", "--graph", "petersen"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"]["kind"], "library");
}

#[test]
fn unknown_subcommand_exits_2() {
    let out = rootline(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn graph_commands() {
    let v = json_of(&rootline(&["girth", "--graph", "heawood"]));
    assert_eq!((v["girth"].as_u64(), v["edge_count"].as_u64()), (Some(6), Some(21)));
    let v = json_of(&rootline(&["verify-invariance", "--graph", "C_6", "--k", "5"]));
    assert_eq!((v["holds"].as_bool(), v["certified"].as_bool()), (Some(true), Some(true)));
    assert_eq!(v["signings_checked"], 64);
    let v = json_of(&rootline(&["verify-invariance", "--graph", "C_6"]));
    assert_eq!(v["holds"], false);
    let v = json_of(&rootline(&["sign-search", "--graph", "C_8"]));
    assert_eq!(v["within_ramanujan_bound"], true);
}

#[test]
fn rounding_both_oracles() {
    let dir = tempfile::tempdir().unwrap();
    let ks = dir.path().join("ks.json");
    assert!(rootline(&["gen-family", "--m", "5", "--n", "3", "--seed", "7", "--out", path_str(&ks)]).status.success());
    let out = rootline(&["round", "--family", path_str(&ks), "--epsilon", "1/2", "--exhaustive-check"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["assignment"].as_array().unwrap().len(), 5);
    assert!(v["per_step_log"].is_array());
    assert_eq!(v["exhaustive"]["root_dominates_best_leaf"], true);

    let sr = dir.path().join("sr.json");
    fs::write(
        &sr,
        r#"{"kind": "sr", "n": 2, "m": 3, "table": {"3": "1/3", "5": "1/3", "6": "1/3"},
            "vectors": [["1", "0"], ["0", "1"], ["1", "1"]]}"#,
    )
    .unwrap();
    let out = rootline(&["round", "--family", path_str(&sr), "--epsilon", "1/4"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["leaf_certified"], true);
}

#[test]
fn outputs_are_byte_identical() {
    let runs: Vec<Output> = (0..2).map(|_| rootline(&["gen-pair", "--kind", "noisy", "--k", "3"])).collect();
    assert!(runs[0].status.success());
    assert_eq!(runs[0].stdout, runs[1].stdout);
    let runs: Vec<Output> = (0..2).map(|_| rootline(&["gen-family", "--m", "4", "--n", "2", "--seed", "11"])).collect();
    assert_eq!(runs[0].stdout, runs[1].stdout);
}

#[test]
fn manifest_runs_relative_to_its_directory() {
    let dir = tempfile::tempdir().unwrap();
    assert!(rootline(&["gen-pair", "--kind", "weak", "--n", "5", "--out", path_str(&dir.path().join("pair.json"))])
        .status
        .success());
    let manifest = dir.path().join("verify.json");
    fs::write(
        &manifest,
        r#"{"subcommand": "verify-pair", "inputs": {"in": "pair.json"}, "output": "out/report.json"}"#,
    )
    .unwrap();
    let mut bytes = Vec::new();
    for _ in 0..2 {
        let out = rootline(&["run", "--manifest", path_str(&manifest)]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        bytes.push(fs::read(dir.path().join("out/report.json")).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);
    let v: Value = serde_json::from_slice(&bytes[0]).unwrap();
    assert_eq!(v["verified"], true);

    let seeded = dir.path().join("family.json");
    fs::write(&seeded, r#"{"subcommand": "gen-family", "parameters": {"m": 3, "n": 2}, "seed": 5}"#).unwrap();
    let a = rootline(&["run", "--manifest", path_str(&seeded)]);
    let b = rootline(&["gen-family", "--m", "3", "--n", "2", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);

    let unknown = dir.path().join("unknown.json");
    fs::write(&unknown, r#"{"subcommand": "frobnicate"}"#).unwrap();
    assert_eq!(rootline(&["run", "--manifest", path_str(&unknown)]).status.code(), Some(2));
}

#[test]
fn selftest_single_criterion() {
    let out = rootline(&["selftest", "--criterion", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"][0]["id"], 6);
    assert!(String::from_utf8_lossy(&out.stderr).contains("C06 PASS"));
}
