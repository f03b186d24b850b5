use std::process::{Command, Output};

use serde_json::Value;

fn gaussmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaussmap"))
        .args(args)
        .env_remove("GAUSSMAP_MAX_GENUS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn rank_table_g3_to_8() {
    let o = gaussmap(&["rank-table", "--g", "3..8", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("g,k,rank,dim_ker,dim_domain,rank_formula_ok"));
    let rows: Vec<_> = lines.collect();
    // one row per level k = 0..=(g-1)/2
    assert_eq!(rows.len(), 2 + 2 + 3 + 3 + 4 + 4);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}

#[test]
fn rank_table_single_row() {
    let o = gaussmap(&["rank-table", "--g", "5", "--k", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    let r = &rows[0];
    assert_eq!((&r["g"], &r["k"], &r["rank"], &r["dim_ker"]), (&5.into(), &2.into(), &1.into(), &0.into()));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["rank-table", "--g", "2..3"][..],
        &["rank-table", "--g", "13"],
        &["rank-table", "--g", "x"],
        &["verify", "--theorem", "T9.9", "--g", "5"],
        &["kernel", "--g", "5", "--k", "9"],
        &["rho", "--g", "3", "--quadric", "basis:2,2", "--pair", "1", "1"],
        &["rho", "--g", "3", "--quadric", "{\"1,2\": \"x\"}", "--pair", "1", "1"],
        &["rho", "--g", "3", "--quadric", "basis:1,2", "--pair", "2", "1"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&gaussmap(args)), 2, "{args:?}");
    }
}

#[test]
fn genus_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_gaussmap"))
        .args(["rank-table", "--g", "6"])
        .env("GAUSSMAP_MAX_GENUS", "5")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn kernel_both_methods_g5_k1() {
    let o = gaussmap(&["kernel", "--g", "5", "--k", "1", "--method", "both"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["methods_agree"], true);
    assert_eq!(v["basis"], serde_json::json!([{"1,4": "1", "2,3": "-3"}]));
}

#[test]
fn kernel_dimensions() {
    assert_eq!(json(&gaussmap(&["kernel", "--g", "6", "--k", "1"]))["dim"], 3);
    let v = json(&gaussmap(&["kernel", "--g", "7", "--k", "3"]));
    assert_eq!(v["basis"], serde_json::json!([]));
}

#[test]
fn rho_examples_g3() {
    let v = json(&gaussmap(&["rho", "--g", "3", "--quadric", "basis:1,2", "--pair", "1", "1"]));
    assert_eq!(v["result"]["value"], "0");

    let v = json(&gaussmap(&["rho", "--g", "3", "--quadric", "basis:1,2", "--pair", "1", "3"]));
    let val = v["result"]["value"].as_str().unwrap();
    assert_ne!(val, "0");

    let o = gaussmap(&["rho", "--g", "3", "--quadric", "basis:1,2", "--pair", "3", "3"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["error"]["code"], "BeyondThreshold");
    assert!(v.get("result").is_none());
}

#[test]
fn rho_quadric_spellings_agree() {
    let by_kernel = json(&gaussmap(&["rho", "--g", "5", "--quadric", "kernel:1:0", "--pair", "3", "5"]));
    let inline = r#"{"1,4": "1", "2,3": "-3"}"#;
    let by_json = json(&gaussmap(&["rho", "--g", "5", "--quadric", inline, "--pair", "3", "5"]));
    assert_eq!(by_kernel, by_json);
    assert_ne!(by_kernel["result"]["value"], "0");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    std::fs::write(&path, inline).unwrap();
    let by_file = json(&gaussmap(&["rho", "--g", "5", "--quadric", path.to_str().unwrap(), "--pair", "3", "5"]));
    assert_eq!(by_kernel, by_file);
}

#[test]
fn verify_passes_and_falsifications_exit_1() {
    let o = gaussmap(&["verify", "--theorem", "T6.5", "--g", "5", "--k", "1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["pass"], true);
    assert_eq!(v["suite"], "T6.5");

    // the closed-form lambda check fails from k = 1 on; the report says so
    let o = gaussmap(&["verify", "--theorem", "T6.6", "--g", "5"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    let failed: Vec<_> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["ok"] == false)
        .collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c["item"].as_str().unwrap().contains("closed-form")));
}

#[test]
fn verify_with_inline_curve() {
    let o = gaussmap(&["verify", "--theorem", "T6.5", "--g", "3", "--curve", "0,1/2,2,-3,5,7,11,13"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["curves"][0]["branch_points"][1], "1/2");
    let o = gaussmap(&["verify", "--theorem", "T6.5", "--g", "4", "--curve", "0,1,2,3,4,5,6,7"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn scan_g6() {
    let o = gaussmap(&["scan", "--g", "6", "--samples", "100", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["verdicts"]["asymptotic"], 1);
    // 100 samples plus the corners xi^3, xi^5, xi^1+xi^3, xi^3+xi^5
    assert_eq!(v["verdicts"]["not_asymptotic"], 104);
}

#[test]
fn scan_g4_top_xi3_never_asymptotic() {
    let v = json(&gaussmap(&["scan", "--g", "4", "--samples", "10", "--seed", "1"]));
    for c in v["certificates"].as_array().unwrap() {
        let lambdas = c["lambdas"].as_array().unwrap();
        assert_eq!(lambdas.len(), 2);
        let expect = if lambdas[1] == "0" { "asymptotic" } else { "not_asymptotic" };
        assert_eq!(c["verdict"], expect);
    }
}

#[test]
fn scan_g9_direction_length() {
    let v = json(&gaussmap(&["scan", "--g", "9", "--samples", "10", "--seed", "1"]));
    let certs = v["certificates"].as_array().unwrap();
    assert!(certs.iter().all(|c| c["indices"] == serde_json::json!([1, 3, 5, 7])));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["scan", "--g", "6", "--samples", "20", "--seed", "3"][..],
        &["rank-table", "--g", "3..9", "--format", "csv"],
        &["verify", "--theorem", "T6.9", "--g", "5..7"],
    ] {
        assert_eq!(gaussmap(args).stdout, gaussmap(args).stdout, "{args:?}");
    }
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.md");
    let args = ["rank-table", "--g", "4..5", "--format", "md"];
    let stdout = gaussmap(&args).stdout;
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let o = gaussmap(&with_out);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}

#[test]
fn timing_is_opt_in() {
    let plain = json(&gaussmap(&["rank-table", "--g", "3"]));
    assert!(plain.get("timing_ms").is_none());
    let timed = json(&gaussmap(&["rank-table", "--g", "3", "--timing"]));
    assert!(timed["timing_ms"].is_u64());
}
