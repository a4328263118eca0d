use std::process::{Command, Output};

use serde_json::Value;

fn spp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spp"))
        .args(args)
        .env_remove("SPP_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn table_rows_match_published_counts() {
    let o = spp(&["table", "--max-n", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("p,l,series,enumeration,agree\n"));
    for row in ["3,2,173,173,true", "0,5,52,52,true", "1,0,1,1,true", "7,0,6322,,"] {
        assert!(out.lines().any(|l| l == row), "missing {row}");
    }
}

#[test]
fn table_beyond_series_cap_is_a_usage_error() {
    assert_eq!(spp(&["table", "--max-n", "10"]).status.code(), Some(2));
}

#[test]
fn enumerate_counts() {
    let v = json(&spp(&["enumerate", "--p", "1", "--l", "2", "--format", "json"]));
    assert_eq!(v["count"], 8);
    assert_eq!(v["partitions"].as_array().unwrap().len(), 8);
}

#[test]
fn poset_exports_are_deterministic() {
    let args = ["poset", "--p", "1", "--l", "2", "--variant", "bounded", "--format", "json"];
    let (a, b) = (spp(&args), spp(&args));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["elements"].as_array().unwrap().len(), 9);
    let dot = stdout(&spp(&["poset", "--p", "1", "--l", "2", "--variant", "pointed"]));
    assert!(dot.starts_with("digraph"));
}

#[test]
fn invariants_report_the_semimodularity_witness() {
    let v = json(&spp(&["invariants", "--p", "2", "--l", "2", "--variant", "bounded", "--format", "json"]));
    assert_eq!(v["dual_totally_semimodular"], false);
    assert_eq!(v["semimodularity_witness"]["b"], "{1,2,3,4}");
    assert_eq!(v["homology"]["concentrated"], true);
    assert_eq!(v["homology"]["top"], 18);
    assert_eq!(v["expected_top_dimension"], "18");
}

#[test]
fn worked_character_value() {
    let o = spp(&["character", "--lambda", "1", "--mu", "0,1", "--variant", "t-family"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["closed"], "t^2 - t");
    assert_eq!(v["oracle"]["t=1"], "0");
    assert_eq!(v["match"], true);
}

#[test]
fn original_pointed_formula_disagrees_on_a_transposition() {
    let args = ["character", "--lambda", "1,1", "--mu", "1", "--variant", "pointed"];
    assert_eq!(spp(&args).status.code(), Some(0));
    let mut original = args.to_vec();
    original.push("--original");
    let o = spp(&original);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["match"], false);
}

#[test]
fn charpoly_sources_agree() {
    let v = json(&spp(&["charpoly", "--p", "2", "--l", "1", "--variant", "pointed", "--format", "json"]));
    assert_eq!(v["closed"], "t^2 - 4*t + 3");
    assert_eq!(v["series"], v["closed"]);
    assert_eq!(v["mobius"], v["closed"]);
    let v = json(&spp(&["charpoly", "--p", "1", "--l", "1", "--variant", "bounded", "--format", "json"]));
    assert_eq!(v["closed"], "t^2 - 2*t + 1");
}

#[test]
fn series_json_shape() {
    let v = json(&spp(&["series", "--which", "cminus1", "--order", "3", "--format", "json"]));
    assert_eq!(v["k"], -1);
    let first = &v["series"]["pointed"]["coeffs"][0];
    assert_eq!((first["p"].clone(), first["l"].clone(), first["num"].clone()), (1.into(), 0.into(), "1".into()));
}

#[test]
fn verify_writes_a_round_tripping_report() {
    let path = std::env::temp_dir().join(format!("spp-report-{}.json", std::process::id()));
    let args = ["verify", "--suite", "hopf", "--max-n", "3", "--no-timing", "--report", path.to_str().unwrap()];
    let o = spp(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let report: spp_core::verify::VerifyReport = serde_json::from_str(&text).unwrap();
    assert!(report.pass);
    assert!(report.checks.iter().all(|c| c.wall_ms.is_none()));
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
    assert_eq!(spp(&args[..6]).stdout, spp(&args[..6]).stdout);
}

#[test]
fn verify_core_fails_on_the_semimodularity_counterexample() {
    let o = spp(&["verify", "--suite", "core", "--max-n", "4", "--no-timing", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let failing: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|c| c["name"] == "dual totally semimodular"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(spp(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(spp(&["enumerate", "--p", "4", "--l", "4"]).status.code(), Some(2));
    assert_eq!(spp(&["poset", "--p", "1", "--l", "1", "--variant", "pointed", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(spp(&["charpoly", "--p", "0", "--l", "2", "--variant", "pointed"]).status.code(), Some(2));
}

#[test]
fn cap_override_warns() {
    let o = spp(&["--cap", "3", "enumerate", "--p", "2", "--l", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let o = Command::new(env!("CARGO_BIN_EXE_spp"))
        .args(["enumerate", "--p", "4", "--l", "3", "--format", "json"])
        .env("SPP_MAX_N", "7")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("SPP_MAX_N"));
    assert_eq!(json(&o)["count"], 4815);
}
