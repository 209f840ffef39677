use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use sumsets::verifier::{CheckReport, ProofTrace, ScanSummary, SearchResult};
use sumsets::PlReport;
use sumsets_cli::{run, Outcome, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn sumsets(args: &[&str]) -> Outcome {
    run(std::iter::once("sumsets").chain(args.iter().copied()))
}

fn ok_json(args: &[&str]) -> Value {
    let o = sumsets(args);
    assert_eq!(o.code, EXIT_OK, "{args:?}: {}", o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

#[test]
#[allow(clippy::approx_constant)]
fn check_pl_example() {
    let v = ok_json(&["check-pl", "--a", "0:1", "--b", "0:1,1:1", "--p", "0.5"]);
    assert_eq!(v["lhs"], 1.5);
    assert!((v["rhs"].as_f64().unwrap() - 1.414214).abs() < 1e-6);
    assert_eq!(v["holds"], true);
}

#[test]
fn check_pl_accepts_weight_files_and_continuous_mode() {
    let w = fixture("weight.json");
    let v = ok_json(&["check-pl", "--a", &w, "--b", &w, "--p", "0.3", "--continuous"]);
    for key in ["prop21", "star1", "pl"] {
        assert_eq!(v[key]["holds"], true, "{key}");
    }
}

#[test]
fn equality_fixture_reports_equality() {
    let (a, u) = (fixture("box2.pts"), fixture("unit2.pts"));
    let o = sumsets(&["check-theorem", "--a", &a, "--b", &a, "--u", &u]);
    assert_eq!(o.code, EXIT_OK);
    let r: CheckReport = serde_json::from_str(&o.stdout).unwrap();
    assert!(r.equality);
    assert_eq!(r.lhs, 16);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["equality"], true);
}

#[test]
fn sigma_fixture_is_a_quasicube() {
    let v = ok_json(&["quasicube", "is", "--set", &fixture("sigma.pts")]);
    assert_eq!(v["result"], true);
    let text = sumsets(&["quasicube", "is", "--set", &fixture("sigma.pts"), "--format", "text"]);
    assert!(text.stdout.starts_with("true\n"));
    let literal = ok_json(&["quasicube", "is", "--set", "0,0;1,0;0,1;1,2"]);
    assert_eq!(literal["result"], false);
    let permuted = ok_json(&["quasicube", "is", "--set", "0,0;1,0;0,1;1,2", "--permute"]);
    assert_eq!(permuted["result"], true);
    assert_eq!(permuted["perm"], serde_json::json!([1, 0]));
}

#[test]
fn exit_codes() {
    assert_eq!(sumsets(&["--help"]).code, EXIT_OK);
    assert_eq!(sumsets(&["--version"]).code, EXIT_OK);
    assert_eq!(sumsets(&[]).code, EXIT_USAGE);
    assert_eq!(sumsets(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(sumsets(&["check-pl", "--a", "0:1", "--b", "0:1", "--p", "0.5", "--bogus"]).code, EXIT_USAGE);
    assert_eq!(sumsets(&["check-pl", "--a", "0:1", "--b", "0:1", "--p", "1.5"]).code, EXIT_USAGE);
    assert_eq!(sumsets(&["check-theorem", "--a", "0,0;1", "--b", "0", "--u", "0"]).code, EXIT_USAGE);
    assert_eq!(sumsets(&["sumset", "--a", "/no/such/file.pts", "--b", "0"]).code, EXIT_USAGE);
    let o = sumsets(&["scan", "--box", "0..5", "--budget", "10"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("budget"), "{}", o.stderr);
    assert_eq!(sumsets(&["--grid", "1", "--print-config"]).code, EXIT_USAGE);

    // U = {0,1,2} is in no quasicube.
    let args = ["check-theorem", "--a", "0;1", "--b", "0", "--u", "0;1;2"];
    assert_eq!(sumsets(&args).code, EXIT_USAGE);
    let mut loose = args.to_vec();
    loose.push("--no-require-quasicube");
    let o = sumsets(&loose);
    assert_eq!(o.code, EXIT_CHECK_FAILED);
    let r: CheckReport = serde_json::from_str(&o.stdout).unwrap();
    assert!(!r.holds);
}

#[test]
fn sumset_outputs_reparse() {
    let o = sumsets(&["sumset", "--a", "0,0;1,0", "--b", "0,0;0,1", "--u", "5,5", "--canonical", "--format", "text"]);
    assert_eq!(o.code, EXIT_OK);
    let back = sumsets::PointSet::parse_text(&o.stdout, Some(2)).unwrap();
    assert_eq!(back.len(), 4);
    assert!(back.is_canonical());
    let v = ok_json(&["sumset", "--a", &fixture("line01.json"), "--b", &fixture("line3.pts")]);
    assert_eq!(v, serde_json::json!([[0], [1], [2], [3]]));
    let csv = sumsets(&["sumset", "--a", "0;1", "--b", "0", "--format", "csv"]);
    assert_eq!(csv.stdout, "x0\n0\n1\n");
}

#[test]
fn maxconv_formats() {
    let v = ok_json(&["maxconv", "--a", "0:1,1:2", "--b", "0:1,1:1"]);
    assert_eq!(v, serde_json::json!({"0": 1.0, "1": 2.0, "2": 2.0}));
    let csv = sumsets(&["maxconv", "--a", "0:1", "--b", "3:2", "--format", "csv"]);
    assert_eq!(csv.stdout, "n,value\n3,2\n");
}

#[test]
fn json_reports_round_trip() {
    let pl = sumsets(&["check-pl", "--a", "0:1,2:3", "--b", "-1:2", "--p", "0.25"]);
    let parsed: PlReport = serde_json::from_str(&pl.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", pl.stdout);

    let tr = sumsets(&["trace", "--a", "0,0;1,0;2,1", "--b", "0,0;0,1", "--u", &fixture("sigma.pts")]);
    assert_eq!(tr.code, EXIT_OK, "{}", tr.stderr);
    let parsed: ProofTrace = serde_json::from_str(&tr.stdout).unwrap();
    assert!(parsed.valid);
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", tr.stdout);

    let sc = sumsets(&["scan", "--box", "0..1,0..1", "--u", &fixture("sigma.pts")]);
    let parsed: ScanSummary = serde_json::from_str(&sc.stdout).unwrap();
    assert_eq!(parsed.violations, 0);
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", sc.stdout);

    let se = sumsets(&["search", "--box", "0..2,0..2", "--steps", "300", "--seed", "5"]);
    let parsed: SearchResult = serde_json::from_str(&se.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", se.stdout);
}

#[test]
fn search_is_byte_identical_for_a_seed() {
    let args = ["search", "--box", "0..2,0..2", "--steps", "1000", "--restarts", "3", "--seed", "99"];
    let first = sumsets(&args);
    assert_eq!(first.code, EXIT_OK);
    assert_eq!(sumsets(&args), first);
    let mut parallel = args.to_vec();
    parallel.extend(["--workers", "3"]);
    assert_eq!(sumsets(&parallel).stdout, first.stdout);
    let mut other = args.to_vec();
    other[args.len() - 1] = "100";
    assert_ne!(sumsets(&other).stdout, first.stdout);
}

#[test]
fn scan_is_worker_independent() {
    let base = ["scan", "--box", "0..3", "--max-a", "4", "--max-b", "4", "--u-box", "0..4", "--max-u", "2"];
    let one = sumsets(&[&base[..], &["--workers", "1"]].concat());
    let four = sumsets(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(one.code, EXIT_OK);
    assert_eq!(one.stdout, four.stdout);
    let v: Value = serde_json::from_str(&one.stdout).unwrap();
    assert_eq!(v["instances"], 960);
    assert_eq!(v["violations"], 0);
}

#[test]
fn config_file_and_flag_precedence() {
    let cfg = fixture("run.toml");
    let o = sumsets(&["--config", &cfg, "--print-config", "--format", "json"]);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["rel_tol"], 1e-6);
    assert_eq!(v["workers"], 2);
    assert_eq!(v["grid_per_cell"], 64);
    let o = sumsets(&["--config", &cfg, "--seed", "3", "--print-config", "--format", "json"]);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["seed"], 3);
    let text = sumsets(&["--print-config", "--format", "text"]).stdout;
    assert_eq!(sumsets::Config::from_kv_text(&text).unwrap(), sumsets::Config::default());
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let p = path.to_str().unwrap();
    let o = sumsets(&["check-pl", "--a", "0:1", "--b", "0:1,1:1", "--p", "0.5", "--out", p]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["lhs"], 1.5);
}

#[test]
fn enumerate_counts() {
    let v = ok_json(&["quasicube", "enumerate", "--box", "0..2,0..2"]);
    assert_eq!(v["count"], 27);
    let v = ok_json(&["quasicube", "enumerate", "--box", "0..1", "--dim", "3", "--canonical"]);
    assert_eq!(v["count"], 1);
    assert_eq!(sumsets(&["quasicube", "enumerate", "--box", "0..5,0..5,0..5"]).code, EXIT_USAGE);
    let c = ok_json(&["quasicube", "contains", "--set", "0,0;2,1"]);
    assert_eq!(c["result"], true);
}

#[test]
fn text_and_csv_render() {
    let (a, u) = (fixture("box2.pts"), fixture("unit2.pts"));
    let text = sumsets(&["check-theorem", "--a", &a, "--b", &a, "--u", &u, "--format", "text"]).stdout;
    assert!(text.lines().next().unwrap().starts_with("lhs "));
    let csv = sumsets(&["check-theorem", "--a", &a, "--b", &a, "--u", &u, "--format", "csv"]).stdout;
    assert_eq!(csv, "lhs,lhs_sq,rhs_sq,holds,equality,ratio_sq\n16,256,256,true,true,1\n");
    let trace = sumsets(&["trace", "--a", "0;1", "--b", "0;2", "--u", "0;2", "--format", "text"]).stdout;
    assert!(trace.starts_with("[VALID]"));
    let search = sumsets(&["search", "--box", "0..3", "--steps", "50", "--format", "csv"]).stdout;
    assert!(search.starts_with("restart,step,ratio_sq\n0,0,"));
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_sumsets");
    let ok = Command::new(bin).args(["check-pl", "--a", "0:1", "--b", "0:1,1:1", "--p", "0.5"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("\"holds\": true"));
    let bad = Command::new(bin).args(["sumset", "--a", "0;0,1", "--b", "0"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
    let failed = Command::new(bin)
        .args(["check-theorem", "--a", "0;1", "--b", "0", "--u", "0;1;2", "--no-require-quasicube"])
        .output()
        .unwrap();
    assert_eq!(failed.status.code(), Some(2));
}
