use feynops::charcalc::ChiRow;
use feynops::sixfun::FunctorReport;
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::process::{Command, Output};

fn feynops(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_feynops")).args(args).env_remove("FEYNOPS_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[derive(Serialize, Deserialize)]
struct ChiLine {
    #[serde(flatten)]
    row: ChiRow,
    expected_chi_delta: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    oracle_a: Option<String>,
}

#[test]
fn chi_rows() {
    let o = feynops(&["chi", "--n-max", "5", "--format", "tsv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    let got: Vec<(&str, &str)> = rows.iter().map(|r| (r[0], r[5])).collect();
    assert_eq!(got, vec![("3", "2"), ("4", "-2"), ("5", "13")]);
}

#[test]
fn chi_json_round_trips() {
    let o = feynops(&["chi", "--n-max", "3", "--format", "json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<ChiLine> = serde_json::from_str(&text).unwrap();
    assert_eq!(lines.len(), 1);
    assert_eq!(serde_json::to_string_pretty(&lines).unwrap() + "\n", text);
}

#[test]
fn chi_oracle_agrees() {
    let o = feynops(&["chi", "--oracle", "--n-max", "4", "--format", "json"]);
    assert!(o.status.success());
    let lines: Vec<ChiLine> = serde_json::from_str(&stdout(&o)).unwrap();
    for l in &lines {
        assert_eq!(l.oracle_a.as_deref(), Some(feynops::exactlin::fmt_rat(&l.row.a).as_str()));
    }
}

#[test]
fn enumerate_counts() {
    for (args, want) in [
        (&["--flavor", "cyclic", "--flags", "4", "--degree", "1"][..], "3"),
        (&["--flavor", "cyclic", "--flags", "3", "--degree", "1"][..], "0"),
        (&["--flavor", "modular", "--genus", "1", "--flags", "1", "--degree", "1"][..], "1"),
    ] {
        let mut full = vec!["enumerate", "--format", "tsv"];
        full.extend(args);
        let o = feynops(&full);
        assert!(o.status.success());
        let text = stdout(&o);
        let count = text.lines().nth(1).unwrap().split('\t').nth(1).unwrap().to_string();
        assert_eq!(count, want, "{args:?}");
    }
}

#[test]
fn enumerate_dump_lists_each_class() {
    let o = feynops(&["enumerate", "--flavor", "cyclic", "--flags", "5", "--dump", "--format", "tsv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let dumped = text.lines().filter(|l| l.starts_with("#class\t2\t")).count();
    assert_eq!(dumped, 15);
}

#[test]
fn unstable_signature_is_a_usage_error() {
    let o = feynops(&["enumerate", "--flavor", "cyclic", "--flags", "2", "--degree", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

fn cache_files(dir: &Path) -> usize {
    std::fs::read_dir(dir).map(|d| d.count()).unwrap_or(0)
}

#[test]
fn cache_dir_flag_beats_env() {
    let (env_dir, flag_dir) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let o = Command::new(env!("CARGO_BIN_EXE_feynops"))
        .args(["--cache-dir", flag_dir.path().to_str().unwrap(), "enumerate", "--flavor", "cyclic", "--flags", "5"])
        .env("FEYNOPS_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(cache_files(flag_dir.path()) > 0);
    assert_eq!(cache_files(env_dir.path()), 0);

    let o = Command::new(env!("CARGO_BIN_EXE_feynops"))
        .args(["enumerate", "--flavor", "cyclic", "--flags", "5"])
        .env("FEYNOPS_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(cache_files(env_dir.path()) > 0);
    // a warm cache gives the same answer
    let again = Command::new(env!("CARGO_BIN_EXE_feynops"))
        .args(["enumerate", "--flavor", "cyclic", "--flags", "5"])
        .env("FEYNOPS_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert_eq!(again.stdout, o.stdout);
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "dsquared", "--flavor", "cyclic", "--object", "Com", "--max-flags", "5"][..],
        &["verify", "kc-operad", "--max-arity", "4"][..],
        &["verify", "intertwine", "--morphism", "cyclic-to-modular", "--object", "Com", "--max-genus", "1", "--max-flags", "4"][..],
        &["verify", "ambidex", "--instances", "10"][..],
        &["--threads", "2", "verify", "binomial", "--dim-a", "1", "--max-flags", "3"][..],
    ] {
        let o = feynops(args);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stderr.is_empty());
    }
}

#[test]
fn verify_json_round_trips() {
    let o = feynops(&["verify", "koszul-map", "--object", "Com", "--max-flags", "5", "--format", "json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let reports: Vec<FunctorReport> = serde_json::from_str(&text).unwrap();
    assert!(reports.iter().all(|r| r.ok()));
    assert_eq!(serde_json::to_string_pretty(&reports).unwrap() + "\n", text);
}

#[test]
fn strict_turns_warnings_into_failures() {
    let args = ["verify", "intertwine", "--max-degree", "1"];
    let lenient = feynops(&args);
    assert!(lenient.status.success());
    let mut strict_args = args.to_vec();
    strict_args.push("--strict");
    let strict = feynops(&strict_args);
    assert_eq!(strict.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&strict.stderr).unwrap();
    assert_eq!(err["check"], "intertwine");
    assert!(!err["failures"].as_array().unwrap().is_empty());
    assert!(!err["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn spec_file_objects() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lie.json");
    let q = feynops::catalog::lie(feynops::graphkit::Window::new(feynops::graphkit::Flavor::Cyclic, 5));
    std::fs::write(&path, feynops::opcore::DatumSpec::from_datum(&q).unwrap().to_json()).unwrap();
    let o = feynops(&["verify", "dsquared", "--object", path.to_str().unwrap(), "--max-flags", "5", "--format", "tsv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // D(Lie)((5)) has dimensions (dim Lie((5)), ...) = (6, ...)
    let row = stdout(&o).lines().find(|l| l.starts_with("((5))")).unwrap().to_string();
    assert!(row.split('\t').nth(1).unwrap().starts_with("[6,"), "{row}");

    std::fs::write(&path, "{\"name\": 1}").unwrap();
    let o = feynops(&["verify", "dsquared", "--object", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
