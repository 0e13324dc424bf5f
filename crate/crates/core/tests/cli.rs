use std::path::{Path, PathBuf};
use std::process::Command;

use acwd::cli::{self, parse_spec, read_spec, tensor_from_json, OutputFormat, ResultDocument};
use acwd::Error;

fn specs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/specs")
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_acwd"))
}

#[test]
fn every_shipped_spec_builds_and_evaluates() {
    for entry in std::fs::read_dir(specs()).unwrap() {
        let path = entry.unwrap().path();
        let doc = read_spec(&path).unwrap();
        let out = cli::cmd_acwd(&doc, OutputFormat::Json, false).unwrap();
        let parsed: ResultDocument = serde_json::from_str(&out).unwrap();
        let t = tensor_from_json(&parsed.result).unwrap();
        assert!(t.total_mass_defects().is_empty(), "{}", path.display());
        assert_eq!(t, doc.ensemble.build().unwrap().acwd().unwrap().tensor().clone());
    }
}

#[test]
fn json_round_trip_of_spec_and_result() {
    let doc = read_spec(&specs().join("concat_bipartite.json")).unwrap();
    let again = parse_spec(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(doc, again);
    let out = cli::cmd_acwd(&doc, OutputFormat::Json, false).unwrap();
    let parsed: ResultDocument = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed.to_json(), out);
    assert_eq!(parsed.result["entries"][0][4], "63");
    assert_eq!(parsed.provenance.library_version, env!("CARGO_PKG_VERSION"));
}

#[test]
fn schema_errors() {
    let bad = [
        r#"{"version":2,"ensemble":{"kind":"bipartite","j":1,"k":2,"n":4}}"#,
        r#"{"version":1,"ensemble":{"kind":"bipartite","j":1,"k":2,"n":4,"extra":0}}"#,
        r#"{"version":1,"ensemble":{"kind":"bipartite","j":1,"k":2,"n":4,"m":3}}"#,
        r#"{"version":1,"ensemble":{"kind":"hexagon"}}"#,
        r#"{"version":1,"ensemble":{"kind":"single_matrix","rows":["10","1"]}}"#,
        "not json",
    ];
    for text in bad {
        let err = parse_spec(text).and_then(|d| d.ensemble.build().map(|_| ())).unwrap_err();
        assert_eq!(err.exit_code(), 2, "{text}: {err}");
    }
}

#[test]
fn oracle_command_reports_match() {
    let doc = read_spec(&specs().join("oracle_composition.json")).unwrap();
    let out = cli::cmd_oracle(&doc, OutputFormat::Json, false).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["exact_match"], true);
    assert_eq!(v["provenance"]["mode"], "oracle");
}

#[test]
fn split_acwd_shapes() {
    let type1 = read_spec(&specs().join("type1_columns.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&cli::cmd_split_acwd(&type1, OutputFormat::Json, false).unwrap()).unwrap();
    assert_eq!(v["result"]["type"], "acwd_table");
    let type2 = read_spec(&specs().join("type2_columns.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&cli::cmd_split_acwd(&type2, OutputFormat::Json, false).unwrap()).unwrap();
    assert_eq!(v["result"]["parts"], serde_json::json!([1, 1]));
    let bad = parse_spec(
        r#"{"version":1,"ensemble":{"kind":"concat","children":[
            {"kind":"single_matrix","rows":["110","011"]},
            {"kind":"bipartite","j":2,"k":2,"n":2}]}}"#,
    )
    .unwrap();
    assert!(matches!(cli::cmd_split_acwd(&bad, OutputFormat::Csv, false), Err(Error::Shape(_))));
}

#[test]
fn agr_and_typical_weight_output() {
    let csv = cli::cmd_agr(3, 6, &[0.0, 1.0], 10, OutputFormat::Csv).unwrap();
    assert!(csv.starts_with("eta,ell,agr\n"));
    assert_eq!(csv.lines().count(), 1 + 2 * 11);
    assert!(csv.contains("-inf"));
    let tw = cli::cmd_typical_weight(3, 6, &[0.0, 0.2, 0.8], OutputFormat::Csv).unwrap();
    assert_eq!(tw, "eta,theta\n0,0.02273\n0.2,0.0788\n0.8,0.1463\n");
}

#[test]
fn binary_writes_table_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let status = bin()
        .args(["acwd", "--format", "csv", "--spec"])
        .arg(specs().join("bipartite_1_2.json"))
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("0,1,0,3,0,3,0,1"), "{text}");
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let code = |args: &[&str], spec: Option<&Path>| {
        let mut c = bin();
        c.args(args);
        if let Some(p) = spec {
            c.arg("--spec").arg(p);
        }
        c.output().unwrap().status.code().unwrap()
    };
    assert_eq!(code(&["acwd"], Some(&dir.path().join("missing.json"))), 1);
    let schema = write("schema.json", r#"{"version":1,"ensemble":{"kind":"bipartite","j":1}}"#);
    assert_eq!(code(&["acwd"], Some(&schema)), 2);
    let big = write("big.json", r#"{"version":1,"ensemble":{"kind":"bipartite","j":2,"k":4,"n":6}}"#);
    assert_eq!(code(&["acwd"], Some(&big)), 0);
    assert_eq!(code(&["oracle"], Some(&big)), 3);
    assert_eq!(code(&["typical-weight", "--j", "1", "--k", "2", "--eta", "0"], None), 4);
    assert_eq!(code(&["agr", "--j", "4", "--k", "2"], None), 2);
}
