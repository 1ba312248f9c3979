use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use steklov::families::{make_family, FamilyDescriptor};
use steklov::steklov_spectrum;
use steklov_cli::edgelist::parse_tree;

fn steklov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steklov"))
        .args(args)
        .output()
        .unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

#[test]
fn spectrum_of_a_path_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("path4.edges");
    fs::write(&path, "n=4\n0 1\n1 2\n2 3\n").unwrap();
    let out = steklov(&["spectrum", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json_of(&out);
    assert_eq!(floats(&j["eigenvalues"]), [0.0, 0.666666666667]);
    assert_eq!(j["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(j["tolerance"], 1e-9);
    assert_eq!(j["n"], 4);
}

#[test]
fn family_report() {
    let out = steklov(&["family", "af:3,1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json_of(&out);
    assert_eq!(floats(&j["eigenvalues"]), [0.0, 0.6, 1.0]);
    assert_eq!(j["predicted"][1]["exact"], "3/5");
    assert_eq!(j["match"], true);
}

#[test]
fn family_edge_list_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for d in [
        "af:4,3",
        "cg:2,3,2",
        "barbell:3,2,6",
        "as:3,4,2",
        "ruler:2,3",
        "path:7",
    ] {
        let file = dir.path().join("tree.edges");
        let out = steklov(&[
            "family",
            d,
            "--edges-out",
            file.to_str().unwrap(),
            "--format",
            "json",
        ]);
        assert_eq!(out.status.code(), Some(0), "{d}");
        let family_values = floats(&json_of(&out)["eigenvalues"]);

        let out = steklov(&["spectrum", file.to_str().unwrap(), "--format", "json"]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(floats(&json_of(&out)["eigenvalues"]), family_values, "{d}");

        // Unrounded comparison through the library.
        let reread = parse_tree(&fs::read_to_string(&file).unwrap()).unwrap();
        let fam = make_family(&d.parse::<FamilyDescriptor>().unwrap()).unwrap();
        let a = steklov_spectrum(fam.tree.graph()).unwrap();
        let b = steklov_spectrum(reread.graph()).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() <= 1e-12, "{d}");
        }
    }
}

#[test]
fn search_record() {
    let out = steklov(&["search", "--leaves", "3", "--n", "8", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("mode,b_or_D,n,k,max_value,predicted_value,match,attainer_codes"));
    assert!(lines
        .next()
        .unwrap()
        .starts_with("leaves,3,8,2,0.375,0.375,true,"));

    let out = steklov(&[
        "search",
        "--diameter",
        "3",
        "--n",
        "5",
        "--k",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let j = json_of(&out);
    assert_eq!(j["query"]["record"]["value"], 0.6);
    assert_eq!(j["query"]["record"]["predicted"]["exact"], "3/5");

    // More leaves than vertices allow is a usage error.
    assert_eq!(
        steklov(&["search", "--leaves", "9", "--n", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_small_orders_pass() {
    let out = steklov(&["verify", "--n-max", "7", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("mode,b_or_D,n,k,max_value,predicted_value,match,attainer_codes"));
    assert!(text
        .lines()
        .any(|l| l.starts_with("diameter,1,2,2,2,1,flagged,")));
    assert!(!text.lines().any(|l| l.split(',').nth(6) == Some("false")));
}

#[test]
fn verify_reports_predicate_counterexample() {
    let out = steklov(&[
        "verify",
        "--n-max",
        "8",
        "--theorem",
        "diameter",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let bad: Vec<_> = text
        .lines()
        .filter(|l| l.split(',').nth(6) == Some("false"))
        .collect();
    assert_eq!(bad.len(), 1);
    assert!(bad[0].starts_with("diameter,4,8,2,0.5,0.5,false,"));
}

#[test]
fn conjecture_is_reported_not_asserted() {
    let out = steklov(&["conjecture", "--n-max", "9", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json_of(&out);
    let rows = j["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["consistent"] == true));
    let r = rows.iter().find(|r| r["D"] == 5 && r["n"] == 8).unwrap();
    assert_eq!(r["conjectured"], 0.4);
}

#[test]
fn properties_run() {
    let out = steklov(&[
        "properties",
        "--trials",
        "50",
        "--n-max",
        "9",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["passed"], true);
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("report.json");
    let args = ["verify", "--n-max", "6", "--format", "json"];
    let a = steklov(&args);
    let b = steklov(&args);
    assert_eq!(a.stdout, b.stdout);
    let out = steklov(&[&args[..], &["--out", file.to_str().unwrap()]].concat());
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read(&file).unwrap(), a.stdout);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.edges");
    fs::write(&bad, "0 1\n1 2\n2 0\n").unwrap();
    let bad = bad.to_str().unwrap();
    let missing = dir.path().join("missing.edges");

    assert_eq!(steklov(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(steklov(&["spectrum"]).status.code(), Some(2));
    assert_eq!(
        steklov(&["--tol", "0.01", "family", "af:3,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        steklov(&["--tol", "0", "family", "af:3,1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        steklov(&["search", "--leaves", "3", "--diameter", "3", "--n", "6"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(steklov(&["spectrum", bad]).status.code(), Some(3));
    assert_eq!(steklov(&["family", "af:0,1"]).status.code(), Some(4));
    assert_eq!(steklov(&["family", "octopus:3"]).status.code(), Some(4));
    assert_eq!(steklov(&["verify", "--n-max", "17"]).status.code(), Some(5));
    assert_eq!(
        steklov(&["conjecture", "--n-max", "40"]).status.code(),
        Some(5)
    );
    assert_eq!(
        steklov(&["search", "--leaves", "3", "--n", "19"])
            .status
            .code(),
        Some(5)
    );
    assert_eq!(
        steklov(&["spectrum", missing.to_str().unwrap()])
            .status
            .code(),
        Some(6)
    );
}
