use std::process::{Command, Output};

use normlat::catalog::STANDARD_CATALOG;
use serde_json::Value;

fn normlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normlat")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, String) {
    let out = normlat(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    (serde_json::from_str(&text).unwrap(), text)
}

#[test]
fn analyze_sl23() {
    let (v, _) = json(&["analyze", "SL23", "--json"]);
    let socle = &v["socleDecomposition"];
    assert_eq!(socle["a"], 1);
    assert_eq!(socle["b"], 0);
    assert_eq!(socle["abelian"][0]["multiplicity"], 1);
    assert_eq!(socle["abelian"][0]["fieldSize"], 2);
    assert_eq!(v["faithful"]["faithfulSumSquares"], 12);
    assert_eq!(v["groupSpec"], "SL23");
    assert_eq!(v["order"], 24);
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [
        &["analyze", "SL23", "--json"][..],
        &["analyze", "S4xC2", "--json", "--verify"],
        &["lattice", "D4", "--json"],
        &["moebius", "C2^4", "--json"],
        &["generate", "C2^2xC3^2", "--json"],
        &["chartable", "A5", "--json"],
        &["faithful", "Q8xC3", "--json"],
    ] {
        let (v, text) = json(args);
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(again, text, "{args:?}");
        if args[0] == "analyze" {
            let report: normlat::report::AnalysisReport = serde_json::from_str(&text).unwrap();
            assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
        }
    }
}

#[test]
fn wide_integers_are_strings() {
    // f_36 of a group with 36 classes is 36!.
    let (v, _) = json(&["generate", "C2^2xC3^2", "--json"]);
    let fk = v["fk"].as_array().unwrap();
    let last = &fk[fk.len() - 1]["value"];
    assert!(last.is_string(), "{last}");
    assert!(fk[2]["value"].is_number());
}

#[test]
fn exit_codes() {
    assert_eq!(normlat(&["moebius", "C1"]).status.code(), Some(3));
    assert_eq!(normlat(&["analyze", "Q9"]).status.code(), Some(2));
    assert_eq!(normlat(&["analyze"]).status.code(), Some(2));
    assert_eq!(normlat(&["lattice", "perm:(1 1)"]).status.code(), Some(2));
    assert_eq!(normlat(&["analyze", "S5", "--cap", "60"]).status.code(), Some(3));
    assert_eq!(normlat(&["generate", "S3", "--tolerance", "abc"]).status.code(), Some(2));
}

#[test]
fn generate_s3() {
    let (v, _) = json(&["generate", "S3", "--json"]);
    assert_eq!(v["classGeneratingNumber"], 1);
    let fk = v["fk"].as_array().unwrap();
    assert_eq!(fk[1]["k"], 1);
    assert_eq!(fk[1]["value"], 1);
    let (v, _) = json(&["generate", "S3", "--k", "2", "--json"]);
    assert_eq!(v["fk"].as_array().unwrap().len(), 1);
}

#[test]
fn text_outputs() {
    let out = normlat(&["lattice", "C2^2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("group C2^2 of order 4: 5 normal subgroups\n"));
    assert_eq!(text.matches("    < N4 (order 4)").count(), 3);

    let text = String::from_utf8(normlat(&["chartable", "S3"]).stdout).unwrap();
    assert!(text.contains("[2, -1, 0]") || text.contains("[2, 0, -1]"), "{text}");

    let text = String::from_utf8(normlat(&["faithful", "SL23"]).stdout).unwrap();
    assert!(text.starts_with("sum of squared faithful degrees 12\n"));
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("normlat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = normlat(&["analyze", "A4", "--json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["order"], 12);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_whole_catalog() {
    for name in STANDARD_CATALOG {
        let out = normlat(&["analyze", name, "--verify"]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
}
