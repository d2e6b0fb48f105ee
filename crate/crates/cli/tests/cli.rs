use std::path::PathBuf;
use std::process::{Command, Output};

fn adcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adcode")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data");
    dir.join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn validate_exit_codes() {
    let ok = adcode(&["validate", &data("five_1_3.code")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("five_1_3 [[5,1]]: valid"));
    let bad = adcode(&["validate", &data("anticommuting.code")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("anticommute"));
    let typo = adcode(&["validate", &data("malformed.code")]);
    assert_eq!(typo.status.code(), Some(2));
    assert!(stderr(&typo).contains("line 4"), "{}", stderr(&typo));
    assert_eq!(adcode(&["validate", "no_such_code"]).status.code(), Some(2));
    assert_eq!(adcode(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn concat_writes_the_golden_stabilizer() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ten.code");
    let run = adcode(&["concat", &data("five_1_3.code"), "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0), "{}", stderr(&run));
    let text = std::fs::read_to_string(&out).unwrap();
    let golden: Vec<&str> =
        include_str!("../../core/tests/data/golden_10_1.paulis").lines().filter(|l| !l.starts_with('#')).collect();
    let body: Vec<&str> = text.lines().skip_while(|l| *l != "STABILIZER").skip(1).take(9).collect();
    assert_eq!(body, golden);
    assert_eq!(adcode(&["verify", out.to_str().unwrap(), "--t", "2"]).status.code(), Some(0));

    let eight = dir.path().join("eight.code");
    adcode(&["concat", &data("c4_2_2.code"), "--out", eight.to_str().unwrap()]);
    assert!(std::fs::read_to_string(&eight).unwrap().starts_with("CODE n=8 k=2"));
    assert_eq!(adcode(&["verify", eight.to_str().unwrap(), "--t", "1"]).status.code(), Some(0));

    assert_eq!(adcode(&["concat", &data("anticommuting.code")]).status.code(), Some(1));
}

#[test]
fn verify_verdicts_and_determinism() {
    assert_eq!(adcode(&["verify", "shor_9_1", "--t", "2"]).status.code(), Some(0));
    let fail = adcode(&["verify", "leung_4_1", "--t", "2"]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).contains("A{} B{0,2}: class a=0 b=1"), "{}", stdout(&fail));
    let over = adcode(&["verify", "five_1_3", "--t", "3", "--budget", "1e3"]);
    assert_eq!(over.status.code(), Some(1));
    assert!(stderr(&over).contains("exceeds budget"));

    let dir = tempfile::tempdir().unwrap();
    let json = |jobs: &str| {
        let path = dir.path().join(format!("report_{jobs}.json"));
        let run = adcode(&["verify", "bacon_shor:2", "--t", "2", "--jobs", jobs, "--json", path.to_str().unwrap()]);
        assert_eq!(run.status.code(), Some(0));
        std::fs::read(path).unwrap()
    };
    let one = json("1");
    assert_eq!(one, json("8"));
    let parsed: serde_json::Value = serde_json::from_slice(&one).unwrap();
    assert_eq!(parsed["verdict"], "pass");
    assert_eq!(parsed["model"], "knill-laflamme");
}

#[test]
fn distance_and_export() {
    let d = adcode(&["distance", "five_1_3"]);
    assert!(stdout(&d).contains("d = 3"));
    let json = adcode(&["export-json", &data("c4_2_2.code")]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!((v["n"].as_u64(), v["k"].as_u64()), (Some(4), Some(2)));
    assert_eq!(v["stabilizer"][0], "+XXXX");
}

#[test]
fn tables_report_sources() {
    let run = adcode(&["tables", "--k", "1,6", "--t", "2", "--json"]);
    assert_eq!(run.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(rows[0]["n"], 10);
    assert_eq!(rows[0]["source"], "constructed");
    assert_eq!(rows[0]["outer_code"], "five_1_3");
    assert_eq!(rows[1]["source"], "reference-only");
    assert_eq!(rows[1]["n"], 24);
}

#[test]
fn channel_lemma() {
    for lemma in ["dualrail", "qutrit3"] {
        let run = adcode(&["channel", "--lemma", lemma, "--gamma", "0.3,0.5"]);
        assert_eq!(run.status.code(), Some(0));
        assert_eq!(stdout(&run).matches(": pass").count(), 2);
    }
    assert_eq!(adcode(&["channel", "--lemma", "dualrail", "--gamma", "1.5"]).status.code(), Some(1));
}

#[test]
fn fidelity_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("f.csv");
    let json = dir.path().join("f.json");
    let run = adcode(&[
        "fidelity",
        "--code",
        "leung_4_1",
        "--t",
        "1",
        "--csv",
        csv.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0), "{}", stderr(&run));
    assert_eq!(std::fs::read_to_string(csv).unwrap().lines().count(), 5);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert!((v["fitted_exponent"].as_f64().unwrap() - 2.0).abs() < 0.15);
    let capped = adcode(&["fidelity", "--code", "bacon_shor:3", "--t", "3"]);
    assert_eq!(capped.status.code(), Some(1));
    assert!(stderr(&capped).contains("dense cap"));
}
