use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_motifcf"));
    cmd.env_remove("MOTIFCF_OUTPUT_DIR");
    cmd
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/ucr")
        .join(name)
}

fn run(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("spawn motifcf");
    assert!(
        out.status.success(),
        "exit {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn metrics_only(mut report: Value) -> Value {
    let obj = report.as_object_mut().unwrap();
    obj.remove("runtime_seconds");
    obj.remove("mining_runtime_seconds");
    report
}

#[test]
fn chained_subcommands_match_run() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let (train, test) = (data("Coffee_TRAIN.tsv"), data("Coffee_TEST.tsv"));

    run(bin()
        .arg("mine")
        .arg("--train")
        .arg(&train)
        .arg("--out")
        .arg(d.join("m.json")));
    run(bin()
        .arg("explain")
        .arg("--train")
        .arg(&train)
        .arg("--test")
        .arg(&test)
        .arg("--motifs")
        .arg(d.join("m.json"))
        .args(["--method", "mgcf", "--classifier", "1nn", "--out"])
        .arg(d.join("c.json")));
    run(bin()
        .arg("evaluate")
        .arg("--cfs")
        .arg(d.join("c.json"))
        .arg("--out")
        .arg(d.join("r.json")));

    // output directory comes from the environment
    let full = d.join("full");
    run(bin()
        .arg("run")
        .arg("--train")
        .arg(&train)
        .arg("--test")
        .arg(&test)
        .env("MOTIFCF_OUTPUT_DIR", &full));

    assert_eq!(
        std::fs::read(d.join("m.json")).unwrap(),
        std::fs::read(full.join("motifs.json")).unwrap()
    );
    assert_eq!(
        json(&d.join("c.json"))["counterfactuals"],
        json(&full.join("cfs.json"))["counterfactuals"]
    );
    assert_eq!(
        metrics_only(json(&d.join("r.json"))),
        metrics_only(json(&full.join("report.json")))
    );
}

#[test]
fn nun_needs_no_motifs_and_always_flips() {
    let dir = tempfile::tempdir().unwrap();
    let cfs = dir.path().join("c.json");
    let report = dir.path().join("r.json");
    run(bin()
        .arg("explain")
        .arg("--train")
        .arg(data("ECG200_TRAIN.tsv"))
        .arg("--test")
        .arg(data("ECG200_TEST.tsv"))
        .args(["--method", "nun", "--out"])
        .arg(&cfs));
    run(bin()
        .arg("evaluate")
        .arg("--cfs")
        .arg(&cfs)
        .arg("--out")
        .arg(&report));
    let r = json(&report);
    assert_eq!(r["flip_rate"], 1.0);
    assert_eq!(r["method"], "nun");
    assert_eq!(r["per_instance"].as_array().unwrap().len(), 100);

    let out = run(bin()
        .arg("report")
        .arg("--report")
        .arg(&report)
        .args(["--format", "csv"]));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 101);

    let out = run(bin().arg("compare").arg(&report).args(["--format", "json"]));
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 1);
    assert_eq!(rows[0]["dataset"], "ECG200");
}

#[test]
fn missing_dataset_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .arg("run")
        .arg("--train")
        .arg(dir.path().join("absent_TRAIN.tsv"))
        .arg("--test")
        .arg(dir.path().join("absent_TEST.tsv"))
        .arg("--output-dir")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dataset"));
}

#[test]
fn malformed_dataset_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let train = dir.path().join("bad_TRAIN.tsv");
    std::fs::write(&train, "0\t1\t2\n1\t3\tx\n").unwrap();
    let out = bin().arg("mine").arg("--train").arg(&train).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dataset"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(
        bin().arg("run").arg("--bogus").output().unwrap().status.code(),
        Some(1)
    );
    assert_eq!(bin().output().unwrap().status.code(), Some(1));
    let out = bin()
        .arg("explain")
        .arg("--train")
        .arg(data("Coffee_TRAIN.tsv"))
        .arg("--test")
        .arg(data("Coffee_TEST.tsv"))
        .args(["--method", "nun", "--classifier", "svm"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin()
        .arg("mine")
        .arg("--train")
        .arg(data("Coffee_TRAIN.tsv"))
        .args(["--fractions", "0.5,1.5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_lists_every_subcommand_and_flag() {
    let out = run(bin().arg("--help"));
    let text = String::from_utf8(out.stdout).unwrap();
    for sub in ["mine", "explain", "evaluate", "report", "run", "compare"] {
        assert!(text.contains(sub), "{sub} missing from help");
    }
    let out = run(bin().args(["run", "--help"]));
    let text = String::from_utf8(out.stdout).unwrap();
    for flag in [
        "--train",
        "--test",
        "--fractions",
        "--no-early-abandon",
        "--method",
        "--classifier",
        "--output-dir",
        "MOTIFCF_OUTPUT_DIR",
        "--label-map",
    ] {
        assert!(text.contains(flag), "{flag} missing from run help");
    }
}
