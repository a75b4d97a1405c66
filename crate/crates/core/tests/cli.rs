use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn orbitlift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitlift")).args(args).output().expect("binary runs")
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

#[test]
fn validate_example_tableau() {
    let o = orbitlift(&["validate", "--input", data("example14.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["dim"], 14);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["label"], "[3^2,2^3,1^2]");
}

#[test]
fn validate_inadmissible_sign_fails_with_status_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    // [2] with a symmetric form is symplectic, not orthogonal
    std::fs::write(&p, r#"{"epsilon": 1, "rows": [{"t": 2, "mult": 1, "eps": 1, "gram": [["1"]]}]}"#).unwrap();
    let o = orbitlift(&["validate", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_out(&o)["status"], "fail");
}

#[test]
fn schema_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.json");
    std::fs::write(&p, r#"{"epsilon": 1, "rows": [{"t": 2}]}"#).unwrap();
    assert_eq!(orbitlift(&["validate", "--input", p.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(orbitlift(&["validate"]).status.code(), Some(2));
    assert_eq!(orbitlift(&["no-such-command"]).status.code(), Some(2));
    std::fs::write(&p, "not json").unwrap();
    assert_eq!(orbitlift(&["dims", "--input", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn lift_regular_sp2_to_three() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("lift.json");
    let o = orbitlift(&[
        "lift",
        "--input",
        data("regular_sp2.json").to_str().unwrap(),
        "--dim-vtilde",
        "3",
        "--dump",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["label"], "[3]");
    let d: Value = serde_json::from_str(&std::fs::read_to_string(dump).unwrap()).unwrap();
    for k in ["T", "X", "Xtilde", "checks"] {
        assert!(d.get(k).is_some(), "dump lacks {k}");
    }
    assert_eq!(d["checks"]["target_moment"], true);
}

#[test]
fn lift_with_too_small_target_is_an_input_error() {
    let o = orbitlift(&["lift", "--input", data("regular_sp2.json").to_str().unwrap(), "--dim-vtilde", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lift_with_new_rows() {
    let o = orbitlift(&["lift", "--input", data("regular_sp2.json").to_str().unwrap(), "--dim-vtilde", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["partition"], serde_json::json!([3, 1, 1]));
}

#[test]
fn triple_and_dims() {
    let input = data("example14.json");
    let o = orbitlift(&["triple", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["module"]["dim"], 14);
    let o = orbitlift(&["dims", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["dim_g"], 105);
    assert_eq!(v["dim_m"], 9);
}

#[test]
fn moment_stable_range_and_given_map() {
    let o = orbitlift(&["moment", "--input", data("stable_range.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["nilpotent"], true);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("m.json");
    std::fs::write(
        &p,
        r#"{"V": {"dim": 2, "epsilon": -1, "gram": [["0","1"],["-1","0"]]},
            "Vtilde": {"dim": 2, "epsilon": 1, "gram": [["1","0"],["0","1"]]},
            "T": [["1","2"],["0","1"]]}"#,
    )
    .unwrap();
    let o = orbitlift(&["moment", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_all_bundled_corpus() {
    let o = orbitlift(&["verify-all", "--seed", "7", "--samples", "500", "--max-part", "8"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let fails: Vec<&str> = text.lines().filter(|l| l.contains("\"fail\"")).take(3).collect();
    assert!(fails.is_empty(), "{fails:?}");
    assert_eq!(o.status.code(), Some(0));
    let mut ids = Vec::new();
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        ids.push(v["id"].as_str().unwrap().to_string());
        assert!(v.get("paper_anchor").is_some());
    }
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted, "report lines are ordered by id");
}

#[test]
fn verify_all_on_supplied_corpus_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.json");
    let a = std::fs::read_to_string(data("example14.json")).unwrap();
    let b = std::fs::read_to_string(data("regular_sp2.json")).unwrap();
    std::fs::write(&corpus, format!("[{a}, {b}]")).unwrap();
    let out1 = dir.path().join("r1.jsonl");
    let out2 = dir.path().join("r2.jsonl");
    for out in [&out1, &out2] {
        let o = orbitlift(&[
            "verify-all",
            "--input",
            corpus.to_str().unwrap(),
            "--seed",
            "3",
            "--samples",
            "50",
            "--output",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let r1 = std::fs::read(&out1).unwrap();
    assert!(!r1.is_empty());
    assert_eq!(r1, std::fs::read(&out2).unwrap());
}
