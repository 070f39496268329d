use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

fn classring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_classring")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_job_file() {
    let out = classring(&["--input", data("job_verify_s3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["result"]["checks"].as_array().unwrap().len(), 5);
}

#[test]
fn fuse_with_oracle_on_ds3() {
    let out = classring(&["--input", data("job_fuse_ds3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let table = v["result"]["table"].as_array().unwrap();
    assert_eq!(table.len(), 64);
    assert!(table.iter().all(|e| e["oracle_agrees"] == true));
}

#[test]
fn fuse_subcommand_with_omega() {
    let out = classring(&[
        "fuse",
        "--extension",
        data("ext_z4.json").to_str().unwrap(),
        "--omega",
        data("omega_z4_p1.json").to_str().unwrap(),
        "--pair",
        "1:0",
        "3:0",
        "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["result"]["table"][0]["oracle_agrees"], true);
}

#[test]
fn malformed_table_exits_2() {
    let out = classring(&["center", "--group", data("bad_table.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["result"]["error"]["field"], "table");
    assert!(v["result"]["error"]["message"].as_str().unwrap().contains("not associative"));
}

#[test]
fn missing_file_exits_2() {
    let out = classring(&["center", "--group", "/nonexistent/g.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn twisted_klein_has_one_simple() {
    let out = classring(&[
        "simples",
        "--group",
        data("v4.json").to_str().unwrap(),
        "--sigma",
        data("sigma_v4.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let simples = v["result"]["components"][0]["simples"].as_array().unwrap();
    assert_eq!(simples.len(), 1);
    assert_eq!(simples[0]["dim"], 2);
}

#[test]
fn reports_are_byte_identical() {
    let group = data("s3.json");
    let args = ["crossed-burnside", "--group", group.to_str().unwrap()];
    let (a, b) = (classring(&args), classring(&args));
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a)["digest"].as_str().unwrap().len() == 64);
}

#[test]
fn out_flag_and_csv() {
    let dir = std::env::temp_dir().join(format!("classring-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("center.csv");
    let out = classring(&[
        "center",
        "--group",
        data("s3.json").to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("i,j,k,coefficient\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_fails_on_bad_sigma() {
    let dir = std::env::temp_dir().join(format!("classring-sigma-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // σ_0(1,1) = -1 on the double of ℤ/2 breaks σ_gσ_h = σ_gh
    let job = serde_json::json!({
        "instance": "fusion",
        "command": "verify",
        "group": { "order": 2, "table": [[0, 1], [1, 0]] },
        "sigma": { "m": 2, "sigma_exp": [[[0, 0], [0, 1]], [[0, 0], [0, 0]]] },
    });
    let path = dir.join("job.json");
    std::fs::write(&path, job.to_string()).unwrap();
    let out = classring(&["--input", path.to_str().unwrap(), "--format", "text"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("fail"));
    std::fs::remove_dir_all(&dir).unwrap();
}
