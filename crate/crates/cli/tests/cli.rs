use std::fs;
use std::path::Path;
use std::process::Command;

use disthyp_cli::config::{ConfigFile, InstanceSource};
use serde_json::Value;

const GEN: &str = "poisson:n=6,m=5,mu=3,seed=1";

fn disthyp(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_disthyp"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn exit_codes_follow_the_error_kind() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path());
    let missing = dir.path().join("absent.json");
    let cases: [(&[&str], i32); 5] = [
        (&["solve", "--instance", path(&missing), "--problem", "gei", "--solver", "sdp", "--out", out], 4),
        (&["solve", "--generate", GEN, "--problem", "gei", "--solver", "brute", "--out", out], 2),
        (&["sweep-layers", "--generate", GEN, "--problem", "gei", "--max-p", "0", "--out", out], 2),
        (&["solve", "--generate", GEN, "--problem", "gei", "--solver", "qaoa", "--qubit-cap", "4", "--out", out], 3),
        (&["frobnicate"], 2),
    ];
    for (args, code) in cases {
        let (got, stderr) = disthyp(args);
        assert_eq!(got, code, "{args:?}: {stderr}");
    }
}

#[test]
fn flags_override_config_keys_which_override_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.json");
    fs::write(&config, r#"{"seed": 5, "p": 2, "max_iters": 5, "restarts": 1}"#).unwrap();
    let out = dir.path().join("out");
    let (code, stderr) = disthyp(&[
        "solve", "--generate", GEN, "--problem", "gei", "--solver", "qaoa", "--config", path(&config), "--p", "1",
        "--out", path(&out),
    ]);
    assert_eq!(code, 0, "{stderr}");
    let report: Value =
        serde_json::from_str(&fs::read_to_string(out.join("poisson_n6_m5_mu3_s1_gei_qaoa.json")).unwrap()).unwrap();
    assert_eq!(report["p"], 1);
    assert_eq!(report["seed"], 5);
    assert_eq!(report["iterations"], 5);
}

#[test]
fn unknown_config_keys_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.json");
    fs::write(&config, r#"{"sed": 5}"#).unwrap();
    let (code, _) = disthyp(&[
        "solve", "--generate", GEN, "--problem", "gei", "--solver", "sdp", "--config", path(&config), "--out",
        path(dir.path()),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn compare_on_an_empty_directory_fails() {
    let dir = tempfile::tempdir().unwrap();
    let (code, stderr) = disthyp(&["compare", "--dir", path(dir.path()), "--out", path(dir.path())]);
    assert_eq!(code, 2, "{stderr}");
}

#[test]
fn config_and_generator_seeds_parse() {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    for entry in fs::read_dir(corpus.join("run_config")).unwrap() {
        let text = fs::read_to_string(entry.unwrap().path()).unwrap();
        serde_json::from_str::<ConfigFile>(&text).unwrap();
    }
    for entry in fs::read_dir(corpus.join("generator_spec")).unwrap() {
        let text = fs::read_to_string(entry.unwrap().path()).unwrap();
        InstanceSource::parse_generator(text.trim()).unwrap();
    }
}
