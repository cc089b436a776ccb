use std::io::Write;
use std::process::{Command, Output, Stdio};

fn aomega(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aomega"))
        .args(args)
        .env_remove("AOMEGA_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_aomega"))
        .args(args)
        .env_remove("AOMEGA_OUT_DIR")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn help_lists_every_flag() {
    let run = String::from_utf8(aomega(&["run", "--help"]).stdout).unwrap();
    for flag in [
        "--p",
        "--depth",
        "--dim",
        "--bound",
        "--precision",
        "--seed",
        "--out",
        "--suite",
    ] {
        assert!(run.contains(flag), "{flag} missing from run --help");
    }
    let top = String::from_utf8(aomega(&["--help"]).stdout).unwrap();
    assert!(top.contains("AOMEGA_OUT_DIR"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        aomega(&["torus", "run", "--stage", "tilde", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        aomega(&["torus", "run", "--stage", "tilde", "--p", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        aomega(&["torus", "run", "--stage", "tilde", "--dim", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(aomega(&["run", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        aomega(&["witt", "digits", "--p", "3", "--precision", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        with_stdin(&["leta", "apply", "--f", "2"], "not json")
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn ainf_verify() {
    let o = aomega(&["ainf", "verify", "--p", "5", "--depth", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["passed"], true);
}

#[test]
fn leta_apply_and_warning_pair() {
    let zp = r#"{"ring":"Z","lo":0,"ranks":[1,1],"diffs":[["3"]]}"#;
    let zp2 = r#"{"ring":"Z","lo":0,"ranks":[1,1],"diffs":[["9"]]}"#;
    let a = json(&with_stdin(&["leta", "apply", "--f", "3"], zp));
    assert_eq!(a["homology"][1]["torsion"], serde_json::json!([]));
    let b = json(&with_stdin(&["leta", "apply", "--f", "3"], zp2));
    assert_eq!(b["homology"][1]["torsion"], serde_json::json!(["3"]));
}

#[test]
fn witt_digits_round_trip() {
    let input = r#"{"p":3,"precision":2,"terms":[["0",5]]}"#;
    let o = with_stdin(&["witt", "digits", "--p", "3", "--precision", "2"], input);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["digits"].as_array().unwrap().len(), 2);
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "leta",
        "verify",
        "--suite",
        "s5",
        "--instances",
        "30",
        "--seed",
        "42",
        "--p",
        "2",
    ];
    let a = aomega(&args);
    let b = aomega(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 42);
}

#[test]
fn torus_stages() {
    for stage in ["tilde", "ainf", "dr", "ht", "etale", "semicont"] {
        let o = aomega(&[
            "torus", "run", "--p", "2", "--dim", "2", "--bound", "1", "--stage", stage,
        ]);
        assert_eq!(o.status.code(), Some(0), "stage {stage}");
    }
    let o = aomega(&[
        "torus", "all", "--p", "3", "--depth", "2", "--dim", "1", "--bound", "2",
    ]);
    assert_eq!(json(&o)["passed"], true);
}

#[test]
fn qderham_commands() {
    let o = aomega(&[
        "qderham", "compare", "--p", "2", "--dim", "2", "--bound", "2",
    ]);
    assert_eq!(json(&o)["passed"], true);
    let o = aomega(&["qderham", "table", "--p", "3", "--dim", "1", "--bound", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o).as_array().unwrap().len(), 3);
}

#[test]
fn out_dir_from_environment() {
    let dir = std::env::temp_dir().join(format!("aomega-cli-{}", std::process::id()));
    let o = Command::new(env!("CARGO_BIN_EXE_aomega"))
        .args(["run", "--suite", "s8-semicontinuity", "--instances", "10"])
        .env("AOMEGA_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(dir.join("s8-semicontinuity.json")).unwrap();
    assert!(text.contains("\"passed\": true"));
    let explicit = dir.join("x.json");
    let o = aomega(&[
        "run",
        "--suite",
        "witt",
        "--p",
        "2",
        "--instances",
        "5",
        "--out",
        explicit.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(explicit.exists());
    std::fs::remove_dir_all(&dir).unwrap();
}
