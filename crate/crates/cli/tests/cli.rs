//! End-to-end checks of the command-line surface: output values, exit
//! codes, determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn cobweb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobweb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim().to_string()
}

fn write_space(path: &std::path::Path) {
    std::fs::write(
        path,
        r#"{"points":["a","b"],"dist":{"a,b":"3/10","b,a":"3/10"}}"#,
    )
    .unwrap();
}

#[test]
fn dist_builtin_extremal() {
    let out = cobweb(&["dist", "--builtin", "extremal", "(1/2,0)", "(1/4,1)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1/4");

    let out = cobweb(&["dist", "--builtin", "extremal", "(1/2,0)", "(3/4,1)"]);
    assert_eq!(stdout(&out), "1");
}

#[test]
fn dist_vertices_and_modes() {
    let dir = std::env::temp_dir().join("cobweb-cli-test-dist");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("space.json");
    write_space(&path);
    let p = path.to_str().unwrap();

    let out = cobweb(&["dist", "--space", p, "a", "b"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1");

    let out = cobweb(&["dist", "--space", p, "--mode", "base", "a", "b"]);
    assert_eq!(stdout(&out), "3/10");

    let out = cobweb(&[
        "dist",
        "--space",
        p,
        "--mode",
        "cobweb",
        r#"{"e":["a","b"],"t":"1/4"}"#,
        r#"{"e":["a","b"],"t":"7/10"}"#,
    ]);
    assert_eq!(stdout(&out), "9/20");

    // points past the cut are not cobweb members
    let out = cobweb(&[
        "dist",
        "--space",
        p,
        "--mode",
        "cobweb",
        r#"{"e":["a","b"],"t":"1/4"}"#,
        r#"{"e":["a","b"],"t":"3/4"}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));

    // limit distance between the constant threads over distinct points
    let out = cobweb(&[
        "dist",
        "--space",
        p,
        "--mode",
        "tower",
        r#"{"prefix":[{"lvl":1,"vertex":{"lvl":0,"base":"a"}}]}"#,
        r#"{"prefix":[{"lvl":1,"vertex":{"lvl":0,"base":"b"}}]}"#,
    ]);
    assert_eq!(stdout(&out), "1");
}

#[test]
fn invalid_rational_is_a_usage_error() {
    let dir = std::env::temp_dir().join("cobweb-cli-test-rat");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("space.json");
    write_space(&path);
    let out = cobweb(&[
        "ball",
        "--space",
        path.to_str().unwrap(),
        "--center",
        "a",
        "--radius",
        "1/0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ball_and_refusal() {
    let dir = std::env::temp_dir().join("cobweb-cli-test-ball");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("space.json");
    write_space(&path);
    let p = path.to_str().unwrap();

    let out = cobweb(&["ball", "--space", p, "--center", "a", "--radius", "2/5"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        r#"{"vertices":["a"],"arcs":[{"edge":["a","b"],"lo":"0","hi":"2/5","lo_open":true,"hi_open":true},{"edge":["b","a"],"lo":"3/5","hi":"7/10","lo_open":true,"hi_open":false}]}"#
    );

    let out = cobweb(&["ball", "--space", p, "--center", "a", "--radius", "3/4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported radius"));

    let out = cobweb(&[
        "ball", "--space", p, "--center", "a", "--radius", "2/5", "--mode", "base",
    ]);
    assert_eq!(stdout(&out), r#"["a","b"]"#);
}

#[test]
fn ball_image_matches_base_ball() {
    let dir = std::env::temp_dir().join("cobweb-cli-test-img");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("space.json");
    write_space(&path);
    let out = cobweb(&[
        "ball-image",
        "--space",
        path.to_str().unwrap(),
        "--center",
        "a",
        "--radius",
        "2/5",
    ]);
    assert_eq!(stdout(&out), r#"["a","b"]"#);
}

#[test]
fn verify_exit_codes_and_determinism() {
    let out = cobweb(&["verify", "--suite", "distance-core", "--seed", "7"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["failures"], 0);

    // determinism modulo the runtime field
    let strip = |s: &str| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
        v.as_object_mut().unwrap().remove("runtime_ms");
        v
    };
    let again = cobweb(&["verify", "--suite", "distance-core", "--seed", "7"]);
    assert_eq!(strip(&stdout(&out)), strip(&stdout(&again)));

    // a different seed still passes but changes nothing structural
    let other = cobweb(&["verify", "--suite", "distance-core", "--seed", "8"]);
    assert!(other.status.success());

    let out = cobweb(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));

    let out = cobweb(&["verify", "--suite", "negative-control", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["failures"].as_u64().unwrap() > 0);
    assert!(report["properties"][0]["first_counterexample"].is_string());
}

#[test]
fn verify_ball_image_suite_alias() {
    let out = cobweb(&["verify", "--suite", "ball-image", "--seed", "7"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["failures"], 0);
    assert_eq!(report["properties"][0]["id"], "summary-6-ball-image");
}

#[test]
fn gen_contracts_and_determinism() {
    let out = cobweb(&["gen", "--kind", "metric", "--size", "4", "--seed", "1"]);
    assert!(out.status.success());
    let space: cobweb_core::DistanceSpace = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(space.check_axioms().is_metric);

    let again = cobweb(&["gen", "--kind", "metric", "--size", "4", "--seed", "1"]);
    assert_eq!(stdout(&out), stdout(&again));

    let out = cobweb(&["gen", "--kind", "topology", "--size", "3", "--seed", "1"]);
    let top: cobweb_core::FiniteTopology = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(top.opens_count() >= 2);

    let out = cobweb(&[
        "gen",
        "--kind",
        "neighborhood-system",
        "--size",
        "5",
        "--seed",
        "3",
        "--depth",
        "4",
    ]);
    assert!(out.status.success());

    let out = cobweb(&["gen", "--kind", "omil", "--size", "4", "--seed", "2"]);
    assert!(out.status.success());

    let out = cobweb(&["gen", "--kind", "nope", "--size", "3", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn truncated_pipe_does_not_panic() {
    let out = Command::new("sh")
        .arg("-c")
        .arg(format!(
            "{} verify --suite distance-core --seed 7 2>/dev/null | {} report --input - | head -n 1",
            env!("CARGO_BIN_EXE_cobweb"),
            env!("CARGO_BIN_EXE_cobweb")
        ))
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(!String::from_utf8_lossy(&out.stderr).contains("panicked"));
    assert!(stdout(&out).starts_with("suite distance-core"));
}

#[test]
fn report_renders_verify_output() {
    let out = cobweb(&["verify", "--suite", "distance-core", "--seed", "7"]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_cobweb"))
        .args(["report", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(&out.stdout)
        .unwrap();
    let rendered = child.wait_with_output().unwrap();
    assert!(rendered.status.success());
    let text = String::from_utf8_lossy(&rendered.stdout).to_string();
    assert!(text.contains("[PASS] ball-basics"));
    assert!(text.contains("suite distance-core"));
}
