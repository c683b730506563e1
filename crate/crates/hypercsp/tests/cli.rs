//! End-to-end checks of the command-line surface: output schemas, exit
//! codes, streaming behavior, and generator reproducibility.

mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercsp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON document")
}

fn stdout_lines(args: &[&str]) -> Vec<Value> {
    let out = run(args);
    assert!(out.status.success());
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is a JSON object"))
        .collect()
}

#[test]
fn rho_star_and_alpha_star_on_h2() {
    let v = run_json(&["rho-star", &fixture("h2.json")]);
    assert_eq!(v["value"], "2/1");
    assert!(v["witness"].is_array());

    let v = run_json(&["alpha-star", &fixture("h2.json")]);
    assert_eq!(v["value"], "2/1");
    assert!(v["witness"].is_object());
}

#[test]
fn width_subcommand() {
    let v = run_json(&["width", "--measure", "fhw", &fixture("triangle.json")]);
    assert_eq!(v["value"], "3/2");
    assert!(v["witness"]["nodes"].is_array());

    let v = run_json(&["width", "--measure", "ghw", &fixture("h2.json")]);
    assert_eq!(v["value"], "2/1");

    let v = run_json(&["width", "--measure", "tree", &fixture("triangle.json")]);
    assert_eq!(v["value"], "2/1");
}

#[test]
fn game_subcommands() {
    let v = run_json(&["aw", &fixture("triangle.json")]);
    assert_eq!(v["value"], "3/2");

    let v = run_json(&["game", "--budget", "1", &fixture("triangle.json")]);
    assert_eq!(v["general_wins"], false);
    assert_eq!(v["budget"], "1/1");

    let v = run_json(&["game", "--budget", "3/2", &fixture("triangle.json")]);
    assert_eq!(v["general_wins"], true);
}

#[test]
fn decompose_output_passes_validate() {
    let v = run_json(&["decompose", "--budget", "3/2", &fixture("triangle.json")]);
    assert_eq!(v["success"], true);

    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join(format!("hypercsp_cli_test_{}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string(&v["decomposition"]).unwrap()).unwrap();
    let report = run_json(&[
        "validate",
        &fixture("triangle.json"),
        path.to_str().unwrap(),
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(report["valid"], true);
    assert_eq!(report["special_condition"], true);
    // width <= 3 * (3/2) + 2 = 13/2
    let width = hypercsp::parse_rational(report["width"].as_str().unwrap()).unwrap();
    assert!(width <= hypercsp::weights::rat(13, 2));
}

#[test]
fn validate_the_two_node_h2_decomposition() {
    let v = run_json(&["validate", &fixture("h2.json"), &fixture("h2_decomp.json")]);
    assert_eq!(v["valid"], true);
    assert_eq!(v["width"], "2/1");
    assert_eq!(v["special_condition"], true);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn solving_commands_on_the_tight_triangle() {
    let inst = fixture("tight_triangle.json");

    let v = run_json(&["solve", &inst]);
    assert_eq!(v["satisfiable"], true);
    assert!(v["solution"].is_object());

    let v = run_json(&["count", &inst]);
    assert_eq!(v["count"], 8);

    let lines = stdout_lines(&["enumerate", &inst]);
    assert_eq!(lines.len(), 8);
    let limited = stdout_lines(&["enumerate", "--limit", "3", &inst]);
    assert_eq!(limited.len(), 3);
    assert_eq!(&lines[..3], &limited[..]);

    let projected = stdout_lines(&["project", "--vars", "a", &inst]);
    assert_eq!(projected.len(), 2);

    // an explicit decomposition file is honored
    let width = run_json(&["width", "--measure", "fhw", &fixture("triangle.json")]);
    let dir = std::env::temp_dir();
    let path = dir.join(format!("hypercsp_cli_fhd_{}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string(&width["witness"]).unwrap()).unwrap();
    let v = run_json(&["count", "--decomposition", path.to_str().unwrap(), &inst]);
    std::fs::remove_file(&path).ok();
    assert_eq!(v["count"], 8);
}

#[test]
fn generate_is_reproducible_and_round_trips() {
    let out = run(&["generate", "hn", "2"]);
    assert!(out.status.success());
    let golden = std::fs::read(fixture("h2.json")).unwrap();
    assert_eq!(
        out.stdout, golden,
        "generate hn 2 must match the golden file"
    );

    let args = [
        "generate",
        "random",
        "--seed",
        "42",
        "--vars",
        "5",
        "--domain",
        "3",
        "--constraints",
        "4",
        "--max-arity",
        "3",
        "--density",
        "0.5",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);

    // the emitted instance parses back identically
    let parsed = hypercsp::json::parse_instance(std::str::from_utf8(&a.stdout).unwrap()).unwrap();
    let re_emitted = hypercsp::json::instance_to_string(&parsed);
    assert_eq!(re_emitted.as_bytes(), &a.stdout[..a.stdout.len() - 1]);
}

#[test]
fn seeded_generator_digest_is_pinned() {
    let i = hypercsp::generate_random(42, 5, 3, 4, 3, 0.5).unwrap();
    let mut hasher = Sha256::new();
    hasher.update(hypercsp::json::instance_to_string(&i).as_bytes());
    let digest = hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect::<String>();
    assert_eq!(
        digest,
        "a16ba1fc299b52e2ebca8327d7248d58ec5d6b470c20040b50d3c19cbabf58cc"
    );
}

#[test]
fn exit_codes() {
    // domain errors exit 1
    let out = run(&["rho-star", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["rho-star", &fixture("bad.json")]);
    assert_eq!(out.status.code(), Some(1));

    // resource limits exit 2 (14 vertices exceeds the width and game caps)
    let out = run(&["width", "--measure", "fhw", &fixture("big_matching.json")]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["aw", &fixture("big_matching.json")]);
    assert_eq!(out.status.code(), Some(2));

    // success exits 0
    let out = run(&["aw", &fixture("triangle.json")]);
    assert_eq!(out.status.code(), Some(0));
}
