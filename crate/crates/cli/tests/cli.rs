use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: &str) -> (i32, Value) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_triplekit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let body = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), body)
}

fn m2(re: [[f64; 2]; 2]) -> Value {
    json!({ "factor": { "kind": "type1", "m": 2, "n": 2 }, "re": re, "im": [[0.0, 0.0], [0.0, 0.0]] })
}

#[test]
fn ttp_of_matrix_units() {
    let input = json!({ "e": m2([[1.0, 0.0], [0.0, 0.0]]), "v": m2([[0.0, 1.0], [0.0, 0.0]]) });
    let (code, body) = run(&["ttp"], &input.to_string());
    assert_eq!(code, 0);
    assert_eq!(body["ttp"]["re"], 0.0);
    assert_eq!(body["orthogonal"], false);
    assert_eq!(body["symmetric_check"], true);
    for key in ["seed", "samples", "tolerances", "version"] {
        assert!(body.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn peirce_reports_dims() {
    let (code, body) = run(&["peirce"], &m2([[1.0, 0.0], [0.0, 0.0]]).to_string());
    assert_eq!(code, 0);
    assert_eq!(body["dims"], json!([1, 2, 1]));
    assert_eq!(body["minimal"], true);
    assert!(body.get("projectors").is_none());
    let (_, body) = run(
        &["peirce", "--projectors"],
        &m2([[1.0, 0.0], [0.0, 1.0]]).to_string(),
    );
    assert_eq!(body["dims"], json!([0, 0, 4]));
    assert!(body.get("projectors").is_some());
}

#[test]
fn exit_codes() {
    let (code, body) = run(&["peirce"], &m2([[2.0, 0.0], [0.0, 0.0]]).to_string());
    assert_eq!(code, 3);
    assert_eq!(body["error"]["kind"], "NotTripotent");
    assert_eq!(body["error"]["exit_code"], 3);

    let (code, body) = run(&["ttp"], "{ not json");
    assert_eq!(code, 2);
    assert_eq!(body["error"]["kind"], "Parse");

    let (code, _) = run(&["audit", "--factor", "type9:3"], "");
    assert_eq!(code, 2);
    let (code, _) = run(&["peirce", "--input", "/nonexistent/file.json"], "");
    assert_eq!(code, 2);
    let (code, _) = run(&["--help"], "");
    assert_eq!(code, 0);
}

#[test]
fn decompose_round_trip() {
    let (code, body) = run(&["decompose"], &m2([[3.0, 0.0], [0.0, 1.0]]).to_string());
    assert_eq!(code, 0);
    assert_eq!(body["rank"], 2);
    assert_eq!(body["parts"][0]["coefficient"], 3.0);
    assert!(body["residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn generated_spec_extends_to_its_generator() {
    let (_, spec) = run(
        &[
            "generate",
            "--factor",
            "type1:3x2",
            "--case",
            "B",
            "--seed",
            "4",
        ],
        "",
    );
    let (code, body) = run(&["extend", "--seed", "4"], &spec.to_string());
    assert_eq!(code, 0);
    assert!(body["generator_distance"].as_f64().unwrap() < 1e-8);
    assert!(body["welldefined_residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(body["orthogonality_ok"], true);
    assert!(body["isomorphism_residuals"]["morphism"].as_f64().unwrap() < 1e-8);
}

#[test]
fn corrupted_map_still_reports() {
    let (_, mut map) = run(
        &[
            "generate",
            "--what",
            "map",
            "--factor",
            "type1:2x2",
            "--samples",
            "3",
        ],
        "",
    );
    let pairs = map["pairs"].as_array_mut().unwrap();
    let last = pairs.len() - 1;
    pairs[last]["image"] = pairs[0]["image"].clone();
    let (code, body) = run(&["extend"], &map.to_string());
    assert_eq!(code, 0);
    assert!(body["welldefined_residual"].as_f64().unwrap() > 1e-2);
}

#[test]
fn singular_extension_has_null_isomorphism() {
    let e = m2([[1.0, 0.0], [0.0, 0.0]]);
    let pairs: Vec<Value> = [
        [[1.0, 0.0], [0.0, 0.0]],
        [[0.0, 1.0], [0.0, 0.0]],
        [[0.0, 0.0], [1.0, 0.0]],
        [[0.0, 0.0], [0.0, 1.0]],
    ]
    .into_iter()
    .map(|src| json!({ "e": m2(src), "image": e }))
    .collect();
    let map = json!({ "src": e["factor"], "dst": e["factor"], "pairs": pairs });
    let (code, body) = run(&["extend"], &map.to_string());
    assert_eq!(code, 0);
    assert!(body["isomorphism_residuals"].is_null());
    assert!(body["ttp_residual"].as_f64().unwrap() > 0.5);
}

#[test]
fn audit_from_stdin_and_output_file() {
    let dir = std::env::temp_dir().join(format!("triplekit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("audit.json");
    let (code, _) = run(
        &[
            "audit",
            "--samples",
            "20",
            "--output",
            path.to_str().unwrap(),
        ],
        r#"{"kind":"spin","n":5}"#,
    );
    assert_eq!(code, 0);
    let body: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(body["jordan_residual_max"].as_f64().unwrap() < 1e-9);
    assert_eq!(body["samples"], 20);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn seed_from_environment() {
    let out = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_triplekit"));
        cmd.args(["generate", "--what", "minimal-pair", "--factor", "spin:4"]);
        if let Some(s) = env {
            cmd.env("TRIPLEKIT_SEED", s);
        } else {
            cmd.env_remove("TRIPLEKIT_SEED");
        }
        cmd.output().unwrap().stdout
    };
    assert_eq!(out(Some("11")), out(Some("11")));
    assert_ne!(out(Some("11")), out(None));
}
