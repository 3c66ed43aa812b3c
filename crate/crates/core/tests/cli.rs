use std::path::PathBuf;

use jsonschema::{Draft, JSONSchema};
use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("curvesing").chain(args.iter().copied());
    let code = curvesing::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn schema(def: &str) -> JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schema.json");
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let wrapped = json!({
        "definitions": doc["definitions"],
        "allOf": [{ "$ref": format!("#/definitions/{def}") }],
    });
    JSONSchema::options().with_draft(Draft::Draft7).compile(&wrapped).unwrap()
}

fn assert_valid(def: &str, v: &Value) {
    let s = schema(def);
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{def} output does not match schema: {msgs:?}\n{v:#}");
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let (code, out, err) = run(&full);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, v)
}

#[test]
fn invariants_table_and_json_agree() {
    let (code, table, _) = run(&["invariants", "x^3 - y^2"]);
    assert_eq!(code, 0);
    let (_, v) = json_of(&["invariants", "x^3 - y^2"]);
    assert_valid("record", &v);
    for (label, key) in [("mu", "mu"), ("tau", "tau"), ("m", "m"), ("r", "r"), ("delta", "delta"), ("omega", "omega_codim")] {
        let line = table.lines().find(|l| l.split_whitespace().next() == Some(label)).unwrap();
        let shown = line.split_whitespace().nth(1).unwrap();
        assert_eq!(shown, v[key].to_string(), "{label}");
    }
    assert!(table.contains("QH      yes"));
    assert_eq!(v["rho"], json!({"num": 1, "den": 1}));
}

#[test]
fn approx_is_an_annotation() {
    let (_, table, _) = run(&["invariants", "x^7 + x^3*y^4 + y^6", "--approx"]);
    let rho = table.lines().find(|l| l.starts_with("rho")).unwrap();
    assert_eq!(rho.split_whitespace().collect::<Vec<_>>(), ["rho", "10/9", "(~1.11111)"]);
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["invariants", "x^2"]);
    assert_eq!(code, 1);
    assert!(err.contains("non-isolated singularity"));
    assert_eq!(run(&["invariants", "x^"]).0, 2);
    assert_eq!(run(&["invariants", "x + w"]).0, 2);
    assert_eq!(run(&["invariants", "x^3-y^2", "--bogus"]).0, 2);
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["omega", "y^2 - x^2"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn scan_reproduces_tjurina_values() {
    let (code, v) = json_of(&["scan", "--family", "x^(2m+1)+x^m*y^(m+1)+y^(2m)", "--range", "2..5"]);
    assert_eq!(code, 0);
    assert_valid("scan_result", &v);
    let taus: Vec<u64> = v["entries"].as_array().unwrap().iter().map(|e| e["record"]["tau"].as_u64().unwrap()).collect();
    assert_eq!(taus, [12, 27, 48, 75]);
    assert_eq!(v["summary"]["strictly_increasing"], json!(true));
}

#[test]
fn every_subcommand_matches_schema() {
    let (_, v) = json_of(&["omega", "y^3 - x^4"]);
    assert_valid("omega", &v);
    assert_eq!(v["omega_codim"], 3);
    let (_, v) = json_of(&["tauprime", "z^2 - x^3", "y^2 - x*z"]);
    assert_valid("tauprime", &v);
    let (_, v) = json_of(&["branches", "x^4 - 4*y^4"]);
    assert_valid("branches", &v);
    assert_eq!(v["r"], 4);
    let (_, v) = json_of(&["branches", "x*(y^2 - x^3)"]);
    assert_valid("branches", &v);
    let (_, v) = json_of(&["search", "--samples", "3", "--seed", "5"]);
    assert_valid("scan_result", &v);
    let (code, v) = json_of(&["verify"]);
    assert_eq!(code, 0);
    assert_valid("verify_report", &v);
    let (_, out, _) = run(&["corpus"]);
    assert_valid("corpus", &serde_json::from_str(&out).unwrap());
}

#[test]
fn search_file_lines_match_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.jsonl");
    let p = path.to_str().unwrap();
    let (code, _, err) = run(&["search", "--samples", "3", "--coefficients", "-2..2", "--output", p]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_valid("search_header", &serde_json::from_str(lines.next().unwrap()).unwrap());
    let rest: Vec<&str> = lines.collect();
    assert_eq!(rest.len(), 3);
    for l in rest {
        assert_valid("scan_entry", &serde_json::from_str(l).unwrap());
    }
}

#[test]
fn tauprime_variable_defaults() {
    let (code, out, _) = run(&["tauprime", "x^3 - y^2"]);
    assert_eq!((code, out.trim()), (0, "tau' = 2"));
    assert_eq!(run(&["tauprime", "x^3 - y^2", "--vars", "x,y,z"]).0, 2);
}

#[test]
fn schema_rejects_malformed_records() {
    let (_, mut v) = json_of(&["invariants", "x^3 - y^2"]);
    assert!(schema("record").is_valid(&v));
    v["rho"] = json!({"num": 1, "den": 0});
    assert!(!schema("record").is_valid(&v));
    v["rho"] = json!(null);
    v.as_object_mut().unwrap().remove("checks");
    assert!(!schema("record").is_valid(&v));
}
