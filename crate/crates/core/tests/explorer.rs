use std::fs;

use curvesing::explorer::{
    bundled_corpus, load_results, search_support, search_to_path, verify, Corpus, SearchConfig, Summary,
};

fn small_config() -> SearchConfig {
    SearchConfig {
        vars: "x,y".into(),
        support: vec!["x^5".into(), "y^4".into(), "x^2*y^3".into(), "x^3*y^2".into()],
        coefficients: vec![-2, -1, 1, 2],
        samples: 70,
    }
}

#[test]
fn search_is_deterministic() {
    let cfg = small_config();
    let a = search_support(&cfg, 42).unwrap();
    let b = search_support(&cfg, 42).unwrap();
    assert_eq!(a, b);
    let c = search_support(&cfg, 43).unwrap();
    let inputs = |r: &curvesing::explorer::ScanResult| r.entries.iter().map(|e| e.input.clone()).collect::<Vec<_>>();
    assert_ne!(inputs(&a), inputs(&c));
}

#[test]
fn interrupted_search_resumes_to_same_file() {
    let cfg = small_config();
    let dir = tempfile::tempdir().unwrap();
    let whole = dir.path().join("whole.jsonl");
    let full = search_to_path(&cfg, 9, &whole, false).unwrap();
    let bytes = fs::read(&whole).unwrap();

    // Cut after 5 complete entries and leave half of the next line behind.
    let text = String::from_utf8(bytes.clone()).unwrap();
    let mut cut = 0;
    for (i, line) in text.split_inclusive('\n').enumerate() {
        if i == 6 {
            cut += line.len() / 2;
            break;
        }
        cut += line.len();
    }
    let part = dir.path().join("part.jsonl");
    fs::write(&part, &bytes[..cut]).unwrap();
    let resumed = search_to_path(&cfg, 9, &part, true).unwrap();
    assert_eq!(fs::read(&part).unwrap(), bytes);
    assert_eq!(resumed, full);

    // A different seed must not be appended to this log.
    assert!(search_to_path(&cfg, 10, &part, true).is_err());
}

#[test]
fn summary_is_rederived_on_load() {
    let cfg = small_config();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.jsonl");
    let res = search_to_path(&cfg, 1, &path, false).unwrap();
    let (header, loaded) = load_results(&path).unwrap();
    assert_eq!(header.seed, 1);
    assert_eq!(loaded.summary, Summary::of(&loaded.entries, false));
    assert_eq!(loaded, res);
    assert_eq!(loaded.summary.count, 70);
}

#[test]
fn wrong_golden_is_reported() {
    let mut corpus = bundled_corpus();
    corpus.items.retain(|i| i.id == "FA2" || i.id == "A3");
    corpus.items[0].expected.tau = Some(11);
    let report = verify(&corpus).unwrap();
    assert!(!report.passed());
    let bad: Vec<_> = report.items.iter().filter(|i| !i.passed).collect();
    assert_eq!(bad.len(), 1);
    assert!(bad[0].failures.iter().any(|f| f.contains("tau")), "{:?}", bad[0].failures);
    assert!(report.render().contains(&format!("FAIL {:<6}", bad[0].id)));
}

#[test]
fn empty_corpus_passes() {
    let corpus = Corpus::parse(r#"{"schema_version": 1, "vars": "x,y", "items": []}"#).unwrap();
    let report = verify(&corpus).unwrap();
    assert!(report.passed());
    assert!(report.render().starts_with("0 items"));
}

#[test]
fn corpus_errors_are_input_errors() {
    assert!(Corpus::parse("{").unwrap_err().is_input());
    assert!(Corpus::parse(r#"{"schema_version": 7, "vars": "x,y", "items": []}"#).is_err());
    let c = Corpus::parse(r#"{"schema_version": 1, "vars": "x,y", "items": [{"id": "bad", "f": "x^2"}]}"#).unwrap();
    let report = verify(&c).unwrap();
    assert!(report.items[0].failures[0].contains("non-isolated"));
}
