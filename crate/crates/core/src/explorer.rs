//! Family scans, seeded random searches over a fixed Newton support, and
//! corpus verification.
//!
//! Search results are written as JSON Lines: a header object followed by one
//! entry per sample in sample-id order. Samples are evaluated in parallel in
//! blocks and appended after each block, so an interrupted run resumes from
//! the last complete line and produces the same file as an uninterrupted one.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::Arc;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{full_record, InvariantRecord, Ratio};
use crate::polyring::{parse_polynomial, Monomial, Polynomial, VariableSet};

/// Version written into result headers and corpus files.
pub const SCHEMA_VERSION: u32 = 1;

/// Threshold above which a record is reported as a candidate counterexample.
pub const CANDIDATE_RHO: Ratio = Ratio { num: 4, den: 3 };

/// Samples evaluated between two appends to the results file.
const BLOCK: u64 = 64;

/// Polynomial text with one integer parameter, e.g. `x^(2m+1) + y^(2m)`.
#[derive(Clone, Debug)]
pub struct FamilyTemplate {
    pub text: String,
    pub param: String,
    pub vars: Arc<VariableSet>,
    pub range: (i64, i64),
}

impl FamilyTemplate {
    pub fn new(text: &str, range: (i64, i64)) -> Self {
        Self { text: text.into(), param: "m".into(), vars: VariableSet::xy(), range }
    }

    /// The member for parameter value `value`.
    pub fn instantiate(&self, value: i64) -> Result<Polynomial> {
        if self.vars.index_of(&self.param).is_some() {
            return Err(Error::InvalidVariables(format!("parameter {:?} is also a variable", self.param)));
        }
        let text = substitute_param(&self.text, &self.param, value);
        let text = evaluate_exponents(&text, &self.vars)?;
        parse_polynomial(&text, &self.vars)
    }
}

/// Parses an inclusive range `a..b`.
pub fn parse_range(text: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse { position: 0, message: format!("expected a range like 2..5, got {text:?}") };
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// Replaces the parameter identifier by `(value)`, inserting `*` after a
/// preceding digit or `)` so that `2m` reads as `2*(value)`.
fn substitute_param(text: &str, param: &str, value: i64) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let ident: String = chars[start..i].iter().collect();
            if ident == param {
                if out.ends_with(|c: char| c.is_ascii_digit() || c == ')') {
                    out.push('*');
                }
                out.push_str(&format!("({value})"));
            } else {
                out.push_str(&ident);
            }
            continue;
        }
        out.push(chars[i]);
        i += 1;
    }
    out
}

/// Rewrites every `^(expr)` with a constant natural `expr` as `^n`.
fn evaluate_exponents(text: &str, vars: &Arc<VariableSet>) -> Result<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        out.push(chars[i]);
        if chars[i] != '^' {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < chars.len() && chars[j].is_whitespace() {
            j += 1;
        }
        if j >= chars.len() || chars[j] != '(' {
            i += 1;
            continue;
        }
        let mut depth = 0;
        let mut k = j;
        while k < chars.len() {
            match chars[k] {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                _ => {}
            }
            k += 1;
        }
        if k >= chars.len() {
            return Err(Error::Parse { position: j, message: "unbalanced exponent".into() });
        }
        let inner: String = chars[j + 1..k].iter().collect();
        let value = parse_polynomial(&inner, vars)?;
        let n = value
            .terms()
            .next()
            .filter(|(m, c)| value.len() == 1 && m.is_one() && c.is_integer())
            .and_then(|(_, c)| u32::try_from(c.to_integer()).ok())
            .or_else(|| value.is_zero().then_some(0))
            .ok_or_else(|| Error::Parse {
                position: j,
                message: format!("exponent {inner:?} is not a natural number"),
            })?;
        out.push_str(&n.to_string());
        i = k + 1;
    }
    Ok(out)
}

/// One scanned input: a record or the reason it could not be computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub id: i64,
    pub input: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub record: Option<InvariantRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ScanEntry {
    fn evaluate(id: i64, input: Result<Polynomial>, text: String) -> Result<Self> {
        let outcome = input.and_then(|f| full_record(&f));
        let entry = match outcome {
            Ok(record) => {
                if let Some(rho) = record.rho {
                    if !rho.lt(&Ratio::new(2, 1)) {
                        return Err(Error::Internal(format!("rho = {rho} >= 2 for {}", record.input)));
                    }
                }
                Self { id, input: text, record: Some(record), error: None }
            }
            Err(e) if matches!(e, Error::Internal(_)) => return Err(e),
            Err(e) => Self { id, input: text, record: None, error: Some(e.to_string()) },
        };
        Ok(entry)
    }

    pub fn rho(&self) -> Option<Ratio> {
        self.record.as_ref().and_then(|r| r.rho)
    }
}

/// Aggregate over a list of entries; always recomputed from the entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub errors: Vec<i64>,
    pub check_failures: Vec<i64>,
    pub max_rho: Option<Ratio>,
    pub argmax: Option<String>,
    /// Whether rho strictly increases along the entries (family scans only).
    pub strictly_increasing: Option<bool>,
    /// Entries with `rho >= 4/3`: candidate counterexamples that require
    /// independent re-verification.
    pub candidates: Vec<i64>,
}

impl Summary {
    pub fn of(entries: &[ScanEntry], monotonicity: bool) -> Self {
        let mut max: Option<(Ratio, &str)> = None;
        for e in entries {
            if let Some(rho) = e.rho() {
                if max.is_none_or(|(m, _)| m.lt(&rho)) {
                    max = Some((rho, &e.input));
                }
            }
        }
        let strictly_increasing = monotonicity.then(|| {
            let rhos: Vec<Option<Ratio>> = entries.iter().map(ScanEntry::rho).collect();
            rhos.iter().all(Option::is_some)
                && rhos.windows(2).all(|w| w[0].expect("some").lt(&w[1].expect("some")))
        });
        Self {
            count: entries.len(),
            errors: entries.iter().filter(|e| e.error.is_some()).map(|e| e.id).collect(),
            check_failures: entries
                .iter()
                .filter(|e| e.record.as_ref().is_some_and(|r| !r.all_pass()))
                .map(|e| e.id)
                .collect(),
            max_rho: max.map(|(r, _)| r),
            argmax: max.map(|(_, s)| s.to_string()),
            strictly_increasing,
            candidates: entries
                .iter()
                .filter(|e| e.rho().is_some_and(|r| !r.lt(&CANDIDATE_RHO)))
                .map(|e| e.id)
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub entries: Vec<ScanEntry>,
    pub summary: Summary,
}

/// Evaluates every member of the family, in parameter order.
pub fn scan_family(t: &FamilyTemplate) -> Result<ScanResult> {
    let (lo, hi) = t.range;
    let entries = (lo..=hi)
        .into_par_iter()
        .map(|m| {
            let f = t.instantiate(m);
            let text = f.as_ref().map_or_else(|_| format!("{} [m = {m}]", t.text), Polynomial::render);
            ScanEntry::evaluate(m, f, text)
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = Summary::of(&entries, true);
    Ok(ScanResult { entries, summary })
}

/// Parameters of a random search. Sample `i` uses every support monomial
/// with a coefficient drawn uniformly from `coefficients`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub vars: String,
    pub support: Vec<String>,
    pub coefficients: Vec<i64>,
    pub samples: u64,
}

impl Default for SearchConfig {
    /// The Newton support of `x^7 + y^7 + x^4*y^4` plus monomials on and
    /// above its Newton polygon.
    fn default() -> Self {
        let support = ["x^7", "y^7", "x^4*y^4", "x^3*y^4", "x^5*y^3", "x^3*y^5", "x^6*y^2", "x^2*y^6"];
        Self {
            vars: "x,y".into(),
            support: support.iter().map(|s| s.to_string()).collect(),
            coefficients: vec![-3, -2, -1, 1, 2, 3],
            samples: 200,
        }
    }
}

struct Sampler {
    vars: Arc<VariableSet>,
    support: Vec<Monomial>,
    coefficients: Vec<i64>,
}

impl Sampler {
    fn new(cfg: &SearchConfig) -> Result<Self> {
        let vars = Arc::new(VariableSet::parse(&cfg.vars)?);
        if cfg.samples == 0 {
            return Err(Error::DimensionMismatch("sample count must be at least 1".into()));
        }
        if cfg.coefficients.is_empty() || cfg.coefficients.contains(&0) {
            return Err(Error::DimensionMismatch("coefficients must be a nonempty set of nonzero integers".into()));
        }
        let mut support = Vec::new();
        for s in &cfg.support {
            let p = parse_polynomial(s, &vars)?;
            let (m, _) = p
                .terms()
                .next()
                .filter(|_| p.len() == 1)
                .ok_or_else(|| Error::DimensionMismatch(format!("support entry {s:?} is not a monomial")))?;
            if m.is_one() {
                return Err(Error::NotAGerm("support contains the constant monomial".into()));
            }
            support.push(m.clone());
        }
        if support.is_empty() {
            return Err(Error::DimensionMismatch("empty support".into()));
        }
        Ok(Self { vars, support, coefficients: cfg.coefficients.clone() })
    }

    /// Sample `i`: a SplitMix64 stream seeded with the `i`-th output of
    /// SplitMix64(`seed`); coefficient `k` is `coefficients[next_u64() % len]`.
    fn sample(&self, seed: u64, i: u64) -> Polynomial {
        let state = seed.wrapping_add((i + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut rng = SplitMix64::seed_from_u64(splitmix_output(state));
        let n = self.coefficients.len() as u64;
        let terms = self.support.iter().map(|m| {
            let c = self.coefficients[(rng.next_u64() % n) as usize];
            (m.clone(), crate::exactnum::rat_from_i64(c))
        });
        Polynomial::from_terms(self.vars.clone(), terms.collect::<Vec<_>>())
    }

    fn entry(&self, seed: u64, i: u64) -> Result<ScanEntry> {
        let f = self.sample(seed, i);
        let text = f.render();
        ScanEntry::evaluate(i as i64, Ok(f), text)
    }
}

/// The SplitMix64 output function applied to a state word.
fn splitmix_output(state: u64) -> u64 {
    let mut z = state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// First line of a results file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub schema_version: u32,
    pub config: SearchConfig,
    pub seed: u64,
}

/// Runs a search in memory.
pub fn search_support(cfg: &SearchConfig, seed: u64) -> Result<ScanResult> {
    let sampler = Sampler::new(cfg)?;
    let entries =
        (0..cfg.samples).into_par_iter().map(|i| sampler.entry(seed, i)).collect::<Result<Vec<_>>>()?;
    let summary = Summary::of(&entries, false);
    Ok(ScanResult { entries, summary })
}

/// Runs a search, persisting to `path`. With `resume`, an existing file for
/// the same configuration and seed is continued after its last complete line.
pub fn search_to_path(cfg: &SearchConfig, seed: u64, path: &Path, resume: bool) -> Result<ScanResult> {
    let sampler = Sampler::new(cfg)?;
    let header = Header { schema_version: SCHEMA_VERSION, config: cfg.clone(), seed };
    let mut done = 0u64;
    if resume && path.exists() {
        let (found, entries, valid_len) = read_results(path)?;
        if found != header {
            return Err(Error::Schema("existing results file has a different configuration or seed".into()));
        }
        let file = OpenOptions::new().write(true).open(path)?;
        file.set_len(valid_len)?;
        done = entries.len() as u64;
    } else {
        let mut w = BufWriter::new(File::create(path)?);
        writeln!(w, "{}", serde_json::to_string(&header)?)?;
        w.flush()?;
    }
    let mut out = BufWriter::new(OpenOptions::new().append(true).open(path)?);
    while done < cfg.samples {
        let end = (done + BLOCK).min(cfg.samples);
        let block = (done..end).into_par_iter().map(|i| sampler.entry(seed, i)).collect::<Result<Vec<_>>>()?;
        for e in &block {
            writeln!(out, "{}", serde_json::to_string(e)?)?;
        }
        out.flush()?;
        done = end;
    }
    drop(out);
    load_results(path).map(|(_, r)| r)
}

/// Header, entries, and byte length of the complete, well-ordered prefix.
fn read_results(path: &Path) -> Result<(Header, Vec<ScanEntry>, u64)> {
    let mut reader = BufReader::new(File::open(path)?);
    let mut line = String::new();
    let mut len = reader.read_line(&mut line)? as u64;
    if !line.ends_with('\n') {
        return Err(Error::Schema("results file has no complete header".into()));
    }
    let header: Header = serde_json::from_str(line.trim_end())?;
    if header.schema_version != SCHEMA_VERSION {
        return Err(Error::Schema(format!("unsupported schema version {}", header.schema_version)));
    }
    let mut entries: Vec<ScanEntry> = Vec::new();
    loop {
        line.clear();
        let n = reader.read_line(&mut line)?;
        if n == 0 || !line.ends_with('\n') {
            break;
        }
        let Ok(e) = serde_json::from_str::<ScanEntry>(line.trim_end()) else { break };
        if e.id != entries.len() as i64 {
            break;
        }
        entries.push(e);
        len += n as u64;
    }
    Ok((header, entries, len))
}

/// Reads a results file and re-derives its summary.
pub fn load_results(path: &Path) -> Result<(Header, ScanResult)> {
    let (header, entries, _) = read_results(path)?;
    let summary = Summary::of(&entries, false);
    Ok((header, ScanResult { entries, summary }))
}

/// Expected values for a corpus germ; absent fields are not compared.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quasihomogeneous: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusItem {
    pub id: String,
    pub f: String,
    #[serde(default)]
    pub expected: Expected,
    #[serde(default)]
    pub tags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub schema_version: u32,
    pub vars: String,
    pub items: Vec<CorpusItem>,
}

impl Corpus {
    pub fn parse(text: &str) -> Result<Self> {
        let c: Corpus = serde_json::from_str(text)?;
        if c.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema(format!("unsupported schema version {}", c.schema_version)));
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn polynomial(&self, item: &CorpusItem) -> Result<Polynomial> {
        parse_polynomial(&item.f, &Arc::new(VariableSet::parse(&self.vars)?))
    }
}

const BUNDLED: &str = include_str!("../data/corpus.json");

/// The corpus shipped with the crate.
pub fn bundled_corpus() -> Corpus {
    Corpus::parse(BUNDLED).expect("bundled corpus is valid")
}

pub fn bundled_corpus_text() -> &'static str {
    BUNDLED
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemReport {
    pub id: String,
    pub input: String,
    pub passed: bool,
    /// Failing checks and golden mismatches, e.g. `golden tau: expected 12, got 11`.
    pub failures: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub record: Option<InvariantRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub items: Vec<ItemReport>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn render(&self) -> String {
        let mut s = format!("{} items\n", self.items.len());
        for item in &self.items {
            let mark = if item.passed { "ok  " } else { "FAIL" };
            s.push_str(&format!("{mark} {:<6} {}\n", item.id, item.input));
            for f in &item.failures {
                s.push_str(&format!("       {f}\n"));
            }
        }
        s
    }
}

fn compare_golden(item: &CorpusItem, rec: &InvariantRecord) -> Vec<String> {
    let e = &item.expected;
    let pairs: BTreeMap<&str, (Option<u64>, u64)> = [
        ("mu", (e.mu, rec.mu)),
        ("tau", (e.tau, rec.tau)),
        ("m", (e.m, rec.m)),
        ("r", (e.r, rec.r)),
        ("delta", (e.delta, rec.delta)),
    ]
    .into_iter()
    .collect();
    let mut out: Vec<String> = pairs
        .into_iter()
        .filter_map(|(k, (want, got))| {
            want.filter(|&w| w != got).map(|w| format!("golden {k}: expected {w}, got {got}"))
        })
        .collect();
    if let Some(q) = e.quasihomogeneous.filter(|&q| q != rec.quasihomogeneous) {
        out.push(format!("golden quasihomogeneous: expected {q}, got {}", rec.quasihomogeneous));
    }
    out
}

/// Computes every item's record and compares it with the goldens.
pub fn verify(corpus: &Corpus) -> Result<CorpusReport> {
    let items = corpus
        .items
        .par_iter()
        .map(|item| {
            let rec = corpus.polynomial(item).and_then(|f| full_record(&f));
            match rec {
                Ok(rec) => {
                    let mut failures: Vec<String> =
                        rec.failures().map(|c| format!("check {}: {}", c.name, c.detail)).collect();
                    failures.extend(compare_golden(item, &rec));
                    Ok(ItemReport {
                        id: item.id.clone(),
                        input: item.f.clone(),
                        passed: failures.is_empty(),
                        failures,
                        record: Some(rec),
                    })
                }
                Err(e) if e.is_internal() => Err(e),
                Err(e) => Ok(ItemReport {
                    id: item.id.clone(),
                    input: item.f.clone(),
                    passed: false,
                    failures: vec![format!("error: {e}")],
                    record: None,
                }),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CorpusReport { items })
}

/// Loads and verifies a corpus file.
pub fn verify_corpus(path: &Path) -> Result<CorpusReport> {
    verify(&Corpus::load(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn template_instantiation() {
        let t = FamilyTemplate::new("x^(2m+1)+x^m*y^(m+1)+y^(2m)", (2, 4));
        assert_eq!(t.instantiate(2).unwrap(), parse_polynomial("x^5 + x^2*y^3 + y^4", &VariableSet::xy()).unwrap());
        assert_eq!(t.instantiate(3).unwrap(), parse_polynomial("x^7 + x^3*y^4 + y^6", &VariableSet::xy()).unwrap());
        assert!(t.instantiate(-1).is_err());
        assert_eq!(parse_range("2..5").unwrap(), (2, 5));
        assert!(parse_range("5..2").is_err());
    }

    #[test]
    fn family_scans() {
        let res = scan_family(&FamilyTemplate::new("x^(2m+1)+x^m*y^(m+1)+y^(2m)", (2, 4))).unwrap();
        let rhos: Vec<Ratio> = res.entries.iter().map(|e| e.rho().unwrap()).collect();
        assert_eq!(rhos, vec![Ratio::new(1, 1), Ratio::new(10, 9), Ratio::new(7, 6)]);
        assert_eq!(res.summary.strictly_increasing, Some(true));
        let res = scan_family(&FamilyTemplate::new("x^(2m+1)+y^(2m+1)+x^(m+1)*y^(m+1)", (2, 2))).unwrap();
        assert_eq!(res.entries[0].rho(), Some(Ratio::new(16, 15)));
        let res = scan_family(&FamilyTemplate::new("y^2 - x^(2m+1)", (1, 3))).unwrap();
        assert!(res.entries.iter().all(|e| e.rho() == Some(Ratio::new(1, 1))));
        assert_eq!(res.summary.strictly_increasing, Some(false));
        assert!(res.summary.check_failures.is_empty());
    }

    #[test]
    fn single_samples() {
        let cfg = |s: &[&str]| SearchConfig {
            vars: "x,y".into(),
            support: s.iter().map(|x| x.to_string()).collect(),
            coefficients: vec![1],
            samples: 1,
        };
        let r = search_support(&cfg(&["x^5", "x^2*y^3", "y^4"]), 7).unwrap();
        assert_eq!(r.entries[0].rho(), Some(Ratio::new(1, 1)));
        let r = search_support(&cfg(&["x^2", "y^2"]), 7).unwrap();
        assert_eq!(r.entries[0].record.as_ref().unwrap().mu, 1);
        assert!(search_support(&cfg(&["1", "x^2"]), 7).is_err());
    }

    #[test]
    fn family_with_bad_member_continues() {
        let res = scan_family(&FamilyTemplate::new("x^m*y^2", (1, 2))).unwrap();
        assert_eq!(res.summary.errors, vec![1, 2]);
    }
}
