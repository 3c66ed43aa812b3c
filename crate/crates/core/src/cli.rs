//! Command-line front end.
//!
//! Exit codes: 0 success, 1 computational failure or failing check,
//! 2 usage or input error, 3 internal invariant violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::explorer::{
    bundled_corpus, bundled_corpus_text, parse_range, scan_family, search_support, search_to_path,
    verify, Corpus, FamilyTemplate, ScanResult, SearchConfig, CANDIDATE_RHO,
};
use crate::invariants::{full_record, tjurina_prime, InvariantRecord, Ratio};
use crate::localstd::STEP_BOUND_ENV;
use crate::omega::{omega_codim, omega_gaps, pol_identity_check};
use crate::polyring::{parse_polynomial, Polynomial, VariableSet};
use crate::puiseux::puiseux_branches;

#[derive(Parser, Debug)]
#[command(
    name = "curvesing",
    version,
    about = "Exact invariants of plane curve singularities",
    after_help = format!(
        "Exit codes: 0 ok, 1 computation failed or a check failed, 2 bad input, 3 internal error.\n\
         Set {STEP_BOUND_ENV} to change the reduction step bound."
    )
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Add a 6-significant-digit decimal next to exact ratios.
    #[arg(long, global = true)]
    approx: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All invariants of a plane germ f = 0 and the identity checks.
    Invariants {
        f: String,
        #[arg(long, default_value = "x,y")]
        vars: String,
        #[command(flatten)]
        out: Output,
    },
    /// Pulled-back 1-forms on an irreducible germ.
    Omega {
        f: String,
        #[arg(long, default_value = "x,y")]
        vars: String,
        #[command(flatten)]
        out: Output,
    },
    /// Colength of I + (maximal Jacobian minors) for a complete intersection curve.
    Tauprime {
        /// Defining equations (n - 1 of them in n variables).
        #[arg(required = true)]
        gens: Vec<String>,
        /// Defaults to x,y for one equation and x,y,z for two.
        #[arg(long)]
        vars: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Newton-Puiseux parametrizations of the branches.
    Branches {
        f: String,
        #[arg(long, default_value = "x,y")]
        vars: String,
        /// Show y(t) at least up to t^PRECISION.
        #[arg(long, default_value_t = 8)]
        precision: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Invariants along a one-parameter family, e.g. "x^(2m+1)+y^(2m)".
    Scan {
        #[arg(long)]
        family: String,
        /// Inclusive parameter range a..b.
        #[arg(long)]
        range: String,
        #[arg(long, default_value = "m")]
        param: String,
        #[arg(long, default_value = "x,y")]
        vars: String,
        #[command(flatten)]
        out: Output,
    },
    /// Seeded random search over a fixed Newton support.
    Search {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        samples: Option<u64>,
        /// Comma-separated monomials.
        #[arg(long)]
        support: Option<String>,
        /// Nonzero integers: a range a..b (zero skipped) or a comma list.
        #[arg(long, allow_hyphen_values = true)]
        coefficients: Option<String>,
        #[arg(long, default_value = "x,y")]
        vars: String,
        /// Write JSON Lines results here.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Continue an interrupted run in --output.
        #[arg(long, requires = "output")]
        resume: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Check a corpus file (the bundled corpus if omitted).
    Verify {
        path: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Print the bundled corpus.
    Corpus,
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_internal() {
        3
    } else if e.is_input() {
        2
    } else {
        1
    }
}

fn vars_of(text: &str) -> Result<Arc<VariableSet>> {
    Ok(Arc::new(VariableSet::parse(text)?))
}

fn plane(f: &str, vars: &str) -> Result<Polynomial> {
    let vars = vars_of(vars)?;
    if vars.len() != 2 {
        return Err(Error::DimensionMismatch(format!("plane curves need 2 variables, got {}", vars.len())));
    }
    parse_polynomial(f, &vars)
}

fn emit_json<T: Serialize>(w: &mut dyn Write, v: &T) -> Result<()> {
    writeln!(w, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn approx(r: &Ratio) -> String {
    let x = r.to_f64();
    if x == 0.0 {
        return "0".into();
    }
    let digits = (5 - x.abs().log10().floor() as i32).max(0) as usize;
    format!("{x:.digits$}")
}

fn rho_text(rho: Option<Ratio>, out: &Output) -> String {
    match rho {
        None => "undefined (smooth)".into(),
        Some(r) if out.approx => format!("{r} (~{})", approx(&r)),
        Some(r) => r.to_string(),
    }
}

fn record_table(rec: &InvariantRecord, out: &Output) -> String {
    let yes = |b: bool| if b { "yes" } else { "no" };
    let opt = |v: Option<u64>| v.map_or("-".to_string(), |n| n.to_string());
    let mut s = String::new();
    let rows = [
        ("input", rec.input.clone()),
        ("mu", rec.mu.to_string()),
        ("tau", rec.tau.to_string()),
        ("tau'", opt(rec.tau_prime)),
        ("m", rec.m.to_string()),
        ("r", rec.r.to_string()),
        ("delta", rec.delta.to_string()),
        ("lambda", rec.lambda.to_string()),
        ("rho", rho_text(rec.rho, out)),
        ("omega", opt(rec.omega_codim)),
        ("QH", yes(rec.quasihomogeneous).to_string()),
    ];
    for (k, v) in rows {
        s.push_str(&format!("{k:<7} {v}\n"));
    }
    s.push_str("checks\n");
    for c in &rec.checks {
        s.push_str(&format!("  {:<22} {:<4} {}\n", c.name, c.status.to_string(), c.detail));
    }
    s
}

fn scan_table(res: &ScanResult, out: &Output) -> String {
    let mut s = format!("{:>5}  {:>5} {:>5} {:>3} {:>3} {:>5}  {:<16} {:<5} {}\n", "id", "mu", "tau", "m", "r", "delta", "rho", "QH", "input");
    for e in &res.entries {
        match &e.record {
            Some(r) => s.push_str(&format!(
                "{:>5}  {:>5} {:>5} {:>3} {:>3} {:>5}  {:<16} {:<5} {}{}\n",
                e.id,
                r.mu,
                r.tau,
                r.m,
                r.r,
                r.delta,
                rho_text(r.rho, out),
                if r.quasihomogeneous { "yes" } else { "no" },
                e.input,
                if r.all_pass() { "" } else { "  [CHECK FAILED]" }
            )),
            None => s.push_str(&format!("{:>5}  error: {}  ({})\n", e.id, e.error.as_deref().unwrap_or("?"), e.input)),
        }
    }
    let sm = &res.summary;
    s.push_str(&format!("items {}; errors {}; check failures {}\n", sm.count, sm.errors.len(), sm.check_failures.len()));
    if let (Some(m), Some(a)) = (sm.max_rho, &sm.argmax) {
        s.push_str(&format!("max rho {} at {a}\n", rho_text(Some(m), out)));
    }
    if let Some(inc) = sm.strictly_increasing {
        s.push_str(&format!("rho strictly increasing: {}\n", if inc { "yes" } else { "no" }));
    }
    if !sm.candidates.is_empty() {
        s.push_str(&format!(
            "candidate refutation (rho >= {CANDIDATE_RHO}) at ids {:?}: requires independent re-verification with the jet oracle and higher branch precision\n",
            sm.candidates
        ));
    }
    s
}

fn scan_code(res: &ScanResult) -> i32 {
    if res.summary.check_failures.is_empty() {
        0
    } else {
        1
    }
}

fn parse_coefficients(text: &str) -> Result<Vec<i64>> {
    let bad = |m: String| Error::Parse { position: 0, message: m };
    if text.contains("..") {
        let (a, b) = parse_range(text)?;
        return Ok((a..=b).filter(|&c| c != 0).collect());
    }
    text.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| bad(format!("bad coefficient {s:?}"))))
        .collect()
}

fn dispatch(cmd: Command, w: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Invariants { f, vars, out } => {
            let rec = full_record(&plane(&f, &vars)?)?;
            if out.json {
                emit_json(w, &rec)?;
            } else {
                write!(w, "{}", record_table(&rec, &out))?;
            }
            Ok(if rec.all_pass() { 0 } else { 1 })
        }
        Command::Omega { f, vars, out } => {
            let f = plane(&f, &vars)?;
            let mut bs = puiseux_branches(&f, 0)?;
            let r = bs.branch_count();
            if r != 1 {
                return Err(Error::NotIrreducible(format!("the germ has {r} branches")));
            }
            let b = &mut bs.branches_mut()[0];
            let codim = omega_codim(b)?;
            let gaps = omega_gaps(b)?;
            let rep = pol_identity_check(&f, b)?;
            if out.json {
                emit_json(
                    w,
                    &json!({
                        "input": f.render(),
                        "omega_codim": codim,
                        "gaps": gaps,
                        "delta": rep.delta,
                        "conductor_order": rep.conductor_order,
                        "jacobian_codim": rep.jacobian_codim,
                        "jacobian_identity": rep.holds,
                    }),
                )?;
            } else {
                writeln!(w, "input            {}", f.render())?;
                writeln!(w, "omega codim      {codim}")?;
                writeln!(w, "form gaps        {gaps:?}")?;
                writeln!(w, "delta            {}", rep.delta)?;
                writeln!(w, "conductor order  {}", rep.conductor_order)?;
                writeln!(w, "jacobian codim   {}", rep.jacobian_codim)?;
                writeln!(w, "span identity    {}", if rep.holds { "holds" } else { "FAILS" })?;
            }
            Ok(if rep.holds { 0 } else { 1 })
        }
        Command::Tauprime { gens, vars, out } => {
            let vars = match vars {
                Some(v) => vars_of(&v)?,
                None if gens.len() == 1 => VariableSet::xy(),
                None if gens.len() == 2 => VariableSet::xyz(),
                None => return Err(Error::DimensionMismatch("give --vars for more than two equations".into())),
            };
            let polys = gens.iter().map(|g| parse_polynomial(g, &vars)).collect::<Result<Vec<_>>>()?;
            let tp = tjurina_prime(&polys, &vars)?;
            if out.json {
                let inputs: Vec<String> = polys.iter().map(Polynomial::render).collect();
                emit_json(w, &json!({ "input": inputs, "vars": vars.names(), "tau_prime": tp }))?;
            } else {
                writeln!(w, "tau' = {tp}")?;
            }
            Ok(0)
        }
        Command::Branches { f, vars, precision, out } => {
            let f = plane(&f, &vars)?;
            let bs = puiseux_branches(&f, precision)?;
            if out.json {
                let branches: Vec<_> = bs
                    .branches()
                    .iter()
                    .map(|b| {
                        let text = b.render();
                        json!({
                            "conjugates": b.conjugates(),
                            "ramification": b.ramification(),
                            "exact": b.is_exact(),
                            "parametrization": text.lines().next().unwrap_or_default(),
                            "relations": b.tower().render_relations(),
                        })
                    })
                    .collect();
                emit_json(w, &json!({ "input": f.render(), "r": bs.branch_count(), "branches": branches }))?;
            } else {
                writeln!(w, "{} branch(es) of {}", bs.branch_count(), f.render())?;
                for b in bs.branches() {
                    let tag = if b.conjugates() > 1 { format!(" [{} conjugates]", b.conjugates()) } else { String::new() };
                    writeln!(w, "  {}{tag}", b.render().replace('\n', "\n  "))?;
                }
            }
            Ok(0)
        }
        Command::Scan { family, range, param, vars, out } => {
            let t = FamilyTemplate { text: family, param, vars: vars_of(&vars)?, range: parse_range(&range)? };
            let res = scan_family(&t)?;
            if out.json {
                emit_json(w, &res)?;
            } else {
                write!(w, "{}", scan_table(&res, &out))?;
            }
            Ok(scan_code(&res))
        }
        Command::Search { seed, samples, support, coefficients, vars, output, resume, out } => {
            let mut cfg = SearchConfig { vars, ..SearchConfig::default() };
            if let Some(n) = samples {
                cfg.samples = n;
            }
            if let Some(s) = support {
                cfg.support = s.split(',').map(|m| m.trim().to_string()).collect();
            }
            if let Some(c) = coefficients {
                cfg.coefficients = parse_coefficients(&c)?;
            }
            let res = match &output {
                Some(p) => search_to_path(&cfg, seed, p, resume)?,
                None => search_support(&cfg, seed)?,
            };
            if out.json {
                emit_json(w, &res)?;
            } else {
                write!(w, "{}", scan_table(&res, &out))?;
            }
            Ok(scan_code(&res))
        }
        Command::Verify { path, out } => {
            let corpus = match path {
                Some(p) => Corpus::load(&p)?,
                None => bundled_corpus(),
            };
            let report = verify(&corpus)?;
            if out.json {
                emit_json(w, &report)?;
            } else {
                write!(w, "{}", report.render())?;
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Corpus => {
            write!(w, "{}", bundled_corpus_text())?;
            Ok(0)
        }
    }
}
