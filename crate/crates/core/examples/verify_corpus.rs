//! Checks the bundled corpus, or a corpus file given as the first argument.

use curvesing::explorer::{bundled_corpus, verify, Corpus};

fn main() -> curvesing::Result<()> {
    let corpus = match std::env::args().nth(1) {
        Some(p) => Corpus::load(p.as_ref())?,
        None => bundled_corpus(),
    };
    let report = verify(&corpus)?;
    print!("{}", report.render());
    std::process::exit(if report.passed() { 0 } else { 1 });
}
