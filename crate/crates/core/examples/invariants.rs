//! The full invariant record with its checks.

use curvesing::invariants::full_record;
use curvesing::polyring::{parse_polynomial, VariableSet};

fn main() -> curvesing::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "x^3 + y^7 + x*y^5".into());
    let f = parse_polynomial(&text, &VariableSet::xy())?;
    let rec = full_record(&f)?;
    println!(
        "mu {} tau {} m {} r {} delta {} rho {} quasihomogeneous {}",
        rec.mu,
        rec.tau,
        rec.m,
        rec.r,
        rec.delta,
        rec.rho.map_or("-".into(), |r| r.to_string()),
        rec.quasihomogeneous
    );
    for c in &rec.checks {
        println!("  {:<22} {:<4} {}", c.name, c.status.to_string(), c.detail);
    }
    println!("{}", serde_json::to_string(&rec).expect("serializable"));
    Ok(())
}
