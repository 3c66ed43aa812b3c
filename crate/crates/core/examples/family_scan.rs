//! Invariants along the two one-parameter families.

use curvesing::explorer::{scan_family, FamilyTemplate};

fn main() -> curvesing::Result<()> {
    for text in ["x^(2m+1)+x^m*y^(m+1)+y^(2m)", "x^(2m+1)+y^(2m+1)+x^(m+1)*y^(m+1)"] {
        let res = scan_family(&FamilyTemplate::new(text, (2, 6)))?;
        println!("{text}");
        for e in &res.entries {
            let r = e.record.as_ref().expect("isolated");
            println!("  m = {}: mu {:>3} tau {:>3} rho {}", e.id, r.mu, r.tau, r.rho.expect("singular"));
        }
        println!("  strictly increasing: {:?}", res.summary.strictly_increasing);
    }
    Ok(())
}
