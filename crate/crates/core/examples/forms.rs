//! Pulled-back 1-forms on a branch and the comparison with the Jacobian ideal.

use curvesing::exactnum::rat_from_i64;
use curvesing::omega::{omega_codim, omega_gaps, omega_span, pol_identity_check};
use curvesing::polyring::{parse_polynomial, VariableSet};
use curvesing::puiseux::{puiseux_branches, PuiseuxBranch};

fn main() -> curvesing::Result<()> {
    let mut b = PuiseuxBranch::rational(3, &[(4, rat_from_i64(1))]);
    println!("branch {}", b.render());
    println!("form orders up to t^12: {:?}", omega_span(&mut b, 12)?.orders());
    println!("gaps: {:?}, codim {}", omega_gaps(&mut b)?, omega_codim(&mut b)?);

    let f = parse_polynomial("x^7 + x^3*y^4 + y^6", &VariableSet::xy())?;
    let mut bs = puiseux_branches(&f, 0)?;
    let b = &mut bs.branches_mut()[0];
    let rep = pol_identity_check(&f, b)?;
    println!("f = {}", f.render());
    println!("  forms codim {}, delta {}, conductor order {}", rep.omega_codim, rep.delta, rep.conductor_order);
    println!("  Jacobian span codim {}, identity holds: {}", rep.jacobian_codim, rep.holds);
    Ok(())
}
