//! Colength of the ideal plus Jacobian minors for a space curve complete intersection.

use curvesing::invariants::tjurina_prime;
use curvesing::polyring::{jacobian_minors, parse_polynomial, VariableSet};

fn main() -> curvesing::Result<()> {
    let xyz = VariableSet::xyz();
    let gens = vec![parse_polynomial("z^2 - x^3", &xyz)?, parse_polynomial("y^2 - x*z", &xyz)?];
    for m in jacobian_minors(&gens, &xyz)? {
        println!("minor: {}", m.render());
    }
    println!("tau' = {}", tjurina_prime(&gens, &xyz)?);
    Ok(())
}
