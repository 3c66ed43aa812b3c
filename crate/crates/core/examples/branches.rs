//! Newton polygons, Puiseux branches, branch semigroups and intersection numbers.

use curvesing::polyring::{parse_polynomial, VariableSet};
use curvesing::puiseux::{branch_values, delta_branch, delta_oracle, intersection_multiplicity, newton_polygon, puiseux_branches};

fn main() -> curvesing::Result<()> {
    let xy = VariableSet::xy();
    for text in ["y^4 - 2*x^3*y^2 + x^6 - x^7", "x^4 - 4*y^4", "x*(y^2 - x^3)"] {
        let f = parse_polynomial(text, &xy)?;
        println!("f = {}", f.render());
        for e in newton_polygon(&f)? {
            println!("  edge {:?} -> {:?}, slope {}/{}, length {}", e.start, e.end, e.slope.0, e.slope.1, e.length);
        }
        let mut bs = puiseux_branches(&f, 6)?;
        for b in bs.branches() {
            println!("  {}", b.render().replace('\n', "\n  "));
        }
        println!("  r = {}, delta = {}", bs.branch_count(), delta_oracle(&mut bs)?);
    }

    let f = parse_polynomial("y^4 - 2*x^3*y^2 + x^6 - x^7", &xy)?;
    let mut bs = puiseux_branches(&f, 0)?;
    let b = &mut bs.branches_mut()[0];
    println!("semigroup elements below 16: {:?}", branch_values(b, 16)?);
    println!("branch delta: {}", delta_branch(b)?);
    let g = parse_polynomial("y^2 - x^3", &xy)?;
    println!("intersection with y^2 - x^3: {}", intersection_multiplicity(b, &g)?);
    Ok(())
}
