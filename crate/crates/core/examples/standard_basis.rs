//! Mora standard basis of a Tjurina ideal, its staircase and ideal membership.

use curvesing::localstd::{colength, ideal_membership, standard_basis, IdealBasis};
use curvesing::polyring::{parse_polynomial, LocalOrder, VariableSet};

fn main() -> curvesing::Result<()> {
    let xy = VariableSet::xy();
    let f = parse_polynomial("x^5 + y^5 + x^3*y^3", &xy)?;
    let ideal = IdealBasis::new(vec![f.clone(), f.partial_derivative(0), f.partial_derivative(1)])?;
    let sb = standard_basis(&ideal, LocalOrder::NegDegRevLex)?;

    println!("standard basis of <f, f_x, f_y> for f = {}:", f.render());
    for g in sb.gens() {
        println!("  {}", g.render());
    }
    let stairs: Vec<String> = sb.staircase().unwrap_or_default().iter().map(|m| m.render(&xy)).collect();
    println!("staircase ({}): {}", stairs.len(), stairs.join(" "));
    println!("colength: {:?}", colength(&sb));

    let h = parse_polynomial("x^3*y^3", &xy)?;
    println!("x^3*y^3 in ideal: {}", ideal_membership(&h, &sb)?);
    Ok(())
}
