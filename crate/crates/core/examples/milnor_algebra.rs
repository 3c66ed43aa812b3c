//! The Milnor algebra as a vector space, multiplication by f on it, and the
//! jet-space colength oracle.

use curvesing::finitealg::{jet_colength_search, multiplication_kernel_dim, principal_ideal_dim, quotient_algebra};
use curvesing::invariants::milnor_basis;
use curvesing::localstd::IdealBasis;
use curvesing::polyring::{parse_polynomial, VariableSet};

fn main() -> curvesing::Result<()> {
    let xy = VariableSet::xy();
    let f = parse_polynomial("x^7 + x^3*y^4 + y^6", &xy)?;
    let a = quotient_algebra(&milnor_basis(&f)?)?;
    println!("dim O/J_f = {}", a.dim());
    println!("dim ker(f) = {}", multiplication_kernel_dim(&f, &a));
    println!("dim <f>    = {}", principal_ideal_dim(&f, &a));
    println!("normal form of x^6: {}", a.normal_form(&parse_polynomial("x^6", &xy)?).render());

    let jacobian = IdealBasis::new(vec![f.partial_derivative(0), f.partial_derivative(1)])?;
    println!("jet oracle: {:?}", jet_colength_search(&jacobian, 40));
    Ok(())
}
