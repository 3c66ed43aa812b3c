//! Parsing, local-order leading terms and exact rational coefficients.

use curvesing::exactnum::{parse_rational, rat_arith, render_rational, RatOp};
use curvesing::polyring::{parse_polynomial, LocalOrder, VariableSet};

fn main() -> curvesing::Result<()> {
    let xy = VariableSet::xy();
    let f = parse_polynomial("(x - 1/2*y)^2 + x^5 + 3*x*y^3", &xy)?;
    println!("f        = {}", f.render());
    let (lm, lc) = f.leading_term(LocalOrder::NegDegRevLex)?;
    println!("lead     = {} * {}", render_rational(&lc), lm.render(&xy));
    println!("order    = {}", f.order_of()?);
    println!("ecart    = {}", f.ecart());
    println!("f_x      = {}", f.partial_derivative(0).render());

    let a = parse_rational("-6/4")?;
    let b = parse_rational("1/3")?;
    println!("-6/4 / 1/3 = {}", render_rational(&rat_arith(&a, &b, RatOp::Div)?));

    if let Err(e) = parse_polynomial("2x + y", &xy) {
        println!("rejected: {e}");
    }
    Ok(())
}
