use super::*;
use crate::polyring::{parse_polynomial, VariableSet};

fn p(s: &str) -> Polynomial {
    parse_polynomial(s, &VariableSet::xy()).unwrap()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[test]
fn polygons() {
    let e = newton_polygon(&p("y^2 - x^3")).unwrap();
    assert_eq!(e, vec![Edge { start: (0, 2), end: (3, 0), slope: (3, 2), length: 1 }]);
    let e = newton_polygon(&p("x^5 + x^2*y^3 + y^4")).unwrap();
    assert_eq!(e, vec![Edge { start: (0, 4), end: (5, 0), slope: (5, 4), length: 1 }]);
    assert!(newton_polygon(&p("x*y")).unwrap().is_empty());
    let e = newton_polygon(&p("y^4 - x^2*y + x^6")).unwrap();
    assert_eq!(e.len(), 2);
    assert_eq!(e[0].slope, (2, 3));
    assert_eq!(e[1].slope, (4, 1));
    assert!(newton_polygon(&p("1 + x")).is_err());
}

#[test]
fn cusp() {
    let bs = puiseux_branches(&p("y^2 - x^3"), 10).unwrap();
    assert_eq!(bs.branch_count(), 1);
    let b = &bs.branches()[0];
    assert_eq!(b.ramification(), 2);
    assert!(b.is_exact());
    assert_eq!(b.render(), "x = t^2, y = t^3");
}

#[test]
fn node_and_lines() {
    let bs = puiseux_branches(&p("y^2 - x^2"), 5).unwrap();
    assert_eq!(bs.branch_count(), 2);
    let rendered: Vec<String> = bs.branches().iter().map(PuiseuxBranch::render).collect();
    assert_eq!(rendered, vec!["x = t, y = -t", "x = t, y = t"]);

    let bs = puiseux_branches(&p("x^2 + y^2"), 5).unwrap();
    assert_eq!(bs.branch_count(), 2);
    assert_eq!(bs.branches().len(), 1);
    assert_eq!(bs.branches()[0].render(), "x = t, y = a1*t\n    where a1^2 + 1 = 0");

    let bs = puiseux_branches(&p("x^3 - y^3"), 5).unwrap();
    assert_eq!(bs.branch_count(), 3);
}

#[test]
fn product_of_irreducibles() {
    let bs = puiseux_branches(&p("(y - x^2)*(y^2 - x^3)"), 12).unwrap();
    assert_eq!(bs.branch_count(), 2);
    let mut shapes: Vec<(u32, String)> =
        bs.branches().iter().map(|b| (b.ramification(), b.render())).collect();
    shapes.sort();
    assert_eq!(shapes[0], (1, "x = t, y = t^2".to_string()));
    assert_eq!(shapes[1], (2, "x = t^2, y = t^3".to_string()));
}

#[test]
fn axes_are_branches() {
    let bs = puiseux_branches(&p("x*y"), 4).unwrap();
    assert_eq!(bs.branch_count(), 2);
    let bs = puiseux_branches(&p("x^3 + x*y^3"), 8).unwrap();
    assert_eq!(bs.branch_count(), 2);
    let bs = puiseux_branches(&p("x^2*y + y^4"), 8).unwrap();
    assert_eq!(bs.branch_count(), 2);
}

#[test]
fn rejects_bad_input() {
    assert!(matches!(puiseux_branches(&p("x^2"), 4), Err(Error::NonIsolated)));
    assert!(matches!(puiseux_branches(&p("(y - x)^2*(y + x)"), 4), Err(Error::NonIsolated)));
    assert!(matches!(puiseux_branches(&p("1 + x"), 4), Err(Error::NotAGerm(_))));
}

#[test]
fn substitution_vanishes() {
    for f in ["x^5 + x^2*y^3 + y^4", "x^3 + y^7 + x*y^5", "x^4 + y^5 + x^2*y^3", "x^5 + y^5 + x^3*y^3", "y^4 - 2*x^3*y^2 + x^6 - x^7"] {
        let f = p(f);
        let mut bs = puiseux_branches(&f, 30).unwrap();
        for b in bs.branches_mut() {
            let s = pullback(b, &f, 30).unwrap();
            assert!(s.iter().all(|c| Tower::is_zero(c)), "{f}: {}", b.render());
        }
    }
}

#[test]
fn hensel_series() {
    // y = x^2 + y^2 is solved by the Catalan generating series in x^2.
    let f = p("y - x^2 - y^2");
    let bs = puiseux_branches(&f, 6).unwrap();
    let b = &bs.branches()[0];
    let coeffs: Vec<Rational> = (0..=6).map(|i| b.y_coefficient(i)[0].clone()).collect();
    assert_eq!(coeffs, vec![q(0), q(0), q(1), q(0), q(1), q(0), q(2)]);
}

#[test]
fn values_and_deltas() {
    let mut b = PuiseuxBranch::rational(2, &[(3, q(1))]);
    assert_eq!(branch_values(&mut b, 7).unwrap(), vec![0, 2, 3, 4, 5, 6, 7]);
    assert_eq!(delta_branch(&mut b).unwrap(), 1);

    let mut b = PuiseuxBranch::rational(3, &[(4, q(1))]);
    assert_eq!(branch_values(&mut b, 12).unwrap(), vec![0, 3, 4, 6, 7, 8, 9, 10, 11, 12]);
    assert_eq!(delta_branch(&mut b).unwrap(), 3);

    let mut b = PuiseuxBranch::rational(4, &[(6, q(1)), (7, q(1))]);
    let vals = branch_values(&mut b, 20).unwrap();
    let semigroup: Vec<usize> = (0..=20)
        .filter(|&v| (0..=5).any(|a| (0..=3).any(|c| (0..=1).any(|d| 4 * a + 6 * c + 13 * d == v))))
        .collect();
    assert_eq!(vals, semigroup);
    assert_eq!(delta_branch(&mut b).unwrap(), 8);
}

#[test]
fn intersections() {
    let b = PuiseuxBranch::rational(1, &[(2, q(1))]);
    assert_eq!(intersection_multiplicity(&b, &p("y + x^2")).unwrap(), 2);
    let c = PuiseuxBranch::rational(2, &[(3, q(1))]);
    assert_eq!(intersection_multiplicity(&c, &p("y")).unwrap(), 3);
    assert!(matches!(
        intersection_multiplicity(&c, &p("y^2 - x^3")),
        Err(Error::InsufficientPrecision(_))
    ));
    // Both conjugate lines y = +-i x meet y = 0 once.
    let bs = puiseux_branches(&p("x^2 + y^2"), 4).unwrap();
    assert_eq!(intersection_multiplicity(&bs.branches()[0], &p("y")).unwrap(), 2);
    // y = a x with a^4 = 1/4: the algebra is Q(sqrt(1/2)) x Q(sqrt(-1/2)) and
    // g separates the factors. Lines x = +-sqrt2 y meet g to order 3, x = +-i sqrt2 y to order 2.
    let bs = puiseux_branches(&p("x^4 - 4*y^4"), 4).unwrap();
    assert_eq!(bs.branches().len(), 1);
    assert_eq!(intersection_multiplicity(&bs.branches()[0], &p("2*y^2 - x^2 + y^3")).unwrap(), 10);
}

#[test]
fn delta_by_elimination() {
    for (f, delta) in [
        ("y^2 - x^3", 1),
        ("y^2 - x^2", 1),
        ("x^3 - y^3", 3),
        ("x^2 + y^2", 1),
        ("x*y", 1),
        ("x^3 + x*y^3", 4),
        ("x^2*y + y^3", 3),
        ("x^5 + x^2*y^3 + y^4", 6),
        ("x^5 + y^5 + x^3*y^3", 10),
        ("y^3 - x^4", 3),
        ("y - x^2", 0),
    ] {
        let mut bs = puiseux_branches(&p(f), 8).unwrap();
        assert_eq!(delta_oracle(&mut bs).unwrap(), delta, "{f}");
    }
}

#[test]
fn splitting_formula_on_rational_branches() {
    // (y - x^2)(y^2 - x^3): delta = 0 + 1 + i((t, t^2), y^2 - x^3) = 1 + 3.
    let f = p("(y - x^2)*(y^2 - x^3)");
    let mut bs = puiseux_branches(&f, 8).unwrap();
    let line = PuiseuxBranch::rational(1, &[(2, q(1))]);
    let mut cusp = PuiseuxBranch::rational(2, &[(3, q(1))]);
    let split = delta_branch(&mut cusp).unwrap() + intersection_multiplicity(&line, &p("y^2 - x^3")).unwrap();
    assert_eq!(split, 4);
    assert_eq!(delta_oracle(&mut bs).unwrap(), split);
}
