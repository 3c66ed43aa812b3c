use proptest::prelude::*;

use curvesing::exactnum::rat_from_i64;
use curvesing::invariants::{full_record, milnor, tjurina, CheckStatus};
use curvesing::polyring::{parse_polynomial, Monomial, Polynomial, VariableSet};
use curvesing::Error;

fn poly(terms: Vec<(u32, u32, i64)>) -> Polynomial {
    let terms: Vec<(Monomial, _)> =
        terms.into_iter().map(|(a, b, c)| (Monomial::from_exponents(&[a, b]), rat_from_i64(c))).collect();
    Polynomial::from_terms(VariableSet::xy(), terms)
}

fn any_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((0u32..6, 0u32..6, -9i64..10), 0..7).prop_map(poly)
}

/// Germs without constant or linear part, plus a pure power of each variable
/// so that most samples are isolated.
fn germ() -> impl Strategy<Value = Polynomial> {
    (2u32..7, 2u32..7, prop::collection::vec((0u32..6, 0u32..6, -3i64..4), 0..4)).prop_map(|(a, b, rest)| {
        let mut terms = vec![(a, 0, 1), (0, b, 1)];
        terms.extend(rest.into_iter().filter(|&(i, j, _)| i + j >= 2));
        poly(terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn render_then_parse_is_identity(p in any_poly()) {
        let back = parse_polynomial(&p.render(), &VariableSet::xy()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn multiplication_distributes(a in any_poly(), b in any_poly(), c in any_poly()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_germs_pass_every_check(f in germ()) {
        let rec = match full_record(&f) {
            Err(Error::NonIsolated) => return Ok(()),
            other => other.unwrap(),
        };
        for c in &rec.checks {
            prop_assert_ne!(c.status, CheckStatus::Fail, "{}: {} {}", rec.input, c.name, c.detail);
        }
        prop_assert_eq!(rec.mu, milnor(&f).unwrap());
        prop_assert_eq!(rec.tau, tjurina(&f).unwrap());
        prop_assert_eq!(rec.tau_prime, Some(rec.tau));
    }

    #[test]
    fn invariants_do_not_depend_on_coordinate_swap(f in germ()) {
        let swapped = parse_polynomial(&f.render().replace('x', "u").replace('y', "x").replace('u', "y"), &VariableSet::xy()).unwrap();
        match (full_record(&f), full_record(&swapped)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!((a.mu, a.tau, a.m, a.r, a.delta), (b.mu, b.tau, b.m, b.r, b.delta));
                prop_assert_eq!(a.omega_codim, b.omega_codim);
            }
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a.map(|r| r.mu), b.map(|r| r.mu)),
        }
    }
}
