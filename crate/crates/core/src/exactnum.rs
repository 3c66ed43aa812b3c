//! Exact integer and rational arithmetic.
//!
//! Every coefficient in the crate is a [`Rational`]. Values are always kept in
//! canonical form: reduced, denominator strictly positive, zero as `0/1`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Arbitrary-precision exact fraction, always in lowest terms.
pub type Rational = BigRational;

/// Builds the canonical fraction `n/d`.
pub fn rat_make(n: Integer, d: Integer) -> Result<Rational> {
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

/// Binary field operation selector for [`rat_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(a: &Rational, b: &Rational, op: RatOp) -> Result<Rational> {
    Ok(match op {
        RatOp::Add => a + b,
        RatOp::Sub => a - b,
        RatOp::Mul => a * b,
        RatOp::Div => {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            a / b
        }
    })
}

pub fn rat_cmp(a: &Rational, b: &Rational) -> Ordering {
    a.cmp(b)
}

pub fn rat_from_i64(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders `p/q`, omitting `/q` when the denominator is one.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `[+-]digits[/digits]`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |msg: &str| Error::Parse {
        position: 0,
        message: format!("invalid rational literal {text:?}: {msg}"),
    };
    let (sign, body) = match text.as_bytes().first() {
        Some(b'-') => (-1, &text[1..]),
        Some(b'+') => (1, &text[1..]),
        _ => (1, text),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
    if !digits(num) {
        return Err(bad("expected digits"));
    }
    let n: BigInt = num.parse().map_err(|_| bad("expected digits"))?;
    let d: BigInt = match den {
        Some(d) if digits(d) => d.parse().map_err(|_| bad("expected digits"))?,
        Some(_) => return Err(bad("expected digits after '/'")),
        None => BigInt::one(),
    };
    rat_make(n * sign, d)
}

/// Clears denominators of a rational vector, returning integers with the same
/// projective direction.
pub(crate) fn clear_denominators(row: &[Rational]) -> Vec<Integer> {
    let mut lcm = BigInt::one();
    for x in row {
        if !x.is_zero() {
            lcm = num_integer::Integer::lcm(&lcm, x.denom());
        }
    }
    row.iter()
        .map(|x| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                x.numer() * (&lcm / x.denom())
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        rat_make(n.into(), d.into()).unwrap()
    }

    #[test]
    fn make_normalizes() {
        assert_eq!(render_rational(&q(2, 4)), "1/2");
        assert_eq!(render_rational(&q(3, -6)), "-1/2");
        let z = q(0, 7);
        assert_eq!(z.numer(), &BigInt::zero());
        assert_eq!(z.denom(), &BigInt::one());
        assert!(matches!(
            rat_make(1.into(), 0.into()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(rat_arith(&q(1, 2), &q(1, 3), RatOp::Add).unwrap(), q(5, 6));
        assert_eq!(rat_arith(&q(1, 2), &q(0, 1), RatOp::Mul).unwrap(), q(0, 1));
        assert_eq!(rat_arith(&q(5, 6), &q(5, 6), RatOp::Div).unwrap(), q(1, 1));
        assert!(rat_arith(&q(5, 6), &q(0, 1), RatOp::Div).is_err());
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(rat_cmp(&q(4, 3), &q(2, 1)), Ordering::Less);
        assert_eq!(rat_cmp(&q(1, 2), &q(2, 4)), Ordering::Equal);
        assert_eq!(rat_cmp(&q(-1, 3), &q(-1, 2)), Ordering::Greater);
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "-", "1/", "/2", "1.5", "1/-2", "x"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
        assert!(matches!(parse_rational("3/0"), Err(Error::DivisionByZero)));
        assert_eq!(parse_rational("+6/4").unwrap(), q(3, 2));
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1i64..i64::MAX, any::<bool>()).prop_map(|(n, d, neg)| {
            let d = if neg { -d } else { d };
            q(n, d)
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &(-&a)).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.recip()).is_one());
            }
        }

        #[test]
        fn canonical_and_round_trip(a in arb_rat()) {
            let again = rat_make(a.numer().clone(), a.denom().clone()).unwrap();
            prop_assert_eq!(&again, &a);
            prop_assert!(a.denom() > &BigInt::zero());
            prop_assert_eq!(parse_rational(&render_rational(&a)).unwrap(), a);
        }
    }
}
