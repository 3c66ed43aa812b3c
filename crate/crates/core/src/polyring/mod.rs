//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are stored in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is the
//! local order (negative-degree reverse lexicographic). The leading term under
//! that order is therefore the *last* entry of the map.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exactnum::{render_rational, Rational};

pub use parse::parse_polynomial;

/// Ordered list of distinct variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableSet {
    names: Vec<String>,
}

impl VariableSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidVariables("need at least one variable".into()));
        }
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().trim();
            let mut chars = n.chars();
            let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidVariables(format!("bad variable name {n:?}")));
            }
            if out.iter().any(|o| o == n) {
                return Err(Error::InvalidVariables(format!("duplicate variable {n:?}")));
            }
            out.push(n.to_string());
        }
        Ok(Self { names: out })
    }

    /// Parses a comma-separated list such as `"x,y,z"`.
    pub fn parse(list: &str) -> Result<Self> {
        let names: Vec<&str> = list.split(',').collect();
        Self::new(&names)
    }

    pub fn xy() -> Arc<Self> {
        Arc::new(Self::new(&["x", "y"]).expect("valid names"))
    }

    pub fn xyz() -> Arc<Self> {
        Arc::new(Self::new(&["x", "y", "z"]).expect("valid names"))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Display for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(","))
    }
}

/// Exponent vector. Comparison is the local order: lower total degree is
/// *larger*; ties are broken reverse-lexicographically, scanning from the
/// last variable, where the smaller exponent is larger.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable if this monomial is a pure power `v^k`, k ≥ 1.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn render(&self, vars: &VariableSet) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(vars.names())
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        LocalOrder::NegDegRevLex.compare(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The monomial order used for all standard-basis computations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LocalOrder {
    /// Negative-degree reverse lexicographic (Singular's `ds`).
    #[default]
    NegDegRevLex,
}

impl LocalOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            LocalOrder::NegDegRevLex => {
                let (da, db) = (a.degree(), b.degree());
                if da != db {
                    return db.cmp(&da);
                }
                for (x, y) in a.0.iter().rev().zip(b.0.iter().rev()) {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Sparse polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: Arc<VariableSet>,
    terms: BTreeMap<Monomial, Rational>,
}

/// Ring operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: PolyOp) -> Result<Polynomial> {
    if a.vars != b.vars {
        return Err(Error::VariableMismatch);
    }
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    })
}

impl Polynomial {
    pub fn zero(vars: Arc<VariableSet>) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Arc<VariableSet>, c: Rational) -> Self {
        let n = vars.len();
        Self::term(vars, Monomial::one(n), c)
    }

    pub fn one(vars: Arc<VariableSet>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn term(vars: Arc<VariableSet>, mono: Monomial, c: Rational) -> Self {
        debug_assert_eq!(mono.nvars(), vars.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Self { vars, terms }
    }

    pub fn var(vars: Arc<VariableSet>, index: usize) -> Self {
        let n = vars.len();
        Self::term(vars, Monomial::var(n, index), Rational::one())
    }

    pub fn from_terms<I>(vars: Arc<VariableSet>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending local order (leading term last).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * m * g`, dropping terms of total degree `>= cutoff` when given.
    pub(crate) fn add_scaled_shifted(
        &mut self,
        c: &Rational,
        m: &Monomial,
        g: &Polynomial,
        cutoff: Option<u32>,
    ) {
        for (gm, gc) in g.terms.iter() {
            let mono = m.mul(gm);
            if cutoff.is_some_and(|d| mono.degree() >= d) {
                continue;
            }
            self.add_term(mono, c * gc);
        }
    }

    pub fn leading_term(&self, ord: LocalOrder) -> Result<(Monomial, Rational)> {
        let LocalOrder::NegDegRevLex = ord;
        self.terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial("leading term of zero polynomial"))
    }

    pub(crate) fn lead(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Minimal total degree over the support (the order at the origin).
    pub fn order_of(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(Monomial::degree)
            .min()
            .ok_or(Error::ZeroPolynomial("order undefined for the zero polynomial"))
    }

    /// Maximal total degree over the support.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree spread `deg(f) - deg(LM(f))`.
    pub fn ecart(&self) -> u32 {
        match self.lead() {
            Some((lm, _)) => self.total_degree().unwrap_or(0) - lm.degree(),
            None => 0,
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.lead() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        let mut p = Polynomial::zero(self.vars.clone());
        p.add_scaled_shifted(c, m, self, None);
        p
    }

    /// Drops all terms of total degree `>= d`.
    pub fn truncate_degree(&self, d: u32) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.vars.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, v: usize) -> Polynomial {
        let mut p = Polynomial::zero(self.vars.clone());
        for (m, c) in self.terms.iter() {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[v] -= 1;
            p.add_term(dm, c * Rational::from_integer(e.into()));
        }
        p
    }

    pub fn partial_derivative_by_name(&self, name: &str) -> Result<Polynomial> {
        let v = self
            .vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.partial_derivative(v))
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars()))
    }

    /// Largest `k` such that variable `v`^k divides the polynomial.
    pub fn var_divisibility(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).min().unwrap_or(0)
    }

    /// Exact division by `v^k`; caller checks divisibility.
    pub fn divide_by_var_power(&self, v: usize, k: u32) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut d = m.clone();
                    d.0[v] -= k;
                    (d, c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes integer variable values (used for sanity checks only).
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in self.terms.iter() {
            let mut t = c.clone();
            for (e, x) in m.0.iter().zip(point) {
                for _ in 0..*e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Canonical text form, parseable by [`parse_polynomial`].
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&render_rational(&a));
            } else if a.is_one() {
                s.push_str(&m.render(&self.vars));
            } else {
                s.push_str(&render_rational(&a));
                s.push('*');
                s.push_str(&m.render(&self.vars));
            }
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.render())
    }
}

fn assert_same(a: &Polynomial, b: &Polynomial) {
    assert!(
        Arc::ptr_eq(&a.vars, &b.vars) || a.vars == b.vars,
        "polynomial variable sets differ: {} vs {}",
        a.vars,
        b.vars
    );
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_same(self, rhs);
        let mut p = self.clone();
        for (m, c) in rhs.terms.iter() {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_same(self, rhs);
        let mut p = self.clone();
        for (m, c) in rhs.terms.iter() {
            p.add_term(m.clone(), -c);
        }
        p
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_same(self, rhs);
        let mut p = Polynomial::zero(self.vars.clone());
        for (m, c) in self.terms.iter() {
            p.add_scaled_shifted(c, m, rhs, None);
        }
        p
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// All maximal minors of the Jacobian matrix of `gens` (an `n × N` matrix with
/// `n = N - 1`), ordered lexicographically by the chosen column set.
pub fn jacobian_minors(gens: &[Polynomial], vars: &Arc<VariableSet>) -> Result<Vec<Polynomial>> {
    let n = gens.len();
    let nv = vars.len();
    if n + 1 != nv {
        return Err(Error::DimensionMismatch(format!(
            "{n} equations in {nv} variables; a curve complete intersection needs {}",
            nv.saturating_sub(1)
        )));
    }
    if gens.iter().any(|g| g.vars() != vars) {
        return Err(Error::VariableMismatch);
    }
    let jac: Vec<Vec<Polynomial>> = gens
        .iter()
        .map(|g| (0..nv).map(|v| g.partial_derivative(v)).collect())
        .collect();
    let mut out = Vec::new();
    for cols in combinations(nv, n) {
        let sub: Vec<Vec<Polynomial>> = jac
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        out.push(determinant(&sub, vars));
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Cofactor expansion along the first row; matrices here are at most 3×3.
fn determinant(m: &[Vec<Polynomial>], vars: &Arc<VariableSet>) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(vars.clone()),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Polynomial::zero(vars.clone());
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let t = &m[0][j] * &determinant(&minor, vars);
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_from_i64;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &VariableSet::xy()).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn arithmetic_examples() {
        let a = p("x+y");
        assert_eq!(&a * &a, p("x^2 + 2*x*y + y^2"));
        let f = p("x^5 + x^2*y^3 + y^4");
        assert!((&f + &(-&f)).is_zero());
        assert_eq!(&f * &Polynomial::one(VariableSet::xy()), f);
        let other = parse_polynomial("x", &VariableSet::xyz()).unwrap();
        assert_eq!(poly_arith(&f, &other, PolyOp::Add), Err(Error::VariableMismatch));
    }

    #[test]
    fn derivatives() {
        let f = p("x^3 - y^2");
        assert_eq!(f.partial_derivative_by_name("x").unwrap(), p("3*x^2"));
        assert_eq!(f.partial_derivative_by_name("y").unwrap(), p("-2*y"));
        assert!(p("y^4").partial_derivative(0).is_zero());
        assert!(matches!(
            f.partial_derivative_by_name("w"),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn orders() {
        assert_eq!(p("x^5 + x^2*y^3 + y^4").order_of().unwrap(), 4);
        assert_eq!(p("x^3 - y^2").order_of().unwrap(), 2);
        assert_eq!(p("1 + x").order_of().unwrap(), 0);
        assert!(Polynomial::zero(VariableSet::xy()).order_of().is_err());
    }

    #[test]
    fn leading_terms_follow_local_order() {
        let o = LocalOrder::NegDegRevLex;
        assert_eq!(p("x^2 + y^3").leading_term(o).unwrap(), (mono(&[2, 0]), rat_from_i64(1)));
        assert_eq!(p("y^2 - x^3").leading_term(o).unwrap(), (mono(&[0, 2]), rat_from_i64(1)));
        // Degree tie: reverse lex looks at the y-exponent first; x^2 has the
        // smaller one and wins.
        assert_eq!(p("3*x*y + 5*x^2").leading_term(o).unwrap(), (mono(&[2, 0]), rat_from_i64(5)));
        assert!(Polynomial::zero(VariableSet::xy()).leading_term(o).is_err());
    }

    #[test]
    fn local_order_basics() {
        let o = LocalOrder::NegDegRevLex;
        assert_eq!(o.compare(&mono(&[0, 0]), &mono(&[5, 0])), Ordering::Greater);
        assert_eq!(o.compare(&mono(&[1, 0]), &mono(&[0, 1])), Ordering::Greater);
        assert_eq!(o.compare(&mono(&[1, 1]), &mono(&[0, 2])), Ordering::Greater);
    }

    #[test]
    fn minors_plane_case() {
        let vars = VariableSet::xy();
        let f = p("x^3 - y^2");
        let m = jacobian_minors(std::slice::from_ref(&f), &vars).unwrap();
        assert_eq!(m, vec![f.partial_derivative(0), f.partial_derivative(1)]);
        assert!(jacobian_minors(&[f.clone(), f], &vars).is_err());
    }

    #[test]
    fn minors_space_curve() {
        let vars = VariableSet::xyz();
        let g1 = parse_polynomial("z^2 - x^3", &vars).unwrap();
        let g2 = parse_polynomial("y^2 - x*z", &vars).unwrap();
        let minors = jacobian_minors(&[g1, g2], &vars).unwrap();
        // Rows [-3x^2, 0, 2z] and [-z, 2y, -x], determinants expanded by hand.
        let expect = ["-6*x^2*y", "3*x^3 + 2*z^2", "-4*y*z"];
        let expect: Vec<Polynomial> =
            expect.iter().map(|s| parse_polynomial(s, &vars).unwrap()).collect();
        assert_eq!(minors, expect);
    }

    #[test]
    fn minors_repeated_row_vanish() {
        let vars = VariableSet::xyz();
        let g = parse_polynomial("z^2 - x^3 + y*z", &vars).unwrap();
        let minors = jacobian_minors(&[g.clone(), g], &vars).unwrap();
        assert!(minors.iter().all(Polynomial::is_zero));
    }

    fn arb_mono(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..6, n).prop_map(|v| Monomial::from_exponents(&v))
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((arb_mono(2), -5i64..6), 0..6).prop_map(|ts| {
            Polynomial::from_terms(
                VariableSet::xy(),
                ts.into_iter().map(|(m, c)| (m, rat_from_i64(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn local_order_is_total_and_multiplicative(
            a in arb_mono(3), b in arb_mono(3), c in arb_mono(3)
        ) {
            let o = LocalOrder::NegDegRevLex;
            let ab = o.compare(&a, &b);
            prop_assert_eq!(ab, o.compare(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(o.compare(&a.mul(&c), &b.mul(&c)), ab);
            // 1 is the largest monomial.
            prop_assert_ne!(o.compare(&Monomial::one(3), &a), Ordering::Less);
            if o.compare(&a, &b) == Ordering::Greater && o.compare(&b, &c) == Ordering::Greater {
                prop_assert_eq!(o.compare(&a, &c), Ordering::Greater);
            }
        }

        #[test]
        fn render_parse_round_trip(f in arb_poly()) {
            let back = parse_polynomial(&f.render(), f.vars()).unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn derivative_linear_and_leibniz(f in arb_poly(), g in arb_poly()) {
            for v in 0..2 {
                let d = |h: &Polynomial| h.partial_derivative(v);
                prop_assert_eq!(d(&(&f + &g)), &d(&f) + &d(&g));
                prop_assert_eq!(d(&(&f * &g)), &(&d(&f) * &g) + &(&f * &d(&g)));
            }
        }
    }
}
