//! Standard bases in the local ring via Mora's tangent-cone algorithm.
//!
//! Reduction uses ecart-controlled weak normal forms: the reducer set grows by
//! the intermediate remainders whose ecart is smaller than that of the chosen
//! reducer, which is what makes reduction terminate under a local order.
//!
//! Once the leading ideal of the partial basis has a finite staircase with
//! maximal degree `D - 1`, every monomial of degree `>= D` lies in the ideal,
//! so all later arithmetic is done modulo `m^D` (the "highest corner").

use std::collections::HashSet;

use num_traits::One;

use crate::error::{Error, Result};
use crate::polyring::{LocalOrder, Monomial, Polynomial, VariableSet};
use std::sync::Arc;

/// Environment variable overriding [`MoraConfig::step_bound`].
pub const STEP_BOUND_ENV: &str = "CURVESING_STEP_BOUND";

#[derive(Clone, Debug)]
pub struct MoraConfig {
    /// Maximum number of single-term reduction steps for one computation.
    pub step_bound: u64,
}

impl Default for MoraConfig {
    fn default() -> Self {
        let step_bound = std::env::var(STEP_BOUND_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(10_000_000);
        Self { step_bound }
    }
}

/// Generators of an ideal of the local ring.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealBasis {
    gens: Vec<Polynomial>,
}

impl IdealBasis {
    /// Drops zero generators; fails if nothing is left or variable sets differ.
    pub fn new(gens: Vec<Polynomial>) -> Result<Self> {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let Some(first) = gens.first() else {
            return Err(Error::ZeroPolynomial("ideal basis has no nonzero generator"));
        };
        if gens.iter().any(|g| g.vars() != first.vars()) {
            return Err(Error::VariableMismatch);
        }
        Ok(Self { gens })
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        self.gens[0].vars()
    }
}

/// Vector-space codimension of an ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct StandardBasis {
    vars: Arc<VariableSet>,
    gens: Vec<Polynomial>,
    leads: Vec<Monomial>,
    order: LocalOrder,
    corner: Option<u32>,
}

struct Reducer {
    poly: Polynomial,
    lead: Monomial,
    ecart: u32,
}

impl Reducer {
    fn new(poly: Polynomial) -> Self {
        let lead = poly.lead().expect("nonzero reducer").0.clone();
        let ecart = poly.ecart();
        Self { poly, lead, ecart }
    }
}

struct StepCounter {
    used: u64,
    bound: u64,
}

impl StepCounter {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.bound {
            return Err(Error::StepBound(self.bound));
        }
        Ok(())
    }
}

/// Mora weak normal form of `f` with respect to `g`.
pub fn mora_reduce(f: &Polynomial, g: &[Polynomial], ord: LocalOrder) -> Result<Polynomial> {
    mora_reduce_with(f, g, ord, &MoraConfig::default())
}

pub fn mora_reduce_with(
    f: &Polynomial,
    g: &[Polynomial],
    ord: LocalOrder,
    cfg: &MoraConfig,
) -> Result<Polynomial> {
    let LocalOrder::NegDegRevLex = ord;
    let mut steps = StepCounter { used: 0, bound: cfg.step_bound };
    let reducers: Vec<&Polynomial> = g.iter().filter(|p| !p.is_zero()).collect();
    weak_normal_form(f.clone(), &reducers, None, &mut steps)
}

fn weak_normal_form(
    f: Polynomial,
    g: &[&Polynomial],
    cutoff: Option<u32>,
    steps: &mut StepCounter,
) -> Result<Polynomial> {
    let mut h = match cutoff {
        Some(d) => f.truncate_degree(d),
        None => f,
    };
    if h.is_zero() {
        return Ok(h);
    }
    let mut t: Vec<Reducer> = g.iter().map(|p| Reducer::new((*p).clone())).collect();
    loop {
        let Some((lm, lc)) = h.lead() else {
            return Ok(h);
        };
        let mut best: Option<usize> = None;
        for (i, r) in t.iter().enumerate() {
            if r.lead.divides(lm) && best.is_none_or(|b| r.ecart < t[b].ecart) {
                best = Some(i);
            }
        }
        let Some(b) = best else {
            return Ok(h);
        };
        let (lm, lc) = (lm.clone(), lc.clone());
        let h_ecart = h.ecart();
        if t[b].ecart > h_ecart {
            t.push(Reducer::new(h.clone()));
        }
        let r = &t[b];
        let (_, rlc) = r.poly.lead().expect("nonzero");
        let factor = -(&lc / rlc);
        let shift = r.lead.quotient_of(&lm);
        let reducer = r.poly.clone();
        h.add_scaled_shifted(&factor, &shift, &reducer, cutoff);
        steps.tick()?;
    }
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, cutoff: Option<u32>) -> Polynomial {
    let (fm, fc) = f.lead().expect("nonzero");
    let (gm, gc) = g.lead().expect("nonzero");
    let l = fm.lcm(gm);
    let mut s = Polynomial::zero(f.vars().clone());
    s.add_scaled_shifted(&fc.recip(), &fm.quotient_of(&l), f, cutoff);
    s.add_scaled_shifted(&(-gc.recip()), &gm.quotient_of(&l), g, cutoff);
    s
}

/// Monomials outside the ideal generated by `leads`, or `None` if infinitely many.
pub(crate) fn staircase_of(leads: &[Monomial], nvars: usize) -> Option<Vec<Monomial>> {
    let mut bounds = vec![None::<u32>; nvars];
    for m in leads {
        if m.is_one() {
            return Some(Vec::new());
        }
        if let Some(v) = m.pure_power_var() {
            let e = m.exponents()[v];
            bounds[v] = Some(bounds[v].map_or(e, |b: u32| b.min(e)));
        }
    }
    let bounds: Vec<u32> = bounds.into_iter().collect::<Option<Vec<_>>>()?;
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    loop {
        let m = Monomial::from_exponents(&exps);
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        // odometer over the bounding box
        let mut k = 0;
        loop {
            if k == nvars {
                out.sort_by(|a, b| b.cmp(a));
                return Some(out);
            }
            exps[k] += 1;
            if exps[k] < bounds[k] {
                break;
            }
            exps[k] = 0;
            k += 1;
        }
    }
}

fn corner_of(leads: &[Monomial], nvars: usize) -> Option<u32> {
    staircase_of(leads, nvars).map(|st| st.iter().map(|m| m.degree() + 1).max().unwrap_or(0))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    seq: u64,
}

pub fn standard_basis(ideal: &IdealBasis, ord: LocalOrder) -> Result<StandardBasis> {
    standard_basis_with(ideal, ord, &MoraConfig::default())
}

pub fn standard_basis_with(
    ideal: &IdealBasis,
    ord: LocalOrder,
    cfg: &MoraConfig,
) -> Result<StandardBasis> {
    let LocalOrder::NegDegRevLex = ord;
    let vars = ideal.vars().clone();
    let nvars = vars.len();
    let mut steps = StepCounter { used: 0, bound: cfg.step_bound };
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut seq = 0u64;
    let mut cutoff: Option<u32> = None;

    let mut pending: Vec<Polynomial> = ideal.gens().iter().map(Polynomial::monic).collect();
    pending.reverse();
    loop {
        let next = if let Some(p) = pending.pop() {
            Some(p)
        } else {
            select_pair(&mut pairs).map(|pair| s_polynomial(&basis[pair.i], &basis[pair.j], cutoff))
        };
        let Some(candidate) = next else { break };
        let refs: Vec<&Polynomial> = basis.iter().collect();
        let h = weak_normal_form(candidate, &refs, cutoff, &mut steps)?;
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        let hl = h.lead().expect("nonzero").0.clone();
        if hl.is_one() {
            return Ok(StandardBasis {
                vars: vars.clone(),
                gens: vec![Polynomial::one(vars)],
                leads: vec![Monomial::one(nvars)],
                order: ord,
                corner: Some(0),
            });
        }
        let k = basis.len();
        for (i, b) in basis.iter().enumerate() {
            let li = b.lead().expect("nonzero").0;
            if li.coprime(&hl) {
                continue;
            }
            pairs.push(Pair { i, j: k, lcm: li.lcm(&hl), seq });
            seq += 1;
        }
        basis.push(h);

        let leads: Vec<Monomial> = basis.iter().map(|p| p.lead().expect("nonzero").0.clone()).collect();
        if let Some(d) = corner_of(&leads, nvars) {
            if cutoff.is_none_or(|c| d < c) {
                cutoff = Some(d);
                for p in basis.iter_mut() {
                    let lm = p.lead().expect("nonzero").0.clone();
                    *p = if lm.degree() >= d {
                        Polynomial::term(vars.clone(), lm, One::one())
                    } else {
                        p.truncate_degree(d)
                    };
                }
                pending = pending.iter().map(|p| p.truncate_degree(d)).collect();
            }
        }
    }

    // Minimalize: drop generators whose leading monomial is divisible by another's.
    let leads: Vec<Monomial> = basis.iter().map(|p| p.lead().expect("nonzero").0.clone()).collect();
    let mut keep = Vec::new();
    let mut seen: HashSet<Monomial> = HashSet::new();
    for (i, li) in leads.iter().enumerate() {
        let redundant = leads
            .iter()
            .enumerate()
            .any(|(j, lj)| j != i && lj != li && lj.divides(li));
        if !redundant && seen.insert(li.clone()) {
            keep.push(i);
        }
    }
    let gens: Vec<Polynomial> = keep.iter().map(|&i| basis[i].clone()).collect();
    let leads: Vec<Monomial> = keep.iter().map(|&i| leads[i].clone()).collect();
    Ok(StandardBasis { vars, gens, leads, order: ord, corner: cutoff })
}

fn select_pair(pairs: &mut Vec<Pair>) -> Option<Pair> {
    if pairs.is_empty() {
        return None;
    }
    let mut best = 0;
    for (k, p) in pairs.iter().enumerate().skip(1) {
        let b = &pairs[best];
        if p.lcm > b.lcm || (p.lcm == b.lcm && p.seq < b.seq) {
            best = k;
        }
    }
    Some(pairs.swap_remove(best))
}

impl StandardBasis {
    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Leading monomials (minimal generators of the leading ideal).
    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    pub fn order(&self) -> LocalOrder {
        self.order
    }

    /// Degree `D` with `m^D` contained in the ideal, when the colength is finite.
    pub fn corner(&self) -> Option<u32> {
        self.corner
    }

    /// Monomials outside the leading ideal, sorted by the local order descending.
    pub fn staircase(&self) -> Option<Vec<Monomial>> {
        staircase_of(&self.leads, self.vars.len())
    }

    /// Weak normal form against this basis, modulo `m^D` when the corner is known.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        let mut steps = StepCounter { used: 0, bound: MoraConfig::default().step_bound };
        let refs: Vec<&Polynomial> = self.gens.iter().collect();
        weak_normal_form(f.clone(), &refs, self.corner, &mut steps)
    }

    /// Whether every S-pair of the basis reduces to zero.
    pub fn is_standard(&self) -> Result<bool> {
        for i in 0..self.gens.len() {
            for j in i + 1..self.gens.len() {
                let s = s_polynomial(&self.gens[i], &self.gens[j], self.corner);
                if !self.reduce(&s)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn colength(sb: &StandardBasis) -> Colength {
    match sb.staircase() {
        Some(st) => Colength::Finite(st.len() as u64),
        None => Colength::Infinite,
    }
}

pub fn ideal_membership(f: &Polynomial, sb: &StandardBasis) -> Result<bool> {
    Ok(sb.reduce(f)?.is_zero())
}

/// Colength of the ideal generated by `gens`.
pub fn colength_of(gens: Vec<Polynomial>) -> Result<Colength> {
    let ideal = IdealBasis::new(gens)?;
    Ok(colength(&standard_basis(&ideal, LocalOrder::NegDegRevLex)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    const ORD: LocalOrder = LocalOrder::NegDegRevLex;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &VariableSet::xy()).unwrap()
    }

    fn sb(gens: &[&str]) -> StandardBasis {
        let ideal = IdealBasis::new(gens.iter().map(|s| p(s)).collect()).unwrap();
        standard_basis(&ideal, ORD).unwrap()
    }

    fn jacobian(f: &Polynomial) -> Vec<Polynomial> {
        vec![f.partial_derivative(0), f.partial_derivative(1)]
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(mora_reduce(&p("y^2"), &[p("y^2 - x^3")], ORD).unwrap(), p("x^3"));
        assert!(mora_reduce(&p("x^2"), &[p("x^2"), p("y")], ORD).unwrap().is_zero());
        assert_eq!(mora_reduce(&p("x + x^2"), &[p("y")], ORD).unwrap(), p("x + x^2"));
    }

    #[test]
    fn standard_basis_examples() {
        let b = sb(&["3*x^2", "4*y^3"]);
        assert_eq!(b.gens().len(), 2);
        assert_eq!(colength(&b), Colength::Finite(6));
        let b = sb(&["y^2 - x^3"]);
        assert_eq!(b.gens().len(), 1);
        assert_eq!(colength(&b), Colength::Infinite);

        let f = p("x^5 + x^2*y^3 + y^4");
        let ideal = IdealBasis::new(jacobian(&f)).unwrap();
        let b = standard_basis(&ideal, ORD).unwrap();
        assert_eq!(colength(&b), Colength::Finite(12));
        assert!(b.is_standard().unwrap());
    }

    #[test]
    fn colength_examples() {
        assert_eq!(colength(&sb(&["x^2", "y^3"])), Colength::Finite(6));
        assert_eq!(colength(&sb(&["x", "y"])), Colength::Finite(1));
        assert_eq!(colength(&sb(&["x^2"])), Colength::Infinite);
        assert_eq!(colength(&sb(&["1 + x", "y"])), Colength::Finite(0));
    }

    #[test]
    fn membership_examples() {
        assert!(ideal_membership(&p("x^3"), &sb(&["x^2", "y"])).unwrap());
        assert!(!ideal_membership(&p("y"), &sb(&["x"])).unwrap());
        let f = p("x^5 + y^5 + x^3*y^3");
        let mut gens = jacobian(&f);
        gens.push(f);
        let b = standard_basis(&IdealBasis::new(gens).unwrap(), ORD).unwrap();
        assert!(ideal_membership(&p("x^3*y^3"), &b).unwrap());
        assert!(!ideal_membership(&p("x^2*y^2"), &b).unwrap());
    }

    #[test]
    fn units_do_not_change_colength() {
        // x^3 + y^2 with generators multiplied by 1 + x + y and permuted.
        let base = sb(&["x^2", "y"]);
        let twisted = sb(&["(1 + x + y)*y", "(1 - y)*x^2 + x*y"]);
        assert_eq!(colength(&base), colength(&twisted));
    }

    #[test]
    fn step_bound_trips() {
        // x^10 -> x^9*y^2 -> ... needs ten steps against x - y^2.
        let cfg = MoraConfig { step_bound: 3 };
        assert_eq!(
            mora_reduce_with(&p("x^10"), &[p("x - y^2")], ORD, &cfg).unwrap_err(),
            Error::StepBound(3)
        );
        let cfg = MoraConfig { step_bound: 10 };
        assert_eq!(mora_reduce_with(&p("x^10"), &[p("x - y^2")], ORD, &cfg).unwrap(), p("y^20"));
    }

    #[test]
    fn space_curve_ideal() {
        let vars = VariableSet::xyz();
        let q = |s: &str| parse_polynomial(s, &vars).unwrap();
        let ideal = IdealBasis::new(vec![q("x^2"), q("y^3"), q("z")]).unwrap();
        let b = standard_basis(&ideal, ORD).unwrap();
        assert_eq!(colength(&b), Colength::Finite(6));
    }

    #[test]
    fn zero_generators_rejected() {
        let z = Polynomial::zero(VariableSet::xy());
        assert!(IdealBasis::new(vec![z]).is_err());
    }
}
