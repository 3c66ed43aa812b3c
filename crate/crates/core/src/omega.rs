//! Pulled-back 1-forms on an irreducible branch.
//!
//! For a branch `t -> (x(t), y(t))` the image of the holomorphic forms is the
//! module `O x'(t) dt + O y'(t) dt` inside `Q[[t]] dt`; its codimension is
//! computed on truncations `mod t^{N+1}` with the same saturation test as the
//! delta computation: once every `t^k dt` with `N+1-e <= k <= N` is in the
//! span (`e = ord x`), multiplication by `x` fills in all higher orders.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::linalg::RowSpace;
use crate::polyring::{Monomial, Polynomial};
use crate::puiseux::{self, delta_branch, puiseux_branches, PuiseuxBranch};

/// A power series over `Q` known modulo `t^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn new(mut coeffs: Vec<Rational>, n: usize) -> Self {
        coeffs.resize(n + 1, Rational::zero());
        Self { coeffs }
    }

    pub fn monomial(c: Rational, k: usize, n: usize) -> Self {
        let mut s = Self::new(Vec::new(), n);
        if k <= n {
            s.coeffs[k] = c;
        }
        s
    }

    /// Truncation order `N`.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Least index with a nonzero coefficient, `None` if zero to this precision.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, n: usize) -> Self {
        assert!(n <= self.truncation(), "cannot raise precision");
        Self { coeffs: self.coeffs[..=n].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.truncation().min(other.truncation());
        Self { coeffs: (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.truncation().min(other.truncation());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self { coeffs: out }
    }

    /// `d/dt`; the result is known one order less.
    pub fn derivative(&self) -> Self {
        let n = self.truncation();
        let coeffs = (1..=n).map(|i| &self.coeffs[i] * Rational::from_integer(i.into())).collect();
        Self::new(coeffs, n.saturating_sub(1))
    }

    /// `self / other` where `ord(other) = k` is visible; precision drops by `k`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let k = other.order().ok_or_else(|| Error::InsufficientPrecision("division by zero series".into()))?;
        if self.order().is_some_and(|o| o < k) {
            return Err(Error::Internal("quotient is not a power series".into()));
        }
        let n = self.truncation().min(other.truncation()) - k;
        let a: Vec<Rational> = self.coeffs[k..=k + n].to_vec();
        let b: Vec<Rational> = other.coeffs[k..=k + n].to_vec();
        let inv0 = b[0].recip();
        let mut q = vec![Rational::zero(); n + 1];
        for i in 0..=n {
            let mut acc = a[i].clone();
            for j in 1..=i {
                if !b[j].is_zero() {
                    acc -= &b[j] * &q[i - j];
                }
            }
            q[i] = acc * &inv0;
        }
        Ok(Self { coeffs: q })
    }
}

fn require_rational(b: &PuiseuxBranch) -> Result<()> {
    if b.conjugates() != 1 {
        return Err(Error::NotIrreducible(format!(
            "branch stands for {} conjugate branches",
            b.conjugates()
        )));
    }
    Ok(())
}

/// `h(x(t), y(t)) mod t^{n+1}` on a branch over `Q`.
pub fn pullback(b: &mut PuiseuxBranch, h: &Polynomial, n: usize) -> Result<TruncatedSeries> {
    require_rational(b)?;
    let s = puiseux::pullback(b, h, n)?;
    Ok(TruncatedSeries::new(s.into_iter().map(|c| c[0].clone()).collect(), n))
}

/// `x(t)` and `y(t)` modulo `t^{n+1}`.
fn coordinates(b: &mut PuiseuxBranch, n: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let vars = crate::polyring::VariableSet::xy();
    let x = pullback(b, &Polynomial::var(vars.clone(), 0), n)?;
    let y = pullback(b, &Polynomial::var(vars, 1), n)?;
    Ok((x, y))
}

/// Monomials whose pullback has order at most `n`.
fn low_monomials(x: &TruncatedSeries, y: &TruncatedSeries, n: usize) -> Vec<Monomial> {
    let ox = x.order().filter(|&o| o <= n);
    let oy = y.order().filter(|&o| o <= n);
    let amax = ox.map_or(0, |o| n / o.max(1));
    let bmax = oy.map_or(0, |o| n / o.max(1));
    let mut out = Vec::new();
    for a in 0..=amax {
        for e in 0..=bmax {
            let pa = if a == 0 { Some(0) } else { ox.map(|o| o * a) };
            let pb = if e == 0 { Some(0) } else { oy.map(|o| o * e) };
            if matches!((pa, pb), (Some(u), Some(v)) if u + v <= n) {
                out.push(Monomial::from_exponents(&[a as u32, e as u32]));
            }
        }
    }
    out
}

/// Pullbacks of the given monomials, using cached powers of `x` and `y`.
fn monomial_series(x: &TruncatedSeries, y: &TruncatedSeries, monos: &[Monomial]) -> Vec<TruncatedSeries> {
    let n = x.truncation().min(y.truncation());
    let one = TruncatedSeries::monomial(Rational::from_integer(1.into()), 0, n);
    let amax = monos.iter().map(|m| m.exponents()[0]).max().unwrap_or(0) as usize;
    let bmax = monos.iter().map(|m| m.exponents()[1]).max().unwrap_or(0) as usize;
    let mut xp = vec![one.clone()];
    for _ in 0..amax {
        xp.push(xp.last().expect("nonempty").mul(x));
    }
    let mut yp = vec![one];
    for _ in 0..bmax {
        yp.push(yp.last().expect("nonempty").mul(y));
    }
    monos
        .iter()
        .map(|m| xp[m.exponents()[0] as usize].mul(&yp[m.exponents()[1] as usize]))
        .collect()
}

/// A subspace of `Q[t]/t^{N+1}` (forms `u(t) dt`, or functions), row reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpan {
    space: RowSpace,
}

impl FormSpan {
    fn new(n: usize) -> Self {
        Self { space: RowSpace::new(n + 1) }
    }

    fn insert(&mut self, s: &TruncatedSeries) {
        let n = self.truncation();
        self.space.insert(s.coeffs()[..=n].to_vec());
    }

    pub fn truncation(&self) -> usize {
        self.space.ncols() - 1
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    /// Orders of elements of the span (the pivot columns).
    pub fn orders(&self) -> Vec<usize> {
        self.space.pivots().collect()
    }

    /// Orders `0..=N` not attained.
    pub fn gaps(&self) -> Vec<usize> {
        self.space.non_pivots()
    }

    pub fn codim(&self) -> usize {
        self.space.ncols() - self.space.rank()
    }

    /// Whether `t^k` lies in the span for every `k` in `from..=N`.
    pub fn contains_tail(&self, from: usize) -> bool {
        let n = self.truncation();
        (from..=n).all(|k| {
            let mut unit = vec![Rational::zero(); n + 1];
            unit[k] = Rational::from_integer(1.into());
            self.space.contains(&unit)
        })
    }

    /// Reduced basis rows.
    pub fn basis(&self) -> Vec<TruncatedSeries> {
        let n = self.truncation();
        self.space.rows().map(|r| TruncatedSeries::new(r.clone(), n)).collect()
    }
}

/// Span of `h x'(t)` and `h y'(t)` over all monomials `h`, modulo `t^{N+1}`.
pub fn omega_span(b: &mut PuiseuxBranch, n: usize) -> Result<FormSpan> {
    let (x, y) = coordinates(b, n + 1)?;
    let (dx, dy) = (x.derivative(), y.derivative());
    let (x, y) = (x.truncate(n), y.truncate(n));
    let monos = low_monomials(&x, &y, n);
    let mut span = FormSpan::new(n);
    for h in monomial_series(&x, &y, &monos) {
        span.insert(&h.mul(&dx));
        span.insert(&h.mul(&dy));
    }
    Ok(span)
}

/// Order of the saturating element: `x`, or `y` on the branch `x = 0`.
fn window(b: &PuiseuxBranch) -> usize {
    b.x_order().unwrap_or(1)
}

/// Smallest doubling of `start` at which the form span is saturated.
fn saturated_omega(b: &mut PuiseuxBranch, start: usize) -> Result<FormSpan> {
    let cap = puiseux::PuiseuxConfig::default().max_precision;
    let w = window(b);
    let mut n = start.max(w);
    while n <= cap {
        let span = omega_span(b, n)?;
        if span.contains_tail(n + 1 - w) {
            return Ok(span);
        }
        n *= 2;
    }
    Err(Error::InsufficientPrecision(format!("form span not saturated below t^{cap}")))
}

/// `dim (Omega-bar / Omega)` for a branch over `Q`.
pub fn omega_codim(b: &mut PuiseuxBranch) -> Result<u64> {
    require_rational(b)?;
    Ok(saturated_omega(b, 8)?.codim() as u64)
}

/// Orders `k` such that no pulled-back form has order `k`.
pub fn omega_gaps(b: &mut PuiseuxBranch) -> Result<Vec<usize>> {
    require_rational(b)?;
    Ok(saturated_omega(b, 8)?.gaps())
}

/// Outcome of the Jacobian-ideal comparison for an irreducible germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianSpanReport {
    /// Both spans agree and `ord g = 2 delta`.
    pub holds: bool,
    /// Order of `g = f_y(x(t),y(t)) / x'(t)`.
    pub conductor_order: usize,
    /// Gap count of the branch semigroup.
    pub delta: u64,
    /// `dim Omega-bar / Omega`.
    pub omega_codim: u64,
    /// Codimension of the pulled-back Jacobian ideal in `Q[[t]]`.
    pub jacobian_codim: u64,
    /// Truncation used for the Jacobian side.
    pub truncation: usize,
}

/// Compares the pulled-back Jacobian ideal with `g` times the pulled-back
/// forms divided by `dt`, where `g = f_y / x' = -f_x / y'` along the branch.
pub fn pol_identity_check(f: &Polynomial, b: &mut PuiseuxBranch) -> Result<JacobianSpanReport> {
    require_rational(b)?;
    let r = puiseux_branches(f, 0)?.branch_count();
    if r != 1 {
        return Err(Error::NotIrreducible(format!("the germ has {r} branches")));
    }
    let delta = delta_branch(b)?;
    let w = window(b);
    let omega = saturated_omega(b, 2 * delta as usize + w)?;
    let m = omega.truncation();
    let fx = f.partial_derivative(0);
    let fy = f.partial_derivative(1);

    // g to enough precision: numerator and denominator lose ord(x') orders.
    let probe = m + 4 * delta as usize + 2 * w + 2;
    let (x, y) = coordinates(b, probe + 1)?;
    let (dx, dy) = (x.derivative(), y.derivative());
    let g = if dx.order().is_some() {
        pullback(b, &fy, probe)?.div(&dx)?
    } else {
        let num = pullback(b, &fx, probe)?;
        TruncatedSeries::new(num.coeffs().iter().map(|c| -c).collect(), probe).div(&dy)?
    };
    let c = g.order().ok_or_else(|| Error::InsufficientPrecision("conductor generator vanishes".into()))?;
    let n = m + c;
    if g.truncation() < n {
        return Err(Error::InsufficientPrecision("conductor generator too short".into()));
    }

    // Left side: pulled-back Jacobian ideal modulo t^{n+1}.
    let (xn, yn) = (x.truncate(n), y.truncate(n));
    let monos = low_monomials(&xn, &yn, n);
    let pfx = pullback(b, &fx, n)?;
    let pfy = pullback(b, &fy, n)?;
    let mut jac = FormSpan::new(n);
    for h in monomial_series(&xn, &yn, &monos) {
        jac.insert(&h.mul(&pfx));
        jac.insert(&h.mul(&pfy));
    }

    // Right side: g times the saturated form span.
    let gn = g.truncate(n);
    let mut rhs = FormSpan::new(n);
    for v in omega.basis() {
        let mut lifted = v.coeffs().to_vec();
        lifted.resize(n + 1, Rational::zero());
        rhs.insert(&gn.mul(&TruncatedSeries::new(lifted, n)));
    }
    // Every t^k with k > m lies in the forms, hence g t^k lies on the right.
    for k in m + 1..=n {
        rhs.insert(&gn.mul(&TruncatedSeries::monomial(Rational::from_integer(1.into()), k, n)));
    }

    let saturated = jac.contains_tail(n + 1 - w);
    let holds = saturated && jac == rhs && c as u64 == 2 * delta;
    Ok(JacobianSpanReport {
        holds,
        conductor_order: c,
        delta,
        omega_codim: omega.codim() as u64,
        jacobian_codim: jac.codim() as u64,
        truncation: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, VariableSet};

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &VariableSet::xy()).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn branch(e: u32, y: &[(u32, i64)]) -> PuiseuxBranch {
        PuiseuxBranch::rational(e, &y.iter().map(|&(i, c)| (i, q(c))).collect::<Vec<_>>())
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&c| q(c)).collect()
    }

    #[test]
    fn pullback_examples() {
        let mut b = branch(2, &[(3, 1)]);
        assert!(pullback(&mut b, &p("y^2 - x^3"), 10).unwrap().is_zero());
        assert_eq!(pullback(&mut b, &p("x"), 5).unwrap().coeffs(), ints(&[0, 0, 1, 0, 0, 0]).as_slice());
        let mut b = branch(4, &[(6, 1), (7, 1)]);
        let s = pullback(&mut b, &p("y^2 - x^3"), 20).unwrap();
        let mut expect = vec![0; 21];
        expect[13] = 2;
        expect[14] = 1;
        assert_eq!(s.coeffs(), ints(&expect).as_slice());
    }

    #[test]
    fn series_arithmetic() {
        let a = TruncatedSeries::new(ints(&[0, 2, 3]), 4);
        let b = TruncatedSeries::new(ints(&[0, 1, 1]), 4);
        let quotient = a.div(&b).unwrap();
        assert_eq!(quotient.mul(&b.truncate(3)).coeffs(), &a.coeffs()[..4]);
        assert_eq!(a.derivative().coeffs(), ints(&[2, 6, 0, 0]).as_slice());
        assert_eq!(a.order(), Some(1));
    }

    #[test]
    fn span_examples() {
        let s = omega_span(&mut branch(2, &[(3, 1)]), 6).unwrap();
        assert_eq!(s.orders(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(s.codim(), 1);
        let s = omega_span(&mut branch(1, &[(1, 1)]), 4).unwrap();
        assert_eq!(s.orders(), vec![0, 1, 2, 3, 4]);
        let s = omega_span(&mut branch(3, &[(4, 1)]), 12).unwrap();
        assert_eq!(s.gaps(), vec![0, 1, 4]);
    }

    #[test]
    fn codim_examples() {
        assert_eq!(omega_codim(&mut branch(2, &[(3, 1)])).unwrap(), 1);
        assert_eq!(omega_codim(&mut branch(1, &[(7, 1)])).unwrap(), 0);
        assert_eq!(omega_codim(&mut branch(3, &[(4, 1)])).unwrap(), 3);
        assert_eq!(omega_gaps(&mut branch(3, &[(4, 1)])).unwrap(), vec![0, 1, 4]);
        let codims: Vec<u64> = [8, 16, 32, 64]
            .iter()
            .map(|&n| omega_span(&mut branch(3, &[(4, 1)]), n).unwrap().codim() as u64)
            .collect();
        assert_eq!(codims, vec![3, 3, 3, 3]);
    }

    #[test]
    fn pol_examples() {
        for (f, tau, delta) in [("y^2 - x^3", 2, 1), ("y^3 - x^4", 6, 3), ("x^5 + x^2*y^3 + y^4", 12, 6)] {
            let f = p(f);
            let mut bs = puiseux_branches(&f, 8).unwrap();
            let b = &mut bs.branches_mut()[0];
            let rep = pol_identity_check(&f, b).unwrap();
            assert!(rep.holds, "{f}: {rep:?}");
            assert_eq!(rep.conductor_order as u64, 2 * delta);
            assert_eq!(rep.jacobian_codim, tau + delta);
        }
        let f = p("y^2 - x^2");
        let mut bs = puiseux_branches(&f, 8).unwrap();
        assert!(matches!(
            pol_identity_check(&f, &mut bs.branches_mut()[0]),
            Err(Error::NotIrreducible(_))
        ));
    }
}
