//! Newton polygons and rational Newton–Puiseux expansions of plane curves.
//!
//! Branches are produced by Duval-style substitutions
//! `x = xi^alpha * X^q`, `y = X^m * (xi^beta + Y)` along each polygon edge,
//! where `xi` is a root of the edge polynomial and `beta*q - alpha*m = 1`.
//! Conjugate roots are kept together in one algebra (see [`tower`]), so one
//! [`PuiseuxBranch`] may stand for several complex branches: as many as the
//! dimension of its coefficient algebra over `Q`.

pub mod tower;
mod values;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::localstd::colength_of;
use crate::polyring::Polynomial;

pub use tower::{Elem, Tower};
pub use values::{branch_values, delta_branch, delta_oracle, intersection_multiplicity, pullback};

use tower::{Class, SplitAt, UPoly};

/// Limits for the expansion.
#[derive(Clone, Debug)]
pub struct PuiseuxConfig {
    /// Maximal number of adjoined generators in one coefficient algebra.
    pub max_height: usize,
    /// Maximal dimension of a coefficient algebra over `Q`.
    pub max_degree: usize,
    /// Maximal number of nested substitutions along one branch.
    pub max_depth: u32,
    /// Largest series truncation the adaptive loops may request.
    pub max_precision: usize,
}

impl Default for PuiseuxConfig {
    fn default() -> Self {
        Self { max_height: 6, max_degree: 24, max_depth: 64, max_precision: 1 << 12 }
    }
}

/// One edge of a Newton polygon, from `start` (upper left) to `end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub start: (u32, u32),
    pub end: (u32, u32),
    /// `(m, q)` in lowest terms: along the edge `y` has `x`-order `m/q`.
    pub slope: (u32, u32),
    /// Number of lattice segments on the edge.
    pub length: u32,
}

/// Lower-left boundary of the Newton polygon of `f(x, y)`, steepest edge first.
pub fn newton_polygon(f: &Polynomial) -> Result<Vec<Edge>> {
    if f.nvars() != 2 {
        return Err(Error::DimensionMismatch("Newton polygons need two variables".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("Newton polygon of the zero polynomial"));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::NotAGerm("f(0,0) != 0".into()));
    }
    let pts: Vec<(u32, u32)> = f.terms().map(|(m, _)| (m.exponents()[0], m.exponents()[1])).collect();
    Ok(hull(&pts))
}

fn hull(pts: &[(u32, u32)]) -> Vec<Edge> {
    let imin = pts.iter().map(|p| p.0).min().unwrap_or(0);
    let mut cur = *pts.iter().filter(|p| p.0 == imin).min_by_key(|p| p.1).expect("nonempty");
    let mut edges = Vec::new();
    loop {
        // Steepest descent: minimal run per unit of drop, ties to the lowest point.
        let mut best: Option<(u32, u32)> = None;
        for &p in pts.iter().filter(|p| p.1 < cur.1) {
            let run = p.0 as i64 - cur.0 as i64;
            let drop = (cur.1 - p.1) as i64;
            best = match best {
                None => Some(p),
                Some(b) => {
                    let brun = b.0 as i64 - cur.0 as i64;
                    let bdrop = (cur.1 - b.1) as i64;
                    let lhs = run * bdrop;
                    let rhs = brun * drop;
                    if lhs < rhs || (lhs == rhs && p.1 < b.1) {
                        Some(p)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let Some(next) = best else { return edges };
        let di = next.0 - cur.0;
        let dj = cur.1 - next.1;
        let g = di.gcd(&dj);
        edges.push(Edge { start: cur, end: next, slope: (di / g, dj / g), length: g });
        cur = next;
    }
}

type BiPoly = BTreeMap<(u32, u32), Elem>;

#[derive(Clone, Debug)]
enum Tail {
    /// `Y = 0` exactly.
    Zero,
    /// `Y` is the unique root with `Y(0) = 0` of this equation.
    Hensel(BiPoly),
}

#[derive(Clone, Debug)]
enum Shape {
    /// The line `x = 0`, parametrized as `y = t`.
    Axis,
    /// `x = gamma t^e`, `y = S(t) + cy t^h Y(t)`.
    Param { gamma: Elem, e: u32, s: Vec<(u32, Elem)>, cy: Elem, h: u32, tail: Tail },
}

/// A truncated parametrization of one branch, or of a set of conjugate
/// branches sharing a coefficient algebra.
#[derive(Clone, Debug)]
pub struct PuiseuxBranch {
    tower: Tower,
    shape: Shape,
    /// Coefficients of `y(t)`; exact when `exact` is set, else valid up to `y.len() - 1`.
    y: Vec<Elem>,
    exact: bool,
}

impl PuiseuxBranch {
    /// The exact rational parametrization `x = t^e`, `y = sum c_i t^i`.
    pub fn rational(e: u32, y_terms: &[(u32, Rational)]) -> Self {
        let tower = Tower::rational();
        let top = y_terms.iter().map(|t| t.0 as usize).max().unwrap_or(0);
        let mut y = vec![vec![Rational::zero()]; top + 1];
        for (i, c) in y_terms {
            y[*i as usize][0] += c;
        }
        let s = y_terms.iter().map(|(i, c)| (*i, vec![c.clone()])).collect();
        let one = vec![Rational::one()];
        Self {
            tower,
            shape: Shape::Param { gamma: one.clone(), e, s, cy: one, h: 0, tail: Tail::Zero },
            y,
            exact: true,
        }
    }

    fn axis() -> Self {
        let t = Tower::rational();
        Self { y: vec![t.zero(0), t.one(0)], tower: t, shape: Shape::Axis, exact: true }
    }

    /// The coefficient algebra.
    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// Number of complex branches represented (dimension of the algebra).
    pub fn conjugates(&self) -> usize {
        self.tower.dim()
    }

    /// Exponent `e` in `x = gamma t^e`; the branch `x = 0` reports 1.
    pub fn ramification(&self) -> u32 {
        match &self.shape {
            Shape::Axis => 1,
            Shape::Param { e, .. } => *e,
        }
    }

    /// `gamma` in `x = gamma t^e`, or `None` for the branch `x = 0`.
    pub fn x_coefficient(&self) -> Option<&Elem> {
        match &self.shape {
            Shape::Axis => None,
            Shape::Param { gamma, .. } => Some(gamma),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Highest `t`-power known in `y(t)`, `None` if the series is exact.
    pub fn precision(&self) -> Option<usize> {
        (!self.exact).then(|| self.y.len() - 1)
    }

    /// Coefficient of `t^i` in `y(t)`; requires `i` within precision.
    pub fn y_coefficient(&self, i: usize) -> Elem {
        match self.y.get(i) {
            Some(c) => c.clone(),
            None => {
                assert!(self.exact, "coefficient beyond precision");
                self.tower.zero(self.tower.height())
            }
        }
    }

    /// Order of `y(t)` if visible within the current precision.
    pub fn y_order(&self) -> Option<usize> {
        self.y.iter().position(|c| !Tower::is_zero(c))
    }

    /// Order of `x(t)`, `None` for the branch `x = 0`.
    pub fn x_order(&self) -> Option<usize> {
        match &self.shape {
            Shape::Axis => None,
            Shape::Param { e, .. } => Some(*e as usize),
        }
    }

    /// Extends `y(t)` so that it is known modulo `t^{n+1}`.
    pub fn ensure_precision(&mut self, n: usize) -> Result<()> {
        if self.exact || self.y.len() > n {
            return Ok(());
        }
        let Shape::Param { s, cy, h, tail: Tail::Hensel(f), .. } = &self.shape else {
            unreachable!("inexact branches carry a Hensel tail")
        };
        let k = self.tower.height();
        let h = *h as usize;
        let mut y = vec![self.tower.zero(k); n + 1];
        for (i, c) in s {
            if (*i as usize) <= n {
                y[*i as usize] = Tower::add(&y[*i as usize], c);
            }
        }
        if n + 1 > h {
            let big_y = hensel(&self.tower, f, n + 1 - h)?;
            for (i, c) in big_y.iter().enumerate() {
                if !Tower::is_zero(c) {
                    let v = self.tower.mul(k, cy, c);
                    y[h + i] = Tower::add(&y[h + i], &v);
                }
            }
        }
        self.y = y;
        Ok(())
    }

    /// Copy of the branch over the tower with the modulus at `level`
    /// replaced by `factor`.
    fn project(&self, level: usize, factor: &UPoly) -> Self {
        let old = &self.tower;
        let new = old.with_factor(level, factor);
        let k = old.height();
        let p = |e: &Elem| old.project(&new, level, k, e);
        let shape = match &self.shape {
            Shape::Axis => Shape::Axis,
            Shape::Param { gamma, e, s, cy, h, tail } => Shape::Param {
                gamma: p(gamma),
                e: *e,
                s: s.iter().map(|(i, c)| (*i, p(c))).collect(),
                cy: p(cy),
                h: *h,
                tail: match tail {
                    Tail::Zero => Tail::Zero,
                    Tail::Hensel(f) => Tail::Hensel(f.iter().map(|(key, c)| (*key, p(c))).collect()),
                },
            },
        };
        let y = self.y.iter().map(p).collect();
        Self { tower: new, shape, y, exact: self.exact }
    }

    /// `x = ..., y = ... + O(t^{T+1})` followed by the algebra relations.
    pub fn render(&self) -> String {
        let t = &self.tower;
        let coef = |c: &Elem, mono: &str| -> (bool, String) {
            let s = t.render_elem(c);
            if s.contains(' ') {
                return (false, if mono.is_empty() { format!("({s})") } else { format!("({s})*{mono}") });
            }
            let (neg, abs) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            match (mono.is_empty(), abs.as_str()) {
                (true, _) => (neg, abs),
                (false, "1") => (neg, mono.to_string()),
                _ => (neg, format!("{abs}*{mono}")),
            }
        };
        let tpow = |i: usize| match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        let join = |parts: Vec<(bool, String)>| -> String {
            if parts.is_empty() {
                return "0".into();
            }
            let mut out = String::new();
            for (n, (neg, body)) in parts.into_iter().enumerate() {
                match (n, neg) {
                    (0, true) => out.push('-'),
                    (0, false) => {}
                    (_, true) => out.push_str(" - "),
                    (_, false) => out.push_str(" + "),
                }
                out.push_str(&body);
            }
            out
        };
        let x = match &self.shape {
            Shape::Axis => "0".to_string(),
            Shape::Param { gamma, e, .. } => join(vec![coef(gamma, &tpow(*e as usize))]),
        };
        let mut parts: Vec<(bool, String)> = self
            .y
            .iter()
            .enumerate()
            .filter(|(_, c)| !Tower::is_zero(c))
            .map(|(i, c)| coef(c, &tpow(i)))
            .collect();
        let mut y = if parts.is_empty() && !self.exact { String::new() } else { join(std::mem::take(&mut parts)) };
        if !self.exact {
            let o = format!("O(t^{})", self.y.len());
            y = if y.is_empty() { o } else { format!("{y} + {o}") };
        }
        let mut out = format!("x = {x}, y = {y}");
        for rel in t.render_relations() {
            out.push_str(&format!("\n    where {rel}"));
        }
        out
    }
}

/// All branches of `f = 0` at the origin.
#[derive(Clone, Debug)]
pub struct BranchSet {
    f: Polynomial,
    branches: Vec<PuiseuxBranch>,
    cfg: PuiseuxConfig,
}

impl BranchSet {
    pub fn polynomial(&self) -> &Polynomial {
        &self.f
    }

    pub fn branches(&self) -> &[PuiseuxBranch] {
        &self.branches
    }

    pub fn branches_mut(&mut self) -> &mut [PuiseuxBranch] {
        &mut self.branches
    }

    pub fn config(&self) -> &PuiseuxConfig {
        &self.cfg
    }

    /// Number of complex branches `r`.
    pub fn branch_count(&self) -> usize {
        self.branches.iter().map(PuiseuxBranch::conjugates).sum()
    }
}

#[derive(Clone, Debug)]
struct Transform {
    gamma: Elem,
    e: u32,
    s: Vec<(u32, Elem)>,
    cy: Elem,
    h: u32,
}

#[derive(Clone, Debug)]
struct Node {
    tower: Tower,
    f: BiPoly,
    tr: Transform,
    depth: u32,
}

enum Interrupt {
    Split(SplitAt),
    Fail(Error),
}

impl From<SplitAt> for Interrupt {
    fn from(s: SplitAt) -> Self {
        Interrupt::Split(s)
    }
}

impl From<Error> for Interrupt {
    fn from(e: Error) -> Self {
        Interrupt::Fail(e)
    }
}

impl Node {
    fn map(&self, tower: Tower, p: impl Fn(&Elem) -> Elem) -> Node {
        Node {
            tower,
            f: self.f.iter().map(|(k, c)| (*k, p(c))).collect(),
            tr: Transform {
                gamma: p(&self.tr.gamma),
                e: self.tr.e,
                s: self.tr.s.iter().map(|(i, c)| (*i, p(c))).collect(),
                cy: p(&self.tr.cy),
                h: self.tr.h,
            },
            depth: self.depth,
        }
    }

    fn split(&self, s: &SplitAt) -> [Node; 2] {
        let old = &self.tower;
        let k = old.height();
        [&s.g, &s.h].map(|factor| {
            let new = old.with_factor(s.level, factor);
            let n2 = new.clone();
            self.map(new, |e| old.project(&n2, s.level, k, e))
        })
    }

    fn leaf(&self, f: &BiPoly, tail_eq: Option<BiPoly>) -> PuiseuxBranch {
        let k = self.tower.height();
        let tr = &self.tr;
        let tail = match tail_eq {
            Some(_) => Tail::Hensel(f.clone()),
            None => Tail::Zero,
        };
        let exact = matches!(tail, Tail::Zero);
        let top = tr.s.iter().map(|(i, _)| *i as usize).max().unwrap_or(0);
        let mut y = vec![self.tower.zero(k); top + 1];
        for (i, c) in &tr.s {
            y[*i as usize] = Tower::add(&y[*i as usize], c);
        }
        if !exact {
            // Only the part below `t^h` is known before the tail is solved.
            y.truncate((tr.h as usize).max(1));
            y.resize((tr.h as usize).max(1), self.tower.zero(k));
        }
        PuiseuxBranch {
            tower: self.tower.clone(),
            shape: Shape::Param {
                gamma: tr.gamma.clone(),
                e: tr.e,
                s: tr.s.clone(),
                cy: tr.cy.clone(),
                h: tr.h,
                tail,
            },
            y,
            exact,
        }
    }
}

/// Rational Newton–Puiseux expansion of all branches of `f` at the origin,
/// each known at least modulo `t^{precision+1}`.
pub fn puiseux_branches(f: &Polynomial, precision: usize) -> Result<BranchSet> {
    puiseux_branches_with(f, precision, &PuiseuxConfig::default())
}

pub fn puiseux_branches_with(f: &Polynomial, precision: usize, cfg: &PuiseuxConfig) -> Result<BranchSet> {
    if f.nvars() != 2 {
        return Err(Error::DimensionMismatch("branches are computed for plane curves".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("the zero polynomial defines no curve germ"));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::NotAGerm("f(0,0) != 0".into()));
    }
    let tj = colength_of(vec![f.clone(), f.partial_derivative(0), f.partial_derivative(1)])?;
    if tj.finite().is_none() {
        return Err(Error::NonIsolated);
    }

    let mut branches = Vec::new();
    let mut g = f.clone();
    if g.var_divisibility(0) > 0 {
        branches.push(PuiseuxBranch::axis());
        g = g.divide_by_var_power(0, 1);
    }
    let expected = g.terms().filter(|(m, _)| m.exponents()[0] == 0).map(|(m, _)| m.exponents()[1]).min();

    let base = Tower::rational();
    let root = Node {
        f: g.terms().map(|(m, c)| ((m.exponents()[0], m.exponents()[1]), vec![c.clone()])).collect(),
        tr: Transform { gamma: base.one(0), e: 1, s: Vec::new(), cy: base.one(0), h: 0 },
        tower: base,
        depth: 0,
    };
    let mut stack = vec![root];
    while let Some(node) = stack.pop() {
        match step(&node, cfg) {
            Ok((leaves, children)) => {
                branches.extend(leaves);
                stack.extend(children.into_iter().rev());
            }
            Err(Interrupt::Split(s)) => {
                let [a, b] = node.split(&s);
                stack.push(b);
                stack.push(a);
            }
            Err(Interrupt::Fail(e)) => return Err(e),
        }
    }

    // Each branch over an algebra of dimension D accounts for e*D roots y(x).
    let roots: usize = branches
        .iter()
        .filter(|b| !matches!(b.shape, Shape::Axis))
        .map(|b| b.ramification() as usize * b.conjugates())
        .sum();
    if roots != expected.unwrap_or(0) as usize {
        return Err(Error::Internal(format!(
            "Puiseux root count {roots} differs from ord_y f(0,y) = {}",
            expected.unwrap_or(0)
        )));
    }
    for b in &mut branches {
        b.ensure_precision(precision)?;
    }
    Ok(BranchSet { f: f.clone(), branches, cfg: cfg.clone() })
}

fn step(node: &Node, cfg: &PuiseuxConfig) -> std::result::Result<(Vec<PuiseuxBranch>, Vec<Node>), Interrupt> {
    let t = &node.tower;
    let k = t.height();
    for c in node.f.values() {
        if let Class::Split(s) = t.classify(k, c) {
            return Err(s.into());
        }
    }
    let mut f = node.f.clone();
    let mut leaves = Vec::new();
    let Some(jmin) = f.keys().map(|&(_, j)| j).min() else {
        return Err(Error::Internal("empty transformed equation".into()).into());
    };
    if jmin >= 2 {
        return Err(Error::NonIsolated.into());
    }
    if jmin == 1 {
        leaves.push(node.leaf(&f, None));
        f = f.into_iter().map(|((i, j), c)| ((i, j - 1), c)).collect();
    }
    let Some(r) = f.keys().filter(|&&(i, _)| i == 0).map(|&(_, j)| j).min() else {
        return Err(Error::Internal("transformed equation divisible by X".into()).into());
    };
    if r == 0 {
        return Ok((leaves, Vec::new()));
    }
    if r == 1 {
        leaves.push(node.leaf(&f, Some(f.clone())));
        return Ok((leaves, Vec::new()));
    }
    if node.depth >= cfg.max_depth {
        return Err(Error::Internal(format!("Puiseux expansion deeper than {}", cfg.max_depth)).into());
    }
    let pts: Vec<(u32, u32)> = f.keys().copied().filter(|&(_, j)| j <= r).collect();
    let mut children = Vec::new();
    for edge in hull(&pts) {
        let (m, q) = edge.slope;
        let phi: UPoly = (0..=edge.length)
            .map(|kk| {
                let key = (edge.end.0 - m * kk, edge.end.1 + q * kk);
                f.get(&key).cloned().unwrap_or_else(|| t.zero(k))
            })
            .collect();
        for (tw, xi) in edge_roots(t, phi, cfg)? {
            children.push(substitute(node, &f, &tw, &edge, &xi));
        }
    }
    Ok((leaves, children))
}

/// Roots of the edge polynomial: rational roots first, then one generator
/// standing for all remaining roots.
fn edge_roots(
    t: &Tower,
    phi: UPoly,
    cfg: &PuiseuxConfig,
) -> std::result::Result<Vec<(Tower, Elem)>, Interrupt> {
    let k = t.height();
    let (phi, inv) = t.ptrim(k, phi)?;
    let phi: UPoly = phi.iter().map(|c| t.mul(k, c, &inv)).collect();
    let mut out = Vec::new();
    let rest: UPoly = if phi.iter().all(|c| Tower::is_rational(c)) {
        let mut qs: Vec<Rational> = phi.iter().map(|c| c[0].clone()).collect();
        for root in rational_roots(&qs) {
            out.push((t.clone(), t.from_rational(k, root.clone())));
            while qs.len() > 1 && eval_q(&qs, &root).is_zero() {
                qs = deflate(&qs, &root);
            }
        }
        let q0 = Tower::rational();
        let qpoly: UPoly = qs.iter().map(|c| vec![c.clone()]).collect();
        let sq = q0.squarefree_part(0, &qpoly).expect("no splitting over Q");
        sq.iter().map(|c| t.from_rational(k, c[0].clone())).collect()
    } else {
        t.squarefree_part(k, &phi)?
    };
    match rest.len() {
        0 | 1 => {}
        2 => out.push((t.clone(), Tower::neg(&rest[0]))),
        d => {
            let d = d - 1;
            if t.height() + 1 > cfg.max_height || t.dim() * d > cfg.max_degree {
                return Err(Error::TowerLimit(format!(
                    "adjoining a root of degree {d} exceeds height {} or degree {}",
                    cfg.max_height, cfg.max_degree
                ))
                .into());
            }
            let tw = t.adjoin(rest);
            let xi = tw.generator();
            out.push((tw, xi));
        }
    }
    Ok(out)
}

fn eval_q(c: &[Rational], z: &Rational) -> Rational {
    c.iter().rev().fold(Rational::zero(), |acc, x| acc * z + x)
}

fn deflate(c: &[Rational], z: &Rational) -> Vec<Rational> {
    let n = c.len() - 1;
    let mut out = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (0..n).rev() {
        carry = &c[i + 1] + carry * z;
        out[i] = carry.clone();
    }
    out
}

/// Distinct rational roots, ascending; empty if the coefficients are too
/// large to enumerate divisors.
fn rational_roots(c: &[Rational]) -> Vec<Rational> {
    let mut den = BigInt::one();
    for x in c {
        den = den.lcm(x.denom());
    }
    let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let lo = ints.iter().position(|x| !x.is_zero()).unwrap_or(0);
    let mut roots = Vec::new();
    if lo > 0 {
        roots.push(Rational::zero());
    }
    let (Some(a0), Some(an)) = (ints[lo].abs().to_u64(), ints.last().and_then(|x| x.abs().to_u64())) else {
        return roots;
    };
    const LIMIT: u64 = 1 << 40;
    if a0 > LIMIT || an > LIMIT {
        return roots;
    }
    for p in divisors(a0) {
        for q in divisors(an) {
            if p.gcd(&q) != 1 {
                continue;
            }
            for sign in [-1i64, 1] {
                let z = Rational::new(BigInt::from(p) * sign, BigInt::from(q));
                if eval_q(c, &z).is_zero() {
                    roots.push(z);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Applies `x = xi^alpha X^q`, `y = X^m (xi^beta + Y)` and divides by `X^L`.
fn substitute(node: &Node, f: &BiPoly, tw: &Tower, edge: &Edge, xi: &Elem) -> Node {
    let k = tw.height();
    let lift = |e: &Elem| tw.lift(k, e);
    let (m, q) = edge.slope;
    let alpha = if q == 1 { 0 } else { (q - mod_inverse(m % q, q)) % q };
    let beta = (1 + alpha * m) / q;
    let l = q * edge.start.0 + m * edge.start.1;

    let mut powers: Vec<Elem> = vec![tw.one(k)];
    let mut xi_pow = |n: u32| -> Elem {
        while powers.len() <= n as usize {
            let next = tw.mul(k, powers.last().expect("nonempty"), xi);
            powers.push(next);
        }
        powers[n as usize].clone()
    };

    let mut f1: BiPoly = BTreeMap::new();
    for (&(i, j), c) in f {
        let c = lift(c);
        let base = tw.mul(k, &c, &xi_pow(alpha * i));
        let ex = q * i + m * j - l;
        for kk in 0..=j {
            let coef = Tower::scale(&tw.mul(k, &base, &xi_pow(beta * (j - kk))), &binomial(j, kk));
            let slot = f1.entry((ex, kk)).or_insert_with(|| tw.zero(k));
            *slot = Tower::add(slot, &coef);
        }
    }
    f1.retain(|_, c| !Tower::is_zero(c));

    let tr = &node.tr;
    let mut s: Vec<(u32, Elem)> =
        tr.s.iter().map(|(i, c)| (q * i, tw.mul(k, &lift(c), &xi_pow(alpha * i)))).collect();
    let cy = lift(&tr.cy);
    s.push((q * tr.h + m, tw.mul(k, &cy, &xi_pow(alpha * tr.h + beta))));
    Node {
        tower: tw.clone(),
        f: f1,
        tr: Transform {
            gamma: tw.mul(k, &lift(&tr.gamma), &xi_pow(alpha * tr.e)),
            e: q * tr.e,
            s,
            cy: tw.mul(k, &cy, &xi_pow(alpha * tr.h)),
            h: q * tr.h + m,
        },
        depth: node.depth + 1,
    }
}

fn mod_inverse(a: u32, n: u32) -> u32 {
    (1..n).find(|x| (a as u64 * *x as u64) % n as u64 == 1).expect("coprime")
}

/// Truncated series helpers over the top level of a tower.
pub(crate) fn series_mul(t: &Tower, a: &[Elem], b: &[Elem], n: usize) -> Vec<Elem> {
    let k = t.height();
    let mut out = vec![t.zero(k); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if Tower::is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !Tower::is_zero(y) {
                let p = t.mul(k, x, y);
                out[i + j] = Tower::add(&out[i + j], &p);
            }
        }
    }
    out
}

fn series_inv(t: &Tower, a: &[Elem], n: usize) -> Result<Vec<Elem>> {
    let k = t.height();
    let Class::Unit(inv0) = t.classify(k, &a[0]) else {
        return Err(Error::Internal("series inverse of a non-unit".into()));
    };
    let mut w = vec![t.zero(k); n];
    if n == 0 {
        return Ok(w);
    }
    w[0] = inv0.clone();
    for i in 1..n {
        let mut acc = t.zero(k);
        for j in 1..=i.min(a.len() - 1) {
            if !Tower::is_zero(&a[j]) && !Tower::is_zero(&w[i - j]) {
                acc = Tower::add(&acc, &t.mul(k, &a[j], &w[i - j]));
            }
        }
        w[i] = Tower::neg(&t.mul(k, &acc, &inv0));
    }
    Ok(w)
}

/// `f(X, Y(X)) mod X^n` with `f` grouped by powers of `Y`.
fn eval_bipoly(t: &Tower, f: &BiPoly, y: &[Elem], n: usize) -> Vec<Elem> {
    let k = t.height();
    let jmax = f.keys().map(|&(_, j)| j).max().unwrap_or(0) as usize;
    let mut cols = vec![vec![t.zero(k); n]; jmax + 1];
    for (&(i, j), c) in f {
        if (i as usize) < n {
            cols[j as usize][i as usize] = c.clone();
        }
    }
    let mut acc = cols[jmax].clone();
    for j in (0..jmax).rev() {
        acc = series_mul(t, &acc, y, n);
        for (a, c) in acc.iter_mut().zip(&cols[j]) {
            *a = Tower::add(a, c);
        }
    }
    acc
}

/// Root `Y(X)` with `Y(0) = 0` of `f(X, Y) = 0`, where `df/dY(0,0)` is a
/// unit, modulo `X^n`, by Newton iteration.
fn hensel(t: &Tower, f: &BiPoly, n: usize) -> Result<Vec<Elem>> {
    let k = t.height();
    let fy: BiPoly = f
        .iter()
        .filter(|(&(_, j), _)| j > 0)
        .map(|(&(i, j), c)| ((i, j - 1), Tower::scale(c, &Rational::from_integer(j.into()))))
        .collect();
    let mut y = vec![t.zero(k); 1];
    let mut cur = 1;
    while cur < n {
        cur = (2 * cur).min(n);
        y.resize(cur, t.zero(k));
        let fv = eval_bipoly(t, f, &y, cur);
        let gv = eval_bipoly(t, &fy, &y, cur);
        let corr = series_mul(t, &fv, &series_inv(t, &gv, cur)?, cur);
        for (a, c) in y.iter_mut().zip(&corr) {
            *a = Tower::sub(a, c);
        }
    }
    y.truncate(n);
    Ok(y)
}

#[cfg(test)]
mod tests;
