//! Value sets, delta invariants and intersection numbers from branch data.

use num_traits::Zero;

use super::tower::{Class, Tower};
use super::{series_mul, BranchSet, Elem, PuiseuxBranch, Shape};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::linalg::RowSpace;
use crate::polyring::Polynomial;

/// Pulled-back monomials `x^a y^b` on one branch, modulo `t^{n+1}`.
struct Pullbacks<'a> {
    b: &'a PuiseuxBranch,
    n: usize,
    y: Vec<Elem>,
    ypow: Vec<Vec<Elem>>,
}

impl<'a> Pullbacks<'a> {
    fn new(b: &'a PuiseuxBranch, n: usize) -> Self {
        let k = b.tower.height();
        let y: Vec<Elem> = (0..=n).map(|i| b.y.get(i).cloned().unwrap_or_else(|| b.tower.zero(k))).collect();
        let mut one = vec![b.tower.zero(k); n + 1];
        one[0] = b.tower.one(k);
        Self { b, n, y, ypow: vec![one] }
    }

    fn mono(&mut self, a: u32, e: u32) -> Vec<Elem> {
        let t = &self.b.tower;
        let k = t.height();
        while self.ypow.len() <= e as usize {
            let next = series_mul(t, self.ypow.last().expect("nonempty"), &self.y, self.n + 1);
            self.ypow.push(next);
        }
        let yb = &self.ypow[e as usize];
        if a == 0 {
            return yb.clone();
        }
        let mut out = vec![t.zero(k); self.n + 1];
        let Shape::Param { gamma, e: ex, .. } = &self.b.shape else {
            return out;
        };
        let shift = (a * ex) as usize;
        if shift > self.n {
            return out;
        }
        let ga = t.pow(k, gamma, a);
        for i in 0..=self.n - shift {
            if !Tower::is_zero(&yb[i]) {
                out[i + shift] = t.mul(k, &ga, &yb[i]);
            }
        }
        out
    }
}

/// `h(x(t), y(t))` modulo `t^{n+1}`, extending the branch as needed.
pub fn pullback(b: &mut PuiseuxBranch, h: &Polynomial, n: usize) -> Result<Vec<Elem>> {
    b.ensure_precision(n)?;
    let t = b.tower.clone();
    let k = t.height();
    let mut pb = Pullbacks::new(b, n);
    let mut out = vec![t.zero(k); n + 1];
    for (m, c) in h.terms() {
        let e = m.exponents();
        let s = pb.mono(e[0], e[1]);
        for (o, v) in out.iter_mut().zip(&s) {
            if !Tower::is_zero(v) {
                *o = Tower::add(o, &Tower::scale(v, c));
            }
        }
    }
    Ok(out)
}

fn order_of(o: Option<usize>, n: usize) -> Option<usize> {
    o.filter(|&v| v <= n)
}

/// Monomials `x^a y^b` whose pullback is nonzero modulo `t^{n+1}` on at
/// least one of the branches with the given `(x order, y order)` pairs.
fn monomials(orders: &[(Option<usize>, Option<usize>)], n: usize) -> Vec<(u32, u32)> {
    let amax = orders.iter().filter_map(|o| o.0).map(|ox| n / ox.max(1)).max().unwrap_or(0);
    let bmax = orders.iter().filter_map(|o| o.1).map(|oy| n / oy.max(1)).max().unwrap_or(0);
    let mut out = Vec::new();
    for a in 0..=amax {
        for b in 0..=bmax {
            let hit = orders.iter().any(|&(ox, oy)| {
                let pa = if a == 0 { Some(0) } else { ox.map(|v| v * a) };
                let pb = if b == 0 { Some(0) } else { oy.map(|v| v * b) };
                matches!((pa, pb), (Some(u), Some(v)) if u + v <= n)
            });
            if hit {
                out.push((a as u32, b as u32));
            }
        }
    }
    out
}

fn require_rational(b: &PuiseuxBranch) -> Result<()> {
    if b.conjugates() != 1 {
        return Err(Error::DimensionMismatch(format!(
            "value sets need a branch over Q; this one stands for {} conjugate branches",
            b.conjugates()
        )));
    }
    Ok(())
}

/// Orders `ord_t h(x(t), y(t)) <= bound` realized by polynomials `h`, for a
/// branch defined over `Q`.
pub fn branch_values(b: &mut PuiseuxBranch, bound: usize) -> Result<Vec<usize>> {
    require_rational(b)?;
    b.ensure_precision(bound)?;
    let orders = [(b.x_order(), order_of(b.y_order(), bound))];
    let mut pb = Pullbacks::new(b, bound);
    let mut space = RowSpace::new(bound + 1);
    for (a, e) in monomials(&orders, bound) {
        let row: Vec<Rational> = pb.mono(a, e).into_iter().map(|v| v[0].clone()).collect();
        space.insert(row);
    }
    Ok(space.pivots().collect())
}

/// Number of gaps of the value semigroup of a branch over `Q`.
pub fn delta_branch(b: &mut PuiseuxBranch) -> Result<u64> {
    require_rational(b)?;
    if matches!(b.shape, Shape::Axis) {
        return Ok(0);
    }
    let e = b.ramification() as usize;
    let cap = super::PuiseuxConfig::default().max_precision;
    let mut bound = (2 * e).max(8);
    while bound <= cap {
        let vals = branch_values(b, bound)?;
        let mut present = vec![false; bound + 1];
        for &v in &vals {
            present[v] = true;
        }
        // `e` consecutive values force every larger value (add multiples of e).
        let mut run = 0;
        for (k, &p) in present.iter().enumerate() {
            run = if p { run + 1 } else { 0 };
            if run == e {
                let start = k + 1 - e;
                let gaps = present[..start].iter().filter(|&&p| !p).count();
                return Ok(gaps as u64);
            }
        }
        bound *= 2;
    }
    Err(Error::InsufficientPrecision(format!("value set not stable below t^{cap}")))
}

/// `ord_t g(x(t), y(t))` summed over the conjugate branches represented by `b`.
pub fn intersection_multiplicity(b: &PuiseuxBranch, g: &Polynomial) -> Result<u64> {
    let cap = super::PuiseuxConfig::default().max_precision;
    let mut b = b.clone();
    let exact_bound = if b.exact {
        let dy = b.y.len().saturating_sub(1);
        let dg = g.total_degree().unwrap_or(0) as usize;
        Some(dg * dy.max(b.ramification() as usize) + 1)
    } else {
        None
    };
    let mut n = 16;
    loop {
        let s = pullback(&mut b, g, n)?;
        if let Some(k) = s.iter().position(|c| !Tower::is_zero(c)) {
            let top = b.tower.height();
            return match b.tower.classify(top, &s[k]) {
                Class::Unit(_) => Ok((k * b.conjugates()) as u64),
                Class::Split(sp) => Ok(intersection_multiplicity(&b.project(sp.level, &sp.g), g)?
                    + intersection_multiplicity(&b.project(sp.level, &sp.h), g)?),
                Class::Zero => unreachable!("nonzero coordinates"),
            };
        }
        if exact_bound.is_some_and(|eb| n >= eb) {
            return Err(Error::InsufficientPrecision(
                "the polynomial vanishes identically on the branch (common component)".into(),
            ));
        }
        n *= 2;
        if n > cap {
            return Err(Error::InsufficientPrecision(format!(
                "composition vanishes up to t^{cap}; insufficient precision or common component"
            )));
        }
    }
}

/// `delta = dim_Q (O-bar / O)` by elimination: the span of all pulled-back
/// monomials inside the direct sum of the branch series rings, truncated at
/// `t^{N+1}`, with `N` doubled until the truncation provably contains the
/// conductor.
///
/// Containment test: with `z = x` (or `x + y^K` when `x = 0` is a branch) of
/// order `w_i` on branch `i`, if the span holds every element supported in
/// degrees `N+1-w_i ..= N` of a single branch, then multiplying by powers of
/// `z` shows that all series of order `> N - w_i` lie in the local ring.
pub fn delta_oracle(bs: &mut BranchSet) -> Result<u64> {
    let cap = bs.cfg.max_precision;
    let kmax = bs.branches.iter().map(|b| b.x_order().unwrap_or(0)).max().unwrap_or(0) + 1;
    let windows: Vec<usize> = bs.branches.iter().map(|b| b.x_order().unwrap_or(kmax)).collect();
    let mut n = 8;
    while n <= cap {
        for b in bs.branches.iter_mut() {
            b.ensure_precision(n)?;
        }
        let dims: Vec<usize> = bs.branches.iter().map(PuiseuxBranch::conjugates).collect();
        let mut offsets = Vec::with_capacity(dims.len());
        let mut total = 0;
        for d in &dims {
            offsets.push(total);
            total += d * (n + 1);
        }
        let orders: Vec<_> =
            bs.branches.iter().map(|b| (b.x_order(), order_of(b.y_order(), n))).collect();
        let mut pbs: Vec<Pullbacks> = bs.branches.iter().map(|b| Pullbacks::new(b, n)).collect();
        let mut space = RowSpace::new(total);
        for (a, e) in monomials(&orders, n) {
            let mut row = vec![Rational::zero(); total];
            for (i, pb) in pbs.iter_mut().enumerate() {
                for (lvl, v) in pb.mono(a, e).iter().enumerate() {
                    for (c, x) in v.iter().enumerate() {
                        row[offsets[i] + lvl * dims[i] + c] = x.clone();
                    }
                }
            }
            space.insert(row);
        }
        let saturated = (0..dims.len()).all(|i| {
            let w = windows[i];
            w <= n + 1
                && (n + 1 - w..=n).all(|lvl| {
                    (0..dims[i]).all(|c| {
                        let mut unit = vec![Rational::zero(); total];
                        unit[offsets[i] + lvl * dims[i] + c] = Rational::from_integer(1.into());
                        space.contains(&unit)
                    })
                })
        });
        if saturated {
            return Ok((total - space.rank()) as u64);
        }
        n *= 2;
    }
    Err(Error::InsufficientPrecision(format!("conductor not reached below t^{cap}")))
}
