//! Towers of algebras `Q[a1,...,ak] / (p1(a1), p2(a1,a2), ...)` with each
//! `pi` monic and squarefree over the previous level.
//!
//! Moduli need not be irreducible. The algebra is then a product of number
//! fields, and a computation that meets a zero divisor reports a splitting of
//! one modulus instead of a result. The caller redoes the work on both
//! factors. This avoids factoring polynomials over number fields.

use num_traits::{One, Zero};

use crate::exactnum::{render_rational, Rational};

/// Flat coordinates of a tower element. At level `k` the vector has
/// `dim(k)` entries and consists of `deg(pk)` chunks, chunk `j` being the
/// coefficient of `ak^j` at level `k-1`.
pub type Elem = Vec<Rational>;

/// Univariate polynomial with tower coefficients, lowest degree first.
pub(crate) type UPoly = Vec<Elem>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    moduli: Vec<UPoly>,
}

/// A modulus `p_level = g * h` with `g`, `h` monic and coprime.
#[derive(Clone, Debug)]
pub(crate) struct SplitAt {
    pub level: usize,
    pub g: UPoly,
    pub h: UPoly,
}

pub(crate) enum Class {
    Zero,
    Unit(Elem),
    Split(SplitAt),
}

impl Default for Tower {
    fn default() -> Self {
        Self::rational()
    }
}

impl Tower {
    /// The trivial tower: just `Q`.
    pub fn rational() -> Self {
        Self { moduli: Vec::new() }
    }

    pub fn height(&self) -> usize {
        self.moduli.len()
    }

    /// Degree of the modulus at `level` (1-based).
    pub fn degree(&self, level: usize) -> usize {
        self.moduli[level - 1].len() - 1
    }

    pub fn dim_at(&self, k: usize) -> usize {
        (1..=k).map(|l| self.degree(l)).product()
    }

    /// Dimension of the top algebra over `Q`.
    pub fn dim(&self) -> usize {
        self.dim_at(self.height())
    }

    pub(crate) fn modulus(&self, level: usize) -> &UPoly {
        &self.moduli[level - 1]
    }

    pub fn zero(&self, k: usize) -> Elem {
        vec![Rational::zero(); self.dim_at(k)]
    }

    pub fn from_rational(&self, k: usize, q: Rational) -> Elem {
        let mut e = self.zero(k);
        e[0] = q;
        e
    }

    pub fn one(&self, k: usize) -> Elem {
        self.from_rational(k, Rational::one())
    }

    /// The newest generator `a_K` at the top level.
    pub fn generator(&self) -> Elem {
        let k = self.height();
        assert!(k > 0, "rational tower has no generator");
        let mut e = self.zero(k);
        e[self.dim_at(k - 1)] = Rational::one();
        e
    }

    /// Embeds an element of level `from` into level `to >= from`.
    pub fn lift(&self, to: usize, e: &Elem) -> Elem {
        let mut v = e.clone();
        v.resize(self.dim_at(to), Rational::zero());
        v
    }

    pub fn is_zero(e: &[Rational]) -> bool {
        e.iter().all(Zero::is_zero)
    }

    /// True if `e` lies in the base field `Q`.
    pub fn is_rational(e: &[Rational]) -> bool {
        e.iter().skip(1).all(Zero::is_zero)
    }

    pub fn add(a: &[Rational], b: &[Rational]) -> Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Elem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(a: &[Rational]) -> Elem {
        a.iter().map(|x| -x).collect()
    }

    pub fn scale(a: &[Rational], q: &Rational) -> Elem {
        a.iter().map(|x| x * q).collect()
    }

    fn add_assign(a: &mut [Rational], b: &[Rational]) {
        for (x, y) in a.iter_mut().zip(b) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }

    fn sub_assign(a: &mut [Rational], b: &[Rational]) {
        for (x, y) in a.iter_mut().zip(b) {
            if !y.is_zero() {
                *x -= y;
            }
        }
    }

    pub fn mul(&self, k: usize, a: &[Rational], b: &[Rational]) -> Elem {
        if k == 0 {
            return vec![&a[0] * &b[0]];
        }
        if Self::is_rational(a) {
            return Self::scale(b, &a[0]);
        }
        if Self::is_rational(b) {
            return Self::scale(a, &b[0]);
        }
        let pa = self.chunks(k, a);
        let pb = self.chunks(k, b);
        let prod = self.pmul(k - 1, &pa, &pb);
        let red = self.reduce_upoly(k, prod);
        self.unchunk(k, red)
    }

    pub fn pow(&self, k: usize, a: &[Rational], mut n: u32) -> Elem {
        let mut acc = self.one(k);
        let mut base = a.to_vec();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(k, &acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(k, &base, &base);
            }
        }
        acc
    }

    pub(crate) fn chunks(&self, k: usize, e: &[Rational]) -> UPoly {
        e.chunks(self.dim_at(k - 1)).map(<[Rational]>::to_vec).collect()
    }

    pub(crate) fn unchunk(&self, k: usize, mut p: UPoly) -> Elem {
        let d = self.degree(k);
        p.resize(d, self.zero(k - 1));
        p.concat()
    }

    /// Reduces a polynomial over level `k-1` modulo the level-`k` modulus.
    pub(crate) fn reduce_upoly(&self, k: usize, mut p: UPoly) -> UPoly {
        let m = self.modulus(k);
        let d = m.len() - 1;
        for i in (d..p.len()).rev() {
            let t = std::mem::replace(&mut p[i], self.zero(k - 1));
            if Self::is_zero(&t) {
                continue;
            }
            for (j, mj) in m.iter().take(d).enumerate() {
                if !Self::is_zero(mj) {
                    let prod = self.mul(k - 1, &t, mj);
                    Self::sub_assign(&mut p[i - d + j], &prod);
                }
            }
        }
        p.truncate(d);
        p
    }

    pub(crate) fn pmul(&self, k: usize, a: &UPoly, b: &UPoly) -> UPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(k); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if Self::is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !Self::is_zero(y) {
                    let prod = self.mul(k, x, y);
                    Self::add_assign(&mut out[i + j], &prod);
                }
            }
        }
        out
    }

    fn psub(a: &UPoly, b: &UPoly) -> UPoly {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => Self::sub(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => Self::neg(y),
                (None, None) => unreachable!(),
            })
            .collect()
    }

    fn pscale(&self, k: usize, a: &UPoly, c: &[Rational]) -> UPoly {
        a.iter().map(|x| self.mul(k, x, c)).collect()
    }

    /// Strips zero leading coefficients and checks that the leading
    /// coefficient is a unit. Returns the trimmed polynomial (empty for zero)
    /// and the inverse of its leading coefficient.
    pub(crate) fn ptrim(&self, k: usize, mut p: UPoly) -> Result<(UPoly, Elem), SplitAt> {
        while let Some(top) = p.last() {
            if Self::is_zero(top) {
                p.pop();
                continue;
            }
            return match self.classify(k, top) {
                Class::Unit(inv) => Ok((p, inv)),
                Class::Split(s) => Err(s),
                Class::Zero => unreachable!("nonzero coordinates"),
            };
        }
        Ok((p, self.one(k)))
    }

    /// Division by `b`, whose leading coefficient has inverse `b_inv`.
    pub(crate) fn pdivrem(&self, k: usize, a: &UPoly, b: &UPoly, b_inv: &[Rational]) -> (UPoly, UPoly) {
        let db = b.len() - 1;
        let mut r = a.clone();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![self.zero(k); r.len() - db];
        for i in (db..r.len()).rev() {
            let t = std::mem::replace(&mut r[i], self.zero(k));
            if Self::is_zero(&t) {
                continue;
            }
            let c = self.mul(k, &t, b_inv);
            for (j, bj) in b.iter().take(db).enumerate() {
                if !Self::is_zero(bj) {
                    let prod = self.mul(k, &c, bj);
                    Self::sub_assign(&mut r[i - db + j], &prod);
                }
            }
            q[i - db] = c;
        }
        r.truncate(db);
        (q, r)
    }

    /// Monic gcd `g` of `a` (unit leading coefficient with inverse `a_inv`)
    /// and `b`, together with `t` such that `t * b = g` modulo `a`.
    pub(crate) fn pgcdext(
        &self,
        k: usize,
        a: &UPoly,
        a_inv: &[Rational],
        b: &UPoly,
    ) -> Result<(UPoly, UPoly), SplitAt> {
        let mut r0 = a.clone();
        let mut inv0 = a_inv.to_vec();
        let mut t0: UPoly = Vec::new();
        let mut r1 = b.clone();
        let mut t1: UPoly = vec![self.one(k)];
        loop {
            let (r, inv1) = self.ptrim(k, r1)?;
            if r.is_empty() {
                return Ok((self.pscale(k, &r0, &inv0), self.pscale(k, &t0, &inv0)));
            }
            let (q, rem) = self.pdivrem(k, &r0, &r, &inv1);
            let t2 = Self::psub(&t0, &self.pmul(k, &q, &t1));
            r0 = r;
            inv0 = inv1;
            r1 = rem;
            t0 = t1;
            t1 = t2;
        }
    }

    /// Decides whether `u` (level `k`) is zero, a unit, or a zero divisor
    /// that splits some modulus.
    pub(crate) fn classify(&self, k: usize, u: &[Rational]) -> Class {
        if Self::is_zero(u) {
            return Class::Zero;
        }
        if Self::is_rational(u) {
            let mut inv = vec![Rational::zero(); u.len()];
            inv[0] = u[0].recip();
            return Class::Unit(inv);
        }
        let b = match self.ptrim(k - 1, self.chunks(k, u)) {
            Ok((b, _)) => b,
            Err(s) => return Class::Split(s),
        };
        let m = self.modulus(k);
        let one = self.one(k - 1);
        let (g, t) = match self.pgcdext(k - 1, m, &one, &b) {
            Ok(x) => x,
            Err(s) => return Class::Split(s),
        };
        if g.len() == 1 {
            let t = self.reduce_upoly(k, t);
            return Class::Unit(self.unchunk(k, t));
        }
        let (h, rem) = self.pdivrem(k - 1, m, &g, &one);
        debug_assert!(rem.iter().all(|c| Self::is_zero(c)));
        Class::Split(SplitAt { level: k, g, h })
    }

    pub(crate) fn derivative(&self, p: &UPoly) -> UPoly {
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Self::scale(c, &Rational::from_integer((i as i64).into())))
            .collect()
    }

    /// Squarefree part of a monic polynomial over level `k`.
    pub(crate) fn squarefree_part(&self, k: usize, p: &UPoly) -> Result<UPoly, SplitAt> {
        if p.len() <= 2 {
            return Ok(p.clone());
        }
        let one = self.one(k);
        let (g, _) = self.pgcdext(k, p, &one, &self.derivative(p))?;
        if g.len() == 1 {
            return Ok(p.clone());
        }
        let (q, _) = self.pdivrem(k, p, &g, &one);
        Ok(q)
    }

    /// Tower with the modulus at `level` replaced by the factor `f`; higher
    /// moduli are projected along.
    pub(crate) fn with_factor(&self, level: usize, f: &UPoly) -> Tower {
        let mut new = Tower { moduli: self.moduli[..level - 1].to_vec() };
        new.moduli.push(f.clone());
        for j in level..self.height() {
            let m: UPoly = self.moduli[j].iter().map(|c| self.project(&new, level, j, c)).collect();
            new.moduli.push(m);
        }
        new
    }

    /// Image of the level-`k` element `e` in `new`, obtained from `self` by
    /// replacing the modulus at `level` with a factor.
    pub(crate) fn project(&self, new: &Tower, level: usize, k: usize, e: &[Rational]) -> Elem {
        if k < level {
            return e.to_vec();
        }
        let chunks = self.chunks(k, e);
        let chunks = if k == level {
            new.reduce_upoly(k, chunks)
        } else {
            chunks.iter().map(|c| self.project(new, level, k - 1, c)).collect()
        };
        new.unchunk(k, chunks)
    }

    /// Adjoins a root of the monic squarefree polynomial `p` over the top level.
    pub(crate) fn adjoin(&self, p: UPoly) -> Tower {
        let mut moduli = self.moduli.clone();
        moduli.push(p);
        Tower { moduli }
    }

    /// Renders an element using generator names `a1, a2, ...`.
    pub fn render_elem(&self, e: &[Rational]) -> String {
        let k = self.height();
        let mut parts: Vec<(bool, String)> = Vec::new();
        for idx in (0..e.len()).rev() {
            let c = &e[idx];
            if c.is_zero() {
                continue;
            }
            let mut rest = idx;
            let mut mono = Vec::new();
            for l in 1..=k {
                let d = self.degree(l);
                let ex = rest % d;
                rest /= d;
                match ex {
                    0 => {}
                    1 => mono.push(format!("a{l}")),
                    _ => mono.push(format!("a{l}^{ex}")),
                }
            }
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            let body = if mono.is_empty() {
                render_rational(&abs)
            } else if abs.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", render_rational(&abs), mono.join("*"))
            };
            parts.push((neg, body));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (neg, body)) in parts.iter().enumerate() {
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            s.push_str(body);
        }
        s
    }

    /// Defining relations, e.g. `a1^2 + 1 = 0`.
    pub fn render_relations(&self) -> Vec<String> {
        (1..=self.height())
            .map(|l| {
                let below = Tower { moduli: self.moduli[..l - 1].to_vec() };
                let m = self.modulus(l);
                let mut terms = Vec::new();
                for (i, c) in m.iter().enumerate().rev() {
                    if Self::is_zero(c) {
                        continue;
                    }
                    let coef = below.render_elem(c);
                    let power = match i {
                        0 => String::new(),
                        1 => format!("a{l}"),
                        _ => format!("a{l}^{i}"),
                    };
                    terms.push(match (power.is_empty(), coef.as_str()) {
                        (true, _) => coef,
                        (false, "1") => power,
                        (false, "-1") => format!("-{power}"),
                        (false, _) if coef.contains(' ') => format!("({coef})*{power}"),
                        (false, _) => format!("{coef}*{power}"),
                    });
                }
                format!("{} = 0", terms.join(" + ").replace("+ -", "- "))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn poly(t: &Tower, k: usize, c: &[i64]) -> UPoly {
        c.iter().map(|&x| t.from_rational(k, q(x))).collect()
    }

    #[test]
    fn gaussian_integers() {
        let t = Tower::rational().adjoin(poly(&Tower::rational(), 0, &[1, 0, 1]));
        let i = t.generator();
        assert_eq!(t.mul(1, &i, &i), t.from_rational(1, q(-1)));
        let z = Tower::add(&t.one(1), &i);
        match t.classify(1, &z) {
            Class::Unit(inv) => assert_eq!(t.mul(1, &z, &inv), t.one(1)),
            _ => panic!("1 + i is a unit"),
        }
        assert_eq!(t.render_elem(&z), "a1 + 1");
        assert_eq!(t.render_relations(), vec!["a1^2 + 1 = 0"]);
    }

    #[test]
    fn zero_divisor_splits() {
        // Q[a]/(a^2 - 1) = Q x Q; a - 1 is a zero divisor.
        let t = Tower::rational().adjoin(poly(&Tower::rational(), 0, &[-1, 0, 1]));
        let u = Tower::sub(&t.generator(), &t.one(1));
        let Class::Split(s) = t.classify(1, &u) else { panic!("expected split") };
        assert_eq!(s.level, 1);
        let tg = t.with_factor(1, &s.g);
        let th = t.with_factor(1, &s.h);
        assert_eq!(tg.dim() + th.dim(), 2);
        let a_g = t.project(&tg, 1, 1, &t.generator());
        let a_h = t.project(&th, 1, 1, &t.generator());
        let mut roots = vec![a_g[0].clone(), a_h[0].clone()];
        roots.sort();
        assert_eq!(roots, vec![q(-1), q(1)]);
    }

    #[test]
    fn two_level_tower() {
        // Q(sqrt2)[b]/(b^2 - a): b is a fourth root of 2.
        let t1 = Tower::rational().adjoin(poly(&Tower::rational(), 0, &[-2, 0, 1]));
        let a = t1.generator();
        let t2 = t1.adjoin(vec![Tower::neg(&a), t1.zero(1), t1.one(1)]);
        assert_eq!(t2.dim(), 4);
        let b = t2.generator();
        let b4 = t2.pow(2, &b, 4);
        assert_eq!(b4, t2.from_rational(2, q(2)));
        match t2.classify(2, &b) {
            Class::Unit(inv) => assert_eq!(t2.mul(2, &b, &inv), t2.one(2)),
            _ => panic!(),
        }
    }

    #[test]
    fn squarefree_part_over_q() {
        let t = Tower::rational();
        // (z - 1)^2 (z + 2) = z^3 - 3z + 2
        let p = poly(&t, 0, &[2, -3, 0, 1]);
        let s = t.squarefree_part(0, &p).ok().unwrap();
        assert_eq!(s, poly(&t, 0, &[-2, 1, 1]));
    }
}
