//! Finite-dimensional quotients `O/I` of the local ring as explicit vector
//! spaces, multiplication maps on them, and a brute-force jet-space colength
//! oracle that does not use standard bases.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::linalg::{rank, RowSpace};
use crate::localstd::{IdealBasis, StandardBasis};
use crate::polyring::{Monomial, Polynomial};

/// `O/I` with the monomial basis complementary to the staircase.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    sb: StandardBasis,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    corner: u32,
}

/// Coordinates with respect to [`QuotientAlgebra::basis`].
pub type CoordinateVector = Vec<Rational>;

pub fn quotient_algebra(sb: &StandardBasis) -> Result<QuotientAlgebra> {
    let basis = sb.staircase().ok_or(Error::NonIsolated)?;
    let corner = sb.corner().unwrap_or(0);
    let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    Ok(QuotientAlgebra { sb: sb.clone(), basis, index, corner })
}

impl QuotientAlgebra {
    /// Basis monomials, sorted by the local order descending.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn standard_basis(&self) -> &StandardBasis {
        &self.sb
    }

    /// Fully reduced representative of `h`: a combination of basis monomials.
    ///
    /// Works modulo `m^D` (which lies in the ideal) and always eliminates the
    /// largest term that sits in the leading ideal, so it terminates.
    pub fn normal_form(&self, h: &Polynomial) -> Polynomial {
        let d = self.corner;
        let mut r = h.truncate_degree(d);
        let gens = self.sb.gens();
        let leads = self.sb.leading_monomials();
        loop {
            let target = r
                .terms()
                .rev()
                .find_map(|(m, c)| {
                    leads.iter().position(|l| l.divides(m)).map(|k| (m.clone(), c.clone(), k))
                });
            let Some((m, c, k)) = target else {
                return r;
            };
            let g = &gens[k];
            let (gl, gc) = g.lead().expect("nonzero generator");
            let factor = -(&c / gc);
            let shift = gl.quotient_of(&m);
            r.add_scaled_shifted(&factor, &shift, g, Some(d));
        }
    }

    pub fn normal_form_vector(&self, h: &Polynomial) -> CoordinateVector {
        let mut v = vec![Rational::zero(); self.dim()];
        for (m, c) in self.normal_form(h).terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Matrix of multiplication by `f`; row `i` is the image of basis element `i`.
    pub fn multiplication_matrix(&self, f: &Polynomial) -> Vec<CoordinateVector> {
        let one = Rational::from_integer(1.into());
        self.basis
            .iter()
            .map(|b| self.normal_form_vector(&f.mul_term(b, &one)))
            .collect()
    }
}

pub fn normal_form_vector(h: &Polynomial, a: &QuotientAlgebra) -> CoordinateVector {
    a.normal_form_vector(h)
}

/// Rank of multiplication by `f`, i.e. the dimension of the ideal `<f>` in `A`.
pub fn principal_ideal_dim(f: &Polynomial, a: &QuotientAlgebra) -> usize {
    rank(&a.multiplication_matrix(f))
}

/// Nullity of multiplication by `f` on `A`.
pub fn multiplication_kernel_dim(f: &Polynomial, a: &QuotientAlgebra) -> usize {
    a.dim() - principal_ideal_dim(f, a)
}

/// Result of the jet-space oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JetColength {
    Stable(u64),
    Unstable,
}

/// `dim Q[vars] / (I + m^k)` by row reduction over all monomials of degree `< k`.
pub fn jet_colength(ideal: &IdealBasis, k: u32) -> u64 {
    let nvars = ideal.vars().len();
    let monos = monomials_below(nvars, k);
    let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut space = RowSpace::new(monos.len());
    let one = Rational::from_integer(1.into());
    for g in ideal.gens() {
        let low = g.order_of().unwrap_or(0);
        for m in monos.iter().filter(|m| m.degree() + low < k) {
            let mut row = vec![Rational::zero(); monos.len()];
            for (gm, gc) in g.mul_term(m, &one).terms() {
                if gm.degree() < k {
                    row[index[gm]] = gc.clone();
                }
            }
            space.insert(row);
            if space.rank() == monos.len() {
                return 0;
            }
        }
    }
    (monos.len() - space.rank()) as u64
}

/// Compares the jet colengths at `bound - 1` and `bound`.
pub fn jet_colength_oracle(ideal: &IdealBasis, degree_bound: u32) -> JetColength {
    assert!(degree_bound >= 1, "degree bound must be positive");
    let a = jet_colength(ideal, degree_bound - 1);
    let b = jet_colength(ideal, degree_bound);
    if a == b {
        JetColength::Stable(b)
    } else {
        JetColength::Unstable
    }
}

/// Raises the bound from 2 until the oracle stabilizes, giving up after `max_bound`.
///
/// Two agreeing consecutive truncations already determine the colength:
/// `I + m^k = I + m^{k+1}` forces `m^k ⊂ I + m^{k+1}`, hence `m^k ⊂ I`.
pub fn jet_colength_search(ideal: &IdealBasis, max_bound: u32) -> JetColength {
    let mut prev = jet_colength(ideal, 1);
    for k in 2..=max_bound {
        let cur = jet_colength(ideal, k);
        if cur == prev {
            return JetColength::Stable(cur);
        }
        prev = cur;
    }
    JetColength::Unstable
}

fn monomials_below(nvars: usize, k: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(v: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if v == exps.len() {
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in 0..=left {
            exps[v] = e;
            rec(v + 1, left - e, exps, out);
        }
        exps[v] = 0;
    }
    if k > 0 {
        rec(0, k - 1, &mut exps, &mut out);
    }
    out
}
