//! Exact linear algebra over ℚ: fraction-free rank and incremental row spaces.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::{clear_denominators, Rational};

/// Rank of a rational matrix given by rows, via Bareiss elimination on the
/// row-wise denominator-cleared integer matrix.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| clear_denominators(r))
        .collect();
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..nrows {
            if a[i][c].is_zero() {
                // Row i still needs the Bareiss scaling by the pivot.
                for j in c + 1..ncols {
                    if !a[i][j].is_zero() {
                        a[i][j] = &a[i][j] * &a[r][c] / &prev;
                    }
                }
                continue;
            }
            for j in c + 1..ncols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// A subspace of ℚ^n kept in reduced row echelon form. Each row is keyed by
/// its pivot, the first nonzero column, where it has entry 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpace {
    ncols: usize,
    rows: BTreeMap<usize, Vec<Rational>>,
}

impl RowSpace {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vec<Rational>> {
        self.rows.values()
    }

    /// Reduces `v` against the space; the result is zero iff `v` lies in it.
    pub fn reduce(&self, v: &mut [Rational]) {
        for (&p, row) in &self.rows {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (j, x) in row.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    v[j] -= &c * x;
                }
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Adds `v` to the space; returns the new pivot if `v` was independent.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> Option<usize> {
        assert_eq!(v.len(), self.ncols, "row length");
        self.reduce(&mut v);
        let p = v.iter().position(|x| !x.is_zero())?;
        let inv = v[p].recip();
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.values_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (j, x) in v.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    row[j] -= &c * x;
                }
            }
        }
        self.rows.insert(p, v);
        Some(p)
    }

    /// Columns without a pivot.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.rows.contains_key(c)).collect()
    }
}
