//! Dense Gaussian elimination over an exact field.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ratfunc::RatFunc;

/// The field operations elimination needs.
pub trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

impl Scalar for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

/// Reduced row echelon form of `rows`, in place. Returns the pivot columns.
pub fn rref<F: Scalar>(rows: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = F::one().div(&rows[r][c]);
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..rows[i].len() {
                if !rows[r][j].is_zero() {
                    let t = rows[r][j].mul(&f);
                    rows[i][j] = rows[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution<F> {
    Unique(Vec<F>),
    /// Consistent with free variables; the particular solution sets them to 0.
    Underdetermined(Vec<F>),
    Inconsistent,
}

/// Solves `A x = b` where `a` holds the rows of `A`.
pub fn solve<F: Scalar>(a: &[Vec<F>], b: &[F]) -> Solution<F> {
    let n = a.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return Solution::Inconsistent;
    }
    let mut x = vec![F::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][n].clone();
    }
    if pivots.len() == n {
        Solution::Unique(x)
    } else {
        Solution::Underdetermined(x)
    }
}

/// Rank of the matrix with the given rows.
pub fn rank<F: Scalar>(a: &[Vec<F>]) -> usize {
    let n = a.first().map_or(0, |r| r.len());
    let mut rows = a.to_vec();
    rref(&mut rows, n).len()
}
