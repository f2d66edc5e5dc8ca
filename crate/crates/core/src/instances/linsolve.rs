//! Best-effort solver for `1 + α_0 z + α_1 σ(z) + ... + α_n σ^n(z) = 0`.
//!
//! None of the built-in residue fields is linearly difference closed, so this
//! tries a short ladder of strategies and verifies every candidate by
//! substitution before returning it.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::group::Direction;
use super::linalg::{self, Solution};
use super::mpoly::{MPoly, Monomial, Var};
use super::ratfunc::RatFunc;
use super::residue::ResidueDifferenceField;
use crate::error::{Error, Result};

/// Largest total degree tried by the polynomial ansatz.
pub const MAX_ANSATZ_DEGREE: u32 = 4;

const MAX_UNKNOWNS: usize = 400;

/// Left-hand side `1 + Σ α_j σ^j(z)`.
pub fn residual(k: &dyn ResidueDifferenceField, alphas: &[RatFunc], z: &RatFunc) -> RatFunc {
    let mut acc = RatFunc::one();
    let mut sz = z.clone();
    for (j, a) in alphas.iter().enumerate() {
        if j > 0 {
            sz = k.sigma(&sz);
        }
        if !a.is_zero() {
            acc = &acc + &(a * &sz);
        }
    }
    acc
}

pub fn res_linsolve(k: &dyn ResidueDifferenceField, alphas: &[RatFunc]) -> Result<RatFunc> {
    let nonzero: Vec<usize> = (0..alphas.len())
        .filter(|&j| !alphas[j].is_zero())
        .collect();
    if nonzero.is_empty() {
        return Err(Error::AllZero);
    }
    let accept = |z: RatFunc| -> Option<RatFunc> {
        (k.contains(&z) && residual(k, alphas, &z).is_zero()).then_some(z)
    };

    // a single term: σ^j(z) = -1/α_j
    if let [j] = nonzero[..] {
        let target = -&alphas[j].inv().expect("nonzero");
        if let Ok(z) = k.map(&target, j as u32, Direction::Backward) {
            if let Some(z) = accept(z) {
                return Ok(z);
            }
        }
        return Err(Error::NoSolutionFound);
    }

    // σ fixes Q, so a constant z only sees Σ α_j
    let sum = alphas.iter().fold(RatFunc::zero(), |acc, a| &acc + a);
    if let Some(inv) = sum.inv() {
        if let Some(z) = accept(-inv) {
            return Ok(z);
        }
    }

    if let Some(z) = ansatz(k, alphas) {
        return Ok(z);
    }
    Err(Error::NoSolutionFound)
}

/// Variables the ansatz is allowed to use: those of the α's, shifted down by
/// up to `n` places.
fn ansatz_vars(k: &dyn ResidueDifferenceField, alphas: &[RatFunc]) -> Vec<Var> {
    let n = alphas.len() as i64 - 1;
    let mut vars = BTreeSet::new();
    for a in alphas {
        for v in a.vars() {
            for s in 0..=n {
                let w = v - s;
                if k.min_var().is_none_or(|lo| w >= lo) {
                    vars.insert(w);
                }
            }
        }
    }
    vars.into_iter().collect()
}

fn monomials_up_to(vars: &[Var], d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut layer = vec![(Monomial::one(), 0usize)];
    for _ in 0..d {
        let mut next = Vec::new();
        for (m, start) in &layer {
            for (i, &v) in vars.iter().enumerate().skip(*start) {
                let nm = m.mul(&Monomial::var(v));
                next.push((nm.clone(), i));
                out.push(nm);
            }
        }
        layer = next;
    }
    out
}

fn denominator_candidates(k: &dyn ResidueDifferenceField, alphas: &[RatFunc]) -> Vec<MPoly> {
    let mut out = vec![MPoly::one()];
    for (j, a) in alphas.iter().enumerate() {
        for p in [a.numer(), a.denom()] {
            if p.is_constant() {
                continue;
            }
            let r = RatFunc::from_poly(p.clone());
            if let Ok(s) = k.map(&r, j as u32, Direction::Backward) {
                let s = s.numer().clone();
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn lcm(a: &MPoly, b: &MPoly) -> MPoly {
    let g = a.gcd(b);
    (a * b).div_exact(&g).expect("gcd divides product")
}

fn ansatz(k: &dyn ResidueDifferenceField, alphas: &[RatFunc]) -> Option<RatFunc> {
    let vars = ansatz_vars(k, alphas);
    for d in 0..=MAX_ANSATZ_DEGREE {
        let monos = monomials_up_to(&vars, d);
        if monos.len() > MAX_UNKNOWNS {
            break;
        }
        for den in denominator_candidates(k, alphas) {
            if let Some(z) = ansatz_with(k, alphas, &monos, &den) {
                return Some(z);
            }
        }
    }
    None
}

/// Looks for `z = P / den` with `P` a Q-combination of `monos`.
fn ansatz_with(
    k: &dyn ResidueDifferenceField,
    alphas: &[RatFunc],
    monos: &[Monomial],
    den: &MPoly,
) -> Option<RatFunc> {
    let rden = RatFunc::from_poly(den.clone());
    let cols: Vec<RatFunc> = monos
        .iter()
        .map(|m| {
            let z = &RatFunc::from_monomial(BigInt::one(), m.clone()) / &rden;
            &residual(k, alphas, &z) - &RatFunc::one()
        })
        .collect();
    let common = cols
        .iter()
        .fold(MPoly::one(), |acc, c| lcm(&acc, c.denom()));
    let cpoly = RatFunc::from_poly(common.clone());
    let polys: Vec<MPoly> = cols
        .iter()
        .map(|c| {
            let p = c * &cpoly;
            debug_assert!(p.denom().is_one());
            p.numer().clone()
        })
        .collect();
    let mut rows_index: BTreeSet<Monomial> = BTreeSet::new();
    for p in polys.iter().chain(std::iter::once(&common)) {
        rows_index.extend(p.terms().map(|(m, _)| m.clone()));
    }
    let coeff = |p: &MPoly, m: &Monomial| -> BigRational {
        p.terms()
            .find(|(k, _)| *k == m)
            .map(|(_, c)| BigRational::from_integer(c.clone()))
            .unwrap_or_else(BigRational::zero)
    };
    let a: Vec<Vec<BigRational>> = rows_index
        .iter()
        .map(|m| polys.iter().map(|p| coeff(p, m)).collect())
        .collect();
    let b: Vec<BigRational> = rows_index.iter().map(|m| -coeff(&common, m)).collect();
    let x = match linalg::solve(&a, &b) {
        Solution::Unique(x) | Solution::Underdetermined(x) => x,
        Solution::Inconsistent => return None,
    };
    let mut z = RatFunc::zero();
    for (c, m) in x.iter().zip(monos) {
        if !c.is_zero() {
            let t = &RatFunc::from_rational(c) * &RatFunc::from_monomial(BigInt::one(), m.clone());
            z = &z + &t;
        }
    }
    let z = &z / &rden;
    (k.contains(&z) && residual(k, alphas, &z).is_zero()).then_some(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::residue::ResidueInstance;

    fn q(n: i64, d: i64) -> RatFunc {
        RatFunc::from_rational(&BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn linsolve_examples() {
        let k = ResidueInstance::QId;
        assert_eq!(res_linsolve(&k, &[q(2, 1)]).unwrap(), q(-1, 2));
        assert_eq!(res_linsolve(&k, &[q(1, 1), q(1, 1)]).unwrap(), q(-1, 2));
        let k = ResidueInstance::ShiftQInv;
        let z = res_linsolve(&k, &[RatFunc::zero(), RatFunc::var(0)]).unwrap();
        assert_eq!(z, -&RatFunc::var(-1).inv().unwrap());
        assert_eq!(z.to_string(), "-1/u_{-1}");
    }

    #[test]
    fn all_zero_and_unsolvable() {
        let k = ResidueInstance::QId;
        assert_eq!(res_linsolve(&k, &[RatFunc::zero()]), Err(Error::AllZero));
        assert_eq!(
            res_linsolve(&k, &[q(1, 1), q(-1, 1)]),
            Err(Error::NoSolutionFound)
        );
        // σ(z) = -1/u0 has no solution in shiftQ
        let k = ResidueInstance::ShiftQ;
        assert_eq!(
            res_linsolve(&k, &[RatFunc::zero(), RatFunc::var(0)]),
            Err(Error::NoSolutionFound)
        );
    }

    #[test]
    fn polynomial_ansatz_finds_planted_solution() {
        // z = u0 + 1 with α_1 = 1, α_0 = -(1 + u1 + 1)/(u0 + 1)
        let k = ResidueInstance::ShiftQ;
        let z = &RatFunc::var(0) + &RatFunc::one();
        let a1 = RatFunc::one();
        let a0 = -&(&(&RatFunc::one() + &k.sigma(&z)) / &z);
        let got = res_linsolve(&k, &[a0.clone(), a1.clone()]).unwrap();
        assert!(residual(&k, &[a0, a1], &got).is_zero());
    }
}
