//! Sparse multivariate polynomials over `Z` in the variables `u_i`, `i ∈ Z`,
//! with exact division and a recursive primitive-PRS gcd.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Var = i64;

/// A power product `Π u_i^{e_i}`, sorted by variable, exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort();
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial(merged)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Removes variable `v` entirely, returning its exponent and the rest.
    fn split_off(&self, v: Var) -> (u32, Monomial) {
        let e = self.exponent(v);
        let rest = self.0.iter().copied().filter(|&(w, _)| w != v).collect();
        (e, Monomial(rest))
    }

    pub fn shift_vars(&self, k: i64) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v + k, e)).collect())
    }

    fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(v, e)| {
                    let f = other.exponent(v);
                    (f > 0).then_some((v, e.min(f)))
                })
                .collect(),
        )
    }
}

pub(crate) fn fmt_var(f: &mut fmt::Formatter<'_>, v: Var) -> fmt::Result {
    if v >= 0 {
        write!(f, "u{}", v)
    } else {
        write!(f, "u_{{{}}}", v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, &(v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            fmt_var(f, v)?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

/// A polynomial with integer coefficients; no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::term(BigInt::one(), Monomial::var(v))
    }

    pub fn term(c: BigInt, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the largest monomial in the internal order; its sign
    /// fixes the normal form of fractions.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// gcd of the integer coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Division of every coefficient by `c`, which must divide them all.
    pub fn div_int(&self, c: &BigInt) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x / c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    /// `u_i ↦ u_{i+k}`; order preserving, so the map stays sorted.
    pub fn shift_vars(&self, k: i64) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.shift_vars(k), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// View as a polynomial in `v` with coefficients free of `v`.
    pub fn to_univariate(&self, v: Var) -> Vec<MPoly> {
        let mut out: Vec<MPoly> = vec![MPoly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_univariate(v: Var, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let xe = Monomial::from_pairs(vec![(v, e as u32)]);
            for (m, a) in &c.terms {
                out.add_term(m.mul(&xe), a.clone());
            }
        }
        out
    }

    /// `self / other` when the division is exact in `Z[u]`.
    pub fn div_exact(&self, other: &MPoly) -> Option<MPoly> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let Some(c) = other.as_constant() {
            return self
                .terms
                .values()
                .all(|x| x.is_multiple_of(&c))
                .then(|| self.div_int(&c));
        }
        if other.terms.len() == 1 {
            let (om, oc) = other.terms.iter().next().unwrap();
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                if !c.is_multiple_of(oc) {
                    return None;
                }
                let mut rest = Vec::new();
                for &(v, e) in &m.0 {
                    let f = om.exponent(v);
                    if e < f {
                        return None;
                    }
                    rest.push((v, e - f));
                }
                if om.0.iter().any(|&(v, _)| m.exponent(v) == 0) {
                    return None;
                }
                terms.insert(Monomial::from_pairs(rest), c / oc);
            }
            return Some(MPoly { terms });
        }
        let x = *other.vars().iter().next().unwrap();
        let mut a = self.to_univariate(x);
        let b = other.to_univariate(x);
        let m = b.len() - 1;
        if a.len() < b.len() {
            return None;
        }
        let mut q = vec![MPoly::zero(); a.len() - m];
        trim(&mut a);
        while !a.is_empty() && a.len() > m {
            let n = a.len() - 1;
            let qc = a[n].div_exact(&b[m])?;
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    a[n - m + j] = &a[n - m + j] - &(&qc * bj);
                }
            }
            q[n - m] = qc;
            trim(&mut a);
        }
        if a.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(MPoly::from_univariate(x, &q))
    }

    /// Sign-normalized: the leading coefficient is positive.
    pub fn normalize_sign(self) -> MPoly {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => -self,
            _ => self,
        }
    }

    /// Greatest common divisor in `Z[u]`, with positive leading coefficient.
    pub fn gcd(&self, other: &MPoly) -> MPoly {
        if self.is_zero() {
            return other.clone().normalize_sign();
        }
        if other.is_zero() {
            return self.clone().normalize_sign();
        }
        if self.is_constant() || other.is_constant() {
            return MPoly::constant(self.content().gcd(&other.content()));
        }
        if self.terms.len() == 1 || other.terms.len() == 1 {
            let (mono, rest) = if self.terms.len() == 1 {
                (self, other)
            } else {
                (other, self)
            };
            let (mm, mc) = mono.terms.iter().next().unwrap();
            let mut g = mm.clone();
            for m in rest.terms.keys() {
                g = g.gcd(m);
                if g.is_one() {
                    break;
                }
            }
            return MPoly::term(mc.abs().gcd(&rest.content()), g);
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if large.div_exact(small).is_some() {
            return small.clone().normalize_sign();
        }
        let sv = self.vars();
        let ov = other.vars();
        if coprime_mod_p(self, other, &sv, &ov) {
            return MPoly::constant(self.content().gcd(&other.content()));
        }
        let x = match sv.intersection(&ov).next() {
            Some(&x) => x,
            None => {
                // no shared variable: only the contents can be shared
                let v = *sv.iter().next().unwrap();
                let ca = univariate_content(&self.to_univariate(v));
                return ca.gcd(other);
            }
        };
        let a = self.to_univariate(x);
        let b = other.to_univariate(x);
        let ca = univariate_content(&a);
        let cb = univariate_content(&b);
        let c = ca.gcd(&cb);
        let mut pa = primitive(&a, &ca);
        let mut pb = primitive(&b, &cb);
        if pa.len() < pb.len() {
            std::mem::swap(&mut pa, &mut pb);
        }
        loop {
            let r = pseudo_rem(&pa, &pb);
            if r.is_empty() {
                break;
            }
            if r.len() == 1 {
                pb = vec![MPoly::one()];
                break;
            }
            let cr = univariate_content(&r);
            pa = pb;
            pb = primitive(&r, &cr);
        }
        let g = MPoly::from_univariate(x, &pb);
        let g = g.div_int(&g.content());
        (&c * &g).normalize_sign()
    }
}

const P: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn reduce(c: &BigInt) -> u64 {
    let r = c.mod_floor(&BigInt::from(P));
    u64::try_from(&r).expect("residue below P")
}

/// A fixed pseudo-random evaluation point for `v`.
fn point(v: Var) -> u64 {
    let mut z = (v as u64).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    (z ^ (z >> 31)) % P
}

/// Coefficients in `x` of the image with every other variable at [`point`].
fn image(a: &MPoly, x: Var) -> Vec<u64> {
    let mut out = vec![0u64; a.degree_in(x) as usize + 1];
    for (m, c) in &a.terms {
        let mut val = reduce(c);
        for &(v, e) in &m.0 {
            if v != x {
                val = mul_mod(val, pow_mod(point(v), e as u64));
            }
        }
        let d = m.exponent(x) as usize;
        out[d] = (out[d] + val) % P;
    }
    out
}

fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let strip = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    strip(&mut a);
    strip(&mut b);
    while !b.is_empty() {
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = mul_mod(*a.last().unwrap(), pow_mod(*b.last().unwrap(), P - 2));
            for (j, &bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + P - mul_mod(f, bj)) % P;
            }
            strip(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Certifies that `gcd(a, b)` is a constant: for each shared variable `x` the
/// images keep their leading coefficients and are coprime, so the gcd has
/// degree 0 in `x`. A `false` answer is inconclusive.
fn coprime_mod_p(a: &MPoly, b: &MPoly, av: &BTreeSet<Var>, bv: &BTreeSet<Var>) -> bool {
    av.intersection(bv).all(|&x| {
        let (ia, ib) = (image(a, x), image(b, x));
        ia.last() != Some(&0) && ib.last() != Some(&0) && gcd_degree_mod(ia, ib) == 0
    })
}

fn trim(a: &mut Vec<MPoly>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn univariate_content(a: &[MPoly]) -> MPoly {
    let mut g = MPoly::zero();
    for c in a {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(a: &[MPoly], content: &MPoly) -> Vec<MPoly> {
    a.iter()
        .map(|c| {
            c.div_exact(content)
                .expect("content divides every coefficient")
        })
        .collect()
}

/// Sparse pseudo-remainder of `a` by `b` (both univariate, `b` nonzero).
fn pseudo_rem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let mut a = a.to_vec();
    trim(&mut a);
    let mut b = b.to_vec();
    trim(&mut b);
    let m = b.len() - 1;
    let lb = b[m].clone();
    while !a.is_empty() && a.len() > m {
        let n = a.len() - 1;
        let la = a[n].clone();
        for c in a.iter_mut() {
            *c = &*c * &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                a[n - m + j] = &a[n - m + j] - &(&la * bj);
            }
        }
        trim(&mut a);
    }
    a
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -self.clone()
    }
}

/// Terms from the largest monomial down, e.g. `u0^2+1`, `3*u1-u0`.
macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(i: Var) -> MPoly {
        MPoly::var(i)
    }

    fn c(n: i64) -> MPoly {
        MPoly::constant(BigInt::from(n))
    }

    #[test]
    fn gcd_of_products() {
        let f = &(&u(0) + &c(1)) * &(&u(1) - &u(2));
        let g = &(&u(0) + &c(1)) * &(&u(1) + &c(3));
        assert_eq!(f.gcd(&g), &u(0) + &c(1));
    }

    #[test]
    fn gcd_keeps_integer_content() {
        let f = &c(6) * &(&u(0) * &u(0) - &c(1));
        let g = &c(4) * &(&u(0) - &c(1));
        assert_eq!(f.gcd(&g), &c(2) * &(&u(0) - &c(1)));
    }

    #[test]
    fn gcd_coprime_is_one() {
        let f = &(&u(0) * &u(1)) + &c(1);
        let g = &u(0) + &u(1);
        assert!(f.gcd(&g).is_one());
    }

    #[test]
    fn gcd_multivariate_common_factor() {
        let h = &(&u(0) * &u(1)) + &(&u(2) * &u(2));
        let f = &h * &(&u(0) - &u(2));
        let g = &h * &(&(&u(1) * &u(1)) + &c(5));
        assert_eq!(f.gcd(&g), h);
    }

    #[test]
    fn exact_division() {
        let h = &(&u(0) * &u(1)) + &c(2);
        let f = &h * &(&u(0) - &u(3));
        assert_eq!(f.div_exact(&h).unwrap(), &u(0) - &u(3));
        assert!(f.div_exact(&(&u(0) + &c(7))).is_none());
    }

    #[test]
    fn display() {
        let p = &(&u(0) * &u(0)) + &c(1);
        assert_eq!(p.to_string(), "u0^2+1");
        assert_eq!((&c(3) * &u(-1)).to_string(), "3*u_{-1}");
    }
}
