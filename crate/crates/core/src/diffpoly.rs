//! Difference polynomials `p(X) = Σ_I a_I X^I` over a difference ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::instances::{MultiIndex, RatFunc, ResidueDifferenceField, ResidueInstance};

/// A commutative ring with an injective endomorphism `σ`, possibly partially
/// invertible. Elements are plain values; the ring object carries the
/// instance data.
pub trait DifferenceRing {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Exact zero. A truncated series that is zero up to its precision is not.
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn sigma(&self, a: &Self::Elem) -> Self::Elem;
    fn sigma_inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut out = self.one();
        for _ in 0..e {
            out = self.mul(&out, a);
        }
        out
    }

    /// `σ^ℓ` for any integer `ℓ`.
    fn sigma_pow(&self, a: &Self::Elem, l: i64) -> Result<Self::Elem> {
        let mut out = a.clone();
        if l >= 0 {
            for _ in 0..l {
                out = self.sigma(&out);
            }
        } else {
            for _ in 0..(-l) {
                out = self.sigma_inv(&out)?;
            }
        }
        Ok(out)
    }
}

macro_rules! residue_ring {
    ($t:ty) => {
        impl DifferenceRing for $t {
            type Elem = RatFunc;
            fn zero(&self) -> RatFunc {
                RatFunc::zero()
            }
            fn one(&self) -> RatFunc {
                RatFunc::one()
            }
            fn from_int(&self, n: i64) -> RatFunc {
                RatFunc::from_int(n)
            }
            fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
                a + b
            }
            fn neg(&self, a: &RatFunc) -> RatFunc {
                -a
            }
            fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
                a * b
            }
            fn is_zero(&self, a: &RatFunc) -> bool {
                a.is_zero()
            }
            fn sigma(&self, a: &RatFunc) -> RatFunc {
                ResidueDifferenceField::sigma(self, a)
            }
            fn sigma_inv(&self, a: &RatFunc) -> Result<RatFunc> {
                ResidueDifferenceField::sigma_inv(self, a).ok_or_else(|| {
                    Error::NoPreimage(format!("{} under Resσ in {}", a, self.name()))
                })
            }
        }
    };
}
residue_ring!(ResidueInstance);
residue_ring!(dyn ResidueDifferenceField);

/// How a coefficient prints inside a polynomial.
pub trait Coefficient: fmt::Display {
    /// A sum that needs parentheses as a factor.
    fn is_compound(&self) -> bool;
    /// Printed with a leading minus sign.
    fn looks_negative(&self) -> bool;
    fn negated(&self) -> Self;
    fn is_one(&self) -> bool;
}

impl Coefficient for RatFunc {
    fn is_compound(&self) -> bool {
        RatFunc::is_compound(self)
    }
    fn looks_negative(&self) -> bool {
        RatFunc::looks_negative(self)
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
}

/// `(n, deg_{X_n} P, totdeg P)` with the two conventional bottom shapes.
/// The derived order is the intended one: `Zero < Constant < Triple(..)`,
/// triples lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Complexity {
    /// `(-∞, -∞, -∞)`, the zero polynomial.
    Zero,
    /// `(-∞, 0, 0)`, nonzero constants.
    Constant,
    Triple(u32, u32, u32),
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Complexity::Zero => write!(f, "(-oo, -oo, -oo)"),
            Complexity::Constant => write!(f, "(-oo, 0, 0)"),
            Complexity::Triple(n, d, t) => write!(f, "({}, {}, {})", n, d, t),
        }
    }
}

/// A difference polynomial in one variable with coefficients of type `E`.
///
/// No exactly-zero coefficient is stored.
#[derive(Clone, PartialEq)]
pub struct DiffPoly<E> {
    terms: BTreeMap<MultiIndex, E>,
}

impl<E: Clone + PartialEq + fmt::Debug> DiffPoly<E> {
    pub fn zero() -> Self {
        DiffPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<R>(ring: &R, it: impl IntoIterator<Item = (MultiIndex, E)>) -> Self
    where
        R: DifferenceRing<Elem = E> + ?Sized,
    {
        let mut p = Self::zero();
        for (i, c) in it {
            p.add_term(ring, i, c);
        }
        p
    }

    pub fn constant<R>(ring: &R, c: E) -> Self
    where
        R: DifferenceRing<Elem = E> + ?Sized,
    {
        Self::from_terms(ring, [(MultiIndex::zero(), c)])
    }

    /// `σ^k(X)`.
    pub fn sigma_x<R>(ring: &R, k: usize) -> Self
    where
        R: DifferenceRing<Elem = E> + ?Sized,
    {
        Self::from_terms(ring, [(MultiIndex::unit(k), ring.one())])
    }

    pub fn x<R>(ring: &R) -> Self
    where
        R: DifferenceRing<Elem = E> + ?Sized,
    {
        Self::sigma_x(ring, 0)
    }

    fn add_term<R>(&mut self, ring: &R, i: MultiIndex, c: E)
    where
        R: DifferenceRing<Elem = E> + ?Sized,
    {
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.remove(&i) {
            None => {
                self.terms.insert(i, c);
            }
            Some(old) => {
                let s = ring.add(&old, &c);
                if !ring.is_zero(&s) {
                    self.terms.insert(i, s);
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &E)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: &MultiIndex) -> Option<&E> {
        self.terms.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|i| i.is_zero())
    }

    /// Largest `n` such that `σ^n(X)` occurs; `None` for constants.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().filter_map(|i| i.order()).max()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|i| i.total()).max().unwrap_or(0)
    }

    pub fn complexity(&self) -> Complexity {
        if self.is_zero() {
            return Complexity::Zero;
        }
        match self.order() {
            None => Complexity::Constant,
            Some(n) => Complexity::Triple(
                n as u32,
                self.terms.keys().map(|i| i.get(n)).max().unwrap_or(0),
                self.total_degree(),
            ),
        }
    }

    pub fn map_coeffs<F, R2>(&self, ring: &R2, mut f: F) -> DiffPoly<R2::Elem>
    where
        R2: DifferenceRing + ?Sized,
        F: FnMut(&E) -> R2::Elem,
    {
        DiffPoly::from_terms(ring, self.terms.iter().map(|(i, c)| (i.clone(), f(c))))
    }

    pub fn try_map_coeffs<F, R2>(&self, ring: &R2, mut f: F) -> Result<DiffPoly<R2::Elem>>
    where
        R2: DifferenceRing + ?Sized,
        F: FnMut(&E) -> Result<R2::Elem>,
    {
        let mut out = Vec::with_capacity(self.terms.len());
        for (i, c) in &self.terms {
            out.push((i.clone(), f(c)?));
        }
        Ok(DiffPoly::from_terms(ring, out))
    }

    pub fn add<R>(&self, ring: &R, other: &Self) -> Self
    where
        R: DifferenceRing<Elem = E> + ?Sized,
    {
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(ring, i.clone(), c.clone());
        }
        out
    }

    pub fn neg<R>(&self, ring: &R) -> Self
    where
        R: DifferenceRing<Elem = E> + ?Sized,
    {
        self.map_coeffs(ring, |c| ring.neg(c))
    }

    pub fn sub<R>(&self, ring: &R, other: &Self) -> Self
    where
        R: DifferenceRing<Elem = E> + ?Sized,
    {
        self.add(ring, &other.neg(ring))
    }

    pub fn mul<R>(&self, ring: &R, other: &Self) -> Self
    where
        R: DifferenceRing<Elem = E> + ?Sized,
    {
        let mut out = Self::zero();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                out.add_term(ring, i.add(j), ring.mul(a, b));
            }
        }
        out
    }

    pub fn scale<R>(&self, ring: &R, c: &E) -> Self
    where
        R: DifferenceRing<Elem = E> + ?Sized,
    {
        self.map_coeffs(ring, |a| ring.mul(c, a))
    }

    pub fn pow<R>(&self, ring: &R, e: u32) -> Self
    where
        R: DifferenceRing<Elem = E> + ?Sized,
    {
        let mut out = Self::constant(ring, ring.one());
        for _ in 0..e {
            out = out.mul(ring, self);
        }
        out
    }

    /// `σ(p(X))` as a difference polynomial: `Σ σ(a_I) X^{I^{+1}}`.
    pub fn apply_sigma<R>(&self, ring: &R) -> Self
    where
        R: DifferenceRing<Elem = E> + ?Sized,
    {
        DiffPoly::from_terms(
            ring,
            self.terms
                .iter()
                .map(|(i, c)| (i.shift_up(1), ring.sigma(c))),
        )
    }

    /// `p(a) = Σ_I a_I Π_j σ^j(a)^{i_j}`.
    pub fn evaluate<R>(&self, ring: &R, a: &E) -> E
    where
        R: DifferenceRing<Elem = E> + ?Sized,
    {
        let n = self.order().map_or(0, |n| n + 1);
        let mut sig = Vec::with_capacity(n);
        let mut cur = a.clone();
        for j in 0..n {
            if j > 0 {
                cur = ring.sigma(&cur);
            }
            sig.push(cur.clone());
        }
        // powers[j][e] = σ^j(a)^e, filled on demand
        let mut powers: Vec<Vec<E>> = sig.iter().map(|s| vec![ring.one(), s.clone()]).collect();
        let mut acc = ring.zero();
        for (i, c) in &self.terms {
            let mut t = c.clone();
            for (j, &e) in i.entries().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e as usize {
                    let next = ring.mul(powers[j].last().unwrap(), &sig[j]);
                    powers[j].push(next);
                }
                t = ring.mul(&t, &powers[j][e as usize]);
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }

    /// The Taylor coefficient `p_J`: `P(X̄ + Ȳ) = Σ_J p_J(X̄) Ȳ^J`.
    pub fn taylor_coeff<R>(&self, ring: &R, j: &MultiIndex) -> Self
    where
        R: DifferenceRing<Elem = E> + ?Sized,
    {
        if j.is_zero() {
            return self.clone();
        }
        let mut out = Self::zero();
        for (i, c) in &self.terms {
            if let Some(rest) = i.checked_sub(j) {
                let b = i.binomial(j);
                let c = if b == 1 {
                    c.clone()
                } else {
                    ring.mul(&ring.from_int(b as i64), c)
                };
                out.add_term(ring, rest, c);
            }
        }
        out
    }

    /// `p_j = p_{E_j}`.
    pub fn partial<R>(&self, ring: &R, j: usize) -> Self
    where
        R: DifferenceRing<Elem = E> + ?Sized,
    {
        self.taylor_coeff(ring, &MultiIndex::unit(j))
    }

    /// Every `J ≠ 0` with `p_J ≠ 0`: the nonzero sub-indices of stored indices.
    pub fn derivative_support(&self) -> Vec<MultiIndex> {
        let mut out: Vec<MultiIndex> = self
            .terms
            .keys()
            .flat_map(|i| i.sub_indices())
            .filter(|j| !j.is_zero())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// `p^{σ^ℓ} = Σ σ^ℓ(a_I) X^I`.
    pub fn coeff_shift<R>(&self, ring: &R, l: i64) -> Result<Self>
    where
        R: DifferenceRing<Elem = E> + ?Sized,
    {
        if l == 0 {
            return Ok(self.clone());
        }
        self.try_map_coeffs(ring, |c| ring.sigma_pow(c, l))
    }

    /// The smallest `m` with `p_m ≠ 0`, i.e. the least `j` such that `σ^j(X)` occurs.
    pub fn min_order(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|i| i.entries().iter().position(|&e| e > 0))
            .min()
    }

    /// `(m(p), S(p))` where `S(p)(Y) = p(σ^{-m}(Y))` reindexes `I ↦ I^{-m}`.
    pub fn shift_normalize(&self) -> Result<(usize, Self)> {
        let m = self.min_order().ok_or(Error::ConstantInput)?;
        let terms = self
            .terms
            .iter()
            .map(|(i, c)| (i.shift_down(m).expect("first m entries vanish"), c.clone()))
            .collect();
        Ok((m, DiffPoly { terms }))
    }

    /// `J ↦ J^{+m}` on every index; inverse of [`DiffPoly::shift_normalize`].
    pub fn shift_indices_up(&self, m: usize) -> Self {
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(i, c)| (i.shift_up(m), c.clone()))
                .collect(),
        }
    }
}

impl<E: fmt::Debug> fmt::Debug for DiffPoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, i: &MultiIndex) -> fmt::Result {
    let mut first = true;
    for (j, &e) in i.entries().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        match j {
            0 => write!(f, "X")?,
            1 => write!(f, "s(X)")?,
            _ => write!(f, "s^{}(X)", j)?,
        }
        if e > 1 {
            write!(f, "^{}", e)?;
        }
    }
    Ok(())
}

/// `X*s(X)^2 + 3`, `s(X) - T*X - 1`, `(1 + T)*X`.
impl<E: Coefficient + Clone> fmt::Display for DiffPoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&MultiIndex> = self.terms.keys().collect();
        keys.sort_by(|a, b| a.print_cmp(b));
        for (k, i) in keys.into_iter().enumerate() {
            let c = &self.terms[i];
            let neg = c.looks_negative() && !c.is_compound();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let c = if neg { c.negated() } else { c.clone() };
            if i.is_zero() {
                if c.is_compound() && k > 0 {
                    write!(f, "({})", c)?;
                } else {
                    write!(f, "{}", c)?;
                }
                continue;
            }
            if !c.is_one() {
                if c.is_compound() {
                    write!(f, "({})*", c)?;
                } else {
                    write!(f, "{}*", c)?;
                }
            }
            fmt_monomial(f, i)?;
        }
        Ok(())
    }
}
