//! Ordered difference groups.
//!
//! Every built-in value group embeds in the ring `Q[g, 1/g]` of Laurent
//! polynomials in one variable `g`, ordered by the sign of the coefficient of
//! highest degree. Constants give the archimedean instances (`Z`, `Z[1/2]`),
//! genuine polynomials give the non-archimedean ones where `g` is infinitely
//! larger than every constant. A single carrier type keeps addition and
//! comparison independent of the instance; only the endomorphism and the
//! membership test are instance specific.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of a value group: a Laurent polynomial in `g` with rational
/// coefficients, stored as `coeffs[k]` = coefficient of `g^(low + k)`.
///
/// Canonical form: zero is the empty vector with `low == 0`; otherwise the
/// first and last coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    low: i64,
    coeffs: Vec<BigRational>,
}

impl GroupElement {
    pub fn zero() -> Self {
        GroupElement {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::constant(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(0, vec![c])
    }

    /// `c * g^k`
    pub fn monomial(c: BigRational, k: i64) -> Self {
        Self::from_coeffs(k, vec![c])
    }

    /// The generator `g`.
    pub fn generator() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<BigRational>) -> Self {
        let mut e = GroupElement { low, coeffs };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_positive())
    }

    pub fn is_negative(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_negative())
    }

    /// Lowest exponent of `g` present (0 for the zero element).
    pub fn low_degree(&self) -> i64 {
        self.low
    }

    /// Highest exponent of `g` present, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.low + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeff(&self, k: i64) -> BigRational {
        let idx = k - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            BigRational::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficient, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// The constant value, if this element has no `g` terms.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.degree() {
            None => Some(BigRational::zero()),
            Some(0) if self.low == 0 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_dyadic(&self) -> bool {
        self.coeffs.iter().all(|c| {
            let d = c.denom();
            (d & (d - BigInt::one())).is_zero()
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Multiplication by `g^k`.
    pub fn shift_degree(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        GroupElement {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Product of two Laurent polynomials; used by the expression language
    /// where `g` terms are written as polynomials.
    pub fn mul_poly(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(self.low + other.low, out)
    }

    pub fn min<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl Default for GroupElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        let top = match (self.degree(), other.degree()) {
            (None, None) => return Ordering::Equal,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.max(b),
        };
        let bottom = match (self.is_zero(), other.is_zero()) {
            (false, false) => self.low.min(other.low),
            (true, _) => other.low,
            (_, true) => self.low,
        };
        let mut k = top;
        while k >= bottom {
            let ord = self.coeff(k).cmp(&other.coeff(k));
            if ord != Ordering::Equal {
                return ord;
            }
            k -= 1;
        }
        Ordering::Equal
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn add_coeffs(a: &GroupElement, b: &GroupElement, sign: i8) -> GroupElement {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if sign > 0 { b.clone() } else { -b };
    }
    let low = a.low.min(b.low);
    let high = a.degree().unwrap().max(b.degree().unwrap());
    let coeffs = (low..=high)
        .map(|k| {
            if sign > 0 {
                a.coeff(k) + b.coeff(k)
            } else {
                a.coeff(k) - b.coeff(k)
            }
        })
        .collect();
    GroupElement::from_coeffs(low, coeffs)
}

impl Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        add_coeffs(self, rhs, 1)
    }
}

impl Add for GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: GroupElement) -> GroupElement {
        add_coeffs(&self, &rhs, 1)
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        add_coeffs(self, rhs, -1)
    }
}

impl Sub for GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: GroupElement) -> GroupElement {
        add_coeffs(&self, &rhs, -1)
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        -&self
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Prints as a polynomial in `g`, highest degree first: `2g^2-3g+1`, `3/4`,
/// `g^-1`. Non-integer coefficients of `g` terms use an explicit `*`.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", fmt_rational(&abs))?;
                continue;
            }
            if !abs.is_one() {
                if abs.is_integer() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "{}*", fmt_rational(&abs))?;
                }
            }
            match k {
                1 => write!(f, "g")?,
                _ => write!(f, "g^{}", k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Γ({})", self)
    }
}

/// A group element or the symbol `∞` (the value of zero).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ExtValue {
    Finite(GroupElement),
    Infinity,
}

impl ExtValue {
    pub fn finite(&self) -> Option<&GroupElement> {
        match self {
            ExtValue::Finite(g) => Some(g),
            ExtValue::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtValue::Infinity)
    }

    pub fn add(&self, other: &GroupElement) -> ExtValue {
        match self {
            ExtValue::Finite(g) => ExtValue::Finite(g + other),
            ExtValue::Infinity => ExtValue::Infinity,
        }
    }
}

impl From<GroupElement> for ExtValue {
    fn from(g: GroupElement) -> Self {
        ExtValue::Finite(g)
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(g) => write!(f, "{}", g),
            ExtValue::Infinity => write!(f, "oo"),
        }
    }
}

/// Direction for applying an endomorphism or its partial inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// An ordered abelian group with an injective order-preserving endomorphism.
pub trait OrderedDifferenceGroup: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    /// Membership of a carrier element in this instance.
    fn contains(&self, g: &GroupElement) -> bool;

    /// The endomorphism `Valσ`.
    fn sigma(&self, g: &GroupElement) -> GroupElement;

    /// The unique preimage under `Valσ`, when there is one.
    fn sigma_inv(&self, g: &GroupElement) -> Option<GroupElement>;

    fn is_inversive(&self) -> bool;

    fn is_omega_increasing(&self) -> bool;

    /// `Valσ^i(γ)` forward, or the unique `γ'` with `Valσ^i(γ') = γ` backward.
    fn map(&self, g: &GroupElement, i: u32, direction: Direction) -> Result<GroupElement> {
        let mut out = g.clone();
        for _ in 0..i {
            out = match direction {
                Direction::Forward => self.sigma(&out),
                Direction::Backward => self.sigma_inv(&out).ok_or_else(|| {
                    Error::NoPreimage(format!("{} under Valσ^{} in {}", g, i, self.name()))
                })?,
            };
        }
        Ok(out)
    }

    /// `Valσ^ℓ` for any integer `ℓ`.
    fn map_signed(&self, g: &GroupElement, l: i64) -> Result<GroupElement> {
        if l >= 0 {
            self.map(g, l as u32, Direction::Forward)
        } else {
            self.map(g, (-l) as u32, Direction::Backward)
        }
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::NotInInstance {
                instance: self.name().to_string(),
                element: g.to_string(),
            })
        }
    }
}

/// The built-in value groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupInstance {
    /// `Z` with the identity.
    ZTrivial,
    /// `Z` with `n ↦ 2n`; not inversive.
    ZDouble,
    /// `Z[1/2]` with doubling; inversive.
    ZhalfDouble,
    /// `Z[g]` with `γ ↦ g·γ`; ω-increasing, not inversive.
    ZxiOmega,
    /// `Z[g, 1/g]` with `γ ↦ g·γ`; ω-increasing and inversive.
    LaurentOmega,
}

impl GroupInstance {
    pub const ALL: [GroupInstance; 5] = [
        GroupInstance::ZTrivial,
        GroupInstance::ZDouble,
        GroupInstance::ZhalfDouble,
        GroupInstance::ZxiOmega,
        GroupInstance::LaurentOmega,
    ];

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|g| g.name() == name)
            .ok_or_else(|| Error::Config(format!("unknown group instance `{}`", name)))
    }
}

impl OrderedDifferenceGroup for GroupInstance {
    fn name(&self) -> &str {
        match self {
            GroupInstance::ZTrivial => "Z-trivial",
            GroupInstance::ZDouble => "Z-double",
            GroupInstance::ZhalfDouble => "Zhalf-double",
            GroupInstance::ZxiOmega => "Zxi-omega",
            GroupInstance::LaurentOmega => "Laurent-omega",
        }
    }

    fn contains(&self, g: &GroupElement) -> bool {
        match self {
            GroupInstance::ZTrivial | GroupInstance::ZDouble => {
                g.as_constant().is_some_and(|c| c.is_integer())
            }
            GroupInstance::ZhalfDouble => g.as_constant().is_some() && g.is_dyadic(),
            GroupInstance::ZxiOmega => g.low_degree() >= 0 && g.is_integral(),
            GroupInstance::LaurentOmega => g.is_integral(),
        }
    }

    fn sigma(&self, g: &GroupElement) -> GroupElement {
        match self {
            GroupInstance::ZTrivial => g.clone(),
            GroupInstance::ZDouble | GroupInstance::ZhalfDouble => g.scale_int(2),
            GroupInstance::ZxiOmega | GroupInstance::LaurentOmega => g.shift_degree(1),
        }
    }

    fn sigma_inv(&self, g: &GroupElement) -> Option<GroupElement> {
        match self {
            GroupInstance::ZTrivial => Some(g.clone()),
            GroupInstance::ZDouble => {
                let c = g.as_constant()?;
                if c.is_integer() && c.numer().is_even() {
                    Some(GroupElement::constant(c / BigInt::from(2)))
                } else {
                    None
                }
            }
            GroupInstance::ZhalfDouble => Some(g.scale(&BigRational::new(1.into(), 2.into()))),
            GroupInstance::ZxiOmega => {
                if g.is_zero() || g.low_degree() >= 1 {
                    Some(g.shift_degree(-1))
                } else {
                    None
                }
            }
            GroupInstance::LaurentOmega => Some(g.shift_degree(-1)),
        }
    }

    fn is_inversive(&self) -> bool {
        matches!(
            self,
            GroupInstance::ZTrivial | GroupInstance::ZhalfDouble | GroupInstance::LaurentOmega
        )
    }

    fn is_omega_increasing(&self) -> bool {
        matches!(self, GroupInstance::ZxiOmega | GroupInstance::LaurentOmega)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(low: i64, cs: &[i64]) -> GroupElement {
        GroupElement::from_coeffs(
            low,
            cs.iter()
                .map(|c| BigRational::from_integer(BigInt::from(*c)))
                .collect(),
        )
    }

    #[test]
    fn odg_map_examples() {
        let zd = GroupInstance::ZDouble;
        let three = GroupElement::from_int(3);
        assert_eq!(
            zd.map(&three, 2, Direction::Forward).unwrap(),
            GroupElement::from_int(12)
        );
        assert!(matches!(
            zd.map(&three, 1, Direction::Backward),
            Err(Error::NoPreimage(_))
        ));
        // ξ + 1 ↦ ξ² + ξ
        let x = poly(0, &[1, 1]);
        assert_eq!(
            GroupInstance::ZxiOmega
                .map(&x, 1, Direction::Forward)
                .unwrap(),
            poly(1, &[1, 1])
        );
    }

    #[test]
    fn generator_dominates_constants() {
        let g = GroupElement::generator();
        for n in [-1000i64, 0, 1, 1_000_000] {
            assert!(g > GroupElement::from_int(n));
        }
        assert!(GroupElement::monomial(BigRational::one(), -1) < GroupElement::from_int(1));
        assert!(GroupElement::monomial(BigRational::one(), -1) > GroupElement::zero());
        assert!(poly(0, &[5, -1]) < GroupElement::zero());
    }

    #[test]
    fn display_matches_literal_syntax() {
        assert_eq!(poly(0, &[1, -3, 2]).to_string(), "2g^2-3g+1");
        assert_eq!(GroupElement::from_ratio(3, 4).to_string(), "3/4");
        assert_eq!(poly(-1, &[1]).to_string(), "g^-1");
        assert_eq!(poly(0, &[0, -1]).to_string(), "-g");
        assert_eq!(GroupElement::zero().to_string(), "0");
    }

    #[test]
    fn zxi_backward_needs_divisibility() {
        let z = GroupInstance::ZxiOmega;
        assert!(z.sigma_inv(&poly(0, &[1, 1])).is_none());
        assert_eq!(z.sigma_inv(&poly(1, &[2])).unwrap(), poly(0, &[2]));
    }

    #[test]
    fn membership() {
        let half = GroupElement::from_ratio(1, 2);
        assert!(!GroupInstance::ZTrivial.contains(&half));
        assert!(GroupInstance::ZhalfDouble.contains(&half));
        assert!(!GroupInstance::ZhalfDouble.contains(&GroupElement::from_ratio(1, 3)));
        assert!(!GroupInstance::ZxiOmega.contains(&poly(-1, &[1])));
        assert!(GroupInstance::LaurentOmega.contains(&poly(-1, &[1])));
    }
}
