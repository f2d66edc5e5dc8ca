//! Rational functions over `Q` in the variables `u_i`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::mpoly::{MPoly, Monomial, Var};

/// A reduced fraction `num / den` of integer polynomials.
///
/// Normal form: `gcd(num, den) = 1` as polynomials, the integer content of
/// `num` and `den` taken together is 1, and the leading coefficient of `den`
/// is positive. Zero is `0 / 1`. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        RatFunc {
            num: MPoly::constant(n),
            den: MPoly::one(),
        }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::new(
            MPoly::constant(q.numer().clone()),
            MPoly::constant(q.denom().clone()),
        )
    }

    pub fn var(v: Var) -> Self {
        RatFunc {
            num: MPoly::var(v),
            den: MPoly::one(),
        }
    }

    pub fn from_poly(p: MPoly) -> Self {
        Self::new(p, MPoly::one())
    }

    /// Builds and normalizes `num / den`. Panics if `den` is zero.
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            return Self::coprime(num, den);
        }
        let g = num.gcd(&den);
        Self::coprime_after(num, den, &g)
    }

    /// `num / den` divided through by their common factor `g`.
    fn coprime_after(num: MPoly, den: MPoly, g: &MPoly) -> Self {
        if g.is_constant() {
            Self::coprime(num, den)
        } else {
            Self::coprime(
                num.div_exact(g).expect("gcd divides numerator"),
                den.div_exact(g).expect("gcd divides denominator"),
            )
        }
    }

    /// `num / den` with no common non-constant factor: fixes content and sign.
    fn coprime(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let content = num.content().gcd(&den.content());
        let (mut num, mut den) = if content.is_one() {
            (num, den)
        } else {
            (num.div_int(&content), den.div_int(&content))
        };
        if den.leading_coeff().is_some_and(|c| c.is_negative()) {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }

    /// `(a/b)·(c/d)` for reduced fractions, cancelling crosswise.
    fn mul_parts(a: &MPoly, b: &MPoly, c: &MPoly, d: &MPoly) -> Self {
        let cancel = |x: &MPoly, y: &MPoly| {
            if y.is_constant() || x.is_constant() {
                return (x.clone(), y.clone());
            }
            let g = x.gcd(y);
            if g.is_constant() {
                (x.clone(), y.clone())
            } else {
                (x.div_exact(&g).unwrap(), y.div_exact(&g).unwrap())
            }
        };
        let (a, d) = cancel(a, d);
        let (c, b) = cancel(c, b);
        Self::coprime(&a * &c, &b * &d)
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        Some(BigRational::new(
            self.num.as_constant()?,
            self.den.as_constant()?,
        ))
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn involves(&self, v: Var) -> bool {
        self.num.involves(v) || self.den.involves(v)
    }

    /// `u_i ↦ u_{i+k}` throughout.
    pub fn shift_vars(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        RatFunc {
            num: self.num.shift_vars(k),
            den: self.den.shift_vars(k),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        Some(Self::mul_parts(
            &self.num, &self.den, &other.den, &other.num,
        ))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(Self::coprime(
                self.num.pow(e as u32),
                self.den.pow(e as u32),
            ))
        } else {
            self.inv()?.pow(-e)
        }
    }

    /// The sign of the first printed term, used to print sums as differences.
    pub fn looks_negative(&self) -> bool {
        self.num
            .terms()
            .next_back()
            .is_some_and(|(_, c)| c.is_negative())
    }

    /// Whether printing needs parentheses as a factor in a product.
    pub fn is_compound(&self) -> bool {
        self.num.num_terms() > 1
    }

    /// Expansion as a polynomial in `v` over the fraction field of the other
    /// variables: returns `(coefficients of numerator in v, denominator)`, so
    /// `self = Σ_k coeffs[k] v^k / den` with `den` free of `v` when possible.
    pub fn numerator_in(&self, v: Var) -> Vec<MPoly> {
        self.num.to_univariate(v)
    }

    pub fn from_monomial(c: BigInt, m: Monomial) -> Self {
        Self::from_poly(MPoly::term(c, m))
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc {
                    num: &self.num + &rhs.num,
                    den: MPoly::one(),
                };
            }
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        // Henrici: only the common part of the denominators can cancel
        let g = self.den.gcd(&rhs.den);
        if g.is_constant() {
            return RatFunc::coprime(
                &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                &self.den * &rhs.den,
            );
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let h = num.gcd(&g);
        RatFunc::coprime_after(num, &b1 * &rhs.den, &h)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                num: &self.num * &rhs.num,
                den: MPoly::one(),
            };
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        RatFunc::mul_parts(&self.num, &self.den, &rhs.num, &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

fn den_is_atomic(den: &MPoly) -> bool {
    den.num_terms() == 1
        && den
            .terms()
            .next()
            .is_some_and(|(m, c)| m.is_one() || (c.is_one() && m.pairs().len() == 1))
}

/// `7/3`, `u0*u1`, `(u0^2+1)/u1`, `u0/(2*u1)`, `-1/u_{-1}`.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if den_is_atomic(&self.den) {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
