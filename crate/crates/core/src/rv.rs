//! Leading terms `RV = K^×/(1 + m) ∪ {0}`, stored split as `(ac, v)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::hahn::{HahnSeries, Model};
use crate::instances::{ExtValue, GroupElement, RatFunc};

/// `Zero`, or the class of `c·t^γ` with `c ≠ 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum RvElement {
    Zero,
    Unit(RatFunc, GroupElement),
}

impl RvElement {
    /// `Unit(c, γ)`, or `Zero` when `c = 0`.
    pub fn new(c: RatFunc, g: GroupElement) -> Self {
        if c.is_zero() {
            RvElement::Zero
        } else {
            RvElement::Unit(c, g)
        }
    }

    /// The embedding `k^× → RV^×`, `c ↦ Unit(c, 0)`.
    pub fn from_residue(c: RatFunc) -> Self {
        Self::new(c, GroupElement::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RvElement::Zero)
    }

    pub fn mul(&self, other: &RvElement) -> RvElement {
        match (self, other) {
            (RvElement::Unit(a, g), RvElement::Unit(b, h)) => RvElement::Unit(a * b, g + h),
            _ => RvElement::Zero,
        }
    }

    pub fn inv(&self) -> Result<RvElement> {
        match self {
            RvElement::Zero => Err(Error::ZeroInput),
            RvElement::Unit(c, g) => Ok(RvElement::Unit(c.inv().expect("unit"), -g)),
        }
    }

    /// `(ac, v)`.
    pub fn split(&self) -> Result<(RatFunc, GroupElement)> {
        match self {
            RvElement::Zero => Err(Error::ZeroInput),
            RvElement::Unit(c, g) => Ok((c.clone(), g.clone())),
        }
    }

    /// `v_rv`, with `v_rv(0) = ∞`.
    pub fn value(&self) -> ExtValue {
        match self {
            RvElement::Zero => ExtValue::Infinity,
            RvElement::Unit(_, g) => ExtValue::Finite(g.clone()),
        }
    }

    /// The canonical representative `c·t^γ`.
    pub fn representative(&self) -> HahnSeries {
        match self {
            RvElement::Zero => HahnSeries::zero(),
            RvElement::Unit(c, g) => HahnSeries::monomial(c.clone(), g.clone()),
        }
    }

    /// `Rvσ(Unit(c, γ)) = Unit(Resσ(c), Valσ(γ))`.
    pub fn sigma(&self, model: &Model) -> RvElement {
        match self {
            RvElement::Zero => RvElement::Zero,
            RvElement::Unit(c, g) => RvElement::Unit(model.residue.sigma(c), model.group.sigma(g)),
        }
    }
}

/// `⟨3 ; 2⟩`, or `0`.
impl fmt::Display for RvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RvElement::Zero => write!(f, "0"),
            RvElement::Unit(c, g) => write!(f, "⟨{} ; {}⟩", c, g),
        }
    }
}

/// The leading-term class of a series. Fails when no term is visible.
pub fn rv(a: &HahnSeries) -> Result<RvElement> {
    if a.is_exact_zero() {
        return Ok(RvElement::Zero);
    }
    match a.leading_term() {
        Some((e, c)) => Ok(RvElement::Unit(c.clone(), e.clone())),
        None => Err(Error::PrecisionLoss(format!(
            "leading term of {} is not determined",
            a
        ))),
    }
}

/// The angular component: the leading coefficient, with `ac(0) = 0`.
pub fn ac(a: &HahnSeries) -> Result<RatFunc> {
    Ok(match rv(a)? {
        RvElement::Zero => RatFunc::zero(),
        RvElement::Unit(c, _) => c,
    })
}

/// The section `γ ↦ t^γ`; it satisfies `σ(s(γ)) = s(Valσ(γ))`.
pub fn section(g: &GroupElement) -> HahnSeries {
    HahnSeries::t_pow(g.clone())
}

/// `α_1 ⊕ ... ⊕ α_n` when the sum of representatives has a determined
/// leading term: the coefficients at the least value must not cancel.
pub fn oplus(args: &[RvElement]) -> Result<RvElement> {
    let units: Vec<(&RatFunc, &GroupElement)> = args
        .iter()
        .filter_map(|a| match a {
            RvElement::Unit(c, g) => Some((c, g)),
            RvElement::Zero => None,
        })
        .collect();
    let Some(min) = units.iter().map(|(_, g)| *g).min() else {
        return Ok(RvElement::Zero);
    };
    let sum = units
        .iter()
        .filter(|(_, g)| *g == min)
        .fold(RatFunc::zero(), |acc, (c, _)| &acc + c);
    if sum.is_zero() {
        return Err(Error::NotWellDefined);
    }
    Ok(RvElement::Unit(sum, min.clone()))
}
