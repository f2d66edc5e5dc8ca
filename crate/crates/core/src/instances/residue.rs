//! Residue difference fields.
//!
//! All built-in residue fields live inside `Q(u_i : i ∈ Z)` and differ only in
//! which variables are allowed and how far the shift can be inverted.

use std::fmt;

use super::group::Direction;
use super::mpoly::Var;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// A field of characteristic zero with an injective endomorphism `Resσ`.
pub trait ResidueDifferenceField: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    fn contains(&self, a: &RatFunc) -> bool;

    /// `Resσ`.
    fn sigma(&self, a: &RatFunc) -> RatFunc;

    /// The preimage under `Resσ`, when there is one.
    fn sigma_inv(&self, a: &RatFunc) -> Option<RatFunc>;

    fn is_inversive(&self) -> bool;

    /// An element `α` with `Resσ^n(α) ≠ α` for every `n > 0`, if the field has one.
    fn aperiodicity_witness(&self) -> Option<RatFunc>;

    /// Whether new variables can be drawn for generic elements.
    fn has_fresh_variables(&self) -> bool;

    /// `Resσ^i` forward, or its inverse backward.
    fn map(&self, a: &RatFunc, i: u32, direction: Direction) -> Result<RatFunc> {
        let mut out = a.clone();
        for _ in 0..i {
            out = match direction {
                Direction::Forward => self.sigma(&out),
                Direction::Backward => self.sigma_inv(&out).ok_or_else(|| {
                    Error::NoPreimage(format!("{} under Resσ^{} in {}", a, i, self.name()))
                })?,
            };
        }
        Ok(out)
    }

    /// `Resσ^ℓ` for any integer `ℓ`.
    fn map_signed(&self, a: &RatFunc, l: i64) -> Result<RatFunc> {
        if l >= 0 {
            self.map(a, l as u32, Direction::Forward)
        } else {
            self.map(a, (-l) as u32, Direction::Backward)
        }
    }

    fn check(&self, a: &RatFunc) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::NotInInstance {
                instance: self.name().to_string(),
                element: a.to_string(),
            })
        }
    }

    /// Smallest index allowed for a variable, if bounded.
    fn min_var(&self) -> Option<Var>;
}

/// The built-in residue fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResidueInstance {
    /// `Q` with the identity. Inversive, not aperiodic.
    QId,
    /// `Q(u_0, u_1, ...)` with `u_i ↦ u_{i+1}`. Not inversive.
    ShiftQ,
    /// `Q(u_i : i ∈ Z)` with the shift. Inversive.
    ShiftQInv,
}

impl ResidueInstance {
    pub const ALL: [ResidueInstance; 3] = [
        ResidueInstance::QId,
        ResidueInstance::ShiftQ,
        ResidueInstance::ShiftQInv,
    ];

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|r| r.name() == name)
            .ok_or_else(|| Error::Config(format!("unknown residue instance `{}`", name)))
    }
}

impl ResidueDifferenceField for ResidueInstance {
    fn name(&self) -> &str {
        match self {
            ResidueInstance::QId => "Q-id",
            ResidueInstance::ShiftQ => "shiftQ",
            ResidueInstance::ShiftQInv => "shiftQ-inv",
        }
    }

    fn contains(&self, a: &RatFunc) -> bool {
        match self {
            ResidueInstance::QId => a.is_constant(),
            ResidueInstance::ShiftQ => a.vars().first().is_none_or(|&v| v >= 0),
            ResidueInstance::ShiftQInv => true,
        }
    }

    fn sigma(&self, a: &RatFunc) -> RatFunc {
        match self {
            ResidueInstance::QId => a.clone(),
            _ => a.shift_vars(1),
        }
    }

    fn sigma_inv(&self, a: &RatFunc) -> Option<RatFunc> {
        match self {
            ResidueInstance::QId => Some(a.clone()),
            ResidueInstance::ShiftQ => {
                if a.involves(0) {
                    None
                } else {
                    Some(a.shift_vars(-1))
                }
            }
            ResidueInstance::ShiftQInv => Some(a.shift_vars(-1)),
        }
    }

    fn is_inversive(&self) -> bool {
        !matches!(self, ResidueInstance::ShiftQ)
    }

    fn aperiodicity_witness(&self) -> Option<RatFunc> {
        match self {
            ResidueInstance::QId => None,
            _ => Some(RatFunc::var(0)),
        }
    }

    fn has_fresh_variables(&self) -> bool {
        !matches!(self, ResidueInstance::QId)
    }

    fn min_var(&self) -> Option<Var> {
        match self {
            ResidueInstance::ShiftQ => Some(0),
            _ => None,
        }
    }
}

/// Whether `Resσ^n(α) ≠ α`.
pub fn moves_under(k: &dyn ResidueDifferenceField, alpha: &RatFunc, n: u32) -> bool {
    k.map(alpha, n, Direction::Forward)
        .map(|b| &b != alpha)
        .unwrap_or(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn u(i: Var) -> RatFunc {
        RatFunc::var(i)
    }

    #[test]
    fn res_map_examples() {
        let k = ResidueInstance::ShiftQ;
        let a = &u(1) / &(&u(2) + &RatFunc::one());
        assert_eq!(
            k.map(&a, 1, Direction::Forward).unwrap(),
            &u(2) / &(&u(3) + &RatFunc::one())
        );
        assert!(matches!(
            k.map(&u(0), 1, Direction::Backward),
            Err(Error::NoPreimage(_))
        ));
        let q = RatFunc::from_rational(&BigRational::new(7.into(), 3.into()));
        assert_eq!(
            ResidueInstance::QId.map(&q, 1, Direction::Forward).unwrap(),
            q
        );
    }

    #[test]
    fn membership() {
        assert!(ResidueInstance::ShiftQ.contains(&u(3)));
        assert!(!ResidueInstance::ShiftQ.contains(&u(-1)));
        assert!(ResidueInstance::ShiftQInv.contains(&u(-1)));
        assert!(!ResidueInstance::QId.contains(&u(0)));
    }

    #[test]
    fn aperiodicity() {
        let w = ResidueInstance::ShiftQ.aperiodicity_witness().unwrap();
        for n in 1..20 {
            assert!(moves_under(&ResidueInstance::ShiftQ, &w, n));
        }
        assert!(ResidueInstance::QId.aperiodicity_witness().is_none());
        let c = RatFunc::from_int(5);
        for n in 1..20 {
            assert!(!moves_under(&ResidueInstance::QId, &c, n));
        }
    }
}
