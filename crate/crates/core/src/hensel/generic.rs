//! Regular and generic elements.

use std::collections::BTreeSet;

use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::hahn::{HahnSeries, Model, Tri, Valuation};
use crate::instances::{index_action, ExtValue, GroupElement, RatFunc, Var};

/// Whether `v(p(a)) = min_I (v(a_I) + v(a^I))`.
pub fn check_regular(model: &Model, p: &DiffPoly<HahnSeries>, a: &HahnSeries) -> Tri {
    let va = match a.valuation() {
        Valuation::Finite(v) => Some(v),
        Valuation::Infinity => None,
        Valuation::BelowPrecision(_) => return Tri::Unknown,
    };
    let mut min = ExtValue::Infinity;
    for (i, c) in p.terms() {
        let Some(vc) = c.value() else {
            return Tri::Unknown;
        };
        let vi = match (&va, i.is_zero()) {
            (_, true) => vc,
            (Some(v), false) => vc.add(&index_action(model.g(), i, v).0),
            (None, false) => ExtValue::Infinity,
        };
        min = min.min(vi);
    }
    match p.evaluate(model, a).valuation() {
        Valuation::Finite(v) => Tri::from_bool(ExtValue::Finite(v) == min),
        Valuation::Infinity => Tri::from_bool(min.is_infinite()),
        Valuation::BelowPrecision(d) => {
            if ExtValue::Finite(d) > min {
                Tri::No
            } else {
                Tri::Unknown
            }
        }
    }
}

/// `u_j·t^γ` with `j` past every index in `used`.
///
/// Against polynomials whose coefficients only involve the variables in
/// `used`, distinct monomials `X^I` pick up distinct products of fresh
/// variables, so no leading terms can cancel.
pub fn fresh_generic(
    model: &Model,
    used: &BTreeSet<Var>,
    gamma: &GroupElement,
) -> Result<HahnSeries> {
    if !model.residue.has_fresh_variables() {
        return Err(Error::PreconditionViolation(format!(
            "{} has no transcendental elements to draw",
            model.residue.name()
        )));
    }
    let j = used
        .last()
        .map_or(0, |&m| m + 1)
        .max(model.residue.min_var().unwrap_or(i64::MIN));
    Ok(HahnSeries::monomial(RatFunc::var(j), gamma.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{GroupInstance, MultiIndex, ResidueInstance};

    fn model() -> Model {
        Model::new(ResidueInstance::ShiftQ, GroupInstance::ZTrivial)
    }

    #[test]
    fn check_regular_examples() {
        let m = model();
        let p = DiffPoly::from_terms(&m, [(MultiIndex::unit(0), HahnSeries::from_int(4))]);
        let a = &HahnSeries::from_int(2) + &HahnSeries::t_pow(GroupElement::from_int(3));
        assert_eq!(check_regular(&m, &p, &a), Tri::Yes);

        let t = HahnSeries::t_pow(GroupElement::from_int(1));
        let p = DiffPoly::from_terms(
            &m,
            [
                (MultiIndex::unit(0), HahnSeries::one()),
                (MultiIndex::zero(), -&t),
            ],
        );
        assert_eq!(check_regular(&m, &p, &t), Tri::No);

        let p = DiffPoly::from_terms(
            &m,
            [
                (MultiIndex::unit(0), HahnSeries::one()),
                (MultiIndex::zero(), HahnSeries::one()),
            ],
        );
        let used: BTreeSet<Var> = [0, 1, 2].into_iter().collect();
        let a = fresh_generic(&m, &used, &GroupElement::zero()).unwrap();
        assert_eq!(check_regular(&m, &p, &a), Tri::Yes);
    }

    #[test]
    fn fresh_generic_examples() {
        let m = model();
        let used: BTreeSet<Var> = [0, 1].into_iter().collect();
        let a = fresh_generic(&m, &used, &GroupElement::zero()).unwrap();
        assert_eq!(a, HahnSeries::constant(RatFunc::var(2)));
        let g = GroupElement::from_int(5);
        let a = fresh_generic(&m, &used, &g).unwrap();
        assert_eq!(a.valuation(), Valuation::Finite(g));
        let q = Model::new(ResidueInstance::QId, GroupInstance::ZTrivial);
        assert!(fresh_generic(&q, &used, &GroupElement::zero()).is_err());
    }
}
