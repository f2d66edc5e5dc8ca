//! The additive equation `σ(b) - εb = a` and approximation from the σ-image.

use super::lift::{lift_root_with, LiftOptions, LiftOutcome, StopRule};
use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::hahn::{HahnSeries, Model, Valuation};
use crate::instances::{GroupElement, MultiIndex, RatFunc};

/// `σ(X) - εX - a`.
pub fn additive_poly(model: &Model, eps: &HahnSeries, a: &HahnSeries) -> DiffPoly<HahnSeries> {
    DiffPoly::from_terms(
        model,
        [
            (MultiIndex::unit(1), HahnSeries::one()),
            (MultiIndex::unit(0), -eps),
            (MultiIndex::zero(), -a),
        ],
    )
}

pub fn solve_additive(
    model: &Model,
    eps: &HahnSeries,
    a: &HahnSeries,
    target: &GroupElement,
) -> Result<HahnSeries> {
    solve_additive_with(model, eps, a, target, LiftOptions::default()).map(|o| o.root)
}

/// `b ∈ O` with `v(σ(b) - εb - a) ≥ target`, for `v(ε) > 0` and `v(a) ≥ 0`.
///
/// Starts from a constant `β` whose residue is not `Resσ^{-1}(res a)`, where
/// the polynomial is in configuration with slope 0, and lifts from there.
pub fn solve_additive_with(
    model: &Model,
    eps: &HahnSeries,
    a: &HahnSeries,
    target: &GroupElement,
    opts: LiftOptions,
) -> Result<LiftOutcome> {
    match eps.valuation() {
        Valuation::Finite(v) if v.is_positive() => {}
        Valuation::Infinity => {}
        Valuation::BelowPrecision(d) if d.is_positive() => {}
        other => {
            return Err(Error::PreconditionViolation(format!(
                "need v(ε) > 0, have v(ε) = {}",
                other
            )))
        }
    }
    let res_a = a.residue().map_err(|e| match e {
        Error::NegativeValuation => {
            Error::PreconditionViolation(format!("need v(a) ≥ 0, have a = {}", a))
        }
        other => other,
    })?;
    let p = additive_poly(model, eps, a);
    if a.is_exact_zero() {
        return lift_root_with(model, &p, &HahnSeries::zero(), target, opts);
    }
    let beta = (0..3)
        .map(RatFunc::from_int)
        .find(|b| model.residue.sigma(b) != res_a)
        .expect("three distinct constants");
    let opts = LiftOptions {
        stop: StopRule::Residual,
        ..opts
    };
    lift_root_with(model, &p, &HahnSeries::constant(beta), target, opts)
}

/// `b` with `v(σ(b) - a) > γ`.
pub fn approximate_preimage(
    model: &Model,
    a: &HahnSeries,
    gamma: &GroupElement,
) -> Result<HahnSeries> {
    if a.is_exact() && a.terms().len() <= 1 {
        if let Ok(b) = model.sigma_inv(a) {
            return Ok(b);
        }
    }
    if !model.is_inversive() {
        return Err(Error::PreconditionViolation(format!(
            "approximation from the σ-image needs an inversive model, have ({}, {})",
            model.residue.name(),
            model.group.name()
        )));
    }
    let v = match a.valuation() {
        Valuation::Infinity => return Ok(HahnSeries::zero()),
        Valuation::BelowPrecision(d) => {
            if &d > gamma {
                return Ok(HahnSeries::zero());
            }
            return Err(Error::PrecisionLoss(format!(
                "a = {} is not known beyond {}",
                a, gamma
            )));
        }
        Valuation::Finite(v) => v,
    };
    if v.is_negative() {
        // rescale by e = t^η with Valσ(η) = -v(a)
        let eta = model.val_sigma(&-&v, -1)?;
        let shift = model.group.sigma(&eta);
        let a1 = a.mul_monomial(&RatFunc::one(), &shift);
        let g1 = gamma + &shift;
        let b1 = approximate_preimage(model, &a1, &g1)?;
        return Ok(b1.mul_monomial(&RatFunc::one(), &-&eta));
    }
    let w = GroupElement::max(&v, gamma) + &GroupElement::from_int(1);
    let eps = HahnSeries::t_pow(w.clone());
    solve_additive(model, &eps, a, &w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{GroupInstance, ResidueInstance};

    fn g(n: i64) -> GroupElement {
        GroupElement::from_int(n)
    }

    fn t(e: GroupElement) -> HahnSeries {
        HahnSeries::t_pow(e)
    }

    fn model() -> Model {
        Model::new(ResidueInstance::ShiftQInv, GroupInstance::ZhalfDouble)
    }

    #[test]
    fn solve_additive_zero_right_hand_side() {
        let m = model();
        let b = solve_additive(&m, &t(g(1)), &HahnSeries::zero(), &g(2)).unwrap();
        assert_eq!(b, HahnSeries::zero());
    }

    #[test]
    fn solve_additive_rejects_unit_epsilon() {
        let m = model();
        assert!(matches!(
            solve_additive(&m, &HahnSeries::one(), &HahnSeries::one(), &g(2)),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn solve_additive_example_has_no_finite_solution_at_order_two() {
        // the root is 1 + Σ_k t^{1 - 2^{-k}}: its support accumulates below 1,
        // so no finite b reaches v(σ(b) - tb - 1) ≥ 2
        let m = model();
        let out = solve_additive(&m, &t(g(1)), &HahnSeries::one(), &g(2));
        assert!(matches!(out, Err(Error::NonTermination { .. })));
    }

    #[test]
    fn solve_additive_reaches_reachable_targets() {
        let m = model();
        let a = &HahnSeries::constant(RatFunc::var(0)) + &t(GroupElement::from_ratio(1, 4));
        let eps = t(g(3));
        let b = solve_additive(&m, &eps, &a, &g(3)).unwrap();
        let r = &(&m.sigma(&b) - &(&eps * &b)) - &a;
        assert!(r.valuation().lower_bound() >= crate::instances::ExtValue::Finite(g(3)));
        assert_eq!(m.residue.sigma(&b.residue().unwrap()), a.residue().unwrap());
    }

    #[test]
    fn approximate_preimage_examples() {
        let m = model();
        let b = approximate_preimage(&m, &HahnSeries::one(), &g(3)).unwrap();
        let d = &m.sigma(&b) - &HahnSeries::one();
        assert!(d.valuation().lower_bound() > crate::instances::ExtValue::Finite(g(3)));

        let delta = GroupElement::from_ratio(3, 4);
        let a = t(m.group.sigma(&delta));
        assert_eq!(approximate_preimage(&m, &a, &g(7)).unwrap(), t(delta));

        let a = &t(g(-3)) + &HahnSeries::constant(RatFunc::var(2));
        let b = approximate_preimage(&m, &a, &g(2)).unwrap();
        let d = &m.sigma(&b) - &a;
        assert!(d.valuation().lower_bound() > crate::instances::ExtValue::Finite(g(2)));
    }
}
