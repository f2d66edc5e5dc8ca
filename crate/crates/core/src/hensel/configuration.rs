//! Detection of σ-henselian configurations and the slope `γ(p, a)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::hahn::{HahnSeries, Model};
use crate::instances::{index_action, Direction, ExtValue, GroupElement, MultiIndex};

/// A witness that `p` is in σ-henselian configuration at `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    /// The index `i` attaining `v(p(a)) = v(p_i(a)) + Valσ^i(γ)`.
    pub i: usize,
    pub gamma: GroupElement,
    /// Every `j` with `v(p_j(a)) + Valσ^j(γ) = v(p(a))`.
    pub min_set: Vec<usize>,
}

#[derive(Serialize)]
struct ConfigurationJson {
    i: usize,
    gamma: String,
    min_set: Vec<usize>,
}

impl Configuration {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ConfigurationJson {
            i: self.i,
            gamma: self.gamma.to_string(),
            min_set: self.min_set.clone(),
        })
        .expect("plain struct")
    }
}

/// `v(x)` or a precision error naming what was being evaluated.
pub(crate) fn known_value(x: &HahnSeries, what: &str) -> Result<ExtValue> {
    x.value().ok_or_else(|| {
        Error::PrecisionLoss(format!(
            "v({}) undetermined: {} has no visible term",
            what, x
        ))
    })
}

/// Values `v(p_J(a))` for every `J` in the derivative support, plus `J = 0`.
pub(crate) struct TaylorValues {
    values: BTreeMap<MultiIndex, ExtValue>,
}

impl TaylorValues {
    pub(crate) fn compute(model: &Model, p: &DiffPoly<HahnSeries>, a: &HahnSeries) -> Result<Self> {
        let mut values = BTreeMap::new();
        values.insert(
            MultiIndex::zero(),
            known_value(&p.evaluate(model, a), "p(a)")?,
        );
        for j in p.derivative_support() {
            let pj = p.taylor_coeff(model, &j);
            let v = known_value(&pj.evaluate(model, a), &format!("p_{}(a)", j))?;
            values.insert(j, v);
        }
        Ok(TaylorValues { values })
    }

    /// `v(p_J(a))`, reading `∞` when `p_J` is the zero polynomial.
    pub(crate) fn get(&self, j: &MultiIndex) -> ExtValue {
        self.values.get(j).cloned().unwrap_or(ExtValue::Infinity)
    }
}

pub fn find_configuration(
    model: &Model,
    p: &DiffPoly<HahnSeries>,
    a: &HahnSeries,
) -> Result<Configuration> {
    let n = p.order().ok_or(Error::ConstantInput)?;
    let tv = TaylorValues::compute(model, p, a)?;
    let v0 = match tv.get(&MultiIndex::zero()) {
        ExtValue::Finite(v) => v,
        ExtValue::Infinity => return Err(Error::NotInConfiguration),
    };
    let support = p.derivative_support();
    let mut found: Option<Configuration> = None;
    for i in 0..=n {
        let ExtValue::Finite(vi) = tv.get(&MultiIndex::unit(i)) else {
            continue;
        };
        let Ok(gamma) = model.group.map(&(&v0 - &vi), i as u32, Direction::Backward) else {
            continue;
        };
        let Some(min_set) = condition_one(model, &tv, n, &v0, &gamma) else {
            continue;
        };
        if !condition_two(model, &tv, &support, &gamma) {
            continue;
        }
        match &found {
            None => found = Some(Configuration { i, gamma, min_set }),
            Some(c) if c.gamma == gamma => {}
            Some(c) => {
                return Err(Error::AmbiguousGamma(
                    c.gamma.to_string(),
                    gamma.to_string(),
                ))
            }
        }
    }
    found.ok_or(Error::NotInConfiguration)
}

/// `v(p(a)) ≤ v(p_j(a)) + Valσ^j(γ)` for all `j`; returns the indices of equality.
fn condition_one(
    model: &Model,
    tv: &TaylorValues,
    n: usize,
    v0: &GroupElement,
    gamma: &GroupElement,
) -> Option<Vec<usize>> {
    let mut min_set = Vec::new();
    let mut g = gamma.clone();
    for j in 0..=n {
        if j > 0 {
            g = model.group.sigma(&g);
        }
        match tv.get(&MultiIndex::unit(j)).add(&g) {
            ExtValue::Infinity => {}
            ExtValue::Finite(w) => {
                if &w < v0 {
                    return None;
                }
                if &w == v0 {
                    min_set.push(j);
                }
            }
        }
    }
    Some(min_set)
}

/// `v(p_J(a)) + J(γ) < v(p_K(a)) + K(γ)` for `0 ≠ J < K` in the support.
fn condition_two(
    model: &Model,
    tv: &TaylorValues,
    support: &[MultiIndex],
    gamma: &GroupElement,
) -> bool {
    let shifted: Vec<ExtValue> = support
        .iter()
        .map(|j| tv.get(j).add(&index_action(model.g(), j, gamma).0))
        .collect();
    for (x, j) in support.iter().enumerate() {
        for (y, k) in support.iter().enumerate() {
            if x != y && k.dominates(j) && shifted[x] >= shifted[y] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{GroupInstance, RatFunc, ResidueInstance};

    fn t(e: GroupElement) -> HahnSeries {
        HahnSeries::t_pow(e)
    }

    /// `σ(X) - c1·X - c0`.
    fn additive(model: &Model, c1: HahnSeries, c0: HahnSeries) -> DiffPoly<HahnSeries> {
        DiffPoly::from_terms(
            model,
            [
                (MultiIndex::unit(1), HahnSeries::one()),
                (MultiIndex::unit(0), -&c1),
                (MultiIndex::zero(), -&c0),
            ],
        )
    }

    #[test]
    fn additive_equation_at_a_non_root_residue() {
        let m = Model::new(ResidueInstance::ShiftQInv, GroupInstance::ZhalfDouble);
        let p = additive(
            &m,
            t(GroupElement::from_int(1)),
            HahnSeries::constant(RatFunc::var(0)),
        );
        let b = HahnSeries::constant(RatFunc::var(1));
        let c = find_configuration(&m, &p, &b).unwrap();
        assert_eq!((c.i, c.gamma.clone()), (1, GroupElement::zero()));
        assert_eq!(c.min_set, vec![1]);
    }

    #[test]
    fn slope_one_half() {
        let m = Model::new(ResidueInstance::QId, GroupInstance::ZhalfDouble);
        let p = additive(&m, t(GroupElement::from_int(1)), HahnSeries::one());
        let c = find_configuration(&m, &p, &HahnSeries::one()).unwrap();
        assert_eq!((c.i, c.gamma), (1, GroupElement::from_ratio(1, 2)));
    }

    #[test]
    fn square_is_not_in_configuration() {
        let m = Model::new(ResidueInstance::QId, GroupInstance::ZTrivial);
        let p = DiffPoly::from_terms(&m, [(MultiIndex::new(vec![2]), HahnSeries::one())]);
        assert_eq!(
            find_configuration(&m, &p, &HahnSeries::one()),
            Err(Error::NotInConfiguration)
        );
    }
}
