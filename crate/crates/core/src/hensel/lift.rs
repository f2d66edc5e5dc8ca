//! Newton-style lifting of approximate roots.

use serde::Serialize;

use super::configuration::{find_configuration, known_value, Configuration};
use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::hahn::{HahnSeries, Model, Valuation};
use crate::instances::{linsolve, ExtValue, GroupElement, RatFunc};

pub const DEFAULT_MAX_ITERATIONS: usize = 64;

/// When the iteration may stop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopRule {
    /// `v(p(b)) ≥ target` and the next correction would have value `≥ target`,
    /// so `b` agrees with a true root below `target`. At least one correction
    /// is applied unless the start is an exact root.
    RootPrecision,
    /// Only `v(p(b)) ≥ target`.
    Residual,
}

#[derive(Clone, Copy, Debug)]
pub struct LiftOptions {
    pub max_iterations: usize,
    pub stop: StopRule,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions {
            max_iterations: DEFAULT_MAX_ITERATIONS,
            stop: StopRule::RootPrecision,
        }
    }
}

/// One Newton round, recorded for `--trace`.
#[derive(Clone, Debug, Serialize)]
pub struct LiftStep {
    pub iteration: usize,
    /// `v(p(a_cur))` before the correction.
    pub value: String,
    pub gamma: String,
    pub min_set: Vec<usize>,
    /// `α_0, ..., α_n` of the residue equation.
    pub alphas: Vec<String>,
    pub solvable: bool,
    pub z: Option<String>,
}

#[derive(Clone, Debug)]
pub struct LiftOutcome {
    pub root: HahnSeries,
    /// `γ(p, a)` at the starting point, absent when `a` was already a root.
    pub gamma: Option<GroupElement>,
    /// `v(p(a_cur))` at every visited point, starting with `a`.
    pub values: Vec<ExtValue>,
    pub steps: Vec<LiftStep>,
}

impl LiftOutcome {
    pub fn values_strictly_increase(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn trace_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.steps).expect("plain struct")
    }
}

pub fn lift_root(
    model: &Model,
    p: &DiffPoly<HahnSeries>,
    a: &HahnSeries,
    target: &GroupElement,
) -> Result<HahnSeries> {
    lift_root_with(model, p, a, target, LiftOptions::default()).map(|o| o.root)
}

/// Lifts `a` towards a root of `p`. When `p' = 0` the polynomial is first
/// replaced by `S(p)^{σ^{-m}}`, which has the same zeros and slope.
pub fn lift_root_with(
    model: &Model,
    p: &DiffPoly<HahnSeries>,
    a: &HahnSeries,
    target: &GroupElement,
    opts: LiftOptions,
) -> Result<LiftOutcome> {
    if p.is_constant() {
        return Err(Error::ConstantInput);
    }
    if p.partial(model, 0).is_zero() {
        let (m, s) = p.shift_normalize()?;
        let q = s.coeff_shift(model, -(m as i64))?;
        // p(b) = σ^m(q(b)), so v(q(b)) ≥ Valσ^{-m}(target) suffices
        let qt = model.val_sigma(target, -(m as i64))?;
        return newton(model, &q, a, &qt, target, opts);
    }
    newton(model, p, a, target, target, opts)
}

fn newton(
    model: &Model,
    p: &DiffPoly<HahnSeries>,
    a: &HahnSeries,
    target: &GroupElement,
    gamma_target: &GroupElement,
    opts: LiftOptions,
) -> Result<LiftOutcome> {
    let n = p.order().expect("non-constant");
    let mut cur = a.clone();
    let mut gamma0 = None;
    let mut values = Vec::new();
    let mut steps = Vec::new();
    for iteration in 0..=opts.max_iterations {
        let pa = p.evaluate(model, &cur);
        let value = match pa.valuation() {
            Valuation::Infinity => ExtValue::Infinity,
            Valuation::Finite(v) => ExtValue::Finite(v),
            Valuation::BelowPrecision(d) => {
                if opts.stop == StopRule::Residual && &d >= target {
                    break;
                }
                return Err(Error::PrecisionLoss(format!(
                    "v(p(a)) >= {} is all that is known at iteration {}",
                    d, iteration
                )));
            }
        };
        values.push(value.clone());
        let ExtValue::Finite(v) = value else {
            break;
        };
        if opts.stop == StopRule::Residual && &v >= target {
            break;
        }
        let conf = find_configuration(model, p, &cur)?;
        if gamma0.is_none() {
            gamma0 = Some(conf.gamma.clone());
        }
        // a non-root start always takes one step, so v(b - a) = γ(p, a)
        if iteration > 0 && &v >= target && &conf.gamma >= gamma_target {
            break;
        }
        if iteration == opts.max_iterations {
            return Err(Error::NonTermination {
                iterations: opts.max_iterations,
                last_value: v.to_string(),
            });
        }
        let (step, eps) = newton_step(model, p, n, &cur, &pa, &v, &conf, iteration)?;
        steps.push(step);
        cur = &cur + &eps;
    }
    Ok(LiftOutcome {
        root: cur,
        gamma: gamma0,
        values,
        steps,
    })
}

/// The correction `ε = z·t^γ` with `1 + Σ_{j ∈ min_set} c_j σ^j(z) = 0`.
#[allow(clippy::too_many_arguments)]
fn newton_step(
    model: &Model,
    p: &DiffPoly<HahnSeries>,
    n: usize,
    cur: &HahnSeries,
    pa: &HahnSeries,
    v: &GroupElement,
    conf: &Configuration,
    iteration: usize,
) -> Result<(LiftStep, HahnSeries)> {
    let lead = pa.leading_term().expect("finite value").1.clone();
    let mut alphas = vec![RatFunc::zero(); n + 1];
    for &j in &conf.min_set {
        let pj = p.partial(model, j).evaluate(model, cur);
        known_value(&pj, "p_j(a)")?;
        alphas[j] = pj.leading_term().expect("finite value").1 / &lead;
    }
    let mut step = LiftStep {
        iteration,
        value: v.to_string(),
        gamma: conf.gamma.to_string(),
        min_set: conf.min_set.clone(),
        alphas: alphas.iter().map(|a| a.to_string()).collect(),
        solvable: false,
        z: None,
    };
    let z = linsolve::res_linsolve(model.k(), &alphas).map_err(|e| match e {
        Error::NoSolutionFound | Error::AllZero => Error::ResidueStepUnsolvable(format!(
            "1 + Σ α_j σ^j(z) = 0 with α = ({})",
            step.alphas.join(", ")
        )),
        other => other,
    })?;
    step.solvable = true;
    step.z = Some(z.to_string());
    Ok((step, HahnSeries::monomial(z, conf.gamma.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{GroupInstance, MultiIndex, ResidueInstance};

    fn q(n: i64, d: i64) -> GroupElement {
        GroupElement::from_ratio(n, d)
    }

    fn t(e: GroupElement) -> HahnSeries {
        HahnSeries::t_pow(e)
    }

    /// `σ(X) - 1 - t·X`
    fn example(m: &Model) -> DiffPoly<HahnSeries> {
        DiffPoly::from_terms(
            m,
            [
                (MultiIndex::unit(1), HahnSeries::one()),
                (MultiIndex::unit(0), -&t(q(1, 1))),
                (MultiIndex::zero(), HahnSeries::from_int(-1)),
            ],
        )
    }

    #[test]
    fn lifts_the_worked_example() {
        let m = Model::new(ResidueInstance::QId, GroupInstance::ZhalfDouble);
        let p = example(&m);
        let out = lift_root_with(
            &m,
            &p,
            &HahnSeries::one(),
            &q(15, 16),
            LiftOptions::default(),
        )
        .unwrap();
        let want = [q(0, 1), q(1, 2), q(3, 4), q(7, 8)]
            .into_iter()
            .fold(HahnSeries::zero(), |acc, e| &acc + &t(e));
        assert_eq!(out.root, want);
        assert_eq!(out.root.to_string(), "1 + T^(1/2) + T^(3/4) + T^(7/8)");
        assert_eq!(out.gamma, Some(q(1, 2)));
        assert!(out.values_strictly_increase());
        let v = p.evaluate(&m, &out.root).valuation();
        assert_eq!(v, Valuation::Finite(q(15, 8)));
        assert_eq!(
            (&out.root - &HahnSeries::one()).valuation(),
            Valuation::Finite(q(1, 2))
        );
    }

    #[test]
    fn exact_root_is_returned_unchanged() {
        let m = Model::new(ResidueInstance::QId, GroupInstance::ZTrivial);
        // σ(X) - X vanishes at every constant
        let p = DiffPoly::from_terms(
            &m,
            [
                (MultiIndex::unit(1), HahnSeries::one()),
                (MultiIndex::unit(0), HahnSeries::from_int(-1)),
            ],
        );
        let a = HahnSeries::from_int(5);
        assert_eq!(lift_root(&m, &p, &a, &q(3, 1)).unwrap(), a);
    }

    #[test]
    fn pure_shift_equation_needs_preimages() {
        let m = Model::new(ResidueInstance::ShiftQ, GroupInstance::ZDouble);
        let p = DiffPoly::from_terms(
            &m,
            [
                (MultiIndex::unit(1), HahnSeries::one()),
                (MultiIndex::zero(), -&HahnSeries::constant(RatFunc::var(0))),
            ],
        );
        assert!(matches!(
            lift_root(&m, &p, &HahnSeries::zero(), &q(1, 1)),
            Err(Error::NoPreimage(_))
        ));
    }
}
