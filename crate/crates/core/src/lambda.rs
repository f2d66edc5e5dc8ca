//! λ-functions: coefficients of `y` in the σ(K)-span of a tuple.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hahn::{HahnSeries, Model};
use crate::instances::linalg::{self, Solution};
use crate::instances::{MPoly, RatFunc, ResidueDifferenceField, ResidueInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LambdaReason {
    #[serde(rename = "dependent-xs")]
    DependentXs,
    #[serde(rename = "y-not-in-span")]
    YNotInSpan,
}

impl LambdaReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            LambdaReason::DependentXs => "dependent-xs",
            LambdaReason::YNotInSpan => "y-not-in-span",
        }
    }
}

/// `λ_1, ..., λ_n` with `y = Σ σ(λ_i)·x_i`, or zeros and the reason.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaResult {
    pub coeffs: Vec<RatFunc>,
    pub reason: Option<LambdaReason>,
}

impl LambdaResult {
    pub fn is_trivial(&self) -> bool {
        self.reason.is_some()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lambda": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "reason": self.reason,
        })
    }
}

/// The linear-algebra witness behind a λ computation.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanMembership {
    pub independent: bool,
    pub in_span: bool,
    /// `m_i ∈ σ(K)` with `y = Σ m_i·x_i`, when `y` is in the span.
    pub multipliers: Option<Vec<RatFunc>>,
    /// Rank of the coordinate matrix of `xs` over σ(K).
    pub rank: usize,
}

impl SpanMembership {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "independent": self.independent,
            "in_span": self.in_span,
            "multipliers": self
                .multipliers
                .as_ref()
                .map(|m| m.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            "rank": self.rank,
        })
    }
}

/// Coordinates of each element over σ(K). Columns are the elements.
fn coordinates(k: ResidueInstance, elems: &[&RatFunc]) -> Vec<Vec<RatFunc>> {
    match k {
        ResidueInstance::QId | ResidueInstance::ShiftQInv => {
            vec![elems.iter().map(|&e| e.clone()).collect()]
        }
        ResidueInstance::ShiftQ => {
            // clear denominators, then read off the coefficients of u0^k
            let mut dens: Vec<MPoly> = Vec::new();
            for e in elems {
                if !e.denom().is_one() && !dens.contains(e.denom()) {
                    dens.push(e.denom().clone());
                }
            }
            let d = dens.iter().fold(MPoly::one(), |acc, x| &acc * x);
            let cols: Vec<Vec<MPoly>> = elems
                .iter()
                .map(|e| {
                    let cofactor = d.div_exact(e.denom()).expect("denominator divides product");
                    (e.numer() * &cofactor).to_univariate(0)
                })
                .collect();
            let rows = cols.iter().map(|c| c.len()).max().unwrap_or(0);
            (0..rows)
                .map(|r| {
                    cols.iter()
                        .map(|c| {
                            c.get(r)
                                .cloned()
                                .map_or_else(RatFunc::zero, RatFunc::from_poly)
                        })
                        .collect()
                })
                .collect()
        }
    }
}

fn check_all(k: ResidueInstance, xs: &[RatFunc], y: &RatFunc) -> Result<()> {
    for e in xs.iter().chain(std::iter::once(y)) {
        k.check(e)?;
    }
    Ok(())
}

pub fn sigma_span_membership(
    k: ResidueInstance,
    xs: &[RatFunc],
    y: &RatFunc,
) -> Result<SpanMembership> {
    check_all(k, xs, y)?;
    let n = xs.len();
    let mut all: Vec<&RatFunc> = xs.iter().collect();
    all.push(y);
    let coords = coordinates(k, &all);
    let a: Vec<Vec<RatFunc>> = coords.iter().map(|r| r[..n].to_vec()).collect();
    let b: Vec<RatFunc> = coords.iter().map(|r| r[n].clone()).collect();
    let rank = if n == 0 { 0 } else { linalg::rank(&a) };
    let (in_span, multipliers) = match linalg::solve(&a, &b) {
        Solution::Inconsistent => (false, None),
        Solution::Unique(m) | Solution::Underdetermined(m) => (true, Some(m)),
    };
    Ok(SpanMembership {
        independent: rank == n,
        in_span,
        multipliers,
        rank,
    })
}

/// λ over one of the residue fields.
pub fn lambda(k: ResidueInstance, xs: &[RatFunc], y: &RatFunc) -> Result<LambdaResult> {
    let m = sigma_span_membership(k, xs, y)?;
    let zeros = || vec![RatFunc::zero(); xs.len()];
    if !m.independent {
        return Ok(LambdaResult {
            coeffs: zeros(),
            reason: Some(LambdaReason::DependentXs),
        });
    }
    let Some(mult) = m.multipliers else {
        return Ok(LambdaResult {
            coeffs: zeros(),
            reason: Some(LambdaReason::YNotInSpan),
        });
    };
    let coeffs = mult
        .iter()
        .map(|c| {
            k.sigma_inv(c).ok_or_else(|| {
                Error::NoPreimage(format!("{} is not in the image of σ on {}", c, k.name()))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LambdaResult {
        coeffs,
        reason: None,
    })
}

/// Residue of an exact series supported at exponent 0.
fn constant_part(a: &HahnSeries) -> Option<RatFunc> {
    if !a.is_exact() {
        return None;
    }
    match a.terms() {
        [] => Some(RatFunc::zero()),
        [(e, c)] if e.is_zero() => Some(c.clone()),
        _ => None,
    }
}

/// λ over a Hahn model. Only exact constant series are supported.
pub fn lambda_series(model: &Model, xs: &[HahnSeries], y: &HahnSeries) -> Result<LambdaResult> {
    let k = ResidueInstance::from_name(model.residue.name())
        .map_err(|_| Error::UnsupportedCarrier(model.residue.name().to_string()))?;
    let lower = |a: &HahnSeries| {
        constant_part(a).ok_or_else(|| {
            Error::UnsupportedCarrier(format!(
                "λ needs exact series supported at exponent 0, have {}",
                a
            ))
        })
    };
    let xs = xs.iter().map(lower).collect::<Result<Vec<_>>>()?;
    lambda(k, &xs, &lower(y)?)
}
