//! Evidence about pseudo-Cauchy sequences from a finite prefix.

use serde::Serialize;

use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::hahn::{HahnSeries, Model, Tri, Valuation};
use crate::instances::ExtValue;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyEvidence {
    pub poly: String,
    /// `v(p(a_ρ))` along the prefix.
    pub values: Vec<String>,
    /// Strictly increasing on the window: evidence that `p` lies in `W`.
    pub increasing: String,
    /// The common value of the trailing entries, when they agree.
    pub stabilized_at: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PcReport {
    pub radii: Vec<String>,
    pub pseudo_cauchy: String,
    /// One verdict per supplied candidate limit.
    pub limits: Vec<String>,
    pub polys: Vec<PolyEvidence>,
}

fn value(x: &HahnSeries) -> Option<ExtValue> {
    x.value()
}

fn fmt_value(v: &Valuation) -> String {
    match v {
        Valuation::BelowPrecision(d) => format!(">= {}", d),
        other => other.to_string(),
    }
}

/// `a < b` with `None` for an undetermined value.
fn lt(a: &Option<ExtValue>, b: &Option<ExtValue>) -> Tri {
    match (a, b) {
        (Some(x), Some(y)) => Tri::from_bool(x < y),
        _ => Tri::Unknown,
    }
}

fn all(it: impl IntoIterator<Item = Tri>) -> Tri {
    let mut out = Tri::Yes;
    for t in it {
        match t {
            Tri::No => return Tri::No,
            Tri::Unknown => out = Tri::Unknown,
            Tri::Yes => {}
        }
    }
    out
}

pub fn pc_analyze(
    model: &Model,
    prefix: &[HahnSeries],
    polys: &[DiffPoly<HahnSeries>],
    candidates: &[HahnSeries],
) -> Result<PcReport> {
    let n = prefix.len();
    if n < 3 {
        return Err(Error::TooShort(n));
    }
    let radii: Vec<Valuation> = prefix
        .windows(2)
        .map(|w| (&w[1] - &w[0]).valuation())
        .collect();
    let mut checks = Vec::new();
    for r0 in 0..n {
        for r1 in r0 + 1..n {
            for r2 in r1 + 1..n {
                let near = value(&(&prefix[r2] - &prefix[r1]));
                let far = value(&(&prefix[r1] - &prefix[r0]));
                checks.push(lt(&far, &near));
            }
        }
    }
    let pseudo_cauchy = all(checks);
    let limits = candidates
        .iter()
        .map(|a| {
            all(radii.iter().enumerate().map(|(rho, g)| {
                match (value(&(a - &prefix[rho])), g.known()) {
                    (Some(x), Some(y)) => Tri::from_bool(x == y),
                    _ => Tri::Unknown,
                }
            }))
            .to_string()
        })
        .collect();
    let polys = polys
        .iter()
        .map(|p| {
            let vals: Vec<Valuation> = prefix
                .iter()
                .map(|a| p.evaluate(model, a).valuation())
                .collect();
            let known: Vec<Option<ExtValue>> = vals.iter().map(|v| v.known()).collect();
            let increasing = all(known.windows(2).map(|w| lt(&w[0], &w[1])));
            let stabilized_at = match &known[n - 2..] {
                [Some(x), Some(y)] if x == y => Some(x.to_string()),
                _ => None,
            };
            PolyEvidence {
                poly: p.to_string(),
                values: vals.iter().map(fmt_value).collect(),
                increasing: increasing.to_string(),
                stabilized_at,
            }
        })
        .collect();
    Ok(PcReport {
        radii: radii.iter().map(fmt_value).collect(),
        pseudo_cauchy: pseudo_cauchy.to_string(),
        limits,
        polys,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{GroupElement, GroupInstance, ResidueInstance};

    fn t(n: i64) -> HahnSeries {
        HahnSeries::t_pow(GroupElement::from_int(n))
    }

    #[test]
    fn prefix_example() {
        let m = Model::new(ResidueInstance::QId, GroupInstance::ZTrivial);
        let a1 = t(1);
        let a2 = &a1 + &t(2);
        let a3 = &a2 + &t(3);
        let prefix = vec![HahnSeries::zero(), a1, a2, a3.clone()];
        let x = DiffPoly::x(&m);
        let r = pc_analyze(&m, &prefix, &[x], &[a3]).unwrap();
        assert_eq!(r.radii, vec!["1", "2", "3"]);
        assert_eq!(r.pseudo_cauchy, "yes");
        assert_eq!(r.limits, vec!["yes"]);
        assert_eq!(r.polys[0].values, vec!["oo", "1", "1", "1"]);
        assert_eq!(r.polys[0].increasing, "no");
        assert_eq!(r.polys[0].stabilized_at.as_deref(), Some("1"));
    }

    #[test]
    fn too_short() {
        let m = Model::new(ResidueInstance::QId, GroupInstance::ZTrivial);
        assert_eq!(
            pc_analyze(&m, &[t(1), t(2)], &[], &[]),
            Err(Error::TooShort(2))
        );
    }
}
