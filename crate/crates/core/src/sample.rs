//! Seeded random elements for property checks and demos.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::diffpoly::{DiffPoly, DifferenceRing};
use crate::hahn::{HahnSeries, Precision};
use crate::instances::{GroupElement, GroupInstance, MultiIndex, RatFunc, ResidueInstance};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A small element of `g` in the given instance.
pub fn group_element<R: Rng>(rng: &mut R, g: GroupInstance) -> GroupElement {
    match g {
        GroupInstance::ZTrivial | GroupInstance::ZDouble => {
            GroupElement::from_int(rng.gen_range(-4..=4))
        }
        GroupInstance::ZhalfDouble => {
            GroupElement::from_ratio(rng.gen_range(-8..=8), 1 << rng.gen_range(0..=3))
        }
        GroupInstance::ZxiOmega | GroupInstance::LaurentOmega => {
            let low = if g == GroupInstance::ZxiOmega {
                0
            } else {
                rng.gen_range(-1..=0)
            };
            let len = rng.gen_range(1..=3);
            let coeffs = (0..len).map(|_| q(rng.gen_range(-3..=3), 1)).collect();
            GroupElement::from_coeffs(low, coeffs)
        }
    }
}

/// A group element `≥ 0`.
pub fn nonnegative<R: Rng>(rng: &mut R, g: GroupInstance) -> GroupElement {
    let x = group_element(rng, g);
    if x.is_negative() {
        -x
    } else {
        x
    }
}

/// A group element `> 0`.
pub fn positive<R: Rng>(rng: &mut R, g: GroupInstance) -> GroupElement {
    loop {
        let x = nonnegative(rng, g);
        if x.is_positive() {
            return x;
        }
    }
}

fn variable_range(k: ResidueInstance) -> Option<(i64, i64)> {
    match k {
        ResidueInstance::QId => None,
        ResidueInstance::ShiftQ => Some((0, 3)),
        ResidueInstance::ShiftQInv => Some((-2, 3)),
    }
}

fn small_poly<R: Rng>(rng: &mut R, k: ResidueInstance) -> RatFunc {
    let Some((lo, hi)) = variable_range(k) else {
        return RatFunc::from_int(rng.gen_range(-5..=5));
    };
    let mut out = RatFunc::from_int(rng.gen_range(-3..=3));
    for _ in 0..rng.gen_range(0..=2) {
        let mut m =
            RatFunc::from_int(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
        for _ in 0..rng.gen_range(1..=2) {
            m = &m * &RatFunc::var(rng.gen_range(lo..=hi));
        }
        out = &out + &m;
    }
    out
}

/// A residue element, occasionally with a denominator.
pub fn residue<R: Rng>(rng: &mut R, k: ResidueInstance) -> RatFunc {
    let num = small_poly(rng, k);
    if k == ResidueInstance::QId {
        return &num / &RatFunc::from_int(rng.gen_range(1..=4));
    }
    if rng.gen_bool(0.25) {
        let den = small_poly(rng, k);
        if !den.is_zero() {
            return &num / &den;
        }
    }
    num
}

pub fn nonzero_residue<R: Rng>(rng: &mut R, k: ResidueInstance) -> RatFunc {
    loop {
        let x = residue(rng, k);
        if !x.is_zero() {
            return x;
        }
    }
}

/// An exact series with up to `max_terms` terms, exponents drawn from the group.
pub fn series<R: Rng>(
    rng: &mut R,
    k: ResidueInstance,
    g: GroupInstance,
    max_terms: usize,
) -> HahnSeries {
    let n = rng.gen_range(0..=max_terms);
    HahnSeries::from_terms(
        (0..n).map(|_| (group_element(rng, g), residue(rng, k))),
        Precision::Exact,
    )
}

/// An exact series with every exponent `≥ 0`.
pub fn integral_series<R: Rng>(
    rng: &mut R,
    k: ResidueInstance,
    g: GroupInstance,
    max_terms: usize,
) -> HahnSeries {
    let n = rng.gen_range(0..=max_terms);
    HahnSeries::from_terms(
        (0..n).map(|_| (nonnegative(rng, g), residue(rng, k))),
        Precision::Exact,
    )
}

pub fn nonzero_series<R: Rng>(
    rng: &mut R,
    k: ResidueInstance,
    g: GroupInstance,
    max_terms: usize,
) -> HahnSeries {
    loop {
        let n = rng.gen_range(1..=max_terms.max(1));
        let x = HahnSeries::from_terms(
            (0..n).map(|_| (group_element(rng, g), residue(rng, k))),
            Precision::Exact,
        );
        if !x.is_exact_zero() {
            return x;
        }
    }
}

/// A random multi-index of order `≤ max_order` and total degree `≤ max_deg`.
pub fn multi_index<R: Rng>(rng: &mut R, max_order: usize, max_deg: u32) -> MultiIndex {
    let mut e = vec![0u32; max_order + 1];
    let total = rng.gen_range(0..=max_deg);
    for _ in 0..total {
        e[rng.gen_range(0..=max_order)] += 1;
    }
    MultiIndex::new(e)
}

/// A difference polynomial with up to `max_terms` terms.
pub fn diffpoly<D, R, F>(
    rng: &mut R,
    ring: &D,
    max_order: usize,
    max_deg: u32,
    max_terms: usize,
    mut coeff: F,
) -> DiffPoly<D::Elem>
where
    D: DifferenceRing,
    R: Rng,
    F: FnMut(&mut R) -> D::Elem,
{
    let n = rng.gen_range(1..=max_terms);
    let terms: Vec<(MultiIndex, D::Elem)> = (0..n)
        .map(|_| {
            let i = multi_index(rng, max_order, max_deg);
            (i, coeff(rng))
        })
        .collect();
    DiffPoly::from_terms(ring, terms)
}
