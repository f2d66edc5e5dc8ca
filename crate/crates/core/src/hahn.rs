//! Truncated Hahn series `k((Γ))` and the models `(k((Γ)), σ)`.
//!
//! A series is a finite sorted list of terms plus an optional order marker
//! `O(t^δ)`. Everything below `δ` is known exactly; nothing at or above it is.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed};

use crate::diffpoly::{Coefficient, DiffPoly, DifferenceRing};
use crate::error::{Error, Result};
use crate::instances::{
    Direction, ExtValue, GroupElement, GroupInstance, OrderedDifferenceGroup, RatFunc,
    ResidueDifferenceField, ResidueInstance,
};

/// Whether a series is exact or known modulo `O(t^δ)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Precision {
    Exact,
    Order(GroupElement),
}

impl Precision {
    pub fn order(&self) -> Option<&GroupElement> {
        match self {
            Precision::Exact => None,
            Precision::Order(d) => Some(d),
        }
    }

    pub fn min(&self, other: &Precision) -> Precision {
        match (self, other) {
            (Precision::Exact, p) | (p, Precision::Exact) => p.clone(),
            (Precision::Order(a), Precision::Order(b)) => Precision::Order(a.min(b).clone()),
        }
    }

    fn admits(&self, e: &GroupElement) -> bool {
        match self {
            Precision::Exact => true,
            Precision::Order(d) => e < d,
        }
    }
}

/// The valuation of a series as far as it is known.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Valuation {
    Finite(GroupElement),
    /// No term is visible below `δ`: the value is at least `δ`.
    BelowPrecision(GroupElement),
    Infinity,
}

impl Valuation {
    /// The value when it is determined.
    pub fn known(&self) -> Option<ExtValue> {
        match self {
            Valuation::Finite(g) => Some(ExtValue::Finite(g.clone())),
            Valuation::Infinity => Some(ExtValue::Infinity),
            Valuation::BelowPrecision(_) => None,
        }
    }

    /// A lower bound that is attained when the value is known.
    pub fn lower_bound(&self) -> ExtValue {
        match self {
            Valuation::Finite(g) | Valuation::BelowPrecision(g) => ExtValue::Finite(g.clone()),
            Valuation::Infinity => ExtValue::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(g) => write!(f, "{}", g),
            Valuation::BelowPrecision(d) => write!(f, ">= {}", d),
            Valuation::Infinity => write!(f, "oo"),
        }
    }
}

/// Three-valued answer for questions that truncation can leave open.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finite-support series `Σ c_γ t^γ`, exact or modulo `O(t^δ)`.
///
/// Exponents are strictly increasing, coefficients nonzero, and every
/// exponent lies below `δ` when truncated.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HahnSeries {
    terms: Vec<(GroupElement, RatFunc)>,
    prec: Precision,
}

impl HahnSeries {
    pub fn zero() -> Self {
        HahnSeries {
            terms: Vec::new(),
            prec: Precision::Exact,
        }
    }

    pub fn one() -> Self {
        Self::constant(RatFunc::one())
    }

    /// `0 + O(t^δ)`.
    pub fn zero_mod(delta: GroupElement) -> Self {
        HahnSeries {
            terms: Vec::new(),
            prec: Precision::Order(delta),
        }
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::monomial(c, GroupElement::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(RatFunc::from_int(n))
    }

    /// `c·t^γ`.
    pub fn monomial(c: RatFunc, e: GroupElement) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        HahnSeries {
            terms: vec![(e, c)],
            prec: Precision::Exact,
        }
    }

    /// `t^γ`.
    pub fn t_pow(e: GroupElement) -> Self {
        Self::monomial(RatFunc::one(), e)
    }

    /// Collects terms, merging equal exponents and dropping zeros and
    /// everything at or above the precision.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (GroupElement, RatFunc)>,
        prec: Precision,
    ) -> Self {
        let mut map: BTreeMap<GroupElement, RatFunc> = BTreeMap::new();
        for (e, c) in terms {
            if !prec.admits(&e) || c.is_zero() {
                continue;
            }
            let slot = map.entry(e).or_insert_with(RatFunc::zero);
            *slot = &*slot + &c;
        }
        Self::from_map(map, prec)
    }

    fn from_map(map: BTreeMap<GroupElement, RatFunc>, prec: Precision) -> Self {
        HahnSeries {
            terms: map
                .into_iter()
                .filter(|(e, c)| !c.is_zero() && prec.admits(e))
                .collect(),
            prec,
        }
    }

    pub fn terms(&self) -> &[(GroupElement, RatFunc)] {
        &self.terms
    }

    pub fn precision(&self) -> &Precision {
        &self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == Precision::Exact
    }

    pub fn is_exact_zero(&self) -> bool {
        self.is_exact() && self.terms.is_empty()
    }

    pub fn is_exact_one(&self) -> bool {
        self.is_exact()
            && self.terms.len() == 1
            && self.terms[0].0.is_zero()
            && self.terms[0].1.is_one()
    }

    /// No term visible: exact zero or `O(t^δ)`.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn valuation(&self) -> Valuation {
        match (self.terms.first(), &self.prec) {
            (Some((e, _)), _) => Valuation::Finite(e.clone()),
            (None, Precision::Exact) => Valuation::Infinity,
            (None, Precision::Order(d)) => Valuation::BelowPrecision(d.clone()),
        }
    }

    /// `v(a)` when it is known.
    pub fn value(&self) -> Option<ExtValue> {
        self.valuation().known()
    }

    pub fn leading_term(&self) -> Option<(&GroupElement, &RatFunc)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    pub fn coeff(&self, e: &GroupElement) -> RatFunc {
        self.terms
            .iter()
            .find(|(x, _)| x == e)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(RatFunc::zero)
    }

    /// The image in the residue field of an element of the valuation ring.
    pub fn residue(&self) -> Result<RatFunc> {
        if self.terms.first().is_some_and(|(e, _)| e.is_negative()) {
            return Err(Error::NegativeValuation);
        }
        if let Precision::Order(d) = &self.prec {
            if !d.is_positive() {
                return Err(Error::PrecisionLoss(format!(
                    "residue needs precision above 0, have O(T^({}))",
                    d
                )));
            }
        }
        Ok(self.coeff(&GroupElement::zero()))
    }

    /// Lowers the precision to at most `δ`.
    pub fn truncate(&self, delta: &GroupElement) -> Self {
        let prec = self.prec.min(&Precision::Order(delta.clone()));
        HahnSeries {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| prec.admits(e))
                .cloned()
                .collect(),
            prec,
        }
    }

    /// Forgets the precision marker. Only for series known to be exact.
    pub fn with_precision(&self, prec: Precision) -> Self {
        Self::from_terms(self.terms.iter().cloned(), prec)
    }

    /// `c·t^e · self`.
    pub fn mul_monomial(&self, c: &RatFunc, e: &GroupElement) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        HahnSeries {
            terms: self.terms.iter().map(|(x, a)| (x + e, a * c)).collect(),
            prec: match &self.prec {
                Precision::Exact => Precision::Exact,
                Precision::Order(d) => Precision::Order(d + e),
            },
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        self.mul_monomial(c, &GroupElement::zero())
    }

    /// Lower end of what is known: `v(a)`, or `δ` for an empty truncated
    /// series, or `∞` for exact zero.
    fn low(&self) -> ExtValue {
        self.valuation().lower_bound()
    }

    /// `b` with `a·b = 1 mod O(t^target)`.
    ///
    /// The result carries precision `min(target, δ_a - 2·v(a))`.
    pub fn invert(&self, target: &GroupElement) -> Result<Self> {
        let (v, c) = self.leading_term().ok_or(Error::ZeroDivisor)?;
        let (v, c) = (v.clone(), c.clone());
        let cinv = c.inv().expect("nonzero leading coefficient");
        let r = &self.mul_monomial(&cinv, &-&v) - &Self::one();
        let mut avail = target + &v;
        if let Some(d) = self.prec.order() {
            avail = GroupElement::min(&avail, &(d - &v)).clone();
        }
        let mut sum = Self::one().truncate(&avail);
        if let Some((eps, _)) = r.leading_term() {
            if avail.is_positive() && !reaches(eps, &avail) {
                return Err(Error::InfiniteSupport);
            }
            let step = -&r;
            let mut power = Self::one();
            loop {
                power = (&power * &step).truncate(&avail);
                if power.is_empty() {
                    break;
                }
                sum = &sum + &power;
            }
        }
        let out = sum.mul_monomial(&cinv, &-&v);
        let mut prec = target.clone();
        if let Some(d) = self.prec.order() {
            prec = GroupElement::min(&prec, &(d - &v.scale_int(2))).clone();
        }
        Ok(out.truncate(&prec))
    }

    /// Whether every visible term has exponent at least `γ`.
    pub fn all_exponents_at_least(&self, g: &GroupElement) -> bool {
        self.terms.iter().all(|(e, _)| e >= g)
    }

    /// Residue-field variables occurring in some coefficient.
    pub fn residue_vars(&self) -> std::collections::BTreeSet<i64> {
        self.terms.iter().flat_map(|(_, c)| c.vars()).collect()
    }
}

/// Whether `n·ε ≥ target` for some `n ≥ 1`, for `ε > 0`.
fn reaches(eps: &GroupElement, target: &GroupElement) -> bool {
    if !target.is_positive() {
        return true;
    }
    let (de, dt) = (eps.degree().unwrap_or(0), target.degree().unwrap_or(0));
    de >= dt
}

impl Default for HahnSeries {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &HahnSeries {
    type Output = HahnSeries;
    fn add(self, rhs: &HahnSeries) -> HahnSeries {
        let prec = self.prec.min(&rhs.prec);
        HahnSeries::from_terms(self.terms.iter().chain(rhs.terms.iter()).cloned(), prec)
    }
}

impl Neg for &HahnSeries {
    type Output = HahnSeries;
    fn neg(self) -> HahnSeries {
        HahnSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            prec: self.prec.clone(),
        }
    }
}

impl Sub for &HahnSeries {
    type Output = HahnSeries;
    fn sub(self, rhs: &HahnSeries) -> HahnSeries {
        self + &(-rhs)
    }
}

impl Mul for &HahnSeries {
    type Output = HahnSeries;
    fn mul(self, rhs: &HahnSeries) -> HahnSeries {
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return HahnSeries::zero();
        }
        let mut prec = Precision::Exact;
        if let Precision::Order(d) = &rhs.prec {
            if let ExtValue::Finite(l) = self.low() {
                prec = prec.min(&Precision::Order(&l + d));
            }
        }
        if let Precision::Order(d) = &self.prec {
            if let ExtValue::Finite(l) = rhs.low() {
                prec = prec.min(&Precision::Order(&l + d));
            }
        }
        let mut map: BTreeMap<GroupElement, RatFunc> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea + eb;
                if !prec.admits(&e) {
                    continue;
                }
                let slot = map.entry(e).or_insert_with(RatFunc::zero);
                *slot = &*slot + &(ca * cb);
            }
        }
        HahnSeries::from_map(map, prec)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for HahnSeries {
            type Output = HahnSeries;
            fn $m(self, rhs: HahnSeries) -> HahnSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for HahnSeries {
    type Output = HahnSeries;
    fn neg(self) -> HahnSeries {
        -&self
    }
}

/// `T`, `T^2`, `T^0`, `T^(1/2)`, `T^(-2)`, `T^(g)`.
pub fn fmt_t_power(e: &GroupElement) -> String {
    match e.as_constant() {
        Some(c) if c.is_one() => "T".to_string(),
        Some(c) if c.is_integer() && !c.is_negative() => format!("T^{}", c),
        _ => format!("T^({})", e),
    }
}

impl fmt::Display for HahnSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return match &self.prec {
                Precision::Exact => write!(f, "0"),
                Precision::Order(d) => write!(f, "O({})", fmt_t_power(d)),
            };
        }
        let lone = self.terms.len() == 1 && self.is_exact();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.looks_negative() && !c.is_compound();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let c = if neg { -c } else { c.clone() };
            if e.is_zero() {
                if c.is_compound() && !lone {
                    write!(f, "({})", c)?;
                } else {
                    write!(f, "{}", c)?;
                }
                continue;
            }
            if !c.is_one() {
                if c.is_compound() {
                    write!(f, "({})*", c)?;
                } else {
                    write!(f, "{}*", c)?;
                }
            }
            write!(f, "{}", fmt_t_power(e))?;
        }
        if let Precision::Order(d) = &self.prec {
            write!(f, " + O({})", fmt_t_power(d))?;
        }
        Ok(())
    }
}

impl fmt::Debug for HahnSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Coefficient for HahnSeries {
    fn is_compound(&self) -> bool {
        match self.terms.as_slice() {
            [] => !self.is_exact(),
            [(e, c)] => !self.is_exact() || (e.is_zero() && c.is_compound()),
            _ => true,
        }
    }
    fn looks_negative(&self) -> bool {
        self.terms.first().is_some_and(|(_, c)| c.looks_negative())
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_one(&self) -> bool {
        self.is_exact_one()
    }
}

/// The Hahn model `(k((Γ)), σ)` with `σ(Σ a_γ t^γ) = Σ Resσ(a_γ) t^{Valσ(γ)}`.
#[derive(Clone, Debug)]
pub struct Model {
    pub residue: Arc<dyn ResidueDifferenceField>,
    pub group: Arc<dyn OrderedDifferenceGroup>,
}

impl Model {
    pub fn new(residue: ResidueInstance, group: GroupInstance) -> Self {
        Model {
            residue: Arc::new(residue),
            group: Arc::new(group),
        }
    }

    pub fn from_names(residue: &str, group: &str) -> Result<Self> {
        Ok(Self::new(
            ResidueInstance::from_name(residue)?,
            GroupInstance::from_name(group)?,
        ))
    }

    pub fn k(&self) -> &dyn ResidueDifferenceField {
        &*self.residue
    }

    pub fn g(&self) -> &dyn OrderedDifferenceGroup {
        &*self.group
    }

    pub fn is_inversive(&self) -> bool {
        self.residue.is_inversive() && self.group.is_inversive()
    }

    pub fn contains(&self, a: &HahnSeries) -> bool {
        a.terms
            .iter()
            .all(|(e, c)| self.group.contains(e) && self.residue.contains(c))
            && a.prec.order().is_none_or(|d| self.group.contains(d))
    }

    pub fn check(&self, a: &HahnSeries) -> Result<()> {
        for (e, c) in &a.terms {
            self.group.check(e)?;
            self.residue.check(c)?;
        }
        if let Some(d) = a.prec.order() {
            self.group.check(d)?;
        }
        Ok(())
    }

    /// The lifted endomorphism, forward or backward.
    pub fn apply_sigma(&self, a: &HahnSeries, direction: Direction) -> Result<HahnSeries> {
        let g = |e: &GroupElement| self.group.map(e, 1, direction);
        let r = |c: &RatFunc| self.residue.map(c, 1, direction);
        let mut terms = Vec::with_capacity(a.terms.len());
        for (e, c) in &a.terms {
            terms.push((g(e)?, r(c)?));
        }
        let prec = match &a.prec {
            Precision::Exact => Precision::Exact,
            Precision::Order(d) => Precision::Order(g(d)?),
        };
        Ok(HahnSeries { terms, prec })
    }

    pub fn sigma(&self, a: &HahnSeries) -> HahnSeries {
        self.apply_sigma(a, Direction::Forward)
            .expect("forward σ is total")
    }

    pub fn sigma_inv(&self, a: &HahnSeries) -> Result<HahnSeries> {
        self.apply_sigma(a, Direction::Backward)
    }

    /// Every nonzero residue coefficient becomes the constant series with that
    /// residue; zero coefficients stay absent.
    pub fn exact_lift(&self, q: &DiffPoly<RatFunc>) -> DiffPoly<HahnSeries> {
        q.map_coeffs(self, |c| HahnSeries::constant(c.clone()))
    }

    /// `Valσ^i(γ)` for signed `i`.
    pub fn val_sigma(&self, g: &GroupElement, i: i64) -> Result<GroupElement> {
        self.group.map_signed(g, i)
    }
}

impl DifferenceRing for Model {
    type Elem = HahnSeries;

    fn zero(&self) -> HahnSeries {
        HahnSeries::zero()
    }
    fn one(&self) -> HahnSeries {
        HahnSeries::one()
    }
    fn from_int(&self, n: i64) -> HahnSeries {
        HahnSeries::from_int(n)
    }
    fn add(&self, a: &HahnSeries, b: &HahnSeries) -> HahnSeries {
        a + b
    }
    fn neg(&self, a: &HahnSeries) -> HahnSeries {
        -a
    }
    fn mul(&self, a: &HahnSeries, b: &HahnSeries) -> HahnSeries {
        a * b
    }
    fn is_zero(&self, a: &HahnSeries) -> bool {
        a.is_exact_zero()
    }
    fn sigma(&self, a: &HahnSeries) -> HahnSeries {
        Model::sigma(self, a)
    }
    fn sigma_inv(&self, a: &HahnSeries) -> Result<HahnSeries> {
        Model::sigma_inv(self, a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallKind {
    Open,
    Closed,
}

/// `{x : v(x - center) > γ}` (open) or `≥ γ` (closed).
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: HahnSeries,
    pub radius: GroupElement,
    pub kind: BallKind,
}

impl Ball {
    pub fn open(center: HahnSeries, radius: GroupElement) -> Self {
        Ball {
            center,
            radius,
            kind: BallKind::Open,
        }
    }

    pub fn closed(center: HahnSeries, radius: GroupElement) -> Self {
        Ball {
            center,
            radius,
            kind: BallKind::Closed,
        }
    }

    fn inside(&self, v: &GroupElement) -> bool {
        match self.kind {
            BallKind::Open => v > &self.radius,
            BallKind::Closed => v >= &self.radius,
        }
    }

    pub fn contains(&self, x: &HahnSeries) -> Tri {
        match (&self.center - x).valuation() {
            Valuation::Infinity => Tri::Yes,
            Valuation::Finite(v) => Tri::from_bool(self.inside(&v)),
            Valuation::BelowPrecision(d) => {
                if self.inside(&d) {
                    Tri::Yes
                } else {
                    Tri::Unknown
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GroupElement {
        GroupElement::from_int(n)
    }

    fn t(n: i64) -> HahnSeries {
        HahnSeries::t_pow(g(n))
    }

    fn one() -> HahnSeries {
        HahnSeries::one()
    }

    #[test]
    fn ring_op_examples() {
        let a = &one() + &t(2);
        let b = &-&one() + &t(1);
        assert_eq!(&a + &b, &t(1) + &t(2));
        let c = t(1).truncate(&g(5));
        assert_eq!(&t(1) * &c, t(2).truncate(&g(6)));
        assert_eq!(&(&one() + &t(1)) * &(&one() - &t(1)), &one() - &t(2));
    }

    #[test]
    fn invert_examples() {
        let a = &one() - &t(1);
        assert_eq!(
            a.invert(&g(3)).unwrap(),
            (&(&one() + &t(1)) + &t(2)).truncate(&g(3))
        );
        let b = t(2).invert(&g(1)).unwrap();
        assert_eq!(b, t(-2).truncate(&g(1)));
        assert_eq!(b.to_string(), "T^(-2) + O(T)");
        assert_eq!(
            HahnSeries::zero_mod(g(4)).invert(&g(3)),
            Err(Error::ZeroDivisor)
        );
    }

    #[test]
    fn invert_non_archimedean_is_infinite() {
        let a = &one() + &t(1);
        assert_eq!(
            a.invert(&GroupElement::generator()),
            Err(Error::InfiniteSupport)
        );
    }

    #[test]
    fn valuation_examples() {
        let a = &HahnSeries::monomial(RatFunc::from_int(3), g(2))
            + &HahnSeries::monomial(RatFunc::from_int(5), g(3));
        assert_eq!(a.valuation(), Valuation::Finite(g(2)));
        assert_eq!(
            HahnSeries::zero_mod(g(5)).valuation(),
            Valuation::BelowPrecision(g(5))
        );
        assert_eq!(HahnSeries::zero().valuation(), Valuation::Infinity);
    }

    #[test]
    fn residue_examples() {
        let a = &HahnSeries::from_int(3) + &t(1);
        assert_eq!(a.residue().unwrap(), RatFunc::from_int(3));
        assert_eq!(t(1).residue().unwrap(), RatFunc::zero());
        assert_eq!((&t(-1) + &one()).residue(), Err(Error::NegativeValuation));
        assert!(matches!(
            HahnSeries::zero_mod(g(0)).residue(),
            Err(Error::PrecisionLoss(_))
        ));
    }

    #[test]
    fn sigma_examples() {
        let m = Model::new(ResidueInstance::QId, GroupInstance::ZDouble);
        let a = &HahnSeries::monomial(RatFunc::from_int(3), g(1)) + &t(2);
        let want = &HahnSeries::monomial(RatFunc::from_int(3), g(2)) + &t(4);
        assert_eq!(m.sigma(&a), want);

        let m = Model::new(ResidueInstance::ShiftQ, GroupInstance::ZxiOmega);
        let a = HahnSeries::monomial(RatFunc::var(0), g(1));
        assert_eq!(
            m.sigma(&a),
            HahnSeries::monomial(RatFunc::var(1), GroupElement::generator())
        );

        let m = Model::new(ResidueInstance::ShiftQ, GroupInstance::ZDouble);
        let a = HahnSeries::monomial(RatFunc::var(0), g(2));
        assert!(matches!(m.sigma_inv(&a), Err(Error::NoPreimage(_))));
    }

    #[test]
    fn ball_examples() {
        let b = Ball::open(HahnSeries::zero(), g(1));
        assert_eq!(b.contains(&t(2)), Tri::Yes);
        assert_eq!(b.contains(&t(1)), Tri::No);
        let b = Ball::open(HahnSeries::zero(), g(3));
        assert_eq!(b.contains(&HahnSeries::zero_mod(g(2))), Tri::Unknown);
    }

    #[test]
    fn display() {
        let h = GroupElement::from_ratio(1, 2);
        let a = &one() + &HahnSeries::t_pow(h);
        assert_eq!(a.to_string(), "1 + T^(1/2)");
        let b = &HahnSeries::monomial(RatFunc::from_int(3), g(2))
            - &HahnSeries::monomial(RatFunc::from_int(5), g(3));
        assert_eq!(b.to_string(), "3*T^2 - 5*T^3");
        let c = (&one() + &HahnSeries::monomial(RatFunc::var(0), GroupElement::generator()))
            .truncate(&GroupElement::generator().scale_int(2));
        assert_eq!(c.to_string(), "1 + u0*T^(g) + O(T^(2g))");
        assert_eq!(HahnSeries::zero_mod(g(4)).to_string(), "O(T^4)");
    }

    #[test]
    fn exact_lift_keeps_zero_terms_out() {
        let m = Model::new(ResidueInstance::ShiftQ, GroupInstance::ZTrivial);
        let q = DiffPoly::from_terms(
            &ResidueInstance::ShiftQ,
            [
                (crate::instances::MultiIndex::unit(0), RatFunc::var(0)),
                (crate::instances::MultiIndex::unit(1), RatFunc::zero()),
            ],
        );
        let l = m.exact_lift(&q);
        assert_eq!(l.num_terms(), 1);
        assert_eq!(
            l.coeff(&crate::instances::MultiIndex::unit(0)),
            Some(&HahnSeries::constant(RatFunc::var(0)))
        );
    }
}
