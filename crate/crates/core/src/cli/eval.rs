//! Sort inference and evaluation of parsed terms.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::parser::{CmpOp, Expr};
use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::hahn::{HahnSeries, Model, Valuation};
use crate::instances::{
    ExtValue, GroupElement, GroupInstance, OrderedDifferenceGroup, RatFunc, ResidueDifferenceField,
    ResidueInstance,
};
use crate::lambda;
use crate::rv::{self, RvElement};

/// Sorts of terms. `Num` is a bare rational and fits anywhere; the chain
/// `Num < K < Vf < Poly` coerces upward.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sort {
    Num,
    K,
    Vf,
    Poly,
    Gamma,
    Rv,
    Bool,
}

impl Sort {
    pub fn name(self) -> &'static str {
        match self {
            Sort::Num | Sort::K => "k",
            Sort::Vf => "vf",
            Sort::Poly => "poly",
            Sort::Gamma => "gamma",
            Sort::Rv => "rv",
            Sort::Bool => "bool",
        }
    }

    pub fn from_name(s: &str) -> Result<Sort> {
        Ok(match s {
            "k" => Sort::K,
            "vf" | "VF" => Sort::Vf,
            "poly" => Sort::Poly,
            "gamma" | "Γ" => Sort::Gamma,
            "rv" | "RV" => Sort::Rv,
            _ => return Err(Error::Config(format!("unknown sort {}", s))),
        })
    }

    fn rank(self) -> Option<u8> {
        match self {
            Sort::Num => Some(0),
            Sort::K => Some(1),
            Sort::Vf => Some(2),
            Sort::Poly => Some(3),
            _ => None,
        }
    }
}

fn sort_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Sort(msg.into()))
}

/// Least sort both fit into.
pub fn join(a: Sort, b: Sort) -> Result<Sort> {
    if a == b {
        return Ok(a);
    }
    match (a.rank(), b.rank()) {
        (Some(x), Some(y)) => Ok(if x >= y { a } else { b }),
        _ if a == Sort::Num => Ok(b),
        _ if b == Sort::Num => Ok(a),
        _ => sort_err(format!("cannot combine {} and {}", a.name(), b.name())),
    }
}

/// Whether a term of sort `from` can be read at sort `to`.
pub fn fits(from: Sort, to: Sort) -> bool {
    join(from, to).is_ok_and(|j| j == to)
}

fn require(e: &Expr, want: Sort) -> Result<()> {
    let s = infer(e)?;
    if fits(s, want) {
        Ok(())
    } else {
        sort_err(format!(
            "{} has sort {}, expected {}",
            e,
            s.name(),
            want.name()
        ))
    }
}

pub fn infer(e: &Expr) -> Result<Sort> {
    use Expr::*;
    Ok(match e {
        Int(_) => Sort::Num,
        Var(_) => Sort::K,
        X => Sort::Poly,
        Gen | Infinity => Sort::Gamma,
        TPow(g) | BigO(g) => {
            require(g, Sort::Gamma)?;
            Sort::Vf
        }
        Sigma(_, x) | Neg(x) => {
            let s = infer(x)?;
            if s == Sort::Bool {
                return sort_err("σ and negation do not apply to formulas");
            }
            s
        }
        Add(a, b) | Sub(a, b) => {
            let s = join(infer(a)?, infer(b)?)?;
            match s {
                Sort::Rv => return sort_err("RV has no addition; use oplus(...)"),
                Sort::Bool => return sort_err("formulas cannot be added"),
                _ => s,
            }
        }
        Mul(a, b) => {
            let s = join(infer(a)?, infer(b)?)?;
            if s == Sort::Bool {
                return sort_err("formulas cannot be multiplied");
            }
            s
        }
        Div(a, b) => {
            let s = join(infer(a)?, infer(b)?)?;
            match s {
                Sort::Poly => return sort_err("difference polynomials cannot be divided"),
                Sort::Bool => return sort_err("formulas cannot be divided"),
                _ => s,
            }
        }
        Pow(b, n) => {
            let s = infer(b)?;
            match s {
                Sort::Poly if *n < 0 => return sort_err("negative power of a polynomial"),
                Sort::Bool => return sort_err("formulas have no powers"),
                _ => s,
            }
        }
        Cmp(op, a, b) => {
            let s = join(infer(a)?, infer(b)?)?;
            if *op != CmpOp::Eq && !matches!(s, Sort::Gamma | Sort::Num) {
                return sort_err("order comparisons need value-group terms");
            }
            Sort::Bool
        }
        Call(name, args) => match (name.as_str(), args.as_slice()) {
            ("rv", [x]) => {
                require(x, Sort::Vf)?;
                Sort::Rv
            }
            ("rv", [c, g]) => {
                require(c, Sort::K)?;
                require(g, Sort::Gamma)?;
                Sort::Rv
            }
            ("v", [x]) => {
                let s = infer(x)?;
                if !(fits(s, Sort::Vf) || s == Sort::Rv) {
                    return sort_err(format!("v({}) needs a field or RV term", x));
                }
                Sort::Gamma
            }
            ("ac" | "res", [x]) => {
                require(x, Sort::Vf)?;
                Sort::K
            }
            ("oplus", xs) => {
                for x in xs {
                    require(x, Sort::Rv)?;
                }
                Sort::Rv
            }
            ("lambda", [Int(i), rest @ ..]) if rest.len() >= 2 => {
                let n = rest.len() - 1;
                if i.is_zero() || i > &BigInt::from(n) {
                    return sort_err(format!("lambda index {} outside 1..={}", i, n));
                }
                let mut s = Sort::K;
                for x in rest {
                    s = join(s, infer(x)?)?;
                }
                if s != Sort::K && s != Sort::Vf {
                    return sort_err("lambda takes field terms");
                }
                s
            }
            ("lambda", _) => return sort_err("lambda(i, x_1, ..., x_n, y) with a literal index i"),
            (f, _) => return sort_err(format!("wrong number of arguments to {}", f)),
        },
    })
}

/// A value of one of the sorts.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    K(RatFunc),
    Vf(HahnSeries),
    Poly(DiffPoly<HahnSeries>),
    Gamma(ExtValue),
    Rv(RvElement),
    Bool(bool),
}

impl Value {
    pub fn sort(&self) -> Sort {
        match self {
            Value::K(_) => Sort::K,
            Value::Vf(_) => Sort::Vf,
            Value::Poly(_) => Sort::Poly,
            Value::Gamma(_) => Sort::Gamma,
            Value::Rv(_) => Sort::Rv,
            Value::Bool(_) => Sort::Bool,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::K(x) => write!(f, "{}", x),
            Value::Vf(x) => write!(f, "{}", x),
            Value::Poly(x) => write!(f, "{}", x),
            Value::Gamma(x) => write!(f, "{}", x),
            Value::Rv(x) => write!(f, "{}", x),
            Value::Bool(x) => write!(f, "{}", x),
        }
    }
}

/// The instances and defaults terms are evaluated against.
#[derive(Clone)]
pub struct Env {
    pub residue: ResidueInstance,
    pub group: GroupInstance,
    pub model: Model,
    /// Precision used when a series has to be inverted.
    pub precision: GroupElement,
}

impl Env {
    pub fn new(residue: ResidueInstance, group: GroupInstance, precision: GroupElement) -> Self {
        Env {
            residue,
            group,
            model: Model::new(residue, group),
            precision,
        }
    }

    pub fn eval(&self, e: &Expr) -> Result<Value> {
        let s = match infer(e)? {
            Sort::Num => Sort::K,
            s => s,
        };
        self.eval_at(e, s)
    }

    /// Evaluates `e` read at sort `want`, which must admit its inferred sort.
    pub fn eval_at(&self, e: &Expr, want: Sort) -> Result<Value> {
        let s = infer(e)?;
        if !fits(s, want) {
            return sort_err(format!(
                "{} has sort {}, expected {}",
                e,
                s.name(),
                want.name()
            ));
        }
        let v = if s != want && s != Sort::Num {
            self.coerce(self.eval_at(e, s)?, want)
        } else {
            match want {
                Sort::Num | Sort::K => Value::K(self.eval_k(e)?),
                Sort::Vf => Value::Vf(self.eval_vf(e)?),
                Sort::Poly => Value::Poly(self.eval_poly(e)?),
                Sort::Gamma => Value::Gamma(self.eval_gamma(e)?),
                Sort::Rv => Value::Rv(self.eval_rv(e)?),
                Sort::Bool => Value::Bool(self.eval_bool(e)?),
            }
        };
        self.check(&v)?;
        Ok(v)
    }

    /// Membership of a value in the session instances.
    pub fn check(&self, v: &Value) -> Result<()> {
        match v {
            Value::K(x) => self.residue.check(x),
            Value::Vf(x) => self.model.check(x),
            Value::Poly(p) => p.terms().try_for_each(|(_, c)| self.model.check(c)),
            Value::Gamma(ExtValue::Finite(g)) => self.group.check(g),
            Value::Rv(RvElement::Unit(c, g)) => {
                self.residue.check(c)?;
                self.group.check(g)
            }
            _ => Ok(()),
        }
    }

    fn coerce(&self, v: Value, want: Sort) -> Value {
        match (v, want) {
            (Value::K(x), Sort::Vf) => Value::Vf(HahnSeries::constant(x)),
            (Value::K(x), Sort::Poly) => {
                Value::Poly(DiffPoly::constant(&self.model, HahnSeries::constant(x)))
            }
            (Value::Vf(x), Sort::Poly) => Value::Poly(DiffPoly::constant(&self.model, x)),
            (v, _) => v,
        }
    }

    pub fn k(&self, e: &Expr) -> Result<RatFunc> {
        match self.eval_at(e, Sort::K)? {
            Value::K(x) => Ok(x),
            _ => unreachable!(),
        }
    }

    pub fn vf(&self, e: &Expr) -> Result<HahnSeries> {
        match self.eval_at(e, Sort::Vf)? {
            Value::Vf(x) => Ok(x),
            _ => unreachable!(),
        }
    }

    pub fn poly(&self, e: &Expr) -> Result<DiffPoly<HahnSeries>> {
        match self.eval_at(e, Sort::Poly)? {
            Value::Poly(x) => Ok(x),
            _ => unreachable!(),
        }
    }

    pub fn gamma(&self, e: &Expr) -> Result<ExtValue> {
        match self.eval_at(e, Sort::Gamma)? {
            Value::Gamma(x) => Ok(x),
            _ => unreachable!(),
        }
    }

    /// A finite value-group term.
    pub fn finite_gamma(&self, e: &Expr) -> Result<GroupElement> {
        match self.gamma(e)? {
            ExtValue::Finite(g) => Ok(g),
            ExtValue::Infinity => sort_err(format!("{} must be a finite value", e)),
        }
    }

    pub fn rv(&self, e: &Expr) -> Result<RvElement> {
        match self.eval_at(e, Sort::Rv)? {
            Value::Rv(x) => Ok(x),
            _ => unreachable!(),
        }
    }

    fn eval_k(&self, e: &Expr) -> Result<RatFunc> {
        use Expr::*;
        Ok(match e {
            Int(n) => RatFunc::from_bigint(n.clone()),
            Var(k) => RatFunc::var(*k),
            Neg(x) => -&self.k(x)?,
            Add(a, b) => &self.k(a)? + &self.k(b)?,
            Sub(a, b) => &self.k(a)? - &self.k(b)?,
            Mul(a, b) => &self.k(a)? * &self.k(b)?,
            Div(a, b) => self
                .k(a)?
                .checked_div(&self.k(b)?)
                .ok_or(Error::ZeroDivisor)?,
            Pow(b, n) => self.k(b)?.pow(*n).ok_or(Error::ZeroDivisor)?,
            Sigma(n, x) => {
                let mut out = self.k(x)?;
                for _ in 0..*n {
                    out = self.residue.sigma(&out);
                }
                out
            }
            Call(f, args) => match f.as_str() {
                "ac" => rv::ac(&self.vf(&args[0])?)?,
                "res" => self.vf(&args[0])?.residue()?,
                "lambda" => self.lambda(args)?,
                _ => unreachable!("sort-checked"),
            },
            _ => unreachable!("sort-checked"),
        })
    }

    /// `λ_i`, always a residue element.
    fn lambda(&self, args: &[Expr]) -> Result<RatFunc> {
        let Expr::Int(i) = &args[0] else {
            unreachable!("sort-checked")
        };
        let i: usize = i.try_into().expect("bounded by arity");
        let rest = &args[1..];
        let (y, xs) = rest.split_last().expect("arity checked");
        let series = rest.iter().any(|x| infer(x).is_ok_and(|s| s == Sort::Vf));
        let res = if series {
            let xs = xs.iter().map(|x| self.vf(x)).collect::<Result<Vec<_>>>()?;
            lambda::lambda_series(&self.model, &xs, &self.vf(y)?)?
        } else {
            let xs = xs.iter().map(|x| self.k(x)).collect::<Result<Vec<_>>>()?;
            lambda::lambda(self.residue, &xs, &self.k(y)?)?
        };
        Ok(res.coeffs[i - 1].clone())
    }

    fn eval_vf(&self, e: &Expr) -> Result<HahnSeries> {
        use Expr::*;
        Ok(match e {
            Int(n) => HahnSeries::constant(RatFunc::from_bigint(n.clone())),
            TPow(g) => HahnSeries::t_pow(self.finite_gamma(g)?),
            BigO(g) => HahnSeries::zero_mod(self.finite_gamma(g)?),
            Neg(x) => -&self.vf(x)?,
            Add(a, b) => &self.vf(a)? + &self.vf(b)?,
            Sub(a, b) => &self.vf(a)? - &self.vf(b)?,
            Mul(a, b) => &self.vf(a)? * &self.vf(b)?,
            Div(a, b) => {
                let b = self.vf(b)?;
                &self.vf(a)? * &self.invert(&b)?
            }
            Pow(b, n) => {
                let mut base = self.vf(b)?;
                if *n < 0 {
                    base = self.invert(&base)?;
                }
                let mut out = HahnSeries::one();
                for _ in 0..n.unsigned_abs() {
                    out = &out * &base;
                }
                out
            }
            Sigma(n, x) => {
                let mut out = self.vf(x)?;
                for _ in 0..*n {
                    out = self.model.sigma(&out);
                }
                out
            }
            Call(f, args) if f == "lambda" => HahnSeries::constant(self.lambda(args)?),
            _ => unreachable!("sort-checked"),
        })
    }

    fn invert(&self, b: &HahnSeries) -> Result<HahnSeries> {
        if b.is_exact() && b.terms().len() == 1 {
            let (e, c) = &b.terms()[0];
            let c = c.inv().expect("nonzero coefficient");
            return Ok(HahnSeries::monomial(c, -e));
        }
        b.invert(&self.precision)
    }

    fn eval_poly(&self, e: &Expr) -> Result<DiffPoly<HahnSeries>> {
        use Expr::*;
        let m = &self.model;
        Ok(match e {
            X => DiffPoly::x(m),
            Int(n) => DiffPoly::constant(m, HahnSeries::constant(RatFunc::from_bigint(n.clone()))),
            Neg(x) => self.poly(x)?.neg(m),
            Add(a, b) => self.poly(a)?.add(m, &self.poly(b)?),
            Sub(a, b) => self.poly(a)?.sub(m, &self.poly(b)?),
            Mul(a, b) => self.poly(a)?.mul(m, &self.poly(b)?),
            Pow(b, n) => self.poly(b)?.pow(m, *n as u32),
            Sigma(n, x) => {
                let mut out = self.poly(x)?;
                for _ in 0..*n {
                    out = out.apply_sigma(m);
                }
                out
            }
            _ => unreachable!("sort-checked"),
        })
    }

    fn eval_gamma(&self, e: &Expr) -> Result<ExtValue> {
        use Expr::*;
        let fin = |x: &Expr| self.finite_gamma(x);
        Ok(match e {
            Int(n) => {
                ExtValue::Finite(GroupElement::constant(BigRational::from_integer(n.clone())))
            }
            Gen => ExtValue::Finite(GroupElement::generator()),
            Infinity => ExtValue::Infinity,
            Neg(x) => match self.gamma(x)? {
                ExtValue::Finite(g) => ExtValue::Finite(-g),
                ExtValue::Infinity => return sort_err("-oo is not a value"),
            },
            Add(a, b) => match (self.gamma(a)?, self.gamma(b)?) {
                (ExtValue::Finite(x), ExtValue::Finite(y)) => ExtValue::Finite(x + y),
                _ => ExtValue::Infinity,
            },
            Sub(a, b) => match (self.gamma(a)?, self.gamma(b)?) {
                (ExtValue::Finite(x), ExtValue::Finite(y)) => ExtValue::Finite(x - y),
                (ExtValue::Infinity, ExtValue::Finite(_)) => ExtValue::Infinity,
                _ => return sort_err("cannot subtract oo"),
            },
            Mul(a, b) => ExtValue::Finite(fin(a)?.mul_poly(&fin(b)?)),
            Div(a, b) => {
                let d = fin(b)?;
                let Some(q) = d.as_constant() else {
                    return sort_err(format!("cannot divide by the group element {}", d));
                };
                if q.is_zero() {
                    return Err(Error::ZeroDivisor);
                }
                ExtValue::Finite(fin(a)?.scale(&q.recip()))
            }
            Pow(b, n) => {
                let base = fin(b)?;
                let base = if *n < 0 {
                    monomial_inverse(&base)?
                } else {
                    base
                };
                let mut out = GroupElement::from_int(1);
                for _ in 0..n.unsigned_abs() {
                    out = out.mul_poly(&base);
                }
                ExtValue::Finite(out)
            }
            Sigma(n, x) => match self.gamma(x)? {
                ExtValue::Finite(g) => ExtValue::Finite(self.model.val_sigma(&g, *n as i64)?),
                ExtValue::Infinity => ExtValue::Infinity,
            },
            Call(f, args) if f == "v" => {
                if infer(&args[0])? == Sort::Rv {
                    self.rv(&args[0])?.value()
                } else {
                    match self.vf(&args[0])?.valuation() {
                        Valuation::Finite(g) => ExtValue::Finite(g),
                        Valuation::Infinity => ExtValue::Infinity,
                        Valuation::BelowPrecision(d) => {
                            return Err(Error::PrecisionLoss(format!(
                                "only v >= {} is known for {}",
                                d, args[0]
                            )))
                        }
                    }
                }
            }
            _ => unreachable!("sort-checked"),
        })
    }

    fn eval_rv(&self, e: &Expr) -> Result<RvElement> {
        use Expr::*;
        Ok(match e {
            Int(n) => RvElement::from_residue(RatFunc::from_bigint(n.clone())),
            Neg(x) => self
                .rv(x)?
                .mul(&RvElement::from_residue(RatFunc::from_int(-1))),
            Mul(a, b) => self.rv(a)?.mul(&self.rv(b)?),
            Div(a, b) => self.rv(a)?.mul(&self.rv(b)?.inv()?),
            Pow(b, n) => {
                let mut base = self.rv(b)?;
                if *n < 0 {
                    base = base.inv()?;
                }
                let mut out = RvElement::from_residue(RatFunc::one());
                for _ in 0..n.unsigned_abs() {
                    out = out.mul(&base);
                }
                out
            }
            Sigma(n, x) => {
                let mut out = self.rv(x)?;
                for _ in 0..*n {
                    out = out.sigma(&self.model);
                }
                out
            }
            Call(f, args) => match (f.as_str(), args.as_slice()) {
                ("rv", [x]) => rv::rv(&self.vf(x)?)?,
                ("rv", [c, g]) => RvElement::new(self.k(c)?, self.finite_gamma(g)?),
                ("oplus", xs) => {
                    let xs = xs.iter().map(|x| self.rv(x)).collect::<Result<Vec<_>>>()?;
                    rv::oplus(&xs)?
                }
                _ => unreachable!("sort-checked"),
            },
            _ => unreachable!("sort-checked"),
        })
    }

    fn eval_bool(&self, e: &Expr) -> Result<bool> {
        let Expr::Cmp(op, a, b) = e else {
            unreachable!("sort-checked")
        };
        let s = join(infer(a)?, infer(b)?)?;
        if s == Sort::Gamma || (s == Sort::Num && *op != CmpOp::Eq) {
            let (x, y) = (self.gamma(a)?, self.gamma(b)?);
            return Ok(match op {
                CmpOp::Le => x <= y,
                CmpOp::Lt => x < y,
                CmpOp::Ge => x >= y,
                CmpOp::Gt => x > y,
                CmpOp::Eq => x == y,
            });
        }
        let s = if s == Sort::Num { Sort::K } else { s };
        Ok(self.eval_at(a, s)? == self.eval_at(b, s)?)
    }
}

fn monomial_inverse(g: &GroupElement) -> Result<GroupElement> {
    let terms: Vec<(i64, &BigRational)> = g.terms().collect();
    match terms.as_slice() {
        [(k, c)] => Ok(GroupElement::from_coeffs(-k, vec![c.recip()])),
        _ => sort_err(format!("{} has no inverse power in the value group", g)),
    }
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse_expr;
    use super::*;

    fn env(k: ResidueInstance, g: GroupInstance) -> Env {
        Env::new(k, g, GroupElement::from_int(8))
    }

    fn ev(env: &Env, s: &str) -> String {
        env.eval(&parse_expr(s).unwrap()).unwrap().to_string()
    }

    #[test]
    fn sorts() {
        let p = |s: &str| infer(&parse_expr(s).unwrap());
        assert_eq!(p("X*s(X)^2 + 3").unwrap(), Sort::Poly);
        assert_eq!(p("1 + u0*T^(g) + O(T^(2g))").unwrap(), Sort::Vf);
        assert_eq!(p("2g^2-3g+1").unwrap(), Sort::Gamma);
        assert_eq!(p("rv(3*T^2)").unwrap(), Sort::Rv);
        assert!(p("rv(1) + rv(2)").is_err());
        assert!(p("g + u0").is_err());
    }

    #[test]
    fn values() {
        let e = env(ResidueInstance::ShiftQ, GroupInstance::ZDouble);
        assert_eq!(ev(&e, "s(u0 + 1)"), "u1+1");
        assert_eq!(ev(&e, "s(3)"), "3");
        assert_eq!(ev(&e, "T^(s(3))"), "T^6");
        assert_eq!(ev(&e, "v(3*T^2 + 5*T^3)"), "2");
        assert_eq!(ev(&e, "rv(3*T^2 + 5*T^3)"), "⟨3 ; 2⟩");
        assert_eq!(ev(&e, "v(rv(3*T^2 + 5*T^3)) = v(3*T^2 + 5*T^3)"), "true");
        assert_eq!(ev(&e, "lambda(1, u1, u1*u2)"), "u1");
        let q = env(ResidueInstance::QId, GroupInstance::LaurentOmega);
        assert_eq!(ev(&q, "2g^2 - 3g + 1"), "2g^2-3g+1");
        assert_eq!(ev(&q, "20g < s(g)"), "true");
    }

    #[test]
    fn membership_is_enforced() {
        let e = env(ResidueInstance::ShiftQ, GroupInstance::ZDouble);
        let r = e.eval(&parse_expr("T^(1/2)").unwrap());
        assert!(matches!(r, Err(Error::NotInInstance { .. })));
        assert!(e.eval(&parse_expr("u_{-1}").unwrap()).is_err());
    }
}
