use std::collections::BTreeSet;

use serde_json::{json, Value as Json};

use super::eval::{infer, Env, Sort};
use super::parser::parse_list;
use super::{parse, Command, Outcome};
use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::hahn::HahnSeries;
use crate::hensel::{self, LiftOptions, StopRule};
use crate::instances::{linsolve, GroupElement, MultiIndex, RatFunc};
use crate::lambda;
use crate::rv::{self, RvElement};

fn poly(env: &Env, text: &str) -> Result<DiffPoly<HahnSeries>> {
    env.poly(&parse(text, Sort::Poly)?)
}

fn series(env: &Env, text: &str) -> Result<HahnSeries> {
    env.vf(&parse(text, Sort::Vf)?)
}

fn residue(env: &Env, text: &str) -> Result<RatFunc> {
    env.k(&parse(text, Sort::K)?)
}

fn gamma(env: &Env, text: &str) -> Result<GroupElement> {
    env.finite_gamma(&parse(text, Sort::Gamma)?)
}

fn multi_index(text: &str) -> Result<MultiIndex> {
    let body = text.trim().trim_start_matches('(').trim_end_matches(')');
    let entries = body
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Syntax {
            line: 1,
            col: 1,
            expected: format!("a multi-index like 1,0,2, found {:?}", text),
        })?;
    Ok(MultiIndex::new(entries))
}

fn rv_json(r: &RvElement) -> Json {
    match r {
        RvElement::Zero => json!({"ac": "0", "v": "oo"}),
        RvElement::Unit(c, g) => json!({"ac": c.to_string(), "v": g.to_string()}),
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

pub fn dispatch(env: &Env, cmd: &Command, trace: bool) -> Result<Outcome> {
    let model = &env.model;
    match cmd {
        Command::Eval { expr, sort } => {
            let e = super::parse_expr(expr)?;
            let v = match sort {
                Some(s) => env.eval_at(&e, Sort::from_name(s)?)?,
                None => env.eval(&e)?,
            };
            let text = v.to_string();
            Ok(Outcome::new(
                json!({"sort": v.sort().name(), "value": text}),
                text,
            ))
        }
        Command::Taylor { poly: p, index, at } => {
            let p = poly(env, p)?;
            let at = at.as_deref().map(|a| series(env, a)).transpose()?;
            let indices = match index {
                Some(i) => vec![multi_index(i)?],
                None => p.derivative_support(),
            };
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            for j in indices {
                let pj = p.taylor_coeff(model, &j);
                let value = at.as_ref().map(|a| pj.evaluate(model, a).to_string());
                lines.push(match &value {
                    Some(v) => format!("p_{} = {}  ->  {}", j, pj, v),
                    None => format!("p_{} = {}", j, pj),
                });
                rows.push(json!({"index": j.to_string(), "poly": pj.to_string(), "value": value}));
            }
            Ok(Outcome::new(json!(rows), lines.join("\n")))
        }
        Command::Shift { poly: p, coeff } => {
            let p = poly(env, p)?;
            match coeff {
                Some(l) => {
                    let q = p.coeff_shift(model, *l)?;
                    Ok(Outcome::new(json!({"poly": q.to_string()}), q.to_string()))
                }
                None => {
                    let (m, s) = p.shift_normalize()?;
                    Ok(Outcome::new(
                        json!({"m": m, "poly": s.to_string()}),
                        format!("m = {}: {}", m, s),
                    ))
                }
            }
        }
        Command::Complexity { poly: p } => {
            let c = poly(env, p)?.complexity().to_string();
            Ok(Outcome::new(json!(c), c))
        }
        Command::Config { poly: p, at } => {
            let p = poly(env, p)?;
            let a = series(env, at)?;
            let c = hensel::find_configuration(model, &p, &a)?;
            let text = format!(
                "i = {}, gamma = {}, min_set = {:?}",
                c.i, c.gamma, c.min_set
            );
            Ok(Outcome::new(c.to_json(), text))
        }
        Command::Lift {
            poly: p,
            at,
            target,
            max_iter,
            residual,
        } => {
            let p = poly(env, p)?;
            let a = series(env, at)?;
            let target = match target {
                Some(t) => gamma(env, t)?,
                None => env.precision.clone(),
            };
            let mut opts = LiftOptions::default();
            if let Some(n) = max_iter {
                opts.max_iterations = *n;
            }
            if *residual {
                opts.stop = StopRule::Residual;
            }
            let out = hensel::lift_root_with(model, &p, &a, &target, opts)?;
            let result = json!({
                "root": out.root.to_string(),
                "gamma": out.gamma.as_ref().map(|g| g.to_string()),
                "values": strings(&out.values),
            });
            let mut o = Outcome::new(result, out.root.to_string());
            if trace {
                o.trace = match out.trace_json() {
                    Json::Array(steps) => steps,
                    other => vec![other],
                };
            }
            Ok(o)
        }
        Command::Rv { at } => {
            let r = rv::rv(&series(env, at)?)?;
            Ok(Outcome::new(rv_json(&r), r.to_string()))
        }
        Command::Oplus { terms } => {
            let xs = terms
                .iter()
                .map(|t| env.rv(&parse(t, Sort::Rv)?))
                .collect::<Result<Vec<_>>>()?;
            let r = rv::oplus(&xs)?;
            Ok(Outcome::new(rv_json(&r), r.to_string()))
        }
        Command::Linsolve { alphas } => {
            let alphas = alphas
                .iter()
                .map(|a| residue(env, a))
                .collect::<Result<Vec<_>>>()?;
            let z = linsolve::res_linsolve(model.k(), &alphas)?;
            Ok(Outcome::new(json!({"z": z.to_string()}), z.to_string()))
        }
        Command::Lambda { xs, y } => {
            let xs = parse_list(xs)?;
            let y = super::parse_expr(y)?;
            let mut series_args = false;
            for e in xs.iter().chain(std::iter::once(&y)) {
                match infer(e)? {
                    Sort::Num | Sort::K => {}
                    Sort::Vf => series_args = true,
                    s => {
                        return Err(Error::Sort(format!(
                            "{} has sort {}, expected a field element",
                            e,
                            s.name()
                        )))
                    }
                }
            }
            let r = if series_args {
                let xs = xs.iter().map(|e| env.vf(e)).collect::<Result<Vec<_>>>()?;
                lambda::lambda_series(model, &xs, &env.vf(&y)?)?
            } else {
                let xs = xs.iter().map(|e| env.k(e)).collect::<Result<Vec<_>>>()?;
                lambda::lambda(env.residue, &xs, &env.k(&y)?)?
            };
            let mut text = format!("({})", strings(&r.coeffs).join(", "));
            if let Some(reason) = r.reason {
                text = format!("{} {}", text, reason.as_str());
            }
            Ok(Outcome::new(r.to_json(), text))
        }
        Command::Density {
            at,
            gamma: g,
            eps,
            target,
        } => {
            let a = series(env, at)?;
            match (g, eps, target) {
                (Some(g), None, None) => {
                    let b = hensel::approximate_preimage(model, &a, &gamma(env, g)?)?;
                    Ok(Outcome::new(
                        json!({"preimage": b.to_string()}),
                        b.to_string(),
                    ))
                }
                (None, Some(e), t) => {
                    let e = series(env, e)?;
                    let t = match t {
                        Some(t) => gamma(env, t)?,
                        None => env.precision.clone(),
                    };
                    let b = hensel::solve_additive(model, &e, &a, &t)?;
                    Ok(Outcome::new(
                        json!({"solution": b.to_string()}),
                        b.to_string(),
                    ))
                }
                _ => Err(Error::Config(
                    "density takes either --gamma, or --eps with an optional --target".into(),
                )),
            }
        }
        Command::Pc {
            terms,
            polys,
            limits,
        } => {
            let terms = terms
                .iter()
                .map(|t| series(env, t))
                .collect::<Result<Vec<_>>>()?;
            let polys = polys
                .iter()
                .map(|p| poly(env, p))
                .collect::<Result<Vec<_>>>()?;
            let limits = limits
                .iter()
                .map(|t| series(env, t))
                .collect::<Result<Vec<_>>>()?;
            let r = hensel::pc_analyze(model, &terms, &polys, &limits)?;
            let mut lines = vec![
                format!("radii: {}", r.radii.join(", ")),
                format!("pseudo-Cauchy: {}", r.pseudo_cauchy),
            ];
            for (i, l) in r.limits.iter().enumerate() {
                lines.push(format!("limit {}: {}", i + 1, l));
            }
            for e in &r.polys {
                lines.push(format!(
                    "{}: values {}; increasing {}; stabilized at {}",
                    e.poly,
                    e.values.join(", "),
                    e.increasing,
                    e.stabilized_at.as_deref().unwrap_or("-")
                ));
            }
            let result = serde_json::to_value(&r).expect("plain struct");
            Ok(Outcome::new(result, lines.join("\n")))
        }
        Command::Regular { poly: p, at, fresh } => {
            let p = poly(env, p)?;
            match (at, fresh) {
                (Some(a), None) => {
                    let t = hensel::check_regular(model, &p, &series(env, a)?);
                    Ok(Outcome::new(json!({"regular": t.as_str()}), t.as_str()))
                }
                (None, Some(g)) => {
                    let used: BTreeSet<i64> =
                        p.terms().flat_map(|(_, c)| c.residue_vars()).collect();
                    let a = hensel::fresh_generic(model, &used, &gamma(env, g)?)?;
                    let t = hensel::check_regular(model, &p, &a);
                    Ok(Outcome::new(
                        json!({"element": a.to_string(), "regular": t.as_str()}),
                        format!("{}: {}", a, t.as_str()),
                    ))
                }
                _ => Err(Error::Config(
                    "regular takes exactly one of --at and --fresh".into(),
                )),
            }
        }
    }
}
