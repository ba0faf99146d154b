//! Evaluation of parsed expressions into scalars, ħ-series, chart polynomials and elements of
//! presented algebras.

use std::sync::Arc;

use num_traits::Zero;
use poisson_forge_core::exact::{Chart, CoordPoly, GaussRational, HSeries};
use poisson_forge_core::ncalg::{NCPoly, Presentation};

use crate::error::{CliError, CliResult};
use crate::expr::{parse, Expr};
use crate::schema::Table;

/// Extra ħ-orders carried while evaluating series, so that divisions by ħ stay exact.
pub const GUARD: usize = 4;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn number(n: &str) -> CliResult<GaussRational> {
    Ok(GaussRational::parse(n)?)
}

pub fn scalar(src: &str) -> CliResult<GaussRational> {
    eval_scalar(&parse(src)?)
}

fn eval_scalar(e: &Expr) -> CliResult<GaussRational> {
    Ok(match e {
        Expr::Num(n) => number(n)?,
        Expr::Sym(s) if s == "i" => GaussRational::i(),
        Expr::Neg(a) => -eval_scalar(a)?,
        Expr::Add(a, b) => &eval_scalar(a)? + &eval_scalar(b)?,
        Expr::Sub(a, b) => &eval_scalar(a)? - &eval_scalar(b)?,
        Expr::Mul(a, b) => &eval_scalar(a)? * &eval_scalar(b)?,
        Expr::Div(a, b) => {
            let d = eval_scalar(b)?.inv().ok_or_else(|| bad(format!("division by zero in {e}")))?;
            &eval_scalar(a)? * &d
        }
        Expr::Pow(a, k) => {
            let x = eval_scalar(a)?;
            let x = if *k < 0 { x.inv().ok_or_else(|| bad(format!("zero to a negative power in {e}")))? } else { x };
            x.pow(k.unsigned_abs() as u32)
        }
        _ => return Err(bad(format!("{e} is not a scalar"))),
    })
}

/// A series truncated at `order`; intermediate results carry GUARD extra orders.
pub fn series(src: &str, order: usize) -> CliResult<HSeries> {
    let s = eval_series(&parse(src)?, order + GUARD)?;
    if s.order() < order {
        return Err(CliError::Capability(format!("{src} is only known to order {}", s.order())));
    }
    Ok(s.truncate(order))
}

fn eval_series(e: &Expr, n: usize) -> CliResult<HSeries> {
    Ok(match e {
        Expr::Num(_) => HSeries::constant(eval_scalar(e)?, n),
        Expr::Sym(s) if s == "i" => HSeries::constant(GaussRational::i(), n),
        Expr::Sym(s) if s == "h" => HSeries::hbar(1, n),
        Expr::Neg(a) => -eval_series(a, n)?,
        Expr::Add(a, b) => &eval_series(a, n)? + &eval_series(b, n)?,
        Expr::Sub(a, b) => &eval_series(a, n)? - &eval_series(b, n)?,
        Expr::Mul(a, b) => &eval_series(a, n)? * &eval_series(b, n)?,
        Expr::Div(a, b) => eval_series(a, n)?.div(&eval_series(b, n)?)?,
        Expr::Pow(a, k) => {
            let x = eval_series(a, n)?;
            let x = if *k < 0 { x.inv()? } else { x };
            x.pow(k.unsigned_abs() as u32)
        }
        Expr::Call(f, args) if args.len() == 1 => {
            let x = eval_series(&args[0], n)?;
            match f.as_str() {
                "exp" => {
                    let c = x.constant_term();
                    if c.is_zero() {
                        x.exp()?
                    } else {
                        return Err(bad(format!("exp of a series with constant term {c} is not a formal series")));
                    }
                }
                "log" => x.log()?,
                _ => return Err(bad(format!("unknown function {f}"))),
            }
        }
        _ => return Err(bad(format!("{e} is not a series"))),
    })
}

/// A polynomial on the chart; division only by constants and monomials in invertible coordinates.
pub fn poly(src: &str, chart: &Arc<Chart>) -> CliResult<CoordPoly> {
    eval_poly(&parse(src)?, chart)
}

fn eval_poly(e: &Expr, ch: &Arc<Chart>) -> CliResult<CoordPoly> {
    Ok(match e {
        Expr::Num(_) => CoordPoly::constant(ch, eval_scalar(e)?),
        Expr::Sym(s) => match ch.index(s) {
            Some(i) => CoordPoly::var(ch, i),
            None if s == "i" => CoordPoly::constant(ch, GaussRational::i()),
            None => return Err(bad(format!("unknown coordinate {s}"))),
        },
        Expr::Neg(a) => -&eval_poly(a, ch)?,
        Expr::Add(a, b) => &eval_poly(a, ch)? + &eval_poly(b, ch)?,
        Expr::Sub(a, b) => &eval_poly(a, ch)? - &eval_poly(b, ch)?,
        Expr::Mul(a, b) => &eval_poly(a, ch)? * &eval_poly(b, ch)?,
        Expr::Div(a, b) => {
            let d = eval_poly(b, ch)?;
            let inv = match d.as_constant() {
                Some(c) => CoordPoly::constant(ch, c.inv().ok_or_else(|| bad(format!("division by zero in {e}")))?),
                None => d.inv_monomial()?,
            };
            &eval_poly(a, ch)? * &inv
        }
        Expr::Pow(a, k) => {
            let x = eval_poly(a, ch)?;
            let x = if *k < 0 { x.inv_monomial()? } else { x };
            x.pow(k.unsigned_abs() as u32)
        }
        _ => return Err(bad(format!("{e} is not a polynomial"))),
    })
}

/// Intermediate value of an algebra expression: scalars are lifted on contact.
enum Val {
    Scalar(HSeries),
    Elem(NCPoly),
}

struct NcCtx<'a> {
    pres: &'a Arc<Presentation>,
    order: usize,
    env: &'a Table,
    depth: usize,
}

impl NcCtx<'_> {
    fn lift(&self, v: Val, rank: usize) -> NCPoly {
        match v {
            Val::Scalar(c) => NCPoly::scalar(self.pres, rank, c),
            Val::Elem(x) => x,
        }
    }

    fn letter(&self, name: &str) -> CliResult<Val> {
        Ok(Val::Elem(NCPoly::letter(self.pres, name, self.order)?))
    }

    fn eval(&self, e: &Expr) -> CliResult<Val> {
        let n = self.order + GUARD;
        Ok(match e {
            Expr::Num(_) => Val::Scalar(HSeries::constant(eval_scalar(e)?, n)),
            Expr::Sym(s) if self.pres.letter(s).is_ok() => self.letter(s)?,
            Expr::Sym(s) if self.env.contains_key(s) => {
                if self.depth > 16 {
                    return Err(bad(format!("named element {s} refers to itself")));
                }
                let inner = NcCtx { depth: self.depth + 1, ..*self };
                inner.eval(&parse(&self.env[s])?)?
            }
            Expr::Sym(s) if s == "h" => Val::Scalar(HSeries::hbar(1, n)),
            Expr::Sym(s) if s == "i" => Val::Scalar(HSeries::constant(GaussRational::i(), n)),
            Expr::Sym(s) => return Err(bad(format!("unknown letter {s} in {}", self.pres.name))),
            Expr::Neg(a) => match self.eval(a)? {
                Val::Scalar(c) => Val::Scalar(-c),
                Val::Elem(x) => Val::Elem(-&x),
            },
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                let sub = matches!(e, Expr::Sub(..));
                match (x, y) {
                    (Val::Scalar(p), Val::Scalar(q)) => Val::Scalar(if sub { &p - &q } else { &p + &q }),
                    (x, y) => {
                        let rank = match (&x, &y) {
                            (Val::Elem(p), _) => p.rank(),
                            (_, Val::Elem(q)) => q.rank(),
                            _ => unreachable!(),
                        };
                        let (p, q) = (self.lift(x, rank), self.lift(y, rank));
                        Val::Elem(p.try_add(&if sub { -&q } else { q })?)
                    }
                }
            }
            Expr::Mul(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (Val::Scalar(p), Val::Scalar(q)) => Val::Scalar(&p * &q),
                (Val::Scalar(c), Val::Elem(x)) | (Val::Elem(x), Val::Scalar(c)) => Val::Elem(x.scale(&c)),
                (Val::Elem(x), Val::Elem(y)) => Val::Elem(x.try_mul(&y)?),
            },
            Expr::Div(a, b) => {
                let Val::Scalar(d) = self.eval(b)? else {
                    return Err(bad(format!("division by a non-scalar in {e}")));
                };
                match self.eval(a)? {
                    Val::Scalar(p) => Val::Scalar(p.div(&d)?),
                    Val::Elem(x) => {
                        let v = d.valuation().ok_or_else(|| bad(format!("division by zero in {e}")))?;
                        let inv = d.divide_by_hbar(v)?.inv()?;
                        Val::Elem(x.divide_by_hbar(v)?.scale(&inv))
                    }
                }
            }
            Expr::Pow(a, k) => {
                if *k < 0 {
                    if let Expr::Sym(s) = a.as_ref() {
                        let inv = format!("{s}^-1");
                        if self.pres.letter(&inv).is_ok() {
                            let x = NCPoly::letter(self.pres, &inv, self.order)?;
                            return Ok(Val::Elem(x.pow(k.unsigned_abs() as u32)?));
                        }
                    }
                }
                match self.eval(a)? {
                    Val::Scalar(c) => {
                        let c = if *k < 0 { c.inv()? } else { c };
                        Val::Scalar(c.pow(k.unsigned_abs() as u32))
                    }
                    Val::Elem(x) if *k >= 0 => Val::Elem(x.pow(*k as u32)?),
                    Val::Elem(_) => return Err(bad(format!("negative power of a non-invertible element in {e}"))),
                }
            }
            Expr::Tensor(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                let (x, y) = (self.lift(x, 1), self.lift(y, 1));
                Val::Elem(x.tensor(&y)?)
            }
            Expr::Call(f, args) if f == "exp" && args.len() == 1 => match self.eval(&args[0])? {
                Val::Scalar(c) if c.constant_term().is_zero() => Val::Scalar(c.exp()?),
                Val::Scalar(_) => return Err(bad(format!("exp of {e} has a constant term"))),
                Val::Elem(x) => Val::Elem(exp_elem(&x)?),
            },
            _ => return Err(bad(format!("{e} is not an algebra element"))),
        })
    }
}

/// Σ xᵏ/k! for x of positive ħ-valuation; the sum stops at the truncation order.
fn exp_elem(x: &NCPoly) -> CliResult<NCPoly> {
    if x.valuation().is_some_and(|v| v == 0) {
        return Err(bad(format!("exp of {} needs ħ-valuation at least 1", x.render())));
    }
    let mut out = NCPoly::one(x.presentation(), x.rank(), x.order());
    let mut term = out.clone();
    for k in 1..x.order() {
        term = term.try_mul(x)?.scale(&HSeries::constant(GaussRational::frac(1, k as i64), x.order()));
        out = out.try_add(&term)?;
    }
    Ok(out)
}

/// An element of the given tensor rank; scalar results are lifted to that rank.
pub fn element(src: &str, pres: &Arc<Presentation>, rank: usize, order: usize) -> CliResult<NCPoly> {
    element_with(src, pres, rank, order, &Table::new())
}

/// As [`element`], with names from `env` standing for their (recursively evaluated) expressions.
pub fn element_with(src: &str, pres: &Arc<Presentation>, rank: usize, order: usize, env: &Table) -> CliResult<NCPoly> {
    let ctx = NcCtx { pres, order, env, depth: 0 };
    let v = ctx.eval(&parse(src)?)?;
    let x = ctx.lift(v, rank);
    if x.rank() != rank {
        return Err(bad(format!("{src} has tensor rank {}, expected {rank}", x.rank())));
    }
    Ok(x.truncate(order.min(x.order())))
}

/// Linear combination of words (letter names) with series coefficients, without normalizing.
pub fn free_terms(src: &str, letters: &[String], order: usize) -> CliResult<Vec<(HSeries, Vec<String>)>> {
    type Terms = Vec<(HSeries, Vec<String>)>;
    fn combine(ts: Terms) -> Terms {
        let mut out: Terms = Vec::new();
        for (c, w) in ts {
            match out.iter_mut().find(|(_, v)| *v == w) {
                Some(slot) => slot.0 = &slot.0 + &c,
                None => out.push((c, w)),
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        out
    }
    fn product(x: &Terms, y: &Terms) -> Terms {
        let mut out = Vec::new();
        for (c, u) in x {
            for (d, v) in y {
                out.push((c * d, [u.clone(), v.clone()].concat()));
            }
        }
        combine(out)
    }
    fn go(e: &Expr, letters: &[String], n: usize) -> CliResult<Vec<(HSeries, Vec<String>)>> {
        let sym = |s: &str| -> Option<String> { letters.iter().find(|l| *l == s).cloned() };
        Ok(match e {
            Expr::Sym(s) if sym(s).is_some() => vec![(HSeries::one(n), vec![s.clone()])],
            Expr::Pow(a, k) => match a.as_ref() {
                Expr::Sym(s) if *k < 0 && sym(&format!("{s}^-1")).is_some() => {
                    vec![(HSeries::one(n), vec![format!("{s}^-1"); k.unsigned_abs() as usize])]
                }
                Expr::Sym(s) if *k >= 0 && sym(s).is_some() => vec![(HSeries::one(n), vec![s.clone(); *k as usize])],
                _ => vec![(eval_series(e, n)?, vec![])],
            },
            Expr::Neg(a) => go(a, letters, n)?.into_iter().map(|(c, w)| (-c, w)).collect(),
            Expr::Add(a, b) => [go(a, letters, n)?, go(b, letters, n)?].concat(),
            Expr::Sub(a, b) => [go(a, letters, n)?, go(&Expr::Neg(b.clone()), letters, n)?].concat(),
            Expr::Mul(a, b) => product(&go(a, letters, n)?, &go(b, letters, n)?),
            Expr::Call(f, args) if f == "exp" && args.len() == 1 => {
                let x = go(&args[0], letters, n)?;
                if x.iter().all(|(_, w)| w.is_empty()) {
                    vec![(eval_series(e, n)?, vec![])]
                } else {
                    if x.iter().any(|(c, _)| c.valuation() == Some(0)) {
                        return Err(bad(format!("exp of {e} needs ħ-valuation at least 1")));
                    }
                    let mut out = vec![(HSeries::one(n), vec![])];
                    let mut term = out.clone();
                    for k in 1..n {
                        let inv_k = HSeries::constant(GaussRational::frac(1, k as i64), n);
                        term = product(&term, &x).into_iter().map(|(c, w)| (&c * &inv_k, w)).filter(|(c, _)| !c.is_zero()).collect();
                        out = combine([out, term.clone()].concat());
                    }
                    out
                }
            }
            Expr::Div(a, b) => {
                let d = eval_series(b, n)?;
                combine(go(a, letters, n)?).into_iter().map(|(c, w)| Ok((c.div(&d)?, w))).collect::<CliResult<_>>()?
            }
            _ => vec![(eval_series(e, n)?, vec![])],
        })
    }
    let terms = go(&parse(src)?, letters, order + GUARD)?;
    let mut out = Vec::new();
    for (c, w) in combine(terms) {
        if c.order() < order {
            return Err(CliError::Capability(format!("{src} is only known to order {}", c.order())));
        }
        let c = c.truncate(order);
        if !c.is_zero() {
            out.push((c, w));
        }
    }
    Ok(out)
}
