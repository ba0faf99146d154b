//! Resolution of named spec entries into core objects at the session's order.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::sync::Arc;

use poisson_forge_core::exact::{Chart, CoordPoly, GaussRational, HSeries};
use poisson_forge_core::geometry::{Bivector, Entry, MatrixGroupModel, PolyForm, VectorField};
use poisson_forge_core::hopf::{enveloping_hopf, HopfStructure};
use poisson_forge_core::lie::{cobracket_from_r, Cobracket, LieAlgebra, RMatrix, Tensor};
use poisson_forge_core::ncalg::{AlgebraMap, NCPoly, Presentation, PresentationBuilder};
use poisson_forge_core::qmomentum::{ActionExpr, QuantumAction};
use poisson_forge_core::reduction::ReductionSetup;

use crate::error::{CliError, CliResult};
use crate::eval::{self, GUARD};
use crate::expr::{parse, Expr};
use crate::schema::{Components, PhiSpec, SpecFile, Table};

/// Truncation order, monomial degree bound and seed shared by every check of one invocation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Session {
    pub order: usize,
    pub degree: usize,
    pub seed: u64,
}

impl Default for Session {
    fn default() -> Self {
        Session { order: 6, degree: 3, seed: DEFAULT_SEED }
    }
}

pub const DEFAULT_SEED: u64 = 0x5eed;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn missing(section: &str, name: &str) -> CliError {
    bad(format!("{section}: no entry named {name}"))
}

/// Splits "x,y" (or "x*y") into two names.
pub fn pair_key(key: &str, sep: char) -> CliResult<(String, String)> {
    let parts: Vec<&str> = key.split(sep).map(str::trim).collect();
    match parts.as_slice() {
        [a, b] if !a.is_empty() && !b.is_empty() => Ok((a.to_string(), b.to_string())),
        _ => Err(bad(format!("expected two names separated by '{sep}', got {key:?}"))),
    }
}

fn index_of(names: &[String], n: &str) -> CliResult<usize> {
    names.iter().position(|x| x == n).ok_or_else(|| bad(format!("unknown basis element {n}")))
}

type Lin = BTreeMap<Vec<usize>, GaussRational>;

fn lin_add(mut a: Lin, b: Lin, sign: i64) -> Lin {
    for (k, v) in b {
        let v = &v * &GaussRational::int(sign);
        let e = a.entry(k).or_insert_with(|| GaussRational::int(0));
        *e = &*e + &v;
    }
    a.retain(|_, v| *v != GaussRational::int(0));
    a
}

fn lin_scalar(x: &Lin) -> Option<GaussRational> {
    if x.keys().all(|k| k.is_empty()) {
        Some(x.get(&Vec::new()).cloned().unwrap_or_else(|| GaussRational::int(0)))
    } else {
        None
    }
}

fn lin_scale(x: &Lin, c: &GaussRational) -> Lin {
    x.iter().map(|(k, v)| (k.clone(), v * c)).filter(|(_, v)| *v != GaussRational::int(0)).collect()
}

fn eval_lin(e: &Expr, names: &[String]) -> CliResult<Lin> {
    Ok(match e {
        Expr::Num(_) => [(Vec::new(), eval::scalar(&e.to_string())?)].into_iter().collect(),
        Expr::Sym(s) if s == "i" && !names.contains(s) => [(Vec::new(), GaussRational::i())].into_iter().collect(),
        Expr::Sym(s) => [(vec![index_of(names, s)?], GaussRational::int(1))].into_iter().collect(),
        Expr::Neg(a) => lin_scale(&eval_lin(a, names)?, &GaussRational::int(-1)),
        Expr::Add(a, b) => lin_add(eval_lin(a, names)?, eval_lin(b, names)?, 1),
        Expr::Sub(a, b) => lin_add(eval_lin(a, names)?, eval_lin(b, names)?, -1),
        Expr::Mul(a, b) => {
            let (x, y) = (eval_lin(a, names)?, eval_lin(b, names)?);
            match (lin_scalar(&x), lin_scalar(&y)) {
                (Some(c), _) => lin_scale(&y, &c),
                (_, Some(c)) => lin_scale(&x, &c),
                _ => return Err(bad(format!("{e}: products of basis elements are written with '@'"))),
            }
        }
        Expr::Div(a, b) => {
            let d = lin_scalar(&eval_lin(b, names)?).and_then(|d| d.inv()).ok_or_else(|| bad(format!("{e}: bad divisor")))?;
            lin_scale(&eval_lin(a, names)?, &d)
        }
        Expr::Pow(..) => [(Vec::new(), eval::scalar(&e.to_string())?)].into_iter().collect(),
        Expr::Tensor(a, b) => {
            let (x, y) = (eval_lin(a, names)?, eval_lin(b, names)?);
            let mut out = Lin::new();
            for (i, u) in &x {
                for (j, v) in &y {
                    let k: Vec<usize> = i.iter().chain(j).copied().collect();
                    out = lin_add(out, [(k, u * v)].into_iter().collect(), 1);
                }
            }
            out
        }
        Expr::Call(f, args) if f == "wedge" && args.len() == 2 => {
            let t = Expr::Tensor(Box::new(args[0].clone()), Box::new(args[1].clone()));
            let s = Expr::Tensor(Box::new(args[1].clone()), Box::new(args[0].clone()));
            lin_add(eval_lin(&t, names)?, eval_lin(&s, names)?, -1)
        }
        _ => return Err(bad(format!("{e} is not a tensor over {}", names.join(",")))),
    })
}

/// A tensor of the given rank over named basis elements; `@` is ⊗ and wedge(x,y) = x@y − y@x.
pub fn tensor(src: &str, names: &[String], rank: usize) -> CliResult<Tensor> {
    let mut l = eval_lin(&parse(src)?, names)?;
    l.retain(|_, v| *v != GaussRational::int(0));
    if l.keys().any(|k| k.len() != rank) {
        return Err(bad(format!("{src} is not of tensor rank {rank}")));
    }
    Ok(Tensor::from_components(names.len(), rank, l)?)
}

pub struct Workspace {
    pub spec: SpecFile,
    pub session: Session,
    charts: RefCell<BTreeMap<String, Arc<Chart>>>,
    presentations: RefCell<BTreeMap<String, Arc<Presentation>>>,
}

impl Workspace {
    pub fn new(spec: SpecFile, session: Session) -> Self {
        Workspace { spec, session, charts: RefCell::default(), presentations: RefCell::default() }
    }

    pub fn lie(&self, name: &str) -> CliResult<LieAlgebra> {
        let s = self.spec.lie_algebras.get(name).ok_or_else(|| missing("lie_algebras", name))?;
        let mut brackets: Vec<(usize, usize, Vec<(usize, GaussRational)>)> = Vec::new();
        for (k, v) in &s.brackets {
            let (x, y) = pair_key(k, ',')?;
            let t = tensor(v, &s.basis, 1).map_err(|e| bad(format!("{name} [{k}]: {e}")))?;
            brackets.push((index_of(&s.basis, &x)?, index_of(&s.basis, &y)?, t.comps().iter().map(|(i, c)| (i[0], c.clone())).collect()));
        }
        let names: Vec<&str> = s.basis.iter().map(String::as_str).collect();
        let refs: Vec<(usize, usize, &[(usize, GaussRational)])> = brackets.iter().map(|(i, j, t)| (*i, *j, t.as_slice())).collect();
        LieAlgebra::unchecked(&names, &refs).map_err(|e| bad(format!("{name}: {e}")))
    }

    pub fn r_matrix(&self, name: &str) -> CliResult<(String, RMatrix)> {
        let s = self.spec.r_matrices.get(name).ok_or_else(|| missing("r_matrices", name))?;
        let l = self.lie(&s.algebra)?;
        Ok((s.algebra.clone(), RMatrix::new(tensor(&s.tensor, l.names(), 2)?)))
    }

    /// The cobracket of a `cobrackets` entry, with the r-matrix it came from if any.
    pub fn cobracket(&self, name: &str) -> CliResult<(LieAlgebra, Cobracket, Option<RMatrix>)> {
        let s = self.spec.cobrackets.get(name).ok_or_else(|| missing("cobrackets", name))?;
        let l = self.lie(&s.algebra)?;
        match (&s.r_matrix, &s.images) {
            (Some(r), None) => {
                let (alg, r) = self.r_matrix(r)?;
                if alg != s.algebra {
                    return Err(bad(format!("{name}: r-matrix lives on {alg}, not {}", s.algebra)));
                }
                let (d, _) = cobracket_from_r(&l, &r);
                Ok((l, d, Some(r)))
            }
            (None, Some(images)) => {
                let d = self.cobracket_table(&l, images)?;
                Ok((l, d, None))
            }
            _ => Err(bad(format!("{name}: give exactly one of r_matrix and images"))),
        }
    }

    pub fn cobracket_table(&self, l: &LieAlgebra, images: &Table) -> CliResult<Cobracket> {
        let mut ts = vec![Tensor::zero(l.dim(), 2); l.dim()];
        for (k, v) in images {
            ts[index_of(l.names(), k)?] = tensor(v, l.names(), 2)?;
        }
        Ok(Cobracket::from_images(&ts)?)
    }

    pub fn chart(&self, name: &str) -> CliResult<Arc<Chart>> {
        if let Some(c) = self.charts.borrow().get(name) {
            return Ok(c.clone());
        }
        let s = self.spec.charts.get(name).ok_or_else(|| missing("charts", name))?;
        for v in &s.invertible {
            if !s.coords.contains(v) {
                return Err(bad(format!("chart {name}: {v} is not a coordinate")));
            }
        }
        let mut seen = s.coords.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != s.coords.len() {
            return Err(bad(format!("chart {name}: repeated coordinate")));
        }
        let names: Vec<&str> = s.coords.iter().map(String::as_str).collect();
        let inv: Vec<&str> = s.invertible.iter().map(String::as_str).collect();
        let c = Chart::new(&names, &inv);
        self.charts.borrow_mut().insert(name.into(), c.clone());
        Ok(c)
    }

    pub fn bivector(&self, name: &str) -> CliResult<Bivector> {
        let s = self.spec.bivectors.get(name).ok_or_else(|| missing("bivectors", name))?;
        let chart = self.chart(&s.chart)?;
        let mut pi = Bivector::zero(&chart);
        for (k, v) in &s.entries {
            let (x, y) = pair_key(k, ',')?;
            let (i, j) = (coord(&chart, &x)?, coord(&chart, &y)?);
            if i == j {
                return Err(bad(format!("{name}: diagonal entry {k}")));
            }
            let p = eval::poly(v, &chart)?;
            if !pi.get(i, j).is_zero() {
                return Err(bad(format!("{name}: entry {k} given twice")));
            }
            pi.set(i, j, p);
        }
        Ok(pi)
    }

    pub fn casimirs(&self, chart: &Arc<Chart>, srcs: &[String]) -> CliResult<Vec<CoordPoly>> {
        srcs.iter().map(|s| eval::poly(s, chart)).collect()
    }

    pub fn group(&self, name: &str) -> CliResult<MatrixGroupModel> {
        let s = self.spec.matrix_groups.get(name).ok_or_else(|| missing("matrix_groups", name))?;
        let chart = self.chart(&s.chart)?;
        let l = self.lie(&s.algebra)?;
        let entries = s
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match chart.index(e.trim()) {
                        Some(v) => Ok(Entry::Var(v)),
                        None => Ok(Entry::Const(eval::scalar(e)?)),
                    })
                    .collect::<CliResult<Vec<_>>>()
            })
            .collect::<CliResult<Vec<_>>>()?;
        let mut basis = Vec::new();
        for b in l.names() {
            let m = s.basis.get(b).ok_or_else(|| bad(format!("{name}: no basis matrix for {b}")))?;
            basis.push(
                m.iter().map(|row| row.iter().map(|x| eval::scalar(x)).collect::<CliResult<Vec<_>>>()).collect::<CliResult<Vec<_>>>()?,
            );
        }
        if s.basis.len() != l.dim() {
            return Err(bad(format!("{name}: basis matrices for names outside {}", s.algebra)));
        }
        let m = MatrixGroupModel::new(name, chart, entries, l, basis)?;
        Ok(match &s.unit_determinant {
            Some(v) => m.with_unit_determinant(v)?,
            None => m,
        })
    }

    pub fn vector_field(&self, chart: &Arc<Chart>, comps: &Components) -> CliResult<VectorField> {
        let mut out = vec![CoordPoly::zero(chart); chart.dim()];
        for (k, v) in comps {
            out[coord(chart, k)?] = eval::poly(v, chart)?;
        }
        Ok(VectorField::new(chart, out))
    }

    pub fn one_form(&self, chart: &Arc<Chart>, comps: &Components) -> CliResult<PolyForm> {
        let mut out = vec![CoordPoly::zero(chart); chart.dim()];
        for (k, v) in comps {
            out[coord(chart, k)?] = eval::poly(v, chart)?;
        }
        Ok(PolyForm::one_form(chart, out))
    }

    /// One entry per basis name of `l`, in basis order; every name must be covered.
    pub fn per_basis<'a, T>(&self, l: &LieAlgebra, map: &'a BTreeMap<String, T>, what: &str) -> CliResult<Vec<&'a T>> {
        if let Some(k) = map.keys().find(|k| !l.names().contains(k)) {
            return Err(bad(format!("{what}: {k} is not a basis element")));
        }
        l.names().iter().map(|n| map.get(n).ok_or_else(|| bad(format!("{what}: nothing given for {n}")))).collect()
    }

    pub fn presentation(&self, name: &str) -> CliResult<Arc<Presentation>> {
        if let Some(p) = self.presentations.borrow().get(name) {
            return Ok(p.clone());
        }
        let s = self.spec.presentations.get(name).ok_or_else(|| missing("presentations", name))?;
        let order = self.session.order;
        let mut letters: Vec<String> = Vec::new();
        let mut b = PresentationBuilder::new(name, order);
        for g in &s.generators {
            if s.invertible.contains(g) {
                letters.push(format!("{g}^-1"));
                letters.push(g.clone());
                b = b.invertible(g);
            } else {
                letters.push(g.clone());
                b = b.generator(g);
            }
        }
        if let Some(v) = s.invertible.iter().find(|v| !s.generators.contains(v)) {
            return Err(bad(format!("presentation {name}: {v} is not a generator")));
        }
        let mut given: Vec<(String, String)> = Vec::new();
        for (k, v) in &s.rules {
            let (x, y) = pair_key(k, '*')?;
            for l in [&x, &y] {
                if !letters.contains(l) {
                    return Err(bad(format!("presentation {name}: unknown letter {l} in rule {k}")));
                }
            }
            let terms = eval::free_terms(v, &letters, order)?;
            let refs: Vec<(HSeries, Vec<&str>)> = terms.iter().map(|(c, w)| (c.clone(), w.iter().map(String::as_str).collect())).collect();
            b = b.rule(&x, &y, refs);
            given.push((x, y));
        }
        if s.commute_rest {
            for j in 0..letters.len() {
                for i in 0..j {
                    let (y, x) = (&letters[i], &letters[j]);
                    if *x == format!("{y}^-1") || *y == format!("{x}^-1") || given.contains(&(x.clone(), y.clone())) {
                        continue;
                    }
                    b = b.rule(x, y, vec![(HSeries::one(order), vec![y.as_str(), x.as_str()])]);
                }
            }
        }
        let p = b.build().map_err(|e| bad(format!("presentation {name}: {e}")))?;
        self.presentations.borrow_mut().insert(name.into(), p.clone());
        Ok(p)
    }

    fn map(&self, label: &str, p: &Arc<Presentation>, rank: usize, table: &Table, anti: bool) -> CliResult<AlgebraMap> {
        let order = self.session.order;
        let mut images = Vec::new();
        for l in p.letters() {
            let src = table.get(l).ok_or_else(|| bad(format!("{label}: no image for {l}")))?;
            images.push((l.as_str(), eval::element(src, p, rank, order).map_err(|e| bad(format!("{label}({l}): {e}")))?));
        }
        if let Some(k) = table.keys().find(|k| !p.letters().contains(k)) {
            return Err(bad(format!("{label}: {k} is not a letter of {}", p.name)));
        }
        Ok(AlgebraMap::new(label, p, p, rank, images, anti)?)
    }

    pub fn hopf(&self, name: &str) -> CliResult<HopfStructure> {
        let s = self.spec.hopf_structures.get(name).ok_or_else(|| missing("hopf_structures", name))?;
        match (&s.enveloping, &s.presentation) {
            (Some(l), None) => {
                let mut h = enveloping_hopf(&self.lie(l)?, self.session.order)?;
                h.name = name.into();
                Ok(h)
            }
            (None, Some(p)) => {
                let p = self.presentation(p)?;
                let d = self.map("Δ", &p, 2, &s.coproduct, false)?;
                let e = self.map("ε", &p, 0, &s.counit, false)?;
                let a = self.map("S", &p, 1, &s.antipode, true)?;
                Ok(HopfStructure::new(name, d, e, a)?)
            }
            _ => Err(bad(format!("hopf {name}: give exactly one of enveloping and presentation"))),
        }
    }

    /// The action with its coproduct and counit on the acting group.
    pub fn action(&self, name: &str) -> CliResult<(QuantumAction, AlgebraMap, AlgebraMap)> {
        let s = self.spec.actions.get(name).ok_or_else(|| missing("actions", name))?;
        let g = self.presentation(&s.group)?;
        let alg = self.presentation(&s.algebra)?;
        let mut exprs = Vec::new();
        for (l, p) in &s.phi {
            exprs.push((l.as_str(), self.phi_expr(p, &alg, &s.phi, None, 0).map_err(|e| bad(format!("{name} phi({l}): {e}")))?));
        }
        let act = QuantumAction::new(name, &g, &alg, exprs)?;
        let d = self.map("Δ", &g, 2, &s.coproduct, false)?;
        let e = self.map("ε", &g, 0, &s.counit, false)?;
        Ok((act, d, e))
    }

    /// Element of the acted-on algebra, with the action's named elements substituted.
    pub fn algebra_element(&self, src: &str, alg: &Arc<Presentation>, named: &Table) -> CliResult<NCPoly> {
        eval::element_with(src, alg, 1, self.session.order, named)
    }

    pub fn phi_expr(
        &self,
        p: &PhiSpec,
        alg: &Arc<Presentation>,
        phis: &BTreeMap<String, PhiSpec>,
        act: Option<&QuantumAction>,
        depth: usize,
    ) -> CliResult<ActionExpr> {
        if depth > 32 {
            return Err(bad("phi references nest too deeply"));
        }
        let order = self.session.order;
        let el = |s: &str| eval::element(s, alg, 1, order);
        let rec = |q: &PhiSpec| self.phi_expr(q, alg, phis, act, depth + 1);
        let series = |s: &str| eval::series(s, order + 1);
        Ok(match p {
            PhiSpec::Identity => ActionExpr::Identity,
            PhiSpec::Left(a) => ActionExpr::Left(el(a)?),
            PhiSpec::Right(a) => ActionExpr::Right(el(a)?),
            PhiSpec::Commutator(a) => ActionExpr::Commutator(el(a)?),
            PhiSpec::Hamiltonian(a, b) => ActionExpr::hamiltonian(el(a)?, el(b)?),
            PhiSpec::HamiltonianRight(c, a) => ActionExpr::hamiltonian_right(el(c)?, el(a)?),
            PhiSpec::Conjugation(a, b) => ActionExpr::conjugation(el(a)?, el(b)?),
            PhiSpec::Scale(c, q) => ActionExpr::scale(eval::series(c, order)?, rec(q)?),
            PhiSpec::Sum(qs) => ActionExpr::Sum(qs.iter().map(rec).collect::<CliResult<_>>()?),
            PhiSpec::Diff(a, b) => ActionExpr::minus(rec(a)?, rec(b)?),
            PhiSpec::Compose(a, b) => ActionExpr::compose(rec(a)?, rec(b)?),
            PhiSpec::DivHbar(k, q) => ActionExpr::DivHbar(*k, Box::new(rec(q)?)),
            PhiSpec::DivSeries(s, q) => ActionExpr::DivSeries(series(s)?, Box::new(rec(q)?)),
            PhiSpec::Phi(l) => match act {
                Some(a) => a.expr(a.group().letter(l)?).clone(),
                None => rec(phis.get(l).ok_or_else(|| bad(format!("phi({l}) is not defined")))?)?,
            },
            PhiSpec::Element(x) => {
                let a = act.ok_or_else(|| bad("group elements are only allowed in relations"))?;
                a.element_expr(&eval::element(x, a.group(), 1, order)?)
            }
        })
    }

    pub fn reduction(&self, name: &str) -> CliResult<ReductionSetup> {
        let s = self.spec.reductions.get(name).ok_or_else(|| missing("reductions", name))?;
        let pi = self.bivector(&s.bivector)?;
        let chart = pi.chart().clone();
        let fields = s.fields.iter().map(|(k, c)| Ok((k.clone(), self.vector_field(&chart, c)?))).collect::<CliResult<Vec<_>>>()?;
        let momentum = s.momentum.iter().map(|m| eval::poly(m, &chart)).collect::<CliResult<Vec<_>>>()?;
        let ideal = s.ideal.iter().map(|m| eval::poly(m, &chart)).collect::<CliResult<Vec<_>>>()?;
        Ok(ReductionSetup { name: name.into(), pi, fields, momentum, ideal })
    }
}

pub fn coord(chart: &Chart, name: &str) -> CliResult<usize> {
    chart.index(name).ok_or_else(|| bad(format!("unknown coordinate {name}")))
}

/// ħ-orders lost by the time a series expression is known exactly; see [`GUARD`].
pub const SERIES_GUARD: usize = GUARD;
