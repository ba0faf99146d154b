//! Endomorphism expressions and quantum actions of presented Hopf algebras.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::exact::HSeries;
use crate::linalg::{solve_series, SeriesMatrix};
use crate::ncalg::{AlgebraMap, NCPoly, Presentation, Word};
use crate::report::Check;
use crate::{Error, Result};

/// A formal endomorphism of a presented algebra.
#[derive(Clone, Debug)]
pub enum ActionExpr {
    Identity,
    /// f ↦ c f
    Left(NCPoly),
    /// f ↦ f c
    Right(NCPoly),
    /// f ↦ [c, f]
    Commutator(NCPoly),
    Scale(HSeries, Box<ActionExpr>),
    Sum(Vec<ActionExpr>),
    Diff(Box<ActionExpr>, Box<ActionExpr>),
    /// outer ∘ inner
    Compose(Box<ActionExpr>, Box<ActionExpr>),
    /// Division of the result by ħ^k; fails where the valuation is too small.
    DivHbar(usize, Box<ActionExpr>),
    /// Division of the result by a series s of valuation v: (x/ħ^v)·(s/ħ^v)⁻¹.
    DivSeries(HSeries, Box<ActionExpr>),
}

impl ActionExpr {
    /// (1/ħ) a [b, ·]
    pub fn hamiltonian(a: NCPoly, b: NCPoly) -> Self {
        ActionExpr::DivHbar(1, Box::new(ActionExpr::Compose(Box::new(ActionExpr::Left(a)), Box::new(ActionExpr::Commutator(b)))))
    }

    /// (1/ħ) [c, ·] a
    pub fn hamiltonian_right(c: NCPoly, a: NCPoly) -> Self {
        ActionExpr::DivHbar(1, Box::new(ActionExpr::Compose(Box::new(ActionExpr::Right(a)), Box::new(ActionExpr::Commutator(c)))))
    }

    /// f ↦ a f a'
    pub fn conjugation(a: NCPoly, a_inv: NCPoly) -> Self {
        ActionExpr::Compose(Box::new(ActionExpr::Left(a)), Box::new(ActionExpr::Right(a_inv)))
    }

    pub fn compose(outer: ActionExpr, inner: ActionExpr) -> Self {
        ActionExpr::Compose(Box::new(outer), Box::new(inner))
    }

    pub fn scale(c: HSeries, e: ActionExpr) -> Self {
        ActionExpr::Scale(c, Box::new(e))
    }

    pub fn minus(a: ActionExpr, b: ActionExpr) -> Self {
        ActionExpr::Diff(Box::new(a), Box::new(b))
    }

    pub fn commutator_of(a: ActionExpr, b: ActionExpr) -> Self {
        Self::minus(Self::compose(a.clone(), b.clone()), Self::compose(b, a))
    }

    pub fn apply(&self, f: &NCPoly) -> Result<NCPoly> {
        match self {
            ActionExpr::Identity => Ok(f.clone()),
            ActionExpr::Left(c) => c.try_mul(f),
            ActionExpr::Right(c) => f.try_mul(c),
            ActionExpr::Commutator(c) => Ok(c.try_mul(f)? - f.try_mul(c)?),
            ActionExpr::Scale(s, e) => Ok(e.apply(f)?.scale(s)),
            ActionExpr::Sum(parts) => {
                let mut out = NCPoly::zero(f.presentation(), f.rank(), f.order());
                for p in parts {
                    out = out.try_add(&p.apply(f)?)?;
                }
                Ok(out)
            }
            ActionExpr::Diff(a, b) => Ok(a.apply(f)?.try_add(&-&b.apply(f)?)?),
            ActionExpr::Compose(outer, inner) => outer.apply(&inner.apply(f)?),
            ActionExpr::DivHbar(k, e) => {
                let x = e.apply(f)?;
                x.divide_by_hbar(*k).map_err(|_| Error::Valuation { needed: *k, found: x.valuation() })
            }
            ActionExpr::DivSeries(s, e) => {
                let v = s.valuation().ok_or_else(|| Error::NotInvertible("division by a series that vanishes to its order".into()))?;
                let x = e.apply(f)?;
                let q = x.divide_by_hbar(v).map_err(|_| Error::Valuation { needed: v, found: x.valuation() })?;
                Ok(q.scale(&s.divide_by_hbar(v)?.inv()?))
            }
        }
    }
}

/// A quantum group acting on a presented algebra by one expression per group letter.
#[derive(Clone, Debug)]
pub struct QuantumAction {
    pub name: String,
    group: Arc<Presentation>,
    algebra: Arc<Presentation>,
    exprs: Vec<ActionExpr>,
}

impl QuantumAction {
    pub fn new(name: &str, group: &Arc<Presentation>, algebra: &Arc<Presentation>, exprs: Vec<(&str, ActionExpr)>) -> Result<Self> {
        let mut slots: Vec<Option<ActionExpr>> = alloc::vec![None; group.letters().len()];
        for (n, e) in exprs {
            let l = group.letter(n)?;
            if slots[l].replace(e).is_some() {
                return Err(Error::Malformed(format!("{name}: action of {n} given twice")));
            }
        }
        let exprs = slots
            .into_iter()
            .enumerate()
            .map(|(l, s)| s.ok_or_else(|| Error::Malformed(format!("{name}: no action for {}", group.letters()[l]))))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuantumAction { name: name.into(), group: group.clone(), algebra: algebra.clone(), exprs })
    }

    pub fn group(&self) -> &Arc<Presentation> {
        &self.group
    }

    pub fn algebra(&self) -> &Arc<Presentation> {
        &self.algebra
    }

    pub fn expr(&self, letter: usize) -> &ActionExpr {
        &self.exprs[letter]
    }

    /// Φ(w₁⋯w_n) = Φ(w₁)∘⋯∘Φ(w_n).
    pub fn apply_word(&self, w: &[usize], f: &NCPoly) -> Result<NCPoly> {
        let mut x = f.clone();
        for l in w.iter().rev() {
            x = self.exprs[*l].apply(&x)?;
        }
        Ok(x)
    }

    /// Φ(x)f for a group element x, extended linearly.
    pub fn apply_action(&self, x: &NCPoly, f: &NCPoly) -> Result<NCPoly> {
        if !Arc::ptr_eq(x.presentation(), &self.group) || x.rank() != 1 {
            return Err(Error::Malformed(format!("{}: element is not in the acting group", self.name)));
        }
        let mut out = NCPoly::zero(&self.algebra, 1, f.order());
        for (w, c) in x.word_terms() {
            out = out.try_add(&self.apply_word(w, f)?.scale(c))?;
        }
        Ok(out)
    }

    /// The expression of a group element.
    pub fn element_expr(&self, x: &NCPoly) -> ActionExpr {
        let parts = x
            .word_terms()
            .map(|(w, c)| {
                let mut e = ActionExpr::Identity;
                for l in w.iter().rev() {
                    e = ActionExpr::compose(self.exprs[*l].clone(), e);
                }
                ActionExpr::scale(c.clone(), e)
            })
            .collect();
        ActionExpr::Sum(parts)
    }

    fn domain(&self, degree: usize) -> Vec<Word> {
        self.algebra.normal_words(degree)
    }

    fn monomial(&self, w: &[usize]) -> Result<NCPoly> {
        NCPoly::word(&self.algebra, w, self.algebra.order())
    }
}

fn record(chk: &mut Check, at: String, r: Result<NCPoly>) {
    match r {
        Ok(d) => {
            chk.note_order(d.order());
            if !d.is_zero() {
                chk.fail(at, d.render());
            }
        }
        Err(e) => chk.fail(at, format!("{e}")),
    }
}

/// Φ respects every rule and inverse pair of the acting group on monomials of degree ≤ d.
pub fn check_action_relations(phi: &QuantumAction, degree: usize) -> Check {
    let g = &phi.group;
    let mut chk = Check::new(format!("action respects relations ({})", phi.name));
    let mut rels: Vec<(Vec<usize>, Vec<(Vec<usize>, HSeries)>)> = g.rules().map(|((x, y), r)| (alloc::vec![*x, *y], r.clone())).collect();
    for l in 0..g.letters().len() {
        if let Some(inv) = g.inverse_of(l) {
            rels.push((alloc::vec![l, inv], alloc::vec![(Vec::new(), HSeries::one(g.order()))]));
        }
    }
    for f in phi.domain(degree) {
        for (lhs, rhs) in &rels {
            let r = (|| {
                let fp = phi.monomial(&f)?;
                let mut d = phi.apply_word(lhs, &fp)?;
                for (w, c) in rhs {
                    d = d.try_add(&-&phi.apply_word(w, &fp)?.scale(c))?;
                }
                Ok(d)
            })();
            record(&mut chk, format!("{} on {}", g.render_word(lhs), phi.algebra.render_word(&f)), r);
        }
    }
    chk
}

/// Pairs of normal monomials (f, g) with deg f + deg g ≤ d.
fn pairs(p: &Presentation, degree: usize) -> Vec<(Word, Word)> {
    let words = p.normal_words(degree);
    let mut out = Vec::new();
    for f in &words {
        for g in &words {
            if f.len() + g.len() <= degree {
                out.push((f.clone(), g.clone()));
            }
        }
    }
    out
}

/// Φ(x)(fg) = m((Φ⊗Φ)(Δx)(f⊗g)) for every group letter x and monomials with
/// deg f + deg g ≤ d.
pub fn check_module_algebra(phi: &QuantumAction, delta: &AlgebraMap, degree: usize) -> Check {
    let mut chk = Check::new(format!("module algebra ({})", phi.name));
    if !Arc::ptr_eq(delta.source(), &phi.group) || delta.rank() != 2 {
        chk.fail("coproduct", "not a coproduct on the acting group");
        return chk;
    }
    let a = &phi.algebra;
    for (f, g) in pairs(a, degree) {
        for x in 0..phi.group.letters().len() {
            let r = (|| {
                let (fp, gp) = (phi.monomial(&f)?, phi.monomial(&g)?);
                let lhs = phi.exprs[x].apply(&fp.try_mul(&gp)?)?;
                let mut rhs = NCPoly::zero(a, 1, lhs.order());
                for (tw, c) in delta.image(x).terms() {
                    let term = phi.apply_word(&tw[0], &fp)?.try_mul(&phi.apply_word(&tw[1], &gp)?)?;
                    rhs = rhs.try_add(&term.scale(c))?;
                }
                Ok(lhs - rhs)
            })();
            record(&mut chk, format!("{}({}·{})", phi.group.letters()[x], a.render_word(&f), a.render_word(&g)), r);
        }
    }
    chk
}

/// A relation [x, y] = rhs checked at the level of endomorphisms.
#[derive(Clone, Debug)]
pub struct LieRelation {
    pub x: usize,
    pub y: usize,
    pub rhs: ActionExpr,
    pub label: String,
}

/// [Φ(x), Φ(y)] f = rhs f on monomials of degree ≤ d.
pub fn check_action_lie_hom(phi: &QuantumAction, relations: &[LieRelation], degree: usize) -> Check {
    let mut chk = Check::new(format!("Lie homomorphism ({})", phi.name));
    for rel in relations {
        let lhs = ActionExpr::commutator_of(phi.exprs[rel.x].clone(), phi.exprs[rel.y].clone());
        for f in phi.domain(degree) {
            let r = (|| {
                let fp = phi.monomial(&f)?;
                Ok(lhs.apply(&fp)? - rel.rhs.apply(&fp)?)
            })();
            record(&mut chk, format!("{} on {}", rel.label, phi.algebra.render_word(&f)), r);
        }
    }
    chk
}

/// Solves [Φ(x), Φ(y)] = Σ_w c_w Φ(w) over the candidate group words, order by order in ħ,
/// on monomials of degree ≤ d. Returns the group element Σ c_w w, or `None` when the
/// commutator is not in the span.
pub fn diagnose_relation(phi: &QuantumAction, x: usize, y: usize, candidates: &[Word], degree: usize) -> Result<Option<NCPoly>> {
    let lhs = ActionExpr::commutator_of(phi.exprs[x].clone(), phi.exprs[y].clone());
    let mut rows: SeriesMatrix = Vec::new();
    let mut rhs: Vec<HSeries> = Vec::new();
    let mut order = phi.algebra.order();
    for f in phi.domain(degree) {
        let fp = phi.monomial(&f)?;
        let target = lhs.apply(&fp)?;
        let images = candidates.iter().map(|w| phi.apply_word(w, &fp)).collect::<Result<Vec<_>>>()?;
        order = order.min(target.order());
        for im in &images {
            order = order.min(im.order());
        }
        let mut keys: Vec<&Vec<Word>> = target.terms().keys().collect();
        for im in &images {
            keys.extend(im.terms().keys());
        }
        keys.sort();
        keys.dedup();
        for k in keys {
            rows.push(images.iter().map(|im| im.coeff(k)).collect());
            rhs.push(target.coeff(k));
        }
    }
    let rows: SeriesMatrix = rows.into_iter().map(|r| r.into_iter().map(|c| c.truncate(order)).collect()).collect();
    let rhs: Vec<HSeries> = rhs.into_iter().map(|c| c.truncate(order)).collect();
    let Some(sol) = solve_series(&rows, candidates.len(), &rhs, order) else { return Ok(None) };
    let mut out = NCPoly::zero(&phi.group, 1, order);
    for (w, c) in candidates.iter().zip(sol) {
        out = out.try_add(&NCPoly::word(&phi.group, w, order)?.scale(&c))?;
    }
    Ok(Some(out))
}
