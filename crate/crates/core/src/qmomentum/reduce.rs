//! Ideals in presented algebras, their invariance under quantum actions, and invariant
//! subalgebras of quotients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use num_traits::Zero;

use super::action::QuantumAction;
use crate::exact::{CoordPoly, HSeries};
use crate::geometry::poisson_bracket;
use crate::linalg::{series_kernel, SeriesMatrix};
use crate::ncalg::{abelianize, classical_chart, semiclassical_bivector, word_cmp, AlgebraMap, NCPoly, Presentation, Word};
use crate::report::Check;
use crate::{Error, Result};

/// Which multiples of the generators span the ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Σ u·J
    Left,
    /// Σ u·J·v
    TwoSided,
}

/// Division by the multiples u·J (or u·J·v) whose leading coefficient is a unit.
///
/// A zero remainder certifies membership. A nonzero remainder is the normal form with
/// respect to the tabulated leading words.
#[derive(Clone, Debug)]
pub struct IdealReducer {
    pres: Arc<Presentation>,
    gens: Vec<NCPoly>,
    side: Side,
    max_len: usize,
    table: BTreeMap<Word, (NCPoly, HSeries)>,
}

fn leading(x: &NCPoly) -> Option<(&Word, &HSeries)> {
    x.word_terms().max_by(|a, b| word_cmp(a.0, b.0))
}

impl IdealReducer {
    /// Tabulates multiples whose leading word has at most `max_len` letters.
    pub fn new(pres: &Arc<Presentation>, gens: Vec<NCPoly>, side: Side, max_len: usize) -> Result<Self> {
        let order = gens.iter().map(NCPoly::order).min().unwrap_or(pres.order());
        let mut table: BTreeMap<Word, (NCPoly, HSeries)> = BTreeMap::new();
        let words = pres.normal_words(max_len);
        let right: Vec<Word> = match side {
            Side::Left => alloc::vec![Vec::new()],
            Side::TwoSided => words.clone(),
        };
        for g in &gens {
            if g.rank() != 1 || !Arc::ptr_eq(g.presentation(), pres) {
                return Err(Error::Malformed("ideal generator outside the algebra".into()));
            }
            let glen = leading(g).map_or(0, |(w, _)| w.len());
            for u in &words {
                for v in &right {
                    if u.len() + v.len() + glen > max_len {
                        continue;
                    }
                    let m = NCPoly::word(pres, u, order)?.try_mul(g)?.try_mul(&NCPoly::word(pres, v, order)?)?;
                    let Some((w, c)) = leading(&m) else { continue };
                    if w.len() > max_len || c.constant_term().is_zero() || table.contains_key(w) {
                        continue;
                    }
                    let inv = c.inv()?;
                    table.insert(w.clone(), (m.clone(), inv));
                }
            }
        }
        Ok(IdealReducer { pres: pres.clone(), gens, side, max_len, table })
    }

    pub fn generators(&self) -> &[NCPoly] {
        &self.gens
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Whether a word is the leading word of a tabulated multiple.
    pub fn is_leading(&self, w: &[usize]) -> bool {
        self.table.contains_key(w)
    }

    pub fn remainder(&self, x: &NCPoly) -> Result<NCPoly> {
        let mut rest = x.clone();
        let mut out = NCPoly::zero(&self.pres, 1, x.order());
        while let Some((w, c)) = leading(&rest).map(|(w, c)| (w.clone(), c.clone())) {
            match self.table.get(&w) {
                Some((m, inv)) => {
                    let k = &c * inv;
                    rest = rest.try_add(&-&m.scale(&k))?;
                }
                None => {
                    if w.len() > self.max_len {
                        return Err(Error::Capability(format!("ideal reduction needs words longer than {}", self.max_len)));
                    }
                    let mut t = NCPoly::zero(&self.pres, 1, rest.order());
                    t.push_term(alloc::vec![w.clone()], c.clone());
                    out = out.try_add(&t)?;
                    rest = rest.try_add(&-&t)?;
                }
            }
        }
        Ok(out.truncate(rest.order()))
    }

    pub fn contains(&self, x: &NCPoly) -> Result<bool> {
        Ok(self.remainder(x)?.is_zero())
    }

    /// Normal words of length ≤ d that are not leading words: a basis of the quotient in that range.
    pub fn quotient_basis(&self, degree: usize) -> Vec<Word> {
        self.pres.normal_words(degree).into_iter().filter(|w| !self.is_leading(w)).collect()
    }
}

/// Φ(x)(g·J·h) lies in the ideal for every group letter x, generator J and normal words g, h
/// with |g| + |h| ≤ d (h empty for a left ideal).
pub fn check_ideal_invariance(phi: &QuantumAction, ideal: &IdealReducer, degree: usize) -> Check {
    let p = phi.algebra();
    let mut chk = Check::new(format!("ideal invariance ({})", phi.name));
    let words = p.normal_words(degree);
    let g = phi.group();
    for (j, gen) in ideal.generators().iter().enumerate() {
        for l in &words {
            let rights: Vec<&Word> = match ideal.side() {
                Side::Left => alloc::vec![&words[0]],
                Side::TwoSided => words.iter().filter(|r| l.len() + r.len() <= degree).collect(),
            };
            for r in rights {
                for x in 0..g.letters().len() {
                    let at = format!("{}({}·J{}·{})", g.letters()[x], p.render_word(l), j, p.render_word(r));
                    let res = (|| {
                        let order = gen.order();
                        let f = NCPoly::word(p, l, order)?.try_mul(gen)?.try_mul(&NCPoly::word(p, r, order)?)?;
                        ideal.remainder(&phi.expr(x).apply(&f)?)
                    })();
                    match res {
                        Ok(d) => {
                            chk.note_order(d.order());
                            if !d.is_zero() {
                                chk.fail(at, d.render());
                            }
                        }
                        Err(e) => chk.fail(at, format!("{e}")),
                    }
                }
            }
        }
    }
    chk
}

/// A basis of the joint kernel of Φ(x) − ε(x) on the quotient in degrees ≤ d, and the check
/// that products of basis elements stay invariant.
#[derive(Clone, Debug)]
pub struct Invariants {
    pub basis: Vec<NCPoly>,
    pub order: usize,
    pub closure: Check,
}

fn eps_of(counit: &AlgebraMap, x: usize) -> Result<HSeries> {
    counit.image(x).as_scalar().ok_or_else(|| Error::Malformed("counit image is not a scalar".into()))
}

/// Invariants of the action on A/I (or on A when `ideal` is `None`) up to degree d.
pub fn invariant_subalgebra(phi: &QuantumAction, counit: &AlgebraMap, ideal: Option<&IdealReducer>, degree: usize) -> Result<Invariants> {
    let p = phi.algebra();
    let g = phi.group();
    if counit.rank() != 0 || !Arc::ptr_eq(counit.source(), g) {
        return Err(Error::Malformed("counit must map the acting group to scalars".into()));
    }
    let reduce = |x: &NCPoly| -> Result<NCPoly> {
        match ideal {
            Some(i) => i.remainder(x),
            None => Ok(x.clone()),
        }
    };
    let basis: Vec<Word> = match ideal {
        Some(i) => i.quotient_basis(degree),
        None => p.normal_words(degree),
    };
    let mut order = p.order();
    let mut columns: Vec<Vec<NCPoly>> = Vec::new();
    for w in &basis {
        let f = NCPoly::word(p, w, p.order())?;
        let mut col = Vec::new();
        for x in 0..g.letters().len() {
            let y = phi.expr(x).apply(&f)?;
            let y = y.try_add(&-&f.scale(&eps_of(counit, x)?))?;
            let y = reduce(&y)?;
            order = order.min(y.order());
            col.push(y);
        }
        columns.push(col);
    }
    let mut rows: SeriesMatrix = Vec::new();
    for x in 0..g.letters().len() {
        let mut keys: Vec<&Word> = columns.iter().flat_map(|c| c[x].word_terms().map(|(w, _)| w)).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            rows.push(columns.iter().map(|c| c[x].coeff(core::slice::from_ref(k)).truncate(order)).collect());
        }
    }
    let kernel = series_kernel(&rows, basis.len(), order);
    let mut elems = Vec::new();
    for v in kernel {
        let mut e = NCPoly::zero(p, 1, order);
        for (w, c) in basis.iter().zip(v) {
            e = e.try_add(&NCPoly::word(p, w, order)?.scale(&c))?;
        }
        elems.push(e);
    }
    let mut closure = Check::new(format!("invariants closed under products ({})", phi.name));
    closure.note_order(order);
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            let ab = reduce(&a.try_mul(b)?)?;
            for x in 0..g.letters().len() {
                let y = phi.expr(x).apply(&ab)?.try_add(&-&ab.scale(&eps_of(counit, x)?))?;
                let y = reduce(&y)?;
                closure.note_order(y.order());
                if !y.is_zero() {
                    closure.fail(format!("{}(I{i}·I{j})", g.letters()[x]), y.render());
                }
            }
        }
    }
    Ok(Invariants { basis: elems, order, closure })
}

/// Φ(x) mod ħ equals Σ a₀{b₀, ·} on monomials of degree ≤ d, for each listed group letter with
/// its classical pairs (a, b) read on the generator chart.
pub fn check_semiclassical_action(phi: &QuantumAction, classical: &[(&str, Vec<(CoordPoly, CoordPoly)>)], degree: usize) -> Check {
    let p = phi.algebra();
    let mut chk = Check::new(format!("semiclassical limit of the action ({})", phi.name));
    let chart = classical_chart(p);
    let pi = match semiclassical_bivector(p) {
        Ok(pi) => pi,
        Err(e) => {
            chk.fail("bivector", format!("{e}"));
            return chk;
        }
    };
    for (name, pairs) in classical {
        let x = match phi.group().letter(name) {
            Ok(x) => x,
            Err(e) => {
                chk.fail(*name, format!("{e}"));
                return chk;
            }
        };
        for w in p.normal_words(degree) {
            let r = (|| {
                let f = NCPoly::word(p, &w, p.order())?;
                let q = abelianize(&phi.expr(x).apply(&f)?, 0, &chart)?;
                let f0 = abelianize(&f, 0, &chart)?;
                let mut c = CoordPoly::zero(&chart);
                for (a, b) in pairs {
                    c = &c + &(a * &poisson_bracket(&pi, b, &f0));
                }
                Ok::<_, Error>(&q - &c)
            })();
            match r {
                Ok(d) => {
                    if !d.is_zero() {
                        chk.fail(format!("{name} on {}", p.render_word(&w)), format!("{d}"));
                    }
                }
                Err(e) => chk.fail(format!("{name} on {}", p.render_word(&w)), format!("{e}")),
            }
        }
    }
    chk
}
