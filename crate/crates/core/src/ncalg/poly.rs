//! Elements of a presented algebra and of its tensor powers.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::presentation::{hbar_mul, Presentation, Terms, Word};
use crate::exact::{GaussRational, HSeries};
use crate::{Error, Result};

/// A tensor monomial: one normal-form word per tensor factor.
pub type TensorWord = Vec<Word>;

/// An element of A^{⊗rank} over ℚ(i)[[ħ]]/ħ^order, kept in normal form.
///
/// Rank 0 is the scalar ring, rank 1 the algebra itself. Multiplication is
/// componentwise with no commutation between tensor factors.
#[derive(Clone)]
pub struct NCPoly {
    pres: Arc<Presentation>,
    rank: usize,
    order: usize,
    terms: BTreeMap<TensorWord, HSeries>,
}

/// Elements of A ⊗ A.
pub type TensorElem = NCPoly;

fn add_tterm(t: &mut BTreeMap<TensorWord, HSeries>, w: TensorWord, c: HSeries) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&w) {
        Some(x) => {
            let s = &*x + &c;
            if s.is_zero() {
                t.remove(&w);
            } else {
                *x = s;
            }
        }
        None => {
            t.insert(w, c);
        }
    }
}

impl NCPoly {
    pub fn zero(pres: &Arc<Presentation>, rank: usize, order: usize) -> Self {
        NCPoly { pres: pres.clone(), rank, order: order.min(pres.order()), terms: BTreeMap::new() }
    }

    pub fn scalar(pres: &Arc<Presentation>, rank: usize, c: HSeries) -> Self {
        let order = c.order().min(pres.order());
        let mut p = Self::zero(pres, rank, order);
        add_tterm(&mut p.terms, alloc::vec![Vec::new(); rank], c.truncate(order));
        p
    }

    pub fn one(pres: &Arc<Presentation>, rank: usize, order: usize) -> Self {
        Self::scalar(pres, rank, HSeries::one(order))
    }

    /// Normal form of a single word in rank 1.
    pub fn word(pres: &Arc<Presentation>, w: &[usize], order: usize) -> Result<Self> {
        let order = order.min(pres.order());
        let nf = pres.normal_form_word(w, order)?;
        Ok(Self::from_terms(pres, order, nf))
    }

    pub fn letter(pres: &Arc<Presentation>, name: &str, order: usize) -> Result<Self> {
        Self::word(pres, &[pres.letter(name)?], order)
    }

    /// Normal form of a word given by letter names.
    pub fn parse_word(pres: &Arc<Presentation>, names: &[&str], order: usize) -> Result<Self> {
        let w = names.iter().map(|n| pres.letter(n)).collect::<Result<Word>>()?;
        Self::word(pres, &w, order)
    }

    /// Rank-1 element from terms that are already in normal form.
    pub(crate) fn from_terms(pres: &Arc<Presentation>, order: usize, t: Terms) -> Self {
        let mut p = Self::zero(pres, 1, order);
        for (w, c) in t {
            add_tterm(&mut p.terms, alloc::vec![w], c.truncate(p.order));
        }
        p
    }

    /// Normal form of an arbitrary combination of raw tensor words.
    pub fn normal_form(pres: &Arc<Presentation>, rank: usize, order: usize, raw: &[(TensorWord, HSeries)]) -> Result<Self> {
        let order = order.min(pres.order());
        let mut out = Self::zero(pres, rank, order);
        for (tw, c) in raw {
            if tw.len() != rank {
                return Err(Error::Malformed(format!("tensor word of rank {} in rank {rank}", tw.len())));
            }
            let mut acc: Vec<(TensorWord, HSeries)> = alloc::vec![(Vec::new(), c.truncate(order))];
            for w in tw {
                let nf = pres.normal_form_word(w, order)?;
                let mut next = Vec::new();
                for (prefix, pc) in &acc {
                    for (nw, nc) in &nf {
                        let mut p = prefix.clone();
                        p.push(nw.clone());
                        next.push((p, pc * nc));
                    }
                }
                acc = next;
            }
            for (w, c) in acc {
                add_tterm(&mut out.terms, w, c);
            }
        }
        Ok(out)
    }

    /// Adds a term whose words are already in normal form.
    pub(crate) fn push_term(&mut self, w: TensorWord, c: HSeries) {
        add_tterm(&mut self.terms, w, c.truncate(self.order));
    }

    /// exp(cħx) truncated at the element's order.
    pub fn exp_hbar(&self, c: &GaussRational) -> Result<Self> {
        let mut out = Self::one(&self.pres, self.rank, self.order);
        let mut power = Self::one(&self.pres, self.rank, self.order);
        let mut fact = GaussRational::int(1);
        for n in 1..self.order {
            power = power.try_mul(self)?;
            fact = &fact * &GaussRational::int(n as i64);
            let coef = &c.pow(n as u32) * &fact.inv().expect("nonzero factorial");
            out = out.try_add(&power.shift_up(n).scale_q(&coef))?;
        }
        Ok(out)
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<TensorWord, HSeries> {
        &self.terms
    }

    /// Rank-1 terms keyed by word.
    pub fn word_terms(&self) -> impl Iterator<Item = (&Word, &HSeries)> {
        self.terms.iter().map(|(w, c)| (&w[0], c))
    }

    pub fn coeff(&self, w: &[Word]) -> HSeries {
        self.terms.get(w).cloned().unwrap_or_else(|| HSeries::zero(self.order))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest k with every coefficient divisible by ħ^k; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.values().filter_map(|c| c.valuation()).min()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut p = Self::zero(&self.pres, self.rank, order);
        for (w, c) in &self.terms {
            add_tterm(&mut p.terms, w.clone(), c.truncate(order));
        }
        p
    }

    pub fn scale(&self, c: &HSeries) -> Self {
        let order = self.order.min(c.order());
        let mut p = Self::zero(&self.pres, self.rank, order);
        for (w, x) in &self.terms {
            add_tterm(&mut p.terms, w.clone(), &x.truncate(order) * &c.truncate(order));
        }
        p
    }

    /// Multiplication by c when c has valuation v and `self` is only known to order − v.
    pub fn scale_graded(&self, c: &HSeries, order: usize) -> Self {
        let mut p = Self::zero(&self.pres, self.rank, order);
        for (w, x) in &self.terms {
            add_tterm(&mut p.terms, w.clone(), hbar_mul(c, x, order));
        }
        p
    }

    pub fn scale_q(&self, c: &GaussRational) -> Self {
        let mut p = Self::zero(&self.pres, self.rank, self.order);
        for (w, x) in &self.terms {
            add_tterm(&mut p.terms, w.clone(), x.scale(c));
        }
        p
    }

    /// Multiplication by ħ^k, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut p = Self::zero(&self.pres, self.rank, self.order);
        for (w, x) in &self.terms {
            add_tterm(&mut p.terms, w.clone(), x.shift_up(k));
        }
        p
    }

    /// Division by ħ^k; the order drops by k.
    pub fn divide_by_hbar(&self, k: usize) -> Result<Self> {
        if k > self.order {
            return Err(Error::Valuation { needed: k, found: None });
        }
        let mut p = Self::zero(&self.pres, self.rank, self.order - k);
        for (w, x) in &self.terms {
            add_tterm(&mut p.terms, w.clone(), x.divide_by_hbar(k)?);
        }
        Ok(p)
    }

    /// Coefficient of ħ^k as an element with rational coefficients (order 1).
    pub fn hbar_coeff(&self, k: usize) -> Self {
        let mut p = Self::zero(&self.pres, self.rank, 1);
        for (w, x) in &self.terms {
            add_tterm(&mut p.terms, w.clone(), HSeries::constant(x.coeff(k), 1));
        }
        p
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.pres, &other.pres) || self.rank != other.rank {
            return Err(Error::Malformed(format!(
                "elements of different algebras: {} rank {} vs {} rank {}",
                self.pres.name, self.rank, other.pres.name, other.rank
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let order = self.order.min(other.order);
        let mut p = self.truncate(order);
        for (w, c) in &other.terms {
            add_tterm(&mut p.terms, w.clone(), c.truncate(order));
        }
        Ok(p)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let order = self.order.min(other.order);
        let mut out = Self::zero(&self.pres, self.rank, order);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let c = &c1.truncate(order) * &c2.truncate(order);
                if c.is_zero() {
                    continue;
                }
                let v = c.valuation().unwrap();
                let inner = order - v;
                let mut acc: Vec<(TensorWord, HSeries)> = alloc::vec![(Vec::new(), HSeries::one(inner))];
                for k in 0..self.rank {
                    let mut w = w1[k].clone();
                    w.extend_from_slice(&w2[k]);
                    let nf = self.pres.normal_form_word(&w, inner)?;
                    let mut next = Vec::with_capacity(acc.len() * nf.len());
                    for (prefix, pc) in &acc {
                        for (nw, nc) in &nf {
                            let mut p = prefix.clone();
                            p.push(nw.clone());
                            next.push((p, pc * nc));
                        }
                    }
                    acc = next;
                }
                for (w, s) in acc {
                    add_tterm(&mut out.terms, w, hbar_mul(&c, &s, order));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::one(&self.pres, self.rank, self.order);
        for _ in 0..k {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }

    /// x ⊗ y.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if !Arc::ptr_eq(&self.pres, &other.pres) {
            return Err(Error::Malformed("tensor product across presentations".into()));
        }
        let order = self.order.min(other.order);
        let mut out = Self::zero(&self.pres, self.rank + other.rank, order);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().cloned());
                add_tterm(&mut out.terms, w, &c1.truncate(order) * &c2.truncate(order));
            }
        }
        Ok(out)
    }

    /// Permutes tensor factors: factor k of the result is factor perm[k] of self.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rank, "permutation length");
        let mut out = Self::zero(&self.pres, self.rank, self.order);
        for (w, c) in &self.terms {
            add_tterm(&mut out.terms, perm.iter().map(|&i| w[i].clone()).collect(), c.clone());
        }
        out
    }

    /// The flip τ on A ⊗ A.
    pub fn flip(&self) -> Self {
        self.permute(&[1, 0])
    }

    /// Places each factor of self into the listed slots of a rank `rank` tensor, filling
    /// the other slots with 1; used for R₁₃ and similar legs.
    pub fn legs(&self, slots: &[usize], rank: usize) -> Self {
        assert_eq!(slots.len(), self.rank, "slot count");
        let mut out = Self::zero(&self.pres, rank, self.order);
        for (w, c) in &self.terms {
            let mut tw = alloc::vec![Vec::new(); rank];
            for (k, s) in slots.iter().enumerate() {
                tw[*s] = w[k].clone();
            }
            add_tterm(&mut out.terms, tw, c.clone());
        }
        out
    }

    /// Multiplies the tensor factors together: A^{⊗k} → A.
    pub fn multiply_out(&self) -> Result<Self> {
        let mut out = Self::zero(&self.pres, 1, self.order);
        for (w, c) in &self.terms {
            let word: Word = w.iter().flatten().copied().collect();
            let nf = self.pres.normal_form_word(&word, self.order)?;
            for (nw, nc) in nf {
                add_tterm(&mut out.terms, alloc::vec![nw], c * &nc);
            }
        }
        Ok(out)
    }

    /// Reinterprets a rank-0 or rank-1 element as rank 1 or 0 when it is scalar.
    pub fn as_scalar(&self) -> Option<HSeries> {
        let mut s = HSeries::zero(self.order);
        for (w, c) in &self.terms {
            if w.iter().any(|x| !x.is_empty()) {
                return None;
            }
            s = &s + c;
        }
        Some(s)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (w, c) in &self.terms {
            let word =
                if self.rank == 0 { String::new() } else { w.iter().map(|x| self.pres.render_word(x)).collect::<Vec<_>>().join(" ⊗ ") };
            let coeff = c.render_terms();
            let coeff = if coeff.contains(" + ") { format!("({coeff})") } else { coeff };
            if word.is_empty() {
                parts.push(coeff);
            } else if coeff == "1" {
                parts.push(word);
            } else {
                parts.push(format!("{coeff}*{word}"));
            }
        }
        format!("{} + O(ħ^{})", parts.join(" + "), self.order)
    }
}

/// pq − qp.
pub fn commutator(p: &NCPoly, q: &NCPoly) -> Result<NCPoly> {
    Ok(p.try_mul(q)? - q.try_mul(p)?)
}

impl PartialEq for NCPoly {
    /// Equality modulo ħ^min(order).
    fn eq(&self, other: &Self) -> bool {
        match self.try_add(&-other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, o: &NCPoly) -> NCPoly {
        self.try_add(o).expect("adding elements of different algebras")
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(self, o: NCPoly) -> NCPoly {
        &self + &o
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, o: &NCPoly) -> NCPoly {
        self + &(-o)
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(self, o: NCPoly) -> NCPoly {
        &self - &o
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = -&*c;
        }
        p
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, o: &NCPoly) -> NCPoly {
        self.try_mul(o).expect("multiplying elements of different algebras")
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, o: NCPoly) -> NCPoly {
        &self * &o
    }
}
