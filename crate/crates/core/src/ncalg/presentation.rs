//! Generators, length-two rewrite rules and normal forms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use spin::Mutex;

use crate::exact::HSeries;
use crate::report::Check;
use crate::{Error, Result};

pub type Word = Vec<usize>;
pub type Terms = BTreeMap<Word, HSeries>;

/// Rewriting steps allowed for a single normal-form computation.
const STEP_LIMIT: usize = 200_000;

/// Degree then lexicographic order on words.
pub fn word_cmp(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// c·s where c has valuation v and s is only known modulo ħ^{order−v}.
pub(crate) fn hbar_mul(c: &HSeries, s: &HSeries, order: usize) -> HSeries {
    let Some(v) = c.valuation().filter(|v| *v < order) else { return HSeries::zero(order) };
    let cp = c.truncate(order).divide_by_hbar(v).expect("valuation checked");
    let p = &cp * &s.truncate(order - v);
    let mut coeffs = alloc::vec![num_traits::Zero::zero(); v];
    coeffs.extend(p.coeffs().iter().cloned());
    HSeries::from_coeffs(coeffs, order)
}

pub(crate) fn add_term(t: &mut Terms, w: Word, c: HSeries) {
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

/// A presented algebra over ℚ(i)[[ħ]]/ħ^N.
///
/// Letters are generators and the formal inverses of invertible generators; an inverse
/// letter is placed immediately before its base in the order. A pair of adjacent letters
/// is reducible when a rule is declared for it or when it is a letter next to its inverse.
pub struct Presentation {
    pub name: String,
    letters: Vec<String>,
    /// letter ↦ (generator index, ±1)
    base: Vec<(usize, i32)>,
    generators: Vec<String>,
    inverse: Vec<Option<usize>>,
    rules: BTreeMap<(usize, usize), Vec<(Word, HSeries)>>,
    order: usize,
    memo: Mutex<BTreeMap<(Word, usize), Terms>>,
}

impl core::fmt::Debug for Presentation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Presentation").field("name", &self.name).field("letters", &self.letters).field("order", &self.order).finish()
    }
}

#[derive(Clone, Debug)]
pub struct PresentationBuilder {
    name: String,
    order: usize,
    letters: Vec<String>,
    base: Vec<(usize, i32)>,
    generators: Vec<String>,
    inverse: Vec<Option<usize>>,
    rules: Vec<(String, String, Vec<(HSeries, Vec<String>)>)>,
}

impl PresentationBuilder {
    pub fn new(name: &str, order: usize) -> Self {
        PresentationBuilder {
            name: name.into(),
            order,
            letters: Vec::new(),
            base: Vec::new(),
            generators: Vec::new(),
            inverse: Vec::new(),
            rules: Vec::new(),
        }
    }

    pub fn generator(mut self, name: &str) -> Self {
        let g = self.generators.len();
        self.generators.push(name.into());
        self.letters.push(name.into());
        self.base.push((g, 1));
        self.inverse.push(None);
        self
    }

    /// Adds `name^-1` followed by `name`.
    pub fn invertible(mut self, name: &str) -> Self {
        let g = self.generators.len();
        self.generators.push(name.into());
        let l = self.letters.len();
        self.letters.push(format!("{name}^-1"));
        self.letters.push(name.into());
        self.base.push((g, -1));
        self.base.push((g, 1));
        self.inverse.push(Some(l + 1));
        self.inverse.push(Some(l));
        self
    }

    /// x·y → Σ c·word.
    pub fn rule(mut self, x: &str, y: &str, rhs: Vec<(HSeries, Vec<&str>)>) -> Self {
        self.rules.push((x.into(), y.into(), rhs.into_iter().map(|(c, w)| (c, w.into_iter().map(String::from).collect())).collect()));
        self
    }

    pub fn build(self) -> Result<Arc<Presentation>> {
        let idx = |s: &str| -> Result<usize> {
            self.letters.iter().position(|l| l == s).ok_or_else(|| Error::Malformed(format!("{}: unknown letter {s}", self.name)))
        };
        let mut rules = BTreeMap::new();
        for (x, y, rhs) in &self.rules {
            let (i, j) = (idx(x)?, idx(y)?);
            if i <= j {
                return Err(Error::Malformed(format!("{}: rule {x}·{y} is not out of order", self.name)));
            }
            if self.inverse[i] == Some(j) {
                return Err(Error::Malformed(format!("{}: {x}·{y} cancels automatically", self.name)));
            }
            let mut r: Vec<(Word, HSeries)> = Vec::new();
            for (c, w) in rhs {
                let word = w.iter().map(|s| idx(s)).collect::<Result<Word>>()?;
                let lhs = [i, j];
                let shrinks = word_cmp(&word, &lhs) == Ordering::Less;
                if !shrinks && c.truncate(self.order).valuation().is_some_and(|v| v == 0) {
                    return Err(Error::Malformed(format!(
                        "{}: rule {x}·{y} produces a word that is not smaller at ħ-order zero",
                        self.name
                    )));
                }
                r.push((word, c.truncate(self.order)));
            }
            if rules.insert((i, j), r).is_some() {
                return Err(Error::Malformed(format!("{}: duplicate rule {x}·{y}", self.name)));
            }
        }
        Ok(Arc::new(Presentation {
            name: self.name,
            letters: self.letters,
            base: self.base,
            generators: self.generators,
            inverse: self.inverse,
            rules,
            order: self.order,
            memo: Mutex::new(BTreeMap::new()),
        }))
    }
}

impl Presentation {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn letter(&self, name: &str) -> Result<usize> {
        self.letters.iter().position(|l| l == name).ok_or_else(|| Error::Malformed(format!("{}: unknown letter {name}", self.name)))
    }

    pub fn inverse_of(&self, letter: usize) -> Option<usize> {
        self.inverse[letter]
    }

    /// (generator index, exponent ±1)
    pub fn base_of(&self, letter: usize) -> (usize, i32) {
        self.base[letter]
    }

    pub fn rules(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<(Word, HSeries)>)> {
        self.rules.iter()
    }

    pub fn render_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|l| self.letters[*l].as_str()).collect::<Vec<_>>().join("*")
    }

    /// All normal-form words of length at most `max_len`, shortest first.
    pub fn normal_words(&self, max_len: usize) -> Vec<Word> {
        let mut out = alloc::vec![Vec::new()];
        let mut layer: Vec<Word> = alloc::vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for l in 0..self.letters.len() {
                    if w.last().is_some_and(|x| self.is_reducible(*x, l)) {
                        continue;
                    }
                    let mut nw = w.clone();
                    nw.push(l);
                    next.push(nw);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    fn rewrite(&self, x: usize, y: usize) -> Option<Vec<(Word, HSeries)>> {
        if self.inverse[x] == Some(y) {
            return Some(alloc::vec![(Vec::new(), HSeries::one(self.order))]);
        }
        self.rules.get(&(x, y)).cloned()
    }

    pub fn is_reducible(&self, x: usize, y: usize) -> bool {
        self.inverse[x] == Some(y) || self.rules.contains_key(&(x, y))
    }

    pub fn is_normal(&self, w: &[usize]) -> bool {
        w.windows(2).all(|p| !self.is_reducible(p[0], p[1]))
    }

    /// Normal form of a word modulo ħ^order, reducing the leftmost reducible pair first.
    pub fn normal_form_word(&self, w: &[usize], order: usize) -> Result<Terms> {
        let mut steps = 0;
        self.nf(w, order, false, &mut steps, &mut None)
    }

    fn nf(
        &self,
        w: &[usize],
        order: usize,
        rightmost: bool,
        steps: &mut usize,
        local: &mut Option<BTreeMap<(Word, usize), Terms>>,
    ) -> Result<Terms> {
        let mut out = Terms::new();
        if order == 0 {
            return Ok(out);
        }
        let key = (w.to_vec(), order);
        if rightmost {
            if let Some(t) = local.as_ref().and_then(|m| m.get(&key)) {
                return Ok(t.clone());
            }
        } else if let Some(t) = self.memo.lock().get(&key) {
            return Ok(t.clone());
        }
        *steps += 1;
        if *steps > STEP_LIMIT {
            return Err(Error::Capability(format!("{}: rewriting exceeded {STEP_LIMIT} steps", self.name)));
        }
        let pos = if rightmost {
            (0..w.len().saturating_sub(1)).rev().find(|&p| self.is_reducible(w[p], w[p + 1]))
        } else {
            (0..w.len().saturating_sub(1)).find(|&p| self.is_reducible(w[p], w[p + 1]))
        };
        match pos {
            None => {
                out.insert(w.to_vec(), HSeries::one(order));
            }
            Some(p) => {
                for (r, c) in self.rewrite(w[p], w[p + 1]).unwrap() {
                    let Some(v) = c.valuation().filter(|v| *v < order) else { continue };
                    let mut nw = w[..p].to_vec();
                    nw.extend_from_slice(&r);
                    nw.extend_from_slice(&w[p + 2..]);
                    let sub = self.nf(&nw, order - v, rightmost, steps, local)?;
                    for (sw, sc) in sub {
                        add_term(&mut out, sw, hbar_mul(&c, &sc, order));
                    }
                }
            }
        }
        if rightmost {
            local.get_or_insert_with(BTreeMap::new).insert(key, out.clone());
        } else {
            self.memo.lock().insert(key, out.clone());
        }
        Ok(out)
    }

    /// Normal form reducing the rightmost reducible pair first; used to test confluence.
    pub fn normal_form_word_rightmost(&self, w: &[usize], order: usize) -> Result<Terms> {
        let mut steps = 0;
        let mut local = Some(BTreeMap::new());
        self.nf(w, order, true, &mut steps, &mut local)
    }
}

fn terms_equal(a: &Terms, b: &Terms) -> bool {
    let mut d = a.clone();
    for (w, c) in b {
        add_term(&mut d, w.clone(), -c);
    }
    d.is_empty()
}

/// Compares leftmost-first and rightmost-first reduction on every word of length 3 to
/// `degree` that contains at least two reducible pairs.
pub fn check_confluence(p: &Presentation, degree: usize) -> Check {
    let mut chk = Check::new(format!("confluence ({}, degree ≤ {degree})", p.name)).with_order(p.order);
    let n = p.letters.len();
    for len in 3..=degree {
        for code in 0..n.pow(len as u32) {
            let mut w = alloc::vec![0usize; len];
            let mut c = code;
            for k in (0..len).rev() {
                w[k] = c % n;
                c /= n;
            }
            if w.windows(2).filter(|q| p.is_reducible(q[0], q[1])).count() < 2 {
                continue;
            }
            let l = p.normal_form_word(&w, p.order);
            let r = p.normal_form_word_rightmost(&w, p.order);
            match (l, r) {
                (Ok(l), Ok(r)) if terms_equal(&l, &r) => {}
                (Ok(_), Ok(_)) => chk.fail(p.render_word(&w), "leftmost and rightmost reductions differ"),
                (Err(e), _) | (_, Err(e)) => chk.fail(p.render_word(&w), format!("{e}")),
            }
            if chk.defects.len() >= 5 {
                return chk;
            }
        }
    }
    chk
}
