//! Algebra maps defined on generators and their rule checks.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::poly::NCPoly;
use super::presentation::Presentation;
use crate::exact::HSeries;
use crate::report::Check;
use crate::{Error, Result};

/// A map A → B^{⊗rank} given by the image of every letter, extended multiplicatively,
/// or anti-multiplicatively when `anti` is set.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub name: String,
    source: Arc<Presentation>,
    target: Arc<Presentation>,
    rank: usize,
    images: Vec<NCPoly>,
    anti: bool,
}

impl AlgebraMap {
    /// `images` must cover every letter of the source, inverse letters included.
    pub fn new(
        name: &str,
        source: &Arc<Presentation>,
        target: &Arc<Presentation>,
        rank: usize,
        images: Vec<(&str, NCPoly)>,
        anti: bool,
    ) -> Result<Self> {
        let mut slots: Vec<Option<NCPoly>> = alloc::vec![None; source.letters().len()];
        for (n, img) in images {
            let l = source.letter(n)?;
            if !Arc::ptr_eq(img.presentation(), target) || img.rank() != rank {
                return Err(Error::Malformed(format!("{name}: image of {n} is not in the target of rank {rank}")));
            }
            if slots[l].replace(img).is_some() {
                return Err(Error::Malformed(format!("{name}: image of {n} given twice")));
            }
        }
        let images = slots
            .into_iter()
            .enumerate()
            .map(|(l, s)| s.ok_or_else(|| Error::Malformed(format!("{name}: no image for {}", source.letters()[l]))))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMap { name: name.into(), source: source.clone(), target: target.clone(), rank, images, anti })
    }

    pub fn identity(pres: &Arc<Presentation>, order: usize) -> Result<Self> {
        let imgs = pres.letters().iter().map(|n| Ok((n.as_str(), NCPoly::letter(pres, n, order)?))).collect::<Result<Vec<_>>>()?;
        Self::new("id", pres, pres, 1, imgs, false)
    }

    pub fn source(&self) -> &Arc<Presentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Presentation> {
        &self.target
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_anti(&self) -> bool {
        self.anti
    }

    pub fn image(&self, letter: usize) -> &NCPoly {
        &self.images[letter]
    }

    /// The order the images are known to.
    pub fn order(&self) -> usize {
        self.images.iter().map(NCPoly::order).min().unwrap_or(self.target.order())
    }

    pub fn apply_word(&self, w: &[usize]) -> Result<NCPoly> {
        let mut out = NCPoly::one(&self.target, self.rank, self.order());
        let letters: Vec<usize> = if self.anti { w.iter().rev().copied().collect() } else { w.to_vec() };
        for l in letters {
            out = out.try_mul(&self.images[l])?;
        }
        Ok(out)
    }

    pub fn apply(&self, x: &NCPoly) -> Result<NCPoly> {
        self.apply_at(x, 0)
    }

    /// Applies the map to tensor factor `slot` of x, which must live in the source.
    pub fn apply_at(&self, x: &NCPoly, slot: usize) -> Result<NCPoly> {
        if !Arc::ptr_eq(x.presentation(), &self.source) || slot >= x.rank() {
            return Err(Error::Malformed(format!("{}: argument not in the source or bad slot {slot}", self.name)));
        }
        if x.rank() > 1 && !Arc::ptr_eq(&self.source, &self.target) {
            return Err(Error::Malformed(format!("{}: partial application needs an endomorphism", self.name)));
        }
        let order = x.order().min(self.order());
        let mut out = NCPoly::zero(&self.target, x.rank() - 1 + self.rank, order);
        for (tw, c) in x.terms() {
            let img = self.apply_word(&tw[slot])?;
            for (iw, ic) in img.terms() {
                let mut w = tw[..slot].to_vec();
                w.extend(iw.iter().cloned());
                w.extend(tw[slot + 1..].iter().cloned());
                out.push_term(w, &c.truncate(order) * &ic.truncate(order));
            }
        }
        Ok(out)
    }

    /// self ∘ other for maps into rank 1.
    pub fn compose(&self, other: &AlgebraMap) -> Result<AlgebraMap> {
        if other.rank != 1 || !Arc::ptr_eq(&other.target, &self.source) {
            return Err(Error::Malformed("composition of incompatible maps".into()));
        }
        let imgs = other.images.iter().map(|x| self.apply(x)).collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMap {
            name: format!("{}∘{}", self.name, other.name),
            source: other.source.clone(),
            target: self.target.clone(),
            rank: self.rank,
            images: imgs,
            anti: self.anti != other.anti,
        })
    }
}

/// Verifies that the map respects every rewrite rule and every inverse pair of its source.
pub fn check_map(m: &AlgebraMap) -> Check {
    let src = &m.source;
    let order = m.order();
    let mut chk = Check::new(format!("algebra map {}", m.name)).with_order(order);
    let mut relations: Vec<(Vec<usize>, Vec<(Vec<usize>, HSeries)>)> = Vec::new();
    for ((x, y), rhs) in src.rules() {
        relations.push((alloc::vec![*x, *y], rhs.clone()));
    }
    for l in 0..src.letters().len() {
        if let Some(inv) = src.inverse_of(l) {
            relations.push((alloc::vec![l, inv], alloc::vec![(Vec::new(), HSeries::one(order))]));
        }
    }
    for (lhs, rhs) in relations {
        let res = (|| -> Result<NCPoly> {
            let mut d = m.apply_word(&lhs)?;
            for (w, c) in &rhs {
                d = d.try_add(&-&m.apply_word(w)?.scale(c))?;
            }
            Ok(d)
        })();
        let at = format!("{} = {}", src.render_word(&lhs), render_rhs(src, &rhs));
        match res {
            Ok(d) if d.is_zero() => {}
            Ok(d) => chk.fail(at, d.render()),
            Err(e) => chk.fail(at, format!("{e}")),
        }
    }
    chk
}

fn render_rhs(p: &Presentation, rhs: &[(Vec<usize>, HSeries)]) -> String {
    if rhs.is_empty() {
        return "0".into();
    }
    rhs.iter()
        .map(|(w, c)| {
            let cs = c.render_terms();
            if cs == "1" {
                p.render_word(w)
            } else {
                format!("({cs})*{}", p.render_word(w))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
