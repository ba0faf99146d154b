//! Noncommutative 1-forms on the unitalization, their product, and the sharp map.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::action::ActionExpr;
use crate::exact::HSeries;
use crate::ncalg::{AlgebraMap, NCPoly, Presentation, TensorWord};
use crate::report::Check;
use crate::{Error, Result};

/// Σ aᵢ dbᵢ stored as Σ aᵢ ⊗ bᵢ in A ⊗ A; d1 = 1 ⊗ 1 is kept as a nonzero form.
#[derive(Clone, Debug, PartialEq)]
pub struct NCOneForm {
    pub form: NCPoly,
}

impl NCOneForm {
    pub fn from_tensor(form: NCPoly) -> Result<Self> {
        if form.rank() != 2 {
            return Err(Error::Malformed(format!("a 1-form needs rank 2, got {}", form.rank())));
        }
        Ok(NCOneForm { form })
    }

    /// a db
    pub fn adb(a: &NCPoly, b: &NCPoly) -> Result<Self> {
        Self::from_tensor(a.tensor(b)?)
    }

    /// db
    pub fn d(b: &NCPoly) -> Result<Self> {
        Self::adb(&NCPoly::one(b.presentation(), 1, b.order()), b)
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        self.form.presentation()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(NCOneForm { form: self.form.try_add(&other.form)? })
    }

    pub fn scale(&self, c: &HSeries) -> Self {
        NCOneForm { form: self.form.scale(c) }
    }

    /// The pairs (c·a, b) of the stored terms.
    fn pairs(&self) -> Result<Vec<(NCPoly, NCPoly)>> {
        let p = self.presentation();
        let order = self.form.order();
        self.form.terms().iter().map(|(tw, c)| Ok((NCPoly::word(p, &tw[0], order)?.scale(c), NCPoly::word(p, &tw[1], order)?))).collect()
    }

    pub fn render(&self) -> String {
        let p = self.presentation();
        let parts: Vec<String> = self
            .form
            .terms()
            .iter()
            .map(|(tw, c)| format!("({}) {} d({})", c.render_terms(), p.render_word(&tw[0]), p.render_word(&tw[1])))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// (a db)(a' db') = a[b,a'] db' + a a' b db' − a a' d(b'b) + a a' b' db.
pub fn oneform_product(u: &NCOneForm, v: &NCOneForm) -> Result<NCOneForm> {
    let p = u.presentation();
    if !Arc::ptr_eq(p, v.presentation()) {
        return Err(Error::Malformed("1-forms over different algebras".into()));
    }
    let order = u.form.order().min(v.form.order());
    let mut out = NCPoly::zero(p, 2, order);
    for (a, b) in u.pairs()? {
        for (a2, b2) in v.pairs()? {
            let aa2 = a.try_mul(&a2)?;
            let ba2 = b.try_mul(&a2)? - a2.try_mul(&b)?;
            let terms = [
                a.try_mul(&ba2)?.tensor(&b2)?,
                aa2.try_mul(&b)?.tensor(&b2)?,
                -&aa2.tensor(&b2.try_mul(&b)?)?,
                aa2.try_mul(&b2)?.tensor(&b)?,
            ];
            for t in &terms {
                out = out.try_add(t)?;
            }
        }
    }
    Ok(NCOneForm { form: out })
}

/// a db ↦ a[b, ·], with no ħ scaling.
pub fn sharp_unscaled(u: &NCOneForm) -> Result<ActionExpr> {
    Ok(ActionExpr::Sum(u.pairs()?.into_iter().map(|(a, b)| ActionExpr::compose(ActionExpr::Left(a), ActionExpr::Commutator(b))).collect()))
}

/// a db ↦ (1/ħ) a[b, ·].
pub fn sharp_map(u: &NCOneForm) -> Result<ActionExpr> {
    Ok(ActionExpr::DivHbar(1, alloc::boxed::Box::new(sharp_unscaled(u)?)))
}

/// (1/ħⁿ) a₁[b₁,f₁] ⋯ aₙ[bₙ,fₙ] for forms μ(ξ₁), …, μ(ξₙ), extended multilinearly.
pub fn multi_action(forms: &[NCOneForm], fs: &[NCPoly]) -> Result<NCPoly> {
    if forms.len() != fs.len() || forms.is_empty() {
        return Err(Error::Malformed(format!("multi_action: {} forms for {} arguments", forms.len(), fs.len())));
    }
    let mut out: Option<NCPoly> = None;
    for (u, f) in forms.iter().zip(fs) {
        let x = sharp_map(u)?.apply(f)?;
        out = Some(match out {
            None => x,
            Some(acc) => acc.try_mul(&x)?,
        });
    }
    Ok(out.expect("nonempty"))
}

/// sharp(u)∘sharp(v) = sharp(u·v) on monomials to degree d, unscaled; the ħ-scaled maps then
/// satisfy sharp(u)∘sharp(v) = (1/ħ) sharp(u·v).
pub fn check_sharp_homomorphism(u: &NCOneForm, v: &NCOneForm, degree: usize) -> Check {
    let p = u.presentation().clone();
    let mut chk = Check::new("sharp is multiplicative");
    let prod = match oneform_product(u, v).and_then(|w| sharp_unscaled(&w)) {
        Ok(w) => w,
        Err(e) => {
            chk.fail("product", format!("{e}"));
            return chk;
        }
    };
    let (su, sv) = match (sharp_unscaled(u), sharp_unscaled(v)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => {
            chk.fail("sharp", "malformed form");
            return chk;
        }
    };
    let comp = ActionExpr::compose(su, sv);
    for w in p.normal_words(degree) {
        let r = (|| {
            let f = NCPoly::word(&p, &w, p.order())?;
            Ok::<_, Error>(comp.apply(&f)? - prod.apply(&f)?)
        })();
        match r {
            Ok(d) => {
                chk.note_order(d.order());
                if !d.is_zero() {
                    chk.fail(p.render_word(&w), d.render());
                }
            }
            Err(e) => chk.fail(p.render_word(&w), format!("{e}")),
        }
    }
    chk
}

/// The odd derivation extending Δ to T(H[1]): Σᵢ (−1)ⁱ (id ⊗ ⋯ ⊗ Δ ⊗ ⋯ ⊗ id), Δ in slot i.
pub fn odd_coproduct(delta: &AlgebraMap, x: &NCPoly) -> Result<NCPoly> {
    let mut out = NCPoly::zero(delta.target(), x.rank() + 1, x.order().min(delta.order()));
    for i in 0..x.rank() {
        let y = delta.apply_at(x, i)?;
        out = if i % 2 == 0 { out.try_add(&y)? } else { out.try_add(&-&y)? };
    }
    Ok(out)
}

/// Δ² = 0 on every tensor word whose factors are normal words with at most `letters` letters
/// in total (each factor nonempty).
pub fn check_odd_nilpotent(delta: &AlgebraMap, letters: usize) -> Check {
    let p = delta.source().clone();
    let mut chk = Check::new(format!("odd coproduct squares to zero ({})", delta.name));
    let words: Vec<_> = p.normal_words(letters).into_iter().filter(|w| !w.is_empty()).collect();
    let mut frontier: Vec<TensorWord> = words.iter().map(|w| alloc::vec![w.clone()]).collect();
    let mut all = Vec::new();
    while let Some(tw) = frontier.pop() {
        let used: usize = tw.iter().map(Vec::len).sum();
        for w in &words {
            if used + w.len() <= letters {
                let mut next = tw.clone();
                next.push(w.clone());
                frontier.push(next);
            }
        }
        all.push(tw);
    }
    all.sort();
    for tw in all {
        let at = tw.iter().map(|w| p.render_word(w)).collect::<Vec<_>>().join("⊗");
        let r = (|| {
            let mut x = NCPoly::zero(&p, tw.len(), delta.order());
            x.push_term(tw.clone(), HSeries::one(delta.order()));
            odd_coproduct(delta, &odd_coproduct(delta, &x)?)
        })();
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
    chk
}
