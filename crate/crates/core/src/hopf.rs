//! Hopf structures on presented algebras and their axiom checks.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::exact::{GaussRational, HSeries};
use crate::lie::{check_cocycle, Cobracket, LieAlgebra, Tensor};
use crate::ncalg::{check_map, classical_lie_algebra, uh_sl2, universal_enveloping, AlgebraMap, NCPoly, Presentation, Word};
use crate::report::Check;
use crate::{Error, Result};

/// Coproduct, counit and antipode on a presented algebra. The antipode is an anti-map.
#[derive(Clone, Debug)]
pub struct HopfStructure {
    pub name: String,
    pub algebra: Arc<Presentation>,
    pub coproduct: AlgebraMap,
    pub counit: AlgebraMap,
    pub antipode: AlgebraMap,
}

impl HopfStructure {
    pub fn new(name: &str, coproduct: AlgebraMap, counit: AlgebraMap, antipode: AlgebraMap) -> Result<Self> {
        let a = coproduct.source().clone();
        let same = |m: &AlgebraMap| Arc::ptr_eq(m.source(), &a) && Arc::ptr_eq(m.target(), &a);
        if !same(&coproduct) || !same(&counit) || !same(&antipode) {
            return Err(Error::Malformed(format!("{name}: structure maps must be endomorphisms of one algebra")));
        }
        if coproduct.rank() != 2 || counit.rank() != 0 || antipode.rank() != 1 {
            return Err(Error::Malformed(format!("{name}: coproduct, counit and antipode need ranks 2, 0, 1")));
        }
        if !antipode.is_anti() || coproduct.is_anti() || counit.is_anti() {
            return Err(Error::Malformed(format!("{name}: only the antipode reverses products")));
        }
        Ok(HopfStructure { name: name.into(), algebra: a, coproduct, counit, antipode })
    }

    pub fn order(&self) -> usize {
        self.coproduct.order().min(self.counit.order()).min(self.antipode.order())
    }

    /// The structure maps respect the defining relations.
    pub fn check_maps(&self) -> Check {
        Check::all(
            format!("{} structure maps", self.name),
            &[check_map(&self.coproduct), check_map(&self.counit), check_map(&self.antipode)],
        )
    }
}

/// U(𝔤) with Δx = x⊗1 + 1⊗x, ε(x) = 0, S(x) = −x.
pub fn enveloping_hopf(l: &LieAlgebra, order: usize) -> Result<HopfStructure> {
    let p = universal_enveloping(l, order)?;
    primitive_hopf(&p, order)
}

/// Primitive structure maps on every generator of a presentation without inverses.
pub fn primitive_hopf(p: &Arc<Presentation>, order: usize) -> Result<HopfStructure> {
    let one = NCPoly::one(p, 1, order);
    let mut d = Vec::new();
    let mut e = Vec::new();
    let mut s = Vec::new();
    for n in p.letters() {
        let x = NCPoly::letter(p, n, order)?;
        d.push((n.as_str(), &x.tensor(&one)? + &one.tensor(&x)?));
        e.push((n.as_str(), NCPoly::zero(p, 0, order)));
        s.push((n.as_str(), -&x));
    }
    HopfStructure::new(
        &p.name,
        AlgebraMap::new("Δ", p, p, 2, d, false)?,
        AlgebraMap::new("ε", p, p, 0, e, false)?,
        AlgebraMap::new("S", p, p, 1, s, true)?,
    )
}

/// q^{kH} = exp(kħH/4) in U_ħ(sl2).
pub fn q_power_h(p: &Arc<Presentation>, k: i64, order: usize) -> Result<NCPoly> {
    NCPoly::letter(p, "H", order)?.exp_hbar(&GaussRational::frac(k, 4))
}

/// U_ħ(sl2) with Δ(E) = E⊗1 + q^{−H}⊗E, Δ(F) = F⊗q^H + 1⊗F, Δ(H) = H⊗1 + 1⊗H,
/// ε = 0 on generators, S(E) = −q^H E, S(F) = −F q^{−H}, S(H) = −H.
pub fn uh_sl2_hopf(order: usize) -> Result<HopfStructure> {
    let p = uh_sl2(order)?;
    let g = |n: &str| NCPoly::letter(&p, n, order);
    let (e, f, h) = (g("E")?, g("F")?, g("H")?);
    let one = NCPoly::one(&p, 1, order);
    let (qh, qmh) = (q_power_h(&p, 1, order)?, q_power_h(&p, -1, order)?);
    let d = alloc::vec![
        ("E", &e.tensor(&one)? + &qmh.tensor(&e)?),
        ("F", &f.tensor(&qh)? + &one.tensor(&f)?),
        ("H", &h.tensor(&one)? + &one.tensor(&h)?),
    ];
    let z = NCPoly::zero(&p, 0, order);
    let eps = alloc::vec![("E", z.clone()), ("F", z.clone()), ("H", z)];
    let s = alloc::vec![("E", -&(&qh * &e)), ("F", -&(&f * &qmh)), ("H", -&h)];
    HopfStructure::new(
        "U_h(sl2)",
        AlgebraMap::new("Δ", &p, &p, 2, d, false)?,
        AlgebraMap::new("ε", &p, &p, 0, eps, false)?,
        AlgebraMap::new("S", &p, &p, 1, s, true)?,
    )
}

fn monomials(h: &HopfStructure, degree: usize) -> Vec<Word> {
    h.algebra.normal_words(degree)
}

fn record(chk: &mut Check, at: String, r: Result<NCPoly>) {
    match r {
        Ok(d) if d.is_zero() => {}
        Ok(d) => chk.fail(at, d.render()),
        Err(e) => chk.fail(at, format!("{e}")),
    }
}

/// (Δ⊗id)Δ = (id⊗Δ)Δ on normal monomials of degree ≤ d.
pub fn check_coassociativity(h: &HopfStructure, degree: usize) -> Check {
    let mut chk = Check::new(format!("coassociativity ({})", h.name)).with_order(h.order());
    for m in monomials(h, degree) {
        let r = (|| {
            let dx = h.coproduct.apply_word(&m)?;
            Ok(h.coproduct.apply_at(&dx, 0)? - h.coproduct.apply_at(&dx, 1)?)
        })();
        record(&mut chk, h.algebra.render_word(&m), r);
    }
    chk
}

/// (ε⊗id)Δ = id = (id⊗ε)Δ on normal monomials of degree ≤ d.
pub fn check_counit(h: &HopfStructure, degree: usize) -> Check {
    let mut chk = Check::new(format!("counit ({})", h.name)).with_order(h.order());
    for m in monomials(h, degree) {
        let r = (|| -> Result<(NCPoly, NCPoly)> {
            let x = NCPoly::word(&h.algebra, &m, h.order())?;
            let dx = h.coproduct.apply_word(&m)?;
            Ok((h.counit.apply_at(&dx, 0)? - x.clone(), h.counit.apply_at(&dx, 1)? - x))
        })();
        let at = h.algebra.render_word(&m);
        match r {
            Ok((l, rr)) => {
                if !l.is_zero() {
                    chk.fail(format!("(ε⊗id)Δ({at})"), l.render());
                }
                if !rr.is_zero() {
                    chk.fail(format!("(id⊗ε)Δ({at})"), rr.render());
                }
            }
            Err(e) => chk.fail(at, format!("{e}")),
        }
    }
    chk
}

/// m(S⊗id)Δ = ιε = m(id⊗S)Δ on normal monomials of degree ≤ d.
pub fn check_antipode(h: &HopfStructure, degree: usize) -> Check {
    let mut chk = Check::new(format!("antipode ({})", h.name)).with_order(h.order());
    for m in monomials(h, degree) {
        let at = h.algebra.render_word(&m);
        let r = (|| -> Result<(NCPoly, NCPoly)> {
            let dx = h.coproduct.apply_word(&m)?;
            let eps = h.counit.apply_word(&m)?.as_scalar().expect("counit is scalar");
            let unit = NCPoly::scalar(&h.algebra, 1, eps);
            let left = h.antipode.apply_at(&dx, 0)?.multiply_out()?;
            let right = h.antipode.apply_at(&dx, 1)?.multiply_out()?;
            Ok((&left - &unit, &right - &unit))
        })();
        match r {
            Ok((l, rr)) => {
                if !l.is_zero() {
                    chk.fail(format!("m(S⊗id)Δ({at})"), l.render());
                }
                if !rr.is_zero() {
                    chk.fail(format!("m(id⊗S)Δ({at})"), rr.render());
                }
            }
            Err(e) => chk.fail(at, format!("{e}")),
        }
    }
    chk
}

/// Δ respects the relations, then Δ(uv) = Δ(u)Δ(v) on `samples` random pairs of normal
/// monomials of degree ≤ d.
pub fn check_delta_hom(h: &HopfStructure, degree: usize, samples: usize, seed: u64) -> Check {
    let mut chk = Check::new(format!("Δ homomorphism ({})", h.name)).with_order(h.order());
    chk.absorb(&check_map(&h.coproduct));
    let words = monomials(h, degree);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let u = &words[(rng.next_u64() % words.len() as u64) as usize];
        let v = &words[(rng.next_u64() % words.len() as u64) as usize];
        let r = (|| {
            let x = NCPoly::word(&h.algebra, u, h.order())?;
            let y = NCPoly::word(&h.algebra, v, h.order())?;
            let lhs = h.coproduct.apply(&x.try_mul(&y)?)?;
            Ok(lhs - h.coproduct.apply(&x)?.try_mul(&h.coproduct.apply(&y)?)?)
        })();
        record(&mut chk, format!("Δ({}·{})", h.algebra.render_word(u), h.algebra.render_word(v)), r);
    }
    chk
}

/// Base letters of the generators, in generator order.
fn generator_letters(p: &Presentation) -> Vec<usize> {
    (0..p.letters().len()).filter(|l| p.base_of(*l).1 == 1).collect()
}

/// Maps a rank-2 element whose words all have length ≤ 1 to a tensor over the generators;
/// the empty word is rejected.
fn linear_tensor(x: &NCPoly, k: usize) -> Result<Tensor> {
    let p = x.presentation();
    let n = p.generators().len();
    let mut comps = Vec::new();
    for (w, c) in x.terms() {
        let coef = c.coeff(k);
        if coef == GaussRational::int(0) {
            continue;
        }
        if w.iter().any(|f| f.len() != 1) {
            return Err(Error::Malformed(format!("{}: cobracket term {} is not in 𝔤⊗𝔤", p.name, x.render())));
        }
        let idx = w.iter().map(|f| p.base_of(f[0]).0).collect();
        comps.push((idx, coef));
    }
    Tensor::from_components(n, x.rank(), comps)
}

/// δ(x) = ((Δ − τΔ)(x)/ħ mod ħ) on every generator.
pub fn semiclassical_cobracket(h: &HopfStructure) -> Result<Cobracket> {
    let p = &h.algebra;
    let mut images = Vec::new();
    for l in generator_letters(p) {
        let dx = h.coproduct.apply_word(&[l])?;
        let skew = &dx - &dx.flip();
        if let Some(0) = skew.valuation() {
            return Err(Error::Valuation { needed: 1, found: Some(0) });
        }
        images.push(linear_tensor(&skew, 1)?);
    }
    Cobracket::from_images(&images)
}

/// The co-Poisson conditions of a quantization at order ħ:
/// Δ is cocommutative mod ħ, the induced δ is a 1-cocycle on the classical Lie algebra,
/// and δ(xy) = δ(x)Δ₀(y) + Δ₀(x)δ(y) on products of two generators.
pub fn check_co_poisson(h: &HopfStructure) -> Check {
    let mut chk = Check::new(format!("co-Poisson compatibility ({})", h.name)).with_order(2);
    let p = &h.algebra;
    let gens = generator_letters(p);
    for &l in &gens {
        match h.coproduct.apply_word(&[l]) {
            Ok(dx) => {
                let skew = (&dx - &dx.flip()).hbar_coeff(0);
                if !skew.is_zero() {
                    chk.fail(format!("(Δ−τΔ)({}) mod ħ", p.letters()[l]), skew.render());
                }
            }
            Err(e) => chk.fail(p.letters()[l].clone(), format!("{e}")),
        }
    }
    match (semiclassical_cobracket(h), classical_lie_algebra(p)) {
        (Ok(d), Ok(lie)) => chk.absorb(&check_cocycle(&lie, &d)),
        (Err(e), _) | (_, Err(e)) => chk.fail("classical limit", format!("{e}")),
    }
    // δ on products of two generators, computed at order 2
    let skew_part = |x: &NCPoly| -> Result<(NCPoly, NCPoly)> {
        let dx = h.coproduct.apply(x)?.truncate(2);
        let s = &dx - &dx.flip();
        Ok((s.divide_by_hbar(1)?, dx.truncate(1)))
    };
    for &a in &gens {
        for &b in &gens {
            let at = format!("δ({}·{})", p.letters()[a], p.letters()[b]);
            let r = (|| -> Result<NCPoly> {
                let x = NCPoly::word(p, &[a], 2)?;
                let y = NCPoly::word(p, &[b], 2)?;
                let (dxy, _) = skew_part(&x.try_mul(&y)?)?;
                let (dx, d0x) = skew_part(&x)?;
                let (dy, d0y) = skew_part(&y)?;
                Ok(dxy - (dx.try_mul(&d0y)? + d0x.try_mul(&dy)?))
            })();
            record(&mut chk, at, r);
        }
    }
    chk
}

/// Compares the quantized structure mod ħ with a classical one on the same letters:
/// every rule and every coproduct image must agree at ħ⁰.
pub fn check_classical_limit(h: &HopfStructure, classical: &HopfStructure) -> Check {
    let mut chk = Check::new(format!("classical limit ({} → {})", h.name, classical.name)).with_order(1);
    let (p, c) = (&h.algebra, &classical.algebra);
    if p.letters() != c.letters() {
        chk.fail("letters", format!("{:?} vs {:?}", p.letters(), c.letters()));
        return chk;
    }
    // rules: the ħ⁰ normal forms of every pair of letters agree
    for x in 0..p.letters().len() {
        for y in 0..p.letters().len() {
            let r = (|| -> Result<Option<(NCPoly, NCPoly)>> {
                let a = NCPoly::word(p, &[x, y], 1)?;
                let b = NCPoly::word(c, &[x, y], 1)?;
                Ok(if same_terms(&a, &b) { None } else { Some((a, b)) })
            })();
            match r {
                Ok(None) => {}
                Ok(Some((a, b))) => chk.fail(format!("{} mod ħ", p.render_word(&[x, y])), format!("{} vs {}", a.render(), b.render())),
                Err(e) => chk.fail(p.render_word(&[x, y]), format!("{e}")),
            }
        }
    }
    for l in 0..p.letters().len() {
        let a = h.coproduct.image(l).truncate(1);
        let b = classical.coproduct.image(l).truncate(1);
        if !same_terms(&a, &b) {
            chk.fail(format!("Δ({}) mod ħ", p.letters()[l]), format!("{} vs {}", a.render(), b.render()));
        }
    }
    chk
}

/// Term-map equality across two presentations with identical letters.
fn same_terms(a: &NCPoly, b: &NCPoly) -> bool {
    a.terms().len() == b.terms().len() && a.terms().iter().zip(b.terms()).all(|((wa, ca), (wb, cb))| wa == wb && ca == cb)
}

/// Results of the quasi-triangularity checks for a candidate R ∈ A⊗A.
#[derive(Clone, Debug)]
pub struct QuasitriangularReport {
    pub invertible: Check,
    pub twist: Check,
    pub coproduct_left: Check,
    pub coproduct_right: Check,
    pub qybe: Check,
    pub counit_legs: Check,
}

impl QuasitriangularReport {
    pub fn pass(&self) -> bool {
        [&self.invertible, &self.twist, &self.coproduct_left, &self.coproduct_right, &self.qybe, &self.counit_legs].iter().all(|c| c.pass)
    }

    pub fn checks(&self) -> [&Check; 6] {
        [&self.invertible, &self.twist, &self.coproduct_left, &self.coproduct_right, &self.qybe, &self.counit_legs]
    }
}

/// The QYBE defect R₁₂R₁₃R₂₃ − R₂₃R₁₃R₁₂.
pub fn qybe_defect(r: &NCPoly) -> Result<NCPoly> {
    let (r12, r13, r23) = (r.legs(&[0, 1], 3), r.legs(&[0, 2], 3), r.legs(&[1, 2], 3));
    Ok(r12.try_mul(&r13)?.try_mul(&r23)? - r23.try_mul(&r13)?.try_mul(&r12)?)
}

/// Checks R R⁻¹ = 1, τΔ(x) = RΔ(x)R⁻¹ on generators, (Δ⊗id)R = R₁₃R₂₃,
/// (id⊗Δ)R = R₁₃R₁₂, the QYBE, and (ε⊗id)R = (id⊗ε)R = 1.
pub fn check_quasitriangular(h: &HopfStructure, r: &NCPoly, r_inv: &NCPoly) -> QuasitriangularReport {
    let order = h.order().min(r.order()).min(r_inv.order());
    let name = |s: &str| format!("{s} ({})", h.name);
    let mut invertible = Check::new(name("R invertible")).with_order(order);
    let one2 = NCPoly::one(&h.algebra, 2, order);
    record(&mut invertible, "R·R⁻¹ − 1".into(), r.try_mul(r_inv).map(|x| x - one2.clone()));
    record(&mut invertible, "R⁻¹·R − 1".into(), r_inv.try_mul(r).map(|x| x - one2.clone()));

    let mut twist = Check::new(name("τΔ = RΔR⁻¹")).with_order(order);
    for l in 0..h.algebra.letters().len() {
        let res = (|| {
            let dx = h.coproduct.image(l);
            Ok(dx.flip() - r.try_mul(dx)?.try_mul(r_inv)?)
        })();
        record(&mut twist, h.algebra.letters()[l].clone(), res);
    }

    let mut coproduct_left = Check::new(name("(Δ⊗id)R = R₁₃R₂₃")).with_order(order);
    record(&mut coproduct_left, "R".into(), (|| Ok(h.coproduct.apply_at(r, 0)? - r.legs(&[0, 2], 3).try_mul(&r.legs(&[1, 2], 3))?))());
    let mut coproduct_right = Check::new(name("(id⊗Δ)R = R₁₃R₁₂")).with_order(order);
    record(&mut coproduct_right, "R".into(), (|| Ok(h.coproduct.apply_at(r, 1)? - r.legs(&[0, 2], 3).try_mul(&r.legs(&[0, 1], 3))?))());
    let mut qybe = Check::new(name("QYBE")).with_order(order);
    record(&mut qybe, "R₁₂R₁₃R₂₃ − R₂₃R₁₃R₁₂".into(), qybe_defect(r));

    let mut counit_legs = Check::new(name("(ε⊗id)R = (id⊗ε)R = 1")).with_order(order);
    let one1 = NCPoly::one(&h.algebra, 1, order);
    record(&mut counit_legs, "(ε⊗id)R".into(), h.counit.apply_at(r, 0).map(|x| x - one1.clone()));
    record(&mut counit_legs, "(id⊗ε)R".into(), h.counit.apply_at(r, 1).map(|x| x - one1.clone()));
    QuasitriangularReport { invertible, twist, coproduct_left, coproduct_right, qybe, counit_legs }
}

/// Inverse of an element 1 + X with X ≡ 0 mod ħ, as Σ (−X)^k.
pub fn invert_near_one(r: &NCPoly) -> Result<NCPoly> {
    let one = NCPoly::one(r.presentation(), r.rank(), r.order());
    let x = r - &one;
    if x.valuation() == Some(0) {
        return Err(Error::NotInvertible("element is not 1 modulo ħ".into()));
    }
    let mut out = one.clone();
    let mut power = one;
    for _ in 1..r.order() {
        power = power.try_mul(&-&x)?;
        out = out.try_add(&power)?;
    }
    Ok(out)
}

/// 1⊗1 + ħ Σ r^{ij} e_i⊗e_j for a classical r-matrix on the generators of `p`.
pub fn first_order_r(p: &Arc<Presentation>, r: &Tensor, order: usize) -> Result<NCPoly> {
    let gens = generator_letters(p);
    let mut out = NCPoly::one(p, 2, order);
    for (idx, c) in r.comps() {
        let x = NCPoly::word(p, &[gens[idx[0]]], order)?;
        let y = NCPoly::word(p, &[gens[idx[1]]], order)?;
        out = out.try_add(&x.tensor(&y)?.scale(&HSeries::monomial(c.clone(), 1, order)))?;
    }
    Ok(out)
}

/// Embeds a tensor over the generators as a rank-k element with constant coefficients.
pub fn tensor_to_elem(p: &Arc<Presentation>, t: &Tensor, order: usize) -> Result<NCPoly> {
    let gens = generator_letters(p);
    let mut out = NCPoly::zero(p, t.rank, order);
    for (idx, c) in t.comps() {
        let mut term = NCPoly::one(p, 0, order);
        for i in idx {
            term = term.tensor(&NCPoly::word(p, &[gens[*i]], order)?)?;
        }
        out = out.try_add(&term.scale_q(c))?;
    }
    Ok(out)
}
