//! The worked quantum actions: three two-dimensional cases and the su(2) action on a
//! three-generator algebra.

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::action::{ActionExpr, LieRelation, QuantumAction};
use crate::exact::{GaussRational, HSeries};
use crate::ncalg::{AlgebraMap, NCPoly, Presentation, PresentationBuilder};
use crate::Result;

/// A quantum action together with the Hopf data of its acting group.
#[derive(Clone, Debug)]
pub struct ActionExample {
    pub action: QuantumAction,
    pub coproduct: AlgebraMap,
    pub counit: AlgebraMap,
}

fn e(c: i64, order: usize) -> HSeries {
    HSeries::exp_hbar(GaussRational::int(c), order)
}

fn one(order: usize) -> HSeries {
    HSeries::one(order)
}

/// (e^{pħ} − e^{qħ})/ħ to the given order.
fn exp_diff_over_hbar(p: i64, q: i64, order: usize) -> HSeries {
    (&e(p, order + 1) - &e(q, order + 1)).divide_by_hbar(1).expect("valuation one")
}

/// Generators ξ < η with the deformed coproducts Δξ = ξ⊗1 − ħη⊗ξ + 1⊗ξ and
/// Δη = η⊗1 − ħη⊗η + 1⊗η, and [ξ,η] given by `bracket` as (coefficient, word) terms.
fn two_dim_group(order: usize, bracket: Option<Vec<(HSeries, Vec<&str>)>>) -> Result<Arc<Presentation>> {
    let mut b = PresentationBuilder::new("U_h(g2)", order).generator("xi").generator("eta");
    // η ξ = ξ η − [ξ, η]
    let mut rhs = alloc::vec![(one(order), alloc::vec!["xi", "eta"])];
    if let Some(br) = bracket {
        for (c, w) in br {
            rhs.push((-&c, w));
        }
    }
    b = b.rule("eta", "xi", rhs);
    b.build()
}

fn two_dim_hopf(g: &Arc<Presentation>) -> Result<(AlgebraMap, AlgebraMap)> {
    let n = g.order();
    let xi = NCPoly::letter(g, "xi", n)?;
    let eta = NCPoly::letter(g, "eta", n)?;
    let one = NCPoly::one(g, 1, n);
    let hbar = HSeries::hbar(1, n);
    let dxi = xi.tensor(&one)?.try_add(&one.tensor(&xi)?)?.try_add(&-&eta.tensor(&xi)?.scale(&hbar))?;
    let deta = eta.tensor(&one)?.try_add(&one.tensor(&eta)?)?.try_add(&-&eta.tensor(&eta)?.scale(&hbar))?;
    let delta = AlgebraMap::new("Delta", g, g, 2, alloc::vec![("xi", dxi), ("eta", deta)], false)?;
    let zero = NCPoly::zero(g, 0, n);
    let eps = AlgebraMap::new("eps", g, g, 0, alloc::vec![("xi", zero.clone()), ("eta", zero)], false)?;
    Ok((delta, eps))
}

/// Φ(ξ) = (1/ħ)a[b,·], Φ(η) = (1/ħ)a[a⁻¹,·].
fn two_dim_action(name: &str, g: &Arc<Presentation>, alg: &Arc<Presentation>) -> Result<QuantumAction> {
    let n = alg.order();
    let a = NCPoly::letter(alg, "a", n)?;
    let b = NCPoly::letter(alg, "b", n)?;
    let ai = NCPoly::letter(alg, "a^-1", n)?;
    QuantumAction::new(name, g, alg, alloc::vec![("xi", ActionExpr::hamiltonian(a.clone(), b)), ("eta", ActionExpr::hamiltonian(a, ai))])
}

/// The algebra of case 1: a, b commute and are moved by two canonical pairs (u, a), (v, b),
/// with a spectator canonical pair (s, t).
pub fn case1_algebra(order: usize) -> Result<Arc<Presentation>> {
    let h = HSeries::hbar(1, order);
    let mut b =
        PresentationBuilder::new("case1", order).generator("u").generator("v").generator("s").generator("t").invertible("a").generator("b");
    let letters = ["u", "v", "s", "t", "a^-1", "a", "b"];
    for j in 0..letters.len() {
        for i in 0..j {
            let (y, x) = (letters[i], letters[j]);
            if (y, x) == ("a^-1", "a") {
                continue;
            }
            let mut rhs = alloc::vec![(one(order), alloc::vec![y, x])];
            match (y, x) {
                ("u", "a") => rhs.push((-&h, alloc::vec!["a"])),
                ("u", "a^-1") => rhs.push((h.clone(), alloc::vec!["a^-1"])),
                ("v", "b") => rhs.push((-&h, alloc::vec![])),
                ("s", "t") => rhs.push((-&h, alloc::vec![])),
                _ => {}
            }
            b = b.rule(x, y, rhs);
        }
    }
    b.build()
}

/// Case 1: [a, b] = 0, commuting ξ, η.
pub fn case1(order: usize) -> Result<ActionExample> {
    let g = two_dim_group(order, None)?;
    let alg = case1_algebra(order)?;
    let (coproduct, counit) = two_dim_hopf(&g)?;
    Ok(ActionExample { action: two_dim_action("case1", &g, &alg)?, coproduct, counit })
}

/// Letters a⁻¹ < a < b with [a, b] = −ħ.
pub fn case2_algebra(order: usize) -> Result<Arc<Presentation>> {
    let h = HSeries::hbar(1, order);
    PresentationBuilder::new("case2", order)
        .invertible("a")
        .generator("b")
        .rule("b", "a", alloc::vec![(one(order), alloc::vec!["a", "b"]), (h.clone(), alloc::vec![])])
        .rule("b", "a^-1", alloc::vec![(one(order), alloc::vec!["a^-1", "b"]), (-&h, alloc::vec!["a^-1", "a^-1"])])
        .build()
}

/// [ξ, η] = −η + ħη², the relation the action satisfies in case 2.
pub fn case2_oracle_bracket(order: usize) -> Vec<(HSeries, Vec<&'static str>)> {
    alloc::vec![(HSeries::int(-1, order), alloc::vec!["eta"]), (HSeries::hbar(1, order), alloc::vec!["eta", "eta"])]
}

/// [ξ, η] = 3η − ħη² as stated for case 2.
pub fn case2_claimed_bracket(order: usize) -> Vec<(HSeries, Vec<&'static str>)> {
    alloc::vec![(HSeries::int(3, order), alloc::vec!["eta"]), (-&HSeries::hbar(1, order), alloc::vec!["eta", "eta"])]
}

/// Case 2: [a, b] = −ħ; the group carries the given bracket.
pub fn case2_with(order: usize, bracket: Vec<(HSeries, Vec<&str>)>) -> Result<ActionExample> {
    let g = two_dim_group(order, Some(bracket))?;
    let alg = case2_algebra(order)?;
    let (coproduct, counit) = two_dim_hopf(&g)?;
    Ok(ActionExample { action: two_dim_action("case2", &g, &alg)?, coproduct, counit })
}

pub fn case2(order: usize) -> Result<ActionExample> {
    case2_with(order, case2_oracle_bracket(order))
}

/// The quantum plane b < a⁻¹ < a with ab = (1 − ħ)ba, i.e. [a, b] = −ħba.
pub fn case3_algebra(order: usize) -> Result<Arc<Presentation>> {
    let h = HSeries::hbar(1, order);
    // a⁻¹b = (1 − ħ)⁻¹ b a⁻¹
    let inv = (&one(order) - &h).inv()?;
    PresentationBuilder::new("case3", order)
        .generator("b")
        .invertible("a")
        .rule("a", "b", alloc::vec![(&one(order) - &h, alloc::vec!["b", "a"])])
        .rule("a^-1", "b", alloc::vec![(inv, alloc::vec!["b", "a^-1"])])
        .build()
}

/// Case 3 with a free acting group: only module-algebra and diagnostic checks apply.
pub fn case3(order: usize) -> Result<ActionExample> {
    let g = PresentationBuilder::new("U_h(g2) free", order).generator("xi").generator("eta").build()?;
    let alg = case3_algebra(order)?;
    let (coproduct, counit) = two_dim_hopf(&g)?;
    Ok(ActionExample { action: two_dim_action("case3", &g, &alg)?, coproduct, counit })
}

/// a⁻¹ < a < c < b with aba⁻¹ = e^{2ħ}b, aca⁻¹ = e^{−2ħ}c and
/// [b, c] = ħ²(e^{−ħ} − e^{ħ})⁻¹a⁻² − (1 − e^{2ħ})cb.
pub fn su2_algebra(order: usize) -> Result<Arc<Presentation>> {
    let k = su2_k(order);
    PresentationBuilder::new("su2-module", order)
        .invertible("a")
        .generator("c")
        .generator("b")
        .rule("c", "a^-1", alloc::vec![(e(-2, order), alloc::vec!["a^-1", "c"])])
        .rule("c", "a", alloc::vec![(e(2, order), alloc::vec!["a", "c"])])
        .rule("b", "a^-1", alloc::vec![(e(2, order), alloc::vec!["a^-1", "b"])])
        .rule("b", "a", alloc::vec![(e(-2, order), alloc::vec!["a", "b"])])
        .rule("b", "c", alloc::vec![(e(2, order), alloc::vec!["c", "b"]), (k, alloc::vec!["a^-1", "a^-1"])])
        .build()
}

/// ħ²/(e^{−ħ} − e^{ħ}).
pub fn su2_k(order: usize) -> HSeries {
    exp_diff_over_hbar(-1, 1, order).inv().expect("unit").shift_up(1)
}

/// a⁻² + σ e^ħ(1 − e^{2ħ})²ħ⁻² cb for σ = ±1.
fn su2_h(alg: &Arc<Presentation>, sign: i64) -> Result<NCPoly> {
    let n = alg.order();
    let r = exp_diff_over_hbar(0, 2, n);
    let coef = (&e(1, n) * &(&r * &r)).scale(&GaussRational::int(sign));
    let ai2 = NCPoly::parse_word(alg, &["a^-1", "a^-1"], n)?;
    let cb = NCPoly::parse_word(alg, &["c", "b"], n)?;
    ai2.try_add(&cb.scale(&coef))
}

/// H = a⁻² − e^ħ(1 − e^{2ħ})²ħ⁻² cb with the sign as stated.
pub fn su2_h_stated(alg: &Arc<Presentation>) -> Result<NCPoly> {
    su2_h(alg, -1)
}

/// H = a⁻² + e^ħ(1 − e^{2ħ})²ħ⁻² cb, the normal element: bH = e^{2ħ}Hb and cH = e^{−2ħ}Hc.
pub fn su2_h_normal(alg: &Arc<Presentation>) -> Result<NCPoly> {
    su2_h(alg, 1)
}

/// Φ(ξ) = (1/ħ)a[b,·], Φ(η) = (1/ħ)[c,·]a, Φ(ζ^{±1}) = a^{±1}(·)a^{∓1}, with
/// ζξ = e^{2ħ}ξζ, ζη = e^{−2ħ}ηζ and the coproducts Δζ = ζ⊗ζ, Δξ = ξ⊗1 + ζ⊗ξ,
/// Δη = 1⊗η + η⊗ζ⁻¹.
pub fn su2(order: usize) -> Result<ActionExample> {
    let g = PresentationBuilder::new("U_h(su2)", order)
        .invertible("zeta")
        .generator("eta")
        .generator("xi")
        .rule("xi", "zeta", alloc::vec![(e(-2, order), alloc::vec!["zeta", "xi"])])
        .rule("xi", "zeta^-1", alloc::vec![(e(2, order), alloc::vec!["zeta^-1", "xi"])])
        .rule("eta", "zeta", alloc::vec![(e(2, order), alloc::vec!["zeta", "eta"])])
        .rule("eta", "zeta^-1", alloc::vec![(e(-2, order), alloc::vec!["zeta^-1", "eta"])])
        .build()?;
    let alg = su2_algebra(order)?;
    let n = order;
    let a = NCPoly::letter(&alg, "a", n)?;
    let ai = NCPoly::letter(&alg, "a^-1", n)?;
    let b = NCPoly::letter(&alg, "b", n)?;
    let c = NCPoly::letter(&alg, "c", n)?;
    let action = QuantumAction::new(
        "su2",
        &g,
        &alg,
        alloc::vec![
            ("xi", ActionExpr::hamiltonian(a.clone(), b)),
            ("eta", ActionExpr::hamiltonian_right(c, a.clone())),
            ("zeta", ActionExpr::conjugation(a.clone(), ai.clone())),
            ("zeta^-1", ActionExpr::conjugation(ai, a)),
        ],
    )?;
    let gl = |s: &str| NCPoly::letter(&g, s, n);
    let one = NCPoly::one(&g, 1, n);
    let (xi, eta, z, zi) = (gl("xi")?, gl("eta")?, gl("zeta")?, gl("zeta^-1")?);
    let coproduct = AlgebraMap::new(
        "Delta",
        &g,
        &g,
        2,
        alloc::vec![
            ("zeta", z.tensor(&z)?),
            ("zeta^-1", zi.tensor(&zi)?),
            ("xi", xi.tensor(&one)?.try_add(&z.tensor(&xi)?)?),
            ("eta", one.tensor(&eta)?.try_add(&eta.tensor(&zi)?)?),
        ],
        false,
    )?;
    let s = |x: HSeries| NCPoly::scalar(&g, 0, x);
    let counit = AlgebraMap::new(
        "eps",
        &g,
        &g,
        0,
        alloc::vec![
            ("zeta", s(HSeries::one(n))),
            ("zeta^-1", s(HSeries::one(n))),
            ("xi", s(HSeries::zero(n))),
            ("eta", s(HSeries::zero(n))),
        ],
        false,
    )?;
    Ok(ActionExample { action, coproduct, counit })
}

/// [ξ, η] = (ζ⁻¹ − ζ)/(e^{−ħ} − e^{ħ}) read on endomorphisms.
pub fn su2_xi_eta_relation(ex: &ActionExample) -> Result<LieRelation> {
    let g = ex.action.group();
    let (z, zi) = (g.letter("zeta")?, g.letter("zeta^-1")?);
    let n = g.order();
    let den = &e(-1, n + 1) - &e(1, n + 1);
    Ok(LieRelation {
        x: g.letter("xi")?,
        y: g.letter("eta")?,
        rhs: ActionExpr::DivSeries(den, Box::new(ActionExpr::minus(ex.action.expr(zi).clone(), ex.action.expr(z).clone()))),
        label: "[xi,eta] = (zeta^-1 - zeta)/(e^-h - e^h)".into(),
    })
}
