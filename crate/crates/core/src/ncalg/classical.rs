//! Classical limits of presented algebras.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::poly::{commutator, NCPoly};
use super::presentation::Presentation;
use crate::exact::{Chart, CoordPoly, GaussRational};
use crate::geometry::Bivector;
use crate::lie::LieAlgebra;
use crate::{Error, Result};

/// The commutative chart on the generators; invertible generators become invertible coordinates.
pub fn classical_chart(p: &Presentation) -> Arc<Chart> {
    let names: Vec<&str> = p.generators().iter().map(String::as_str).collect();
    let inv: Vec<&str> =
        (0..p.letters().len()).filter(|l| p.inverse_of(*l).is_some() && p.base_of(*l).1 == 1).map(|l| p.letters()[l].as_str()).collect();
    Chart::new(&names, &inv)
}

/// Sends each word of a rank-1 element's ħ^k coefficient to the commuting monomial.
pub fn abelianize(x: &NCPoly, k: usize, chart: &Arc<Chart>) -> Result<CoordPoly> {
    let p = x.presentation();
    let mut out = CoordPoly::zero(chart);
    for (w, c) in x.word_terms() {
        let coef = c.coeff(k);
        if coef == GaussRational::int(0) {
            continue;
        }
        let mut e = alloc::vec![0i32; chart.dim()];
        for l in w {
            let (g, s) = p.base_of(*l);
            e[g] += s;
        }
        out = &out + &CoordPoly::try_monomial(chart, e, coef)?;
    }
    Ok(out)
}

/// The coefficient of ħ in [x, y], abelianized; requires [x, y] ≡ 0 mod ħ.
pub fn semiclassical_bracket(p: &Arc<Presentation>, x: &str, y: &str) -> Result<CoordPoly> {
    if p.order() < 2 {
        return Err(Error::Valuation { needed: 2, found: None });
    }
    let c = commutator(&NCPoly::letter(p, x, p.order())?, &NCPoly::letter(p, y, p.order())?)?;
    if let Some(v) = c.valuation().filter(|v| *v == 0) {
        return Err(Error::Valuation { needed: 1, found: Some(v) });
    }
    abelianize(&c, 1, &classical_chart(p))
}

/// The Poisson bivector of the classical limit on the generator chart.
pub fn semiclassical_bivector(p: &Arc<Presentation>) -> Result<Bivector> {
    let chart = classical_chart(p);
    let g = p.generators();
    let mut entries = Vec::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            entries.push((i, j, semiclassical_bracket(p, &g[i], &g[j])?));
        }
    }
    Ok(Bivector::from_entries(&chart, &entries))
}

/// The Lie algebra spanned by the generators when every ħ⁰ commutator of two generators
/// is a linear combination of generators.
pub fn classical_lie_algebra(p: &Arc<Presentation>) -> Result<LieAlgebra> {
    let g = p.generators();
    if (0..p.letters().len()).any(|l| p.inverse_of(l).is_some()) {
        return Err(Error::Malformed(format!("{}: invertible generators have no Lie algebra limit", p.name)));
    }
    let mut brackets: Vec<(usize, usize, Vec<(usize, GaussRational)>)> = Vec::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let c = commutator(&NCPoly::letter(p, &g[i], 1)?, &NCPoly::letter(p, &g[j], 1)?)?;
            let mut lin = Vec::new();
            for (w, s) in c.word_terms() {
                if w.len() != 1 {
                    return Err(Error::Malformed(format!("{}: [{}, {}] is not linear at ħ = 0", p.name, g[i], g[j])));
                }
                lin.push((p.base_of(w[0]).0, s.coeff(0)));
            }
            brackets.push((i, j, lin));
        }
    }
    let names: Vec<&str> = g.iter().map(String::as_str).collect();
    let refs: Vec<(usize, usize, &[(usize, GaussRational)])> = brackets.iter().map(|(i, j, l)| (*i, *j, l.as_slice())).collect();
    LieAlgebra::new(&names, &refs)
}
