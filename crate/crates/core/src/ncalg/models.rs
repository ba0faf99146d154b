//! Standard presentations: enveloping algebras and the ħ-deformed sl2.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::presentation::{Presentation, PresentationBuilder};
use crate::exact::{GaussRational, HSeries};
use crate::lie::LieAlgebra;
use crate::Result;

/// U(𝔤) with the basis order as letter order: e_j·e_i → e_i·e_j + Σ c_{ji}^k e_k for j > i.
pub fn universal_enveloping(l: &LieAlgebra, order: usize) -> Result<Arc<Presentation>> {
    let n = l.dim();
    let names = l.names();
    let mut b = PresentationBuilder::new(&format!("U({})", names.join(",")), order);
    for name in names {
        b = b.generator(name);
    }
    for j in 0..n {
        for i in 0..j {
            let mut rhs: Vec<(HSeries, Vec<&str>)> = alloc::vec![(HSeries::one(order), alloc::vec![names[i].as_str(), names[j].as_str()])];
            for k in 0..n {
                let c = l.c(j, i, k);
                if *c != GaussRational::int(0) {
                    rhs.push((HSeries::constant(c.clone(), order), alloc::vec![names[k].as_str()]));
                }
            }
            b = b.rule(&names[j], &names[i], rhs);
        }
    }
    b.build()
}

/// Coefficients s_m with (e^{cħx} − e^{−cħx})/(e^{cħ} − e^{−cħ}) = Σ_m s_m x^m, for m < order + 1.
///
/// The coefficient of x^m has ħ-valuation m − 1.
pub fn qnumber_coeffs(c: &GaussRational, order: usize) -> Vec<HSeries> {
    let ext = order + 1;
    let denom = &HSeries::exp_hbar(c.clone(), ext) - &HSeries::exp_hbar(-c, ext);
    let denom = denom.divide_by_hbar(1).expect("valuation one").inv().expect("unit after the shift");
    let mut out = alloc::vec![HSeries::zero(order)];
    let mut fact = GaussRational::int(1);
    for m in 1..ext {
        fact = &fact * &GaussRational::int(m as i64);
        if m % 2 == 0 {
            out.push(HSeries::zero(order));
            continue;
        }
        let lead = &(&GaussRational::int(2) * &c.pow(m as u32)) * &fact.inv().unwrap();
        // ħ^m / ħ = ħ^{m−1}
        let num = HSeries::monomial(lead, m - 1, order);
        out.push(&num * &denom.truncate(order));
    }
    out
}

/// U_ħ(sl2) with letters F < H < E, [H,E] = 2E, [H,F] = −2F, [E,F] = [H]_q, q = e^{ħ/4}.
pub fn uh_sl2(order: usize) -> Result<Arc<Presentation>> {
    let q = qnumber_coeffs(&GaussRational::frac(1, 4), order);
    let mut ef: Vec<(HSeries, Vec<&str>)> = alloc::vec![(HSeries::one(order), alloc::vec!["F", "E"])];
    let h_powers: Vec<Vec<&str>> = (0..q.len()).map(|m| alloc::vec!["H"; m]).collect();
    for (m, c) in q.iter().enumerate() {
        if !c.is_zero() {
            ef.push((c.clone(), h_powers[m].clone()));
        }
    }
    PresentationBuilder::new("U_h(sl2)", order)
        .generator("F")
        .generator("H")
        .generator("E")
        .rule("H", "F", alloc::vec![(HSeries::one(order), alloc::vec!["F", "H"]), (HSeries::int(-2, order), alloc::vec!["F"])])
        .rule("E", "H", alloc::vec![(HSeries::one(order), alloc::vec!["H", "E"]), (HSeries::int(-2, order), alloc::vec!["E"])])
        .rule("E", "F", ef)
        .build()
}
