//! Brackets, Jacobi identity, Hamiltonian fields and the Koszul bracket.
//!
//! Sign convention: X_f = π♯(df) = {f, ·}, so that f ↦ X_f is a Lie algebra
//! homomorphism. Generators of group actions follow exp(−tξ), which makes the
//! momentum map condition read ξ_M = X_{H_ξ}.

use alloc::format;

use super::forms::{Bivector, PolyForm, VectorField};
use crate::exact::CoordPoly;
use crate::report::Check;

/// {f,g} = π(df, dg).
pub fn poisson_bracket(pi: &Bivector, f: &CoordPoly, g: &CoordPoly) -> CoordPoly {
    pi.pair(&PolyForm::exact(f), &PolyForm::exact(g))
}

/// Cyclic sum π^{hi}∂_hπ^{jk} + π^{hj}∂_hπ^{ki} + π^{hk}∂_hπ^{ij} over i<j<k.
pub fn check_jacobi_coords(pi: &Bivector) -> Check {
    let n = pi.dim();
    let mut chk = Check::new("Jacobi (coordinates)");
    let names = &pi.chart().names;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut s = CoordPoly::zero(pi.chart());
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let pbc = pi.get(b, c);
                    for h in 0..n {
                        let dh = pbc.diff(h);
                        if !dh.is_zero() {
                            s = &s + &(&pi.get(h, a) * &dh);
                        }
                    }
                }
                if !s.is_zero() {
                    chk.fail(format!("({},{},{})", names[i], names[j], names[k]), format!("{s}"));
                    return chk;
                }
            }
        }
    }
    chk
}

pub fn hamiltonian_field(pi: &Bivector, f: &CoordPoly) -> VectorField {
    pi.sharp(&PolyForm::exact(f))
}

/// {f, v} = 0 for every coordinate v, optionally after substituting
/// `constraint = (var, value)` to work modulo a defining relation.
pub fn casimir_check(pi: &Bivector, f: &CoordPoly, constraint: Option<(usize, &CoordPoly)>) -> Check {
    let mut chk = Check::new("Casimir");
    let chart = pi.chart().clone();
    for v in 0..chart.dim() {
        let mut b = poisson_bracket(pi, f, &CoordPoly::var(&chart, v));
        if let Some((var, value)) = constraint {
            match b.substitute(var, value) {
                Ok(s) => b = s,
                Err(e) => {
                    chk.fail(format!("{{f,{}}}", chart.names[v]), format!("constraint substitution failed: {e}"));
                    continue;
                }
            }
        }
        if !b.is_zero() {
            chk.fail(format!("{{f,{}}}", chart.names[v]), format!("{b}"));
        }
    }
    chk
}

/// [α,β]_π = L_{π♯α}β − L_{π♯β}α − d(π(α,β)).
pub fn koszul_bracket(pi: &Bivector, alpha: &PolyForm, beta: &PolyForm) -> PolyForm {
    let a = beta.lie_derivative(&pi.sharp(alpha));
    let b = alpha.lie_derivative(&pi.sharp(beta));
    let c = PolyForm::exact(&pi.pair(alpha, beta));
    &(&a - &b) - &c
}
