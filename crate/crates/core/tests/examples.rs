//! End-to-end use of the public API on the worked examples.

use poisson_forge_core::exact::{series_exp, GaussRational, HSeries};
use poisson_forge_core::hopf::{check_antipode, check_coassociativity, check_counit, semiclassical_cobracket, uh_sl2_hopf};
use poisson_forge_core::lie::{check_cocycle, check_jacobi, cobracket_from_r, dual_bracket, LieAlgebra, RMatrix, Tensor};
use poisson_forge_core::qmomentum::check_module_algebra;
use poisson_forge_core::qmomentum::examples::{case1, case3};
use poisson_forge_core::reduction::examples::dual_group_case3;
use poisson_forge_core::reduction::{check_ideal_invariant, check_ideal_poisson_closed, IdealModel};

fn q(n: i64, d: i64) -> GaussRational {
    GaussRational::frac(n, d)
}

fn sl2() -> LieAlgebra {
    LieAlgebra::new(&["H", "X", "Y"], &[(0, 1, &[(1, q(2, 1))]), (0, 2, &[(2, q(-2, 1))]), (1, 2, &[(0, q(1, 1))])]).unwrap()
}

#[test]
fn axb_bialgebra() {
    let l = LieAlgebra::new(&["X", "Y"], &[(0, 1, &[(0, q(1, 1))])]).unwrap();
    let (d, sym) = cobracket_from_r(&l, &RMatrix::new(Tensor::wedge(2, 0, 1)));
    assert!(sym.pass);
    assert!(d.image(0).is_zero());
    assert_eq!(d.image(1), Tensor::wedge(2, 0, 1).scale(&q(-1, 1)));
    assert!(check_cocycle(&l, &d).pass);
    let (dual, chk) = dual_bracket(&l, &d);
    assert!(chk.pass);
    assert_eq!(dual.bracket_basis(0, 1), vec![q(0, 1), q(-1, 1)]);
}

#[test]
fn sl2_quasitriangular_cobracket() {
    let l = sl2();
    assert!(check_jacobi(&l).pass);
    let mut r = Tensor::zero(3, 2);
    r.add_comp(vec![0, 0], q(1, 8));
    r.add_comp(vec![1, 2], q(1, 2));
    let (d, sym) = cobracket_from_r(&l, &RMatrix::new(r));
    assert!(sym.pass);
    // δ(X) = ¼ X∧H
    assert_eq!(d.image(1), Tensor::wedge(3, 1, 0).scale(&q(1, 4)));
    assert!(check_cocycle(&l, &d).pass);
}

#[test]
fn quantized_sl2_axioms() {
    let h = uh_sl2_hopf(4).unwrap();
    assert!(check_coassociativity(&h, 2).pass);
    assert!(check_counit(&h, 2).pass);
    assert!(check_antipode(&h, 2).pass);
    let d = semiclassical_cobracket(&h).unwrap();
    let e = h.algebra.generators().iter().position(|g| g == "E").unwrap();
    let hh = h.algebra.generators().iter().position(|g| g == "H").unwrap();
    assert_eq!(d.image(e), Tensor::wedge(3, e, hh).scale(&q(1, 4)));
}

#[test]
fn exp_of_quarter_hbar() {
    let s = series_exp(&HSeries::monomial(q(1, 4), 1, 5)).unwrap();
    assert_eq!(s.coeffs(), &[q(1, 1), q(1, 4), q(1, 32), q(1, 384), q(1, 6144)]);
}

#[test]
fn two_dimensional_module_algebras() {
    for ex in [case1(4).unwrap(), case3(4).unwrap()] {
        assert!(check_module_algebra(&ex.action, &ex.coproduct, 2).pass);
    }
}

#[test]
fn dual_group_level_ideal() {
    let setup = dual_group_case3();
    let model = IdealModel::new(setup.chart(), &setup.ideal, 6).unwrap();
    assert!(check_ideal_poisson_closed(&setup, &model).pass);
    assert!(check_ideal_invariant(&setup, &model).pass);
}
