//! Structures built from the shipped JSON fixtures agree with the ones constructed in code.

use std::sync::Arc;

use poisson_forge::{fixtures, Session, Workspace};
use poisson_forge_core::exact::GaussRational;
use poisson_forge_core::geometry::{pl_group_bivector, Bivector, MatrixGroupModel};
use poisson_forge_core::hopf::{enveloping_hopf, uh_sl2_hopf, HopfStructure};
use poisson_forge_core::lie::LieAlgebra;
use poisson_forge_core::ncalg::{AlgebraMap, NCPoly, Presentation};
use poisson_forge_core::qmomentum::examples::{self, ActionExample};
use poisson_forge_core::reduction::{examples as red, ReductionSetup};

const ORDER: usize = 4;

fn ws() -> Workspace {
    Workspace::new(fixtures::spec().unwrap(), Session { order: ORDER, ..Session::default() })
}

fn same_presentation(a: &Arc<Presentation>, b: &Arc<Presentation>) {
    assert_eq!(a.letters(), b.letters());
    assert_eq!(a.order(), b.order());
    let n = a.letters().len();
    for x in 0..n {
        for y in 0..n {
            let u = NCPoly::word(a, &[x, y], ORDER).unwrap();
            let v = NCPoly::word(b, &[x, y], ORDER).unwrap();
            assert_eq!(u.render(), v.render(), "{}·{}", a.letters()[x], a.letters()[y]);
        }
    }
}

fn same_map(a: &AlgebraMap, b: &AlgebraMap) {
    assert_eq!(a.rank(), b.rank());
    assert_eq!(a.is_anti(), b.is_anti());
    for l in 0..a.source().letters().len() {
        assert_eq!(a.image(l).render(), b.image(l).render(), "image of {}", a.source().letters()[l]);
    }
}

fn same_hopf(a: &HopfStructure, b: &HopfStructure) {
    same_presentation(&a.algebra, &b.algebra);
    same_map(&a.coproduct, &b.coproduct);
    same_map(&a.counit, &b.counit);
    same_map(&a.antipode, &b.antipode);
}

#[test]
fn quantized_sl2() {
    same_hopf(&ws().hopf("uh-sl2").unwrap(), &uh_sl2_hopf(ORDER).unwrap());
}

#[test]
fn enveloping_sl2() {
    let w = ws();
    same_hopf(&w.hopf("u-sl2").unwrap(), &enveloping_hopf(&w.lie("sl2").unwrap(), ORDER).unwrap());
}

fn same_action(name: &str, ex: ActionExample) {
    let (phi, delta, eps) = ws().action(name).unwrap();
    same_presentation(phi.group(), ex.action.group());
    same_presentation(phi.algebra(), ex.action.algebra());
    same_map(&delta, &ex.coproduct);
    same_map(&eps, &ex.counit);
    let alg = phi.algebra();
    for l in 0..phi.group().letters().len() {
        for w in alg.normal_words(2) {
            let f = NCPoly::word(alg, &w, ORDER).unwrap();
            let g = NCPoly::word(ex.action.algebra(), &w, ORDER).unwrap();
            let lhs = phi.apply_word(&[l], &f).unwrap();
            let rhs = ex.action.apply_word(&[l], &g).unwrap();
            assert_eq!(lhs.render(), rhs.render(), "{name}: Φ({}){}", phi.group().letters()[l], alg.render_word(&w));
        }
    }
}

#[test]
fn case1_action() {
    same_action("case1", examples::case1(ORDER).unwrap());
}

#[test]
fn case2_action() {
    same_action("case2", examples::case2(ORDER).unwrap());
}

#[test]
fn case3_action() {
    same_action("case3", examples::case3(ORDER).unwrap());
}

#[test]
fn su2_action() {
    same_action("su2", examples::su2(ORDER).unwrap());
}

#[test]
fn su2_ideal_element() {
    let w = ws();
    let (phi, _, _) = w.action("su2").unwrap();
    let spec = &w.spec.actions["su2"];
    let alg = phi.algebra();
    let h = w.algebra_element("H", alg, &spec.elements).unwrap();
    assert_eq!(h.render(), examples::su2_h_normal(alg).unwrap().render());
    let stated = w.algebra_element("H_stated", alg, &spec.elements).unwrap();
    assert_eq!(stated.render(), examples::su2_h_stated(alg).unwrap().render());
}

fn same_bivector(a: &Bivector, b: &Bivector) {
    assert_eq!(a.chart().names, b.chart().names);
    assert_eq!(a.render(), b.render());
}

fn same_setup(a: &ReductionSetup, b: &ReductionSetup) {
    same_bivector(&a.pi, &b.pi);
    let mut fa: Vec<(String, String)> = a.fields.iter().map(|(n, x)| (n.clone(), x.render())).collect();
    let mut fb: Vec<(String, String)> = b.fields.iter().map(|(n, x)| (n.clone(), x.render())).collect();
    fa.sort();
    fb.sort();
    assert_eq!(fa, fb);
    let s = |v: &[poisson_forge_core::exact::CoordPoly]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
    assert_eq!(s(&a.momentum), s(&b.momentum));
    assert_eq!(s(&a.ideal), s(&b.ideal));
}

#[test]
fn reduction_setups() {
    let w = ws();
    same_setup(&w.reduction("case3-spectator").unwrap(), &red::dual_group_case3_with(true));
    same_setup(&w.reduction("translation").unwrap(), &red::translation(2));
    same_setup(&w.reduction("angular-momentum").unwrap(), &red::angular_momentum(1));
}

fn m(rows: &[&[(i64, i64)]]) -> Vec<Vec<GaussRational>> {
    let q = |(re, im): (i64, i64)| &GaussRational::int(re) + &(&GaussRational::int(im) * &GaussRational::i());
    rows.iter().map(|r| r.iter().map(|x| q(*x)).collect()).collect()
}

fn half(x: Vec<Vec<GaussRational>>) -> Vec<Vec<GaussRational>> {
    let h = GaussRational::frac(1, 2);
    x.into_iter().map(|r| r.into_iter().map(|v| &v * &h).collect()).collect()
}

fn same_group(a: &MatrixGroupModel, b: &MatrixGroupModel, r: &str) {
    assert_eq!(a.n, b.n);
    assert_eq!(a.chart.names, b.chart.names);
    assert_eq!(a.entries, b.entries);
    assert_eq!(a.basis, b.basis);
    assert_eq!(a.algebra.constants(), b.algebra.constants());
    assert_eq!(a.constraint_pair().map(|(v, p)| (v, p.to_string())), b.constraint_pair().map(|(v, p)| (v, p.to_string())));
    let (_, rm) = ws().r_matrix(r).unwrap();
    same_bivector(&pl_group_bivector(a, &rm).unwrap(), &pl_group_bivector(b, &rm).unwrap());
}

#[test]
fn matrix_groups() {
    let w = ws();
    let sl2 = LieAlgebra::new(
        &["H", "X", "Y"],
        &[(0, 1, &[(1, GaussRational::int(2))]), (0, 2, &[(2, GaussRational::int(-2))]), (1, 2, &[(0, GaussRational::int(1))])],
    )
    .unwrap();
    let basis = vec![
        m(&[&[(1, 0), (0, 0)], &[(0, 0), (-1, 0)]]),
        m(&[&[(0, 0), (1, 0)], &[(0, 0), (0, 0)]]),
        m(&[&[(0, 0), (0, 0)], &[(1, 0), (0, 0)]]),
    ];
    let built = MatrixGroupModel::full("SL2", &["a", "b", "c", "d"], &["a"], sl2, basis).unwrap().with_unit_determinant("d").unwrap();
    same_group(&w.group("SL2").unwrap(), &built, "sl2-quasitriangular");

    let one = GaussRational::int(1);
    let su2 =
        LieAlgebra::new(&["e1", "e2", "e3"], &[(0, 1, &[(2, one.clone())]), (1, 2, &[(0, one.clone())]), (2, 0, &[(1, one)])]).unwrap();
    let basis = vec![
        half(m(&[&[(0, 1), (0, 0)], &[(0, 0), (0, -1)]])),
        half(m(&[&[(0, 0), (1, 0)], &[(-1, 0), (0, 0)]])),
        half(m(&[&[(0, 0), (0, 1)], &[(0, 1), (0, 0)]])),
    ];
    let built = MatrixGroupModel::full("SU2", &["a", "b", "c", "d"], &["a"], su2, basis).unwrap();
    same_group(&w.group("SU2").unwrap(), &built, "su2");
}
