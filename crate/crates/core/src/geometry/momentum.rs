//! Poisson actions and momentum-map identities.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use super::forms::{Bivector, PolyForm, VectorField};
use super::group::{field_homomorphism, structure_equations};
use super::poisson::{hamiltonian_field, koszul_bracket, poisson_bracket};
use crate::exact::{CoordPoly, GaussRational};
use crate::lie::{Cobracket, LieAlgebra};
use crate::report::Check;

/// (δξ)_M = Σ_{j<k} d^ξ_{jk} ξ_j,M ∧ ξ_k,M.
pub fn cobracket_field(fields: &[VectorField], d: &Cobracket, i: usize) -> Bivector {
    let mut out = Bivector::zero(fields[0].chart());
    for j in 0..fields.len() {
        for k in j + 1..fields.len() {
            let c = d.d(i, j, k);
            if !c.is_zero() {
                out = &out + &fields[j].wedge(&fields[k]).scale(c);
            }
        }
    }
    out
}

/// L_{ξ_M} π = −(δξ)_M for every basis element, after the homomorphism check.
pub fn check_poisson_action(pi: &Bivector, g: &LieAlgebra, fields: &[VectorField], d: &Cobracket) -> Check {
    let mut chk = Check::new("Poisson action");
    chk.absorb(&field_homomorphism(fields, g));
    let mut inner = Check::new("L_ξ π = −δ(ξ)_M");
    for (i, f) in fields.iter().enumerate() {
        let defect = &pi.lie_derivative(f) + &cobracket_field(fields, d, i);
        if !defect.is_zero() {
            inner.fail(g.names()[i].clone(), defect.render());
        }
    }
    chk.absorb(&inner);
    chk
}

#[derive(Clone, Debug)]
pub struct InfinitesimalMm {
    /// α_{[ξ,η]} = [α_ξ, α_η]_π.
    pub bracket: Check,
    /// dα_ξ + ½ α∧α∘δ(ξ) = 0.
    pub mca: Check,
    /// dα_ξ = α∧α∘δ(ξ).
    pub rec: Check,
}

impl InfinitesimalMm {
    /// Bracket and the ½-normalized structure equation.
    pub fn pass(&self) -> bool {
        self.bracket.pass && self.mca.pass
    }
}

pub fn check_infinitesimal_mm(pi: &Bivector, g: &LieAlgebra, d: &Cobracket, alpha: &[PolyForm]) -> InfinitesimalMm {
    let mut bracket = Check::new("α_[ξ,η] = [α_ξ,α_η]_π");
    for i in 0..alpha.len() {
        for j in i + 1..alpha.len() {
            let lhs = koszul_bracket(pi, &alpha[i], &alpha[j]);
            let mut rhs = PolyForm::zero(pi.chart(), 1);
            for (k, a) in alpha.iter().enumerate() {
                let c = g.c(i, j, k);
                if !c.is_zero() {
                    rhs = &rhs + &a.scale(c);
                }
            }
            if lhs != rhs {
                bracket.fail(format!("({},{})", g.names()[i], g.names()[j]), (&lhs - &rhs).render());
            }
        }
    }
    let (mca, rec) = structure_equations(alpha, d, g.names());
    InfinitesimalMm { bracket, mca, rec }
}

#[derive(Clone, Debug)]
pub struct ClassicalMm {
    /// ξ_M = X_{H_ξ} for every basis element.
    pub fields: Check,
    /// c(ξ_i, ξ_j) = {H_i, H_j} − H_{[ξ_i,ξ_j]} for i < j.
    pub cocycle: Vec<(usize, usize, CoordPoly)>,
    pub cocycle_constant: bool,
    pub cocycle_zero: bool,
}

impl ClassicalMm {
    pub fn pass(&self) -> bool {
        self.fields.pass && self.cocycle_constant
    }
}

pub fn classical_mm_check(pi: &Bivector, g: &LieAlgebra, h: &[CoordPoly], action: &[VectorField]) -> ClassicalMm {
    let mut fields = Check::new("ξ_M = X_{H_ξ}");
    for (i, (hi, xi)) in h.iter().zip(action).enumerate() {
        let x = hamiltonian_field(pi, hi);
        if &x != xi {
            fields.fail(g.names()[i].clone(), (&x - xi).render());
        }
    }
    let mut cocycle = Vec::new();
    let mut constant = true;
    let mut zero = true;
    for i in 0..h.len() {
        for j in i + 1..h.len() {
            let mut c = poisson_bracket(pi, &h[i], &h[j]);
            for (k, hk) in h.iter().enumerate() {
                let s = g.c(i, j, k);
                if !s.is_zero() {
                    c = &c - &hk.scale(s);
                }
            }
            constant &= c.as_constant().is_some();
            zero &= c.is_zero();
            cocycle.push((i, j, c));
        }
    }
    ClassicalMm { fields, cocycle, cocycle_constant: constant, cocycle_zero: zero }
}

#[derive(Clone, Debug)]
pub struct HeisenbergObstruction {
    /// π(α_ξ, α_η) when it is constant.
    pub c: Option<GaussRational>,
    pub pairing: CoordPoly,
    /// dα_ζ = α_ξ∧α_η.
    pub structure: Check,
}

impl HeisenbergObstruction {
    pub fn pass(&self) -> bool {
        self.c.is_some() && self.structure.pass
    }

    /// A momentum map can only exist when the constant vanishes.
    pub fn obstructed(&self) -> bool {
        !matches!(&self.c, Some(c) if c.is_zero())
    }
}

/// `alpha` is indexed by ξ, η, ζ.
pub fn heisenberg_obstruction(pi: &Bivector, alpha: &[PolyForm; 3]) -> HeisenbergObstruction {
    let pairing = pi.pair(&alpha[0], &alpha[1]);
    let mut structure = Check::new("dα_ζ = α_ξ∧α_η");
    let defect = &alpha[2].d() - &alpha[0].wedge(&alpha[1]);
    if !defect.is_zero() {
        structure.fail("ζ", defect.render());
    }
    HeisenbergObstruction { c: pairing.as_constant(), pairing, structure }
}

#[derive(Clone, Debug)]
pub struct DeformationIdentities {
    /// L_ξ X(η) − L_η X(ξ) = X([ξ,η]).
    pub first: Check,
    /// {X(ξ), ·} = −L_{ad*_X ξ}.
    pub second: Check,
}

/// `x[i]` is X(ξ_i); ad*_X ξ_i = −Σ_{j,k} X_j d^i_{jk} ξ_k, the coadjoint action of the dual bracket.
pub fn deformation_identities(
    pi: &Bivector,
    g: &LieAlgebra,
    action: &[VectorField],
    d: &Cobracket,
    x: &[CoordPoly],
) -> DeformationIdentities {
    let mut first = Check::new("L_ξ X(η) − L_η X(ξ) = X([ξ,η])");
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let lhs = &action[i].apply(&x[j]) - &action[j].apply(&x[i]);
            let mut rhs = CoordPoly::zero(pi.chart());
            for (k, xk) in x.iter().enumerate() {
                let c = g.c(i, j, k);
                if !c.is_zero() {
                    rhs = &rhs + &xk.scale(c);
                }
            }
            if lhs != rhs {
                first.fail(format!("({},{})", g.names()[i], g.names()[j]), format!("{}", &lhs - &rhs));
            }
        }
    }
    let mut second = Check::new("{X(ξ),·} = −L_{ad*_X ξ}");
    for i in 0..x.len() {
        let lhs = hamiltonian_field(pi, &x[i]);
        let mut rhs = VectorField::zero(pi.chart());
        for j in 0..x.len() {
            for (k, f) in action.iter().enumerate() {
                let c = d.d(i, j, k);
                if !c.is_zero() {
                    rhs = &rhs + &f.mul_poly(&x[j].scale(c));
                }
            }
        }
        if lhs != rhs {
            second.fail(g.names()[i].clone(), (&lhs - &rhs).render());
        }
    }
    DeformationIdentities { first, second }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Chart;
    use crate::geometry::group::{dressing_fields, maurer_cartan_forms, Entry, MatrixGroupModel};
    use crate::lie::Tensor;
    use alloc::sync::Arc;
    use num_traits::One;

    fn one() -> GaussRational {
        GaussRational::one()
    }

    fn canonical(n: usize) -> (Arc<Chart>, Bivector) {
        let names: Vec<alloc::string::String> = (1..=n).map(|i| format!("q{i}")).chain((1..=n).map(|i| format!("p{i}"))).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let ch = Chart::new(&refs, &[]);
        let mut pi = Bivector::zero(&ch);
        for i in 0..n {
            pi.set(i, n + i, CoordPoly::one(&ch));
        }
        (ch, pi)
    }

    fn so3() -> LieAlgebra {
        LieAlgebra::new(&["e1", "e2", "e3"], &[(0, 1, &[(2, one())]), (1, 2, &[(0, one())]), (2, 0, &[(1, one())])]).unwrap()
    }

    /// (e × v)_j for e the i-th unit vector.
    fn cross_unit(i: usize, v: &[CoordPoly]) -> Vec<CoordPoly> {
        let ch = v[0].chart().clone();
        let mut out = alloc::vec![CoordPoly::zero(&ch); 3];
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        out[k] = v[j].clone();
        out[j] = -&v[k];
        out
    }

    fn angular() -> (Bivector, Vec<CoordPoly>, Vec<VectorField>) {
        let (ch, pi) = canonical(3);
        let qv: Vec<CoordPoly> = (0..3).map(|i| CoordPoly::var(&ch, i)).collect();
        let pv: Vec<CoordPoly> = (0..3).map(|i| CoordPoly::var(&ch, 3 + i)).collect();
        let h: Vec<CoordPoly> = (0..3)
            .map(|i| {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                &(&qv[j] * &pv[k]) - &(&qv[k] * &pv[j])
            })
            .collect();
        // generator of exp(−tξ): −e×q ∂_q − e×p ∂_p
        let fields: Vec<VectorField> = (0..3)
            .map(|i| {
                let a = cross_unit(i, &qv);
                let b = cross_unit(i, &pv);
                VectorField::new(&ch, a.iter().chain(&b).map(|c| -c).collect())
            })
            .collect();
        (pi, h, fields)
    }

    #[test]
    fn angular_momentum() {
        let (pi, h, fields) = angular();
        let r = classical_mm_check(&pi, &so3(), &h, &fields);
        assert!(r.fields.pass, "{:?}", r.fields);
        assert!(r.cocycle_zero && r.pass());
        assert!(field_homomorphism(&fields, &so3()).pass);
        assert!(check_poisson_action(&pi, &so3(), &fields, &Cobracket::zero(3)).pass);
    }

    #[test]
    fn shifted_hamiltonians_give_constant_cocycle() {
        let (pi, h, fields) = angular();
        let ch = pi.chart().clone();
        let h2: Vec<CoordPoly> = h.iter().enumerate().map(|(i, x)| x + &CoordPoly::int(&ch, i as i64 + 1)).collect();
        let r = classical_mm_check(&pi, &so3(), &h2, &fields);
        assert!(r.fields.pass && r.cocycle_constant && !r.cocycle_zero);
        // c(e1,e2) = −H-shift of e3 = −3
        assert_eq!(r.cocycle[0].2, CoordPoly::int(&ch, -3));
    }

    #[test]
    fn linear_momentum() {
        let (ch, pi) = canonical(3);
        let h: Vec<CoordPoly> = (0..3).map(|i| CoordPoly::var(&ch, 3 + i)).collect();
        let fields: Vec<VectorField> = (0..3).map(|i| VectorField::coordinate(&ch, i, CoordPoly::int(&ch, -1))).collect();
        let r = classical_mm_check(&pi, &LieAlgebra::abelian(&["t1", "t2", "t3"]), &h, &fields);
        assert!(r.pass() && r.cocycle_zero);
        let wrong: Vec<VectorField> = (0..3).map(|i| VectorField::coordinate(&ch, i, CoordPoly::int(&ch, 1))).collect();
        assert!(!classical_mm_check(&pi, &LieAlgebra::abelian(&["t1", "t2", "t3"]), &h, &wrong).fields.pass);
    }

    fn affine_dual() -> (MatrixGroupModel, Bivector, LieAlgebra, Cobracket) {
        let ch = Chart::new(&["a", "b"], &["a"]);
        let l = LieAlgebra::new(&["xi", "eta"], &[(0, 1, &[(1, one())])]).unwrap();
        let entries =
            alloc::vec![alloc::vec![Entry::Var(0), Entry::Var(1)], alloc::vec![Entry::Const(GaussRational::zero()), Entry::Const(one())]];
        let e = |p: usize, q: usize| {
            let mut m = alloc::vec![alloc::vec![GaussRational::zero(); 2]; 2];
            m[p][q] = one();
            m
        };
        let model = MatrixGroupModel::new("G*", ch.clone(), entries, l.clone(), alloc::vec![e(0, 0), e(0, 1)]).unwrap();
        let pi = Bivector::from_entries(&ch, &[(0, 1, &ch.var("a") * &ch.var("b"))]);
        let d = Cobracket::from_images(&[Tensor::zero(2, 2), Tensor::wedge(2, 0, 1)]).unwrap();
        (model, pi, l, d)
    }

    #[test]
    fn identity_momentum_map_on_dual_group() {
        let (model, pi, g, d) = affine_dual();
        let mc = maurer_cartan_forms(&model, Some(&d)).unwrap();
        let r = check_infinitesimal_mm(&pi, &g, &d, &mc.forms);
        assert!(r.bracket.pass && r.mca.pass && r.pass());
        assert!(!r.rec.pass);
    }

    #[test]
    fn dressing_is_poisson_action() {
        let (model, pi, g, d) = affine_dual();
        let (l, _) = dressing_fields(&model, &pi, &g).unwrap();
        assert!(check_poisson_action(&pi, &g, &l, &d).pass);
    }

    #[test]
    fn stated_affine_action_assignments() {
        let (_, pi, g, d) = affine_dual();
        let ch = pi.chart().clone();
        let a = ch.var("a");
        let ainv = a.inv_monomial().unwrap();
        let f1 = hamiltonian_field(&pi, &ch.var("b")).mul_poly(&a);
        let f2 = hamiltonian_field(&pi, &ainv).mul_poly(&a);
        assert_eq!(f1, VectorField::coordinate(&ch, 0, -&(&(&a * &a) * &ch.var("b"))));
        assert_eq!(f2, VectorField::coordinate(&ch, 1, -&ch.var("b")));
        // [f1, f2] = f1, so neither ordering realizes [ξ,η] = η
        assert_eq!(f1.bracket(&f2), f1);
        assert!(!check_poisson_action(&pi, &g, &[f1.clone(), f2.clone()], &d).pass);
        assert!(!check_poisson_action(&pi, &g, &[f2, f1], &d).pass);
    }

    #[test]
    fn abelian_trivial_cases() {
        let (ch, pi) = canonical(1);
        let g = LieAlgebra::abelian(&["s", "t"]);
        let zero = [PolyForm::zero(&ch, 1), PolyForm::zero(&ch, 1)];
        assert!(check_infinitesimal_mm(&pi, &g, &Cobracket::zero(2), &zero).pass());
        let fields = [VectorField::zero(&ch), VectorField::zero(&ch)];
        assert!(check_poisson_action(&pi, &g, &fields, &Cobracket::zero(2)).pass);
        let consts = [CoordPoly::int(&ch, 3), CoordPoly::int(&ch, -2)];
        let di = deformation_identities(&pi, &g, &fields, &Cobracket::zero(2), &consts);
        assert!(di.first.pass && di.second.pass);
    }

    #[test]
    fn exact_forms_reduce_to_hamiltonian_brackets() {
        let (pi, h, _) = angular();
        let alpha: Vec<PolyForm> = h.iter().map(PolyForm::exact).collect();
        let r = check_infinitesimal_mm(&pi, &so3(), &Cobracket::zero(3), &alpha);
        assert!(r.pass());
    }

    #[test]
    fn heisenberg_fixtures() {
        let ch = Chart::new(&["x", "y"], &[]);
        let pi = Bivector::from_entries(&ch, &[(0, 1, CoordPoly::one(&ch))]);
        let (x, y) = (ch.var("x"), ch.var("y"));
        let alpha = [PolyForm::exact(&x), PolyForm::exact(&y), PolyForm::exact(&y).mul_poly(&x)];
        let r = heisenberg_obstruction(&pi, &alpha);
        assert_eq!(r.c, Some(one()));
        assert!(r.pass() && r.obstructed());

        let ch4 = Chart::new(&["x1", "x2", "x3", "x4"], &[]);
        let pi4 = Bivector::from_entries(&ch4, &[(0, 2, CoordPoly::one(&ch4)), (1, 3, CoordPoly::one(&ch4))]);
        let (x1, x2) = (ch4.var("x1"), ch4.var("x2"));
        let alpha4 = [PolyForm::exact(&x1), PolyForm::exact(&x2), PolyForm::exact(&x2).mul_poly(&x1)];
        let r4 = heisenberg_obstruction(&pi4, &alpha4);
        assert_eq!(r4.c, Some(GaussRational::zero()));
        assert!(r4.pass() && !r4.obstructed());

        let zero = [PolyForm::zero(&ch, 1), PolyForm::zero(&ch, 1), PolyForm::zero(&ch, 1)];
        let rz = heisenberg_obstruction(&pi, &zero);
        assert_eq!(rz.c, Some(GaussRational::zero()));

        let bad = [PolyForm::exact(&x).mul_poly(&x), PolyForm::exact(&y), PolyForm::zero(&ch, 1)];
        let rb = heisenberg_obstruction(&pi, &bad);
        assert!(rb.c.is_none() && !rb.pass());
    }

    #[test]
    fn deformation_from_potential() {
        let (model, pi, g, d) = affine_dual();
        let (l, _) = dressing_fields(&model, &pi, &g).unwrap();
        let ch = pi.chart().clone();
        let phi = &(&ch.var("a") * &ch.var("b").pow(2)) + &ch.var("b");
        let x: Vec<CoordPoly> = l.iter().map(|f| f.apply(&phi)).collect();
        let di = deformation_identities(&pi, &g, &l, &d, &x);
        assert!(di.first.pass);
        let zero = alloc::vec![CoordPoly::zero(&ch); 2];
        let dz = deformation_identities(&pi, &g, &l, &d, &zero);
        assert!(dz.first.pass && dz.second.pass);
    }
}
