//! Polynomial vector fields, bivectors and differential forms on a chart.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::ops::{Add, Neg, Sub};

use crate::exact::{Chart, CoordPoly, GaussRational};

#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    chart: Arc<Chart>,
    comps: Vec<CoordPoly>,
}

impl VectorField {
    pub fn zero(chart: &Arc<Chart>) -> Self {
        VectorField { chart: chart.clone(), comps: (0..chart.dim()).map(|_| CoordPoly::zero(chart)).collect() }
    }

    pub fn new(chart: &Arc<Chart>, comps: Vec<CoordPoly>) -> Self {
        assert_eq!(comps.len(), chart.dim());
        VectorField { chart: chart.clone(), comps }
    }

    /// Field with a single component c·∂_var.
    pub fn coordinate(chart: &Arc<Chart>, var: usize, c: CoordPoly) -> Self {
        let mut v = Self::zero(chart);
        v.comps[var] = c;
        v
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn comp(&self, i: usize) -> &CoordPoly {
        &self.comps[i]
    }

    pub fn comps(&self) -> &[CoordPoly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn apply(&self, f: &CoordPoly) -> CoordPoly {
        let mut out = CoordPoly::zero(&self.chart);
        for (i, c) in self.comps.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(c * &f.diff(i));
            }
        }
        out
    }

    pub fn bracket(&self, other: &VectorField) -> VectorField {
        let comps = (0..self.chart.dim()).map(|i| &self.apply(&other.comps[i]) - &other.apply(&self.comps[i])).collect();
        VectorField { chart: self.chart.clone(), comps }
    }

    pub fn mul_poly(&self, f: &CoordPoly) -> VectorField {
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().map(|c| c * f).collect() }
    }

    pub fn scale(&self, c: &GaussRational) -> VectorField {
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().map(|x| x.scale(c)).collect() }
    }

    /// X∧Y with components X^iY^j − X^jY^i.
    pub fn wedge(&self, other: &VectorField) -> Bivector {
        let n = self.chart.dim();
        let mut b = Bivector::zero(&self.chart);
        for i in 0..n {
            for j in i + 1..n {
                let c = &(&self.comps[i] * &other.comps[j]) - &(&self.comps[j] * &other.comps[i]);
                b.set(i, j, c);
            }
        }
        b
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> =
            self.comps.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| format!("({c})∂_{}", self.chart.names[i])).collect();
        if parts.is_empty() {
            String::from("0")
        } else {
            parts.join(" + ")
        }
    }
}

impl<'a> Add<&'a VectorField> for &'a VectorField {
    type Output = VectorField;
    fn add(self, o: &VectorField) -> VectorField {
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a VectorField> for &'a VectorField {
    type Output = VectorField;
    fn sub(self, o: &VectorField) -> VectorField {
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        self.scale(&GaussRational::from(-1))
    }
}

/// Antisymmetric bivector; components stored for i < j.
#[derive(Clone, Debug, PartialEq)]
pub struct Bivector {
    chart: Arc<Chart>,
    comps: BTreeMap<(usize, usize), CoordPoly>,
}

impl Bivector {
    pub fn zero(chart: &Arc<Chart>) -> Self {
        Bivector { chart: chart.clone(), comps: BTreeMap::new() }
    }

    /// From entries π^{ij} for i ≠ j given in either order.
    pub fn from_entries(chart: &Arc<Chart>, entries: &[(usize, usize, CoordPoly)]) -> Self {
        let mut b = Self::zero(chart);
        for (i, j, c) in entries {
            let cur = b.get(*i, *j);
            b.set(*i, *j, &cur + c);
        }
        b
    }

    /// Sets π^{ij} (and implicitly π^{ji} = −π^{ij}).
    pub fn set(&mut self, i: usize, j: usize, c: CoordPoly) {
        assert_ne!(i, j, "diagonal bivector entry");
        let (key, val) = if i < j { ((i, j), c) } else { ((j, i), -&c) };
        if val.is_zero() {
            self.comps.remove(&key);
        } else {
            self.comps.insert(key, val);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> CoordPoly {
        if i == j {
            return CoordPoly::zero(&self.chart);
        }
        if i < j {
            self.comps.get(&(i, j)).cloned().unwrap_or_else(|| CoordPoly::zero(&self.chart))
        } else {
            self.comps.get(&(j, i)).map(|c| -c).unwrap_or_else(|| CoordPoly::zero(&self.chart))
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&(usize, usize), &CoordPoly)> {
        self.comps.iter()
    }

    pub fn scale(&self, c: &GaussRational) -> Bivector {
        let mut b = Self::zero(&self.chart);
        for ((i, j), v) in &self.comps {
            b.set(*i, *j, v.scale(c));
        }
        b
    }

    /// π♯α with (π♯α)^j = Σ_i α_i π^{ij}.
    pub fn sharp(&self, alpha: &PolyForm) -> VectorField {
        assert_eq!(alpha.degree(), 1);
        let n = self.dim();
        let mut comps: Vec<CoordPoly> = (0..n).map(|_| CoordPoly::zero(&self.chart)).collect();
        for ((i, j), p) in &self.comps {
            let ai = alpha.one_comp(*i);
            let aj = alpha.one_comp(*j);
            if !ai.is_zero() {
                comps[*j] = &comps[*j] + &(&ai * p);
            }
            if !aj.is_zero() {
                comps[*i] = &comps[*i] - &(&aj * p);
            }
        }
        VectorField::new(&self.chart, comps)
    }

    /// π(α,β) = Σ π^{ij} α_i β_j.
    pub fn pair(&self, alpha: &PolyForm, beta: &PolyForm) -> CoordPoly {
        let mut out = CoordPoly::zero(&self.chart);
        for ((i, j), p) in &self.comps {
            let t = &(&alpha.one_comp(*i) * &beta.one_comp(*j)) - &(&alpha.one_comp(*j) * &beta.one_comp(*i));
            if !t.is_zero() {
                out = &out + &(p * &t);
            }
        }
        out
    }

    /// (L_Xπ)^{ab} = X(π^{ab}) − π^{cb}∂_cX^a − π^{ac}∂_cX^b.
    pub fn lie_derivative(&self, x: &VectorField) -> Bivector {
        let n = self.dim();
        let mut out = Self::zero(&self.chart);
        for a in 0..n {
            for b in a + 1..n {
                let mut v = x.apply(&self.get(a, b));
                for c in 0..n {
                    let dxa = x.comp(a).diff(c);
                    if !dxa.is_zero() {
                        v = &v - &(&self.get(c, b) * &dxa);
                    }
                    let dxb = x.comp(b).diff(c);
                    if !dxb.is_zero() {
                        v = &v - &(&self.get(a, c) * &dxb);
                    }
                }
                out.set(a, b, v);
            }
        }
        out
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> =
            self.comps.iter().map(|((i, j), c)| format!("({c})∂_{}∧∂_{}", self.chart.names[*i], self.chart.names[*j])).collect();
        if parts.is_empty() {
            String::from("0")
        } else {
            parts.join(" + ")
        }
    }
}

impl<'a> Add<&'a Bivector> for &'a Bivector {
    type Output = Bivector;
    fn add(self, o: &Bivector) -> Bivector {
        let mut b = self.clone();
        for ((i, j), v) in &o.comps {
            let cur = b.get(*i, *j);
            b.set(*i, *j, &cur + v);
        }
        b
    }
}

impl<'a> Sub<&'a Bivector> for &'a Bivector {
    type Output = Bivector;
    fn sub(self, o: &Bivector) -> Bivector {
        self + &o.scale(&GaussRational::from(-1))
    }
}

/// Differential k-form; components indexed by strictly increasing index lists,
/// with dx^i∧dx^j = dx^i⊗dx^j − dx^j⊗dx^i.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyForm {
    chart: Arc<Chart>,
    degree: usize,
    comps: BTreeMap<Vec<usize>, CoordPoly>,
}

pub type PolyOneForm = PolyForm;
pub type PolyTwoForm = PolyForm;

/// Sign of the permutation sorting `idx`, or `None` on a repeated index.
fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

impl PolyForm {
    pub fn zero(chart: &Arc<Chart>, degree: usize) -> Self {
        PolyForm { chart: chart.clone(), degree, comps: BTreeMap::new() }
    }

    pub fn one_form(chart: &Arc<Chart>, comps: Vec<CoordPoly>) -> Self {
        let mut f = Self::zero(chart, 1);
        for (i, c) in comps.into_iter().enumerate() {
            f.add_comp(&[i], c);
        }
        f
    }

    /// c·dx^var.
    pub fn basic(chart: &Arc<Chart>, var: usize, c: CoordPoly) -> Self {
        let mut f = Self::zero(chart, 1);
        f.add_comp(&[var], c);
        f
    }

    /// df.
    pub fn exact(f: &CoordPoly) -> Self {
        let chart = f.chart().clone();
        Self::one_form(&chart, (0..chart.dim()).map(|i| f.diff(i)).collect())
    }

    /// Adds c·dx^{idx[0]}∧…; idx need not be sorted.
    pub fn add_comp(&mut self, idx: &[usize], c: CoordPoly) {
        assert_eq!(idx.len(), self.degree);
        if c.is_zero() {
            return;
        }
        let Some((key, sign)) = sort_sign(idx) else { return };
        let c = if sign < 0 { -&c } else { c };
        let cur = self.comps.remove(&key).unwrap_or_else(|| CoordPoly::zero(&self.chart));
        let v = &cur + &c;
        if !v.is_zero() {
            self.comps.insert(key, v);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn comps(&self) -> &BTreeMap<Vec<usize>, CoordPoly> {
        &self.comps
    }

    pub fn comp(&self, idx: &[usize]) -> CoordPoly {
        match sort_sign(idx) {
            None => CoordPoly::zero(&self.chart),
            Some((key, sign)) => {
                let c = self.comps.get(&key).cloned().unwrap_or_else(|| CoordPoly::zero(&self.chart));
                if sign < 0 {
                    -&c
                } else {
                    c
                }
            }
        }
    }

    pub fn one_comp(&self, i: usize) -> CoordPoly {
        self.comps.get(&alloc::vec![i]).cloned().unwrap_or_else(|| CoordPoly::zero(&self.chart))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn d(&self) -> PolyForm {
        let n = self.chart.dim();
        let mut out = Self::zero(&self.chart, self.degree + 1);
        for (idx, c) in &self.comps {
            for v in 0..n {
                let dc = c.diff(v);
                if dc.is_zero() {
                    continue;
                }
                let mut full = alloc::vec![v];
                full.extend_from_slice(idx);
                out.add_comp(&full, dc);
            }
        }
        out
    }

    pub fn wedge(&self, other: &PolyForm) -> PolyForm {
        let mut out = Self::zero(&self.chart, self.degree + other.degree);
        for (i, a) in &self.comps {
            for (j, b) in &other.comps {
                let mut full = i.clone();
                full.extend_from_slice(j);
                out.add_comp(&full, a * b);
            }
        }
        out
    }

    pub fn mul_poly(&self, f: &CoordPoly) -> PolyForm {
        let mut out = Self::zero(&self.chart, self.degree);
        for (i, a) in &self.comps {
            out.add_comp(i, a * f);
        }
        out
    }

    pub fn scale(&self, c: &GaussRational) -> PolyForm {
        let mut out = Self::zero(&self.chart, self.degree);
        for (i, a) in &self.comps {
            out.add_comp(i, a.scale(c));
        }
        out
    }

    /// Value on a vector field (degree 1 only).
    pub fn contract(&self, x: &VectorField) -> CoordPoly {
        assert_eq!(self.degree, 1);
        let mut out = CoordPoly::zero(&self.chart);
        for (i, a) in &self.comps {
            out = &out + &(a * x.comp(i[0]));
        }
        out
    }

    /// Lie derivative of a one-form: (L_Xβ)_j = X(β_j) + β_i ∂_j X^i.
    pub fn lie_derivative(&self, x: &VectorField) -> PolyForm {
        assert_eq!(self.degree, 1);
        let n = self.chart.dim();
        let mut out = Self::zero(&self.chart, 1);
        for j in 0..n {
            let mut v = x.apply(&self.one_comp(j));
            for (i, b) in &self.comps {
                let dx = x.comp(i[0]).diff(j);
                if !dx.is_zero() {
                    v = &v + &(b * &dx);
                }
            }
            out.add_comp(&[j], v);
        }
        out
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(idx, c)| {
                let ds: Vec<String> = idx.iter().map(|i| format!("d{}", self.chart.names[*i])).collect();
                format!("({c}){}", ds.join("∧"))
            })
            .collect();
        if parts.is_empty() {
            String::from("0")
        } else {
            parts.join(" + ")
        }
    }
}

impl<'a> Add<&'a PolyForm> for &'a PolyForm {
    type Output = PolyForm;
    fn add(self, o: &PolyForm) -> PolyForm {
        assert_eq!(self.degree, o.degree);
        let mut out = self.clone();
        for (i, a) in &o.comps {
            out.add_comp(i, a.clone());
        }
        out
    }
}

impl<'a> Sub<&'a PolyForm> for &'a PolyForm {
    type Output = PolyForm;
    fn sub(self, o: &PolyForm) -> PolyForm {
        assert_eq!(self.degree, o.degree);
        let mut out = self.clone();
        for (i, a) in &o.comps {
            out.add_comp(i, -a);
        }
        out
    }
}

impl Neg for &PolyForm {
    type Output = PolyForm;
    fn neg(self) -> PolyForm {
        self.scale(&GaussRational::from(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly(ch: Arc<Chart>) -> impl Strategy<Value = CoordPoly> {
        proptest::collection::vec(((0i32..3, 0i32..3, -1i32..3), -4i64..5), 0..5).prop_map(move |ts| {
            let mut p = CoordPoly::zero(&ch);
            for ((i, j, k), c) in ts {
                p.add_term(alloc::vec![i, j, k], GaussRational::int(c));
            }
            p
        })
    }

    fn chart() -> Arc<Chart> {
        Chart::new(&["x", "y", "z"], &["z"])
    }

    #[test]
    fn d_of_one_form_matches_curl() {
        let ch = chart();
        let (x, y) = (ch.var("x"), ch.var("y"));
        // d(x dy) = dx∧dy
        let a = PolyForm::basic(&ch, 1, x.clone());
        let da = a.d();
        assert_eq!(da.comp(&[0, 1]), CoordPoly::one(&ch));
        assert_eq!(da.comp(&[1, 0]), -&CoordPoly::one(&ch));
        // (dx∧dy)(∂x,∂y) convention: wedge of basic forms
        let w = PolyForm::basic(&ch, 0, CoordPoly::one(&ch)).wedge(&PolyForm::basic(&ch, 1, CoordPoly::one(&ch)));
        assert_eq!(w, da);
        let _ = y;
    }

    #[test]
    fn sharp_and_pair_agree() {
        let ch = Chart::new(&["a", "b"], &["a"]);
        let (a, b) = (ch.var("a"), ch.var("b"));
        let pi = Bivector::from_entries(&ch, &[(0, 1, &a * &b)]);
        let da = PolyForm::exact(&a);
        let db = PolyForm::exact(&b);
        assert_eq!(pi.sharp(&da), VectorField::coordinate(&ch, 1, &a * &b));
        assert_eq!(pi.pair(&da, &db), &a * &b);
        assert_eq!(db.contract(&pi.sharp(&da)), pi.pair(&da, &db));
    }

    proptest! {
        #[test]
        fn d_squared_vanishes_on_one_forms(p in arb_poly(chart()), q in arb_poly(chart()), r in arb_poly(chart())) {
            let ch = chart();
            let a = PolyForm::one_form(&ch, alloc::vec![p, q, r]);
            prop_assert!(a.d().d().is_zero());
        }

        #[test]
        fn d_squared_vanishes_on_functions(p in arb_poly(chart())) {
            prop_assert!(PolyForm::exact(&p).d().is_zero());
        }

        #[test]
        fn d_is_graded_leibniz(p in arb_poly(chart()), q in arb_poly(chart()), f in arb_poly(chart())) {
            let ch = chart();
            let a = PolyForm::basic(&ch, 0, p);
            let b = PolyForm::basic(&ch, 2, q).mul_poly(&f);
            let lhs = a.wedge(&b).d();
            let rhs = &a.d().wedge(&b) - &a.wedge(&b.d());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn cartan_formula_on_one_forms(p in arb_poly(chart()), q in arb_poly(chart()), f in arb_poly(chart())) {
            // L_X α = i_X dα + d(i_X α)
            let ch = chart();
            let x = VectorField::new(&ch, alloc::vec![p.clone(), q.clone(), f.clone()]);
            let a = PolyForm::one_form(&ch, alloc::vec![q, f, p]);
            let da = a.d();
            let mut ix_da = PolyForm::zero(&ch, 1);
            for j in 0..3 {
                let mut v = CoordPoly::zero(&ch);
                for i in 0..3 {
                    v = &v + &(x.comp(i) * &da.comp(&[i, j]));
                }
                ix_da.add_comp(&[j], v);
            }
            let rhs = &ix_da + &PolyForm::exact(&a.contract(&x));
            prop_assert_eq!(a.lie_derivative(&x), rhs);
        }
    }
}
