//! Matrix groups on coordinate charts: Poisson-Lie bivectors from r-matrices,
//! multiplicativity, Maurer–Cartan forms and dressing fields.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::forms::{Bivector, PolyForm, VectorField};
use crate::exact::{Chart, CoordPoly, GaussRational};
use crate::lie::{Cobracket, LieAlgebra, RMatrix, Tensor};
use crate::linalg::{rref, solve, Matrix};
use crate::report::Check;
use crate::{Error, Result};

pub type PolyMatrix = Vec<Vec<CoordPoly>>;

#[derive(Clone, Debug, PartialEq)]
pub enum Entry {
    Var(usize),
    Const(GaussRational),
}

/// Elimination of one entry variable: `var = value` on the chart, `poly = 0` the relation.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub poly: CoordPoly,
    pub var: usize,
    pub value: CoordPoly,
}

#[derive(Clone, Debug)]
pub struct MatrixGroupModel {
    pub name: String,
    pub n: usize,
    pub chart: Arc<Chart>,
    pub entries: Vec<Vec<Entry>>,
    pub constraint: Option<Constraint>,
    pub algebra: LieAlgebra,
    pub basis: Vec<Matrix>,
}

fn mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let chart = a[0][0].chart().clone();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = CoordPoly::zero(&chart);
                    for k in 0..n {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            s = &s + &(&a[i][k] * &b[k][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn const_matrix(chart: &Arc<Chart>, m: &Matrix) -> PolyMatrix {
    m.iter().map(|row| row.iter().map(|c| CoordPoly::constant(chart, c.clone())).collect()).collect()
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = alloc::vec![alloc::vec![GaussRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[i][j] += &(&(&a[i][k] * &b[k][j]) - &(&b[i][k] * &a[k][j]));
            }
        }
    }
    out
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &PolyMatrix) -> CoordPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut out = CoordPoly::zero(m[0][0].chart());
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: PolyMatrix =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
        let t = &m[0][j] * &det(&minor);
        out = if j % 2 == 0 { &out + &t } else { &out - &t };
    }
    out
}

fn adjugate(m: &PolyMatrix) -> PolyMatrix {
    let n = m.len();
    let chart = m[0][0].chart().clone();
    if n == 1 {
        return alloc::vec![alloc::vec![CoordPoly::one(&chart)]];
    }
    let mut adj = alloc::vec![alloc::vec![CoordPoly::zero(&chart); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: PolyMatrix = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let d = det(&minor);
            adj[j][i] = if (i + j) % 2 == 0 { d } else { -&d };
        }
    }
    adj
}

impl MatrixGroupModel {
    /// Checks that the basis matrices close under the commutator with the algebra's constants.
    pub fn new(name: &str, chart: Arc<Chart>, entries: Vec<Vec<Entry>>, algebra: LieAlgebra, basis: Vec<Matrix>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) || basis.iter().any(|b| b.len() != n || b.iter().any(|r| r.len() != n)) {
            return Err(Error::Malformed(format!("{name}: matrices must be {n}×{n}")));
        }
        if basis.len() != algebra.dim() {
            return Err(Error::Malformed(format!("{name}: {} basis matrices for a {}-dimensional algebra", basis.len(), algebra.dim())));
        }
        for row in &entries {
            for e in row {
                if let Entry::Var(v) = e {
                    if *v >= chart.dim() {
                        return Err(Error::Malformed(format!("{name}: entry variable {v} outside chart")));
                    }
                }
            }
        }
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let lhs = commutator(&basis[i], &basis[j]);
                let mut rhs = alloc::vec![alloc::vec![GaussRational::zero(); n]; n];
                for (k, b) in basis.iter().enumerate() {
                    let c = algebra.c(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    for p in 0..n {
                        for q in 0..n {
                            rhs[p][q] += &(c * &b[p][q]);
                        }
                    }
                }
                if lhs != rhs {
                    return Err(Error::Malformed(format!(
                        "{name}: [{},{}] does not match the declared structure constants",
                        algebra.names()[i],
                        algebra.names()[j]
                    )));
                }
            }
        }
        Ok(MatrixGroupModel { name: name.into(), n, chart, entries, constraint: None, algebra, basis })
    }

    /// Every entry an independent variable, named row by row.
    pub fn full(name: &str, names: &[&str], invertible: &[&str], algebra: LieAlgebra, basis: Vec<Matrix>) -> Result<Self> {
        let n = (1..=names.len())
            .find(|k| k * k == names.len())
            .ok_or_else(|| Error::Malformed(format!("{name}: {} entry names", names.len())))?;
        let chart = Chart::new(names, invertible);
        let entries = (0..n).map(|p| (0..n).map(|q| Entry::Var(p * n + q)).collect()).collect();
        Self::new(name, chart, entries, algebra, basis)
    }

    /// Imposes det = 1 by solving for `var`; its cofactor must be an invertible monomial.
    pub fn with_unit_determinant(mut self, var: &str) -> Result<Self> {
        let v = self.chart.index(var).ok_or_else(|| Error::Malformed(format!("unknown entry {var}")))?;
        let d = det(&self.matrix());
        let cof = d.diff(v);
        let rest = d.substitute(v, &CoordPoly::zero(&self.chart))?;
        if d != &(&cof * &CoordPoly::var(&self.chart, v)) + &rest {
            return Err(Error::Malformed(format!("determinant is not linear in {var}")));
        }
        let value = &(&CoordPoly::one(&self.chart) - &rest) * &cof.inv_monomial()?;
        self.constraint = Some(Constraint { poly: &d - &CoordPoly::one(&self.chart), var: v, value });
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix(&self) -> PolyMatrix {
        self.matrix_on(&self.chart, 0)
    }

    /// The generic element with variable v sent to variable `offset + v` of `chart`.
    fn matrix_on(&self, chart: &Arc<Chart>, offset: usize) -> PolyMatrix {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        Entry::Var(v) => CoordPoly::var(chart, offset + v),
                        Entry::Const(c) => CoordPoly::constant(chart, c.clone()),
                    })
                    .collect()
            })
            .collect()
    }

    fn var_at(&self, p: usize, q: usize) -> Option<usize> {
        match self.entries[p][q] {
            Entry::Var(v) => Some(v),
            Entry::Const(_) => None,
        }
    }

    fn field_from_matrix(&self, m: &PolyMatrix) -> VectorField {
        let mut comps = alloc::vec![CoordPoly::zero(&self.chart); self.chart.dim()];
        for p in 0..self.n {
            for q in 0..self.n {
                if let Some(v) = self.var_at(p, q) {
                    comps[v] = &comps[v] + &m[p][q];
                }
            }
        }
        VectorField::new(&self.chart, comps)
    }

    /// X^L_k(g) = g·B_k.
    pub fn left_field(&self, k: usize) -> VectorField {
        self.field_from_matrix(&mat_mul(&self.matrix(), &const_matrix(&self.chart, &self.basis[k])))
    }

    /// X^R_k(g) = B_k·g.
    pub fn right_field(&self, k: usize) -> VectorField {
        self.field_from_matrix(&mat_mul(&const_matrix(&self.chart, &self.basis[k]), &self.matrix()))
    }

    /// Applies the determinant constraint, if any.
    pub fn reduce(&self, f: &CoordPoly) -> Result<CoordPoly> {
        match &self.constraint {
            Some(c) => f.substitute(c.var, &c.value),
            None => Ok(f.clone()),
        }
    }

    pub fn reduce_bivector(&self, pi: &Bivector) -> Result<Bivector> {
        let mut out = Bivector::zero(&self.chart);
        for (&(i, j), c) in pi.nonzero() {
            out.set(i, j, self.reduce(c)?);
        }
        Ok(out)
    }

    pub fn constraint_pair(&self) -> Option<(usize, &CoordPoly)> {
        self.constraint.as_ref().map(|c| (c.var, &c.value))
    }
}

/// Σ a^{ij} (L_i ∧ L_j) and/or −Σ a^{ij} (R_i ∧ R_j) for antisymmetric a, halved to undo the doubled sum.
fn translated(model: &MatrixGroupModel, a: &Tensor, left: bool, right: bool) -> Bivector {
    let m = model.dim();
    let lf: Vec<VectorField> = (0..m).map(|k| model.left_field(k)).collect();
    let rf: Vec<VectorField> = (0..m).map(|k| model.right_field(k)).collect();
    let mut out = Bivector::zero(&model.chart);
    for i in 0..m {
        for j in i + 1..m {
            let c = a.get(&[i, j]);
            if c.is_zero() {
                continue;
            }
            if left {
                out = &out + &lf[i].wedge(&lf[j]).scale(&c);
            }
            if right {
                out = &out - &rf[i].wedge(&rf[j]).scale(&c);
            }
        }
    }
    out
}

/// π_G(g) = λ_g a − ρ_g a for the antisymmetric part a of r.
pub fn pl_group_bivector(model: &MatrixGroupModel, r: &RMatrix) -> Result<Bivector> {
    if r.antisym.dim != model.dim() {
        return Err(Error::Malformed(format!("r lives on a {}-dimensional algebra, model has {}", r.antisym.dim, model.dim())));
    }
    Ok(translated(model, &r.antisym, true, true))
}

/// λ_g a alone: multiplicative only when a = 0.
pub fn left_invariant_bivector(model: &MatrixGroupModel, r: &RMatrix) -> Bivector {
    translated(model, &r.antisym, true, false)
}

/// π(gh) = λ_g π(h) + ρ_h π(g) on two disjoint copies of the entry variables.
pub fn check_multiplicative(model: &MatrixGroupModel, pi: &Bivector) -> Check {
    let mut chk = Check::new(format!("multiplicative ({})", model.name));
    let nv = model.chart.dim();
    let dbl = model.chart.doubled("_g", "_h");
    let g = model.matrix_on(&dbl, 0);
    let h = model.matrix_on(&dbl, nv);
    let gh = mat_mul(&g, &h);
    let n = model.n;
    let shift = |offset: usize| -> Vec<CoordPoly> { (0..nv).map(|v| CoordPoly::var(&dbl, offset + v)).collect() };
    let (at_g, at_h) = (shift(0), shift(nv));
    let mut at_gh = alloc::vec![CoordPoly::zero(&dbl); nv];
    for p in 0..n {
        for q in 0..n {
            if let Some(v) = model.var_at(p, q) {
                at_gh[v] = gh[p][q].clone();
            }
        }
    }
    // π between entry positions, evaluated at the given point
    let entry = |images: &[CoordPoly], p: usize, q: usize, r: usize, s: usize| -> Result<CoordPoly> {
        match (model.var_at(p, q), model.var_at(r, s)) {
            (Some(u), Some(v)) => pi.get(u, v).substitute_all(images, &dbl),
            _ => Ok(CoordPoly::zero(&dbl)),
        }
    };
    let run = || -> Result<Option<(String, CoordPoly)>> {
        for p in 0..n {
            for q in 0..n {
                let Some(u) = model.var_at(p, q) else { continue };
                for r in 0..n {
                    for s in 0..n {
                        let Some(v) = model.var_at(r, s) else { continue };
                        if u >= v {
                            continue;
                        }
                        let lhs = entry(&at_gh, p, q, r, s)?;
                        let mut rhs = CoordPoly::zero(&dbl);
                        for a in 0..n {
                            for b in 0..n {
                                if !g[p][a].is_zero() && !g[r][b].is_zero() {
                                    let t = entry(&at_h, a, q, b, s)?;
                                    if !t.is_zero() {
                                        rhs = &rhs + &(&(&g[p][a] * &g[r][b]) * &t);
                                    }
                                }
                                if !h[a][q].is_zero() && !h[b][s].is_zero() {
                                    let t = entry(&at_g, p, a, r, b)?;
                                    if !t.is_zero() {
                                        rhs = &rhs + &(&(&t * &h[a][q]) * &h[b][s]);
                                    }
                                }
                            }
                        }
                        let defect = &lhs - &rhs;
                        if !defect.is_zero() {
                            return Ok(Some((format!("({},{})", model.chart.names[u], model.chart.names[v]), defect)));
                        }
                    }
                }
            }
        }
        Ok(None)
    };
    match run() {
        Ok(None) => {}
        Ok(Some((at, d))) => chk.fail(at, format!("{d}")),
        Err(e) => chk.fail("substitution", format!("{e}")),
    }
    chk
}

/// The λ with computed = λ·expected entrywise after applying the model constraint.
pub fn bivector_ratio(model: &MatrixGroupModel, computed: &Bivector, expected: &Bivector) -> Result<Option<GaussRational>> {
    let a = model.reduce_bivector(computed)?;
    let b = model.reduce_bivector(expected)?;
    let mut ratio: Option<GaussRational> = None;
    let n = model.chart.dim();
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (a.get(i, j), b.get(i, j));
            match (x.is_zero(), y.is_zero()) {
                (true, true) => continue,
                (false, false) => {}
                _ => return Ok(None),
            }
            let (e, c) = y.terms().iter().next().unwrap();
            let lam = &x.coeff(e) / c;
            if x != y.scale(&lam) {
                return Ok(None);
            }
            match &ratio {
                Some(r) if *r != lam => return Ok(None),
                _ => ratio = Some(lam),
            }
        }
    }
    Ok(ratio)
}

#[derive(Clone, Debug)]
pub struct McForms {
    pub forms: Vec<PolyForm>,
    /// Expansion, span and left-invariance checks.
    pub structure: Check,
    /// dθ_k + ½ Σ d^k_{ij} θ_i∧θ_j = 0.
    pub mca: Check,
    /// dθ_k = Σ d^k_{ij} θ_i∧θ_j.
    pub rec: Check,
}

/// Σ_{ij} d^k_{ij} α_i∧α_j for each k.
pub fn quadratic_term(alpha: &[PolyForm], d: &Cobracket, k: usize) -> PolyForm {
    let chart = alpha[0].chart().clone();
    let mut out = PolyForm::zero(&chart, 2);
    for i in 0..alpha.len() {
        for j in 0..alpha.len() {
            let c = d.d(k, i, j);
            if !c.is_zero() {
                out = &out + &alpha[i].wedge(&alpha[j]).scale(c);
            }
        }
    }
    out
}

/// Both forms of the structure equation for one-forms indexed by the basis of d.
pub fn structure_equations(alpha: &[PolyForm], d: &Cobracket, names: &[String]) -> (Check, Check) {
    let mut mca = Check::new("dα + ½ α∧α∘δ = 0");
    let mut rec = Check::new("dα = α∧α∘δ");
    let half = GaussRational::frac(1, 2);
    for k in 0..alpha.len() {
        let q = quadratic_term(alpha, d, k);
        let da = alpha[k].d();
        let m = &da + &q.scale(&half);
        if !m.is_zero() {
            mca.fail(names[k].clone(), m.render());
        }
        let r = &da - &q;
        if !r.is_zero() {
            rec.fail(names[k].clone(), r.render());
        }
    }
    (mca, rec)
}

/// Components of g⁻¹dg on the model's basis; `d` defaults to the transpose of the model bracket.
pub fn maurer_cartan_forms(model: &MatrixGroupModel, d: Option<&Cobracket>) -> Result<McForms> {
    let chart = &model.chart;
    let n = model.n;
    let g = model.matrix();
    let dt = det(&g);
    let inv_det = dt.inv_monomial().map_err(|_| Error::NotInvertible(format!("{}: det {} is not a unit on the chart", model.name, dt)))?;
    let adj = adjugate(&g);
    let ginv: PolyMatrix = adj.iter().map(|row| row.iter().map(|x| x * &inv_det).collect()).collect();
    let dg: Vec<Vec<PolyForm>> = g.iter().map(|row| row.iter().map(PolyForm::exact).collect()).collect();
    let mut mc = alloc::vec![alloc::vec![PolyForm::zero(chart, 1); n]; n];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                if !ginv[p][r].is_zero() && !dg[r][q].is_zero() {
                    mc[p][q] = &mc[p][q] + &dg[r][q].mul_poly(&ginv[p][r]);
                }
            }
        }
    }
    let m = model.dim();
    // Columns of the basis as position vectors; pick independent positions.
    let positions: Vec<(usize, usize)> = (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).collect();
    let mut at: Matrix = (0..m).map(|k| positions.iter().map(|&(p, q)| model.basis[k][p][q].clone()).collect()).collect();
    let rows = rref(&mut at, positions.len());
    if rows.len() != m {
        return Err(Error::Malformed(format!("{}: basis matrices are linearly dependent", model.name)));
    }
    let sub: Matrix = rows.iter().map(|&r| (0..m).map(|k| model.basis[k][positions[r].0][positions[r].1].clone()).collect()).collect();
    let mut sub_inv = alloc::vec![alloc::vec![GaussRational::zero(); m]; m];
    for c in 0..m {
        let mut e = alloc::vec![GaussRational::zero(); m];
        e[c] = GaussRational::one();
        let col = solve(&sub, m, &e).expect("independent rows give an invertible block");
        for r in 0..m {
            sub_inv[r][c] = col[r].clone();
        }
    }
    let forms: Vec<PolyForm> = (0..m)
        .map(|k| {
            let mut f = PolyForm::zero(chart, 1);
            for (c, &r) in rows.iter().enumerate() {
                let (p, q) = positions[r];
                if !sub_inv[k][c].is_zero() {
                    f = &f + &mc[p][q].scale(&sub_inv[k][c]);
                }
            }
            f
        })
        .collect();
    let mut structure = Check::new(format!("Maurer-Cartan forms ({})", model.name));
    for &(p, q) in &positions {
        let mut s = PolyForm::zero(chart, 1);
        for k in 0..m {
            if !model.basis[k][p][q].is_zero() {
                s = &s + &forms[k].scale(&model.basis[k][p][q]);
            }
        }
        if s != mc[p][q] {
            structure.fail(format!("g⁻¹dg[{p}][{q}] outside the span"), (&mc[p][q] - &s).render());
        }
    }
    for j in 0..m {
        let x = model.left_field(j);
        for (k, f) in forms.iter().enumerate() {
            let v = f.contract(&x);
            let want = if j == k { GaussRational::one() } else { GaussRational::zero() };
            if v.as_constant() != Some(want) {
                structure.fail(format!("θ_{}(X^L_{})", model.algebra.names()[k], model.algebra.names()[j]), format!("{v}"));
            }
        }
    }
    let own;
    let d = match d {
        Some(d) => d,
        None => {
            own = Cobracket::transpose_of(&model.algebra);
            &own
        }
    };
    let (mca, rec) = structure_equations(&forms, d, model.algebra.names());
    Ok(McForms { forms, structure, mca, rec })
}

/// l(ξ) = π♯(θ_ξ) on G*, with the homomorphism check against the bracket of `g`.
pub fn dressing_fields(model: &MatrixGroupModel, pi: &Bivector, g: &LieAlgebra) -> Result<(Vec<VectorField>, Check)> {
    if g.dim() != model.dim() {
        return Err(Error::Malformed(format!("𝔤 has dimension {}, G* model {}", g.dim(), model.dim())));
    }
    let mc = maurer_cartan_forms(model, None)?;
    let fields: Vec<VectorField> = mc.forms.iter().map(|t| pi.sharp(t)).collect();
    let mut chk = Check::new("dressing homomorphism");
    chk.absorb(&mc.structure);
    chk.absorb(&field_homomorphism(&fields, g));
    Ok((fields, chk))
}

/// [X_i, X_j] = Σ_k c_ij^k X_k.
pub fn field_homomorphism(fields: &[VectorField], g: &LieAlgebra) -> Check {
    let mut chk = Check::new("[ξ_M, η_M] = [ξ,η]_M");
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            let lhs = fields[i].bracket(&fields[j]);
            let mut rhs = VectorField::zero(fields[i].chart());
            for (k, f) in fields.iter().enumerate() {
                let c = g.c(i, j, k);
                if !c.is_zero() {
                    rhs = &rhs + &f.scale(c);
                }
            }
            if lhs != rhs {
                chk.fail(format!("({},{})", g.names()[i], g.names()[j]), (&lhs - &rhs).render());
            }
        }
    }
    chk
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::poisson::{casimir_check, check_jacobi_coords};
    use crate::lie::{cobracket_from_r, dual_bracket};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> GaussRational {
        GaussRational::frac(n, d)
    }

    fn m2(a: [[i64; 2]; 2]) -> Matrix {
        a.iter().map(|r| r.iter().map(|x| GaussRational::int(*x)).collect()).collect()
    }

    fn sl2() -> LieAlgebra {
        let two = GaussRational::int(2);
        LieAlgebra::new(&["H", "X", "Y"], &[(0, 1, &[(1, two.clone())]), (0, 2, &[(2, -&two)]), (1, 2, &[(0, GaussRational::one())])])
            .unwrap()
    }

    fn sl2_model() -> MatrixGroupModel {
        let basis = alloc::vec![m2([[1, 0], [0, -1]]), m2([[0, 1], [0, 0]]), m2([[0, 0], [1, 0]])];
        MatrixGroupModel::full("SL(2)", &["a", "b", "c", "d"], &["a"], sl2(), basis).unwrap().with_unit_determinant("d").unwrap()
    }

    fn su2_model() -> MatrixGroupModel {
        let i = GaussRational::i();
        let h = q(1, 2);
        let z = GaussRational::zero();
        let e1 = alloc::vec![alloc::vec![&i * &h, z.clone()], alloc::vec![z.clone(), -&(&i * &h)]];
        let e2 = alloc::vec![alloc::vec![z.clone(), h.clone()], alloc::vec![-&h, z.clone()]];
        let e3 = alloc::vec![alloc::vec![z.clone(), &i * &h], alloc::vec![&i * &h, z.clone()]];
        let one = GaussRational::one();
        let su2 =
            LieAlgebra::new(&["e1", "e2", "e3"], &[(0, 1, &[(2, one.clone())]), (1, 2, &[(0, one.clone())]), (2, 0, &[(1, one)])]).unwrap();
        MatrixGroupModel::full("SU(2)", &["a", "b", "c", "d"], &["a"], su2, alloc::vec![e1, e2, e3]).unwrap()
    }

    fn table(model: &MatrixGroupModel, rows: &[(&str, &str, CoordPoly)]) -> Bivector {
        let ch = &model.chart;
        let e: Vec<(usize, usize, CoordPoly)> =
            rows.iter().map(|(u, v, p)| (ch.index(u).unwrap(), ch.index(v).unwrap(), p.clone())).collect();
        Bivector::from_entries(ch, &e)
    }

    fn rmat(dim: usize, comps: &[(usize, usize, GaussRational)]) -> RMatrix {
        RMatrix::new(Tensor::from_components(dim, 2, comps.iter().map(|(i, j, c)| (alloc::vec![*i, *j], c.clone()))).unwrap())
    }

    #[test]
    fn sl2_quasitriangular_table() {
        let m = sl2_model();
        let ch = m.chart.clone();
        let (a, b, c, d) = (ch.var("a"), ch.var("b"), ch.var("c"), ch.var("d"));
        // r = 1/8 (H⊗H + 4 X⊗Y)
        let r = rmat(3, &[(0, 0, q(1, 8)), (1, 2, q(1, 2))]);
        let pi = pl_group_bivector(&m, &r).unwrap();
        let paper = table(
            &m,
            &[
                ("a", "b", (&a * &b).scale(&q(1, 4))),
                ("a", "c", (&a * &c).scale(&q(1, 4))),
                ("a", "d", (&b * &c).scale(&q(1, 2))),
                ("b", "d", (&b * &d).scale(&q(1, 4))),
                ("c", "d", (&c * &d).scale(&q(1, 4))),
            ],
        );
        assert_eq!(bivector_ratio(&m, &pi, &paper).unwrap(), Some(GaussRational::int(-1)));
        assert!(check_multiplicative(&m, &pi).pass);
        assert!(check_jacobi_coords(&pi).pass);
        let cas = &(&a * &d) - &(&b * &c);
        assert!(casimir_check(&pi, &cas, None).pass);
        assert!(casimir_check(&pi, &cas, m.constraint_pair()).pass);
    }

    #[test]
    fn sl2_triangular_table() {
        let m = sl2_model();
        let ch = m.chart.clone();
        let (a, b, c, d) = (ch.var("a"), ch.var("b"), ch.var("c"), ch.var("d"));
        let one = CoordPoly::one(&ch);
        // r = X⊗H − H⊗X
        let r = rmat(3, &[(1, 0, GaussRational::one()), (0, 1, GaussRational::int(-1))]);
        let pi = pl_group_bivector(&m, &r).unwrap();
        let paper = table(
            &m,
            &[
                ("a", "b", &one - &(&a * &a)),
                ("a", "c", &c * &c),
                ("a", "d", &c * &(&d - &a)),
                ("b", "c", &c * &(&a + &d)),
                ("b", "d", &(&d * &d) - &one),
                ("c", "d", -&(&c * &c)),
            ],
        );
        let lam = bivector_ratio(&m, &pi, &paper).unwrap();
        assert_eq!(lam, Some(GaussRational::one()));
        assert!(check_multiplicative(&m, &pi).pass);
        let cas = &(&a * &d) - &(&b * &c);
        assert!(casimir_check(&pi, &cas, m.constraint_pair()).pass);
    }

    #[test]
    fn su2_table() {
        let m = su2_model();
        let ch = m.chart.clone();
        let (a, b, c, d) = (ch.var("a"), ch.var("b"), ch.var("c"), ch.var("d"));
        let i = GaussRational::i();
        let r = rmat(3, &[(1, 2, GaussRational::int(2)), (2, 1, GaussRational::int(-2))]);
        let pi = pl_group_bivector(&m, &r).unwrap();
        let paper = table(
            &m,
            &[
                ("a", "b", (&a * &b).scale(&i)),
                ("a", "c", (&a * &c).scale(&i)),
                ("a", "d", (&b * &c).scale(&(&i * &GaussRational::int(2)))),
                ("b", "d", (&b * &d).scale(&i)),
                ("c", "d", (&c * &d).scale(&i)),
            ],
        );
        let lam = bivector_ratio(&m, &pi, &paper).unwrap();
        assert_eq!(lam, Some(GaussRational::int(-1)));
        assert!(check_multiplicative(&m, &pi).pass);
        // linearization at e gives the dual bracket of δ = ∂r
        let (d, _) = cobracket_from_r(&m.algebra, &r);
        let (dual, chk) = dual_bracket(&m.algebra, &d);
        assert!(chk.pass);
        assert_eq!(dual.names().len(), 3);
    }

    #[test]
    fn zero_and_left_only() {
        let m = sl2_model();
        let zero = pl_group_bivector(&m, &rmat(3, &[])).unwrap();
        assert!(zero.is_zero());
        assert!(check_multiplicative(&m, &zero).pass);
        let r = rmat(3, &[(1, 2, q(1, 4)), (2, 1, q(-1, 4))]);
        let left = left_invariant_bivector(&m, &r);
        let chk = check_multiplicative(&m, &left);
        assert!(!chk.pass);
    }

    fn axb_dual_model() -> MatrixGroupModel {
        // (a b; 0 1), ξ = E11, η = E12, [ξ,η] = η
        let ch = Chart::new(&["a", "b"], &["a"]);
        let one = GaussRational::one();
        let l = LieAlgebra::new(&["xi", "eta"], &[(0, 1, &[(1, one.clone())])]).unwrap();
        let entries =
            alloc::vec![alloc::vec![Entry::Var(0), Entry::Var(1)], alloc::vec![Entry::Const(GaussRational::zero()), Entry::Const(one)]];
        MatrixGroupModel::new("G*", ch, entries, l, alloc::vec![m2([[1, 0], [0, 0]]), m2([[0, 1], [0, 0]])]).unwrap()
    }

    #[test]
    fn mc_forms_of_affine_dual() {
        let m = axb_dual_model();
        let ch = m.chart.clone();
        let (a, b) = (ch.var("a"), ch.var("b"));
        let ainv = a.inv_monomial().unwrap();
        let mc = maurer_cartan_forms(&m, None).unwrap();
        assert!(mc.structure.pass);
        assert_eq!(mc.forms[0], PolyForm::exact(&a).mul_poly(&ainv));
        assert_eq!(mc.forms[1], PolyForm::exact(&b).mul_poly(&ainv));
        assert!(mc.mca.pass);
        assert!(!mc.rec.pass);
        assert!((&mc.forms[1].d() + &mc.forms[0].wedge(&mc.forms[1])).is_zero());
    }

    #[test]
    fn mc_forms_of_heisenberg() {
        let ch = Chart::new(&["x", "y", "z"], &[]);
        let one = GaussRational::one();
        let z0 = Entry::Const(GaussRational::zero());
        let e1 = Entry::Const(one.clone());
        let entries = alloc::vec![
            alloc::vec![e1.clone(), Entry::Var(0), Entry::Var(2)],
            alloc::vec![z0.clone(), e1.clone(), Entry::Var(1)],
            alloc::vec![z0.clone(), z0, e1]
        ];
        let l = LieAlgebra::new(&["xi", "eta", "zeta"], &[(0, 1, &[(2, one)])]).unwrap();
        let unit = |p: usize, q: usize| -> Matrix {
            let mut m = alloc::vec![alloc::vec![GaussRational::zero(); 3]; 3];
            m[p][q] = GaussRational::one();
            m
        };
        let m = MatrixGroupModel::new("Heisenberg", ch.clone(), entries, l, alloc::vec![unit(0, 1), unit(1, 2), unit(0, 2)]).unwrap();
        let mc = maurer_cartan_forms(&m, None).unwrap();
        assert!(mc.structure.pass);
        let (x, y, z) = (ch.var("x"), ch.var("y"), ch.var("z"));
        assert_eq!(mc.forms[2], &PolyForm::exact(&z) - &PolyForm::exact(&y).mul_poly(&x));
        // left-invariant forms: dθ_ζ = −θ_ξ∧θ_η
        let w = mc.forms[0].wedge(&mc.forms[1]);
        assert_eq!(mc.forms[2].d(), -&w);
        assert!(mc.mca.pass);
    }

    #[test]
    fn non_unit_determinant_rejected() {
        let ch = Chart::new(&["a", "b"], &[]);
        let one = GaussRational::one();
        let l = LieAlgebra::new(&["xi", "eta"], &[(0, 1, &[(1, one.clone())])]).unwrap();
        let entries =
            alloc::vec![alloc::vec![Entry::Var(0), Entry::Var(1)], alloc::vec![Entry::Const(GaussRational::zero()), Entry::Const(one)]];
        let m = MatrixGroupModel::new("G*", ch, entries, l, alloc::vec![m2([[1, 0], [0, 0]]), m2([[0, 1], [0, 0]])]).unwrap();
        assert!(matches!(maurer_cartan_forms(&m, None), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn mismatched_basis_rejected() {
        let ch = Chart::new(&["a", "b"], &["a"]);
        let one = GaussRational::one();
        let l = LieAlgebra::new(&["xi", "eta"], &[(0, 1, &[(1, -&one)])]).unwrap();
        let entries =
            alloc::vec![alloc::vec![Entry::Var(0), Entry::Var(1)], alloc::vec![Entry::Const(GaussRational::zero()), Entry::Const(one)]];
        assert!(MatrixGroupModel::new("bad", ch, entries, l, alloc::vec![m2([[1, 0], [0, 0]]), m2([[0, 1], [0, 0]])]).is_err());
    }

    #[test]
    fn dressing_on_affine_dual() {
        let m = axb_dual_model();
        let ch = m.chart.clone();
        let (a, b) = (ch.var("a"), ch.var("b"));
        let pi = Bivector::from_entries(&ch, &[(0, 1, &a * &b)]);
        let one = GaussRational::one();
        let g = LieAlgebra::new(&["xi", "eta"], &[(0, 1, &[(1, one)])]).unwrap();
        let (l, chk) = dressing_fields(&m, &pi, &g).unwrap();
        assert!(chk.pass, "{:?}", chk);
        assert_eq!(l[0], VectorField::coordinate(&ch, 1, b.clone()));
        assert_eq!(l[1], VectorField::coordinate(&ch, 0, -&b));
        // both fields vanish on b = 0
        for f in &l {
            for c in f.comps() {
                assert!(c.substitute(1, &CoordPoly::zero(&ch)).unwrap().is_zero());
            }
        }
        let (zl, zchk) = dressing_fields(&m, &Bivector::zero(&ch), &g).unwrap();
        assert!(zchk.pass);
        assert!(zl.iter().all(|f| f.is_zero()));
    }

    #[test]
    fn dressing_on_abelian_dual_is_coadjoint() {
        // G* = ℝ³ as translations, π the linear structure of so(3)
        let ch = Chart::new(&["x1", "x2", "x3"], &[]);
        let one = GaussRational::one();
        let so3 =
            LieAlgebra::new(&["e1", "e2", "e3"], &[(0, 1, &[(2, one.clone())]), (1, 2, &[(0, one.clone())]), (2, 0, &[(1, one.clone())])])
                .unwrap();
        let z0 = Entry::Const(GaussRational::zero());
        let e1 = Entry::Const(one);
        let mut entries = alloc::vec![alloc::vec![z0.clone(); 4]; 4];
        for k in 0..4 {
            entries[k][k] = e1.clone();
        }
        for k in 0..3 {
            entries[k][3] = Entry::Var(k);
        }
        let basis: Vec<Matrix> = (0..3)
            .map(|k| {
                let mut m = alloc::vec![alloc::vec![GaussRational::zero(); 4]; 4];
                m[k][3] = GaussRational::one();
                m
            })
            .collect();
        let model = MatrixGroupModel::new("R3", ch.clone(), entries, LieAlgebra::abelian(&["f1", "f2", "f3"]), basis).unwrap();
        let mut pi = Bivector::zero(&ch);
        for i in 0..3 {
            for j in i + 1..3 {
                let mut p = CoordPoly::zero(&ch);
                for k in 0..3 {
                    p = &p + &CoordPoly::var(&ch, k).scale(so3.c(i, j, k));
                }
                pi.set(i, j, p);
            }
        }
        let (l, chk) = dressing_fields(&model, &pi, &so3).unwrap();
        assert!(chk.pass);
        // l(e_i) = Σ_{j,k} c_ij^k x_k ∂_j
        for i in 0..3 {
            let comps: Vec<CoordPoly> = (0..3)
                .map(|j| {
                    let mut p = CoordPoly::zero(&ch);
                    for k in 0..3 {
                        p = &p + &CoordPoly::var(&ch, k).scale(so3.c(i, j, k));
                    }
                    p
                })
                .collect();
            assert_eq!(l[i], VectorField::new(&ch, comps));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn pl_bivector_vanishes_at_identity_and_is_multiplicative(
            c in proptest::collection::vec(-3i64..4, 3)
        ) {
            let m = sl2_model();
            let r = rmat(3, &[
                (0, 1, GaussRational::int(c[0])), (1, 0, GaussRational::int(-c[0])),
                (0, 2, GaussRational::int(c[1])), (2, 0, GaussRational::int(-c[1])),
                (1, 2, GaussRational::int(c[2])), (2, 1, GaussRational::int(-c[2])),
                (0, 0, GaussRational::int(c[0] + c[2])),
            ]);
            let pi = pl_group_bivector(&m, &r).unwrap();
            let e = [1, 0, 0, 1].map(GaussRational::int);
            for (_, p) in pi.nonzero() {
                prop_assert!(p.eval(&e).is_zero());
            }
            prop_assert!(check_multiplicative(&m, &pi).pass);
        }

    }
}
