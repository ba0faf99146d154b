//! Classical Poisson reduction at polynomial scale: invariant functions, momentum ideals and
//! the induced bracket on invariants modulo the ideal.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::Zero;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{Chart, CoordPoly, Exponents, GaussRational};
use crate::geometry::{hamiltonian_field, poisson_bracket, Bivector, VectorField};
use crate::linalg::{nullspace, rref, solve, Matrix};
use crate::report::Check;
use crate::{Error, Result};

/// A Poisson manifold chart with action fields, momentum components and the ideal of the level set.
#[derive(Clone, Debug)]
pub struct ReductionSetup {
    pub name: String,
    pub pi: Bivector,
    pub fields: Vec<(String, VectorField)>,
    pub momentum: Vec<CoordPoly>,
    pub ideal: Vec<CoordPoly>,
}

impl ReductionSetup {
    pub fn chart(&self) -> &Arc<Chart> {
        self.pi.chart()
    }
}

fn abs_degree(e: &[i32]) -> usize {
    e.iter().map(|x| x.unsigned_abs() as usize).sum()
}

/// Exponent vectors with Σ|eᵢ| ≤ d; negative entries only on invertible coordinates.
pub fn monomials(chart: &Chart, d: usize) -> Vec<Exponents> {
    let mut out = Vec::new();
    let mut cur = alloc::vec![0i32; chart.dim()];
    fn rec(chart: &Chart, k: usize, left: usize, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if k == chart.dim() {
            out.push(cur.clone());
            return;
        }
        let lo = if chart.invertible[k] { -(left as i32) } else { 0 };
        for e in lo..=left as i32 {
            cur[k] = e;
            rec(chart, k + 1, left - e.unsigned_abs() as usize, cur, out);
        }
        cur[k] = 0;
    }
    rec(chart, 0, d, &mut cur, &mut out);
    out.sort_by(|a, b| abs_degree(a).cmp(&abs_degree(b)).then_with(|| a.cmp(b)));
    out
}

fn monomial(chart: &Arc<Chart>, e: &[i32]) -> CoordPoly {
    CoordPoly::monomial(chart, e.to_vec(), GaussRational::int(1))
}

/// The span of {m·g : g a generator, m a monomial, deg(m·g) ≤ bound}, row reduced with
/// higher-degree monomials first, so that remainders have the lowest available degree.
#[derive(Clone, Debug)]
pub struct IdealModel {
    chart: Arc<Chart>,
    gens: Vec<CoordPoly>,
    bound: usize,
    cols: Vec<Exponents>,
    index: BTreeMap<Exponents, usize>,
    rows: Matrix,
    pivots: Vec<usize>,
}

impl IdealModel {
    pub fn new(chart: &Arc<Chart>, gens: &[CoordPoly], bound: usize) -> Result<Self> {
        let mut cols = monomials(chart, bound);
        cols.reverse();
        let index: BTreeMap<Exponents, usize> = cols.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut rows: Matrix = Vec::new();
        for g in gens {
            if !Arc::ptr_eq(g.chart(), chart) && **g.chart() != **chart {
                return Err(Error::ChartMismatch("ideal generator on another chart".into()));
            }
            for m in monomials(chart, bound) {
                let p = &monomial(chart, &m) * g;
                if p.is_zero() || p.degree() > bound {
                    continue;
                }
                let mut row = alloc::vec![GaussRational::zero(); cols.len()];
                for (e, c) in p.terms() {
                    row[index[e]] = c.clone();
                }
                rows.push(row);
            }
        }
        let pivots = rref(&mut rows, cols.len());
        rows.truncate(pivots.len());
        Ok(IdealModel { chart: chart.clone(), gens: gens.to_vec(), bound, cols, index, rows, pivots })
    }

    pub fn generators(&self) -> &[CoordPoly] {
        &self.gens
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// The normal form of f: no pivot monomial survives.
    pub fn remainder(&self, f: &CoordPoly) -> Result<CoordPoly> {
        let mut v = alloc::vec![GaussRational::zero(); self.cols.len()];
        for (e, c) in f.terms() {
            let i = self.index.get(e).ok_or_else(|| Error::Capability(format!("ideal model bound {} exceeded by {}", self.bound, f)))?;
            v[*i] = c.clone();
        }
        for (row, p) in self.rows.iter().zip(&self.pivots) {
            if v[*p].is_zero() {
                continue;
            }
            let k = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&k * y);
                }
            }
        }
        let mut out = CoordPoly::zero(&self.chart);
        for (e, c) in self.cols.iter().zip(v) {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn contains(&self, f: &CoordPoly) -> Result<bool> {
        Ok(self.remainder(f)?.is_zero())
    }

    /// Monomials of degree ≤ d that are not pivots: a basis of the quotient in that range.
    pub fn normal_monomials(&self, d: usize) -> Vec<Exponents> {
        let pivot_set: Vec<&Exponents> = self.pivots.iter().map(|p| &self.cols[*p]).collect();
        monomials(&self.chart, d).into_iter().filter(|e| !pivot_set.contains(&e)).collect()
    }
}

fn fail_on(chk: &mut Check, at: String, r: Result<CoordPoly>) {
    match r {
        Ok(d) if d.is_zero() => {}
        Ok(d) => chk.fail(at, format!("{d}")),
        Err(e) => chk.fail(at, format!("{e}")),
    }
}

/// Joint kernel of the action fields on polynomials of degree ≤ d, with the check that brackets
/// of basis elements are again invariant.
#[derive(Clone, Debug)]
pub struct InvariantFunctions {
    pub basis: Vec<CoordPoly>,
    pub closure: Check,
}

/// Coefficient vectors of polys over a common sorted key set.
fn coefficient_matrix(polys: &[CoordPoly]) -> (Vec<Exponents>, Matrix) {
    let mut keys: Vec<Exponents> = polys.iter().flat_map(|p| p.terms().keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let m = keys.iter().map(|k| polys.iter().map(|p| p.coeff(k)).collect()).collect();
    (keys, m)
}

fn combine(chart: &Arc<Chart>, basis: &[CoordPoly], coeffs: &[GaussRational]) -> CoordPoly {
    let mut out = CoordPoly::zero(chart);
    for (b, c) in basis.iter().zip(coeffs) {
        out = &out + &b.scale(c);
    }
    out
}

/// Kernel of f ↦ (reduce(X f))_X over the span of the given monomials.
fn invariant_kernel(
    setup: &ReductionSetup,
    monos: &[Exponents],
    reduce: &dyn Fn(&CoordPoly) -> Result<CoordPoly>,
) -> Result<Vec<CoordPoly>> {
    let chart = setup.chart();
    let mut rows: Matrix = Vec::new();
    for (_, x) in &setup.fields {
        let images = monos.iter().map(|e| reduce(&x.apply(&monomial(chart, e)))).collect::<Result<Vec<_>>>()?;
        let (_, m) = coefficient_matrix(&images);
        rows.extend(m);
    }
    let basis: Vec<CoordPoly> = monos.iter().map(|e| monomial(chart, e)).collect();
    let ns = if rows.is_empty() {
        (0..monos.len()).map(|i| (0..monos.len()).map(|j| GaussRational::int((i == j) as i64)).collect()).collect()
    } else {
        nullspace(&rows, monos.len())
    };
    Ok(ns.iter().map(|v| combine(chart, &basis, v)).collect())
}

pub fn invariant_functions(setup: &ReductionSetup, degree: usize) -> Result<InvariantFunctions> {
    let monos = monomials(setup.chart(), degree);
    let basis = invariant_kernel(setup, &monos, &|p| Ok(p.clone()))?;
    let mut closure = Check::new(format!("invariants closed under the bracket ({})", setup.name));
    for (i, f) in basis.iter().enumerate() {
        for (j, g) in basis.iter().enumerate().skip(i + 1) {
            let b = poisson_bracket(&setup.pi, f, g);
            for (name, x) in &setup.fields {
                fail_on(&mut closure, format!("{name}{{I{i},I{j}}}"), Ok(x.apply(&b)));
            }
        }
    }
    Ok(InvariantFunctions { basis, closure })
}

/// {gᵢ, gⱼ} ∈ I for all pairs of generators.
pub fn check_ideal_poisson_closed(setup: &ReductionSetup, model: &IdealModel) -> Check {
    let mut chk = Check::new(format!("ideal closed under the bracket ({})", setup.name));
    let g = &setup.ideal;
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            fail_on(&mut chk, format!("{{g{i},g{j}}}"), model.remainder(&poisson_bracket(&setup.pi, &g[i], &g[j])));
        }
    }
    chk
}

/// X(gᵢ) ∈ I for every action field X.
pub fn check_ideal_invariant(setup: &ReductionSetup, model: &IdealModel) -> Check {
    let mut chk = Check::new(format!("ideal invariant under the action ({})", setup.name));
    for (i, g) in setup.ideal.iter().enumerate() {
        for (name, x) in &setup.fields {
            fail_on(&mut chk, format!("{name}(g{i})"), model.remainder(&x.apply(g)));
        }
    }
    chk
}

/// The action fields are Hamiltonian for the momentum components: X_i = {H_i, ·}.
pub fn check_momentum_fields(setup: &ReductionSetup) -> Check {
    let mut chk = Check::new(format!("action fields are Hamiltonian ({})", setup.name));
    if setup.momentum.len() != setup.fields.len() {
        chk.fail("momentum", format!("{} components for {} fields", setup.momentum.len(), setup.fields.len()));
        return chk;
    }
    for ((name, x), h) in setup.fields.iter().zip(&setup.momentum) {
        let xh = hamiltonian_field(&setup.pi, h);
        for (k, (a, b)) in x.comps().iter().zip(xh.comps()).enumerate() {
            let d = a - b;
            if !d.is_zero() {
                chk.fail(format!("{name} along {}", setup.chart().names[k]), format!("{d}"));
            }
        }
    }
    chk
}

/// The class of {f, g} modulo I, with the representative-independence check.
#[derive(Clone, Debug)]
pub struct ReducedBracket {
    pub class: CoordPoly,
    pub check: Check,
}

fn random_ideal_element(setup: &ReductionSetup, rng: &mut ChaCha8Rng) -> CoordPoly {
    let chart = setup.chart();
    let lin = monomials(chart, 1).into_iter().filter(|e| e.iter().all(|x| *x >= 0)).collect::<Vec<_>>();
    let mut out = CoordPoly::zero(chart);
    for g in &setup.ideal {
        let mut r = CoordPoly::zero(chart);
        for e in &lin {
            let c = (rng.next_u32() % 7) as i64 - 3;
            r.add_term(e.clone(), GaussRational::int(c));
        }
        out = &out + &(&r * g);
    }
    out
}

/// {f, g} mod I for representatives f, g that are invariant modulo I; the class is compared
/// across `trials` random perturbations f + i, g + j with i, j ∈ I.
pub fn reduced_bracket(
    setup: &ReductionSetup,
    model: &IdealModel,
    f: &CoordPoly,
    g: &CoordPoly,
    seed: u64,
    trials: usize,
) -> Result<ReducedBracket> {
    let mut check = Check::new(format!("reduced bracket well defined ({})", setup.name));
    for (name, x) in &setup.fields {
        for (label, h) in [("f", f), ("g", g)] {
            if !model.contains(&x.apply(h))? {
                check.fail(format!("{name}({label})"), "representative is not invariant modulo the ideal");
            }
        }
    }
    let class = model.remainder(&poisson_bracket(&setup.pi, f, g))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let f2 = f + &random_ideal_element(setup, &mut rng);
        let g2 = g + &random_ideal_element(setup, &mut rng);
        let c2 = model.remainder(&poisson_bracket(&setup.pi, &f2, &g2))?;
        let d = &c2 - &class;
        if !d.is_zero() {
            check.fail(format!("perturbation {t}"), format!("{d}"));
        }
    }
    Ok(ReducedBracket { class, check })
}

/// Jacobi for the induced bracket on every triple of the given representatives.
pub fn check_quotient_jacobi(setup: &ReductionSetup, model: &IdealModel, basis: &[CoordPoly]) -> Check {
    let mut chk = Check::new(format!("Jacobi on the quotient ({})", setup.name));
    let br = |a: &CoordPoly, b: &CoordPoly| model.remainder(&poisson_bracket(&setup.pi, a, b));
    let n = basis.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (x, y, z) = (&basis[i], &basis[j], &basis[k]);
                let r = (|| {
                    let s = &(&br(&br(x, y)?, z)? + &br(&br(y, z)?, x)?) + &br(&br(z, x)?, y)?;
                    model.remainder(&s)
                })();
                fail_on(&mut chk, format!("({i},{j},{k})"), r);
            }
        }
    }
    chk
}

/// Invariants modulo I in degrees ≤ d with their bracket table.
#[derive(Clone, Debug)]
pub struct SwReduced {
    pub basis: Vec<CoordPoly>,
    pub table: Vec<(usize, usize, CoordPoly)>,
    pub closure: Check,
    pub jacobi: Check,
}

/// (C[M]/I)^G in degrees ≤ d: classes f with X f ∈ I, expressed on normal monomials.
pub fn sw_reduced_algebra(setup: &ReductionSetup, model: &IdealModel, degree: usize) -> Result<SwReduced> {
    let monos = model.normal_monomials(degree);
    let basis = invariant_kernel(setup, &monos, &|p| model.remainder(p))?;
    let mut table = Vec::new();
    let mut closure = Check::new(format!("reduced brackets stay invariant ({})", setup.name));
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let b = poisson_bracket(&setup.pi, &basis[i], &basis[j]);
            for (name, x) in &setup.fields {
                fail_on(&mut closure, format!("{name}{{R{i},R{j}}}"), model.remainder(&x.apply(&b)));
            }
            let c = model.remainder(&b)?;
            if !c.is_zero() {
                table.push((i, j, c));
            }
        }
    }
    let jacobi = check_quotient_jacobi(setup, model, &basis);
    Ok(SwReduced { basis, table, closure, jacobi })
}

/// Coordinates of the class of f in the span of the given classes, if it lies there.
fn coordinates(model: &IdealModel, classes: &[CoordPoly], f: &CoordPoly) -> Result<Option<Vec<GaussRational>>> {
    let r = model.remainder(f)?;
    let mut all = classes.to_vec();
    all.push(r);
    let (_, m) = coefficient_matrix(&all);
    let n = classes.len();
    let a: Matrix = m.iter().map(|row| row[..n].to_vec()).collect();
    let b: Vec<GaussRational> = m.iter().map(|row| row[n].clone()).collect();
    if a.is_empty() {
        return Ok(Some(alloc::vec![GaussRational::zero(); n]));
    }
    Ok(solve(&a, n, &b))
}

/// The two pipelines agree: exact invariants reduced modulo I span the same classes as the
/// invariants modulo I, and their reduced brackets match the table read through coordinates.
pub fn cross_check(setup: &ReductionSetup, model: &IdealModel, degree: usize, seed: u64) -> Result<Check> {
    let mut chk = Check::new(format!("invariant-then-reduce agrees with reduce-then-invariant ({})", setup.name));
    let inv = invariant_functions(setup, degree)?;
    let sw = sw_reduced_algebra(setup, model, degree)?;
    let classes: Vec<CoordPoly> = inv.basis.iter().map(|f| model.remainder(f)).collect::<Result<_>>()?;
    let (_, m) = coefficient_matrix(&classes);
    let rank_a = if m.is_empty() { 0 } else { crate::linalg::rank(&m, classes.len()) };
    if rank_a != sw.basis.len() {
        chk.fail("dimension", format!("{} classes from invariants, {} invariant classes", rank_a, sw.basis.len()));
    }
    let mut coords = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        match coordinates(model, &sw.basis, c)? {
            Some(v) => coords.push(v),
            None => {
                chk.fail(format!("I{i}"), "class outside the invariant quotient");
                return Ok(chk);
            }
        }
    }
    let mut table: BTreeMap<(usize, usize), CoordPoly> = BTreeMap::new();
    for (i, j, c) in &sw.table {
        table.insert((*i, *j), c.clone());
        table.insert((*j, *i), -c);
    }
    let chart = setup.chart();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let rb = reduced_bracket(setup, model, &inv.basis[i], &inv.basis[j], seed, 0)?;
            let mut via = CoordPoly::zero(chart);
            for (k, a) in coords[i].iter().enumerate() {
                for (l, b) in coords[j].iter().enumerate() {
                    if let Some(t) = table.get(&(k, l)) {
                        via = &via + &t.scale(&(a * b));
                    }
                }
            }
            let d = model.remainder(&(&rb.class - &via))?;
            if !d.is_zero() {
                chk.fail(format!("{{I{i},I{j}}}"), format!("{d}"));
            }
        }
    }
    Ok(chk)
}

/// Worked setups.
pub mod examples {
    use super::*;

    fn canonical(chart: &Arc<Chart>, pairs: &[(&str, &str)], extra: &[(usize, usize, CoordPoly)]) -> Bivector {
        let mut e: Vec<(usize, usize, CoordPoly)> = extra.to_vec();
        for (q, p) in pairs {
            e.push((chart.index(q).unwrap(), chart.index(p).unwrap(), CoordPoly::one(chart)));
        }
        Bivector::from_entries(chart, &e)
    }

    /// The dual-group model π = ab∂_a∧∂_b with the dressing fields l(ξ) = b∂_b, l(η) = −b∂_a
    /// and the level ideal ⟨a − 1, b⟩, optionally with a spectator canonical pair (s, t).
    pub fn dual_group_case3_with(spectator: bool) -> ReductionSetup {
        let chart = if spectator { Chart::new(&["a", "b", "s", "t"], &["a"]) } else { Chart::new(&["a", "b"], &["a"]) };
        let (a, b) = (chart.var("a"), chart.var("b"));
        let pairs: &[(&str, &str)] = if spectator { &[("s", "t")] } else { &[] };
        let pi = canonical(&chart, pairs, &[(0, 1, &a * &b)]);
        let fields = alloc::vec![
            (String::from("xi"), VectorField::coordinate(&chart, 1, b.clone())),
            (String::from("eta"), VectorField::coordinate(&chart, 0, -&b)),
        ];
        let ideal = alloc::vec![&a - &CoordPoly::one(&chart), b.clone()];
        ReductionSetup { name: "dual group, b = 0 locus".into(), pi, fields, momentum: alloc::vec![a, b], ideal }
    }

    pub fn dual_group_case3() -> ReductionSetup {
        dual_group_case3_with(true)
    }

    /// Rotation of the canonical plane generated by H = (q² + p²)/2.
    pub fn rotation_plane() -> ReductionSetup {
        let chart = Chart::new(&["q", "p"], &[]);
        let pi = canonical(&chart, &[("q", "p")], &[]);
        let (q, p) = (chart.var("q"), chart.var("p"));
        let h = (&(&q * &q) + &(&p * &p)).scale(&GaussRational::frac(1, 2));
        let x = hamiltonian_field(&pi, &h);
        ReductionSetup { name: "rotation".into(), pi, fields: alloc::vec![("rot".into(), x)], momentum: alloc::vec![h], ideal: Vec::new() }
    }

    /// Translation along q₁ on T*ℝ² with the level ideal ⟨p₁ − c⟩.
    pub fn translation(c: i64) -> ReductionSetup {
        let chart = Chart::new(&["q1", "q2", "p1", "p2"], &[]);
        let pi = canonical(&chart, &[("q1", "p1"), ("q2", "p2")], &[]);
        let p1 = chart.var("p1");
        let x = hamiltonian_field(&pi, &p1);
        let ideal = alloc::vec![&p1 - &CoordPoly::int(&chart, c)];
        ReductionSetup { name: "translation".into(), pi, fields: alloc::vec![("tr".into(), x)], momentum: alloc::vec![p1], ideal }
    }

    /// Angular momentum on T*ℝ³ at the orbit level |L|² = ℓ².
    pub fn angular_momentum(l2: i64) -> ReductionSetup {
        let chart = Chart::new(&["q1", "q2", "q3", "p1", "p2", "p3"], &[]);
        let pi = canonical(&chart, &[("q1", "p1"), ("q2", "p2"), ("q3", "p3")], &[]);
        let q: Vec<CoordPoly> = (1..=3).map(|i| chart.var(&format!("q{i}"))).collect();
        let p: Vec<CoordPoly> = (1..=3).map(|i| chart.var(&format!("p{i}"))).collect();
        let l: Vec<CoordPoly> = (0..3).map(|i| &(&q[(i + 1) % 3] * &p[(i + 2) % 3]) - &(&q[(i + 2) % 3] * &p[(i + 1) % 3])).collect();
        let fields = (0..3).map(|i| (format!("L{}", i + 1), hamiltonian_field(&pi, &l[i]))).collect();
        let norm = l.iter().fold(CoordPoly::zero(&chart), |acc, x| &acc + &(x * x));
        let ideal = alloc::vec![&norm - &CoordPoly::int(&chart, l2)];
        ReductionSetup { name: "angular momentum".into(), pi, fields, momentum: l, ideal }
    }
}
