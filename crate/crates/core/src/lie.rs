//! Lie algebras by structure constants, cobrackets, r-matrices and doubles.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::error::{malformed, Result};
use crate::exact::GaussRational;
use crate::report::Check;

pub type Constants = Vec<Vec<Vec<GaussRational>>>;

fn zeros3(n: usize) -> Constants {
    alloc::vec![alloc::vec![alloc::vec![GaussRational::zero(); n]; n]; n]
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    names: Vec<String>,
    c: Constants,
}

impl LieAlgebra {
    /// Builds from brackets [e_i, e_j] = Σ coef·e_k for i < j and checks Jacobi.
    pub fn new(names: &[&str], brackets: &[(usize, usize, &[(usize, GaussRational)])]) -> Result<Self> {
        let l = Self::unchecked(names, brackets)?;
        let j = check_jacobi(&l);
        if !j.pass {
            return Err(malformed(format!("Jacobi fails at {}", j.defects[0].at)));
        }
        Ok(l)
    }

    /// Builds without the Jacobi check; antisymmetry is still enforced.
    pub fn unchecked(names: &[&str], brackets: &[(usize, usize, &[(usize, GaussRational)])]) -> Result<Self> {
        let n = names.len();
        let mut c = zeros3(n);
        for (i, j, terms) in brackets {
            if *i >= n || *j >= n || i == j {
                return Err(malformed(format!("bad bracket indices ({i},{j})")));
            }
            for (k, v) in terms.iter() {
                if *k >= n {
                    return Err(malformed("bracket image index out of range"));
                }
                c[*i][*j][*k] += v;
                c[*j][*i][*k] -= v;
            }
        }
        Ok(LieAlgebra { names: names.iter().map(|s| String::from(*s)).collect(), c })
    }

    pub fn from_constants(names: Vec<String>, c: Constants) -> Result<Self> {
        let n = names.len();
        if c.len() != n || c.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(malformed("structure constants have the wrong shape"));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if c[i][j][k] != -&c[j][i][k] {
                        return Err(malformed(format!("structure constants not antisymmetric at ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(LieAlgebra { names, c })
    }

    pub fn abelian(names: &[&str]) -> Self {
        LieAlgebra { names: names.iter().map(|s| String::from(*s)).collect(), c: zeros3(names.len()) }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &GaussRational {
        &self.c[i][j][k]
    }

    pub fn constants(&self) -> &Constants {
        &self.c
    }

    /// [e_i, e_j] as a coefficient vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<GaussRational> {
        self.c[i][j].clone()
    }

    pub fn bracket(&self, x: &[GaussRational], y: &[GaussRational]) -> Vec<GaussRational> {
        let n = self.dim();
        let mut out = alloc::vec![GaussRational::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let f = &x[i] * &y[j];
                for k in 0..n {
                    if !self.c[i][j][k].is_zero() {
                        out[k] += &(&f * &self.c[i][j][k]);
                    }
                }
            }
        }
        out
    }
}

/// Finite-support tensor of rank k over a basis of size `dim`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    pub dim: usize,
    pub rank: usize,
    comps: BTreeMap<Vec<usize>, GaussRational>,
}

impl Tensor {
    pub fn zero(dim: usize, rank: usize) -> Self {
        Tensor { dim, rank, comps: BTreeMap::new() }
    }

    pub fn basis(dim: usize, idx: &[usize]) -> Self {
        let mut t = Self::zero(dim, idx.len());
        t.add_comp(idx.to_vec(), GaussRational::from(1));
        t
    }

    /// e_i ∧ e_j = e_i⊗e_j − e_j⊗e_i.
    pub fn wedge(dim: usize, i: usize, j: usize) -> Self {
        &Self::basis(dim, &[i, j]) - &Self::basis(dim, &[j, i])
    }

    pub fn from_components(dim: usize, rank: usize, comps: impl IntoIterator<Item = (Vec<usize>, GaussRational)>) -> Result<Self> {
        let mut t = Self::zero(dim, rank);
        for (idx, v) in comps {
            if idx.len() != rank || idx.iter().any(|i| *i >= dim) {
                return Err(malformed("tensor index out of range"));
            }
            t.add_comp(idx, v);
        }
        Ok(t)
    }

    pub fn add_comp(&mut self, idx: Vec<usize>, v: GaussRational) {
        if v.is_zero() {
            return;
        }
        match self.comps.get_mut(&idx) {
            Some(e) => {
                *e += &v;
                if e.is_zero() {
                    self.comps.remove(&idx);
                }
            }
            None => {
                self.comps.insert(idx, v);
            }
        }
    }

    pub fn get(&self, idx: &[usize]) -> GaussRational {
        self.comps.get(idx).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn comps(&self) -> &BTreeMap<Vec<usize>, GaussRational> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        let mut t = Self::zero(self.dim, self.rank);
        for (k, v) in &self.comps {
            t.add_comp(k.clone(), v * c);
        }
        t
    }

    /// Permutes tensor slots: output slot p takes input slot perm[p].
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut t = Self::zero(self.dim, self.rank);
        for (k, v) in &self.comps {
            t.add_comp(perm.iter().map(|&p| k[p]).collect(), v.clone());
        }
        t
    }

    /// Swap of the two factors of a rank-2 tensor.
    pub fn flip(&self) -> Self {
        self.permute(&[1, 0])
    }

    pub fn tensor(&self, other: &Tensor) -> Tensor {
        let mut t = Self::zero(self.dim, self.rank + other.rank);
        for (a, x) in &self.comps {
            for (b, y) in &other.comps {
                let mut k = a.clone();
                k.extend_from_slice(b);
                t.add_comp(k, x * y);
            }
        }
        t
    }

    pub fn symmetric_part(&self) -> Tensor {
        (self + &self.flip()).scale(&GaussRational::frac(1, 2))
    }

    pub fn antisymmetric_part(&self) -> Tensor {
        (self - &self.flip()).scale(&GaussRational::frac(1, 2))
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.comps.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (n, (k, v)) in self.comps.iter().enumerate() {
            if n > 0 {
                out.push_str(" + ");
            }
            let label: Vec<&str> = k.iter().map(|i| names.get(*i).map(|s| s.as_str()).unwrap_or("?")).collect();
            out.push_str(&format!("({v}) {}", label.join("⊗")));
        }
        out
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.comps.iter()).finish()
    }
}

impl<'a> Add<&'a Tensor> for &'a Tensor {
    type Output = Tensor;
    fn add(self, o: &Tensor) -> Tensor {
        assert_eq!(self.rank, o.rank);
        let mut t = self.clone();
        for (k, v) in &o.comps {
            t.add_comp(k.clone(), v.clone());
        }
        t
    }
}

impl<'a> Sub<&'a Tensor> for &'a Tensor {
    type Output = Tensor;
    fn sub(self, o: &Tensor) -> Tensor {
        assert_eq!(self.rank, o.rank);
        let mut t = self.clone();
        for (k, v) in &o.comps {
            t.add_comp(k.clone(), -v);
        }
        t
    }
}

impl Neg for &Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        self.scale(&GaussRational::from(-1))
    }
}

/// δ(e_i) = Σ d[i][j][k] e_j⊗e_k.
#[derive(Clone, Debug, PartialEq)]
pub struct Cobracket {
    d: Constants,
}

impl Cobracket {
    pub fn zero(n: usize) -> Self {
        Cobracket { d: zeros3(n) }
    }

    /// From the images δ(e_i) as rank-2 tensors; rejects non-antisymmetric images.
    pub fn from_images(images: &[Tensor]) -> Result<Self> {
        let n = images.len();
        let mut d = zeros3(n);
        for (i, t) in images.iter().enumerate() {
            if t.rank != 2 || t.dim != n {
                return Err(malformed("cobracket image must be a rank-2 tensor over the algebra"));
            }
            if *t != -&t.flip() {
                return Err(malformed(format!("cobracket image of basis element {i} is not antisymmetric")));
            }
            for (k, v) in t.comps() {
                d[i][k[0]][k[1]] = v.clone();
            }
        }
        Ok(Cobracket { d })
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    pub fn d(&self, i: usize, j: usize, k: usize) -> &GaussRational {
        &self.d[i][j][k]
    }

    pub fn image(&self, i: usize) -> Tensor {
        let n = self.dim();
        let mut t = Tensor::zero(n, 2);
        for j in 0..n {
            for k in 0..n {
                t.add_comp(alloc::vec![j, k], self.d[i][j][k].clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Cobracket { d: self.d.iter().map(|a| a.iter().map(|b| b.iter().map(|x| x * c).collect()).collect()).collect() }
    }

    /// The cobracket on 𝔤* dual to the bracket of `l`.
    pub fn transpose_of(l: &LieAlgebra) -> Self {
        let n = l.dim();
        let mut d = zeros3(n);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    d[k][i][j] = l.c(i, j, k).clone();
                }
            }
        }
        Cobracket { d }
    }
}

/// r = s + a with s symmetric and a antisymmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    pub tensor: Tensor,
    pub sym: Tensor,
    pub antisym: Tensor,
}

impl RMatrix {
    pub fn new(tensor: Tensor) -> Self {
        assert_eq!(tensor.rank, 2);
        RMatrix { sym: tensor.symmetric_part(), antisym: tensor.antisymmetric_part(), tensor }
    }
}

pub fn check_jacobi(l: &LieAlgebra) -> Check {
    let n = l.dim();
    let mut chk = Check::new("jacobi");
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
                let mut acc = alloc::vec![GaussRational::zero(); n];
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for m in 0..n {
                        let f = l.c(a, b, m);
                        if f.is_zero() {
                            continue;
                        }
                        for p in 0..n {
                            acc[p] += &(f * l.c(m, c, p));
                        }
                    }
                }
                if acc.iter().any(|x| !x.is_zero()) {
                    chk.fail(format!("({},{},{})", l.names[i], l.names[j], l.names[k]), format!("{acc:?}"));
                }
            }
        }
    }
    chk
}

/// ad_x extended to tensors by the Leibniz rule.
pub fn ad_tensor(l: &LieAlgebra, x: usize, t: &Tensor) -> Tensor {
    let n = l.dim();
    let mut out = Tensor::zero(t.dim, t.rank);
    for (idx, v) in t.comps() {
        for p in 0..t.rank {
            for k in 0..n {
                let f = l.c(x, idx[p], k);
                if f.is_zero() {
                    continue;
                }
                let mut j = idx.clone();
                j[p] = k;
                out.add_comp(j, v * f);
            }
        }
    }
    out
}

/// δ(x) = ad_x(r), together with the ad-invariance check of the symmetric part.
pub fn cobracket_from_r(l: &LieAlgebra, r: &RMatrix) -> (Cobracket, Check) {
    let mut chk = Check::new("symmetric part ad-invariant");
    let n = l.dim();
    let mut images = Vec::with_capacity(n);
    for x in 0..n {
        let s = ad_tensor(l, x, &r.sym);
        if !s.is_zero() {
            chk.fail(format!("ad_{}(s)", l.names[x]), s.render(&l.names));
        }
        images.push(ad_tensor(l, x, &r.antisym));
    }
    (Cobracket::from_images(&images).expect("ad of an antisymmetric tensor is antisymmetric"), chk)
}

/// ad_ξ δ(η) − ad_η δ(ξ) − δ([ξ,η]) = 0 on basis pairs.
pub fn check_cocycle(l: &LieAlgebra, d: &Cobracket) -> Check {
    let n = l.dim();
    let mut chk = Check::new("cocycle");
    for i in 0..n {
        for j in i + 1..n {
            let mut t = &ad_tensor(l, i, &d.image(j)) - &ad_tensor(l, j, &d.image(i));
            for k in 0..n {
                let f = l.c(i, j, k);
                if !f.is_zero() {
                    t = &t - &d.image(k).scale(f);
                }
            }
            if !t.is_zero() {
                chk.fail(format!("({},{})", l.names[i], l.names[j]), t.render(&l.names));
            }
        }
    }
    chk
}

/// Bracket on 𝔤* with ⟨[x,y]_*, ξ⟩ = ⟨δ(ξ), x⊗y⟩, plus its Jacobi check.
pub fn dual_bracket(l: &LieAlgebra, d: &Cobracket) -> (LieAlgebra, Check) {
    let n = d.dim();
    let mut c = zeros3(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c[i][j][k] = d.d(k, i, j).clone();
            }
        }
    }
    let names = l.names.iter().map(|s| format!("{s}*")).collect();
    let dual = LieAlgebra::from_constants(names, c).expect("co-antisymmetry gives antisymmetry");
    let mut chk = check_jacobi(&dual);
    chk.name = String::from("dual Jacobi (Lie coalgebra)");
    (dual, chk)
}

/// ⟨r,r⟩ = [r12,r13] + [r12,r23] + [r13,r23] in 𝔤^{⊗3}.
pub fn schouten_rr(l: &LieAlgebra, r: &RMatrix) -> Tensor {
    let n = l.dim();
    let mut out = Tensor::zero(n, 3);
    let rc: Vec<(Vec<usize>, GaussRational)> = r.tensor.comps().iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    for (ab, x) in &rc {
        for (cd, y) in &rc {
            let (a, b, c, d) = (ab[0], ab[1], cd[0], cd[1]);
            let f = x * y;
            for k in 0..n {
                let s1 = l.c(a, c, k);
                if !s1.is_zero() {
                    out.add_comp(alloc::vec![k, b, d], &f * s1);
                }
                let s2 = l.c(b, c, k);
                if !s2.is_zero() {
                    out.add_comp(alloc::vec![a, k, d], &f * s2);
                }
                let s3 = l.c(b, d, k);
                if !s3.is_zero() {
                    out.add_comp(alloc::vec![a, c, k], &f * s3);
                }
            }
        }
    }
    out
}

pub fn check_ad_invariance(l: &LieAlgebra, t: &Tensor) -> Check {
    let mut chk = Check::new("ad-invariance");
    for x in 0..l.dim() {
        let a = ad_tensor(l, x, t);
        if !a.is_zero() {
            chk.fail(format!("ad_{}", l.names[x]), a.render(&l.names));
        }
    }
    chk
}

#[derive(Clone, Debug)]
pub struct Double {
    /// Basis e_0..e_{n-1} of 𝔤 followed by the dual basis of 𝔤*.
    pub algebra: LieAlgebra,
    pub jacobi: Check,
    pub pairing: Check,
}

/// The double 𝔤 ⊕ 𝔤* with the bracket built from ad and ad* = −ᵗad.
pub fn build_double(l: &LieAlgebra, d: &Cobracket) -> Double {
    let n = l.dim();
    let m = 2 * n;
    let mut c = zeros3(m);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c[i][j][k] = l.c(i, j, k).clone();
                c[n + i][n + j][n + k] = d.d(k, i, j).clone();
                // [e_i*, e_j] = Σ_k c[j][k][i] e_k* − Σ_k d[j][i][k] e_k
                let v = l.c(j, k, i).clone();
                c[n + i][j][n + k] = v.clone();
                c[j][n + i][n + k] = -v;
                let w = d.d(j, i, k).clone();
                c[n + i][j][k] = -&w;
                c[j][n + i][k] = w;
            }
        }
    }
    let mut names: Vec<String> = l.names.clone();
    names.extend(l.names.iter().map(|s| format!("{s}*")));
    let algebra = LieAlgebra::from_constants(names, c).expect("double constants are antisymmetric");
    let jacobi = check_jacobi(&algebra);
    let mut pairing = Check::new("pairing invariance");
    let pair = |a: usize, b: usize| -> GaussRational {
        if (a < n && b == a + n) || (b < n && a == b + n) {
            GaussRational::from(1)
        } else {
            GaussRational::zero()
        }
    };
    for u in 0..m {
        for v in 0..m {
            for w in 0..m {
                let mut lhs = GaussRational::zero();
                let mut rhs = GaussRational::zero();
                for k in 0..m {
                    lhs += &(algebra.c(u, v, k) * &pair(k, w));
                    rhs += &(&pair(u, k) * algebra.c(v, w, k));
                }
                if lhs != rhs {
                    pairing.fail(format!("({},{},{})", algebra.names[u], algebra.names[v], algebra.names[w]), format!("{lhs} vs {rhs}"));
                }
            }
        }
    }
    Double { algebra, jacobi, pairing }
}

/// Ratio λ with `computed = λ·expected` when one exists (both zero gives `None`).
pub fn tensor_ratio(computed: &Tensor, expected: &Tensor) -> Option<GaussRational> {
    let (k, e) = expected.comps().iter().next()?;
    let lambda = &computed.get(k) / e;
    (*computed == expected.scale(&lambda)).then_some(lambda)
}
