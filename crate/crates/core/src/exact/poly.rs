use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::GaussRational;
use crate::error::{Error, Result};

pub type Exponents = Vec<i32>;

/// Named coordinates; variables flagged invertible may carry negative exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub names: Vec<String>,
    pub invertible: Vec<bool>,
}

impl Chart {
    pub fn new(names: &[&str], invertible: &[&str]) -> Arc<Chart> {
        Arc::new(Chart {
            names: names.iter().map(|s| String::from(*s)).collect(),
            invertible: names.iter().map(|n| invertible.contains(n)).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(self: &Arc<Self>, name: &str) -> CoordPoly {
        let i = self.index(name).unwrap_or_else(|| panic!("unknown coordinate {name}"));
        CoordPoly::var(self, i)
    }

    /// Two copies of the chart with suffixes, used for products G × G.
    pub fn doubled(&self, s1: &str, s2: &str) -> Arc<Chart> {
        let mut names = Vec::new();
        let mut inv = Vec::new();
        for s in [s1, s2] {
            for (n, f) in self.names.iter().zip(&self.invertible) {
                names.push(format!("{n}{s}"));
                inv.push(*f);
            }
        }
        Arc::new(Chart { names, invertible: inv })
    }
}

/// Laurent polynomial with ℚ(i) coefficients on a chart.
#[derive(Clone)]
pub struct CoordPoly {
    chart: Arc<Chart>,
    terms: BTreeMap<Exponents, GaussRational>,
}

impl CoordPoly {
    pub fn zero(chart: &Arc<Chart>) -> Self {
        CoordPoly { chart: chart.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(chart: &Arc<Chart>, c: GaussRational) -> Self {
        let mut p = Self::zero(chart);
        p.add_term(alloc::vec![0; chart.dim()], c);
        p
    }

    pub fn one(chart: &Arc<Chart>) -> Self {
        Self::constant(chart, GaussRational::one())
    }

    pub fn int(chart: &Arc<Chart>, n: i64) -> Self {
        Self::constant(chart, GaussRational::int(n))
    }

    pub fn var(chart: &Arc<Chart>, i: usize) -> Self {
        let mut e = alloc::vec![0; chart.dim()];
        e[i] = 1;
        Self::monomial(chart, e, GaussRational::one())
    }

    /// c·x^e; panics on negative exponents of non-invertible variables.
    pub fn monomial(chart: &Arc<Chart>, e: Exponents, c: GaussRational) -> Self {
        assert_eq!(e.len(), chart.dim());
        for (k, x) in e.iter().enumerate() {
            assert!(*x >= 0 || chart.invertible[k], "negative power of {}", chart.names[k]);
        }
        let mut p = Self::zero(chart);
        p.add_term(e, c);
        p
    }

    pub fn try_monomial(chart: &Arc<Chart>, e: Exponents, c: GaussRational) -> Result<Self> {
        if e.len() != chart.dim() {
            return Err(Error::Malformed("exponent vector length".into()));
        }
        for (k, x) in e.iter().enumerate() {
            if *x < 0 && !chart.invertible[k] {
                return Err(Error::NotInvertible(format!("coordinate {}", chart.names[k])));
            }
        }
        let mut p = Self::zero(chart);
        p.add_term(e, c);
        Ok(p)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, GaussRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, e: Exponents, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn coeff(&self, e: &[i32]) -> GaussRational {
        self.terms.get(e).cloned().unwrap_or_else(GaussRational::zero)
    }

    /// Constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<GaussRational> {
        match self.terms.len() {
            0 => Some(GaussRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|x| *x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Maximum of Σ|e_i| over the support.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().map(|x| x.unsigned_abs() as usize).sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.chart);
        }
        CoordPoly { chart: self.chart.clone(), terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn diff(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.chart);
        for (e, c) in &self.terms {
            let k = e[var];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c * &GaussRational::int(k as i64));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.chart);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse of a single-term polynomial whose variables are all invertible.
    pub fn inv_monomial(&self) -> Result<Self> {
        if self.terms.len() != 1 {
            return Err(Error::NotInvertible("polynomial is not a monomial".into()));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let e2: Exponents = e.iter().map(|x| -x).collect();
        let c2 = c.inv().ok_or_else(|| Error::NotInvertible("zero".into()))?;
        Self::try_monomial(&self.chart, e2, c2)
    }

    /// Substitutes `images[i]` for variable i; all images live on `target`.
    pub fn substitute_all(&self, images: &[CoordPoly], target: &Arc<Chart>) -> Result<Self> {
        assert_eq!(images.len(), self.chart.dim());
        let mut inverses: Vec<Option<CoordPoly>> = alloc::vec![None; images.len()];
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, k) in e.iter().enumerate() {
                if *k > 0 {
                    t = &t * &images[i].pow(*k as u32);
                } else if *k < 0 {
                    if inverses[i].is_none() {
                        inverses[i] = Some(images[i].inv_monomial()?);
                    }
                    t = &t * &inverses[i].as_ref().unwrap().pow((-*k) as u32);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Replaces one variable by a polynomial on the same chart.
    pub fn substitute(&self, var: usize, image: &CoordPoly) -> Result<Self> {
        let images: Vec<CoordPoly> =
            (0..self.chart.dim()).map(|i| if i == var { image.clone() } else { Self::var(&self.chart, i) }).collect();
        self.substitute_all(&images, &self.chart.clone())
    }

    /// Re-expresses the polynomial on another chart by variable name.
    pub fn rechart(&self, target: &Arc<Chart>) -> Result<Self> {
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = alloc::vec![0; target.dim()];
            for (i, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                let j =
                    target.index(&self.chart.names[i]).ok_or_else(|| Error::ChartMismatch(format!("{} missing", self.chart.names[i])))?;
                e2[j] = *k;
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[GaussRational]) -> GaussRational {
        let mut acc = GaussRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, k) in e.iter().enumerate() {
                if *k >= 0 {
                    t = &t * &point[i].pow(*k as u32);
                } else {
                    t = &t * &point[i].inv().expect("evaluation at a zero of an inverted coordinate").pow((-*k) as u32);
                }
            }
            acc += &t;
        }
        acc
    }

    fn check_chart(&self, other: &Self) {
        assert!(Arc::ptr_eq(&self.chart, &other.chart) || *self.chart == *other.chart, "polynomials on different charts");
    }
}

impl PartialEq for CoordPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.chart == *other.chart && self.terms == other.terms
    }
}

impl fmt::Display for CoordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let constant = e.iter().all(|x| *x == 0);
            if constant || !c.is_one() {
                if c.is_real() {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "({c})")?;
                }
                if !constant {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (i, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if *k == 1 {
                    write!(f, "{}", self.chart.names[i])?;
                } else {
                    write!(f, "{}^{}", self.chart.names[i], k)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CoordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a CoordPoly> for &'a CoordPoly {
    type Output = CoordPoly;
    fn add(self, o: &CoordPoly) -> CoordPoly {
        self.check_chart(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a CoordPoly> for &'a CoordPoly {
    type Output = CoordPoly;
    fn sub(self, o: &CoordPoly) -> CoordPoly {
        self.check_chart(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a CoordPoly> for &'a CoordPoly {
    type Output = CoordPoly;
    fn mul(self, o: &CoordPoly) -> CoordPoly {
        self.check_chart(o);
        let mut out = CoordPoly::zero(&self.chart);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &CoordPoly {
    type Output = CoordPoly;
    fn neg(self) -> CoordPoly {
        self.scale(&-GaussRational::one())
    }
}

macro_rules! owned_poly_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<CoordPoly> for CoordPoly {
            type Output = CoordPoly;
            fn $m(self, o: CoordPoly) -> CoordPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a CoordPoly> for CoordPoly {
            type Output = CoordPoly;
            fn $m(self, o: &CoordPoly) -> CoordPoly {
                (&self).$m(o)
            }
        }
    };
}
owned_poly_ops!(Add, add);
owned_poly_ops!(Sub, sub);
owned_poly_ops!(Mul, mul);

impl Neg for CoordPoly {
    type Output = CoordPoly;
    fn neg(self) -> CoordPoly {
        -&self
    }
}

/// ∂p/∂x_var.
pub fn poly_diff(p: &CoordPoly, var: usize) -> CoordPoly {
    p.diff(var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat;
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn derivative_of_laurent_monomial() {
        let ch = Chart::new(&["a", "b"], &["a"]);
        let a = ch.var("a");
        let b = ch.var("b");
        let p = &a.inv_monomial().unwrap() * &b;
        let d = p.diff(0);
        let expect = CoordPoly::monomial(&ch, alloc::vec![-2, 1], GaussRational::int(-1));
        assert_eq!(d, expect);
    }

    #[test]
    #[should_panic]
    fn negative_power_needs_invertible() {
        let ch = Chart::new(&["a", "b"], &["a"]);
        let _ = CoordPoly::monomial(&ch, alloc::vec![0, -1], GaussRational::one());
    }

    #[test]
    fn substitution_eliminates_constraint() {
        let ch = Chart::new(&["a", "b", "c", "d"], &["a"]);
        let (a, b, c, d) = (ch.var("a"), ch.var("b"), ch.var("c"), ch.var("d"));
        let det = &(&a * &d) - &(&b * &c);
        let dsub = &a.inv_monomial().unwrap() * &(&CoordPoly::one(&ch) + &(&b * &c));
        let r = det.substitute(3, &dsub).unwrap();
        assert_eq!(r, CoordPoly::one(&ch));
    }

    #[test]
    fn display_is_readable() {
        let ch = Chart::new(&["x", "y"], &[]);
        let p = &ch.var("x").pow(2) + &ch.var("y").scale(&GaussRational::frac(-1, 2));
        assert_eq!(p.to_string(), "x^2 + -1/2*y");
    }

    fn arb_poly(ch: Arc<Chart>) -> impl Strategy<Value = CoordPoly> {
        proptest::collection::vec(((0i32..3, 0i32..3, -1i32..3), -5i64..5), 0..6).prop_map(move |ts| {
            let mut p = CoordPoly::zero(&ch);
            for ((i, j, k), c) in ts {
                p.add_term(alloc::vec![i, j, k], GaussRational::real(rat(c, 1)));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn leibniz_rule(p in arb_poly(Chart::new(&["x", "y", "z"], &["z"])),
                        q in arb_poly(Chart::new(&["x", "y", "z"], &["z"])),
                        v in 0usize..3) {
            let lhs = (&p * &q).diff(v);
            let rhs = &(&p.diff(v) * &q) + &(&p * &q.diff(v));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn partials_commute(p in arb_poly(Chart::new(&["x", "y", "z"], &["z"]))) {
            prop_assert_eq!(p.diff(0).diff(2), p.diff(2).diff(0));
        }
    }
}
