use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{rat, GaussRational};
use crate::error::{malformed, Error, Result};

/// Truncated power series in ħ with coefficients in ℚ(i), known modulo ħ^order.
///
/// Binary operations between series of different orders return a series of the
/// smaller order. Equality compares coefficients below the smaller order.
#[derive(Clone)]
pub struct HSeries {
    coeffs: Vec<GaussRational>,
}

impl HSeries {
    pub fn zero(order: usize) -> Self {
        HSeries { coeffs: alloc::vec![GaussRational::zero(); order] }
    }

    pub fn constant(c: GaussRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(GaussRational::one(), order)
    }

    pub fn int(n: i64, order: usize) -> Self {
        Self::constant(GaussRational::int(n), order)
    }

    /// ħ^k c.
    pub fn monomial(c: GaussRational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn hbar(k: usize, order: usize) -> Self {
        Self::monomial(GaussRational::one(), k, order)
    }

    /// Builds a series from its leading coefficients; missing ones are zero and
    /// extra ones are dropped.
    pub fn from_coeffs(mut coeffs: Vec<GaussRational>, order: usize) -> Self {
        coeffs.resize(order, GaussRational::zero());
        HSeries { coeffs }
    }

    /// exp(cħ).
    pub fn exp_hbar(c: GaussRational, order: usize) -> Self {
        Self::monomial(c, 1, order).exp().expect("cħ has positive valuation")
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn constant_term(&self) -> GaussRational {
        self.coeff(0)
    }

    /// Index of the first nonzero coefficient; `None` when zero to this order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(order);
        HSeries { coeffs: c }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        HSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplication by ħ^k, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in 0..n.saturating_sub(k) {
            out.coeffs[i + k] = self.coeffs[i].clone();
        }
        out
    }

    /// Division by ħ^k; the order drops by k.
    pub fn divide_by_hbar(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::Valuation { needed: k, found: None });
        }
        match self.valuation() {
            Some(v) if v < k => Err(Error::Valuation { needed: k, found: Some(v) }),
            _ => Ok(HSeries { coeffs: self.coeffs[k..].to_vec() }),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.order();
        let a0inv = self.coeff(0).inv().ok_or_else(|| Error::NotInvertible("series with zero constant term".into()))?;
        let mut b: Vec<GaussRational> = Vec::with_capacity(n);
        for m in 0..n {
            if m == 0 {
                b.push(a0inv.clone());
                continue;
            }
            let mut acc = GaussRational::zero();
            for k in 1..=m {
                acc += &(&self.coeffs[k] * &b[m - k]);
            }
            b.push(-(&acc * &a0inv));
        }
        Ok(HSeries { coeffs: b })
    }

    /// self / other where other may have positive valuation v; requires
    /// valuation(self) ≥ v and returns a series of order min − v.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let v = other.valuation().ok_or_else(|| Error::NotInvertible("division by a series that is zero to its order".into()))?;
        let num = self.divide_by_hbar(v)?;
        let den = other.divide_by_hbar(v)?;
        Ok(&num * &den.inv()?)
    }

    /// The nonzero terms without the truncation marker, e.g. "1 + -1/2*ħ^2".
    pub fn render_terms(&self) -> alloc::string::String {
        let mut parts: Vec<alloc::string::String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = if c.is_real() { alloc::format!("{c}") } else { alloc::format!("({c})") };
            parts.push(match k {
                0 => body,
                1 => alloc::format!("{body}*ħ"),
                _ => alloc::format!("{body}*ħ^{k}"),
            });
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" + ")
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// exp(s) for s with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(malformed("exp needs a series without constant term"));
        }
        let n = self.order();
        let mut e: Vec<GaussRational> = Vec::with_capacity(n);
        for m in 0..n {
            if m == 0 {
                e.push(GaussRational::one());
                continue;
            }
            let mut acc = GaussRational::zero();
            for k in 1..=m {
                let w = GaussRational::int(k as i64);
                acc += &(&(&w * &self.coeffs[k]) * &e[m - k]);
            }
            e.push(&acc * &GaussRational::real(rat(1, m as i64)));
        }
        Ok(HSeries { coeffs: e })
    }

    /// log(s) for s with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeff(0) != GaussRational::one() {
            return Err(malformed("log needs constant term 1"));
        }
        let n = self.order();
        let inv = self.inv()?;
        let mut deriv = Self::zero(n);
        for k in 1..n {
            deriv.coeffs[k - 1] = &self.coeffs[k] * &GaussRational::int(k as i64);
        }
        let q = &deriv * &inv;
        let mut out = Self::zero(n);
        for k in 1..n {
            out.coeffs[k] = &q.coeffs[k - 1] * &GaussRational::real(rat(1, k as i64));
        }
        Ok(out)
    }

    /// Composition s(t) for t with zero constant term.
    pub fn compose(&self, t: &Self) -> Result<Self> {
        if !t.coeff(0).is_zero() {
            return Err(malformed("compose needs an inner series without constant term"));
        }
        let n = self.order().min(t.order());
        let mut out = Self::zero(n);
        let mut p = Self::one(n);
        for k in 0..n {
            out = &out + &p.scale(&self.coeffs[k]);
            p = &p * t;
        }
        Ok(out)
    }

    pub fn eq_mod(&self, other: &Self, order: usize) -> bool {
        (0..order).all(|k| self.coeff(k) == other.coeff(k))
    }
}

impl PartialEq for HSeries {
    fn eq(&self, other: &Self) -> bool {
        let n = self.order().min(other.order());
        self.coeffs[..n] == other.coeffs[..n]
    }
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(ħ^{})", self.render_terms(), self.order())
    }
}

impl fmt::Debug for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a HSeries> for &'a HSeries {
    type Output = HSeries;
    fn add(self, o: &HSeries) -> HSeries {
        let n = self.order().min(o.order());
        HSeries { coeffs: (0..n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect() }
    }
}

impl<'a> Sub<&'a HSeries> for &'a HSeries {
    type Output = HSeries;
    fn sub(self, o: &HSeries) -> HSeries {
        let n = self.order().min(o.order());
        HSeries { coeffs: (0..n).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect() }
    }
}

impl<'a> Mul<&'a HSeries> for &'a HSeries {
    type Output = HSeries;
    fn mul(self, o: &HSeries) -> HSeries {
        let n = self.order().min(o.order());
        let mut out = HSeries::zero(n);
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] += &(&self.coeffs[i] * &o.coeffs[j]);
            }
        }
        out
    }
}

impl Neg for &HSeries {
    type Output = HSeries;
    fn neg(self) -> HSeries {
        HSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for HSeries {
    type Output = HSeries;
    fn neg(self) -> HSeries {
        -&self
    }
}

/// Free-function form of ħ-division for call sites that read better without a receiver.
pub fn divide_by_hbar(s: &HSeries, k: usize) -> Result<HSeries> {
    s.divide_by_hbar(k)
}

pub fn series_exp(s: &HSeries) -> Result<HSeries> {
    s.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat_int;
    use proptest::prelude::*;

    fn g(n: i64, d: i64) -> GaussRational {
        GaussRational::frac(n, d)
    }

    fn factorial(n: i64) -> i64 {
        (1..=n).product()
    }

    #[test]
    fn exp_of_hbar_matches_factorials() {
        let e = HSeries::exp_hbar(GaussRational::one(), 4);
        let expect: Vec<_> = (0..4).map(|k| g(1, factorial(k))).collect();
        assert_eq!(e.coeffs(), &expect[..]);
        assert_eq!(e.order(), 4);
    }

    #[test]
    fn exp_minus_one_over_hbar_drops_order() {
        let e = HSeries::exp_hbar(GaussRational::one(), 5);
        let q = (&e - &HSeries::one(5)).divide_by_hbar(1).unwrap();
        assert_eq!(q.order(), 4);
        let expect: Vec<_> = (1..5).map(|k| g(1, factorial(k))).collect();
        assert_eq!(q.coeffs(), &expect[..]);
    }

    #[test]
    fn divide_by_hbar_rejects_unit() {
        let err = HSeries::one(3).divide_by_hbar(1).unwrap_err();
        assert_eq!(err, Error::Valuation { needed: 1, found: Some(0) });
    }

    #[test]
    fn sinh_quotient_classical_limits() {
        // (e^{ħ/2} - e^{-ħ/2}) / (e^{ħ/4} - e^{-ħ/4}) → 2 and the H-linear analogue.
        let n = 6;
        let num = &HSeries::exp_hbar(g(1, 2), n) - &HSeries::exp_hbar(g(-1, 2), n);
        let den = &HSeries::exp_hbar(g(1, 4), n) - &HSeries::exp_hbar(g(-1, 4), n);
        let q = num.div(&den).unwrap();
        assert_eq!(q.order(), n - 1);
        assert_eq!(q.coeff(0), GaussRational::int(2));
        assert_eq!(q.coeff(1), GaussRational::zero());
    }

    #[test]
    fn mixed_order_takes_minimum() {
        let a = HSeries::one(3);
        let b = HSeries::one(5);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!(a, b);
    }

    #[test]
    fn display_shows_truncation() {
        let s = HSeries::from_coeffs(alloc::vec![g(1, 1), g(0, 1), g(-1, 2)], 3);
        assert_eq!(alloc::format!("{s}"), "1 + -1/2*ħ^2 + O(ħ^3)");
    }

    fn arb_series(order: usize, zero_const: bool) -> impl Strategy<Value = HSeries> {
        proptest::collection::vec((-20i64..20, 1i64..8), order).prop_map(move |v| {
            let mut c: Vec<GaussRational> = v.into_iter().map(|(n, d)| GaussRational::real(rat(n, d))).collect();
            if zero_const {
                c[0] = GaussRational::zero();
            }
            HSeries::from_coeffs(c, order)
        })
    }

    proptest! {
        #[test]
        fn exp_log_roundtrip(s in arb_series(6, true)) {
            let e = s.exp().unwrap();
            prop_assert_eq!(e.log().unwrap(), s);
        }

        #[test]
        fn exp_is_additive(a in arb_series(6, true), b in arb_series(6, true)) {
            let lhs = (&a + &b).exp().unwrap();
            let rhs = &a.exp().unwrap() * &b.exp().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_is_inverse(mut s in arb_series(6, false), c in 1i64..9) {
            s = &s + &HSeries::constant(GaussRational::real(rat_int(c)), 6);
            prop_assume!(!s.coeff(0).is_zero());
            let one = &s * &s.inv().unwrap();
            prop_assert_eq!(one, HSeries::one(6));
        }

        #[test]
        fn hbar_division_inverts_shift(s in arb_series(6, false), k in 0usize..4) {
            let up = s.shift_up(k);
            let back = up.divide_by_hbar(k).unwrap();
            prop_assert_eq!(back.order(), 6 - k);
            prop_assert_eq!(back, s.truncate(6 - k));
        }
    }
}
