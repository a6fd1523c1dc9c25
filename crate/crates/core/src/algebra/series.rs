//! Truncated power series in `h` with exact rational coefficients.
//!
//! A series carries its truncation order `N` explicitly: coefficients
//! `c_0..=c_N` are known and everything beyond is unknown. Binary operations
//! between series of different orders produce the smaller order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{inv_factorial, rat, rational_sqrt, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct HSeries {
    coeffs: Vec<Rational>,
}

/// The analytic operations supported on series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Log,
    Exp,
    Sqrt,
    Inverse,
}

pub fn series_calculus(kind: SeriesOp, s: &HSeries) -> Result<HSeries> {
    match kind {
        SeriesOp::Log => s.log(),
        SeriesOp::Exp => s.exp(),
        SeriesOp::Sqrt => s.sqrt(),
        SeriesOp::Inverse => s.inverse(),
    }
}

impl HSeries {
    /// Panics on an empty coefficient list: the order would be undefined.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(vec![Rational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c h^k`, or zero when `k > order`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `e^{c h}`.
    pub fn exp_linear(c: &Rational, order: usize) -> Self {
        let mut power = Rational::one();
        let mut coeffs = Vec::with_capacity(order + 1);
        for n in 0..=order {
            coeffs.push(&power * inv_factorial(n));
            power *= c;
        }
        Self::from_coeffs(coeffs)
    }

    /// `sinh(c h)`.
    pub fn sinh_linear(c: &Rational, order: usize) -> Self {
        let e = Self::exp_linear(c, order);
        let mut s = Self::zero(order);
        for (n, v) in e.coeffs.into_iter().enumerate() {
            if n % 2 == 1 {
                s.coeffs[n] = v;
            }
        }
        s
    }

    /// `sinh(c h) / (c h)`, equal to 1 when `c = 0`.
    pub fn sinhc_linear(c: &Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        let c2 = c * c;
        let mut power = Rational::one();
        for k in (0..=order).step_by(2) {
            s.coeffs[k] = &power * inv_factorial(k + 1);
            power *= &c2;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self::from_coeffs(self.coeffs[..=order].to_vec())
    }

    /// Multiply by `h^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let mut s = Self::zero(self.order());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k <= self.order() {
                s.coeffs[i + k] = c.clone();
            }
        }
        s
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        if other.order() < self.order() {
            self.coeffs.truncate(other.order() + 1);
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::ConstantTermInvalid(
                "inverse needs a nonzero constant term".into(),
            ));
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(Self::from_coeffs(out))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `log(s)` for `s` with constant term 1, via `log(s)' = s'/s`.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTermInvalid(
                "log needs constant term 1".into(),
            ));
        }
        let n = self.order();
        let inv = self.inverse()?;
        let mut deriv = Self::zero(n);
        for k in 1..=n {
            deriv.coeffs[k - 1] = &self.coeffs[k] * rat(k as i64);
        }
        let q = deriv.mul(&inv);
        let mut out = Self::zero(n);
        for k in 1..=n {
            out.coeffs[k] = &q.coeffs[k - 1] / rat(k as i64);
        }
        Ok(out)
    }

    /// `exp(s)` for `s` with constant term 0, via `E' = s' E`.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTermInvalid(
                "exp needs constant term 0 to stay rational".into(),
            ));
        }
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = Rational::one();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += rat(j as i64) * &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = acc / rat(k as i64);
        }
        Ok(Self::from_coeffs(out))
    }

    /// Square root with positive constant term; the constant term must be a
    /// rational square.
    pub fn sqrt(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::ConstantTermInvalid(
                "sqrt needs a nonzero constant term".into(),
            ));
        }
        let r0 = rational_sqrt(c0).ok_or_else(|| Error::SqrtObstruction(c0.to_string()))?;
        let n = self.order();
        let two_r0 = &r0 * rat(2);
        let mut out = vec![r0];
        for k in 1..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc -= &out[j] * &out[k - j];
            }
            out.push(acc / &two_r0);
        }
        Ok(Self::from_coeffs(out))
    }

    /// Index of the first coefficient where the two series differ, compared
    /// up to their common order.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let order = self.order().min(other.order());
        (0..=order).find(|&k| self.coeffs[k] != other.coeffs[k])
    }

    /// Exact rational coefficient strings, as emitted in JSON reports.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

/// Equality up to the common truncation order.
impl PartialEq for HSeries {
    fn eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

impl Add for &HSeries {
    type Output = HSeries;
    fn add(self, rhs: &HSeries) -> HSeries {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &HSeries {
    type Output = HSeries;
    fn sub(self, rhs: &HSeries) -> HSeries {
        let mut out = self.clone();
        out.add_assign_ref(&-rhs);
        out
    }
}

impl Mul for &HSeries {
    type Output = HSeries;
    fn mul(self, rhs: &HSeries) -> HSeries {
        HSeries::mul(self, rhs)
    }
}

impl Neg for &HSeries {
    type Output = HSeries;
    fn neg(self) -> HSeries {
        HSeries::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl fmt::Display for HSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})h")?,
                _ => write!(f, "({c})h^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(h^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;
    use proptest::prelude::*;

    fn s(v: &[(i64, i64)]) -> HSeries {
        HSeries::from_coeffs(v.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    #[test]
    fn calculus_examples() {
        let sq = series_calculus(SeriesOp::Sqrt, &s(&[(1, 1), (2, 1), (1, 1)])).unwrap();
        assert_eq!(sq, s(&[(1, 1), (1, 1), (0, 1)]));

        let p = s(&[(1, 1), (0, 1), (1, 1), (0, 1), (1, 12)]);
        let log = series_calculus(SeriesOp::Log, &p).unwrap();
        assert_eq!(log, s(&[(0, 1), (0, 1), (1, 1), (0, 1), (-5, 12)]));
        let inv = series_calculus(SeriesOp::Inverse, &p).unwrap();
        assert_eq!(inv, s(&[(1, 1), (0, 1), (-1, 1), (0, 1), (11, 12)]));
    }

    #[test]
    fn constant_term_errors() {
        let bad = s(&[(2, 1), (1, 1)]);
        assert!(matches!(bad.log(), Err(Error::ConstantTermInvalid(_))));
        assert!(matches!(bad.exp(), Err(Error::ConstantTermInvalid(_))));
        assert!(matches!(bad.sqrt(), Err(Error::SqrtObstruction(_))));
        assert!(s(&[(0, 1), (1, 1)]).inverse().is_err());
        assert_eq!(s(&[(4, 9)]).sqrt().unwrap(), s(&[(2, 3)]));
    }

    #[test]
    fn mixed_order_truncates_to_minimum() {
        let a = HSeries::exp_linear(&rat(1), 6);
        let b = HSeries::exp_linear(&rat(-1), 3);
        let p = &a * &b;
        assert_eq!(p.order(), 3);
        assert_eq!(p, HSeries::one(3));
        assert_eq!((&a + &b).order(), 3);
    }

    #[test]
    fn hyperbolic_helpers() {
        let sc = HSeries::sinhc_linear(&ratio(1, 2), 4);
        assert_eq!(sc, s(&[(1, 1), (0, 1), (1, 24), (0, 1), (1, 1920)]));
        let sh = HSeries::sinh_linear(&rat(2), 3);
        assert_eq!(sh, s(&[(0, 1), (2, 1), (0, 1), (4, 3)]));
    }

    fn arb_unit_series() -> impl Strategy<Value = HSeries> {
        prop::collection::vec((-5i64..=5, 1i64..=4), 10).prop_map(|v| {
            let mut c: Vec<Rational> = v.into_iter().map(|(n, d)| ratio(n, d)).collect();
            c.insert(0, Rational::one());
            HSeries::from_coeffs(c)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn calculus_identities(x in arb_unit_series()) {
            prop_assert_eq!(x.order(), 10);
            prop_assert_eq!(x.log().unwrap().exp().unwrap(), x.clone());
            let r = x.sqrt().unwrap();
            prop_assert_eq!(&r * &r, x.clone());
            prop_assert_eq!(&x * &x.inverse().unwrap(), HSeries::one(10));
        }
    }
}
