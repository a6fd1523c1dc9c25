//! Laurent polynomials in one variable `t` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::rational::{inv_factorial, parse_rational, rat, Rational};
use super::series::HSeries;
use crate::error::{Error, Result};

/// Sparse map exponent -> coefficient. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^k`.
    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    /// `t^k`.
    pub fn t_pow(k: i64) -> Self {
        Self::monomial(Rational::one(), k)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The constant polynomial case, if any.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn eval_at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&k, c) in &self.terms {
            let p = if k >= 0 {
                num_traits::pow(x.clone(), k as usize)
            } else {
                num_traits::pow(x.recip(), (-k) as usize)
            };
            acc += c * p;
        }
        acc
    }

    /// The involution `t -> t^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Taylor expansion of `self(e^{c h})` through `h^order`.
    pub fn subst_exponential(&self, c: &Rational, order: usize) -> HSeries {
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (&k, a) in &self.terms {
            let rate = rat(k) * c;
            let mut power = Rational::one();
            for (n, slot) in coeffs.iter_mut().enumerate() {
                *slot += a * &power * inv_factorial(n);
                power *= &rate;
            }
        }
        HSeries::from_coeffs(coeffs)
    }

    /// Dense ascending coefficients after removing the lowest power of `t`.
    fn to_dense(&self) -> (i64, Vec<Rational>) {
        let Some(lo) = self.min_exponent() else {
            return (0, Vec::new());
        };
        let hi = self.max_exponent().unwrap();
        let mut v = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (&k, c) in &self.terms {
            v[(k - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(shift: i64, v: &[Rational]) -> Self {
        Self::from_terms(
            v.iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + shift, c.clone())),
        )
    }

    /// Exact quotient in the Laurent ring, if `other` divides `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (sa, a) = self.to_dense();
        let (sb, b) = other.to_dense();
        let (q, r) = poly_div_rem(&a, &b);
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(sa - sb, &q))
    }

    /// Greatest common divisor, normalized to a polynomial with nonzero
    /// constant term and leading coefficient one. Units `c t^k` are ignored.
    pub fn gcd(&self, other: &Self) -> Self {
        let (_, mut a) = self.to_dense();
        let (_, mut b) = other.to_dense();
        while !b.is_empty() {
            let (_, r) = poly_div_rem(&a, &b);
            a = b;
            b = trim(r);
        }
        if a.is_empty() {
            return Self::zero();
        }
        let lead = a.last().unwrap().clone();
        let monic: Vec<Rational> = a.iter().map(|c| c / &lead).collect();
        Self::from_dense(0, &monic)
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Division with remainder of dense ascending polynomials; `b` must be nonzero
/// with a nonzero leading coefficient.
fn poly_div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &factor * bc;
        }
        q[shift] = factor;
        r.pop();
        r = trim(r);
    }
    (q, r)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&i, a) in &self.terms {
            for (&j, b) in &rhs.terms {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if k == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if k == 1 {
                write!(f, "t")?;
            } else {
                write!(f, "t^{k}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Grammar: terms `[+|-] coeff ["*"] "t" ["^" int]`, constants, and
    /// rational coefficients `p/q`. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || Error::Parse(format!("invalid Laurent polynomial `{s}`"));
        if src.is_empty() {
            return Err(err());
        }
        let mut pos = 0;
        let mut out = LaurentPoly::zero();
        let digits = |pos: &mut usize| -> String {
            let start = *pos;
            while *pos < src.len() && src[*pos].is_ascii_digit() {
                *pos += 1;
            }
            src[start..*pos].iter().collect()
        };
        while pos < src.len() {
            let mut negative = false;
            match src[pos] {
                '+' => pos += 1,
                '-' => {
                    negative = true;
                    pos += 1
                }
                _ if pos != 0 => return Err(err()),
                _ => {}
            }
            let mut coeff_text = digits(&mut pos);
            if !coeff_text.is_empty() && pos < src.len() && src[pos] == '/' {
                pos += 1;
                let den = digits(&mut pos);
                if den.is_empty() {
                    return Err(err());
                }
                coeff_text = format!("{coeff_text}/{den}");
            }
            let has_coeff = !coeff_text.is_empty();
            if has_coeff && pos < src.len() && src[pos] == '*' {
                pos += 1;
                if pos >= src.len() || src[pos] != 't' {
                    return Err(err());
                }
            }
            let mut exponent = 0i64;
            let mut has_t = false;
            if pos < src.len() && src[pos] == 't' {
                has_t = true;
                pos += 1;
                exponent = 1;
                if pos < src.len() && src[pos] == '^' {
                    pos += 1;
                    let mut sign = 1;
                    if pos < src.len() && (src[pos] == '-' || src[pos] == '+') {
                        if src[pos] == '-' {
                            sign = -1;
                        }
                        pos += 1;
                    }
                    let e = digits(&mut pos);
                    exponent = sign * e.parse::<i64>().map_err(|_| err())?;
                }
            }
            if !has_coeff && !has_t {
                return Err(err());
            }
            let mut c = if has_coeff {
                parse_rational(&coeff_text)?
            } else {
                Rational::one()
            };
            if negative {
                c = -c;
            }
            out.add_term(exponent, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(&p("t - 1 + t^-1") * &p("t"), p("t^2 - t + 1"));
        assert_eq!(&p("3/2*t^3 - t") * &LaurentPoly::one(), p("3/2*t^3 - t"));
        assert_eq!(&p("t - 1") * &p("t^-1 - 1"), p("-t + 2 - t^-1"));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(p("t").bar(), p("t^-1"));
        assert_eq!(p("t - 1 + t^-1").bar(), p("t - 1 + t^-1"));
        assert_eq!(p("2t^2").bar(), p("2*t^-2"));
    }

    #[test]
    fn parse_and_print() {
        let q = p("t - 1 + t^-1");
        assert_eq!(q.to_string(), "t - 1 + t^-1");
        assert_eq!(p("-3/2*t^2+t^-3-4").to_string(), "-3/2*t^2 - 4 + t^-3");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("t-t").to_string(), "0");
        assert!("t^".parse::<LaurentPoly>().is_err());
        assert!("t t".parse::<LaurentPoly>().is_err());
        assert!("2**t".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("x".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn exponential_substitution() {
        let s = p("t - 1 + t^-1").subst_exponential(&rat(1), 4);
        assert_eq!(s.coeffs(), &[rat(1), rat(0), rat(1), rat(0), ratio(1, 12)]);
        let one = p("t").subst_exponential(&rat(0), 6);
        assert_eq!(one, HSeries::one(6));
        let e = p("t^3").subst_exponential(&ratio(1, 2), 3);
        assert_eq!(e.coeffs(), &[rat(1), ratio(3, 2), ratio(9, 8), ratio(9, 16)]);
    }

    #[test]
    fn division_and_gcd() {
        let a = p("t^2 - 1");
        let b = p("t - 1");
        assert_eq!(a.div_exact(&b), Some(p("t + 1")));
        assert_eq!(p("t^-1 - t").div_exact(&p("t - 1")), Some(p("-t^-1 - 1")));
        assert_eq!(a.div_exact(&p("t - 2")), None);
        assert_eq!(p("t^3 - t").gcd(&p("2*t^2 - 2")), p("t^2 - 1"));
        assert_eq!(p("t^2 + 1").gcd(&p("t + 1")), LaurentPoly::one());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-3i64..=3, -4i64..=4, 1i64..=3), 0..4).prop_map(|v| {
            LaurentPoly::from_terms(v.into_iter().map(|(k, n, d)| (k, ratio(n, d))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn bar_is_involutive_automorphism(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        }

        #[test]
        fn substitution_is_multiplicative(a in arb_poly(), b in arb_poly(), n in -2i64..=2) {
            let c = rat(n);
            let lhs = (&a * &b).subst_exponential(&c, 6);
            let rhs = a.subst_exponential(&c, 6).mul(&b.subst_exponential(&c, 6));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn display_round_trips(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
