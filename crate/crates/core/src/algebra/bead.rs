//! Beads: elements of the localized Laurent ring, stored as reduced
//! numerator/denominator pairs with the denominator invertible at `t = 1`.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use super::laurent::LaurentPoly;
use super::matrix::MatrixSeries;
use super::rational::{rat, Rational};
use super::series::HSeries;
use crate::error::{Error, Result};

/// A quotient `num / den`.
///
/// Canonical form: `gcd(num, den) = 1`, the lowest exponent of `den` is 0,
/// and `den(1) = 1`. Two beads are equal iff their canonical forms are.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalBead {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalBead {
    /// Builds `num / den`. The denominator must evaluate to `+1` or `-1` at
    /// `t = 1`.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NonUnitDenominator("0".into()));
        }
        let at_one = den.eval_at_one();
        if at_one != Rational::one() && at_one != -Rational::one() {
            return Err(Error::NonUnitDenominator(at_one.to_string()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() || g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let shift = -den.min_exponent().unwrap_or(0);
        num = num.shift(shift);
        den = den.shift(shift);
        let scale = den.eval_at_one().recip();
        if num.is_zero() {
            return Self {
                num,
                den: LaurentPoly::one(),
            };
        }
        Self {
            num: num.scale(&scale),
            den: den.scale(&scale),
        }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn t() -> Self {
        Self::from_poly(LaurentPoly::t_pow(1))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.is_polynomial() && self.num.is_one()
    }

    /// The polynomial, if the denominator is trivial.
    pub fn as_polynomial(&self) -> Option<&LaurentPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    /// `f(t^{-1})`.
    pub fn bar(&self) -> Self {
        Self::normalized(self.num.bar(), self.den.bar())
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self::normalized(&self.num * p, self.den.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::normalized(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn eval_at_one(&self) -> Rational {
        self.num.eval_at_one() / self.den.eval_at_one()
    }

    /// `f(e^{c h})` through `h^order`.
    pub fn subst_exponential(&self, c: &Rational, order: usize) -> HSeries {
        let n = self.num.subst_exponential(c, order);
        if self.is_polynomial() {
            return n;
        }
        let d = self.den.subst_exponential(c, order);
        n.div(&d).expect("den(1) = 1 makes the denominator series a unit")
    }

    /// Coefficients `[u^n] f(e^u)` for `n = 0..=order`: the weight of the
    /// `n`-leg insertion when a bead is replaced by hair.
    pub fn hair_coefficients(&self, order: usize) -> Vec<Rational> {
        self.subst_exponential(&rat(1), order).coeffs().to_vec()
    }

    /// `num(M) den(M)^{-1}`.
    pub fn on_matrix(&self, m: &MatrixSeries) -> Result<MatrixSeries> {
        let n = m.laurent_eval(&self.num)?;
        if self.is_polynomial() {
            return Ok(n);
        }
        let d = m.laurent_eval(&self.den)?;
        Ok(n.mul(&d.inverse()?))
    }
}

/// Applies a bead to a matrix series; see [`RationalBead::on_matrix`].
pub fn bead_on_matrix(b: &RationalBead, m: &MatrixSeries) -> Result<MatrixSeries> {
    b.on_matrix(m)
}

impl From<LaurentPoly> for RationalBead {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalBead {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl FromStr for RationalBead {
    type Err = Error;

    /// Either a Laurent polynomial or `(num)/(den)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(body) = t.strip_prefix('(') {
            if let Some((num, rest)) = body.split_once(')') {
                let rest = rest.trim_start();
                let den = rest
                    .strip_prefix('/')
                    .map(str::trim)
                    .and_then(|d| d.strip_prefix('('))
                    .and_then(|d| d.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("invalid bead `{s}`")))?;
                return Self::new(num.parse()?, den.parse()?);
            }
            return Err(Error::Parse(format!("invalid bead `{s}`")));
        }
        Ok(Self::from_poly(t.parse()?))
    }
}
