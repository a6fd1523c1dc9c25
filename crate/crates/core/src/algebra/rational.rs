//! Arbitrary-precision rationals.
//!
//! Backed by `num_rational::BigRational`, which keeps the denominator
//! positive and the fraction reduced after every operation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, s.strip_prefix('+').unwrap_or(s).trim_start()),
    };
    let parse_int = |x: &str| -> Result<BigInt> {
        let x = x.trim();
        if x.is_empty() || !x.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("invalid rational `{s}`")));
        }
        x.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid rational `{s}`")))
    };
    let value = match body.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Rational::new(parse_int(n)?, d)
        }
        None => Rational::from_integer(parse_int(body)?),
    };
    Ok(if neg { -value } else { value })
}

/// Exact square root, if `q` is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// `1/n!` as an exact rational.
pub fn inv_factorial(n: usize) -> Rational {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= BigInt::from(k);
    }
    Rational::new(BigInt::one(), f)
}

/// Rational power with integer exponent; `0^k` for negative `k` panics.
pub fn rat_pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_signs() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7));
        assert_eq!(parse_rational(" -5/12 ").unwrap(), ratio(-5, 12));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(ratio(-10, 24).to_string(), "-5/12");
        assert_eq!(rat(3).to_string(), "3");
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&rat(2)), None);
        assert_eq!(rational_sqrt(&rat(-1)), None);
        assert_eq!(inv_factorial(5), ratio(1, 120));
    }
}
